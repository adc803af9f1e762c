#!/usr/bin/env python3
"""Run the five-way cross-check on the shipped fixture graphs and print a table.

Equivalent to `chromoduli verify --pretty` but callable straight from a checkout.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from chromoduli.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main(["verify", "--pretty", *sys.argv[1:]]))

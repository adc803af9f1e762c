"""Directed-graph analogues of the chromatic polynomial, by three routes.

For a digraph the in- and out-variants of the intersection number vary
polynomially in the number of extra markings; the monic degree-|V| integer
polynomials behind them are computed by

* the closed product formula over in/out-degrees (acyclic digraphs only),
* sink/source peeling (acyclic digraphs only), and
* exact Lagrange interpolation of engine values at m = 3 .. |V|+3,

and cross-checked against each other wherever more than one route applies.
Reversing all arcs swaps the two polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EngineConsistencyError
from .graphs import Digraph, IntPolynomial, label_sort_key
from .moduli import DEFAULT_TERM_CAP, omega


def _degree(graph: Digraph, v, mode):
    return graph.in_degree(v) if mode == "in" else graph.out_degree(v)


def _check_mode(mode):
    if mode not in ("in", "out"):
        raise ValueError(f"mode must be 'in' or 'out', got {mode!r}")


def chi_acyclic(graph: Digraph, mode) -> IntPolynomial:
    """Product of (x - indeg(v)) or (x - outdeg(v)); valid only without directed cycles."""
    _check_mode(mode)
    if not graph.is_acyclic():
        raise ValueError("closed product formula requires an acyclic digraph")
    out = IntPolynomial((1,))
    for v in graph.vertices:
        out = out * IntPolynomial((-_degree(graph, v, mode), 1))
    return out


def peel_step(graph: Digraph, v, mode):
    """Split off the factor of a sink (in mode) or source (out mode).

    Returns (factor, remaining digraph); the factor is x - indeg(v) or
    x - outdeg(v).
    """
    _check_mode(mode)
    if mode == "in" and not graph.is_sink(v):
        raise ValueError(f"{v!r} is not a sink")
    if mode == "out" and not graph.is_source(v):
        raise ValueError(f"{v!r} is not a source")
    factor = IntPolynomial((-_degree(graph, v, mode), 1))
    return factor, graph.delete_vertex(v)


def full_peel(graph: Digraph, mode) -> IntPolynomial:
    """Peel sinks (or sources) until the graph is exhausted.

    Only completes on acyclic digraphs; raises otherwise.
    """
    _check_mode(mode)
    out = IntPolynomial((1,))
    current = graph
    while True:
        pick = None
        for v in sorted(current.vertices, key=label_sort_key):
            if (mode == "in" and current.is_sink(v)) or (
                mode == "out" and current.is_source(v)
            ):
                pick = v
                break
        if pick is None:
            raise ValueError("no sink/source available; digraph has a directed cycle")
        factor = IntPolynomial((-_degree(current, pick, mode), 1))
        out = out * factor
        if current.n == 1:
            return out
        current = current.delete_vertex(pick)


def _lagrange_integer(points):
    """Exact Lagrange interpolation through (x, y) pairs; coefficients must be integers."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        numerator = [Fraction(1)]  # prod over j != i of (x - x_j)
        denominator = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            grown = [Fraction(0)] * (len(numerator) + 1)
            for d, c in enumerate(numerator):
                grown[d + 1] += c
                grown[d] -= xj * c
            numerator = grown
            denominator *= xi - xj
        scale = Fraction(yi) / denominator
        for d, c in enumerate(numerator):
            coeffs[d] += scale * c
    if any(c.denominator != 1 for c in coeffs):
        raise EngineConsistencyError(f"interpolation produced non-integer coefficients {coeffs}")
    return IntPolynomial(tuple(int(c) for c in coeffs))


def chi_interpolated(graph: Digraph, mode, term_cap=DEFAULT_TERM_CAP) -> IntPolynomial:
    """Recover the polynomial from engine values at m = 3 .. |V|+3.

    The engine value at m equals (-1)^|V| times the polynomial at -(m-2),
    so |V|+1 nodes determine it; monicity, degree, and integrality are
    asserted, and a failure signals an engine bug.
    """
    _check_mode(mode)
    n = graph.n
    sign = (-1) ** n
    points = []
    for m in range(3, n + 4):
        value = omega(graph, m, mode, term_cap)
        points.append((Fraction(-(m - 2)), Fraction(sign * value)))
    poly = _lagrange_integer(points)
    if poly.degree != n or not poly.is_monic:
        raise EngineConsistencyError(
            f"interpolated polynomial {poly.coefficients} is not monic of degree {n}"
        )
    return poly


def omega_one_zero(graph: Digraph, mode, chi: IntPolynomial | None = None) -> int:
    """The genus-one no-extra-markings value: signed linear coefficient."""
    _check_mode(mode)
    if chi is None:
        chi = chi_for(graph, mode)
    return (-1) ** (graph.n - 1) * chi.derivative_at_zero()


def chi_for(graph: Digraph, mode, term_cap=DEFAULT_TERM_CAP) -> IntPolynomial:
    """Cheapest correct route: closed formula when acyclic, else interpolation."""
    if graph.is_acyclic():
        return chi_acyclic(graph, mode)
    return chi_interpolated(graph, mode, term_cap)


def advisory_flags(poly: IntPolynomial, name="chi"):
    """Warnings for conjectural properties: nonnegativity on small nonnegative
    integers, sign-alternating coefficients, log-concave coefficient magnitudes.

    These are open questions, so violations warn and never fail anything.
    """
    warnings = []
    deg = poly.degree
    for x in range(0, deg + 2):
        if poly.evaluate(x) < 0:
            warnings.append(f"{name}: negative value {poly.evaluate(x)} at x={x}")
    for d, c in enumerate(poly.coefficients):
        if c == 0:
            continue
        expected = (-1) ** (deg - d)
        if (c > 0) != (expected > 0):
            warnings.append(f"{name}: coefficient of x^{d} breaks sign alternation")
            break
    mags = [abs(c) for c in poly.coefficients]
    for d in range(1, len(mags) - 1):
        if mags[d] ** 2 < mags[d - 1] * mags[d + 1]:
            warnings.append(f"{name}: |coefficients| not log-concave at x^{d}")
            break
    return warnings


@dataclass(frozen=True)
class DigraphPolynomialReport:
    chi_in: IntPolynomial
    chi_out: IntPolynomial
    route_in: str
    route_out: str
    consistent: bool
    advisories: tuple = field(default_factory=tuple)

    def to_json(self):
        return {
            "chi_in": list(self.chi_in.coefficients),
            "chi_out": list(self.chi_out.coefficients),
            "route_in": self.route_in,
            "route_out": self.route_out,
            "consistent": self.consistent,
            "advisories": list(self.advisories),
        }


def digraph_polynomial_report(graph: Digraph, term_cap=DEFAULT_TERM_CAP, cross_check=True):
    """Compute both polynomials, cross-checking every applicable route."""
    acyclic = graph.is_acyclic()
    chis = {}
    routes = {}
    consistent = True
    for mode in ("in", "out"):
        interp = chi_interpolated(graph, mode, term_cap) if cross_check or not acyclic else None
        if acyclic:
            closed = chi_acyclic(graph, mode)
            peeled = full_peel(graph, mode)
            if closed != peeled or (interp is not None and closed != interp):
                consistent = False
            chis[mode] = closed
            routes[mode] = "acyclic-formula"
        else:
            chis[mode] = interp
            routes[mode] = "interpolation"
    advisories = tuple(
        advisory_flags(chis["in"], "chi_in") + advisory_flags(chis["out"], "chi_out")
    )
    return DigraphPolynomialReport(
        chi_in=chis["in"],
        chi_out=chis["out"],
        route_in=routes["in"],
        route_out=routes["out"],
        consistent=consistent,
        advisories=advisories,
    )

"""Shared small-graph catalog: one representative per isomorphism class."""

from chromoduli.graphs import Digraph, SimpleGraph

PAW_EDGES = [(1, 2), (2, 3), (1, 3), (1, 4)]


def paw_graph():
    """Triangle with a pendant edge, vertex labels 1..4."""
    return SimpleGraph.of([1, 2, 3, 4], PAW_EDGES)


def instar_digraph():
    """Three vertices, two arcs into the middle one."""
    return Digraph.of([0, 1, 2], [(0, 1), (2, 1)])


# (name, vertex count, edges); 4-vertex entries cover all 11 isomorphism classes.
CATALOG = [
    ("K1", 1, []),
    ("E2", 2, []),
    ("K2", 2, [(0, 1)]),
    ("E3", 3, []),
    ("K2+1", 3, [(0, 1)]),
    ("P3", 3, [(0, 1), (1, 2)]),
    ("K3", 3, [(0, 1), (1, 2), (0, 2)]),
    ("E4", 4, []),
    ("K2+2", 4, [(0, 1)]),
    ("2K2", 4, [(0, 1), (2, 3)]),
    ("P3+1", 4, [(0, 1), (1, 2)]),
    ("P4", 4, [(0, 1), (1, 2), (2, 3)]),
    ("star", 4, [(0, 1), (0, 2), (0, 3)]),
    ("K3+1", 4, [(0, 1), (1, 2), (0, 2)]),
    ("C4", 4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
    ("paw", 4, [(0, 1), (1, 2), (0, 2), (0, 3)]),
    ("diamond", 4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]),
    ("K4", 4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
]


def all_graphs_up_to_4():
    return [(name, SimpleGraph.of(range(n), edges)) for name, n, edges in CATALOG]


def graphs_with_at_most(k):
    return [(name, g) for name, g in all_graphs_up_to_4() if g.n <= k]

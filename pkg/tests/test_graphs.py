import itertools

import pytest
from hypothesis import given, settings, strategies as st

from chromoduli.errors import GraphParseError
from chromoduli.graphs import (
    Digraph,
    IntPolynomial,
    SimpleGraph,
    canonical_key,
    chromatic_polynomial,
    graph_to_json,
    parse_graph_text,
)
from chromoduli.orientations import proper_coloring_count

from graph_catalog import paw_graph


@st.composite
def simple_graphs(draw, max_vertices=6):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    possible = list(itertools.combinations(range(n), 2))
    if possible:
        edges = draw(st.lists(st.sampled_from(possible), unique=True, max_size=len(possible)))
    else:
        edges = []
    return SimpleGraph.of(range(n), edges)


def test_delete_edge_k2():
    g = SimpleGraph.of([0, 1], [(0, 1)]).delete_edge((0, 1))
    assert g.edges == () and g.vertices == (0, 1)


def test_delete_edge_triangle_gives_path():
    g = SimpleGraph.of(range(3), [(0, 1), (1, 2), (0, 2)]).delete_edge((0, 2))
    assert g.edges == ((0, 1), (1, 2))


def test_delete_edge_paw_structure():
    g = paw_graph().delete_edge((1, 4))
    assert set(g.vertices) == {1, 2, 3, 4}
    assert set(g.edges) == {(1, 2), (1, 3), (2, 3)}
    assert g.degree(4) == 0


def test_delete_unknown_edge():
    with pytest.raises(ValueError, match="unknown edge"):
        SimpleGraph.of([0, 1], [(0, 1)]).delete_edge((0, 2))


def test_contract_k2():
    g = SimpleGraph.of([0, 1], [(0, 1)]).contract_edge((0, 1))
    assert g.vertices == (0,) and g.edges == ()


def test_contract_triangle_merges_parallel():
    g = SimpleGraph.of(range(3), [(0, 1), (1, 2), (0, 2)]).contract_edge((0, 1))
    assert g.vertices == (0, 2) and g.edges == ((0, 2),)


def test_contract_path_hand_check():
    g = SimpleGraph.of(["a", "b", "c"], [("a", "b"), ("b", "c")]).contract_edge(("a", "b"))
    assert g.vertices == ("a", "c") and g.edges == (("a", "c"),)


def test_contract_unknown_edge():
    with pytest.raises(ValueError, match="unknown edge"):
        SimpleGraph.of(range(3), [(0, 1)]).contract_edge((1, 2))


def test_no_loops_or_dangling_edges():
    with pytest.raises(ValueError):
        SimpleGraph.of([0, 1], [(0, 0)])
    with pytest.raises(ValueError):
        SimpleGraph.of([0, 1], [(0, 2)])
    with pytest.raises(ValueError):
        SimpleGraph.of([])


def test_chromatic_paw():
    assert chromatic_polynomial(paw_graph()).coefficients == (0, -2, 5, -4, 1)


def test_chromatic_edgeless():
    for n in range(1, 5):
        assert chromatic_polynomial(SimpleGraph.of(range(n))) == IntPolynomial.monomial(n)


def test_chromatic_k3_matches_coloring_oracle():
    g = SimpleGraph.of(range(3), [(0, 1), (1, 2), (0, 2)])
    chi = chromatic_polynomial(g)
    # brute-force proper-coloring counts at x = 0..3: 0, 0, 0, 6
    assert [proper_coloring_count(g, k) for k in range(4)] == [0, 0, 0, 6]
    assert chi.coefficients == (0, 2, -3, 1)
    assert [chi.evaluate(k) for k in range(4)] == [0, 0, 0, 6]


@settings(deadline=None, max_examples=40)
@given(simple_graphs(), st.integers(min_value=0, max_value=4))
def test_chromatic_counts_proper_colorings(g, k):
    assert chromatic_polynomial(g).evaluate(k) == proper_coloring_count(g, k)


@settings(deadline=None, max_examples=40)
@given(simple_graphs(max_vertices=5))
def test_deletion_contraction_identity_every_edge(g):
    chi = chromatic_polynomial(g)
    for e in g.edges:
        assert chi == chromatic_polynomial(g.delete_edge(e)) - chromatic_polynomial(
            g.contract_edge(e)
        )


@settings(deadline=None, max_examples=40)
@given(simple_graphs())
def test_chromatic_shape(g):
    chi = chromatic_polynomial(g)
    assert chi.is_monic and chi.degree == g.n
    assert chi.coefficients[0] == 0
    for d, c in enumerate(chi.coefficients):
        if c != 0:
            assert (c > 0) == ((-1) ** (g.n - d) > 0)


@settings(deadline=None, max_examples=25)
@given(simple_graphs(max_vertices=5))
def test_memoized_matches_unmemoized(g):
    assert chromatic_polynomial(g, memoize=True) == chromatic_polynomial(g, memoize=False)


def test_canonical_key_relabelings_of_k3():
    a = SimpleGraph.of([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    b = SimpleGraph.of([7, 11, 42], [(11, 7), (42, 11), (7, 42)])
    assert canonical_key(a) == canonical_key(b)


def test_canonical_key_separates_k3_from_path():
    k3 = SimpleGraph.of(range(3), [(0, 1), (1, 2), (0, 2)])
    p3 = SimpleGraph.of(range(3), [(0, 1), (1, 2)])
    assert canonical_key(k3) != canonical_key(p3)


def test_canonical_key_deterministic():
    g = paw_graph()
    assert canonical_key(g) == canonical_key(paw_graph())


def test_evaluate_examples():
    chi = chromatic_polynomial(paw_graph())
    assert chi.evaluate(-1) == 12
    for n in range(5):
        for k in range(4):
            assert IntPolynomial.monomial(n).evaluate(-k) == (-k) ** n
    assert IntPolynomial((0, 2, -3, 1)).derivative_at_zero() == 2


def test_polynomial_normalization_and_arithmetic():
    assert IntPolynomial((1, 2, 0, 0)).coefficients == (1, 2)
    assert IntPolynomial(()).degree == -1
    p = IntPolynomial((1, 1))
    assert (p * p).coefficients == (1, 2, 1)
    assert (p - p).coefficients == ()
    assert (3 * p).coefficients == (3, 3)
    with pytest.raises(TypeError):
        IntPolynomial((1.5,))


def test_digraph_basics():
    d = Digraph.of([0, 1, 2], [(0, 1), (2, 1)])
    assert d.in_degree(1) == 2 and d.out_degree(1) == 0
    assert d.in_neighborhood(1) == frozenset({0, 1, 2})
    assert d.out_neighborhood(0) == frozenset({0, 1})
    assert d.is_sink(1) and d.is_source(0) and d.is_source(2)
    assert d.is_acyclic()
    assert d.reverse().arcs == ((1, 0), (1, 2))
    assert Digraph.of(range(2), [(0, 1), (1, 0)]).is_acyclic() is False
    with pytest.raises(ValueError, match="repeated"):
        Digraph.of(range(2), [(0, 1), (0, 1)])
    with pytest.raises(ValueError, match="loop"):
        Digraph.of(range(2), [(0, 0)])


def test_digraph_from_symmetric():
    g = SimpleGraph.of(range(3), [(0, 1), (1, 2)])
    d = Digraph.from_symmetric(g)
    assert set(d.arcs) == {(0, 1), (1, 0), (1, 2), (2, 1)}
    for v in g.vertices:
        assert d.in_neighborhood(v) == d.out_neighborhood(v) == g.closed_neighborhood(v)


def test_parse_graph_and_digraph():
    g = parse_graph_text("4 4\n0 1\n1 2\n0 2\n0 3\n")
    assert isinstance(g, SimpleGraph)
    assert set(g.edges) == {(0, 1), (1, 2), (0, 2), (0, 3)}
    d = parse_graph_text("digraph\n3 2\n0 1\n2 1\n")
    assert isinstance(d, Digraph)
    assert set(d.arcs) == {(0, 1), (2, 1)}
    assert graph_to_json(g)["kind"] == "graph"
    assert graph_to_json(d)["arcs"] == [[0, 1], [2, 1]]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "garbage",
        "2 1\n0 0\n",
        "2 2\n0 1\n0 1\n",
        "2 1\n0 5\n",
        "2 1\n",
        "x y\n",
        "digraph\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(GraphParseError):
        parse_graph_text(text)


def test_parse_opposite_arcs_allowed():
    d = parse_graph_text("digraph\n2 2\n0 1\n1 0\n")
    assert set(d.arcs) == {(0, 1), (1, 0)}

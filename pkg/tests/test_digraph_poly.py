import itertools

import pytest

from chromoduli.digraph_poly import (
    advisory_flags,
    chi_acyclic,
    chi_for,
    chi_interpolated,
    digraph_polynomial_report,
    full_peel,
    omega_one_zero,
    peel_step,
)
from chromoduli.errors import EngineConsistencyError
from chromoduli.graphs import Digraph, IntPolynomial, SimpleGraph, chromatic_polynomial

from graph_catalog import instar_digraph

CYCLE3 = Digraph.of(range(3), [(0, 1), (1, 2), (2, 0)])


def test_chi_acyclic_instar():
    d = instar_digraph()
    assert chi_acyclic(d, "in").coefficients == (0, 0, -2, 1)  # x^3 - 2x^2
    assert chi_acyclic(d, "out").coefficients == (0, 1, -2, 1)  # x^3 - 2x^2 + x


def test_chi_acyclic_edgeless():
    d = Digraph.of(range(3))
    assert chi_acyclic(d, "in") == IntPolynomial.monomial(3)
    assert chi_acyclic(d, "out") == IntPolynomial.monomial(3)


def test_chi_acyclic_rejects_cycles():
    with pytest.raises(ValueError):
        chi_acyclic(CYCLE3, "in")
    with pytest.raises(ValueError):
        chi_acyclic(instar_digraph(), "sideways")


def test_peel_isolated_vertex():
    d = Digraph.of(range(2), [])
    factor, rest = peel_step(d, 0, "in")
    assert factor.coefficients == (0, 1)  # x
    assert rest.vertices == (1,)


def test_peel_instar_middle_sink():
    factor, rest = peel_step(instar_digraph(), 1, "in")
    assert factor.coefficients == (-2, 1)  # x - 2
    assert set(rest.vertices) == {0, 2} and rest.arcs == ()


def test_peel_rejects_non_sink():
    with pytest.raises(ValueError, match="not a sink"):
        peel_step(instar_digraph(), 0, "in")
    with pytest.raises(ValueError, match="not a source"):
        peel_step(instar_digraph(), 1, "out")


def test_full_peel_matches_closed_formula():
    d = instar_digraph()
    assert full_peel(d, "in") == chi_acyclic(d, "in")
    assert full_peel(d, "out") == chi_acyclic(d, "out")
    with pytest.raises(ValueError):
        full_peel(CYCLE3, "in")


def test_chi_interpolated_edgeless():
    for n in (1, 2, 3):
        d = Digraph.of(range(n))
        assert chi_interpolated(d, "in") == IntPolynomial.monomial(n)


def test_chi_interpolated_instar():
    d = instar_digraph()
    assert chi_interpolated(d, "in").coefficients == (0, 0, -2, 1)
    assert chi_interpolated(d, "out").coefficients == (0, 1, -2, 1)


def test_chi_interpolated_symmetrization_recovers_chromatic():
    g = SimpleGraph.of(range(3), [(0, 1), (1, 2)])
    d = Digraph.from_symmetric(g)
    chi = chromatic_polynomial(g)
    assert chi_interpolated(d, "in") == chi
    assert chi_interpolated(d, "out") == chi


def _three_vertex_digraphs():
    pairs = list(itertools.permutations(range(3), 2))
    for mask in range(2 ** len(pairs)):
        arcs = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
        yield Digraph.of(range(3), arcs)


def test_route_agreement_all_two_vertex_digraphs():
    pairs = [(0, 1), (1, 0)]
    for mask in range(4):
        arcs = [pairs[i] for i in range(2) if (mask >> i) & 1]
        d = Digraph.of(range(2), arcs)
        for mode in ("in", "out"):
            interp = chi_interpolated(d, mode)
            if d.is_acyclic():
                assert interp == chi_acyclic(d, mode) == full_peel(d, mode)


def test_route_agreement_sampled_three_vertex_digraphs():
    sample = [d for i, d in enumerate(_three_vertex_digraphs()) if i % 7 == 0]
    for d in sample:
        for mode in ("in", "out"):
            interp = chi_interpolated(d, mode)
            assert interp.is_monic and interp.degree == 3
            if d.is_acyclic():
                assert interp == chi_acyclic(d, mode) == full_peel(d, mode)


def test_edge_reversal_swaps_polynomials():
    for d in (instar_digraph(), CYCLE3):
        rep = digraph_polynomial_report(d)
        rev = digraph_polynomial_report(d.reverse())
        assert rev.chi_in == rep.chi_out and rev.chi_out == rep.chi_in


def test_report_routes_and_consistency():
    rep = digraph_polynomial_report(instar_digraph())
    assert rep.consistent
    assert rep.route_in == rep.route_out == "acyclic-formula"
    repc = digraph_polynomial_report(CYCLE3)
    assert repc.consistent
    assert repc.route_in == repc.route_out == "interpolation"
    assert repc.chi_in == repc.chi_out  # the directed triangle is reversal-symmetric


def test_omega_one_zero_values():
    assert omega_one_zero(Digraph.of([0]), "in") == 1  # chi = x
    assert omega_one_zero(Digraph.of(range(2)), "in") == 0  # chi = x^2
    assert omega_one_zero(instar_digraph(), "out") == 1  # linear coefficient of x^3-2x^2+x
    assert omega_one_zero(instar_digraph(), "in") == 0


def test_chi_for_picks_cheapest_route():
    assert chi_for(instar_digraph(), "in") == chi_acyclic(instar_digraph(), "in")
    assert chi_for(CYCLE3, "in") == chi_interpolated(CYCLE3, "in")


def test_advisories_warn_but_never_fail():
    # x^3 - 2x^2 is negative at x = 1: flagged, not fatal
    warns = advisory_flags(IntPolynomial((0, 0, -2, 1)), "chi_in")
    assert any("negative value" in w for w in warns)
    rep = digraph_polynomial_report(instar_digraph())
    assert rep.consistent and rep.advisories
    # alternation and log-concavity violations are reported too
    assert advisory_flags(IntPolynomial((0, 1, 2, 1)), "p")
    assert any("log-concave" in w for w in advisory_flags(IntPolynomial((0, 1, 1, 9, 1)), "p"))


def test_interpolation_failure_is_loud(monkeypatch):
    import chromoduli.digraph_poly as dp

    monkeypatch.setattr(dp, "omega", lambda *a, **k: 1)
    with pytest.raises(EngineConsistencyError):
        dp.chi_interpolated(instar_digraph(), "in")

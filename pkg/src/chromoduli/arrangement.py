"""The level-plus-edge hyperplane arrangement of a graph and its bounded chambers.

For a graph G and integer m >= 3 the arrangement consists of the level
functionals z_v - i (v a vertex, i = 0..m-2) and the edge functionals
z_u - z_w.  Bounded chambers are enumerated two independent ways:

* bijectively, from pairs (coloring, acyclic orientation) with an explicit
  interior witness, and
* by incremental sign-vector search with exact-LP feasibility certificates,
  restricted a priori to the open cube (0, m-2)^V, which contains every
  bounded chamber.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError, EngineConsistencyError
from .graphs import SimpleGraph, topological_order
from .lp import solve_lp
from .orientations import DEFAULT_CANDIDATE_BUDGET, acyclic_orientations

DEFAULT_LP_FUNCTIONAL_BUDGET = 64


@dataclass(frozen=True)
class AffineFunctional:
    """Exact affine functional a.z + b with an identifying tag."""

    coefficients: tuple  # Fractions, aligned with the arrangement vertex order
    constant: Fraction
    tag: tuple  # ("level", v, i) or ("edge", u, w)

    def value(self, z):
        return sum(a * x for a, x in zip(self.coefficients, z)) + self.constant

    @property
    def weight(self):
        """L1 norm of the coefficient vector; scales LP margins."""
        return sum(abs(a) for a in self.coefficients)


@dataclass(frozen=True)
class Arrangement:
    graph: SimpleGraph
    m: int
    functionals: tuple

    @property
    def dimension(self):
        return self.graph.n


@dataclass(frozen=True)
class Chamber:
    """Sign vector over the arrangement's functional order plus an interior witness."""

    signs: tuple  # +1 / -1 per functional
    witness: tuple  # exact rationals
    bounded: bool

    @property
    def sign_string(self):
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def to_json(self):
        return {
            "signs": self.sign_string,
            "witness": [f"{x.numerator}/{x.denominator}" for x in self.witness],
            "bounded": self.bounded,
        }


def build_arrangement(graph: SimpleGraph, m: int) -> Arrangement:
    if m < 3:
        raise ValueError(f"m must be at least 3, got {m}")
    vs = graph.vertices
    pos = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    fns = []
    for v in vs:
        for i in range(m - 1):
            coeffs = tuple(Fraction(1) if j == pos[v] else Fraction(0) for j in range(n))
            fns.append(AffineFunctional(coeffs, Fraction(-i), ("level", v, i)))
    for u, w in graph.edges:
        coeffs = tuple(
            Fraction(1) if j == pos[u] else Fraction(-1) if j == pos[w] else Fraction(0)
            for j in range(n)
        )
        fns.append(AffineFunctional(coeffs, Fraction(0), ("edge", u, w)))
    arr = Arrangement(graph, m, tuple(fns))
    assert len(fns) == (m - 1) * n + len(graph.edges)
    return arr


def _margin_lp(functionals, signs, cap=Fraction(1)):
    """Maximize the weighted margin over the region {sign_i * f_i > 0}.

    Returns (witness, margin) with margin > 0, or None when the sign vector
    has no strict interior.
    """
    dim = len(functionals[0].coefficients)
    rows = []
    rhs = []
    for f, s in zip(functionals, signs):
        rows.append([-s * a for a in f.coefficients] + [f.weight])
        rhs.append(s * f.constant)
    rows.append([Fraction(0)] * dim + [Fraction(1)])
    rhs.append(cap)
    objective = [Fraction(0)] * dim + [Fraction(1)]
    sol = solve_lp(rows, rhs, objective)
    if sol.status != "optimal":
        return None
    margin = sol.x[dim]
    if margin <= 0:
        return None
    return sol.x[:dim], margin


def recession_ray(functionals, signs):
    """A nonzero direction in the chamber's recession cone, or None if bounded.

    The cone is {d : sign_i * a_i.d >= 0}.  It is {0} exactly when the LP
    max sum_i sign_i a_i.d  s.t.  0 <= sign_i a_i.d <= 1  has optimum 0.
    """
    dim = len(functionals[0].coefficients)
    rows = []
    rhs = []
    obj = [Fraction(0)] * dim
    for f, s in zip(functionals, signs):
        rows.append([-s * a for a in f.coefficients])
        rhs.append(Fraction(0))
        rows.append([s * a for a in f.coefficients])
        rhs.append(Fraction(1))
        for j, a in enumerate(f.coefficients):
            obj[j] += s * a
    sol = solve_lp(rows, rhs, obj)
    if sol.status != "optimal":  # pragma: no cover - objective is capped
        raise EngineConsistencyError("recession LP must have a bounded optimum")
    if sol.objective == 0:
        return None
    ray = sol.x
    assert any(v != 0 for v in ray)
    return ray


def _signs_at(functionals, witness):
    signs = []
    for f in functionals:
        val = f.value(witness)
        if val == 0:
            raise EngineConsistencyError("witness lies on a hyperplane")
        signs.append(1 if val > 0 else -1)
    return tuple(signs)


def _pair_witness(graph: SimpleGraph, m, sigma, arcs):
    """Interior point for the chamber of a compatible (coloring, orientation) pair.

    Vertices of color c live in (c-1, c), at equally spaced offsets k/(t+1);
    within a color class, an arc u -> w forces x_u > x_w.
    """
    witness = {}
    for color in range(1, m - 1):
        group = [v for v in graph.vertices if sigma[v] == color]
        if not group:
            continue
        gset = set(group)
        sub_arcs = [(u, w) for (u, w) in arcs if u in gset and w in gset]
        order = topological_order(group, sub_arcs)
        assert order is not None  # restriction of an acyclic orientation
        t = len(group)
        for position, v in enumerate(order):
            witness[v] = Fraction(color - 1) + Fraction(t - position, t + 1)
    return tuple(witness[v] for v in graph.vertices)


def bounded_chambers_bijective(graph: SimpleGraph, m, candidate_budget=DEFAULT_CANDIDATE_BUDGET):
    """One chamber per compatible (coloring, acyclic orientation) pair."""
    arr = build_arrangement(graph, m)
    k = m - 2
    cost = (k ** graph.n) * (2 ** len(graph.edges))
    if cost > candidate_budget:
        raise BudgetExceededError(f"{cost} pair candidates exceed budget {candidate_budget}")
    chambers = []
    seen = set()
    for arcs in acyclic_orientations(graph, candidate_budget):
        for colors in itertools.product(range(1, k + 1), repeat=graph.n):
            sigma = dict(zip(graph.vertices, colors))
            if not all(sigma[u] >= sigma[w] for u, w in arcs):
                continue
            witness = _pair_witness(graph, m, sigma, arcs)
            signs = _signs_at(arr.functionals, witness)
            if signs in seen:
                raise EngineConsistencyError("distinct pairs produced the same chamber")
            seen.add(signs)
            chambers.append(Chamber(signs, witness, True))
    chambers.sort(key=lambda c: c.signs)
    return chambers


def bounded_chambers_lp(arr: Arrangement, functional_budget=DEFAULT_LP_FUNCTIONAL_BUDGET):
    """All bounded chambers by incremental sign-vector search with exact LPs.

    Every bounded chamber satisfies 0 < z_v < m-2 coordinatewise, so the
    search fixes those signs up front and only splits on the remaining
    functionals.  Boundedness of each result is certified by the recession
    cone LP.
    """
    fns = arr.functionals
    if len(fns) > functional_budget:
        raise BudgetExceededError(
            f"{len(fns)} functionals exceed LP search budget {functional_budget}"
        )
    m = arr.m
    fixed = {}
    free_idx = []
    for idx, f in enumerate(fns):
        kind = f.tag[0]
        if kind == "level" and f.tag[2] == 0:
            fixed[idx] = 1
        elif kind == "level" and f.tag[2] == m - 2:
            fixed[idx] = -1
        else:
            free_idx.append(idx)

    center = tuple(Fraction(m - 2, 2) for _ in range(arr.dimension))
    regions = [(dict(fixed), center)]
    for idx in free_idx:
        f = fns[idx]
        next_regions = []
        for signs, witness in regions:
            val = f.value(witness)
            side_hit = 0 if val == 0 else (1 if val > 0 else -1)
            for side in (1, -1):
                if side == side_hit:
                    trial = dict(signs)
                    trial[idx] = side
                    next_regions.append((trial, witness))
                    continue
                trial = dict(signs)
                trial[idx] = side
                order = sorted(trial)
                res = _margin_lp([fns[i] for i in order], [trial[i] for i in order])
                if res is not None:
                    next_regions.append((trial, res[0]))
        regions = next_regions

    chambers = []
    for signs, _ in regions:
        sign_vec = tuple(signs[i] for i in range(len(fns)))
        res = _margin_lp(fns, sign_vec)
        if res is None:  # pragma: no cover - regions carry strict witnesses
            raise EngineConsistencyError("final margin LP lost a feasible region")
        ray = recession_ray(fns, sign_vec)
        if ray is not None:  # pragma: no cover - cube-pinned chambers are bounded
            raise EngineConsistencyError("cube-restricted chamber has a recession ray")
        chambers.append(Chamber(sign_vec, res[0], True))
    chambers.sort(key=lambda c: c.signs)
    return chambers


def interior_point(arr: Arrangement, chamber: Chamber):
    """Margin-maximizing interior point of the chamber (deterministic)."""
    res = _margin_lp(arr.functionals, chamber.signs)
    if res is None:
        raise ValueError("sign vector is infeasible")
    return res[0]


def chamber_to_pair(arr: Arrangement, chamber: Chamber):
    """Coloring sigma(v) = ceil(x_v) and orientation u -> w iff x_u > x_w."""
    if not chamber.bounded:
        raise ValueError("chamber must be bounded")
    graph = arr.graph
    x = dict(zip(graph.vertices, chamber.witness))
    sigma = {v: math.ceil(x[v]) for v in graph.vertices}
    arcs = tuple((u, w) if x[u] > x[w] else (w, u) for u, w in graph.edges)
    return sigma, arcs


def pair_to_chamber(arr: Arrangement, sigma, arcs):
    graph = arr.graph
    if not all(sigma[u] >= sigma[w] for u, w in arcs):
        raise ValueError("orientation is not compatible with the coloring")
    witness = _pair_witness(graph, arr.m, sigma, arcs)
    signs = _signs_at(arr.functionals, witness)
    return Chamber(signs, witness, True)

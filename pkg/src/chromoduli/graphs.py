"""Simple graphs, digraphs, and exact integer polynomials.

The chromatic polynomial is computed by memoized deletion-contraction with
the edgeless graph (chi = x^n) as base case.  Contraction immediately
simplifies: loops are dropped and parallel edges merged, so multigraphs are
never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphParseError


def label_sort_key(label):
    """Deterministic total order over mixed int/str vertex labels."""
    if isinstance(label, int):
        return (0, label, "")
    return (1, 0, str(label))


def _edge_key(e):
    return (label_sort_key(e[0]), label_sort_key(e[1]))


def _norm_edge(u, w):
    if u == w:
        raise ValueError(f"loop edge at {u!r} is not allowed")
    return (u, w) if label_sort_key(u) < label_sort_key(w) else (w, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Finite simple graph: labeled vertices, unordered edges, no loops."""

    vertices: tuple
    edges: tuple  # pairs (u, w) with u < w in label order, sorted

    @classmethod
    def of(cls, vertices, edges=()):
        vs = tuple(sorted(set(vertices), key=label_sort_key))
        if not vs:
            raise ValueError("vertex set must be nonempty")
        vset = set(vs)
        norm = set()
        for u, w in edges:
            if u not in vset or w not in vset:
                raise ValueError(f"edge ({u!r}, {w!r}) has an endpoint outside the vertex set")
            norm.add(_norm_edge(u, w))
        return cls(vs, tuple(sorted(norm, key=_edge_key)))

    @property
    def n(self):
        return len(self.vertices)

    def has_edge(self, e):
        u, w = e
        return _norm_edge(u, w) in self.edges

    def neighbors(self, v):
        out = []
        for u, w in self.edges:
            if u == v:
                out.append(w)
            elif w == v:
                out.append(u)
        return tuple(sorted(out, key=label_sort_key))

    def closed_neighborhood(self, v):
        if v not in self.vertices:
            raise ValueError(f"{v!r} is not a vertex")
        return frozenset((v,) + self.neighbors(v))

    def degree(self, v):
        return len(self.neighbors(v))

    def delete_edge(self, e):
        edge = _norm_edge(*e)
        if edge not in self.edges:
            raise ValueError(f"unknown edge {e!r}")
        return SimpleGraph(self.vertices, tuple(x for x in self.edges if x != edge))

    def contract_edge(self, e):
        """Contract e, naming the merged vertex after the smaller endpoint."""
        edge = _norm_edge(*e)
        if edge not in self.edges:
            raise ValueError(f"unknown edge {e!r}")
        keep, drop = edge  # keep is the smaller label
        remap = lambda x: keep if x == drop else x
        new_edges = set()
        for u, w in self.edges:
            if (u, w) == edge:
                continue
            a, b = remap(u), remap(w)
            if a != b:
                new_edges.add(_norm_edge(a, b))
        new_vertices = tuple(v for v in self.vertices if v != drop)
        return SimpleGraph(new_vertices, tuple(sorted(new_edges, key=_edge_key)))


@dataclass(frozen=True)
class Digraph:
    """Finite simple digraph: no loops, no repeated arcs; opposite arcs allowed."""

    vertices: tuple
    arcs: tuple  # ordered pairs (tail, head), sorted

    @classmethod
    def of(cls, vertices, arcs=()):
        vs = tuple(sorted(set(vertices), key=label_sort_key))
        if not vs:
            raise ValueError("vertex set must be nonempty")
        vset = set(vs)
        seen = set()
        for u, w in arcs:
            if u not in vset or w not in vset:
                raise ValueError(f"arc ({u!r}, {w!r}) has an endpoint outside the vertex set")
            if u == w:
                raise ValueError(f"loop arc at {u!r} is not allowed")
            if (u, w) in seen:
                raise ValueError(f"repeated arc ({u!r}, {w!r})")
            seen.add((u, w))
        return cls(vs, tuple(sorted(seen, key=_edge_key)))

    @classmethod
    def from_symmetric(cls, graph: SimpleGraph):
        arcs = []
        for u, w in graph.edges:
            arcs.append((u, w))
            arcs.append((w, u))
        return cls.of(graph.vertices, arcs)

    @property
    def n(self):
        return len(self.vertices)

    def in_degree(self, v):
        return sum(1 for _, w in self.arcs if w == v)

    def out_degree(self, v):
        return sum(1 for u, _ in self.arcs if u == v)

    def in_neighborhood(self, v):
        """v together with its in-neighbors."""
        if v not in self.vertices:
            raise ValueError(f"{v!r} is not a vertex")
        return frozenset([v] + [u for u, w in self.arcs if w == v])

    def out_neighborhood(self, v):
        if v not in self.vertices:
            raise ValueError(f"{v!r} is not a vertex")
        return frozenset([v] + [w for u, w in self.arcs if u == v])

    def is_sink(self, v):
        return self.out_degree(v) == 0

    def is_source(self, v):
        return self.in_degree(v) == 0

    def delete_vertex(self, v):
        if v not in self.vertices:
            raise ValueError(f"{v!r} is not a vertex")
        rest = tuple(x for x in self.vertices if x != v)
        if not rest:
            raise ValueError("cannot delete the last vertex")
        return Digraph(rest, tuple(a for a in self.arcs if v not in a))

    def reverse(self):
        return Digraph.of(self.vertices, [(w, u) for u, w in self.arcs])

    def is_acyclic(self):
        return topological_order(self.vertices, self.arcs) is not None


def topological_order(vertices, arcs):
    """Kahn's algorithm; smallest available label first.  None if cyclic."""
    indeg = {v: 0 for v in vertices}
    out = {v: [] for v in vertices}
    for u, w in arcs:
        indeg[w] += 1
        out[u].append(w)
    ready = sorted((v for v in vertices if indeg[v] == 0), key=label_sort_key)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        changed = False
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
                changed = True
        if changed:
            ready.sort(key=label_sort_key)
    return order if len(order) == len(list(vertices)) else None


@dataclass(frozen=True)
class IntPolynomial:
    """Dense univariate polynomial with arbitrary-precision integer coefficients.

    coefficients[d] multiplies x^d; the tuple carries no trailing zeros.
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"non-integer coefficient {c!r}")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def monomial(cls, degree, coefficient=1):
        return cls((0,) * degree + (coefficient,))

    @property
    def degree(self):
        return len(self.coefficients) - 1  # -1 for the zero polynomial

    @property
    def is_monic(self):
        return bool(self.coefficients) and self.coefficients[-1] == 1

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative_at_zero(self):
        return self.coefficients[1] if len(self.coefficients) > 1 else 0

    def __add__(self, other):
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coefficients))
        out = [0] * (len(self.coefficients) + len(other.coefficients))
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for d in range(self.degree, -1, -1):
            c = self.coefficients[d]
            if c == 0:
                continue
            term = "x" if d == 1 else f"x^{d}" if d else ""
            mag = "" if abs(c) == 1 and d else str(abs(c))
            parts.append(("-" if c < 0 else "+" if parts else "") + mag + term)
        return " ".join(parts)


def chromatic_polynomial(graph: SimpleGraph, memoize=True) -> IntPolynomial:
    """Chromatic polynomial via deletion-contraction.

    The recursion always splits on the lexicographically smallest edge, and
    the memo cache (local to this call) is keyed by a canonical form of the
    edge set, so equal keys imply isomorphic graphs.
    """
    cache = {} if memoize else None

    def rec(g):
        if not g.edges:
            return IntPolynomial.monomial(g.n)
        key = canonical_key(g) if cache is not None else None
        if key is not None and key in cache:
            return cache[key]
        e = g.edges[0]
        value = rec(g.delete_edge(e)) - rec(g.contract_edge(e))
        if key is not None:
            cache[key] = value
        return value

    return rec(graph)


def canonical_key(graph: SimpleGraph):
    """Best-effort canonical form: relabel by color-refined vertex order.

    Equal keys imply isomorphic graphs (hence equal chromatic polynomials);
    isomorphic relabelings often, but not necessarily, share a key.
    """
    vs = graph.vertices
    nbrs = {v: graph.neighbors(v) for v in vs}
    color = {v: graph.degree(v) for v in vs}
    for _ in range(len(vs)):
        sig = {v: (color[v], tuple(sorted(color[w] for w in nbrs[v]))) for v in vs}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in vs}
        if new == color:
            break
        color = new
    order = sorted(vs, key=lambda v: (color[v], label_sort_key(v)))
    pos = {v: i for i, v in enumerate(order)}
    edges = tuple(sorted(tuple(sorted((pos[u], pos[w]))) for u, w in graph.edges))
    return (len(vs), edges)


def parse_graph_text(text):
    """Parse the plain text format: optional 'digraph' header, then 'n m' and m pair lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphParseError("empty graph file")
    directed = False
    if lines[0].lower() == "digraph":
        directed = True
        lines = lines[1:]
        if not lines:
            raise GraphParseError("missing 'n m' header after 'digraph'")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphParseError(f"expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphParseError(f"non-integer header {lines[0]!r}") from exc
    if n <= 0:
        raise GraphParseError("vertex count must be positive")
    body = lines[1:]
    if len(body) != m:
        raise GraphParseError(f"expected {m} edge lines, found {len(body)}")
    pairs = []
    for ln in body:
        toks = ln.split()
        if len(toks) != 2:
            raise GraphParseError(f"expected 'u v', got {ln!r}")
        try:
            u, w = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise GraphParseError(f"non-integer endpoint in {ln!r}") from exc
        if not (0 <= u < n and 0 <= w < n):
            raise GraphParseError(f"endpoint out of range in {ln!r}")
        pairs.append((u, w))
    if not directed:
        seen = set()
        for u, w in pairs:
            key = frozenset((u, w))
            if key in seen:
                raise GraphParseError(f"parallel edge {u} {w}")
            seen.add(key)
    try:
        if directed:
            return Digraph.of(range(n), pairs)
        return SimpleGraph.of(range(n), pairs)
    except ValueError as exc:
        raise GraphParseError(str(exc)) from exc


def load_graph_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def graph_to_json(g):
    """JSON echo of a parsed graph or digraph."""
    if isinstance(g, Digraph):
        return {
            "kind": "digraph",
            "vertices": list(g.vertices),
            "arcs": [list(a) for a in g.arcs],
        }
    return {
        "kind": "graph",
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.edges],
    }

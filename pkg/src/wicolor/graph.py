"""Weighted digraph model and the coloring validity predicate.

Vertices are the dense integers 1..n.  Arc weights are exact rationals
in [0, 1]; every comparison in the package is exact, so validity of a
coloring never depends on floating point rounding.  Floats are rejected
outright at construction time instead of being converted.

A coloring c is valid when every vertex v has same-color weighted
indegree strictly below 1, i.e. the weights of arcs u -> v with
c[u] == c[v] sum to less than 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable

from .errors import PreconditionError

Weight = Fraction


def as_weight(value: Fraction | int | str) -> Fraction:
    """Coerce `value` to an exact weight in [0, 1].

    Accepts Fraction, int, and strings Fraction understands ("7/10",
    "0.7", "1").  Floats are refused: they carry binary rounding error
    and would silently change strict comparisons against 1.
    """
    if isinstance(value, float):
        raise TypeError(f"float weight {value!r} refused; pass a Fraction or a string")
    if isinstance(value, Fraction):
        w = value
    elif isinstance(value, int):
        w = Fraction(value)
    elif isinstance(value, str):
        try:
            w = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse weight {value!r}") from exc
    else:
        raise TypeError(f"unsupported weight type {type(value).__name__}")
    if not 0 <= w <= 1:
        raise ValueError(f"weight {w} outside [0, 1]")
    return w


def cap(w: Fraction) -> int:
    """Largest m with m*w < 1, for a weight 0 < w <= 1.

    For w = p/q in lowest terms this is (q - 1) // p; in particular
    cap(1) == 0 and cap(1/2) == 1.  The strict inequality matters:
    cap gives the most same-colored in-neighbors of weight w a vertex
    tolerates.
    """
    if not 0 < w <= 1:
        raise PreconditionError(f"cap requires 0 < w <= 1, got {w}", witness=w)
    return (w.denominator - 1) // w.numerator


def _check_vertex(n: int, v: object, role: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise TypeError(f"{role} must be an int, got {v!r}")
    if not 1 <= v <= n:
        raise ValueError(f"{role} {v} outside 1..{n}")
    return v


@dataclass(frozen=True, init=False)
class WeightedDigraph:
    """Immutable weighted digraph on vertices 1..n.

    `arcs` is canonicalized to a tuple of (tail, head, weight) triples
    sorted lexicographically, so structurally equal graphs compare and
    hash equal regardless of input order.  Self-loops and parallel arcs
    are rejected; antiparallel pairs u -> v and v -> u are fine.
    """

    n: int
    arcs: tuple[tuple[int, int, Fraction], ...]

    def __init__(self, n: int, arcs: Iterable[tuple[int, int, Fraction | int | str]] = ()):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"vertex count must be a nonnegative int, got {n!r}")
        canon: list[tuple[int, int, Fraction]] = []
        seen: set[tuple[int, int]] = set()
        for tail, head, weight in arcs:
            _check_vertex(n, tail, "arc tail")
            _check_vertex(n, head, "arc head")
            if tail == head:
                raise ValueError(f"self-loop at vertex {tail}")
            if (tail, head) in seen:
                raise ValueError(f"duplicate arc ({tail}, {head})")
            seen.add((tail, head))
            canon.append((tail, head, as_weight(weight)))
        canon.sort()
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", tuple(canon))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def arc_weights(self) -> dict[tuple[int, int], Fraction]:
        return {(t, h): w for t, h, w in self.arcs}

    @cached_property
    def in_arcs(self) -> dict[int, tuple[tuple[int, Fraction], ...]]:
        """For each vertex v, the (tail, weight) pairs of arcs into v."""
        acc: dict[int, list[tuple[int, Fraction]]] = {v: [] for v in self.vertices}
        for t, h, w in self.arcs:
            acc[h].append((t, w))
        return {v: tuple(pairs) for v, pairs in acc.items()}

    @cached_property
    def out_arcs(self) -> dict[int, tuple[tuple[int, Fraction], ...]]:
        acc: dict[int, list[tuple[int, Fraction]]] = {v: [] for v in self.vertices}
        for t, h, w in self.arcs:
            acc[t].append((h, w))
        return {v: tuple(pairs) for v, pairs in acc.items()}

    @cached_property
    def in_neighbors(self) -> dict[int, frozenset[int]]:
        """Tails of arcs into each vertex, regardless of weight."""
        acc: dict[int, set[int]] = {v: set() for v in self.vertices}
        for t, h, _ in self.arcs:
            acc[h].add(t)
        return {v: frozenset(s) for v, s in acc.items()}

    @cached_property
    def weight_scale(self) -> int:
        """lcm of the weight denominators; scaling by it makes all weights integral."""
        return lcm(1, *(w.denominator for _, _, w in self.arcs))


@dataclass(frozen=True, init=False)
class UndirectedWeightedGraph:
    """Immutable weighted undirected simple graph on vertices 1..n.

    Edges are canonicalized to sorted (u, v, weight) triples with u < v.
    """

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int, Fraction | int | str]] = ()):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"vertex count must be a nonnegative int, got {n!r}")
        canon: list[tuple[int, int, Fraction]] = []
        seen: set[tuple[int, int]] = set()
        for a, b, weight in edges:
            _check_vertex(n, a, "edge endpoint")
            _check_vertex(n, b, "edge endpoint")
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            u, v = (a, b) if a < b else (b, a)
            if (u, v) in seen:
                raise ValueError(f"duplicate edge {{{u}, {v}}}")
            seen.add((u, v))
            canon.append((u, v, as_weight(weight)))
        canon.sort()
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adjacency(self) -> dict[int, tuple[tuple[int, Fraction], ...]]:
        acc: dict[int, list[tuple[int, Fraction]]] = {v: [] for v in self.vertices}
        for u, v, w in self.edges:
            acc[u].append((v, w))
            acc[v].append((u, w))
        return {v: tuple(sorted(pairs)) for v, pairs in acc.items()}

    def degree(self, v: int) -> int:
        _check_vertex(self.n, v, "vertex")
        return len(self.adjacency[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(p) for p in self.adjacency.values()), default=0)


Coloring = dict[int, int]


def check_total_coloring(n: int, coloring: Coloring) -> None:
    """Raise PreconditionError unless `coloring` maps exactly 1..n to colors >= 1."""
    expected = set(range(1, n + 1))
    got = set(coloring)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        detail = []
        if missing:
            detail.append(f"uncolored vertices {missing}")
        if extra:
            detail.append(f"unknown vertices {extra}")
        raise PreconditionError(
            "coloring is not total on 1..%d (%s)" % (n, "; ".join(detail)),
            witness=(missing or extra)[0],
        )
    for v in range(1, n + 1):
        c = coloring[v]
        if not isinstance(c, int) or isinstance(c, bool) or c < 1:
            raise PreconditionError(f"vertex {v} has invalid color {c!r}", witness=v)


def weighted_indegree(G: WeightedDigraph, v: int, among: Iterable[int] | None = None) -> Fraction:
    """Sum of weights of arcs into v, optionally restricted to tails in `among`."""
    _check_vertex(G.n, v, "vertex")
    pairs = G.in_arcs[v]
    if among is None:
        return sum((w for _, w in pairs), Fraction(0))
    allowed = set(among)
    return sum((w for t, w in pairs if t in allowed), Fraction(0))


def max_weighted_indegree(G: WeightedDigraph) -> Fraction:
    """Largest weighted indegree over all vertices; 0 for the empty graph."""
    best = Fraction(0)
    for v in G.vertices:
        d = sum((w for _, w in G.in_arcs[v]), Fraction(0))
        if d > best:
            best = d
    return best


def coloring_violations(G: WeightedDigraph, coloring: Coloring) -> list[tuple[int, Fraction]]:
    """Vertices whose same-color weighted indegree reaches 1, with that indegree.

    Returned in ascending vertex order; empty exactly when the coloring
    is valid.  Requires a total coloring of 1..n.
    """
    check_total_coloring(G.n, coloring)
    out: list[tuple[int, Fraction]] = []
    for v in G.vertices:
        c = coloring[v]
        d = sum((w for t, w in G.in_arcs[v] if coloring[t] == c), Fraction(0))
        if d >= 1:
            out.append((v, d))
    return out


def is_valid_coloring(G: WeightedDigraph, coloring: Coloring) -> bool:
    """True iff every vertex keeps same-color weighted indegree strictly below 1."""
    return not coloring_violations(G, coloring)


def underlying_graph(G: WeightedDigraph) -> UndirectedWeightedGraph:
    """Forget orientation: edge {u, v} iff some arc joins u and v.

    When both arcs u -> v and v -> u exist the edge carries the larger
    of the two weights, the one that binds first in degree-based bounds.
    """
    best: dict[tuple[int, int], Fraction] = {}
    for t, h, w in G.arcs:
        key = (t, h) if t < h else (h, t)
        if key not in best or w > best[key]:
            best[key] = w
    return UndirectedWeightedGraph(G.n, [(u, v, w) for (u, v), w in best.items()])


def embed_undirected(H: UndirectedWeightedGraph) -> WeightedDigraph:
    """Replace each edge {u, v} of weight w by the two arcs u -> v and v -> u of weight w.

    A coloring is valid for the result iff for every edge and color
    class it avoids weight-sum 1 in both directions, which matches the
    defective-coloring reading of an undirected instance.
    """
    arcs: list[tuple[int, int, Fraction]] = []
    for u, v, w in H.edges:
        arcs.append((u, v, w))
        arcs.append((v, u, w))
    return WeightedDigraph(H.n, arcs)

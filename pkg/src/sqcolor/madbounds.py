"""Exact maximum average degree and the sparseness threshold formulas.

All quantities here are exact rationals (``fractions.Fraction``); no
floating point enters any density or threshold computation.

``mad(G)`` is the maximum of ``2|E(H)| / |V(H)|`` over nonempty vertex
subsets ``H``.  It is computed by binary search over rational density
guesses, each guess decided by a max-flow feasibility network, with a
witness subset extracted from the final min cut.  Two distinct subgraph
densities on n vertices differ by at least ``1/(n(n-1))``, so the search
terminates with the exact value and an achieving subset.

A note on the degree-5 threshold: the toolkit exposes ``2 + 12/29`` as
the maximum-degree-5 charge floor everywhere.  A bare ``12/29`` (without
the leading 2) sometimes circulates for this bound; the additive form is
the one consistent with the worked charge arithmetic and with the
tight construction whose average degree is exactly ``2 + 12/29``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph


@dataclass(frozen=True)
class DensityCertificate:
    """A vertex subset witnessing a density value 2|E(H)|/|V(H)|."""

    subset: frozenset[int]
    density: Fraction

    def check(self, g: Graph) -> bool:
        """Recompute the density on the subset and compare."""
        if not self.subset:
            return False
        inside = self.subset
        m = sum(1 for u, v in g.edges if u in inside and v in inside)
        return Fraction(2 * m, len(inside)) == self.density


def average_degree(g: Graph) -> Fraction:
    """2|E|/|V|, exact."""
    if g.vertex_count == 0:
        raise ValueError("average degree of the empty graph is undefined")
    return Fraction(2 * g.edge_count, g.vertex_count)


def girth_mad_bound(g_girth: int) -> Fraction:
    """Euler bound: planar graphs of girth g have mad below 2 + 4/(g-2)."""
    if g_girth < 3:
        raise ValueError("girth must be at least 3")
    return 2 + Fraction(4, g_girth - 2)


def main_threshold(delta: int) -> Fraction:
    """The sparseness margin (4*delta - 8) / (5*delta + 2)."""
    if delta < 4:
        raise ValueError("threshold formula is defined for delta >= 4")
    return Fraction(4 * delta - 8, 5 * delta + 2)


def beta(k: int) -> Fraction:
    """The high-vertex send amount 1 - 16/(5k+2), for k >= 8."""
    if k < 8:
        raise ValueError("beta is defined for k >= 8")
    return 1 - Fraction(16, 5 * k + 2)


def min_girth_for_delta(delta: int) -> int:
    """Smallest girth g with 2 + 4/(g-2) <= 2 + main_threshold(delta).

    Equals 7 + ceil(12 / (delta - 2)).
    """
    if delta < 4:
        raise ValueError("defined for delta >= 4")
    return 7 + math.ceil(Fraction(12, delta - 2))


# Densest subgraph via max-flow feasibility


class _Dinic:
    """Max flow with exact Fraction capacities on a small network."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        # arcs stored as parallel lists: to, cap (residual), paired arc index
        self.to: list[int] = []
        self.cap: list[Fraction] = []

    def add_edge(self, u: int, v: int, cap: Fraction) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(Fraction(0))

    def _bfs(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = [s]
        for u in queue:
            for a in self.head[u]:
                v = self.to[a]
                if self.cap[a] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def _dfs(self, u: int, t: int, pushed: Fraction, level: list[int], it: list[int]) -> Fraction:
        if u == t:
            return pushed
        while it[u] < len(self.head[u]):
            a = self.head[u][it[u]]
            v = self.to[a]
            if self.cap[a] > 0 and level[v] == level[u] + 1:
                d = self._dfs(v, t, min(pushed, self.cap[a]), level, it)
                if d > 0:
                    self.cap[a] -= d
                    self.cap[a ^ 1] += d
                    return d
            it[u] += 1
        return Fraction(0)

    def max_flow(self, s: int, t: int) -> Fraction:
        flow = Fraction(0)
        while True:
            level = self._bfs(s, t)
            if level is None:
                return flow
            it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, Fraction(10**18), level, it)
                if pushed == 0:
                    break
                flow += pushed

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        queue = [s]
        for u in queue:
            for a in self.head[u]:
                v = self.to[a]
                if self.cap[a] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def _denser_subgraph_than(g: Graph, guess: Fraction) -> frozenset[int] | None:
    """A vertex set H with |E(H)|/|V(H)| > guess, or None if none exists.

    Network: source -> one node per edge (capacity 1), edge node -> both
    endpoints (effectively infinite), vertex -> sink (capacity guess).
    The min cut is m - max_H (|E(H)| - guess * |V(H)|).
    """
    n, m = g.vertex_count, g.edge_count
    net = _Dinic(2 + m + n)
    source, sink = 0, 1 + m + n
    inf = Fraction(m + 1)
    for i, (u, v) in enumerate(g.edges):
        net.add_edge(source, 1 + i, Fraction(1))
        net.add_edge(1 + i, 1 + m + u, inf)
        net.add_edge(1 + i, 1 + m + v, inf)
    for v in range(n):
        net.add_edge(1 + m + v, sink, guess)
    flow = net.max_flow(source, sink)
    if flow >= m:
        return None
    side = net.source_side(source)
    return frozenset(v for v in range(n) if (1 + m + v) in side)


def mad_exact(g: Graph) -> tuple[Fraction, DensityCertificate]:
    """Exact maximum average degree with a witness subset.

    Returns (mad, certificate) where mad == certificate.density ==
    2|E(H)|/|V(H)| on the certificate subset, and no nonempty subset does
    better.
    """
    n = g.vertex_count
    if n == 0:
        raise ValueError("mad of the empty graph is undefined")
    if g.edge_count == 0:
        return Fraction(0), DensityCertificate(frozenset({0}), Fraction(0))

    def subset_density(subset: frozenset[int]) -> Fraction:
        m_in = sum(1 for u, v in g.edges if u in subset and v in subset)
        return Fraction(m_in, len(subset))

    # Invariants: lo is achieved by `witness`; no subset density exceeds hi.
    witness = frozenset(range(n))
    lo = subset_density(witness)
    hi = Fraction(g.edge_count)
    gap = Fraction(1, n * (n - 1)) if n >= 2 else Fraction(1)
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        found = _denser_subgraph_than(g, mid)
        if found is None:
            hi = mid
        else:
            d = subset_density(found)
            assert d > mid
            lo, witness = d, found
    mad = 2 * lo
    return mad, DensityCertificate(witness, mad)

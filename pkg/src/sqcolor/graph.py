"""Immutable simple undirected graphs with dense integer vertex ids.

Vertices are ``0..n-1``.  Edges are unordered pairs of distinct vertices,
stored normalized as ``(u, v)`` with ``u < v``.  Every operator returns a
new graph; instances never mutate, so they are safe to share freely.

Id discipline: subdivision appends fresh ids at the end, contraction and
induced subgraphs compact ids downward and report the remapping.  This
keeps bookkeeping stable across the generator pipelines that chain many
structural edits.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator


Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Rejects loops, parallel edges and out-of-range endpoints at
    construction time.
    """

    __slots__ = ("_n", "_edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = _norm_edge(u, v)
            if e in seen:
                raise ValueError(f"parallel edge ({e[0]}, {e[1]})")
            seen.add(e)
        self._n = n
        self._edges = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)

    # Basic accessors

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[Edge, ...]:
        """All edges, sorted, each as (u, v) with u < v."""
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return u != v and v in self._adj[u]

    def max_degree(self) -> int:
        if self._n == 0:
            return 0
        return max(len(a) for a in self._adj)

    def min_degree(self) -> int:
        if self._n == 0:
            return 0
        return min(len(a) for a in self._adj)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self._n):
            raise ValueError(f"invalid vertex id {v} (n={self._n})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={len(self._edges)})"

    # Structural operators

    def girth(self) -> int | None:
        """Length of a shortest cycle, or None for a forest.

        Runs a BFS from every vertex; the shortest cycle through the start
        vertex is found when a non-tree edge closes two BFS branches.
        """
        best: int | None = None
        for s in range(self._n):
            dist = {s: 0}
            parent = {s: -1}
            queue = deque([s])
            while queue:
                u = queue.popleft()
                du = dist[u]
                if best is not None and 2 * du >= best:
                    break
                for w in self._adj[u]:
                    if w not in dist:
                        dist[w] = du + 1
                        parent[w] = u
                        queue.append(w)
                    elif w != parent[u]:
                        # Closed walk through s; its length bounds the girth
                        # from above and is exact when s lies on a shortest
                        # cycle.
                        cand = du + dist[w] + 1
                        if best is None or cand < best:
                            best = cand
        return best

    def square(self) -> "Graph":
        """Graph on the same vertices joining every pair at distance <= 2."""
        edges: set[Edge] = set()
        for u in range(self._n):
            reach: set[int] = set()
            for w in self._adj[u]:
                reach.add(w)
                reach.update(self._adj[w])
            reach.discard(u)
            for w in reach:
                if u < w:
                    edges.add((u, w))
        return Graph(self._n, edges)

    def subdivide_edge(self, e: Edge, t: int) -> "Graph":
        """Replace edge e by a path with t new internal vertices.

        New ids are n, n+1, ..., n+t-1 appended along the path from the
        smaller endpoint of e to the larger one.
        """
        if t < 1:
            raise ValueError("subdivision count must be positive")
        e = _norm_edge(*e)
        if e not in set(self._edges):
            raise ValueError(f"edge {e} not in graph")
        u, v = e
        edges = [x for x in self._edges if x != e]
        path = [u] + [self._n + i for i in range(t)] + [v]
        for a, b in zip(path, path[1:]):
            edges.append(_norm_edge(a, b))
        return Graph(self._n + t, edges)

    def contract_edge(self, e: Edge) -> tuple["Graph", tuple[int, ...]]:
        """Contract edge e, merging its endpoints.

        The merged vertex keeps the smaller endpoint's id; ids above the
        larger endpoint shift down by one.  Loops are dropped and parallel
        edges merged, so the result is simple.  Returns (graph, remap)
        where remap[old_id] == new_id.
        """
        e = _norm_edge(*e)
        if e not in set(self._edges):
            raise ValueError(f"edge {e} not in graph")
        u, v = e
        remap = []
        for w in range(self._n):
            if w == v:
                remap.append(u)
            elif w > v:
                remap.append(w - 1)
            else:
                remap.append(w)
        edges: set[Edge] = set()
        for a, b in self._edges:
            na, nb = remap[a], remap[b]
            if na != nb:
                edges.add(_norm_edge(na, nb))
        return Graph(self._n - 1, edges), tuple(remap)

    def induced_subgraph(self, s: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Subgraph induced on vertex set s, with the old->new id map."""
        sel = sorted(set(s))
        for v in sel:
            self._check_vertex(v)
        mapping = {old: new for new, old in enumerate(sel)}
        inside = set(sel)
        edges = [
            (mapping[a], mapping[b])
            for a, b in self._edges
            if a in inside and b in inside
        ]
        return Graph(len(sel), edges), mapping

    def connected_components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        comps = []
        for s in range(self._n):
            if s in seen:
                continue
            comp = []
            queue = deque([s])
            seen.add(s)
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def bfs_distances(self, s: int) -> dict[int, int]:
        self._check_vertex(s)
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist


# Constructors and combinators


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen_graph() -> Graph:
    """Kneser-style construction: vertices are 2-subsets of {0..4}, edges
    join disjoint pairs."""
    pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    index = {p: i for i, p in enumerate(pairs)}
    edges = []
    for a in pairs:
        for b in pairs:
            if a < b and not (set(a) & set(b)):
                edges.append((index[a], index[b]))
    return Graph(10, edges)


def with_edges(g: Graph, extra: Iterable[Edge]) -> Graph:
    """New graph with additional edges (must not duplicate existing ones)."""
    return Graph(g.vertex_count, list(g.edges) + [_norm_edge(*e) for e in extra])


def disjoint_union(a: Graph, b: Graph) -> Graph:
    off = a.vertex_count
    edges = list(a.edges) + [(u + off, v + off) for u, v in b.edges]
    return Graph(a.vertex_count + b.vertex_count, edges)


def degree_sum(g: Graph) -> int:
    return sum(g.degree(v) for v in g.vertices())

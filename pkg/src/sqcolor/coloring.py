"""Exact list-coloring solvers and the greedy-extension primitives.

A coloring is a plain dict mapping vertex id to color id; partial
colorings simply omit vertices.  Solvers return a complete coloring dict
or ``None`` for unsatisfiable.  Everything is deterministic: vertices are
processed in increasing id order and colors in increasing value, so equal
inputs give byte-equal outputs.

Choosability checking is a two-level search (over list assignments, then
over colorings) and is exponential; it is guarded to desk scale.  The
assignment enumeration uses a color universe of size ``|V| * k`` with
colors introduced in canonical first-use order, which covers every
assignment up to color renaming.  Two sound prunings keep it tractable:
a prefix whose induced assignment is uncolorable proves non-choosability
outright (pad the rest with fresh disjoint lists), and a suffix whose
vertices can be peeled with fewer than ``k`` constrained neighbors each
is colorable greedily under every completion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .graph import Graph

Coloring = dict[int, int]


class ListAssignment:
    """Per-vertex color lists, stored as frozensets indexed by vertex id."""

    __slots__ = ("_lists",)

    def __init__(self, lists: Sequence[Iterable[int]]):
        self._lists = tuple(frozenset(l) for l in lists)

    @classmethod
    def uniform(cls, n: int, colors: Iterable[int]) -> "ListAssignment":
        cs = frozenset(colors)
        return cls([cs] * n)

    @classmethod
    def coerce(cls, lists: "ListAssignment | Sequence[Iterable[int]]") -> "ListAssignment":
        if isinstance(lists, ListAssignment):
            return lists
        return cls(lists)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self._lists[v]

    def __len__(self) -> int:
        return len(self._lists)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ListAssignment):
            return NotImplemented
        return self._lists == other._lists

    def __hash__(self) -> int:
        return hash(self._lists)

    def size(self, v: int) -> int:
        return len(self._lists[v])

    def empty_vertices(self) -> list[int]:
        return [v for v, l in enumerate(self._lists) if not l]


def is_proper(g: Graph, coloring: Coloring, lists: ListAssignment | None = None,
              complete: bool = False) -> bool:
    """Independent re-check: list membership plus no monochromatic edge."""
    if complete and len(coloring) != g.vertex_count:
        return False
    for v, c in coloring.items():
        if lists is not None and c not in lists[v]:
            return False
    for u, v in g.edges:
        if u in coloring and v in coloring and coloring[u] == coloring[v]:
            return False
    return True


def list_color(g: Graph, lists: ListAssignment | Sequence[Iterable[int]]) -> Coloring | None:
    """Proper coloring from the lists, or None if unsatisfiable.

    Backtracking with forward checking, lowest vertex first, lowest color
    first.  A vertex with an empty list makes the instance trivially
    unsatisfiable.
    """
    lists = ListAssignment.coerce(lists)
    n = g.vertex_count
    if len(lists) < n:
        raise ValueError("list assignment does not cover all vertices")
    if lists.empty_vertices():
        return None
    avail = [set(lists[v]) for v in range(n)]
    coloring: Coloring = {}

    def assign(v: int, c: int) -> list[tuple[int, int]] | None:
        removed = []
        for w in g.neighbors(v):
            if w not in coloring and c in avail[w]:
                avail[w].discard(c)
                removed.append((w, c))
                if not avail[w]:
                    for x, col in removed:
                        avail[x].add(col)
                    return None
        return removed

    def solve(v: int) -> bool:
        if v == n:
            return True
        for c in sorted(avail[v]):
            removed = assign(v, c)
            if removed is not None:
                coloring[v] = c
                if solve(v + 1):
                    return True
                del coloring[v]
                for w, col in removed:
                    avail[w].add(col)
        return False

    return dict(coloring) if solve(0) else None


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by iterative deepening on the color count.

    Guarded to |V| <= 20.  Colors are introduced in canonical order, which
    prunes color permutations.
    """
    n = g.vertex_count
    if n > 20:
        raise ValueError("chromatic_number is guarded to at most 20 vertices")
    if n == 0:
        return 1
    if g.edge_count == 0:
        return 1
    order = sorted(range(n), key=lambda v: -g.degree(v))
    lower = _greedy_clique_size(g)

    def colorable_with(q: int) -> bool:
        assigned: Coloring = {}

        def place(i: int, used: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            forbidden = {assigned[w] for w in g.neighbors(v) if w in assigned}
            limit = min(used + 1, q)
            for c in range(limit):
                if c in forbidden:
                    continue
                assigned[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
                del assigned[v]
            return False

        return place(0, 0)

    q = max(lower, 1)
    while not colorable_with(q):
        q += 1
    return q


def _greedy_clique_size(g: Graph) -> int:
    best = 1 if g.vertex_count else 0
    for v in sorted(g.vertices(), key=lambda v: -g.degree(v)):
        clique = [v]
        for w in sorted(g.neighbors(v), key=lambda w: -g.degree(w)):
            if all(g.has_edge(w, x) for x in clique):
                clique.append(w)
        best = max(best, len(clique))
    return best


def common_neighbor_graph(g: Graph) -> Graph:
    """Graph joining every two vertices that share a neighbor in g."""
    edges = set()
    for x in g.vertices():
        nbrs = g.neighbors(x)
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                edges.add((nbrs[i], nbrs[j]))
    return Graph(g.vertex_count, edges)


def injective_list_color(g: Graph, lists: ListAssignment | Sequence[Iterable[int]]) -> Coloring | None:
    """Coloring where vertices with a common neighbor get distinct colors.

    Properness on g itself is not required; this is exactly list coloring
    of the common-neighbor graph.
    """
    return list_color(common_neighbor_graph(g), lists)


def available_colors(g2: Graph, v: int, partial: Coloring,
                     lists: ListAssignment | Sequence[Iterable[int]]) -> frozenset[int]:
    """Colors of L(v) not used on v's colored neighbors in g2."""
    lists = ListAssignment.coerce(lists)
    if v in partial:
        raise ValueError(f"vertex {v} is already colored")
    used = {partial[w] for w in g2.neighbors(v) if w in partial}
    return frozenset(lists[v] - used)


@dataclass(frozen=True)
class ExtendFailure:
    """First stuck vertex of a greedy extension, with the progress made."""

    vertex: int
    partial: tuple[tuple[int, int], ...]


def extend_in_order(g2: Graph, order: Sequence[int], partial: Coloring,
                    lists: ListAssignment | Sequence[Iterable[int]]) -> Coloring | ExtendFailure:
    """Greedily color the vertices of `order`, lowest available color first.

    `order` must list exactly the uncolored vertices, each once.  Returns
    the completed coloring, or an ExtendFailure naming the first vertex
    with no available color.  The failure is a result, not an error; the
    reducibility oracle uses it as a probe.
    """
    lists = ListAssignment.coerce(lists)
    uncolored = set(g2.vertices()) - set(partial)
    if len(order) != len(set(order)) or set(order) != uncolored:
        raise ValueError("order must cover exactly the uncolored vertices")
    acc = dict(partial)
    for v in order:
        avail = lists[v] - {acc[w] for w in g2.neighbors(v) if w in acc}
        if not avail:
            return ExtendFailure(v, tuple(sorted(acc.items())))
        acc[v] = min(avail)
    return acc


def degree_choosable_solve(g: Graph, lists: ListAssignment | Sequence[Iterable[int]]) -> Coloring | None:
    """Exact solve for assignments with every list at least degree-sized.

    The size precondition is what makes the search well-behaved on the
    two-cycles-sharing-an-edge structures the reducibility proofs hand it;
    success is established by search, never assumed from theory.
    """
    lists = ListAssignment.coerce(lists)
    if g.vertex_count > 20:
        raise ValueError("degree_choosable_solve is guarded to at most 20 vertices")
    for v in g.vertices():
        if lists.size(v) < g.degree(v):
            raise ValueError(f"list of vertex {v} is smaller than its degree")
    return list_color(g, lists)


# Choosability decision


def is_choosable(g: Graph, k: int) -> bool:
    """True iff every assignment of k-element lists admits a proper coloring.

    Guarded to |V| <= 12 and k <= 6.  Enumerates list assignments over a
    universe of |V|*k colors in canonical first-use order; see the module
    docstring for the two sound prunings.
    """
    n = g.vertex_count
    if n > 12 or k > 6:
        raise ValueError("is_choosable is guarded to |V| <= 12 and k <= 6")
    if k < 1:
        raise ValueError("k must be positive")
    if n == 0:
        return True

    universe = n * k
    neighbors = [set(g.neighbors(v)) for v in range(n)]

    def suffix_peels(prefix_len: int) -> bool:
        # Greedy certificate: suffix vertices removable one by one, each
        # having < k neighbors among the vertices still present.
        alive = set(range(n))
        suffix = set(range(prefix_len, n))
        changed = True
        while suffix and changed:
            changed = False
            for v in sorted(suffix):
                if len(neighbors[v] & alive) < k:
                    alive.discard(v)
                    suffix.discard(v)
                    changed = True
        return not suffix

    def prefix_colorable(assigned: list[frozenset[int]]) -> bool:
        sub, mapping = g.induced_subgraph(range(len(assigned)))
        sub_lists = [assigned[old] for old in sorted(mapping, key=mapping.get)]
        return list_color(sub, sub_lists) is not None

    def candidate_lists(introduced: int) -> Iterable[tuple[frozenset[int], int]]:
        # k-subsets of already-introduced colors plus a canonical block of
        # fresh ones; yields (list, new introduced count).
        for fresh in range(min(k, universe - introduced) + 1):
            old_part = k - fresh
            if old_part > introduced:
                continue
            fresh_block = tuple(range(introduced, introduced + fresh))
            for olds in combinations(range(introduced), old_part):
                yield frozenset(olds + fresh_block), introduced + fresh

    def search(assigned: list[frozenset[int]], introduced: int) -> bool:
        """True if every completion of the current prefix is colorable."""
        if not prefix_colorable(assigned):
            # Pad the remaining vertices with pairwise disjoint fresh lists:
            # a full assignment no coloring satisfies.
            return False
        depth = len(assigned)
        if depth == n:
            return True
        if suffix_peels(depth):
            return True
        for lst, intro2 in candidate_lists(introduced):
            assigned.append(lst)
            ok = search(assigned, intro2)
            assigned.pop()
            if not ok:
                return False
        return True

    return search([], 0)

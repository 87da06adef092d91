"""Generators for the tight sparse constructions and their verification.

Two families are built.  The first starts from a biregular bipartite
graph (part A of degree k-2, part B of degree k-3), subdivides every
edge twice, then threads a spanning cycle through A subdivided three
times per edge and one through B subdivided twice per edge.  Its average
degree is 3 - (7k-18)/(2k^2-3k-6).  The second starts from a
(k-2)-regular graph on 2M vertices plus an independent set B of M
vertices, subdivides every base edge five times, joins the center
vertex of each resulting 5-thread to B so each B-vertex reaches degree
k-2, then adds spanning cycles through A and through B, each subdivided
three times per edge.  Its average degree is 2 + (4k-8)/(5k+2), for
every M and seed.

Contracting one edge on what was each spanning cycle removes one
2-vertex per cycle and leaves a graph free of all the reducible
configurations the detectors know.

Base graphs are sampled with a seeded configuration model (pairing with
rejection of loops and parallels); the average-degree and
configuration-freeness claims depend only on the degree sequences, not
on which simple graph is drawn.  Every step is logged in the recipe, and
replaying a recipe reproduces the exact edge list.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph
from .madbounds import average_degree


@dataclass(frozen=True)
class ConstructionRecipe:
    kind: str  # 'example1' or 'example2'
    k: int
    m: int | None
    seed: int
    contracted: bool
    steps: tuple[str, ...]


def biregular_bipartite(a_deg: int, b_deg: int, seed: int,
                        parts: tuple[int, int] | None = None) -> Graph:
    """Simple bipartite graph, part A of degree a_deg, part B of b_deg.

    Without explicit part sizes the smallest balanced choice
    (|A|, |B|) = (b_deg, a_deg) is used.  Sampled by pairing stubs with
    rejection until simple.
    """
    if a_deg < 1 or b_deg < 1:
        raise ValueError("degrees must be positive")
    if parts is None:
        na, nb = b_deg, a_deg
    else:
        na, nb = parts
        if na * a_deg != nb * b_deg:
            raise ValueError("part sizes do not balance the degree sequence")
    if a_deg > nb or b_deg > na:
        raise ValueError("degree exceeds the opposite part size")
    rng = random.Random(seed)
    a_stubs = [v for v in range(na) for _ in range(a_deg)]
    for _ in range(100000):
        b_stubs = [na + v for v in range(nb) for _ in range(b_deg)]
        rng.shuffle(b_stubs)
        edges = set()
        ok = True
        for u, w in zip(a_stubs, b_stubs):
            if (u, w) in edges:
                ok = False
                break
            edges.add((u, w))
        if ok:
            return Graph(na + nb, edges)
    raise ValueError("failed to sample a simple biregular bipartite graph")


def regular_graph(d: int, n: int, seed: int) -> Graph:
    """Simple d-regular graph on n vertices via the pairing model."""
    if d >= n:
        raise ValueError("need d < n")
    if (d * n) % 2:
        raise ValueError("d * n must be even")
    rng = random.Random(seed)
    for _ in range(100000):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        it = iter(stubs)
        for u, w in zip(it, it):
            if u == w:
                ok = False
                break
            e = (u, w) if u < w else (w, u)
            if e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph(n, edges)
    raise ValueError("failed to sample a simple regular graph")


def _regular_pairing(d: int, n: int, seed: int) -> list[tuple[int, int]]:
    """d-regular multigraph pairing (loops and parallels allowed).

    Used as the construction base when a simple d-regular graph on n
    vertices does not exist; every base edge is subdivided afterwards,
    which restores simplicity.
    """
    if (d * n) % 2:
        raise ValueError("d * n must be even")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    it = iter(stubs)
    return [(u, w) for u, w in zip(it, it)]


def _add_subdivided_path(n: int, edges: list[tuple[int, int]], a: int, b: int,
                         t: int) -> tuple[int, list[int]]:
    """Append a path a - x1 .. xt - b with fresh internal ids; returns the
    new vertex count and the internal ids."""
    internals = list(range(n, n + t))
    seq = [a] + internals + [b]
    for u, w in zip(seq, seq[1:]):
        edges.append((u, w) if u < w else (w, u))
    return n + t, internals


def _subdivided_cycle(n: int, edges: list[tuple[int, int]],
                      cycle: list[int], t: int,
                      steps: list[str]) -> tuple[int, list[tuple[int, int]]]:
    """Spanning cycle through `cycle` in order, each edge subdivided t
    times; returns new vertex count and one contractible edge per cycle
    edge (the first edge of each subdivided path)."""
    first_edges = []
    for i, a in enumerate(cycle):
        b = cycle[(i + 1) % len(cycle)]
        n, internals = _add_subdivided_path(n, edges, a, b, t)
        first_edges.append((min(a, internals[0]), max(a, internals[0])))
        steps.append(f"cycle edge {a}-{b} subdivided {t}x "
                     f"(internals {internals[0]}..{internals[-1]})")
    return n, first_edges


def example1(k: int, seed: int = 0, contracted: bool = False,
             allow_untight: bool = False) -> tuple[Graph, ConstructionRecipe]:
    """The bipartite-based construction; tight for k in {4, 5}.

    Other k values require allow_untight=True.
    """
    if k not in (4, 5) and not allow_untight:
        raise ValueError("example1 is tight only for k in {4, 5}; "
                         "pass allow_untight=True for other k")
    if k < 4:
        raise ValueError("k must be at least 4")
    a_deg, b_deg = k - 2, k - 3
    # smallest scale with both parts big enough for a spanning cycle
    c = 1
    while c * b_deg < 3 or c * a_deg < 3:
        c += 1
    na, nb = c * b_deg, c * a_deg
    steps = [f"biregular base A({a_deg}-regular, {na}) B({b_deg}-regular, {nb}) "
             f"seed {seed}"]
    base = biregular_bipartite(a_deg, b_deg, seed, parts=(na, nb))
    n = base.vertex_count
    edges: list[tuple[int, int]] = []
    for u, w in base.edges:
        n, internals = _add_subdivided_path(n, edges, u, w, 2)
        steps.append(f"base edge {u}-{w} subdivided 2x")
    a_part = list(range(na))
    b_part = list(range(na, na + nb))
    n, a_first = _subdivided_cycle(n, edges, a_part, 3, steps)
    n, b_first = _subdivided_cycle(n, edges, b_part, 2, steps)
    g = Graph(n, edges)
    if contracted:
        g, steps = _contract_two(g, a_first[0], b_first[0], steps)
    recipe = ConstructionRecipe("example1", k, None, seed, contracted, tuple(steps))
    return g, recipe


def example2(k: int, m: int, seed: int = 0,
             contracted: bool = False) -> tuple[Graph, ConstructionRecipe]:
    """The regular-based construction; tight for k >= 6.

    Requires (k-2)*2m even and k-2 < 2m.
    """
    if k < 6:
        raise ValueError("k must be at least 6")
    if m < 2:
        raise ValueError("m must be at least 2")
    if ((k - 2) * 2 * m) % 2:
        raise ValueError("infeasible degree sequence")
    if k - 2 < 2 * m:
        base_edges = list(regular_graph(k - 2, 2 * m, seed).edges)
        steps = [f"regular base ({k - 2}-regular on {2 * m}) seed {seed}"]
    else:
        # no simple base exists; a multigraph pairing works because every
        # base edge is subdivided five times below
        base_edges = _regular_pairing(k - 2, 2 * m, seed)
        steps = [f"regular multigraph base ({k - 2}-regular pairing on "
                 f"{2 * m}) seed {seed}"]
    na = 2 * m
    n = na + m  # B vertices take ids na .. na+m-1
    b_part = list(range(na, na + m))
    edges: list[tuple[int, int]] = []
    centers = []
    for u, w in base_edges:
        n, internals = _add_subdivided_path(n, edges, u, w, 5)
        centers.append(internals[2])
        steps.append(f"base edge {u}-{w} subdivided 5x, center {internals[2]}")
    for i, cvert in enumerate(centers):
        bv = b_part[i // (k - 2)]
        edges.append((min(cvert, bv), max(cvert, bv)))
        steps.append(f"center {cvert} joined to {bv}")
    a_part = list(range(na))
    n, a_first = _subdivided_cycle(n, edges, a_part, 3, steps)
    n, b_first = _subdivided_cycle(n, edges, b_part, 3, steps)
    g = Graph(n, edges)
    if contracted:
        g, steps = _contract_two(g, a_first[0], b_first[0], steps)
    recipe = ConstructionRecipe("example2", k, m, seed, contracted, tuple(steps))
    return g, recipe


def _contract_two(g: Graph, e1: tuple[int, int], e2: tuple[int, int],
                  steps: list[str]) -> tuple[Graph, list[str]]:
    steps = list(steps)
    g, remap = g.contract_edge(e1)
    steps.append(f"contracted first-cycle edge {e1[0]}-{e1[1]}")
    e2m = (remap[e2[0]], remap[e2[1]])
    g, _ = g.contract_edge(e2m)
    steps.append(f"contracted second-cycle edge {e2[0]}-{e2[1]}")
    return g, steps


def replay(recipe: ConstructionRecipe) -> Graph:
    """Re-run a recipe; the result is edge-for-edge identical."""
    if recipe.kind == "example1":
        g, _ = example1(recipe.k, recipe.seed, recipe.contracted,
                        allow_untight=True)
        return g
    if recipe.kind == "example2":
        g, _ = example2(recipe.k, recipe.m, recipe.seed, recipe.contracted)
        return g
    raise ValueError(f"unknown recipe kind {recipe.kind!r}")


def example1_formula(k: int) -> Fraction:
    return 3 - Fraction(7 * k - 18, 2 * k * k - 3 * k - 6)


def example2_formula(k: int) -> Fraction:
    return 2 + Fraction(4 * k - 8, 5 * k + 2)


@dataclass(frozen=True)
class DegreeComparison:
    kind: str
    k: int
    counted: Fraction
    formula: Fraction

    @property
    def matches(self) -> bool:
        return self.counted == self.formula


def verify_example_degree(kind: str, k: int) -> DegreeComparison:
    """Rebuild the uncontracted construction and compare its exact
    average degree against the closed formula."""
    if kind == "example1":
        g, _ = example1(k, seed=0, contracted=False, allow_untight=True)
        return DegreeComparison(kind, k, average_degree(g), example1_formula(k))
    if kind == "example2":
        g, _ = example2(k, m=2, seed=0, contracted=False)
        return DegreeComparison(kind, k, average_degree(g), example2_formula(k))
    raise ValueError(f"unknown construction kind {kind!r}")

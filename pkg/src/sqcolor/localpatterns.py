"""Catalog of theorem-local reducible patterns.

Each discharging theorem's case analysis removes a handful of small
rooted structures by direct recoloring; this module holds those
templates as data.  A pattern names its theorem, the k-range it applies
to inside that theorem, the root degree, and a matcher that inspects the
root's incident threads and neighbors.  Matched instances carry the
reduction plan (deleted vertices, recolored vertices, coloring order)
used by the reducibility oracle.

Catalog summaries (root is always a vertex of the stated degree):

delta5
  d5:3v-three2-2thread    three 2-neighbors, an incident 2-thread
  d5:3v-one3-2thread      one 3-neighbor, two 2-neighbors, one on a
                          2-thread, the other on a 2-thread or on a
                          1-thread to a weak 3-neighbor
delta6
  d6:4v-all-directions    four 2-neighbors, at least three incident
                          2-threads, fourth thread a 2-thread or a
                          1-thread to a medium weak neighbor
  d6:3v-three2-2thread    three 2-neighbors, an incident 2-thread
  d6:3v-three1-medium     three incident 1-threads, all weak neighbors
                          medium
  d6:3v-medium-2thread    exactly one medium neighbor, two 2-neighbors,
                          one on a 2-thread, the other on a 2-thread or
                          a 1-thread to a medium weak neighbor
delta7
  d7:5v-five-2threads     five incident 2-threads
  d7:4v-two2-two1         two incident 2-threads and two incident
                          1-threads
  d7:4v-three2-no5        at least three incident 2-threads, no neighbor
                          of degree 5 or more
  d7:3v-three2-2thread    three 2-neighbors, one on a 2-thread
  d7:3v-three1-weak5      three incident 1-threads, one to a weak
                          neighbor of degree at most 5
  d7:3v-one2thread-two3   exactly one 2-neighbor, on a 2-thread, both
                          other neighbors of degree 3
  d7:3v-two2threads-le5   two 2-neighbors both on 2-threads, third
                          neighbor of degree at most 5
  d7:3v-mixed-le4         one 2-thread and one 1-thread, third neighbor
                          of degree at most 4
  d7:3v-mixed-5-weak5     one 2-thread, one 1-thread to a weak neighbor
                          of degree at most 5, third neighbor of degree 5
  d7:3v-two1-weak5-third3 two 1-threads to weak neighbors of degree at
                          most 5, third neighbor of degree 3
deltaK
  dk:3v-three2-qual       three 2-neighbors, one incident thread a
                          2-thread or a 1-thread to a medium or low weak
                          neighbor
  dk:3v-two2threads       exactly two 2-neighbors, both on 2-threads,
                          third neighbor medium or low
  dk:3v-mixed-low         one 2-thread, one 1-thread, third neighbor low
  dk:3v-mixed-medium      one 2-thread, one 1-thread to a low weak
                          neighbor, third neighbor medium
  dk:3v-two1-lowweak      two 1-threads, third neighbor low, a low weak
                          neighbor (k any)
  dk:3v-two1-medium       two 1-threads to medium weak neighbors, third
                          neighbor low (k >= 23)
  dk:3v-one1-lowlow       exactly one 2-neighbor, on a 1-thread to a
                          medium or low weak neighbor, both other
                          neighbors low (k >= 15)
  dk:3v-one2thread-lowlow exactly one 2-neighbor, on a 2-thread, both
                          other neighbors low; at k=8 both of degree 3,
                          at k in {9,10} both of degree at most 4
  dk:4v-four2-2thread     four 2-neighbors, an incident 2-thread
  dk:4v-four1-lowweak     four incident 1-threads, a low weak neighbor
                          (k >= 15)
  dk:4v-three2threads-low exactly three 2-neighbors, all on 2-threads,
                          fourth neighbor low
  dk:4v-one2thread-low    exactly three 2-neighbors, exactly one on a
                          2-thread, fourth neighbor low (k >= 19)
  dk:4v-two2-one1-third3  two 2-threads, one 1-thread, fourth neighbor
                          of degree 3
  dk:4v-two2-one1-low4    two 2-threads, one 1-thread, fourth neighbor
                          low of degree at least 4 (k >= 11)
  dk:5v-five2-two2threads five 2-neighbors, at least two on 2-threads
  dk:5v-four2threads-low  exactly four 2-neighbors, all on 2-threads,
                          fifth neighbor of degree at most 6 (k >= 15)
  dk:6v-six2-five2threads six 2-neighbors, at least five incident
                          2-threads, root low (k >= 15)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .graph import Graph
from .configurations import (
    ConfigurationInstance,
    Thread,
    ThreadSet,
    degree_class,
    find_threads,
)


@dataclass(frozen=True)
class NeighborInfo:
    vertex: int
    deg: int
    thread_idx: int | None
    length: int | None
    far: int | None
    far_deg: int | None


@dataclass
class PatternContext:
    g: Graph
    ts: ThreadSet
    theorem: str
    k: int

    def neighbor_info(self, v: int) -> list[NeighborInfo]:
        g, ts = self.g, self.ts
        internal_map = ts.internal_to_thread()
        out = []
        for w in g.neighbors(v):
            dw = g.degree(w)
            entry = NeighborInfo(w, dw, None, None, None, None)
            if dw == 2 and w in internal_map:
                ti = internal_map[w]
                t = ts.threads[ti]
                # w must sit at v's end of the thread
                at_v = ((t.internal[0] == w and t.endpoints[0] == v)
                        or (t.internal[-1] == w and t.endpoints[1] == v))
                if at_v:
                    far = t.far_end(v) if t.endpoints[0] != t.endpoints[1] else v
                    entry = NeighborInfo(w, dw, ti, t.length, far, g.degree(far))
            out.append(entry)
        return out

    def cls(self, degree: int) -> str:
        return degree_class(self.theorem, self.k, degree)


Matcher = Callable[[PatternContext, int, list[NeighborInfo]], dict | None]


@dataclass(frozen=True)
class LocalPattern:
    pattern_id: str
    theorem: str
    summary: str
    root_degree: int
    matcher: Matcher
    k_min: int | None = None
    k_max: int | None = None

    def in_scope(self, k: int) -> bool:
        if self.k_min is not None and k < self.k_min:
            return False
        if self.k_max is not None and k > self.k_max:
            return False
        return True


def _threads_of(nbrs: list[NeighborInfo], length: int) -> list[NeighborInfo]:
    return [n for n in nbrs if n.length == length]


def _two_nbrs(nbrs: list[NeighborInfo]) -> list[NeighborInfo]:
    return [n for n in nbrs if n.deg == 2]


def _big_nbrs(nbrs: list[NeighborInfo]) -> list[NeighborInfo]:
    return [n for n in nbrs if n.deg >= 3]


def _plan(v: int, deleted: tuple[int, ...], recolored: tuple[int, ...],
          order: tuple[int, ...], **extra) -> dict:
    return dict(root=(v,), deleted=deleted, recolored=recolored,
                color_order=order, **extra)


# delta5


def _d5_three2_2thread(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    t2 = _threads_of(nbrs, 2)
    if len(two) == 3 and t2:
        u = t2[0].vertex
        return _plan(v, (u,), (v,), (v, u), pivot=(u,))
    return None


def _d5_one3_2thread(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    if len(two) != 2 or len(big) != 1 or big[0].deg != 3:
        return None
    t2 = _threads_of(nbrs, 2)
    if not t2:
        return None
    u = t2[0].vertex
    others = [n for n in two if n.vertex != u]
    w = others[0]
    if w.length == 2 or (w.length == 1 and w.far_deg == 3):
        return _plan(v, (u, v, w.vertex), (), (v, w.vertex, u), pivot=(u,))
    return None


# delta6  (medium is degree 3..4, high 5..6)


def _d6_all_directions(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    if len(two) != 4:
        return None
    t2 = _threads_of(nbrs, 2)
    if len(t2) < 3:
        return None
    rest = [n for n in two if n not in t2]
    if rest:
        n = rest[0]
        if not (n.length == 1 and n.far_deg is not None and 3 <= n.far_deg <= 4):
            return None
    deleted = (v,) + tuple(n.vertex for n in two)
    t1 = _threads_of(nbrs, 1)
    first = (t1[0].vertex,) if t1 else ()
    order = first + (v,) + tuple(x for x in deleted if x != v and x not in first)
    return _plan(v, deleted, (), order)


def _d6_three2_2thread(ctx, v, nbrs):
    if len(_two_nbrs(nbrs)) == 3 and _threads_of(nbrs, 2):
        u = _threads_of(nbrs, 2)[0].vertex
        return _plan(v, (u,), (v,), (v, u))
    return None


def _d6_three1_medium(ctx, v, nbrs):
    t1 = _threads_of(nbrs, 1)
    if len(t1) == 3 and all(n.far_deg is not None and 3 <= n.far_deg <= 4 for n in t1):
        deleted = (v,) + tuple(n.vertex for n in t1)
        order = tuple(n.vertex for n in t1) + (v,)
        return _plan(v, deleted, (), order)
    return None


def _d6_medium_2thread(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    if len(two) != 2 or len(big) != 1 or not (3 <= big[0].deg <= 4):
        return None
    t2 = _threads_of(nbrs, 2)
    if not t2:
        return None
    u1 = t2[0].vertex
    u2 = [n for n in two if n.vertex != u1][0]
    if u2.length == 2 or (u2.length == 1 and u2.far_deg is not None
                          and 3 <= u2.far_deg <= 4):
        return _plan(v, (v, u1, u2.vertex), (), (v, u2.vertex, u1))
    return None


# delta7  (high 6..7, medium 4..5, low 3)


def _d7_five_2threads(ctx, v, nbrs):
    if len(_threads_of(nbrs, 2)) == 5:
        deleted = (v,) + tuple(n.vertex for n in nbrs)
        return _plan(v, deleted, (), deleted)
    return None


def _d7_two2_two1(ctx, v, nbrs):
    if len(_threads_of(nbrs, 2)) == 2 and len(_threads_of(nbrs, 1)) == 2:
        u = _threads_of(nbrs, 2)[0].vertex
        return _plan(v, (u,), (v,), (v, u))
    return None


def _d7_three2_no5(ctx, v, nbrs):
    t2 = _threads_of(nbrs, 2)
    if len(t2) >= 3 and all(n.deg <= 4 for n in nbrs):
        rec = tuple(n.vertex for n in t2[:3])
        return _plan(v, (v,), rec, (v,) + rec)
    return None


def _d7_three2_2thread(ctx, v, nbrs):
    if len(_two_nbrs(nbrs)) == 3 and _threads_of(nbrs, 2):
        u = _threads_of(nbrs, 2)[0].vertex
        return _plan(v, (u,), (v,), (v, u))
    return None


def _d7_three1_weak5(ctx, v, nbrs):
    t1 = _threads_of(nbrs, 1)
    if len(t1) == 3:
        weak = [n for n in t1 if n.far_deg is not None and n.far_deg <= 5]
        if weak:
            u = weak[0].vertex
            return _plan(v, (u,), (v,), (u, v))
    return None


def _d7_one2thread_two3(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    if (len(two) == 1 and two[0].length == 2 and len(big) == 2
            and all(n.deg == 3 for n in big)):
        u = two[0].vertex
        return _plan(v, (u,), (v,), (v, u))
    return None


def _d7_two2threads_le5(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    if (len(two) == 2 and all(n.length == 2 for n in two)
            and len(big) == 1 and big[0].deg <= 5):
        u1, u2 = (n.vertex for n in two)
        return _plan(v, (v, u1, u2), (), (v, u1, u2))
    return None


def _d7_mixed_le4(ctx, v, nbrs):
    t2 = _threads_of(nbrs, 2)
    t1 = _threads_of(nbrs, 1)
    big = _big_nbrs(nbrs)
    if len(t2) == 1 and len(t1) == 1 and len(big) == 1 and big[0].deg <= 4:
        u1 = t2[0].vertex
        return _plan(v, (u1,), (v,), (v, u1))
    return None


def _d7_mixed_5_weak5(ctx, v, nbrs):
    t2 = _threads_of(nbrs, 2)
    t1 = _threads_of(nbrs, 1)
    big = _big_nbrs(nbrs)
    if (len(t2) == 1 and len(t1) == 1 and len(big) == 1 and big[0].deg == 5
            and t1[0].far_deg is not None and t1[0].far_deg <= 5):
        u1, u2 = t2[0].vertex, t1[0].vertex
        return _plan(v, (v, u1, u2), (), (v, u2, u1))
    return None


def _d7_two1_weak5_third3(ctx, v, nbrs):
    t1 = _threads_of(nbrs, 1)
    big = _big_nbrs(nbrs)
    if (len(t1) == 2 and len(big) == 1 and big[0].deg == 3
            and all(n.far_deg is not None and n.far_deg <= 5 for n in t1)):
        u1, u2 = (n.vertex for n in t1)
        return _plan(v, (v, u1, u2), (), (u1, u2, v))
    return None


# deltaK


def _dk_qualifying(n: NeighborInfo, ctx: PatternContext) -> bool:
    if n.length == 2:
        return True
    if n.length == 1 and n.far_deg is not None:
        return ctx.cls(n.far_deg) in ("medium", "low")
    return False


def _dk_three2_qual(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    if len(two) != 3:
        return None
    qual = [n for n in two if _dk_qualifying(n, ctx)]
    if qual:
        u = qual[0].vertex
        return _plan(v, (u,), (v,), (u, v))
    return None


def _dk_two2threads(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    if (len(two) == 2 and all(n.length == 2 for n in two) and len(big) == 1
            and ctx.cls(big[0].deg) in ("medium", "low")):
        u1, u2 = (n.vertex for n in two)
        return _plan(v, (v, u1, u2), (), (v, u1, u2))
    return None


def _dk_mixed_low(ctx, v, nbrs):
    t2 = _threads_of(nbrs, 2)
    t1 = _threads_of(nbrs, 1)
    big = _big_nbrs(nbrs)
    if (len(t2) == 1 and len(t1) == 1 and len(big) == 1
            and ctx.cls(big[0].deg) == "low"):
        u1 = t2[0].vertex
        return _plan(v, (u1,), (v,), (v, u1))
    return None


def _dk_mixed_medium(ctx, v, nbrs):
    t2 = _threads_of(nbrs, 2)
    t1 = _threads_of(nbrs, 1)
    big = _big_nbrs(nbrs)
    if (len(t2) == 1 and len(t1) == 1 and len(big) == 1
            and ctx.cls(big[0].deg) == "medium"
            and t1[0].far_deg is not None and ctx.cls(t1[0].far_deg) == "low"):
        u1, u2 = t2[0].vertex, t1[0].vertex
        return _plan(v, (v, u1, u2), (), (v, u2, u1))
    return None


def _dk_two1_lowweak(ctx, v, nbrs):
    t1 = _threads_of(nbrs, 1)
    big = _big_nbrs(nbrs)
    if (len(t1) == 2 and len(big) == 1 and ctx.cls(big[0].deg) == "low"):
        low_weak = [n for n in t1
                    if n.far_deg is not None and ctx.cls(n.far_deg) == "low"]
        if low_weak:
            u1 = low_weak[0].vertex
            return _plan(v, (u1,), (v,), (v, u1))
    return None


def _dk_two1_medium(ctx, v, nbrs):
    t1 = _threads_of(nbrs, 1)
    big = _big_nbrs(nbrs)
    if (len(t1) == 2 and len(big) == 1 and ctx.cls(big[0].deg) == "low"
            and all(n.far_deg is not None and ctx.cls(n.far_deg) == "medium"
                    for n in t1)):
        u1, u2 = (n.vertex for n in t1)
        return _plan(v, (v, u1, u2), (), (u1, u2, v))
    return None


def _dk_one1_lowlow(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    if (len(two) == 1 and two[0].length == 1 and len(big) == 2
            and all(ctx.cls(n.deg) == "low" for n in big)
            and two[0].far_deg is not None
            and ctx.cls(two[0].far_deg) in ("medium", "low")):
        u = two[0].vertex
        return _plan(v, (u,), (v,), (u, v))
    return None


def _dk_one2thread_lowlow(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    if not (len(two) == 1 and two[0].length == 2 and len(big) == 2
            and all(ctx.cls(n.deg) == "low" for n in big)):
        return None
    k = ctx.k
    degs = sorted(n.deg for n in big)
    if k == 8 and degs != [3, 3]:
        return None
    if k in (9, 10) and degs[-1] > 4:
        return None
    u = two[0].vertex
    return _plan(v, (u,), (v,), (v, u))


def _dk_four2_2thread(ctx, v, nbrs):
    if len(_two_nbrs(nbrs)) == 4 and _threads_of(nbrs, 2):
        u = _threads_of(nbrs, 2)[0].vertex
        return _plan(v, (u,), (v,), (v, u))
    return None


def _dk_four1_lowweak(ctx, v, nbrs):
    t1 = _threads_of(nbrs, 1)
    if len(t1) == 4:
        low_weak = [n for n in t1
                    if n.far_deg is not None and ctx.cls(n.far_deg) == "low"]
        if low_weak:
            u = low_weak[0].vertex
            return _plan(v, (u,), (v,), (v, u))
    return None


def _dk_three2threads_low(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    if (len(two) == 3 and all(n.length == 2 for n in two) and len(big) == 1
            and ctx.cls(big[0].deg) == "low"):
        internals = tuple(n.vertex for n in two)
        return _plan(v, (v,) + internals, (), (v,) + internals)
    return None


def _dk_one2thread_low(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    t2 = _threads_of(nbrs, 2)
    if (len(two) == 3 and len(t2) == 1 and len(big) == 1
            and ctx.cls(big[0].deg) == "low"):
        u = t2[0].vertex
        return _plan(v, (u,), (v,), (v, u))
    return None


def _dk_two2_one1_third3(ctx, v, nbrs):
    t2 = _threads_of(nbrs, 2)
    t1 = _threads_of(nbrs, 1)
    big = _big_nbrs(nbrs)
    if (len(t2) == 2 and len(t1) == 1 and len(big) == 1 and big[0].deg == 3):
        u = t2[0].vertex
        return _plan(v, (u,), (v,), (v, u))
    return None


def _dk_two2_one1_low4(ctx, v, nbrs):
    t2 = _threads_of(nbrs, 2)
    t1 = _threads_of(nbrs, 1)
    big = _big_nbrs(nbrs)
    if (len(t2) == 2 and len(t1) == 1 and len(big) == 1 and big[0].deg >= 4
            and ctx.cls(big[0].deg) == "low"):
        u = t2[0].vertex
        return _plan(v, (u,), (v,), (v, u))
    return None


def _dk_five2_two2threads(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    t2 = _threads_of(nbrs, 2)
    if len(two) == 5 and len(t2) >= 2:
        u1, u2 = t2[0].vertex, t2[1].vertex
        return _plan(v, (u1, u2), (v,), (v, u1, u2))
    return None


def _dk_four2threads_low(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    big = _big_nbrs(nbrs)
    if (len(two) == 4 and all(n.length == 2 for n in two) and len(big) == 1
            and big[0].deg <= 6):
        internals = tuple(n.vertex for n in two)
        return _plan(v, (v,) + internals, (), (v,) + internals)
    return None


def _dk_six2_five2threads(ctx, v, nbrs):
    two = _two_nbrs(nbrs)
    t2 = _threads_of(nbrs, 2)
    if len(two) == 6 and len(t2) >= 5 and ctx.cls(6) == "low":
        internals = tuple(n.vertex for n in t2)
        return _plan(v, (v,) + internals, (), (v,) + internals)
    return None


CATALOG: tuple[LocalPattern, ...] = (
    LocalPattern("d5:3v-three2-2thread", "delta5",
                 "3-vertex, three 2-neighbors, incident 2-thread", 3,
                 _d5_three2_2thread),
    LocalPattern("d5:3v-one3-2thread", "delta5",
                 "3-vertex, one 3-neighbor, 2-thread plus 2-thread or "
                 "1-thread to weak 3-neighbor", 3, _d5_one3_2thread),
    LocalPattern("d6:4v-all-directions", "delta6",
                 "4-vertex charging in all four directions, three halves", 4,
                 _d6_all_directions),
    LocalPattern("d6:3v-three2-2thread", "delta6",
                 "3-vertex, three 2-neighbors, incident 2-thread", 3,
                 _d6_three2_2thread),
    LocalPattern("d6:3v-three1-medium", "delta6",
                 "3-vertex, three 1-threads, all weak neighbors medium", 3,
                 _d6_three1_medium),
    LocalPattern("d6:3v-medium-2thread", "delta6",
                 "3-vertex, one medium neighbor, 2-thread plus qualifying "
                 "second thread", 3, _d6_medium_2thread),
    LocalPattern("d7:5v-five-2threads", "delta7",
                 "5-vertex with five incident 2-threads", 5, _d7_five_2threads),
    LocalPattern("d7:4v-two2-two1", "delta7",
                 "4-vertex, two 2-threads and two 1-threads", 4, _d7_two2_two1),
    LocalPattern("d7:4v-three2-no5", "delta7",
                 "4-vertex, three or more 2-threads, no 5+-neighbor", 4,
                 _d7_three2_no5),
    LocalPattern("d7:3v-three2-2thread", "delta7",
                 "3-vertex, three 2-neighbors, incident 2-thread", 3,
                 _d7_three2_2thread),
    LocalPattern("d7:3v-three1-weak5", "delta7",
                 "3-vertex, three 1-threads, a weak 5--neighbor", 3,
                 _d7_three1_weak5),
    LocalPattern("d7:3v-one2thread-two3", "delta7",
                 "3-vertex, one 2-thread, two 3-neighbors", 3,
                 _d7_one2thread_two3),
    LocalPattern("d7:3v-two2threads-le5", "delta7",
                 "3-vertex, two 2-threads, third neighbor 5-", 3,
                 _d7_two2threads_le5),
    LocalPattern("d7:3v-mixed-le4", "delta7",
                 "3-vertex, 2-thread + 1-thread, third neighbor 4-", 3,
                 _d7_mixed_le4),
    LocalPattern("d7:3v-mixed-5-weak5", "delta7",
                 "3-vertex, 2-thread + 1-thread to weak 5-, third neighbor 5",
                 3, _d7_mixed_5_weak5),
    LocalPattern("d7:3v-two1-weak5-third3", "delta7",
                 "3-vertex, two 1-threads to weak 5-, third neighbor 3", 3,
                 _d7_two1_weak5_third3),
    LocalPattern("dk:3v-three2-qual", "deltaK",
                 "3-vertex, three 2-neighbors, qualifying thread", 3,
                 _dk_three2_qual),
    LocalPattern("dk:3v-two2threads", "deltaK",
                 "3-vertex, two 2-threads, third neighbor medium or low", 3,
                 _dk_two2threads),
    LocalPattern("dk:3v-mixed-low", "deltaK",
                 "3-vertex, 2-thread + 1-thread, third neighbor low", 3,
                 _dk_mixed_low),
    LocalPattern("dk:3v-mixed-medium", "deltaK",
                 "3-vertex, 2-thread + 1-thread to low weak, third medium", 3,
                 _dk_mixed_medium),
    LocalPattern("dk:3v-two1-lowweak", "deltaK",
                 "3-vertex, two 1-threads, third low, a low weak neighbor", 3,
                 _dk_two1_lowweak),
    LocalPattern("dk:3v-two1-medium", "deltaK",
                 "3-vertex, two 1-threads to medium weaks, third low", 3,
                 _dk_two1_medium, k_min=23),
    LocalPattern("dk:3v-one1-lowlow", "deltaK",
                 "3-vertex, one 1-thread to medium/low weak, two low "
                 "neighbors", 3, _dk_one1_lowlow, k_min=15),
    LocalPattern("dk:3v-one2thread-lowlow", "deltaK",
                 "3-vertex, one 2-thread, two low neighbors (k-scoped)", 3,
                 _dk_one2thread_lowlow),
    LocalPattern("dk:4v-four2-2thread", "deltaK",
                 "4-vertex, four 2-neighbors, incident 2-thread", 4,
                 _dk_four2_2thread),
    LocalPattern("dk:4v-four1-lowweak", "deltaK",
                 "4-vertex, four 1-threads, a low weak neighbor", 4,
                 _dk_four1_lowweak, k_min=15),
    LocalPattern("dk:4v-three2threads-low", "deltaK",
                 "4-vertex, three 2-threads, fourth neighbor low", 4,
                 _dk_three2threads_low),
    LocalPattern("dk:4v-one2thread-low", "deltaK",
                 "4-vertex, three 2-neighbors with one 2-thread, fourth low",
                 4, _dk_one2thread_low, k_min=19),
    LocalPattern("dk:4v-two2-one1-third3", "deltaK",
                 "4-vertex, two 2-threads + 1-thread, fourth neighbor 3", 4,
                 _dk_two2_one1_third3),
    LocalPattern("dk:4v-two2-one1-low4", "deltaK",
                 "4-vertex, two 2-threads + 1-thread, fourth low 4+", 4,
                 _dk_two2_one1_low4, k_min=11),
    LocalPattern("dk:5v-five2-two2threads", "deltaK",
                 "5-vertex, five 2-neighbors, two 2-threads", 5,
                 _dk_five2_two2threads),
    LocalPattern("dk:5v-four2threads-low", "deltaK",
                 "5-vertex, four 2-threads, fifth neighbor 6-", 5,
                 _dk_four2threads_low, k_min=15),
    LocalPattern("dk:6v-six2-five2threads", "deltaK",
                 "6-vertex (low), six 2-neighbors, five 2-threads", 6,
                 _dk_six2_five2threads, k_min=15),
)


_DEFAULT_K = {"delta5": 5, "delta6": 6, "delta7": 7}


def patterns_for(theorem: str) -> tuple[LocalPattern, ...]:
    return tuple(p for p in CATALOG if p.theorem == theorem)


def detect_local(g: Graph, theorem: str, k: int | None = None) -> list[ConfigurationInstance]:
    if theorem == "deltaK":
        if k is None or k < 8:
            raise ValueError("deltaK patterns require k >= 8")
    elif theorem in _DEFAULT_K:
        if k is None:
            k = _DEFAULT_K[theorem]
        elif k != _DEFAULT_K[theorem]:
            raise ValueError(f"{theorem} patterns are fixed at k={_DEFAULT_K[theorem]}")
    else:
        raise ValueError(f"unknown theorem id {theorem!r}")
    ctx = PatternContext(g, find_threads(g), theorem, k)
    out = []
    for v in g.vertices():
        dv = g.degree(v)
        if dv < 3:
            continue
        nbrs = None
        for pat in CATALOG:
            if pat.theorem != theorem or pat.root_degree != dv:
                continue
            if not pat.in_scope(k):
                continue
            if nbrs is None:
                nbrs = ctx.neighbor_info(v)
            roles = pat.matcher(ctx, v, nbrs)
            if roles is not None:
                out.append(ConfigurationInstance.make(pat.pattern_id, **roles))
    return sorted(out, key=lambda i: (i.kind, i.roles))


def pattern_by_id(pattern_id: str) -> LocalPattern:
    for p in CATALOG:
        if p.pattern_id == pattern_id:
            return p
    raise KeyError(pattern_id)


def revalidate_pattern(g: Graph, inst: ConfigurationInstance, k: int) -> bool:
    try:
        pat = pattern_by_id(inst.kind)
    except KeyError:
        return False
    (v,) = inst.role("root")
    if g.degree(v) != pat.root_degree or not pat.in_scope(k):
        return False
    ctx = PatternContext(g, find_threads(g), pat.theorem, k)
    roles = pat.matcher(ctx, v, ctx.neighbor_info(v))
    if roles is None:
        return False
    return ConfigurationInstance.make(pat.pattern_id, **roles) == inst

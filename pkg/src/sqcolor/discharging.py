"""Charge redistribution engine with the four built-in rule programs.

Every vertex starts with charge equal to its degree.  Rules move exact
rational amounts from sender vertices to either adjacent vertices or
incident threads; charge sent to a thread is split equally among its
internal 2-vertices.  Sponsorship rules additionally assign each
in-scope thread one sponsoring endpoint (each vertex sponsors at most
one thread per rule), which exists exactly when the relevant thread
multigraph is a pseudoforest; infeasibility is reported as a reducible
configuration being present.

"Sends in each direction" is realized as one transfer per incident
edge: the recipient is the incident thread when the edge enters a
thread, and the adjacent vertex otherwise.  Delivering rather than
discarding keeps the exact conservation law sum(final) == 2|E|, and can
only raise final charges, so the per-entity lower bounds the verifier
checks are unaffected.

Rule programs (thresholds are the exact charge floors):

  delta5   max degree 5, floor 2 + 12/29
  delta6   max degree 6, floor 5/2
  delta7   max degree 7, floor 2 + 20/37
  deltaK   max degree k >= 8, floor 2 + (4k-8)/(5k+2)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple

from .graph import Graph
from .configurations import (
    ConfigurationInstance,
    Thread,
    ThreadSet,
    degree_class,
    detect_all,
    detect_local,
    find_threads,
)
from .madbounds import main_threshold


class DischargeError(ValueError):
    """A precondition of the engine fails on the given graph."""


EACH_DIRECTION = "each-direction"
EACH_DIRECTION_UNLESS_2_THREAD = "each-direction-unless-2-thread"
INCIDENT_THREAD = "incident-thread"
INCIDENT_2_THREAD = "incident-2-thread"
INCIDENT_1_THREAD = "incident-1-thread"
ADJACENT_VERTEX = "adjacent-vertex"

SELECTORS = (
    EACH_DIRECTION,
    EACH_DIRECTION_UNLESS_2_THREAD,
    INCIDENT_THREAD,
    INCIDENT_2_THREAD,
    INCIDENT_1_THREAD,
    ADJACENT_VERTEX,
)


@dataclass(frozen=True)
class DegreeRange:
    lo: int
    hi: int

    def contains(self, d: int) -> bool:
        return self.lo <= d <= self.hi


@dataclass(frozen=True)
class Rule:
    sender: DegreeRange
    selector: str
    target: DegreeRange | None
    amount: Fraction

    def __post_init__(self):
        if self.selector not in SELECTORS:
            raise ValueError(f"unknown selector {self.selector!r}")
        if self.amount <= 0:
            raise ValueError("rule amounts must be positive")
        if self.selector == ADJACENT_VERTEX:
            if self.target is None or self.target.lo < 3:
                raise ValueError("adjacent-vertex rules need a 3+ target range")


@dataclass(frozen=True)
class SponsorRule:
    thread_length: int
    scope: DegreeRange | None  # both-endpoint filter; None means every thread
    sponsor: DegreeRange
    amount: Fraction

    def __post_init__(self):
        if self.amount <= 0:
            raise ValueError("sponsor amounts must be positive")


def _rule_key(r: Rule):
    t = r.target or DegreeRange(-1, -1)
    return (r.sender.lo, r.sender.hi, r.selector, t.lo, t.hi, r.amount)


def _sponsor_key(s: SponsorRule):
    sc = s.scope or DegreeRange(-1, -1)
    return (s.thread_length, sc.lo, sc.hi, s.sponsor.lo, s.sponsor.hi, s.amount)


@dataclass(frozen=True)
class RuleSet:
    theorem: str
    k: int
    threshold: Fraction
    rules: tuple[Rule, ...]
    sponsors: tuple[SponsorRule, ...]

    @classmethod
    def make(cls, theorem: str, k: int, threshold: Fraction,
             rules, sponsors) -> "RuleSet":
        return cls(theorem, k, threshold,
                   tuple(sorted(rules, key=_rule_key)),
                   tuple(sorted(sponsors, key=_sponsor_key)))


THEOREM_IDS = ("delta5", "delta6", "delta7", "deltaK")


def builtin_ruleset(theorem: str, k: int | None = None) -> RuleSet:
    """The built-in rule program for the given theorem id.

    deltaK requires k >= 8; the other ids fix k themselves.
    """
    F = Fraction
    if theorem == "delta5":
        rules = [
            Rule(DegreeRange(5, 5), INCIDENT_THREAD, None, F(13, 29)),
            Rule(DegreeRange(5, 5), ADJACENT_VERTEX, DegreeRange(3, 3), F(13, 29)),
            Rule(DegreeRange(4, 4), INCIDENT_THREAD, None, F(11, 29)),
            Rule(DegreeRange(4, 4), ADJACENT_VERTEX, DegreeRange(3, 3), F(11, 29)),
            Rule(DegreeRange(3, 3), INCIDENT_2_THREAD, None, F(11, 29)),
            Rule(DegreeRange(3, 3), INCIDENT_1_THREAD, DegreeRange(4, 4), F(1, 29)),
        ]
        sponsors = [
            SponsorRule(3, None, DegreeRange(5, 5), F(10, 29)),
            SponsorRule(2, DegreeRange(4, 4), DegreeRange(4, 4), F(2, 29)),
            SponsorRule(1, DegreeRange(3, 3), DegreeRange(3, 3), F(12, 29)),
        ]
        return RuleSet.make("delta5", 5, 2 + F(12, 29), rules, sponsors)
    if theorem == "delta6":
        rules = [
            Rule(DegreeRange(5, 6), EACH_DIRECTION, None, F(1, 2)),
            Rule(DegreeRange(3, 4), INCIDENT_2_THREAD, None, F(1, 2)),
            Rule(DegreeRange(3, 4), INCIDENT_1_THREAD, DegreeRange(3, 4), F(1, 4)),
        ]
        sponsors = [SponsorRule(3, None, DegreeRange(6, 6), F(1, 2))]
        return RuleSet.make("delta6", 6, F(5, 2), rules, sponsors)
    if theorem == "delta7":
        rules = [
            Rule(DegreeRange(6, 7), EACH_DIRECTION, None, F(21, 37)),
            Rule(DegreeRange(5, 5), INCIDENT_2_THREAD, None, F(20, 37)),
            Rule(DegreeRange(5, 5), EACH_DIRECTION_UNLESS_2_THREAD, None, F(10, 37)),
            Rule(DegreeRange(4, 4), INCIDENT_2_THREAD, None, F(20, 37)),
            Rule(DegreeRange(4, 4), INCIDENT_1_THREAD, None, F(10, 37)),
            Rule(DegreeRange(4, 4), ADJACENT_VERTEX, DegreeRange(3, 3), F(4, 37)),
            Rule(DegreeRange(3, 3), INCIDENT_2_THREAD, None, F(19, 37)),
            Rule(DegreeRange(3, 3), INCIDENT_1_THREAD, DegreeRange(3, 5), F(10, 37)),
        ]
        sponsors = [SponsorRule(3, None, DegreeRange(7, 7), F(18, 37))]
        return RuleSet.make("delta7", 7, 2 + F(20, 37), rules, sponsors)
    if theorem == "deltaK":
        if k is None or k < 8:
            raise ValueError("deltaK requires k >= 8")
        alpha = main_threshold(k)
        beta = 1 - F(16, 5 * k + 2)
        med_lo = 7 - 16 // (k + 2)
        high = DegreeRange(k - 1, k)
        medium = DegreeRange(med_lo, k - 2)
        low = DegreeRange(3, med_lo - 1)
        rules = [
            Rule(high, EACH_DIRECTION, None, beta),
            Rule(medium, EACH_DIRECTION, None, 2 * alpha - beta),
            Rule(low, INCIDENT_2_THREAD, None, 2 * alpha - beta),
            Rule(low, INCIDENT_1_THREAD, low, alpha / 2),
            Rule(low, INCIDENT_1_THREAD, medium, beta - alpha),
            Rule(DegreeRange(5, 5), ADJACENT_VERTEX, DegreeRange(3, 3),
                 F(8, 5 * k + 2)),
            Rule(DegreeRange(4, 4), ADJACENT_VERTEX, DegreeRange(3, 3),
                 F(4, 5 * k + 2)),
        ]
        sponsors = [SponsorRule(3, None, DegreeRange(k, k), 3 * alpha - 2 * beta)]
        return RuleSet.make("deltaK", k, 2 + alpha, rules, sponsors)
    raise ValueError(f"unknown theorem id {theorem!r}")


def classify(g: Graph, v: int, ruleset: RuleSet) -> str:
    """Vertex class under the rule set's theorem table.

    Returns 'high', 'medium', 'low' or 'two'.  The delta5 program
    addresses raw degrees, so 3+-vertices have no class there.
    """
    d = g.degree(v)
    if d > ruleset.k:
        raise ValueError(f"degree {d} exceeds the rule set's maximum {ruleset.k}")
    if d == 2:
        return "two"
    return degree_class(ruleset.theorem, ruleset.k, d)


# Sponsorship


@dataclass(frozen=True)
class SponsorshipMap:
    thread_length: int
    assignment: tuple[tuple[int, int], ...]  # (thread index in ThreadSet, sponsor)

    def sponsor_of(self, thread_idx: int) -> int | None:
        for t, v in self.assignment:
            if t == thread_idx:
                return v
        return None


def assign_sponsors(g: Graph, thread_length: int,
                    eligible: Callable[[int], bool],
                    scope: Callable[[Thread], bool] | None = None,
                    ts: ThreadSet | None = None) -> SponsorshipMap:
    """Assign each in-scope thread a distinct-per-vertex sponsoring endpoint.

    Every thread of the given length satisfying `scope` must receive a
    sponsor among its endpoints passing `eligible`; each vertex sponsors
    at most one thread.  Feasible exactly when the corresponding thread
    multigraph is a pseudoforest (trees orient to a root, cycle
    components orient cyclically), which holds when the cycle
    configurations are absent.  Raises DischargeError otherwise, naming
    the overloaded component.
    """
    ts = ts if ts is not None else find_threads(g)
    wanted = [
        i for i, t in enumerate(ts.threads)
        if t.length == thread_length and (scope is None or scope(t))
    ]
    candidates = {
        i: sorted({v for v in ts.threads[i].endpoints if eligible(v)})
        for i in wanted
    }
    matched_vertex: dict[int, int] = {}

    def augment(i: int, visited: set[int]) -> bool:
        for v in candidates[i]:
            if v in visited:
                continue
            visited.add(v)
            if v not in matched_vertex or augment(matched_vertex[v], visited):
                matched_vertex[v] = i
                return True
        return False

    for i in wanted:
        if not augment(i, set()):
            reach = {x for j in wanted for x in candidates[j]
                     if set(candidates[i]) & set(candidates[j])}
            t = ts.threads[i]
            raise DischargeError(
                f"sponsorship impossible for the {thread_length}-thread between "
                f"{t.endpoints[0]} and {t.endpoints[1]}: a reducible "
                f"configuration is present (component vertices {sorted(reach)})")
    assignment = tuple(sorted((i, v) for v, i in matched_vertex.items()))
    return SponsorshipMap(thread_length, assignment)


# Engine


class Transfer(NamedTuple):
    sender: int
    recipient_kind: str  # 'vertex' or 'thread'
    recipient: int       # vertex id or thread index
    amount: Fraction
    rule: str


@dataclass
class ChargeLedger:
    graph: Graph
    ruleset: RuleSet
    threads: ThreadSet
    initial: dict[int, Fraction]
    transfers: tuple[Transfer, ...]
    final: dict[int, Fraction]
    thread_received: dict[int, Fraction]

    def mu_star_thread(self, idx: int) -> Fraction:
        t = self.threads.threads[idx]
        return 2 * t.length + self.thread_received.get(idx, Fraction(0))

    def replay(self) -> dict[int, Fraction]:
        """Recompute final charges from the itemized transfers."""
        final = dict(self.initial)
        recv: dict[int, Fraction] = {}
        for tr in self.transfers:
            final[tr.sender] -= tr.amount
            if tr.recipient_kind == "vertex":
                final[tr.recipient] += tr.amount
            else:
                recv[tr.recipient] = recv.get(tr.recipient, Fraction(0)) + tr.amount
        for idx, amt in recv.items():
            t = self.threads.threads[idx]
            share = amt / t.length
            for x in t.internal:
                final[x] += share
        return final

    def total_final(self) -> Fraction:
        return sum(self.final.values(), Fraction(0))


def apply(g: Graph, ruleset: RuleSet) -> ChargeLedger:
    """Run the rule program and return the itemized charge ledger.

    Preconditions: minimum degree 2, maximum degree at most the rule
    set's k, no all-2-vertex cycle component, and sponsorship feasible.
    """
    if g.vertex_count == 0:
        raise DischargeError("empty graph")
    if g.min_degree() <= 1:
        bad = [v for v in g.vertices() if g.degree(v) <= 1]
        raise DischargeError(f"vertices of degree <= 1 present: {bad}")
    if g.max_degree() > ruleset.k:
        raise DischargeError(
            f"maximum degree {g.max_degree()} exceeds the rule set's {ruleset.k}")
    ts = find_threads(g)
    if ts.cycle_components:
        raise DischargeError(
            f"all-2-vertex cycle components present (no 3+-vertices to anchor "
            f"threads): {list(ts.cycle_components)}")
    deg = [g.degree(v) for v in g.vertices()]
    internal_map = ts.internal_to_thread()

    def thread_of(w: int) -> int:
        return internal_map[w]

    transfers: list[Transfer] = []
    for ri, rule in enumerate(ruleset.rules):
        label = f"R{ri}"
        for v in g.vertices():
            if deg[v] < 3 or not rule.sender.contains(deg[v]):
                continue
            for w in g.neighbors(v):
                if rule.selector == EACH_DIRECTION:
                    if deg[w] == 2:
                        transfers.append(Transfer(v, "thread", thread_of(w),
                                                  rule.amount, label))
                    else:
                        transfers.append(Transfer(v, "vertex", w, rule.amount, label))
                elif rule.selector == EACH_DIRECTION_UNLESS_2_THREAD:
                    if deg[w] == 2:
                        ti = thread_of(w)
                        if ts.threads[ti].length != 2:
                            transfers.append(Transfer(v, "thread", ti,
                                                      rule.amount, label))
                    else:
                        transfers.append(Transfer(v, "vertex", w, rule.amount, label))
                elif rule.selector == INCIDENT_THREAD:
                    if deg[w] == 2:
                        transfers.append(Transfer(v, "thread", thread_of(w),
                                                  rule.amount, label))
                elif rule.selector == INCIDENT_2_THREAD:
                    if deg[w] == 2 and ts.threads[thread_of(w)].length == 2:
                        transfers.append(Transfer(v, "thread", thread_of(w),
                                                  rule.amount, label))
                elif rule.selector == INCIDENT_1_THREAD:
                    if deg[w] == 2:
                        ti = thread_of(w)
                        t = ts.threads[ti]
                        if t.length == 1:
                            far = t.far_end(v)
                            if rule.target is None or rule.target.contains(deg[far]):
                                transfers.append(Transfer(v, "thread", ti,
                                                          rule.amount, label))
                elif rule.selector == ADJACENT_VERTEX:
                    if deg[w] >= 3 and rule.target.contains(deg[w]):
                        transfers.append(Transfer(v, "vertex", w, rule.amount, label))

    for si, sp in enumerate(ruleset.sponsors):
        scope = None
        if sp.scope is not None:
            rng = sp.scope
            scope = lambda t, rng=rng: (rng.contains(deg[t.endpoints[0]])
                                        and rng.contains(deg[t.endpoints[1]]))
        smap = assign_sponsors(g, sp.thread_length,
                               lambda v, rng=sp.sponsor: rng.contains(deg[v]),
                               scope=scope, ts=ts)
        for t_idx, sponsor in smap.assignment:
            transfers.append(Transfer(sponsor, "thread", t_idx, sp.amount, f"S{si}"))

    transfers.sort(key=lambda t: (t.sender, t.recipient_kind, t.recipient, t.rule))
    initial = {v: Fraction(deg[v]) for v in g.vertices()}
    final = dict(initial)
    thread_received: dict[int, Fraction] = {}
    for tr in transfers:
        final[tr.sender] -= tr.amount
        if tr.recipient_kind == "vertex":
            final[tr.recipient] += tr.amount
        else:
            thread_received[tr.recipient] = (
                thread_received.get(tr.recipient, Fraction(0)) + tr.amount)
    for idx, amt in thread_received.items():
        t = ts.threads[idx]
        share = amt / t.length
        for x in t.internal:
            final[x] += share
    return ChargeLedger(g, ruleset, ts, initial, tuple(transfers), final,
                        thread_received)


@dataclass
class Deficiency:
    entity_kind: str  # 'vertex' or 'thread'
    entity: int       # vertex id or thread index
    value: Fraction
    required: Fraction
    matches: tuple[ConfigurationInstance, ...] = ()


@dataclass
class DischargeReport:
    passed: bool
    threshold: Fraction
    ledger: ChargeLedger
    deficiencies: tuple[Deficiency, ...]
    min_vertex_final: Fraction | None

    def _frac(self, x: Fraction) -> str:
        return f"{x.numerator}/{x.denominator}"

    def rows(self) -> list[tuple]:
        g = self.ledger.graph
        rs = self.ledger.ruleset
        out = []
        for v in g.vertices():
            if g.degree(v) < 3:
                continue
            try:
                cls = classify(g, v, rs)
            except ValueError:
                cls = "-"
            out.append(("vertex", v, g.degree(v), cls, self.ledger.final[v]))
        for i, t in enumerate(self.ledger.threads.threads):
            out.append(("thread", i, t.length,
                        f"{t.endpoints[0]}..{t.endpoints[1]}",
                        self.ledger.mu_star_thread(i)))
        return out

    def to_text(self) -> str:
        lines = []
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"{verdict}: threshold {self._frac(self.threshold)}")
        if self.min_vertex_final is not None:
            lines.append(f"min vertex charge {self._frac(self.min_vertex_final)}")
        for kind, ident, a, b, val in self.rows():
            if kind == "vertex":
                lines.append(f"vertex {ident} degree {a} class {b} "
                             f"final {self._frac(val)}")
            else:
                lines.append(f"thread {ident} length {a} ends {b} "
                             f"mu* {self._frac(val)}")
        for d in self.deficiencies:
            kinds = ",".join(sorted({m.kind for m in d.matches})) or "none"
            lines.append(f"DEFICIENT {d.entity_kind} {d.entity} "
                         f"final {self._frac(d.value)} "
                         f"required {self._frac(d.required)} "
                         f"matching {kinds}")
        return "\n".join(lines)

    def to_tsv(self) -> str:
        lines = ["kind\tid\tdegree_or_length\tclass_or_ends\tcharge\tstatus"]
        bad_v = {d.entity for d in self.deficiencies if d.entity_kind == "vertex"}
        bad_t = {d.entity for d in self.deficiencies if d.entity_kind == "thread"}
        for kind, ident, a, b, val in self.rows():
            bad = ident in (bad_v if kind == "vertex" else bad_t)
            lines.append(f"{kind}\t{ident}\t{a}\t{b}\t{self._frac(val)}\t"
                         f"{'DEFICIENT' if bad else 'ok'}")
        return "\n".join(lines)


def verify(g: Graph, ruleset: RuleSet) -> DischargeReport:
    """Run apply and check every 3+-vertex and thread against the floor.

    A vertex fails when its final charge is below the threshold, a
    thread when its total charge is below length * threshold.  Each
    deficiency is annotated with the detected configurations touching it.
    """
    ledger = apply(g, ruleset)
    threshold = ruleset.threshold
    deficiencies: list[Deficiency] = []
    finals3 = [ledger.final[v] for v in g.vertices() if g.degree(v) >= 3]
    for v in g.vertices():
        if g.degree(v) >= 3 and ledger.final[v] < threshold:
            deficiencies.append(Deficiency("vertex", v, ledger.final[v], threshold))
    for i, t in enumerate(ledger.threads.threads):
        mu = ledger.mu_star_thread(i)
        if mu < t.length * threshold:
            deficiencies.append(Deficiency("thread", i, mu, t.length * threshold))
    if deficiencies:
        k = ruleset.k
        found = detect_all(g, k)
        found += detect_local(g, ruleset.theorem,
                              k if ruleset.theorem == "deltaK" else None)
        for d in deficiencies:
            if d.entity_kind == "vertex":
                ent = {d.entity}
            else:
                t = ledger.threads.threads[d.entity]
                ent = set(t.internal) | set(t.endpoints)
            d.matches = tuple(i for i in found if i.vertices() & ent)
    return DischargeReport(
        passed=not deficiencies,
        threshold=threshold,
        ledger=ledger,
        deficiencies=tuple(deficiencies),
        min_vertex_final=min(finals3) if finals3 else None,
    )

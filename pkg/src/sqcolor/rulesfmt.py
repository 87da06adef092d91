"""Line-oriented text format for discharging rule programs.

Grammar (one statement per line, ``#`` starts a comment, blank lines
ignored, whitespace free within a line):

    version 1
    theorem delta5 | delta6 | delta7 | deltaK
    k LO..HI            # declared parameter range; "k 8.." is open above
    class NAME = EXPR..EXPR
    threshold EXPR
    rule NAME -> SELECTOR : EXPR
    sponsor LEN by NAME : EXPR
    sponsor LEN between NAME by NAME : EXPR

Selectors:

    each-direction
    each-direction-unless-2-thread
    incident-thread
    incident-2-thread
    incident-1-thread [to NAME]
    adjacent-vertex NAME

``sponsor LEN by C`` makes every LEN-thread require a sponsor from class
C among its endpoints; the ``between S`` form restricts the requirement
to threads whose endpoints both lie in class S.

EXPR is exact rational arithmetic over the symbol ``k``: integers,
``k``, ``+ - * /``, parentheses and ``floor(...)``.  Class names are
plain identifiers (letters, digits, underscore).  Parsing returns a
normalized document (classes, rules and sponsors canonically sorted), so
``parse(serialize(doc)) == doc`` and serialization is a formatting
fixpoint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import discharging
from .discharging import DegreeRange, Rule, RuleSet, SponsorRule


class RulesParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


# Expression AST


@dataclass(frozen=True)
class Num:
    value: int

    def eval(self, k: int) -> Fraction:
        return Fraction(self.value)

    def render(self) -> str:
        return str(self.value)

    precedence = 3


@dataclass(frozen=True)
class KVar:
    def eval(self, k: int) -> Fraction:
        return Fraction(k)

    def render(self) -> str:
        return "k"

    precedence = 3


@dataclass(frozen=True)
class Floor:
    arg: "Expr"

    def eval(self, k: int) -> Fraction:
        return Fraction(self.arg.eval(k).__floor__())

    def render(self) -> str:
        return f"floor({self.arg.render()})"

    precedence = 3


@dataclass(frozen=True)
class Neg:
    arg: "Expr"

    def eval(self, k: int) -> Fraction:
        return -self.arg.eval(k)

    def render(self) -> str:
        a = self.arg.render()
        if self.arg.precedence < 3:
            a = f"({a})"
        return f"-{a}"

    precedence = 3


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Expr"
    right: "Expr"

    @property
    def precedence(self) -> int:
        return 1 if self.op in "+-" else 2

    def eval(self, k: int) -> Fraction:
        a, b = self.left.eval(k), self.right.eval(k)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if b == 0:
            raise ZeroDivisionError("division by zero in rules expression")
        return a / b

    def render(self) -> str:
        lp = self.left.render()
        rp = self.right.render()
        if self.left.precedence < self.precedence:
            lp = f"({lp})"
        # -, / are left associative; parenthesize equal precedence on the right
        if (self.right.precedence < self.precedence
                or (self.right.precedence == self.precedence and self.op in "-/")):
            rp = f"({rp})"
        return f"{lp} {self.op} {rp}"


Expr = Union[Num, KVar, Floor, Neg, Bin]


class _ExprParser:
    _token_re = re.compile(r"\s*(\d+|floor|k|[()+\-*/])")

    def __init__(self, text: str, line_no: int, col_base: int):
        self.line_no = line_no
        self.col_base = col_base
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = self._token_re.match(text, pos)
            if not m:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                raise RulesParseError(line_no, col_base + pos + 1,
                                      f"bad token {stripped.split()[0]!r}")
            self.tokens.append((m.group(1), col_base + m.start(1) + 1))
            pos = m.end()
        self.i = 0

    def _peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def _next(self) -> tuple[str, int]:
        if self.i >= len(self.tokens):
            last = self.tokens[-1][1] if self.tokens else self.col_base
            raise RulesParseError(self.line_no, last, "unexpected end of expression")
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Expr:
        e = self._expr()
        if self.i != len(self.tokens):
            tok, col = self.tokens[self.i]
            raise RulesParseError(self.line_no, col, f"unexpected token {tok!r}")
        return e

    def _expr(self) -> Expr:
        e = self._term()
        while self._peek() in ("+", "-"):
            op, _ = self._next()
            e = Bin(op, e, self._term())
        return e

    def _term(self) -> Expr:
        e = self._factor()
        while self._peek() in ("*", "/"):
            op, _ = self._next()
            e = Bin(op, e, self._factor())
        return e

    def _factor(self) -> Expr:
        tok, col = self._next()
        if tok == "-":
            return Neg(self._factor())
        if tok == "(":
            e = self._expr()
            close, ccol = self._next()
            if close != ")":
                raise RulesParseError(self.line_no, ccol, "expected ')'")
            return e
        if tok == "floor":
            open_, ocol = self._next()
            if open_ != "(":
                raise RulesParseError(self.line_no, ocol, "expected '(' after floor")
            e = self._expr()
            close, ccol = self._next()
            if close != ")":
                raise RulesParseError(self.line_no, ccol, "expected ')'")
            return Floor(e)
        if tok == "k":
            return KVar()
        if tok.isdigit():
            return Num(int(tok))
        raise RulesParseError(self.line_no, col, f"unexpected token {tok!r}")


def parse_expr(text: str, line_no: int = 1, col_base: int = 0) -> Expr:
    return _ExprParser(text, line_no, col_base).parse()


# Document


@dataclass(frozen=True)
class ClassDecl:
    name: str
    lo: Expr
    hi: Expr


@dataclass(frozen=True)
class RuleStmt:
    sender: str
    selector: str
    target: str | None
    amount: Expr


@dataclass(frozen=True)
class SponsorStmt:
    thread_length: int
    scope: str | None
    sponsor: str
    amount: Expr


@dataclass(frozen=True)
class RulesDocument:
    version: int
    theorem: str
    k_lo: int
    k_hi: int | None
    classes: tuple[ClassDecl, ...]
    threshold: Expr
    rules: tuple[RuleStmt, ...]
    sponsors: tuple[SponsorStmt, ...]

    @classmethod
    def make(cls, version, theorem, k_lo, k_hi, classes, threshold, rules,
             sponsors) -> "RulesDocument":
        return cls(
            version, theorem, k_lo, k_hi,
            tuple(sorted(classes, key=lambda c: c.name)),
            threshold,
            tuple(sorted(rules, key=lambda r: (r.sender, r.selector,
                                               r.target or "", r.amount.render()))),
            tuple(sorted(sponsors, key=lambda s: (s.thread_length, s.scope or "",
                                                  s.sponsor))),
        )


_NAME = r"[A-Za-z][A-Za-z0-9_]*"
_RE_VERSION = re.compile(r"^version\s+(\d+)$")
_RE_THEOREM = re.compile(rf"^theorem\s+({_NAME})$")
_RE_K = re.compile(r"^k\s+(\d+)\s*\.\.\s*(\d+)?$")
_RE_CLASS = re.compile(rf"^class\s+({_NAME})\s*=\s*(.+)$")
_RE_THRESHOLD = re.compile(r"^threshold\s+(.+)$")
_RE_RULE = re.compile(rf"^rule\s+({_NAME})\s*->\s*(.+?)\s*:\s*(.+)$")
_RE_SPONSOR = re.compile(
    rf"^sponsor\s+(\d+)\s+(?:between\s+({_NAME})\s+)?by\s+({_NAME})\s*:\s*(.+)$")

_SELECTOR_WORDS = {
    "each-direction": (discharging.EACH_DIRECTION, False),
    "each-direction-unless-2-thread": (discharging.EACH_DIRECTION_UNLESS_2_THREAD, False),
    "incident-thread": (discharging.INCIDENT_THREAD, False),
    "incident-2-thread": (discharging.INCIDENT_2_THREAD, False),
    "incident-1-thread": (discharging.INCIDENT_1_THREAD, False),
    "adjacent-vertex": (discharging.ADJACENT_VERTEX, True),
}


def parse_rules(text: str) -> RulesDocument:
    """Parse a rules document; raises RulesParseError with position."""
    version = None
    theorem = None
    k_lo = k_hi = None
    k_seen = False
    classes: list[ClassDecl] = []
    threshold: Expr | None = None
    rules: list[RuleStmt] = []
    sponsors: list[SponsorStmt] = []
    class_names: set[str] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        indent = len(line) - len(line.lstrip())

        m = _RE_VERSION.match(stripped)
        if m:
            version = int(m.group(1))
            continue
        m = _RE_THEOREM.match(stripped)
        if m:
            theorem = m.group(1)
            if theorem not in discharging.THEOREM_IDS:
                raise RulesParseError(line_no, indent + 9,
                                      f"unknown theorem id {theorem!r}")
            continue
        m = _RE_K.match(stripped)
        if m:
            k_seen = True
            k_lo = int(m.group(1))
            k_hi = int(m.group(2)) if m.group(2) else None
            continue
        m = _RE_CLASS.match(stripped)
        if m:
            name, rhs = m.group(1), m.group(2)
            parts = rhs.split("..")
            if len(parts) != 2:
                raise RulesParseError(line_no, indent + len(stripped) - len(rhs) + 1,
                                      "class range needs exactly one '..'")
            base = raw.index(rhs)
            lo = parse_expr(parts[0], line_no, base)
            hi = parse_expr(parts[1], line_no, base + len(parts[0]) + 2)
            if name in class_names:
                raise RulesParseError(line_no, indent + 7,
                                      f"class {name!r} declared twice")
            class_names.add(name)
            classes.append(ClassDecl(name, lo, hi))
            continue
        m = _RE_THRESHOLD.match(stripped)
        if m:
            threshold = parse_expr(m.group(1), line_no, raw.index(m.group(1)))
            continue
        m = _RE_RULE.match(stripped)
        if m:
            sender, sel_text, amount_text = m.groups()
            words = sel_text.split()
            key = words[0]
            if key not in _SELECTOR_WORDS:
                raise RulesParseError(line_no, raw.index(key) + 1,
                                      f"unknown selector {key!r}")
            selector, needs_target = _SELECTOR_WORDS[key]
            target = None
            rest = words[1:]
            if needs_target:
                if len(rest) != 1:
                    raise RulesParseError(line_no, raw.index(key) + 1,
                                          f"selector {key!r} needs a class name")
                target = rest[0]
            elif selector == discharging.INCIDENT_1_THREAD and rest:
                if len(rest) != 2 or rest[0] != "to":
                    raise RulesParseError(line_no, raw.index(key) + 1,
                                          "expected 'to NAME' after incident-1-thread")
                target = rest[1]
            elif rest:
                raise RulesParseError(line_no, raw.index(key) + 1,
                                      f"unexpected text after selector {key!r}")
            amount = parse_expr(amount_text, line_no, raw.rindex(amount_text))
            rules.append(RuleStmt(sender, selector, target, amount))
            continue
        m = _RE_SPONSOR.match(stripped)
        if m:
            length = int(m.group(1))
            scope = m.group(2)
            sponsor = m.group(3)
            amount = parse_expr(m.group(4), line_no, raw.rindex(m.group(4)))
            sponsors.append(SponsorStmt(length, scope, sponsor, amount))
            continue
        raise RulesParseError(line_no, indent + 1,
                              f"unrecognized statement {stripped.split()[0]!r}")

    if version is None:
        raise RulesParseError(1, 1, "missing 'version' line")
    if version != 1:
        raise RulesParseError(1, 1, f"unsupported version {version}")
    if theorem is None:
        raise RulesParseError(1, 1, "missing 'theorem' line")
    if not k_seen:
        raise RulesParseError(1, 1, "missing 'k' range line")
    if threshold is None:
        raise RulesParseError(1, 1, "missing 'threshold' line")
    for r in rules:
        for name in (r.sender, r.target):
            if name is not None and name not in class_names:
                raise RulesParseError(1, 1, f"rule references undeclared class {name!r}")
    for s in sponsors:
        for name in (s.scope, s.sponsor):
            if name is not None and name not in class_names:
                raise RulesParseError(1, 1,
                                      f"sponsor references undeclared class {name!r}")
    return RulesDocument.make(version, theorem, k_lo, k_hi, classes, threshold,
                              rules, sponsors)


def serialize_rules(doc: RulesDocument) -> str:
    """Canonical text for a document; a fixpoint of parse-then-serialize."""
    lines = [f"version {doc.version}", f"theorem {doc.theorem}"]
    hi = "" if doc.k_hi is None else str(doc.k_hi)
    lines.append(f"k {doc.k_lo}..{hi}")
    for c in doc.classes:
        lines.append(f"class {c.name} = {c.lo.render()}..{c.hi.render()}")
    lines.append(f"threshold {doc.threshold.render()}")
    for r in doc.rules:
        sel = {v: k for k, (v, _) in _SELECTOR_WORDS.items()}[r.selector]
        if r.selector == discharging.ADJACENT_VERTEX:
            sel = f"{sel} {r.target}"
        elif r.selector == discharging.INCIDENT_1_THREAD and r.target:
            sel = f"{sel} to {r.target}"
        lines.append(f"rule {r.sender} -> {sel} : {r.amount.render()}")
    for s in doc.sponsors:
        between = f"between {s.scope} " if s.scope else ""
        lines.append(f"sponsor {s.thread_length} {between}by {s.sponsor} : "
                     f"{s.amount.render()}")
    return "\n".join(lines) + "\n"


def _eval_degree(e: Expr, k: int, what: str) -> int:
    val = e.eval(k)
    if val.denominator != 1:
        raise ValueError(f"{what} evaluates to non-integer {val} at k={k}")
    return int(val)


def compile_rules(doc: RulesDocument, k: int) -> RuleSet:
    """Instantiate a document at a concrete k into an executable RuleSet."""
    if k < doc.k_lo or (doc.k_hi is not None and k > doc.k_hi):
        hi = "" if doc.k_hi is None else str(doc.k_hi)
        raise ValueError(f"k={k} outside the document's declared range "
                         f"{doc.k_lo}..{hi}")
    ranges = {}
    for c in doc.classes:
        lo = _eval_degree(c.lo, k, f"class {c.name} lower bound")
        hi = _eval_degree(c.hi, k, f"class {c.name} upper bound")
        if lo > hi:
            raise ValueError(f"class {c.name} is empty at k={k}")
        ranges[c.name] = DegreeRange(lo, hi)
    rules = []
    for r in doc.rules:
        amount = r.amount.eval(k)
        if amount <= 0:
            raise ValueError(f"rule amount {r.amount.render()} is not positive "
                             f"at k={k}")
        target = ranges[r.target] if r.target else None
        rules.append(Rule(ranges[r.sender], r.selector, target, amount))
    sponsors = []
    for s in doc.sponsors:
        amount = s.amount.eval(k)
        if amount <= 0:
            raise ValueError(f"sponsor amount {s.amount.render()} is not positive "
                             f"at k={k}")
        scope = ranges[s.scope] if s.scope else None
        sponsors.append(SponsorRule(s.thread_length, scope, ranges[s.sponsor],
                                    amount))
    threshold = doc.threshold.eval(k)
    return RuleSet.make(doc.theorem, k, threshold, rules, sponsors)


def load_rules(path) -> RulesDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_rules(fh.read())


def shipped_rules_path(theorem: str):
    from importlib import resources

    if theorem not in discharging.THEOREM_IDS:
        raise ValueError(f"unknown theorem id {theorem!r}")
    return resources.files(__package__) / "rules" / f"{theorem}.rules"


def shipped_rules(theorem: str) -> RulesDocument:
    return parse_rules(shipped_rules_path(theorem).read_text(encoding="utf-8"))

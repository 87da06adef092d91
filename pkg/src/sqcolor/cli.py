"""Command-line surface: file I/O and one subcommand per analysis.

Exit codes: 0 all checks passed, 1 a check failed (reports printed),
2 I/O or parse error.  Graph files are edge lists with a `#` comment
header ("n m" then one "u v" line per edge); list files carry one
space-separated color list per vertex line.  See docs/formats.md.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .graph import Graph
from . import madbounds
from . import coloring as col
from . import configurations as conf
from . import discharging as disc
from . import extremal
from . import rulesfmt

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2


class FileFormatError(ValueError):
    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


def load_graph(path: str) -> tuple[Graph, list[str]]:
    """Read a graph file; returns the graph and its comment header."""
    comments: list[str] = []
    n = m = None
    edges: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                comments.append(line[1:].strip())
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 2:
                    raise FileFormatError(path, line_no, "expected 'n m' header")
                try:
                    n, m = int(parts[0]), int(parts[1])
                except ValueError:
                    raise FileFormatError(path, line_no, "non-integer header")
                continue
            if len(parts) != 2:
                raise FileFormatError(path, line_no, "expected 'u v' edge line")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise FileFormatError(path, line_no, "non-integer endpoint")
            if not (0 <= u < v < n):
                raise FileFormatError(path, line_no,
                                      f"edge ({u}, {v}) violates 0 <= u < v < n")
            if (u, v) in set(edges):
                raise FileFormatError(path, line_no, f"duplicate edge ({u}, {v})")
            edges.append((u, v))
    if n is None:
        raise FileFormatError(path, 1, "missing 'n m' header")
    if m != len(edges):
        raise FileFormatError(path, 1,
                              f"header declares {m} edges, file has {len(edges)}")
    return Graph(n, edges), comments


def save_graph(path: str, g: Graph, comments: list[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_graph(g, comments))


def render_graph(g: Graph, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.vertex_count} {g.edge_count}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def load_lists(path: str, n: int) -> col.ListAssignment:
    rows: list[list[int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                row = [int(x) for x in line.split()]
            except ValueError:
                raise FileFormatError(path, line_no, "non-integer color id")
            if any(c < 0 for c in row):
                raise FileFormatError(path, line_no, "negative color id")
            if not row:
                raise FileFormatError(path, line_no, "empty list line")
            rows.append(row)
    if len(rows) != n:
        raise FileFormatError(path, 1, f"expected {n} list lines, got {len(rows)}")
    return col.ListAssignment(rows)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _theorem_for_k(k: int) -> str:
    if k == 5:
        return "delta5"
    if k == 6:
        return "delta6"
    if k == 7:
        return "delta7"
    if k >= 8:
        return "deltaK"
    raise ValueError(f"no rule program for maximum degree {k}")


def _ruleset(args) -> disc.RuleSet:
    if getattr(args, "rules", None):
        doc = rulesfmt.load_rules(args.rules)
        k = args.k if args.k is not None else doc.k_lo
        return rulesfmt.compile_rules(doc, k)
    theorem = getattr(args, "theorem", None)
    if theorem is None:
        theorem = _theorem_for_k(args.k)
    k = args.k
    if theorem != "deltaK":
        k = {"delta5": 5, "delta6": 6, "delta7": 7}[theorem]
    return disc.builtin_ruleset(theorem, k)


def cmd_mad(args) -> int:
    g, _ = load_graph(args.graph)
    mad, cert = madbounds.mad_exact(g)
    subset = " ".join(str(v) for v in sorted(cert.subset))
    if args.format == "tsv":
        print(f"mad\t{_frac(mad)}\t{subset}")
    else:
        print(f"mad = {_frac(mad)}")
        print(f"witness = {{{subset}}}")
    return EXIT_OK


def cmd_square(args) -> int:
    g, comments = load_graph(args.graph)
    sq = g.square()
    text = render_graph(sq, list(comments) + ["square"])
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_color(args) -> int:
    g, _ = load_graph(args.graph)
    target = g.square() if args.square else g
    lists = load_lists(args.lists, target.vertex_count)
    empty = lists.empty_vertices()
    if empty:
        print(f"UNSAT: vertex {empty[0]} has an empty list")
        return EXIT_CHECK_FAILED
    result = col.list_color(target, lists)
    if result is None:
        print("UNSAT")
        return EXIT_CHECK_FAILED
    for v in sorted(result):
        print(f"{v} {result[v]}")
    return EXIT_OK


def cmd_choosable(args) -> int:
    g, _ = load_graph(args.graph)
    ok = col.is_choosable(g, args.k)
    print("choosable" if ok else "not-choosable")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_detect(args) -> int:
    g, _ = load_graph(args.graph)
    kinds = args.kinds.split(",") if args.kinds else list(conf.CONFIG_KINDS)
    found = conf.detect_all(g, args.k, kinds)
    if args.locals:
        theorem = args.theorem or _theorem_for_k(args.k)
        found += conf.detect_local(g, theorem,
                                   args.k if theorem == "deltaK" else None)
    for inst in found:
        roles = "; ".join(f"{name}={list(val)}" for name, val in inst.roles
                          if name not in ("deleted", "recolored", "color_order"))
        if args.format == "tsv":
            print(f"{inst.kind}\t{roles}")
        else:
            print(f"{inst.kind}: {roles}")
    print(f"total {len(found)}")
    return EXIT_CHECK_FAILED if found else EXIT_OK


def cmd_discharge(args) -> int:
    g, _ = load_graph(args.graph)
    try:
        ruleset = _ruleset(args)
        report = disc.verify(g, ruleset)
    except disc.DischargeError as e:
        print(f"precondition failed: {e}")
        return EXIT_CHECK_FAILED
    if args.format == "tsv":
        print(report.to_tsv())
    else:
        if report.passed:
            mv = report.min_vertex_final
            shown = _frac(mv if mv is not None else report.threshold)
            print(f"PASS: min charge {shown} (threshold {_frac(report.threshold)})")
        else:
            print(report.to_text())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_generate(args) -> int:
    if args.kind == "example1":
        g, recipe = extremal.example1(args.k, args.seed, args.contract)
    else:
        if args.M is None:
            print("example2 requires --M", file=sys.stderr)
            return EXIT_PARSE
        g, recipe = extremal.example2(args.k, args.M, args.seed, args.contract)
    comments = [f"{recipe.kind} k={recipe.k}"
                + (f" M={recipe.m}" if recipe.m else "")
                + f" seed={recipe.seed} contracted={recipe.contracted}"]
    comments += list(recipe.steps)
    text = render_graph(g, comments)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify_theorem(args) -> int:
    g, _ = load_graph(args.graph)
    k = args.k
    theorem = args.theorem or _theorem_for_k(k)
    ruleset = disc.builtin_ruleset(theorem, k if theorem == "deltaK" else None)
    failed = False

    delta = g.max_degree()
    ok_delta = delta <= ruleset.k
    print(f"hypothesis max degree: Delta={delta} <= {ruleset.k}: "
          f"{'ok' if ok_delta else 'FAILED'}")
    mad, _cert = madbounds.mad_exact(g)
    ok_mad = mad < ruleset.threshold
    print(f"hypothesis sparseness: mad={_frac(mad)} < "
          f"{_frac(ruleset.threshold)}: {'ok' if ok_mad else 'FAILED'}")
    failed = not (ok_delta and ok_mad)

    found = conf.detect_all(g, ruleset.k)
    found += conf.detect_local(g, theorem,
                               ruleset.k if theorem == "deltaK" else None)
    print(f"configurations detected: {len(found)}"
          + (" (" + ",".join(sorted({i.kind for i in found})) + ")" if found else ""))

    try:
        report = disc.verify(g, ruleset)
        if report.passed:
            print(f"discharge: PASS (min charge "
                  f"{_frac(report.min_vertex_final or report.threshold)})")
        else:
            print("discharge: FAIL")
            print(report.to_text())
            failed = True
    except disc.DischargeError as e:
        print(f"discharge: precondition failed: {e}")
        failed = True

    if args.lists:
        sq = g.square()
        if g.vertex_count > 30:
            print("coloring: skipped (graph above desk scale)")
        else:
            lists = load_lists(args.lists, g.vertex_count)
            result = col.list_color(sq, lists)
            if result is None:
                print("coloring: UNSAT")
                failed = True
            else:
                assert col.is_proper(sq, result, lists, complete=True)
                print("coloring: ok")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sqcolor",
                                description="square-of-graph coloring toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("mad", cmd_mad, help="exact maximum average degree")
    sp.add_argument("graph")
    sp.add_argument("--format", choices=("text", "tsv"), default="text")

    sp = add("square", cmd_square, help="write the square of a graph")
    sp.add_argument("graph")
    sp.add_argument("-o", "--output")

    sp = add("color", cmd_color, help="list-color a graph (or its square)")
    sp.add_argument("graph")
    sp.add_argument("--lists", required=True)
    sp.add_argument("--square", action="store_true")

    sp = add("choosable", cmd_choosable, help="decide k-choosability (desk scale)")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, required=True)

    sp = add("detect", cmd_detect, help="find reducible configurations")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--kinds")
    sp.add_argument("--locals", action="store_true",
                    help="also run the theorem-local patterns")
    sp.add_argument("--theorem", choices=disc.THEOREM_IDS)
    sp.add_argument("--format", choices=("text", "tsv"), default="text")

    sp = add("discharge", cmd_discharge, help="run a discharging program")
    sp.add_argument("graph")
    sp.add_argument("--theorem", choices=disc.THEOREM_IDS)
    sp.add_argument("--k", type=int)
    sp.add_argument("--rules", help="rules file overriding the built-in program")
    sp.add_argument("--format", choices=("text", "tsv"), default="text")

    sp = add("generate", cmd_generate, help="build a tight construction")
    sp.add_argument("kind", choices=("example1", "example2"))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--M", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--contract", action="store_true")
    sp.add_argument("-o", "--output")

    sp = add("verify-theorem", cmd_verify_theorem,
             help="hypothesis checks, detection, discharging, optional coloring")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--theorem", choices=disc.THEOREM_IDS)
    sp.add_argument("--lists")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (FileFormatError, rulesfmt.RulesParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

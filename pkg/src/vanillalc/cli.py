"""Command-line front end.

Exit codes: 0 success, 1 negative verdict (ill-typed, not equivalent,
nonterminating, failed simulation), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import io
import itertools
import json
import sys
from typing import List, Optional, Tuple

from .errors import CalculusMismatch, ParseError, TypingError, VanillaError
from .formulas import TypeCtx
from .rewriting import (
    CALCULI,
    AllPathsTerminate,
    RuleId,
    normalize,
    reduction_graph,
    redexes,
)
from .structeq import bisim_probe, equiv_bounded
from .syntax import parse_context, parse_formula, parse_term
from .terms import calculus_of, format_position
from .testkit import GenConfig, gen_cut_free, gen_typed, serialize_terms, serialize_typed
from .translate import (
    nd_to_sc,
    sc_to_nd,
    simulate_cut_in_vsc,
    simulate_vsc_in_vanilla,
    strip_renaming_cuts,
)
from .typecheck import check, infer


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        if message:
            raise UsageError(message.strip())
        raise _Exit(status)


class _Exit(Exception):
    def __init__(self, code):
        self.code = code


def _add_term(p, name="term"):
    p.add_argument(name, nargs="?", help="term text (default: read --file or stdin)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="vanillalc", description="Workbench for the vanilla lambda-calculus.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, calculus=True):
        p.add_argument("--file", help="read the term from this file")
        if calculus:
            p.add_argument("--calculus", choices=["natural", "vanilla", "auto"], default="auto")

    p = sub.add_parser("parse", help="parse and pretty-print a term")
    _add_term(p)
    common(p)
    p.add_argument("--json", action="store_true", help="print a JSON summary")

    for name in ("typecheck", "infer"):
        p = sub.add_parser(name, help=f"{name} a term")
        _add_term(p)
        common(p)
        p.add_argument("--ctx", default="", help="typing context, e.g. 'x:A, y:A -> B' ('?' infers)")
        if name == "typecheck":
            p.add_argument("--type", required=True, help="formula to check against")
            p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("reduce", help="normalize with a trace")
    _add_term(p)
    common(p, calculus=False)
    p.add_argument("--calculus", choices=sorted(CALCULI), default="vsc")
    p.add_argument("--strategy", choices=["lo", "ri"], default="lo")
    p.add_argument("--fuel", type=int, default=1000)
    p.add_argument("--trace", choices=["text", "json"], default="text")

    p = sub.add_parser("translate", help="translate between natural and vanilla terms")
    _add_term(p)
    common(p, calculus=False)
    p.add_argument("--direction", choices=["nd-to-sc", "sc-to-nd"], required=True)
    p.add_argument("--strip", action="store_true", help="also eliminate renaming cuts")

    p = sub.add_parser("simulate", help="simulate every step of one calculus in the other")
    _add_term(p)
    common(p, calculus=False)
    p.add_argument("--direction", choices=["vanilla-to-vsc", "vsc-to-vanilla"], required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("equiv", help="search for a structural equivalence path")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--budget", type=int, default=6)
    p.add_argument("--probe", action="store_true", help="also check the bisimulation diagrams")

    p = sub.add_parser("sn-probe", help="explore the whole reduction graph")
    _add_term(p)
    common(p, calculus=False)
    p.add_argument("--calculus", choices=sorted(CALCULI), default="vanilla")
    p.add_argument("--cap", type=int, default=10_000)

    p = sub.add_parser("gen", help="generate a corpus")
    p.add_argument("--kind", choices=["typed", "cut-free"], default="typed")
    p.add_argument("--calculus", choices=["natural", "vanilla"], default="vanilla")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-size", type=int, default=10)
    p.add_argument("--atoms", default="X,Y")
    p.add_argument("--pool", type=int, default=3)
    return ap


def _text(args, stdin, name="term") -> str:
    text = getattr(args, name, None)
    if text is not None:
        return text
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            return fh.read()
    return stdin


def _calculus(choice: str, text: str) -> str:
    if choice in ("natural", "vanilla"):
        return choice
    return "vanilla" if "@" in text else "natural"


def _rules_calculus(name: str) -> str:
    return next(iter(CALCULI[name])).calculus


def run(argv: List[str], stdin: str = "") -> Tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    try:
        args = build_parser().parse_args(argv)
        code = _dispatch(args, stdin, out)
    except _Exit as e:
        code = e.code
    except UsageError as e:
        err.write(f"{e}\n")
        code = 2
    except ParseError as e:
        err.write(f"parse error at line {e.line}, column {e.column}: {e.message}\n")
        code = 2
    except CalculusMismatch as e:
        err.write(f"error: {e}\n")
        code = 2
    except OSError as e:
        err.write(f"error: {e}\n")
        code = 2
    return code, out.getvalue(), err.getvalue()


def _dispatch(args, stdin, out) -> int:
    cmd = args.command
    if cmd == "parse":
        text = _text(args, stdin)
        calc = _calculus(args.calculus, text)
        t = parse_term(text, calc)
        if args.json:
            json.dump({"term": str(t), "calculus": calculus_of(t), "size": t.size,
                       "free": sorted(map(str, t.fv))}, out)
            out.write("\n")
        else:
            out.write(f"{t}\n")
        return 0

    if cmd in ("typecheck", "infer"):
        text = _text(args, stdin)
        calc = _calculus(args.calculus, text)
        t = parse_term(text, calc)
        ctx = parse_context(args.ctx) if args.ctx.strip() else TypeCtx()
        try:
            if cmd == "typecheck":
                d = check(calc, ctx, t, parse_formula(args.type))
                if args.format == "json":
                    out.write(json.dumps(d.to_json(), indent=2) + "\n")
                else:
                    out.write(d.to_text() + "\n")
            else:
                f, sub = infer(calc, ctx, t)
                out.write(f"{f}\n")
                for k in sub:
                    out.write(f"  {k} := {sub[k]}\n")
        except TypingError as e:
            pos = getattr(e, "position", None)
            where = f" at {format_position(pos)}" if pos is not None else ""
            out.write(f"ill-typed{where}: {e}\n")
            return 1
        return 0

    if cmd == "reduce":
        text = _text(args, stdin)
        t = parse_term(text, _rules_calculus(args.calculus))
        if args.fuel < 0:
            raise UsageError("--fuel must be non-negative")
        tr = normalize(t, CALCULI[args.calculus], args.strategy, args.fuel)
        if args.trace == "json":
            out.write(json.dumps(tr.to_json(), indent=2) + "\n")
        else:
            out.write(tr.to_text() + "\n")
        return 0

    if cmd == "translate":
        text = _text(args, stdin)
        if args.direction == "nd-to-sc":
            u = nd_to_sc(parse_term(text, "natural"))
            if args.strip:
                u, k = strip_renaming_cuts(u)
        else:
            u = sc_to_nd(parse_term(text, "vanilla"))
        out.write(f"{u}\n")
        return 0

    if cmd == "simulate":
        text = _text(args, stdin)
        if args.direction == "vanilla-to-vsc":
            t = parse_term(text, "vanilla")
            rs, sim = redexes(t, {RuleId.CutElim}), simulate_cut_in_vsc
        else:
            t = parse_term(text, "natural")
            rs, sim = redexes(t, CALCULI["vsc"]), simulate_vsc_in_vanilla
        reports, failed = [], False
        for r in rs:
            try:
                reports.append(sim(t, r))
            except VanillaError as e:
                failed = True
                out.write(f"FAIL {r}: {e}\n")
        if args.format == "json":
            out.write(json.dumps([r.to_json() for r in reports], indent=2) + "\n")
        else:
            if not rs:
                out.write("no redexes: nothing to simulate\n")
            for rep in reports:
                out.write(rep.to_text() + "\n")
        return 1 if failed else 0

    if cmd == "equiv":
        t = parse_term(args.left, "vanilla")
        u = parse_term(args.right, "vanilla")
        res = equiv_bounded(t, u, args.budget)
        out.write(f"{res}\n")
        if not res:
            return 1
        for step in res.path:
            out.write(f"  ~ {step}\n")
        if args.probe:
            rep = bisim_probe(t, u, args.budget)
            for d in rep.diagrams:
                out.write(f"{d}\n")
            out.write("bisimulation: " + ("all diagrams close\n" if rep.ok else "FAILED\n"))
            return 0 if rep.ok else 1
        return 0

    if cmd == "sn-probe":
        text = _text(args, stdin)
        t = parse_term(text, _rules_calculus(args.calculus))
        res = reduction_graph(t, CALCULI[args.calculus], args.cap)
        out.write(f"{res}\n")
        return 0 if isinstance(res, AllPathsTerminate) else 1

    if cmd == "gen":
        atoms = tuple(a.strip() for a in args.atoms.split(",") if a.strip())
        cfg = GenConfig(args.seed, args.max_size, atoms, args.pool)
        if args.kind == "typed":
            items = itertools.islice(gen_typed(args.calculus, cfg), args.count)
            out.write(serialize_typed(items, cfg))
        else:
            out.write(serialize_terms(itertools.islice(gen_cut_free(cfg), args.count), cfg))
        return 0

    raise UsageError(f"unknown command {cmd}")


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    needs_stdin = not sys.stdin.isatty() if sys.stdin else False
    stdin = sys.stdin.read() if needs_stdin and _wants_stdin(argv) else ""
    code, out, err = run(argv, stdin)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


def _wants_stdin(argv) -> bool:
    try:
        args = build_parser().parse_args(argv)
    except (UsageError, _Exit):
        return False
    return getattr(args, "term", "x") is None and not getattr(args, "file", None)

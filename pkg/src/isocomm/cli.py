"""Command-line interface.

Results go to stdout as one verdict line optionally followed by
``key: value`` certificate lines; diagnostics go to stderr.  Exit codes:
0 yes/trivial/success, 1 no/nontrivial, 2 unknown, 64 usage, 65 parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import classes
from .answers import OracleAnswer, Verdict
from .hall import HallConfig, PreconditionError, Variant, word_problem
from .machines import ComputableF, FTableError, f_eval, in_range_semi
from .presentation import PresentationParseError, abelian_invariants, loads
from .tietze import tietze_neighbors
from .torus import format_element, parse_element, t_inv, t_mul, t_wp
from .words import WordParseError, parse_word

EXIT_YES, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_PARSE = 64, 65

_EXIT = {Verdict.YES: EXIT_YES, Verdict.NO: EXIT_NO, Verdict.UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class InputParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(verdict_line: str, lines: Sequence[str] = ()) -> None:
    print(verdict_line)
    for line in lines:
        print(line)


def _certificate_lines(cert) -> list[str]:
    if cert is None:
        return []
    if isinstance(cert, dict):
        return [f"{k}: {v}" for k, v in cert.items()]
    if hasattr(cert, "lines"):
        return cert.lines()
    return [f"certificate: {cert}"]


def _answer(ans: OracleAnswer, words=("yes", "no", "unknown")) -> int:
    word = dict(zip(Verdict, words))[ans.verdict]
    lines = _certificate_lines(ans.certificate)
    if ans.budget_spent:
        lines.append(f"budget-spent: {ans.budget_spent}")
    _emit(word, lines)
    return _EXIT[ans.verdict]


def _f(args) -> ComputableF:
    if not args.table:
        return ComputableF.halting()
    try:
        return ComputableF.parse(args.table)
    except ValueError as exc:
        raise InputParseError(str(exc)) from exc


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


# --- subcommands ------------------------------------------------------------


def cmd_enum(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for lab in classes.enumerate_labels(args.family, args.count, args.truncation, _f(args)):
        name = classes.file_name(lab)
        (out / name).write_text(classes.emit_text(lab))
        names.append(name)
    _emit("success", [f"wrote: {n}" for n in names])
    return EXIT_YES


def cmd_wp(args) -> int:
    cfg = HallConfig(Variant(args.variant), _f(args))
    ans = word_problem(parse_word(args.word), cfg, args.budget)
    return _answer(ans, ("trivial", "nontrivial", "unknown"))


def cmd_abel(args) -> int:
    inv = abelian_invariants(loads(_read(args.file)))
    _emit("success", [f"invariants: {inv}", f"free-rank: {inv.free_rank}",
                      "torsion: " + (" ".join(map(str, inv.torsion)) or "-")])
    return EXIT_YES


def _label(args, family: str, r: int):
    return classes.label(family, r, args.truncation, _f(args))


def cmd_iso(args) -> int:
    if args.cls == "c1":
        if len(args.labels) != 2:
            raise UsageError("iso --class c1 takes R and Q")
        r, q = args.labels
        report = classes.iso_c1(_label(args, "c1", r), _label(args, "c1", q), strict=args.strict)
        _emit(report.verdict.value, report.lines())
        return _EXIT[report.verdict]
    if len(args.labels) != 1:
        raise UsageError("iso --class c2 takes R (compared with label 0)")
    return _answer(classes.iso_c2_semi(_label(args, "c2", args.labels[0]), args.budget))


def cmd_comm(args) -> int:
    if args.cls == "c2":
        if len(args.labels) != 2:
            raise UsageError("comm --class c2 takes R and Q")
        r, q = args.labels
        return _answer(classes.comm_c2(_label(args, "c2", r), _label(args, "c2", q)))
    if len(args.labels) != 1:
        raise UsageError("comm --class c1 takes R (compared with label 0)")
    return _answer(classes.comm_c1_semi(_label(args, "c1", args.labels[0]), args.budget))


def cmd_f(args) -> int:
    f = _f(args)
    if args.eval is not None:
        _emit("success", [f"f({args.eval}): {f_eval(f, args.eval)}"])
        return EXIT_YES
    hit = in_range_semi(f, args.in_range, args.budget)
    if hit is None:
        _emit("unknown")
        return EXIT_UNKNOWN
    _emit("yes", [f"n: {hit.n}", f"budget-spent: {hit.budget_spent}"])
    return EXIT_YES


def cmd_torus(args) -> int:
    spec = classes.torus_spec(_label(args, args.family, args.r))
    elems = [parse_element(spec, text, args.budget) for text in args.elements]
    arity = {"mul": 2, "inv": 1, "wp": 1}[args.op]
    if len(elems) != arity:
        raise UsageError(f"torus {args.op} takes {arity} element(s)")
    if args.op == "mul":
        _emit("success", [format_element(t_mul(spec, *elems, budget=args.budget))])
        return EXIT_YES
    if args.op == "inv":
        _emit("success", [format_element(t_inv(spec, elems[0]))])
        return EXIT_YES
    return _answer(t_wp(spec, elems[0], args.budget), ("trivial", "nontrivial", "unknown"))


def cmd_reduce(args) -> int:
    f = _f(args)
    if args.kind in ("torsion-to-comm", "word-to-iso"):
        if args.target is None:
            raise UsageError(f"reduce {args.kind} needs R")
        r = int(args.target)
        if args.kind == "torsion-to-comm":
            oracle = classes.perfect_comm_oracle if args.oracle == "perfect" else classes.bundled_comm_oracle
            ans = classes.reduce_torsion_to_comm(oracle, r, args.budget, f, args.truncation)
        else:
            oracle = classes.perfect_iso_oracle if args.oracle == "perfect" else classes.bundled_iso_oracle
            ans = classes.reduce_word_to_iso(oracle, r, args.budget, f, args.truncation)
        return _answer(ans)
    if args.target is None:
        raise UsageError("reduce triviality needs an instance name or a .pres file")
    if args.target in classes.TOY_INSTANCES:
        a = classes.TOY_INSTANCES[args.target]
    else:
        a = loads(_read(args.target))
    if args.via == "iso":
        toy = classes.toy_iso_class()
        ans = classes.triviality_from_iso(toy.member, toy.iso, classes.TOY_G_REF, a, args.budget)
    else:
        toy = classes.toy_comm_class()
        ans = classes.triviality_from_comm(toy.member, toy.comm, classes.TOY_G_REF, a, args.budget)
    return _answer(ans, ("trivial", "nontrivial", "unknown"))


def cmd_tietze(args) -> int:
    nbrs = tietze_neighbors(loads(_read(args.file)), args.budget)
    _emit("success", [f"neighbors: {len(nbrs)}"] + [f"neighbor: {p}" for p in nbrs])
    return EXIT_YES


# --- parser -----------------------------------------------------------------


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isocomm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, budget=True, table=True, truncation=False):
        if budget:
            sp.add_argument("--budget", type=_nonneg, default=0)
        if table:
            sp.add_argument("--table", metavar="SPEC",
                            help="injected f, e.g. '2n+3' or '3,5,7' (default: halting enumerator)")
        if truncation:
            sp.add_argument("--truncation", type=_positive, default=None,
                            help="truncation T (default max(8, r); raised to r when smaller)")

    sp = sub.add_parser("enum", help="write the first N presentations of a family")
    sp.add_argument("--family", choices=["c1", "c2"], required=True)
    sp.add_argument("--count", type=_nonneg, required=True)
    sp.add_argument("--out", required=True)
    common(sp, budget=False, truncation=True)
    sp.set_defaults(run=cmd_enum)

    sp = sub.add_parser("wp", help="word problem in the Hall quotient")
    sp.add_argument("--variant", choices=["v1", "v2"], required=True)
    sp.add_argument("--word", required=True)
    common(sp)
    sp.set_defaults(run=cmd_wp)

    sp = sub.add_parser("abel", help="abelian invariants of a .pres file")
    sp.add_argument("file")
    sp.set_defaults(run=cmd_abel)

    sp = sub.add_parser("iso", help="isomorphism within a family")
    sp.add_argument("--class", dest="cls", choices=["c1", "c2"], required=True)
    sp.add_argument("labels", type=_nonneg, nargs="+")
    sp.add_argument("--strict", action="store_true")
    common(sp, truncation=True)
    sp.set_defaults(run=cmd_iso)

    sp = sub.add_parser("comm", help="commensurability within a family")
    sp.add_argument("--class", dest="cls", choices=["c1", "c2"], required=True)
    sp.add_argument("labels", type=_nonneg, nargs="+")
    common(sp, truncation=True)
    sp.set_defaults(run=cmd_comm)

    sp = sub.add_parser("f", help="evaluate f or semi-decide its range")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--eval", type=_nonneg, metavar="N")
    g.add_argument("--in-range", type=_nonneg, metavar="R")
    common(sp)
    sp.set_defaults(run=cmd_f)

    sp = sub.add_parser("torus", help="mapping-torus arithmetic")
    sp.add_argument("op", choices=["mul", "inv", "wp"])
    sp.add_argument("elements", nargs="+", metavar="'(word ; n)'")
    sp.add_argument("--family", choices=["c1", "c2"], default="c1")
    sp.add_argument("--r", type=_nonneg, default=0)
    common(sp, truncation=True)
    sp.set_defaults(run=cmd_torus)

    sp = sub.add_parser("reduce", help="run a reduction")
    sp.add_argument("kind", choices=["torsion-to-comm", "word-to-iso", "triviality"])
    sp.add_argument("target", nargs="?", help="R, or an instance name / .pres file for triviality")
    sp.add_argument("--oracle", choices=["bundled", "perfect"], default="bundled")
    sp.add_argument("--via", choices=["iso", "comm"], default="iso")
    common(sp, truncation=True)
    sp.set_defaults(run=cmd_reduce)

    sp = sub.add_parser("tietze", help="list one-step Tietze neighbours")
    sp.add_argument("file")
    sp.add_argument("--budget", type=_nonneg, default=1)
    sp.set_defaults(run=cmd_tietze)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except UsageError as exc:
        print(f"isocomm: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (WordParseError, PresentationParseError, InputParseError) as exc:
        print(f"isocomm: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, FTableError, ValueError, KeyError) as exc:
        print(f"isocomm: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

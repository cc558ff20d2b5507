"""Command line interface: ``loja {exponent,branches,proper,estimate,check-lemma2}``."""

from __future__ import annotations

import argparse
import math
import re
import sys
from typing import List, Optional, Sequence

from . import report
from .engine import MappingSpec, is_proper, lojasiewicz_exponent
from .estimator import RadiusLadder, estimate_exponent, lemma2_check
from .poly.multipoly import product
from .poly.parse import ParseError, parse_poly

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class UsageError(Exception):
    pass


def _read_input(args) -> tuple[List[str], Optional[List[str]]]:
    if args.expr is not None:
        text = args.expr
        parts = [p.strip() for p in text.split(";")]
        declared = None
        if parts and parts[0].lower().startswith("vars:"):
            declared = parts[0][5:].split()
            parts = parts[1:]
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                lines = [ln.strip() for ln in fh]
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}")
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        declared = None
        if lines and lines[0].lower().startswith("vars:"):
            declared = lines[0][5:].split()
            lines = lines[1:]
        parts = lines
    parts = [p for p in parts if p]
    if not parts:
        raise UsageError("no components given")
    return parts, declared


def infer_variables(parts: Sequence[str], univariate: bool = False) -> List[str]:
    """Default variable list for the given component texts."""
    names = set()
    for p in parts:
        names.update(_NAME.findall(p))
    if univariate:
        if not names:
            return ["t"]
        if len(names) == 1:
            return [names.pop()]
        raise UsageError("univariate input expected; declare the variable with 'vars:'")
    if names <= {"x", "y"}:
        return ["x", "y"]
    zs = [n for n in names if re.fullmatch(r"z[1-9][0-9]*", n)]
    if zs and len(zs) == len(names):
        n = max(2, max(int(z[1:]) for z in zs))
        return [f"z{i}" for i in range(1, n + 1)]
    bad = sorted(names - {"x", "y"})
    raise UsageError(f"unknown variable {bad[0]!r}; declare variables with 'vars:'")


def _mapping(args, univariate=False):
    parts, declared = _read_input(args)
    variables = declared or infer_variables(parts, univariate)
    comps = tuple(parse_poly(p, variables) for p in parts)
    return MappingSpec(tuple(variables), comps)


def _need_two(F):
    if F.nvars != 2:
        raise UsageError("this command needs exactly two variables")


def cmd_exponent(args, out):
    F = _mapping(args)
    _need_two(F)
    r = lojasiewicz_exponent(F, args.seed)
    if args.json:
        out.write(report.dumps(report.exponent_dict(r, args.seed)) + "\n")
    else:
        out.write(report.exponent_text(r) + "\n")
    return 0


def cmd_proper(args, out):
    F = _mapping(args)
    _need_two(F)
    proper, exponent = is_proper(F, args.seed)
    if args.json:
        out.write(report.dumps({"proper": proper, "exponent": report.fmt_exact(exponent)}) + "\n")
    else:
        word = "proper" if proper else "not proper"
        out.write(f"{word} (L_inf = {report.fmt_exact(exponent)})\n")
    return 0


def cmd_branches(args, out):
    from .poly.gcd import gcd_free_basis
    from .puiseux import expand_branches, extend_branch, genericize

    F = _mapping(args)
    _need_two(F)
    comps = [c for c in F.components if not c.is_constant()]
    if not comps:
        raise UsageError("no nonconstant component: the curve is empty")
    rep, _ = genericize(product(comps), args.seed)
    basis = gcd_free_basis([c.linear_change(rep.transform) for c in comps])
    branches = []
    for h in basis:
        for b in expand_branches(h, check_squarefree=False):
            branches.append(extend_branch(b, -args.depth))
    if args.json:
        out.write(report.dumps({
            "transform": [[report.fmt_exact(v) for v in row] for row in rep.transform],
            "branches": [report.branch_dict(b, max_terms=args.depth + 8) for b in branches],
        }) + "\n")
    else:
        out.write(report.branches_text(branches, rep.transform) + "\n")
    return 0


def cmd_estimate(args, out):
    F = _mapping(args)
    ladder = RadiusLadder.spanning(args.rmin, args.rmax, args.ratio,
                                   samples_per_radius=args.samples,
                                   multistarts=args.multistarts, seed=args.seed)
    r = estimate_exponent(F, ladder)
    if args.csv:
        r.write_csv(args.csv)
    if args.json:
        out.write(report.dumps(report.estimate_dict(r)) + "\n")
    else:
        out.write(report.estimate_text(r) + "\n")
    return 0


def cmd_lemma2(args, out):
    F = _mapping(args, univariate=True)
    holds, worst = lemma2_check(list(F.components), probes=args.probes, seed=args.seed)
    if args.json:
        out.write(report.dumps({"holds": holds, "worst_margin": report.fmt_num(worst)}) + "\n")
    else:
        out.write(f"holds: {'yes' if holds else 'no'}, worst margin: {report.fmt_num(worst)}\n")
    return 0


def _positive_float(s):
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")
    if not v > 0 or math.isinf(v):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {s!r}")
    return v


def build_parser():
    p = argparse.ArgumentParser(
        prog="loja",
        description="Łojasiewicz exponent at infinity of polynomial maps.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("-e", dest="expr", metavar="INLINE",
                         help="components separated by ';' (optionally 'vars: x y;' first)")
        src.add_argument("-f", dest="file", metavar="FILE",
                         help="file with one component per line, optional first line 'vars: ...'")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("exponent", help="exact exponent (two variables)")
    common(sp)
    sp.set_defaults(func=cmd_exponent)

    sp = sub.add_parser("proper", help="properness verdict (two variables)")
    common(sp)
    sp.set_defaults(func=cmd_proper)

    sp = sub.add_parser("branches", help="branches at infinity of the zero set")
    common(sp)
    sp.add_argument("--depth", type=int, default=4, help="terms below the leading one")
    sp.set_defaults(func=cmd_branches)

    sp = sub.add_parser("estimate", help="numeric slope estimate (any number of variables)")
    common(sp)
    sp.add_argument("--rmin", type=_positive_float, default=1e2)
    sp.add_argument("--rmax", type=_positive_float, default=1e6)
    sp.add_argument("--ratio", type=_positive_float, default=math.sqrt(10))
    sp.add_argument("--samples", type=int, default=64)
    sp.add_argument("--multistarts", type=int, default=8)
    sp.add_argument("--csv", metavar="PATH", help="write R, min_S, min_full rows")
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("check-lemma2", help="check the 2^-deg inequality for univariate maps")
    common(sp)
    sp.add_argument("--probes", type=int, default=64)
    sp.set_defaults(func=cmd_lemma2)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ParseError, UsageError) as exc:
        err.write(f"loja: error: {exc}\n")
        return 2
    except ValueError as exc:
        err.write(f"loja: error: {exc}\n")
        return 2
    except Exception as exc:  # invariant violation
        err.write(f"loja: internal error: {type(exc).__name__}: {exc}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

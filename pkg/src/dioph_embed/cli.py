"""Command-line interface.

Exit codes: 0 success or verification pass, 1 verification failure,
2 parse/usage error, 3 semantic error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from . import pell
from .divfam import DivFamilyError, build_families, build_w_phat
from .polyparse import ParseError, format_polynomial, parse_polynomial
from .polyring import PolyError, VarContext
from .reduction import (
    DiophantineInstance,
    FormatError,
    ReductionError,
    build_complex_variety,
    build_real_variety,
    complex_witness,
    read_json,
    real_witness,
    variety_from_json,
    variety_to_json,
    verify_witness,
    witness_from_json,
    witness_to_json,
    write_json,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_SEMANTIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _rows(text: str) -> List[List[int]]:
    return [_int_list(row) for row in text.split(";") if row.strip()]


def _instance(args) -> DiophantineInstance:
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    if not names:
        raise UsageError("--vars must name at least one variable")
    try:
        ctx = VarContext(names)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return DiophantineInstance(parse_polynomial(args.dioph, ctx), tuple(names))


def cmd_pell(args) -> int:
    T = parse_polynomial(args.t)
    pc = pell.PellContext(T)
    pair = pell.solution(args.n, pc)
    print(f"T = {format_polynomial(T)}")
    print(f"X = {format_polynomial(pair.X)}")
    print(f"Y = {format_polynomial(pair.Y)}")
    doc = {"T": format_polynomial(T), "N": args.n,
           "X": format_polynomial(pair.X), "Y": format_polynomial(pair.Y)}
    status = EXIT_OK
    if args.verify:
        ok = pell.is_solution(pair.X, pair.Y, pc)
        print(f"identity X^2 - (T^2 - 1)*Y^2 = 1: {'pass' if ok else 'fail'}")
        doc["identity"] = ok
        if not T.is_constant():
            res = pell.residue_mod_Tminus1(pair, pc)
            Z = pell.z_component(pair, args.n, pc)
            print(f"Y mod (T - 1) = {res}")
            print(f"Z = (Y - N)/(T - 1) = {format_polynomial(Z)}")
            doc["residue"] = int(res) if res.denominator == 1 else str(res)
            doc["Z"] = format_polynomial(Z)
        status = EXIT_OK if ok else EXIT_FAIL
    if args.out:
        write_json(args.out, doc)
    return status


def cmd_divfam(args) -> int:
    if args.constants:
        constants = _int_list(args.constants)
        if args.n is not None and args.n != len(constants):
            raise UsageError(f"--n {args.n} does not match {len(constants)} constants")
        if len(constants) > 3 and not args.allow_large:
            raise DivFamilyError("more than 3 constants; pass --allow-large to override")
        fam = build_families(constants)
    else:
        if args.n is None:
            raise UsageError("divfam needs --n or --constants")
        fam = build_w_phat(args.n, allow_large=args.allow_large)
    for k in range(1, fam.m + 1):
        fam.certificate(k)
    print(f"constants: {', '.join(str(c) for c in fam.constants)}")
    print(f"P_{fam.m}: {len(fam.P)} terms, degree {fam.P.degree()}")
    for k, h in enumerate(fam.H, start=1):
        print(f"H_{k}: {len(h)} terms, degree {h.degree()}; divides P - {fam.constants[k - 1]}: yes")
    write_json(args.out, fam.to_json())
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = _instance(args)
    v = build_real_variety(inst) if args.case == "real" else build_complex_variety(inst)
    write_json(args.out, variety_to_json(v))
    print(f"{args.case} variety: {len(v.coordinates)} coordinates, {len(v.equations)} equations "
          f"(d={v.meta['d']}, e={v.meta['e']}, n={v.meta['n']})")
    return EXIT_OK


def cmd_witness(args) -> int:
    inst = _instance(args)
    rows = _rows(args.solution)
    if args.case == "real":
        if len(rows) != 1:
            raise UsageError("real witness takes a single solution tuple")
        w = real_witness(inst, rows[0], expand=args.expand)
    else:
        if args.expand:
            raise UsageError("--expand is only available for real witnesses")
        w = complex_witness(inst, rows)
    write_json(args.out, witness_to_json(w))
    print(f"{args.case} witness: domain dimension {w.m}, {len(w.assignment)} coordinates assigned")
    return EXIT_OK


def cmd_verify(args) -> int:
    v = variety_from_json(read_json(args.variety))
    w = witness_from_json(read_json(args.witness))
    report = verify_witness(v, w, seed=args.seed)
    if args.out:
        write_json(args.out, report.to_json())
    vanishing = sum(1 for s in report.equations if s.vanishes)
    print(f"equations vanishing identically: {vanishing}/{len(report.equations)}")
    for s in report.equations:
        if not s.vanishes:
            state = "undetermined" if s.vanishes is None else "nonzero"
            print(f"  equation {s.index} ({s.label}) {state}: residual {s.residual}")
    print(f"nonconstant: {'yes' if report.nonconstant else 'no'}")
    print(f"jacobian rank: {report.jacobian_rank} (domain dimension {report.domain_dim}, seed {report.seed})")
    if report.injective_by_projection:
        print("injective by coordinate projection")
    for c in report.caveats:
        print(f"caveat: {c}")
    print(f"verdict: {report.verdict}")
    return EXIT_OK if report.verdict == "pass" else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dioph-embed",
        description="Pell solutions, divisibility families and embedding witnesses for Diophantine reductions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pell", help="solution N of X^2 - (T^2-1)Y^2 = 1")
    p.add_argument("--t", required=True, help="parameter polynomial T")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("divfam", help="divisibility families H_k | P - C_k")
    p.add_argument("--n", type=int)
    p.add_argument("--constants", help="comma-separated distinct integers (default 3,6,...,3n)")
    p.add_argument("--allow-large", action="store_true", help="override the size cap")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_divfam)

    for name, func, helptext in (
        ("reduce", cmd_reduce, "build the variety presentation"),
        ("witness", cmd_witness, "build an embedding witness from integer solutions"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("case", choices=("real", "complex"))
        p.add_argument("--dioph", required=True, help="integer polynomial Q")
        p.add_argument("--vars", required=True, help="comma-separated variables of Q, in order")
        p.add_argument("--out", required=True)
        if name == "witness":
            p.add_argument("--solution", required=True, help="a,b,... or rows a,b,c;d,e,f")
            p.add_argument("--expand", action="store_true", help="write coordinates as polynomials in t only")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="verify a witness against a variety")
    p.add_argument("--variety", required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the report JSON here")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, FormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ReductionError, pell.PellError, DivFamilyError, PolyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

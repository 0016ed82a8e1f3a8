"""Command-line front end: ``carrypoly carry|bignum|interp|verify``.

Exit status is 0 on success, 1 when a verification suite finds a failure
and 2 for usage or domain errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .add_carry import carry_oracle_add, phi_poly
from .bignum import Digits, add_many, add_two, mul_listed, mul_schoolbook, to_digits
from .errors import CarryPolyError, DomainError
from .fp_core import check_odd_prime, check_prime
from .interp import format_table, interpolate, parse_table, tabulate
from .mpoly import MPoly
from .mul_carry import carry_oracle_mul, psi1_poly, psi_aux
from .restricted_ops import CostTape
from .verify import SUITE_NAMES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ADD_ALGOS = ("two", "many")
MUL_ALGOS = ("schoolbook", "listed")


class _Parser(argparse.ArgumentParser):
    # argparse already exits with 2 on usage errors; keep the message on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="carrypoly", description="Carry polynomials over F_p and what they compute.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    carry = sub.add_parser("carry", help="emit a carry polynomial")
    carry_sub = carry.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    c_add = carry_sub.add_parser("add", help="phi_i for an n-term sum")
    c_add.add_argument("--p", type=int, required=True)
    c_add.add_argument("--n", type=int, required=True)
    c_add.add_argument("--i", type=int, default=1)
    c_mul = carry_sub.add_parser("mul", help="psi_1 for an n-factor product")
    c_mul.add_argument("--p", type=int, required=True)
    c_mul.add_argument("--n", type=int, default=2)
    c_psi = carry_sub.add_parser("mul-psi", help="the auxiliary polynomial Psi and Psi(1)")
    c_psi.add_argument("--p", type=int, required=True)
    for p in (c_add, c_mul, c_psi):
        p.add_argument("--json", action="store_true")
    for p in (c_add, c_mul):
        p.add_argument("--dump-table", action="store_true",
                       help="print the integer-oracle truth table instead of the polynomial")

    big = sub.add_parser("bignum", help="p-ary big-integer arithmetic through carry polynomials")
    big.add_argument("op", choices=("add", "mul"))
    big.add_argument("operands", nargs="+")
    big.add_argument("--p", type=int, required=True)
    big.add_argument("--algo", choices=ADD_ALGOS + MUL_ALGOS)
    big.add_argument("--track", action="store_true", help="append the circuit cost report")
    big.add_argument("--radix-literal", action="store_true",
                     help="operands and result are big-endian base-p digit strings")
    big.add_argument("--json", action="store_true")

    interp = sub.add_parser("interp", help="interpolate a truth-table file")
    interp.add_argument("table", help="table file, or - for stdin")
    interp.add_argument("--json", action="store_true")

    ver = sub.add_parser("verify", help="run self-checking suites")
    ver.add_argument("--suite", default="all")
    ver.add_argument("--p-max", type=int)
    ver.add_argument("--l-max", type=int)
    ver.add_argument("--json", action="store_true")
    return parser


def render_poly(f: MPoly, as_json: bool, **extra) -> str:
    m = f.metrics()
    if as_json:
        doc = dict(extra, polynomial=f.to_str(), p=f.p, nvars=f.nvars,
                   terms=[[list(e), c] for e, c in f.sorted_terms()], metrics=m._asdict())
        return json.dumps(doc, sort_keys=True)
    lines = [f.to_str()] + [f"{k} = {v}" for k, v in m._asdict().items()]
    return "\n".join(lines)


def cmd_carry(args) -> str:
    if args.kind == "mul-psi":
        aux = psi_aux(args.p)
        if args.json:
            return json.dumps({"p": aux.p, "psi": aux.to_str(), "coefficients": list(aux.coeffs),
                               "psi1": aux.psi1_const}, sort_keys=True)
        return f"{aux.to_str()}\nPsi(1) = {aux.psi1_const}"
    if args.n < 1:
        raise DomainError("--n must be at least 1")
    if args.kind == "add":
        check_prime(args.p)
        if args.i < 0:
            raise DomainError("--i must be non-negative")
        p, n, i = args.p, args.n, args.i
        oracle = lambda *x: carry_oracle_add(x, i, p)  # noqa: E731
        f_builder = lambda: phi_poly(i, n, p)  # noqa: E731
        extra = {"i": i}
    else:
        check_odd_prime(args.p)
        p, n = args.p, args.n
        oracle = lambda *x: carry_oracle_mul(x, p)  # noqa: E731
        f_builder = lambda: psi1_poly(n, p)  # noqa: E731
        extra = {}
    if args.dump_table:
        return format_table(tabulate(oracle, p, n)).rstrip("\n")
    return render_poly(f_builder(), args.json, **extra)


def _parse_operand(text: str, p: int, radix_literal: bool) -> Digits:
    if radix_literal:
        return Digits.from_literal(text, p)
    try:
        v = int(text, 10)
    except ValueError:
        raise DomainError(f"operand {text!r} is not a decimal integer") from None
    return to_digits(v, p)


def cmd_bignum(args) -> str:
    p = check_prime(args.p)
    ops = [_parse_operand(t, p, args.radix_literal) for t in args.operands]
    algo = args.algo
    if args.op == "add":
        algo = algo or ("two" if len(ops) == 2 else "many")
        if algo not in ADD_ALGOS:
            raise DomainError(f"--algo {algo} is a multiplication algorithm")
        if algo == "two" and len(ops) != 2:
            raise DomainError("--algo two takes exactly two operands")
    else:
        algo = algo or "schoolbook"
        if algo not in MUL_ALGOS:
            raise DomainError(f"--algo {algo} is an addition algorithm")
        if len(ops) != 2:
            raise DomainError("multiplication takes exactly two operands")
        if p == 2:
            raise DomainError("multiplication needs an odd prime; p = 2 carries are a plain shift-and-add")
    tape = CostTape(p) if args.track else None
    if algo == "many":
        res = add_many(ops, tape=tape)
    elif algo == "two":
        res = add_two(ops[0], ops[1], tape=tape)
    elif algo == "schoolbook":
        res = mul_schoolbook(ops[0], ops[1], tape=tape)
    else:
        res = mul_listed(ops[0], ops[1], tape=tape)
    shown = res.to_literal() if args.radix_literal else str(int(res))
    if args.json:
        doc = {"p": p, "op": args.op, "algo": algo, "result": shown}
        if tape is not None:
            doc["cost"] = tape.report()
        return json.dumps(doc, sort_keys=True)
    if tape is None:
        return shown
    return f"{shown}\n{tape.to_text()}"


def cmd_interp(args) -> str:
    if args.table == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.table, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DomainError(f"cannot read {args.table}: {exc.strerror}") from None
    return render_poly(interpolate(parse_table(text)), args.json)


def cmd_verify(args) -> tuple[str, int]:
    if args.suite not in SUITE_NAMES:
        raise DomainError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITE_NAMES)}")
    reports = run_suite(args.suite, p_max=args.p_max, l_max=args.l_max)
    ok = all(r.ok for r in reports)
    if args.json:
        text = json.dumps({"ok": ok, "suites": [r.to_dict() for r in reports]}, sort_keys=True)
    else:
        lines = []
        for r in reports:
            status = "pass" if r.ok else "FAIL"
            lines.append(f"{r.suite}: {status} ({r.checks} checks, {len(r.failures)} failures)")
            for f in r.failures:
                lines.append(f"  FAIL {f.suite} {f.check}: {f.detail}")
        lines.append("pass" if ok else "FAIL")
        text = "\n".join(lines)
    return text, EXIT_OK if ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "carry":
            out, code = cmd_carry(args), EXIT_OK
        elif args.command == "bignum":
            out, code = cmd_bignum(args), EXIT_OK
        elif args.command == "interp":
            out, code = cmd_interp(args), EXIT_OK
        else:
            out, code = cmd_verify(args)
    except CarryPolyError as exc:
        print(f"carrypoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

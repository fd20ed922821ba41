"""Command-line front end.

Errors are reported on stderr as ``{"code": ..., "message": ...}``; usage and
input-parsing failures exit with 2, domain errors with 1.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import cost_model
from .bell_basic import Flavor, exponential_bell_table, ordinary_bell_table
from .bell_factorized import bell_exp, bell_exp_alg92, bell_exp_genal, bell_ordinary
from .bell_basic import bell_exp_alg91
from .conv_calculus import (
    compound_distribution,
    conv_power_via_bell,
    conv_root,
    invert_bell_exponential,
    invert_bell_ordinary,
)
from .cost_model import OpCounter
from .errors import BellError, DomainError, ParseError
from .exact_scalar import format_rational, parse_rational
from .sequence import Sequence, conv_power


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error("USAGE_ERROR", message)
        raise SystemExit(2)


def _emit_error(code: str, message: str) -> None:
    sys.stderr.write(json.dumps({"code": code, "message": message}) + "\n")


def parse_sequence_file(path) -> Sequence:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}", code="FILE_NOT_FOUND") from None
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}", code="FILE_NOT_FOUND") from None
    return Sequence.from_json(text)


def named_sequence(spec: str, length: int, start: int = 1) -> Sequence:
    """``ones``, ``factorial`` or ``geometric:r`` on indices ``start..start+length-1``."""
    name, _, arg = spec.partition(":")
    idx = range(start, start + max(length, 0))
    if name == "ones" and not arg:
        return Sequence(start, [1] * len(idx))
    if name == "factorial" and not arg:
        return Sequence(start, [math.factorial(max(i, 0)) for i in idx])
    if name == "geometric" and arg:
        r = parse_rational(arg)
        return Sequence(start, [r ** i for i in idx])
    raise ParseError(f"unknown named sequence {spec!r}", code="UNKNOWN_SEQUENCE")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _load(args, length: int) -> Sequence:
    if args.input is not None:
        return parse_sequence_file(args.input)
    if args.seq is not None:
        return named_sequence(args.seq, length, args.start)
    raise ParseError("give a sequence with --in PATH or --seq NAME", code="MISSING_INPUT")


def _add_input(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--in", dest="input", metavar="PATH", help="JSON sequence document")
    g.add_argument("--seq", help="named sequence: ones, factorial, geometric:r")
    p.add_argument("--start", type=int, default=1, help="first index of a named sequence")


def _write_sequence(out, seq: Sequence, **extra) -> None:
    obj = seq.to_json_obj()
    obj.update(extra)
    out.write(json.dumps(obj) + "\n")


def _cmd_bell(args, out):
    x = _load(args, args.n)
    counter = OpCounter() if args.count else None
    if args.flavor == Flavor.ORDINARY.value:
        res = bell_ordinary(x, args.n, args.k, args.algorithm, counter)
    else:
        res = bell_exp(x, args.n, args.k, args.algorithm, counter)
    if args.format == "json":
        obj = {
            "n": res.n,
            "k": res.k,
            "flavor": res.flavor.value,
            "algorithm": res.algorithm.value,
            "value": format_rational(res.value),
        }
        if res.cost is not None:
            obj["cost"] = {"predicted": res.cost.predicted, "measured": res.cost.measured,
                           "n0": res.cost.n0}
        out.write(json.dumps(obj) + "\n")
    else:
        out.write(format_rational(res.value) + "\n")


def _cmd_conv_power(args, out):
    x = _load(args, args.upto)
    if args.method == "direct":
        seq = conv_power(x, args.k, args.upto)
    else:
        seq = conv_power_via_bell(x, args.k, args.upto)
    _write_sequence(out, seq)


def _cmd_conv_root(args, out):
    x = _load(args, args.upto if args.upto is not None else 10)
    upto = args.upto if args.upto is not None else x.stop
    res = conv_root(x, args.k, upto)
    _write_sequence(out, res.root, k=res.k, sign_pair=res.sign_pair)


def _cmd_invert(args, out):
    y = parse_sequence_file(args.input)
    upto = args.upto if args.upto is not None else y.stop - args.k + 1
    if upto < 1:
        raise DomainError(f"y window ending at {y.stop} recovers no terms for k={args.k}")
    x1 = parse_rational(args.x1) if args.x1 is not None else None
    fn = invert_bell_ordinary if args.flavor == "ord" else invert_bell_exponential
    _write_sequence(out, fn(y, args.k, x1, upto))


def _cmd_compound(args, out):
    p = parse_sequence_file(args.input)
    out.write(format_rational(compound_distribution(p, args.k, args.n)) + "\n")


def _cmd_table1(args, out):
    if args.layout == "grid":
        out.write(cost_model.table1_grid_csv(args.ns, args.ks))
    else:
        out.write(cost_model.table1_csv(args.ns, args.ks))


def _cmd_figure1(args, out):
    if args.layout == "wide":
        out.write(cost_model.figure1_wide_csv(args.k, args.n_max, args.n0s))
    else:
        out.write(cost_model.cells_to_csv(cost_model.figure1_data(args.k, args.n_max, args.n0s)))


def bench_rows(k_max: int, n_max: int, n0s):
    """Instrumented runs over ``2 <= k <= k_max``, ``k <= n <= n_max``.

    Yields ``(n, k, n0, algorithm, predicted, measured)``. The argument is
    ``x_i = i!`` past ``n0`` leading zeros; counts do not depend on values.
    """
    for k in range(2, k_max + 1):
        for n in range(k, n_max + 1):
            x = Sequence(1, [math.factorial(i) for i in range(1, n + 1)])
            for label, fn in (("91", bell_exp_alg91), ("92", bell_exp_alg92)):
                c = OpCounter()
                res = fn(x, n, k, counter=c)
                yield n, k, 0, label, res.cost.predicted, res.cost.measured
            for n0 in n0s:
                if n - k * n0 < k:
                    continue
                xz = Sequence(1, [0] * n0 + [math.factorial(i) for i in range(n0 + 1, n + 1)])
                c = OpCounter()
                res = bell_exp_genal(xz, n, k, counter=c)
                yield n, k, n0, "genal", res.cost.predicted, res.cost.measured


def _cmd_bench(args, out):
    import csv

    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "k", "n0", "algorithm", "predicted", "measured", "match"])
    bad = 0
    for row in bench_rows(args.k_max, args.n_max, args.n0s):
        ok = row[4] == row[5]
        bad += not ok
        writer.writerow([*row, "yes" if ok else "no"])
    if args.verify and bad:
        raise BellError(f"{bad} instrumented runs deviate from the cost polynomials",
                        code="COST_MISMATCH")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bellcalc", description="Exact partial Bell polynomials and convolution calculus.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bell", help="evaluate B_{n,k}(x) or its ordinary variant")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_input(p)
    p.add_argument("--flavor", choices=["exp", "ord"], default="exp")
    p.add_argument("--algorithm", choices=["auto", "91", "92", "genal", "recurrence"], default="auto")
    p.add_argument("--count", action="store_true", help="instrument and report operation counts")
    p.add_argument("--format", choices=["plain", "json"], default="plain")
    p.set_defaults(func=_cmd_bell)

    p = sub.add_parser("conv-power", help="k-th convolution power")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--method", choices=["bell", "direct"], default="bell")
    _add_input(p)
    p.set_defaults(func=_cmd_conv_power)

    p = sub.add_parser("conv-root", help="k-th convolution root")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--upto", type=int, default=None, help="default: end of the input window")
    _add_input(p)
    p.set_defaults(func=_cmd_conv_root)

    p = sub.add_parser("invert", help="recover x from y_n = B_{n,k}(x)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--in", dest="input", metavar="PATH", required=True)
    p.add_argument("--flavor", choices=["exp", "ord"], default="exp")
    p.add_argument("--x1", default=None, help="first term of x, as p/q")
    p.add_argument("--upto", type=int, default=None)
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("compound", help="P(S_k = n) for i.i.d. positive integer steps")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--in", dest="input", metavar="PATH", required=True)
    p.set_defaults(func=_cmd_compound)

    p = sub.add_parser("table1", help="savings of the factorized algorithm as CSV")
    p.add_argument("--ns", type=_int_list, default=list(cost_model.TABLE1_NS))
    p.add_argument("--ks", type=_int_list, default=list(cost_model.TABLE1_KS))
    p.add_argument("--layout", choices=["long", "grid"], default="long")
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("figure1", help="savings curves against n for several n0")
    p.add_argument("--k", type=int, default=50)
    p.add_argument("--n-max", type=int, default=2500)
    p.add_argument("--n0s", type=_int_list, default=list(range(6)))
    p.add_argument("--layout", choices=["long", "wide"], default="long")
    p.set_defaults(func=_cmd_figure1)

    p = sub.add_parser("bench", help="instrumented operation counts against the cost polynomials")
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--n0s", type=_int_list, default=[0, 1, 2, 3])
    p.add_argument("--verify", action="store_true", help="exit 1 on any deviation")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except ParseError as exc:
        _emit_error(exc.code, exc.message)
        return 2
    except BellError as exc:
        _emit_error(exc.code, exc.message)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``dopzero {eval,zeros,verify,sweep}``.

Exit codes: 0 success, 1 domain error or failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import scalar
from .errors import DopzeroError
from .hypgeo import PolySpec, as_krawtchouk, evaluate, krawtchouk, meixner
from .scalar import parse_rational
from .verify import SUITES, run_suite
from .zeros import (
    DEFAULT_TOL,
    METHODS,
    ZeroSet,
    gamma_grid,
    jacobi_zeros,
    localized,
    max_mesh,
    min_gap,
    sturm_sequence,
    zeros_of,
)

FAMILY_PARAMS = {"krawtchouk": ("p", "M"), "meixner": ("beta", "c")}
ZERO_COLUMNS = ["index", "zero", "bracket_lo", "bracket_hi", "lemma1_sign"]


def _rational(text: str) -> Fraction:
    return parse_rational(text)


def _add_spec_flags(parser: argparse.ArgumentParser, family_required: bool = True) -> None:
    parser.add_argument("--family", choices=sorted(FAMILY_PARAMS), required=family_required)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--beta", type=_rational)
    parser.add_argument("--c", type=_rational)
    parser.add_argument("--p", type=_rational)
    parser.add_argument("--M", type=_rational)


def _build_spec(parser: argparse.ArgumentParser, args, family: str, **override) -> PolySpec:
    values = {}
    for name in FAMILY_PARAMS[family]:
        v = override.get(name, getattr(args, name))
        if v is None:
            parser.error(f"--{name} is required for family {family}")
        values[name] = v
    if args.n < 0:
        parser.error("--n must be non-negative")
    if family == "krawtchouk":
        return krawtchouk(args.n, values["p"], values["M"])
    return meixner(args.n, values["beta"], values["c"])


def _fmt(v) -> str:
    return repr(scalar.to_real(v))


def cmd_eval(parser, args, out) -> int:
    spec = _build_spec(parser, args, args.family)
    value = evaluate(spec, args.x)
    print(scalar.format_rational(value) if args.exact else _fmt(value), file=out)
    return 0


def zero_rows(zs: ZeroSet) -> list[dict]:
    return [
        {
            "index": i,
            "zero": z.refined,
            "bracket_lo": scalar.to_real(z.bracket_lo),
            "bracket_hi": scalar.to_real(z.bracket_hi),
            "lemma1_sign": z.lemma1_product_sign,
        }
        for i, z in enumerate(zs.zeros, start=1)
    ]


def zeroset_json(zs: ZeroSet) -> dict:
    rows = zero_rows(zs)
    for row, z in zip(rows, zs.zeros):
        if zs.spec.exact and not isinstance(z.bracket_lo, float):
            row["bracket_lo_exact"] = scalar.format_rational(z.bracket_lo)
            row["bracket_hi_exact"] = scalar.format_rational(z.bracket_hi)
    checks = {
        "count": len(zs.zeros) == zs.spec.n,
        "localized": localized(zs),
        "distinct": min_gap(zs.values) > 0,
    }
    if zs.cross_check is not None:
        checks["cross_check"] = zs.cross_check
        checks["cross_check_max_diff"] = max(
            (abs(a - b) for a, b in zip(zs.values, zs.cross_check)), default=0.0
        )
    return {"spec": zs.spec.as_dict(), "method": zs.method, "zeros": rows, "checks": checks}


def _csv_writer(out, columns):
    writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    return writer


def cmd_zeros(parser, args, out) -> int:
    spec = _build_spec(parser, args, args.family)
    zs = zeros_of(spec, args.method, args.tol)
    if args.format == "json":
        json.dump(zeroset_json(zs), out, indent=2)
        out.write("\n")
        return 0
    writer = _csv_writer(out, ZERO_COLUMNS)
    for row in zero_rows(zs):
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return 0


def cmd_verify(parser, args, out) -> int:
    options = {}
    if args.n is not None:
        options["n"] = args.n
    if args.p is not None:
        options["p"] = args.p
    if args.N is not None:
        options["degrees"] = [args.N]
    if args.cases is not None:
        options["cases"] = args.cases
    for key, flag in (("start", "from_"), ("stop", "to"), ("step", "step")):
        v = getattr(args, flag)
        if v is not None:
            options[key] = v
    checks = run_suite(args.suite, seed=args.seed, **options)
    passed = all(c["passed"] for c in checks)
    report = {
        "suite": args.suite,
        "seed": args.seed,
        "passed": passed,
        "total": len(checks),
        "failed": sum(not c["passed"] for c in checks),
        "checks": checks,
    }
    json.dump(report, out, indent=2, default=str)
    out.write("\n")
    if not passed:
        for c in checks:
            if not c["passed"]:
                print(f"FAILED: {json.dumps(c, default=str)}", file=sys.stderr)
    return 0 if passed else 1


SWEEP_FAMILY = {"M": "krawtchouk", "p": "krawtchouk", "c": "meixner", "beta": "meixner"}


def sweep_record(spec: PolySpec) -> dict:
    """One sweep row: zeros by the Jacobi route plus the mesh variation count."""
    record = {"zeros": [], "variation_count": None, "in_bounds": False}
    try:
        kspec = as_krawtchouk(spec)
        if 0 < kspec.family.p < 1 and kspec.family.M > kspec.n - 1 \
                and scalar.ceil(kspec.family.M) <= max_mesh():
            record["variation_count"] = sturm_sequence(kspec).variations
    except DopzeroError:
        pass
    if not spec.in_regime:
        return record
    try:
        zs = jacobi_zeros(spec)
    except DopzeroError:
        return record
    record["zeros"] = zs.values
    record["in_bounds"] = len(zs.zeros) == spec.n and localized(zs) and min_gap(zs.values) > 0
    return record


def cmd_sweep(parser, args, out) -> int:
    family = args.family or SWEEP_FAMILY[args.param]
    if args.param not in FAMILY_PARAMS[family]:
        parser.error(f"--param {args.param} is not a parameter of family {family}")
    columns = ["parameter_value", "variation_count", "in_bounds"] + [
        f"zero_{i}" for i in range(1, args.n + 1)
    ]
    values = [] if args.from_ > args.to else gamma_grid(args.from_, args.to, args.step)
    buf = io.StringIO()
    writer = _csv_writer(buf, columns)
    for v in values:
        try:
            spec = _build_spec(parser, args, family, **{args.param: v})
        except DopzeroError:
            rec = {"zeros": [], "variation_count": None, "in_bounds": False}
        else:
            rec = sweep_record(spec)
        row = {
            "parameter_value": _fmt(v),
            "variation_count": "" if rec["variation_count"] is None else rec["variation_count"],
            "in_bounds": "true" if rec["in_bounds"] else "false",
        }
        for i, z in enumerate(rec["zeros"], start=1):
            row[f"zero_{i}"] = repr(z)
        writer.writerow(row)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dopzero",
        description="Certified real zeros of Krawtchouk and Meixner polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a polynomial at one point")
    _add_spec_flags(p_eval)
    p_eval.add_argument("--x", type=_rational, required=True)
    p_eval.add_argument("--exact", action="store_true", help="print the exact rational value")

    p_zeros = sub.add_parser("zeros", help="isolate and refine all zeros")
    _add_spec_flags(p_zeros)
    p_zeros.add_argument("--method", choices=METHODS, default="both")
    p_zeros.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_zeros.add_argument("--format", choices=("csv", "json"), default="csv")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--cases", type=int)
    p_verify.add_argument("--n", type=int)
    p_verify.add_argument("--p", type=_rational)
    p_verify.add_argument("--N", type=int)
    p_verify.add_argument("--from", dest="from_", type=_rational)
    p_verify.add_argument("--to", type=_rational)
    p_verify.add_argument("--step", type=_rational)

    p_sweep = sub.add_parser("sweep", help="trace zeros across a parameter range")
    _add_spec_flags(p_sweep, family_required=False)
    p_sweep.add_argument("--param", choices=sorted(SWEEP_FAMILY), required=True)
    p_sweep.add_argument("--from", dest="from_", type=_rational, required=True)
    p_sweep.add_argument("--to", type=_rational, required=True)
    p_sweep.add_argument("--step", type=_rational, required=True)
    p_sweep.add_argument("--out")

    return parser


COMMANDS = {"eval": cmd_eval, "zeros": cmd_zeros, "verify": cmd_verify, "sweep": cmd_sweep}


VALUE_FLAGS = {"--beta", "--c", "--p", "--M", "--x", "--from", "--to", "--step"}


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Join ``--c -2/3`` into ``--c=-2/3`` so argparse does not read a flag."""
    out = []
    for token in argv:
        if out and out[-1] in VALUE_FLAGS and token.startswith("-"):
            try:
                parse_rational(token)
            except ValueError:
                pass
            else:
                out[-1] = f"{out[-1]}={token}"
                continue
        out.append(token)
    return out


def main(argv=None, out=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    out = out or sys.stdout
    try:
        return COMMANDS[args.command](parser, args, out)
    except DopzeroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``heisosc <command> [flags]``.

Every command writes a deterministic JSON report (or CSV for ``spectrum``)
to stdout or to ``--out``. ``verify`` exits with status 1 when a check fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys

from . import eigensystem, group, kernels, verify
from .errors import HeisoscError
from .quadform import Lambda
from .report import RunReport, dumps, grid_payload


def _floats(count: int):
    def parse(text: str):
        try:
            values = tuple(float(v) for v in text.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}") from None
        if len(values) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}")
        return values

    return parse


def _mode(text: str):
    try:
        p, q = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a mode 'm_plus,m_minus', got {text!r}") from None
    if p < 0 or q < 0:
        raise argparse.ArgumentTypeError("mode indices must be non-negative")
    return p, q


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _add_lambda(p: argparse.ArgumentParser, lambda1_default: float = 0.0):
    p.add_argument("--lambda1", type=float, default=lambda1_default)
    p.add_argument("--lambda2", type=float, default=1.0, help="must be non-zero")
    p.add_argument("--out", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heisosc", description="Spectral computations for the Heisenberg oscillator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="lowest eigenvalues nu_(lambda, m)")
    _add_lambda(p)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("eigenfunction", help="an eigenfunction sampled on a square grid")
    _add_lambda(p)
    p.add_argument("--mode", type=_mode, default=(0, 0), help="m_plus,m_minus")
    p.add_argument("--half-width", type=_positive, default=6.0)
    p.add_argument("--spacing", type=_positive, default=0.25)

    p = sub.add_parser("heat-kernel", help="heat kernels kappa and Q at one pair of points")
    _add_lambda(p)
    p.add_argument("--t", type=_positive, required=True)
    p.add_argument("--at", type=_floats(4), default=(0.0, 0.0, 0.0, 0.0), help="u1,u2,v1,v2")

    p = sub.add_parser("classify-orbit", help="coadjoint orbit representative of a linear form")
    p.add_argument("--omega", type=_floats(4), required=True)
    p.add_argument("--lambda", dest="lam", type=_floats(2), required=True)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run self-check suites")
    _add_lambda(p, lambda1_default=1.0)
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    return parser


def _lambda(parser, args) -> Lambda:
    if args.lambda2 == 0 or not math.isfinite(args.lambda2) or not math.isfinite(args.lambda1):
        parser.error("--lambda2 must be non-zero (lambda2 != 0) and both components finite")
    return Lambda(args.lambda1, args.lambda2)


def cmd_spectrum(lam: Lambda, count: int, fmt: str) -> str:
    pairs = eigensystem.enumerate_spectrum(lam, count)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["m_plus", "m_minus", "nu"])
        for pair in pairs:
            writer.writerow([pair.mode.m_plus, pair.mode.m_minus, format(pair.eigenvalue, ".17g")])
        return buf.getvalue()
    rows = [{"m_plus": p.mode.m_plus, "m_minus": p.mode.m_minus, "nu": p.eigenvalue} for p in pairs]
    report = RunReport("spectrum", {"lambda1": lam.lambda1, "lambda2": lam.lambda2, "count": count}, rows)
    return dumps(report, indent=2) + "\n"


def cmd_eigenfunction(lam: Lambda, mode, half_width: float, spacing: float) -> str:
    f = eigensystem.eigenfunction_grid(lam, mode, (half_width, half_width), (spacing, spacing))
    params = {
        "lambda1": lam.lambda1, "lambda2": lam.lambda2, "mode": list(mode),
        "half_width": half_width, "spacing": spacing,
    }
    results = {"eigenvalue": eigensystem.eigenvalue(lam, mode), "grid": grid_payload(f)}
    return dumps(RunReport("eigenfunction", params, results), indent=2) + "\n"


def cmd_heat_kernel(lam: Lambda, t: float, at) -> str:
    u, v = at[:2], at[2:]
    results = {
        "kappa": kernels.kernel_kappa(lam, t, u, v),
        "q_rho": kernels.kernel_q_rho(lam, t, u, v),
    }
    params = {"lambda1": lam.lambda1, "lambda2": lam.lambda2, "t": t, "at": list(at)}
    return dumps(RunReport("heat-kernel", params, results), indent=2) + "\n"


def cmd_classify_orbit(omega, lam) -> str:
    rep = group.classify_orbit(group.LinearForm(omega, lam))
    results = {"kind": rep.kind.value, "omega": list(rep.form.omega), "lambda": list(rep.form.lam)}
    return dumps(RunReport("classify-orbit", {"omega": list(omega), "lambda": list(lam)}, results), indent=2) + "\n"


def cmd_verify(lam: Lambda, suite: str) -> tuple[str, bool]:
    names = verify.SUITES if suite == "all" else (suite,)
    checks, details = [], {}
    for name in names:
        extra, suite_checks = verify.run_suite_detailed(name, lam)
        checks.extend(suite_checks)
        if extra:
            details[name] = extra
    report = RunReport(
        "verify",
        {"lambda1": lam.lambda1, "lambda2": lam.lambda2, "suite": suite},
        {"suites": list(names), "passed": sum(c.passed for c in checks), "total": len(checks), "details": details},
        checks,
    )
    return dumps(report, indent=2) + "\n", report.ok


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ok = True
    try:
        if args.command == "classify-orbit":
            text = cmd_classify_orbit(args.omega, args.lam)
        else:
            lam = _lambda(parser, args)
            if args.command == "spectrum":
                if not 1 <= args.count <= eigensystem.MAX_COUNT:
                    parser.error(f"--count must lie in [1, {eigensystem.MAX_COUNT}]")
                text = cmd_spectrum(lam, args.count, args.format)
            elif args.command == "eigenfunction":
                text = cmd_eigenfunction(lam, args.mode, args.half_width, args.spacing)
            elif args.command == "heat-kernel":
                text = cmd_heat_kernel(lam, args.t, args.at)
            else:
                text, ok = cmd_verify(lam, args.suite)
    except (HeisoscError, ValueError) as exc:
        print(f"heisosc: error: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``spinlm <command> [options]``.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage or input error,
3 resource budget exceeded (a partial report is still written).
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace
from typing import Callable, Sequence

from . import checks
from .config import Budget
from .errors import BudgetExceeded, CharacteristicError, InvalidInput, Unsupported
from .polyalg.fields import parse_field

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def parse_lambda(text: str) -> tuple[int, ...]:
    raw = text.strip().strip("()[]")
    if not raw:
        return ()
    try:
        parts = tuple(int(x) for x in raw.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}") from None
    if any(x <= 0 for x in parts) or list(parts) != sorted(parts, reverse=True):
        raise argparse.ArgumentTypeError(f"{text!r} is not a partition")
    return parts


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=2, help="size of the generic matrix")
    common.add_argument("--n", type=int, default=2, help="rank for the chart (V of dimension 2n)")
    common.add_argument("--i", type=int, default=1, help="parahoric index for the chart")
    common.add_argument("--variant", choices=("naive", "plus", "minus"), default="naive")
    common.add_argument("--form", choices=("J", "H"), default="J")
    common.add_argument("--field", default="Q", help="Q or Fp:<p> with p an odd prime")
    common.add_argument("--max-degree", type=int, default=3)
    common.add_argument("--lambda", dest="lam", type=parse_lambda, default=None, help="partition, e.g. 2,1")
    common.add_argument("--max-size", type=int, default=4, help="largest |lambda| for tables")
    common.add_argument("--count", type=_positive, default=100, help="random instances per identity")
    common.add_argument("--budget-monomials", type=_positive, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="path of the JSON report")
    common.add_argument("--csv", default=None, help="path of a CSV table (tableaux, repn)")
    common.add_argument("--profile", choices=checks.PROFILES, default="smoke")

    p = argparse.ArgumentParser(prog="spinlm", description="Exact checks for spin local models and orthogonal determinantal rings.")
    sub = p.add_subparsers(dest="command", required=True)
    t = sub.add_parser("tableaux", parents=[common], help="tableau counts")
    t.add_argument("action", choices=("count",))
    r = sub.add_parser("ring", parents=[common], help="graded dimensions and the standard basis")
    r.add_argument("action", choices=("dims", "verify"))
    sub.add_parser("repn", parents=[common], help="O(N) representation dimensions")
    sub.add_parser("chart", parents=[common], help="affine chart derivations")
    sub.add_parser("identities", parents=[common], help="randomized minor identities")
    sub.add_parser("verify-all", parents=[common], help="run a whole profile")
    return p


def _budget(args: argparse.Namespace) -> Budget:
    b = Budget.default()
    if args.budget_monomials is not None:
        b = replace(b, max_monomials=args.budget_monomials)
    return replace(b, max_degree=max(b.max_degree, args.max_degree), max_N=max(b.max_N, args.N))


def _config(args: argparse.Namespace, budget: Budget) -> dict:
    keys = {
        "tableaux": ("N", "lam", "max_size"),
        "ring": ("N", "variant", "form", "field", "max_degree"),
        "repn": ("N", "lam", "max_size"),
        "chart": ("n", "i", "variant", "field"),
        "identities": ("field", "count", "max_size", "seed"),
        "verify-all": ("profile", "seed"),
    }[args.command]
    cfg = {"command": args.command, "budget_monomials": budget.max_monomials}
    if hasattr(args, "action"):
        cfg["action"] = args.action
    cfg.update({k if k != "lam" else "lambda": getattr(args, k) for k in keys})
    return cfg


def _steps(args: argparse.Namespace, budget: Budget) -> list[Callable[[], list]]:
    F = parse_field(args.field)
    cmd = args.command
    if cmd == "tableaux":
        return [lambda: checks.suite_tableaux(args.N, args.lam, args.max_size)]
    if cmd == "ring":
        if args.action == "dims":
            return [lambda: checks.suite_ring_dims(args.N, args.variant, F, args.max_degree, args.form, budget)]
        return [lambda: checks.suite_standard_basis([(args.N, args.variant, args.max_degree)], [F], budget)]
    if cmd == "repn":
        return [lambda: checks.suite_repn((args.N,), args.max_size, args.lam, budget)]
    if cmd == "chart":
        variants = ("naive", "plus", "minus")
        return [lambda: checks.suite_chart([(args.n, args.i)], variants, F)]
    if cmd == "identities":
        return [lambda: checks.suite_identities([F], args.count, args.max_size, args.seed)]
    return checks.profile_steps(args.profile, args.seed, budget)


def _summary(rec: checks.Record) -> str:
    tag = "PASS" if rec.passed else ("FINDING" if rec.finding else "FAIL")
    params = " ".join(f"{k}={v}" for k, v in rec.params.items())
    actual = rec.actual
    if rec.name == "ring_dims":
        actual = "dims " + ",".join(map(str, actual))
    elif rec.name == "tableaux_count":
        actual = " ".join(f"{k}={actual[k]}" for k in ("count_GL", "count_ON", "count_SON"))
    return f"{tag:7s} {rec.name} {params} -> {actual}"


def _write_csv(path: str, report: checks.Report) -> None:
    rows = [r for r in report.records if r.name in ("tableaux_count", "o_lambda_dim")]
    if not rows:
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if rows[0].name == "tableaux_count":
            w.writerow(["N", "lambda", "count_GL", "count_ON", "count_SON"])
            for r in rows:
                a = r.actual
                w.writerow([a["N"], " ".join(map(str, a["lambda"])), a["count_GL"], a["count_ON"],
                            "" if a["count_SON"] is None else a["count_SON"]])
        else:
            w.writerow(["N", "lambda", "dim_M", "dim_O", "count_ON_standard", "match"])
            for r in rows:
                w.writerow([r.params["N"], " ".join(map(str, r.params["lambda"])), r.actual["dim_M"],
                            r.actual["dim_O"], r.expected["dim_O"], r.passed])


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        budget = _budget(args)
        report = checks.Report(_config(args, budget))
        steps = _steps(args, budget)
    except (InvalidInput, Unsupported, CharacteristicError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code = None
    for step in steps:
        try:
            report.extend(step())
        except BudgetExceeded as exc:
            report.error = f"budget exceeded: {exc}"
            code = EXIT_BUDGET
            break
        except (InvalidInput, Unsupported, CharacteristicError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    for rec in report.records:
        print(_summary(rec))
    if report.error:
        print(report.error, file=sys.stderr)
    print(f"overall: {'PASS' if report.passed else 'FAIL'}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json())
    if args.csv:
        _write_csv(args.csv, report)
    if code is not None:
        return code
    return EXIT_OK if report.passed else EXIT_FAIL

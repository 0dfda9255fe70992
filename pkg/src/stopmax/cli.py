"""Command-line front end: ``stopmax <command> [flags]``.

Exit codes: 0 success, 2 usage or input error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from decimal import Decimal, InvalidOperation

from .bound import gap_demo
from .dist import DistSpecError, parse_dist_spec
from .game_alpha import GameSpec, SolverError, certainty_report, solve, uniform_n2_closed_form
from .game_max import ConvergenceError, decision_number, gm_policy, gm_value
from .sim import simulate, simulate_paired

EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


def _round(obj, precision):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return round(obj, precision)
    if isinstance(obj, dict):
        return {k: _round(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v, precision) for v in obj]
    return obj


def _fmt(value, precision):
    if value is None:
        return ""
    if isinstance(value, float):
        return "" if not math.isfinite(value) else f"{value:.{precision}f}"
    return str(value)


def _emit(payload: dict, rows: list[dict], args, out) -> None:
    if args.out == "json":
        json.dump(_round(payload, args.precision), out, indent=2)
        out.write("\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(rows[0].keys())
    for row in rows:
        writer.writerow(_fmt(v, args.precision) for v in row.values())
    out.write(buf.getvalue())


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("STOPMAX_SEED")
    if env is None:
        return 0
    try:
        seed = int(env)
    except ValueError:
        raise UsageError(f"STOPMAX_SEED must be an integer, got {env!r}") from None
    if seed < 0:
        raise UsageError("STOPMAX_SEED must be nonnegative")
    return seed


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _alpha_grid(text: str) -> list[float]:
    try:
        start, stop, step = (Decimal(p) for p in text.split(":"))
    except (ValueError, InvalidOperation):
        raise argparse.ArgumentTypeError(f"expected START:STOP:STEP, got {text!r}") from None
    if step <= 0 or not (0 < start <= stop < 1):
        raise argparse.ArgumentTypeError("need 0 < START <= STOP < 1 and STEP > 0")
    out, a = [], start
    while a <= stop:
        out.append(float(a))
        a += step
    return out


def _spec(args) -> GameSpec:
    try:
        return GameSpec(args.n, args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _intervals(values, mask) -> list[list[float]]:
    out, start = [], None
    for v, m in zip(values, mask):
        if m and start is None:
            start = v
        if not m and start is not None:
            out.append([float(start), float(prev)])
            start = None
        prev = v
    if start is not None:
        out.append([float(start), float(prev)])
    return out


def cmd_gm_table(args, out):
    rows = [{"n": n, "value": gm_value(n, args.grid), "decision_number": decision_number(n - 1)}
            for n in range(1, args.max_n + 1)]
    _emit({"command": "gm-table", "grid": args.grid, "rows": rows}, rows, args, out)


def cmd_solve(args, out):
    d = parse_dist_spec(args.dist)
    spec = _spec(args)
    sol = solve(d, spec, args.grid)
    tables = None
    if args.tables:
        tables = {"state_grid": sol.state_grid.tolist(),
                  "stop_value": sol.stop_value.tolist(),
                  "continue_value": sol.continue_value.tolist()}
    payload = {
        "command": "solve", "dist": args.dist, "n": spec.n, "alpha": spec.alpha,
        "method": "exact" if sol.exact else "grid", "grid": None if sol.exact else args.grid,
        "optimal_value": sol.optimal_value, "threshold": sol.threshold,
        "stop_intervals": _intervals(sol.state_grid, sol.stop_region(1)), "tables": tables,
    }
    row = {k: payload[k] for k in ("dist", "n", "alpha", "method", "optimal_value", "threshold")}
    _emit(payload, [row], args, out)


def _is_unit_uniform(d) -> bool:
    return getattr(d, "a", None) == 0.0 and getattr(d, "b", None) == 1.0


def cmd_sweep(args, out):
    d = parse_dist_spec(args.dist)
    closed = _is_unit_uniform(d) and args.n == 2
    rows = []
    for a in args.alpha_grid:
        value = solve(d, GameSpec(args.n, a), args.grid).optimal_value
        rows.append({"alpha": a, "dp_value": value,
                     "closed_form": uniform_n2_closed_form(a)[1] if closed else None})
    _emit({"command": "sweep", "dist": args.dist, "n": args.n, "grid": args.grid, "rows": rows},
          rows, args, out)


def cmd_simulate(args, out):
    d = parse_dist_spec(args.dist)
    seed = _seed(args)
    policy_kind = args.policy or ("optimal" if args.alpha is not None else "gm")
    game = args.game or ("both" if args.alpha is not None else "max")
    if (policy_kind == "optimal" or game != "max") and args.alpha is None:
        raise UsageError("--alpha is required for the optimal policy and for the alpha game")
    if policy_kind == "optimal":
        policy = solve(d, _spec(args), args.grid).policy()
    else:
        policy = gm_policy(d, args.n)
    violations = None
    if game == "both":
        r_max, r_alpha, violations = simulate_paired(d, policy, args.alpha, args.samples, seed, args.threads)
        reports = [r_max, r_alpha]
    else:
        reports = [simulate(d, policy, game, args.alpha, args.samples, seed, args.threads)]
    payload = {"command": "simulate", "dist": args.dist, "n": args.n, "policy": policy_kind,
               "seed": seed, "samples": args.samples, "reports": [r.to_dict() for r in reports],
               "dominance_violations": violations}
    rows = [dict(r.to_dict(), policy=policy_kind, dominance_violations=violations) for r in reports]
    _emit(payload, rows, args, out)


def cmd_certainty(args, out):
    d = parse_dist_spec(args.dist)
    if not 0 < args.alpha < 1:
        raise UsageError(f"alpha must lie in (0, 1), got {args.alpha}")
    rep = certainty_report(d, args.alpha)
    payload = {"command": "certainty", "dist": args.dist, "alpha": args.alpha, **rep}
    row = {k: payload[k] for k in ("dist", "alpha", "certain", "condition", "interval_mass")}
    lo, hi = rep["interval"] or (None, None)
    row.update(interval_lo=lo, interval_hi=hi)
    _emit(payload, [row], args, out)


def cmd_bound_demo(args, out):
    if not 0 < args.delta < 1:
        raise UsageError(f"delta must lie in (0, 1), got {args.delta}")
    _spec(args)
    rep = gap_demo(args.n, args.alpha, args.delta, args.samples, _seed(args), args.grid, args.threads)
    payload = {"command": "bound-demo", **rep.to_dict()}
    _emit(payload, [rep.to_dict()], args, out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=["json", "csv"], default="json")
    common.add_argument("--precision", type=_nonneg, default=6, help="decimal places in output")
    common.add_argument("--grid", type=_positive, default=4096)

    stochastic = argparse.ArgumentParser(add_help=False)
    stochastic.add_argument("--samples", type=_positive, default=10**6)
    stochastic.add_argument("--seed", type=_nonneg, default=None, help="default: $STOPMAX_SEED or 0")
    stochastic.add_argument("--threads", type=_positive, default=1, help="worker cap; results do not depend on it")

    parser = argparse.ArgumentParser(prog="stopmax", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gm-table", parents=[common], help="Game Max values and decision numbers")
    p.add_argument("--max-n", type=_positive, default=10)
    p.set_defaults(func=cmd_gm_table)

    p = sub.add_parser("solve", parents=[common], help="optimal alpha-game value and first-step rule")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--tables", action="store_true", help="include the full DP tables")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", parents=[common], help="alpha-game value over a grid of alpha")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--alpha-grid", type=_alpha_grid, default=_alpha_grid("0.1:0.9:0.1"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", parents=[common, stochastic], help="Monte Carlo win probabilities")
    p.add_argument("--dist", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--policy", choices=["gm", "optimal"], default=None)
    p.add_argument("--game", choices=["max", "alpha", "both"], default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("certainty", parents=[common], help="can the alpha game be won surely?")
    p.add_argument("--dist", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.set_defaults(func=cmd_certainty)

    p = sub.add_parser("bound-demo", parents=[common, stochastic], help="gap between the games on X^{k,eps}")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(func=cmd_bound_demo)
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
    except (UsageError, DistSpecError) as exc:
        print(f"stopmax: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, ConvergenceError, FloatingPointError) as exc:
        print(f"stopmax: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()

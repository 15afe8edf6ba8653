"""Command-line surface: evaluator sweeps, stochastic measurements,
base optimization, count ceilings, curve data, and the claim catalog.

All output is diff-stable: fixed column order per subcommand, '.'
decimal separator, 9 significant digits, '\\n' newlines, and seeded
randomness, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

from .claims import ClaimConfig, claim_ids, run_claim_catalog
from .core import DEFAULT_HORIZON, CostModel
from .numopt import beta_r_star, figure1_curve
from .search_eval import FIRST_VISIT, competitive_ratio, rth_visit, turn_bound, turn_count
from .sched_eval import (
    acceleration_ratio,
    aggregate_interruptible,
    contract_bound,
    contract_count,
    longest_completed,
    preemption_bound,
    preemption_count,
    r_times_completed,
    rth_largest_completed,
)
from .stochastic import (
    DetectionModel,
    DirectionRule,
    RandomizedScheduleParams,
    beta_r_closed_form,
    mc_randomized_schedule_detail,
    probabilistic_competitive_ratio,
    standard_t_grid,
    tuned_search_base,
)
from .strategies import (
    make_exponential_schedule,
    make_exponential_search,
    make_geometric_rr_schedule,
    make_geometric_search,
    make_nm_search,
    make_pseudo_exponential_schedule,
    optimal_base_schedule,
    optimal_base_search,
)

DEFAULT_TRIALS = 100_000


def _fmt(value) -> str:
    """Render a cell: 9 significant digits, '.' decimal, no grouping."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".9g")
    return str(value)


def _json_cell(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        rendered = _fmt(value)
        if rendered in ("inf", "-inf", "nan"):
            return json.dumps(rendered)
        return rendered
    return json.dumps(value)


def _render(rows: list[dict], header: list[str], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(row[name]) for name in header))
        return "\n".join(lines) + "\n"
    items = []
    for row in rows:
        fields = ", ".join(
            f"{json.dumps(name)}: {_json_cell(row[name])}" for name in header
        )
        items.append("  {" + fields + "}")
    return "[\n" + ",\n".join(items) + "\n]\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _witness_parts(witness) -> tuple[Optional[int], Optional[float]]:
    if witness is None:
        return None, None
    _, ray, point = witness
    return ray, point


def _cmd_search_eval(args) -> tuple[list[str], list[dict], int]:
    natural = CostModel.EXPANDING if args.strategy == "geometric" else CostModel.STANDARD
    if args.cost_model is not None:
        requested = CostModel(args.cost_model)
        if requested is not natural:
            raise ValueError(
                f"strategy {args.strategy!r} uses the "
                f"{natural.value} cost model, not {requested.value}"
            )
    if args.b is None:
        b = optimal_base_search(args.m) if args.strategy != "geometric" else 2.0
    else:
        b = args.b
    if args.strategy == "exponential":
        plan = make_exponential_search(args.m, b)
    elif args.strategy == "nm":
        plan = make_nm_search(args.m, b, args.r)
    else:
        plan = make_geometric_search(args.m, b)
    report = competitive_ratio(plan, rth_visit(args.r), args.horizon)
    ray, point = _witness_parts(report.witness)
    header = [
        "strategy",
        "m",
        "b",
        "r",
        "cost_model",
        "horizon",
        "finite_sup",
        "limit_sup",
        "asymptotic",
        "witness_ray",
        "witness_distance",
    ]
    rows = [
        {
            "strategy": args.strategy,
            "m": args.m,
            "b": b,
            "r": args.r,
            "cost_model": natural.value,
            "horizon": args.horizon,
            "finite_sup": report.finite_sup,
            "limit_sup": report.limit_sup,
            "asymptotic": report.asymptotic,
            "witness_ray": ray,
            "witness_distance": point,
        }
    ]
    return header, rows, 0


_SEMANTICS_FLAGS = ("longest", "r-completed", "rth-largest", "aggregate")


def _cmd_sched_eval(args) -> tuple[list[str], list[dict], int]:
    if args.b is None:
        b = optimal_base_schedule(args.n) if args.strategy != "geometric-rr" else 2.0
    else:
        b = args.b
    if args.strategy == "exponential":
        plan = make_exponential_schedule(args.n, b)
    elif args.strategy == "pseudo":
        plan = make_pseudo_exponential_schedule(args.n, b, args.r)
    else:
        plan = make_geometric_rr_schedule(args.n, b)
    if args.semantics == "longest":
        semantics = longest_completed()
    elif args.semantics == "r-completed":
        semantics = r_times_completed(args.r)
    elif args.semantics == "rth-largest":
        semantics = rth_largest_completed(args.r)
    else:
        semantics = aggregate_interruptible()
    report = acceleration_ratio(plan, semantics, args.horizon)
    header = [
        "strategy",
        "n",
        "b",
        "r",
        "semantics",
        "horizon",
        "finite_sup",
        "limit_sup",
        "asymptotic",
        "witness_time",
    ]
    rows = [
        {
            "strategy": args.strategy,
            "n": args.n,
            "b": b,
            "r": args.r,
            "semantics": args.semantics,
            "horizon": args.horizon,
            "finite_sup": report.finite_sup,
            "limit_sup": report.limit_sup,
            "asymptotic": report.asymptotic,
            "witness_time": report.witness,
        }
    ]
    return header, rows, 0


def _cmd_prob_search(args) -> tuple[list[str], list[dict], int]:
    direction = (
        DirectionRule.OUTWARD_ONLY
        if args.direction == "outward-only"
        else DirectionRule.BOTH_DIRECTIONS
    )
    b = args.b if args.b is not None else tuned_search_base(args.m, args.p)
    model = DetectionModel(args.p, direction)
    plan = make_exponential_search(args.m, b)
    report = probabilistic_competitive_ratio(plan, model, args.horizon)
    header = [
        "m",
        "p",
        "b",
        "direction",
        "horizon",
        "finite_sup",
        "limit_sup",
        "asymptotic",
        "lower_bound",
        "upper_bound",
    ]
    rows = [
        {
            "m": args.m,
            "p": args.p,
            "b": b,
            "direction": args.direction,
            "horizon": args.horizon,
            "finite_sup": report.finite_sup,
            "limit_sup": report.limit_sup,
            "asymptotic": report.asymptotic,
            "lower_bound": args.m / (2.0 * args.p),
            "upper_bound": 1.0 + 8.0 * args.m / (args.p * args.p),
        }
    ]
    return header, rows, 0


def _cmd_rand_sched(args) -> tuple[list[str], list[dict], int]:
    params = RandomizedScheduleParams(
        n=args.n, b=args.b, t_grid=standard_t_grid(args.n, args.b)
    )
    detail = mc_randomized_schedule_detail(params, args.trials, args.seed)
    reference = beta_r_closed_form(args.n, args.b)
    header = ["n", "b", "k", "delta", "t", "d_mean", "d_stderr", "ratio", "beta_r"]
    rows = [
        {
            "n": args.n,
            "b": args.b,
            "k": row["k"],
            "delta": row["delta"],
            "t": row["t"],
            "d_mean": row["d_mean"],
            "d_stderr": row["d_stderr"],
            "ratio": row["ratio"],
            "beta_r": reference,
        }
        for row in detail
    ]
    return header, rows, 0


def _cmd_opt_base(args) -> tuple[list[str], list[dict], int]:
    if args.target == "beta-r":
        b_star, value = beta_r_star(args.n)
    elif args.target == "search":
        b_star = optimal_base_search(args.n)
        value = competitive_ratio(
            make_exponential_search(args.n, b_star), FIRST_VISIT, DEFAULT_HORIZON
        ).limit_sup
    else:
        b_star = optimal_base_schedule(args.n)
        value = acceleration_ratio(
            make_exponential_schedule(args.n, b_star),
            longest_completed(),
            DEFAULT_HORIZON,
        ).limit_sup
    header = ["target", "n", "b_star", "value"]
    rows = [{"target": args.target, "n": args.n, "b_star": b_star, "value": value}]
    return header, rows, 0


def _cmd_tradeoff(args) -> tuple[list[str], list[dict], int]:
    times = args.t if args.t else [5.0]
    rows = []
    if args.model == "preemptive":
        plan = make_geometric_rr_schedule(args.n, args.b)
        size = args.n
        entries = [
            (t, preemption_count(plan, t), preemption_bound(args.n, args.b, t))
            for t in times
        ]
    elif args.model == "contracts":
        plan = make_exponential_schedule(args.n, args.b)
        size = args.n
        entries = [
            (t, contract_count(plan, t), contract_bound(args.b, t)) for t in times
        ]
    elif args.model == "turns":
        plan = make_exponential_search(args.m, args.b)
        size = args.m
        entries = [
            (
                t,
                turn_count(plan, t, one_way=True),
                turn_bound(args.m, args.b, t, CostModel.STANDARD),
            )
            for t in times
        ]
    else:
        plan = make_geometric_search(args.m, args.b)
        size = args.m
        entries = [
            (t, turn_count(plan, t), turn_bound(args.m, args.b, t, CostModel.EXPANDING))
            for t in times
        ]
    for t, count, bound in entries:
        rows.append(
            {
                "model": args.model,
                "size": size,
                "b": args.b,
                "t": t,
                "count": count,
                "bound": bound,
                "holds": count <= bound + 1e-9,
            }
        )
    header = ["model", "size", "b", "t", "count", "bound", "holds"]
    return header, rows, 0


def _cmd_curve_fig1(args) -> tuple[list[str], list[dict], int]:
    header = ["n", "beta_star", "beta_r_star", "b_star", "ratio"]
    rows = [
        {
            "n": n,
            "beta_star": beta_star,
            "beta_r_star": value,
            "b_star": b_star,
            "ratio": ratio,
        }
        for n, beta_star, value, b_star, ratio in figure1_curve(args.n_max)
    ]
    return header, rows, 0


def _cmd_claims(args) -> tuple[list[str], list[dict], int]:
    config = ClaimConfig(
        subset=args.subset,
        horizon=args.horizon,
        trials=args.trials,
        seed=args.seed,
    )
    checks = run_claim_catalog(config)
    if not checks:
        raise ValueError(
            f"subset {args.subset!r} selects no claims; known ids: "
            + ", ".join(claim_ids())
        )
    header = ["claim_id", "paper_value", "measured", "relation", "verdict", "gap"]
    rows = [
        {
            "claim_id": check.claim_id,
            "paper_value": check.paper_value,
            "measured": check.measured,
            "relation": check.relation.value,
            "verdict": "Holds" if check.holds else "Violated",
            "gap": check.gap,
        }
        for check in checks
    ]
    exit_code = 0
    if args.strict and any(
        not check.holds and not check.informational for check in checks
    ):
        exit_code = 1
    return header, rows, exit_code


def _add_common_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", default=None, help="write output to this file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raysched",
        description=(
            "Verification workbench for multi-ray target search and "
            "contract-algorithm scheduling"
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("search-eval", help="worst-case search ratio sweep")
    sub.add_argument("--strategy", choices=("exponential", "nm", "geometric"),
                     default="exponential")
    sub.add_argument("--m", type=int, required=True, help="number of rays")
    sub.add_argument("--b", type=float, default=None,
                     help="exploration base (default: the strategy's optimum)")
    sub.add_argument("--r", type=int, default=1,
                     help="required passes over the target (and sweeps per "
                          "excursion for the nm strategy)")
    sub.add_argument("--cost-model", choices=("standard", "expanding"),
                     default=None, dest="cost_model")
    sub.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    _add_common_output_flags(sub)
    sub.set_defaults(handler=_cmd_search_eval)

    sub = subs.add_parser("sched-eval", help="worst-case schedule ratio sweep")
    sub.add_argument("--strategy", choices=("exponential", "pseudo", "geometric-rr"),
                     default="exponential")
    sub.add_argument("--n", type=int, required=True, help="number of problems")
    sub.add_argument("--b", type=float, default=None,
                     help="length base (default: the strategy's optimum)")
    sub.add_argument("--r", type=int, default=1,
                     help="required repeats / rank for the chosen semantics "
                          "(and repeats per length for the pseudo strategy)")
    sub.add_argument("--semantics", choices=_SEMANTICS_FLAGS, default="longest")
    sub.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    _add_common_output_flags(sub)
    sub.set_defaults(handler=_cmd_sched_eval)

    sub = subs.add_parser("prob-search", help="expected-cost search ratio")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--p", type=float, required=True,
                     help="per-pass detection probability")
    sub.add_argument("--b", type=float, default=None,
                     help="exploration base (default: tuned for p)")
    sub.add_argument("--direction", choices=("both", "outward-only"),
                     default="both")
    sub.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    _add_common_output_flags(sub)
    sub.set_defaults(handler=_cmd_prob_search)

    sub = subs.add_parser("rand-sched", help="randomized schedule Monte Carlo")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--b", type=float, required=True)
    sub.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    sub.add_argument("--seed", type=int, default=0)
    _add_common_output_flags(sub)
    sub.set_defaults(handler=_cmd_rand_sched)

    sub = subs.add_parser("opt-base", help="best base for a strategy family")
    sub.add_argument("--target", choices=("beta-r", "search", "sched"),
                     required=True)
    sub.add_argument("--n", type=int, required=True,
                     help="problem count (ray count for --target search)")
    _add_common_output_flags(sub)
    sub.set_defaults(handler=_cmd_opt_base)

    sub = subs.add_parser("tradeoff", help="count vs ceiling at query times")
    sub.add_argument("--model",
                     choices=("preemptive", "contracts", "turns",
                              "turns-expanding"),
                     required=True)
    sub.add_argument("--n", type=int, default=1,
                     help="problem count (preemptive, contracts)")
    sub.add_argument("--m", type=int, default=2,
                     help="ray count (turns, turns-expanding)")
    sub.add_argument("--b", type=float, default=2.0)
    sub.add_argument("--t", type=float, action="append", default=None,
                     help="query time or distance budget (repeatable)")
    _add_common_output_flags(sub)
    sub.set_defaults(handler=_cmd_tradeoff)

    sub = subs.add_parser("curve-fig1", help="ratio curve data")
    sub.add_argument("--n-max", type=int, required=True, dest="n_max")
    _add_common_output_flags(sub)
    sub.set_defaults(handler=_cmd_curve_fig1)

    sub = subs.add_parser("claims", help="run the claim catalog")
    sub.add_argument("--subset", default="all",
                     help='"all", "asserted", "informational", or '
                          "comma-separated id prefixes")
    sub.add_argument("--strict", action="store_true",
                     help="exit 1 if any asserted claim is violated")
    sub.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    sub.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    sub.add_argument("--seed", type=int, default=0)
    _add_common_output_flags(sub)
    sub.set_defaults(handler=_cmd_claims)

    return parser


def console_main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        header, rows, exit_code = args.handler(args)
        _emit(_render(rows, header, args.format), args.out)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return exit_code


def main() -> None:
    sys.exit(console_main())


if __name__ == "__main__":
    main()

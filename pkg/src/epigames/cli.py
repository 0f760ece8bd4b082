"""Command-line interface: scenario ingestion, dispatch, report emission.

Exit codes: 0 success, 1 scenario/usage failure, 2 domain error from a
computation, 3 analytic/oracle mismatch under --verify.  Reports go to the
--out target (default stdout); diagnostics go to stderr.  Output is
byte-identical across runs for identical inputs and flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, replace

from . import oracle
from .distancing import (
    Decision,
    GroupMeeting,
    curve_series,
    distancing_utility,
    extended_go_decision,
    group_infection_probability,
    optimal_meeting,
    stay_home_decision,
    z_objective,
)
from .errors import DomainError, ScenarioError, VerificationError
from .games import pure_nash_equilibria, restrict, solve
from .masks import (
    HealthStatus,
    bayesian_expected_cost,
    bayesian_mask_condition,
    bayesian_best_p2,
    efficiency_analysis,
    efficiency_expected_cost,
    pair_game,
)
from .policy import LOCKDOWN, MASK_MANDATE, compare_policies, designer_cost
from .scenario import ScenarioConfig, parse_scenario

SUBCOMMANDS = (
    "mask-basic",
    "mask-bayesian",
    "mask-efficiency",
    "distancing",
    "meeting-opt",
    "curves",
    "policy-compare",
)

_STATUS_PAIRS = (
    ("both_susceptible", HealthStatus.SUSCEPTIBLE, HealthStatus.SUSCEPTIBLE),
    ("one_infected", HealthStatus.SUSCEPTIBLE, HealthStatus.INFECTED),
    ("both_infected", HealthStatus.INFECTED, HealthStatus.INFECTED),
)


@dataclass(frozen=True)
class ReportOptions:
    fmt: str = "table"
    precision: int = 6
    verify: bool = False
    grid_steps: int | None = None


class _Parser(argparse.ArgumentParser):
    # usage errors are invocation failures, not domain errors: exit 1, not 2
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="epigames",
        description="Pandemic decision games: mask/distancing analyses and policy ranking.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, descr in (
        ("mask-basic", "pair games with equilibria, social optima, and dominance"),
        ("mask-bayesian", "mask decision under unknown health status"),
        ("mask-efficiency", "mask decision with imperfect protection"),
        ("distancing", "go-out versus stay-home decision"),
        ("meeting-opt", "optimal meeting exposure z = group * duration"),
        ("curves", "meeting objective sampled over the z domain"),
        ("policy-compare", "evaluate and rank government policy sets"),
    ):
        p = sub.add_parser(name, help=descr)
        p.add_argument("--scenario", required=True, help="path to the scenario file")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=("table", "csv"), default="table")
        p.add_argument("--grid-steps", type=int, default=None, metavar="N")
        p.add_argument("--verify", action="store_true", help="cross-check against brute force")
        p.add_argument("--precision", type=int, default=6, metavar="D")
    return parser


def _num(value: float, opts: ReportOptions) -> str:
    if value == math.inf:
        return "inf"
    if opts.fmt == "table":
        return f"{value:.{opts.precision}f}"
    return f"{value:.{opts.precision}g}"


def _cell(value: object, opts: ReportOptions) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _num(value, opts)
    return str(value)


def _render_kv(pairs: list[tuple[str, object]], opts: ReportOptions) -> str:
    if opts.fmt == "csv":
        return _render_csv([key for key, _ in pairs], [[value for _, value in pairs]], opts)
    width = max(len(key) for key, _ in pairs) + 2
    return "".join(
        f"{key:<{width}}{_cell(value, opts) or '-'}\n" for key, value in pairs
    )


def _render_csv(header: list[str], rows: list[list[object]], opts: ReportOptions) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value, opts) for value in row])
    return buffer.getvalue()


def _render_table(header: list[str], rows: list[list[object]], opts: ReportOptions) -> str:
    cells = [header] + [[_cell(v, opts) or "-" for v in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _render_rows(header: list[str], rows: list[list[object]], opts: ReportOptions) -> str:
    if opts.fmt == "csv":
        return _render_csv(header, rows, opts)
    return _render_table(header, rows, opts)


def _profile_text(game, profile) -> str:
    lab1, lab2 = game.profile_labels(profile)
    return f"({lab1}, {lab2})"


def _meeting_domain(config: ScenarioConfig, opts: ReportOptions):
    domain = config.meeting_domain
    if opts.grid_steps is not None:
        domain = replace(domain, grid_steps=opts.grid_steps)
    return domain


def _fail_verify(mismatches: list[str]) -> None:
    if mismatches:
        raise VerificationError("; ".join(mismatches))


def _cmd_mask_basic(config: ScenarioConfig, opts: ReportOptions) -> str:
    costs = config.require_mask()
    games = [(name, pair_game(s1, s2, costs)) for name, s1, s2 in _STATUS_PAIRS]
    reports = [(name, game, solve(game)) for name, game in games]

    if opts.verify:
        mismatches = []
        for name, game, report in reports:
            if oracle.enumerate_pure_ne(game) != list(report.pure_nash):
                mismatches.append(f"{name}: equilibrium sets disagree with enumeration")
            sums = [sum(game.pair(*p)) for p in game.profiles()]
            floor = min(sums)
            exhaustive = [p for k, p in enumerate(game.profiles()) if sums[k] <= floor + 1e-9]
            if exhaustive != list(report.social_optima):
                mismatches.append(f"{name}: social optima disagree with exhaustive scan")
        _fail_verify(mismatches)

    rows = []
    for name, game, report in reports:
        for profile in report.pure_nash:
            lab1, lab2 = game.profile_labels(profile)
            c1, c2 = game.pair(*profile)
            rows.append([name, "nash_equilibrium", None, lab1, lab2, c1, c2])
        for profile in report.social_optima:
            lab1, lab2 = game.profile_labels(profile)
            c1, c2 = game.pair(*profile)
            rows.append([name, "social_optimum", None, lab1, lab2, c1, c2])
        for idx in report.dominant_p1:
            rows.append([name, "dominant_action", 1, game.actions_p1.labels[idx], None, None, None])
        for idx in report.dominant_p2:
            rows.append([name, "dominant_action", 2, None, game.actions_p2.labels[idx], None, None])

    if opts.fmt == "csv":
        return _render_csv(
            ["game", "item", "player", "action_p1", "action_p2", "cost_p1", "cost_p2"],
            rows,
            opts,
        )
    lines = []
    for name, game, report in reports:
        lines.append(f"game: {name}")
        lines.append("  nash_equilibria   " + ("; ".join(_profile_text(game, p) for p in report.pure_nash) or "-"))
        lines.append("  social_optima     " + ("; ".join(_profile_text(game, p) for p in report.social_optima) or "-"))
        lines.append("  dominant_p1       " + ("; ".join(game.actions_p1.labels[i] for i in report.dominant_p1) or "-"))
        lines.append("  dominant_p2       " + ("; ".join(game.actions_p2.labels[i] for i in report.dominant_p2) or "-"))
    return "\n".join(lines) + "\n"


def _cmd_mask_bayesian(config: ScenarioConfig, opts: ReportOptions) -> str:
    costs = config.require_mask()
    setting = config.require_bayesian()
    condition = bayesian_mask_condition(setting, costs)
    best = bayesian_best_p2(setting, costs)
    cost_no = bayesian_expected_cost(setting, 0.0, costs)
    cost_use = bayesian_expected_cost(setting, 1.0, costs)

    if opts.verify:
        mismatches = []
        if not oracle.check_affine(
            lambda p2: bayesian_expected_cost(setting, p2, costs), 0.0, 0.37, 1.0, 1e-9
        ):
            mismatches.append("expected cost is not affine in the wearing probability")
        if abs(cost_use - cost_no) > 1e-9 and (best == 1.0) != (cost_use < cost_no):
            mismatches.append("boundary decision disagrees with endpoint costs")
        _fail_verify(mismatches)

    return _render_kv(
        [
            ("rho", setting.rho),
            ("p1", setting.p1),
            ("c_use", costs.c_use),
            ("c_infection", costs.c_infection),
            ("threshold_ratio", condition.threshold),
            ("threshold", condition.threshold * costs.c_infection),
            ("expected_cost_no", cost_no),
            ("expected_cost_use", cost_use),
            ("best_p2", best),
            ("decision", "wear" if condition.wear else "skip"),
        ],
        opts,
    )


def _cmd_mask_efficiency(config: ScenarioConfig, opts: ReportOptions) -> str:
    costs = config.require_mask()
    eff = config.efficiency
    analysis = efficiency_analysis(eff, costs)

    def cost_at(p: float) -> float:
        return efficiency_expected_cost(p, eff, costs)

    if opts.verify:
        mismatches = []
        grid = oracle.grid_argmin(cost_at, 0.0, 1.0, 10_001)
        if abs(grid.x_star - analysis.best_p) > 1e-4:
            mismatches.append(
                f"best_p {analysis.best_p} disagrees with grid minimum {grid.x_star}"
            )
        h = 0.01
        curvature = (cost_at(0.5 + h) - 2 * cost_at(0.5) + cost_at(0.5 - h)) / (h * h)
        if not math.isclose(curvature, analysis.second_derivative, rel_tol=1e-6, abs_tol=1e-9):
            mismatches.append("second derivative disagrees with finite differences")
        _fail_verify(mismatches)

    return _render_kv(
        [
            ("a", eff.a),
            ("b", eff.b),
            ("c_use", costs.c_use),
            ("c_infection", costs.c_infection),
            ("cost_never_mask", cost_at(0.0)),
            ("cost_always_mask", cost_at(1.0)),
            ("use_beats_no_threshold", analysis.use_beats_no_threshold),
            ("use_beats_no", analysis.use_beats_no),
            ("stationary_p", analysis.stationary_p),
            ("second_derivative", analysis.second_derivative),
            ("degenerate", analysis.degenerate),
            ("best_p", analysis.best_p),
        ],
        opts,
    )


def _cmd_distancing(config: ScenarioConfig, opts: ReportOptions) -> str:
    params = config.require_distancing()
    outcome = stay_home_decision(params)
    utility_stay = distancing_utility(0.0, params)
    utility_go = distancing_utility(1.0, params)

    if opts.verify:
        mismatches = []
        if abs(utility_go - utility_stay) > 1e-9 and (
            outcome.decision is Decision.GO
        ) != (utility_go > utility_stay):
            mismatches.append("threshold decision disagrees with utility comparison")
        _fail_verify(mismatches)

    return _render_kv(
        [
            ("benefit", params.benefit),
            ("home_cost", params.home_cost),
            ("mortality", params.mortality),
            ("life_value", params.life_value),
            ("infection_prob", params.infection_prob),
            ("utility_stay", utility_stay),
            ("utility_go", utility_go),
            ("life_value_threshold", outcome.life_value_threshold),
            ("decision", outcome.decision.value),
        ],
        opts,
    )


def _cmd_meeting_opt(config: ScenarioConfig, opts: ReportOptions) -> str:
    params = config.require_distancing()
    benefit_fn, cost_fn = config.require_functions()
    domain = _meeting_domain(config, opts)
    rho, mortality = params.infection_prob, params.mortality
    optimum = optimal_meeting(benefit_fn, cost_fn, rho, mortality, domain)
    decision = extended_go_decision(
        benefit_fn, cost_fn, rho, mortality, params.life_value, domain
    )

    if opts.verify:
        mismatches = []
        grid = oracle.grid_argmin(
            lambda z: -z_objective(z, benefit_fn, cost_fn, rho, mortality),
            domain.z_min,
            domain.z_max,
            domain.grid_steps + 1,
        )
        step = (domain.z_max - domain.z_min) / domain.grid_steps
        if abs(grid.x_star - optimum.z_star) > step * (1 + 1e-9):
            mismatches.append(
                f"optimal z {optimum.z_star} is more than one grid step from {grid.x_star}"
            )
        if optimum.value < -grid.f_star - 1e-9 * max(1.0, abs(grid.f_star)):
            mismatches.append("optimum value does not dominate the sampled grid")
        _fail_verify(mismatches)

    return _render_kv(
        [
            ("z_min", domain.z_min),
            ("z_max", domain.z_max),
            ("grid_steps", domain.grid_steps),
            ("benefit", benefit_fn.encode()),
            ("cost", cost_fn.encode()),
            ("z_star", optimum.z_star),
            ("value", optimum.value),
            ("life_value", params.life_value),
            ("decision", decision.decision.value),
        ],
        opts,
    )


def _cmd_curves(config: ScenarioConfig, opts: ReportOptions) -> str:
    params = config.require_distancing()
    benefit_fn, cost_fn = config.require_functions()
    domain = _meeting_domain(config, opts)
    series = curve_series(benefit_fn, cost_fn, params.infection_prob, params.mortality, domain)

    if opts.verify:
        mismatches = []
        for z, value in series:
            # same objective through the group-meeting composition
            composed = (benefit_fn(z) + cost_fn(z)) / (
                group_infection_probability(params.infection_prob, GroupMeeting(z, 1.0))
                * params.mortality
            )
            if not math.isclose(value, composed, rel_tol=1e-12, abs_tol=1e-12):
                mismatches.append(f"objective at z={z} disagrees with composed form")
                break
        _fail_verify(mismatches)

    return _render_rows(["z", "objective"], [[z, v] for z, v in series], opts)


def _cmd_policy_compare(config: ScenarioConfig, opts: ReportOptions) -> str:
    scenario = config.to_scenario()
    scenario = replace(scenario, meeting_domain=_meeting_domain(config, opts))
    named_sets = config.require_policy_sets()
    model = config.require_designer()
    ranked = compare_policies(scenario, [policies for _, policies in named_sets], model)

    remaining = list(range(len(named_sets)))
    rows = []
    for rank, (policies, report) in enumerate(ranked, start=1):
        index = next(i for i in remaining if named_sets[i][1] == policies)
        remaining.remove(index)
        outcome = report.citizen_outcome
        rows.append(
            [
                rank,
                named_sets[index][0],
                "+".join(p.describe() for p in policies) or "(none)",
                outcome.decision.value,
                outcome.z_star,
                outcome.group_size,
                report.expected_infections,
                report.social_cost,
                report.testing_outlay,
                report.suppressed_benefit,
                report.designer_cost,
            ]
        )

    if opts.verify:
        mismatches = []
        keys = [(r.designer_cost, r.social_cost) for _, r in ranked]
        if keys != sorted(keys):
            mismatches.append("ranking is not sorted by designer then social cost")
        for policies, report in ranked:
            recomputed = designer_cost(
                report.expected_infections,
                report.suppressed_benefit,
                scenario.population,
                report.policies_applied,
                model,
            )
            if not math.isclose(recomputed, report.designer_cost, rel_tol=1e-12, abs_tol=1e-9):
                mismatches.append("designer cost disagrees with direct recomputation")
            if any(p.kind == LOCKDOWN for p in policies) and report.expected_infections != 0.0:
                mismatches.append("lockdown produced nonzero expected infections")
            if any(p.kind == MASK_MANDATE for p in policies):
                game = pair_game(
                    HealthStatus.SUSCEPTIBLE, HealthStatus.SUSCEPTIBLE, scenario.mask_costs
                )
                restricted = restrict(game, ["out"], ["out"])
                if oracle.enumerate_pure_ne(restricted) != pure_nash_equilibria(restricted):
                    mismatches.append("restricted mandate game disagrees with enumeration")
        _fail_verify(mismatches)

    return _render_rows(
        [
            "rank",
            "name",
            "policies",
            "decision",
            "z_star",
            "group_size",
            "expected_infections",
            "social_cost",
            "testing_outlay",
            "suppressed_benefit",
            "designer_cost",
        ],
        rows,
        opts,
    )


_HANDLERS = {
    "mask-basic": _cmd_mask_basic,
    "mask-bayesian": _cmd_mask_bayesian,
    "mask-efficiency": _cmd_mask_efficiency,
    "distancing": _cmd_distancing,
    "meeting-opt": _cmd_meeting_opt,
    "curves": _cmd_curves,
    "policy-compare": _cmd_policy_compare,
}


def run(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch, and emit the report; returns the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    opts = ReportOptions(
        fmt=args.format,
        precision=args.precision,
        verify=args.verify,
        grid_steps=args.grid_steps,
    )
    if opts.precision < 1:
        print("epigames: error: --precision must be at least 1", file=sys.stderr)
        return 1
    if opts.grid_steps is not None and opts.grid_steps < 1:
        print("epigames: error: --grid-steps must be at least 1", file=sys.stderr)
        return 1
    try:
        config = parse_scenario(args.scenario)
        report = _HANDLERS[args.command](config, opts)
    except ScenarioError as exc:
        print(f"epigames: scenario error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"epigames: domain error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"epigames: verification mismatch: {exc}", file=sys.stderr)
        return 3
    if args.out is None:
        sys.stdout.write(report)
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                handle.write(report)
        except OSError as exc:
            print(f"epigames: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

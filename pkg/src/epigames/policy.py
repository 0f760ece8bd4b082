"""Government-policy transformations and mechanism evaluation.

Policies rewrite a scenario (mask prices, allowed actions, meeting limits,
status disclosure); evaluation then runs the citizen games on the rewritten
scenario and aggregates social and designer costs.

Conventions used by the evaluation:

- The population is homogeneous: one distancing decision applies to all
  citizens, with a fraction ``bayesian.rho`` of them infected.
- ``distancing.infection_prob`` drives per-meeting exposure; new infections
  are priced at ``mask_costs.c_infection``.  Sunk costs of already-infected
  citizens are excluded (they are policy-independent).
- Citizens who stay home bear ``cost_fn(z_min)``; the benefit a lockdown
  suppresses is charged to the designer, not to social cost.
- A meeting with exposure z defaults to group size z for one time unit; a
  gathering cap shrinks the group dimension and stretches the duration so
  the optimized exposure is preserved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from .distancing import (
    CostBenefitFunction,
    Decision,
    DistancingParams,
    GroupMeeting,
    MeetingDomain,
    extended_go_decision,
    group_infection_probability,
)
from .masks import (
    ACTION_IN,
    ACTION_NO,
    ACTION_OUT,
    ACTION_USE,
    BayesianSetting,
    EfficiencyParams,
    MaskCosts,
    bayesian_best_p2,
)

MASK_MANDATE = "mask_mandate"
FREE_MASKS = "free_masks"
GATHERING_CAP = "gathering_cap"
LOCKDOWN = "lockdown"
MASS_TESTING = "mass_testing"
TARGETED_TESTING = "targeted_testing"

POLICY_KINDS = (
    MASK_MANDATE,
    FREE_MASKS,
    GATHERING_CAP,
    LOCKDOWN,
    MASS_TESTING,
    TARGETED_TESTING,
)


@dataclass(frozen=True)
class Policy:
    """One government policy with its parameters.

    Exactly the parameters belonging to ``kind`` may be set; use the
    factory classmethods rather than the raw constructor.
    """

    kind: str
    subsidy: float | None = None
    limit: int | None = None
    per_test_cost: float | None = None
    traced_fraction: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}; have {POLICY_KINDS}")
        wanted = {
            MASK_MANDATE: (),
            LOCKDOWN: (),
            FREE_MASKS: ("subsidy",),
            GATHERING_CAP: ("limit",),
            MASS_TESTING: ("per_test_cost",),
            TARGETED_TESTING: ("per_test_cost", "traced_fraction"),
        }[self.kind]
        for name in ("subsidy", "limit", "per_test_cost", "traced_fraction"):
            value = getattr(self, name)
            if name in wanted and value is None:
                raise ValueError(f"{self.kind} requires parameter {name!r}")
            if name not in wanted and value is not None:
                raise ValueError(f"{self.kind} does not take parameter {name!r}")
        if self.subsidy is not None and self.subsidy < 0:
            raise ValueError(f"subsidy must be non-negative, got {self.subsidy}")
        if self.limit is not None:
            if not isinstance(self.limit, int) or isinstance(self.limit, bool):
                raise ValueError(f"gathering limit must be an integer, got {self.limit!r}")
            if self.limit <= 0:
                raise ValueError(f"gathering limit must be positive, got {self.limit}")
        if self.per_test_cost is not None and self.per_test_cost < 0:
            raise ValueError(f"per_test_cost must be non-negative, got {self.per_test_cost}")
        if self.traced_fraction is not None and not 0 <= self.traced_fraction <= 1:
            raise ValueError(
                f"traced_fraction must be within [0, 1], got {self.traced_fraction}"
            )

    @classmethod
    def mask_mandate(cls) -> "Policy":
        return cls(MASK_MANDATE)

    @classmethod
    def free_masks(cls, subsidy: float) -> "Policy":
        return cls(FREE_MASKS, subsidy=float(subsidy))

    @classmethod
    def gathering_cap(cls, limit: int) -> "Policy":
        return cls(GATHERING_CAP, limit=limit)

    @classmethod
    def lockdown(cls) -> "Policy":
        return cls(LOCKDOWN)

    @classmethod
    def mass_testing(cls, per_test_cost: float) -> "Policy":
        return cls(MASS_TESTING, per_test_cost=float(per_test_cost))

    @classmethod
    def targeted_testing(cls, per_test_cost: float, traced_fraction: float) -> "Policy":
        return cls(
            TARGETED_TESTING,
            per_test_cost=float(per_test_cost),
            traced_fraction=float(traced_fraction),
        )

    def describe(self) -> str:
        parts = []
        for name in ("subsidy", "limit", "per_test_cost", "traced_fraction"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{name}={value:g}")
        return self.kind if not parts else f"{self.kind}({';'.join(parts)})"


@dataclass(frozen=True)
class Scenario:
    """Full input bundle for one what-if evaluation, plus policy annotations."""

    mask_costs: MaskCosts
    efficiency: EfficiencyParams
    bayesian: BayesianSetting
    distancing: DistancingParams
    benefit_fn: CostBenefitFunction
    cost_fn: CostBenefitFunction
    meeting_domain: MeetingDomain
    population: int
    policies_applied: tuple[Policy, ...] = ()
    mask_mandate: bool = False
    lockdown: bool = False
    revealed_fraction: float = 0.0
    gathering_limit: int | None = None
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.population < 2:
            raise ValueError(f"population must be at least 2, got {self.population}")
        if not 0 <= self.revealed_fraction <= 1:
            raise ValueError(
                f"revealed_fraction must be within [0, 1], got {self.revealed_fraction}"
            )


@dataclass(frozen=True)
class DesignerCostModel:
    """Linear designer cost: infections, testing outlay, suppressed benefit."""

    weight_infection: float
    weight_test: float
    weight_economic: float

    def __post_init__(self) -> None:
        for name in ("weight_infection", "weight_test", "weight_economic"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")


@dataclass(frozen=True)
class CitizenOutcome:
    """Per-citizen game results; group actions are None for empty groups."""

    decision: Decision
    z_star: float | None
    group_size: float | None
    duration: float | None
    revealed_susceptible_action: str | None
    revealed_infected_action: str | None
    unrevealed_action: str | None


@dataclass(frozen=True)
class MechanismReport:
    """Designer-facing outcome summary of one policy-set evaluation."""

    citizen_outcome: CitizenOutcome
    expected_infections: float
    social_cost: float
    designer_cost: float
    testing_outlay: float
    suppressed_benefit: float
    policies_applied: tuple[Policy, ...]
    warnings: tuple[str, ...]


def apply_policy(scenario: Scenario, policy: Policy) -> Scenario:
    """Rewrite the scenario under one policy, annotating it as applied.

    Stacking is left-to-right; lockdown dominates meeting policies, and the
    weaker of an incompatible pair is kept only as an annotated warning.
    """
    applied = scenario.policies_applied + (policy,)
    if policy.kind == MASK_MANDATE:
        return replace(scenario, mask_mandate=True, policies_applied=applied)
    if policy.kind == FREE_MASKS:
        costs = scenario.mask_costs
        subsidized = replace(
            costs,
            c_use=max(0.0, costs.c_use - policy.subsidy),
            c_out=max(0.0, costs.c_out - policy.subsidy),
        )
        return replace(scenario, mask_costs=subsidized, policies_applied=applied)
    if policy.kind == GATHERING_CAP:
        warnings = scenario.warnings
        if scenario.lockdown:
            warnings += ("gathering_cap has no effect under lockdown (stricter policy wins)",)
        limit = (
            policy.limit
            if scenario.gathering_limit is None
            else min(scenario.gathering_limit, policy.limit)
        )
        return replace(
            scenario, gathering_limit=limit, policies_applied=applied, warnings=warnings
        )
    if policy.kind == LOCKDOWN:
        warnings = scenario.warnings
        if scenario.gathering_limit is not None:
            warnings += ("lockdown overrides gathering_cap (stricter policy wins)",)
        return replace(scenario, lockdown=True, policies_applied=applied, warnings=warnings)
    if policy.kind == MASS_TESTING:
        return replace(scenario, revealed_fraction=1.0, policies_applied=applied)
    # targeted testing: reveal at least the traced fraction
    return replace(
        scenario,
        revealed_fraction=max(scenario.revealed_fraction, policy.traced_fraction),
        policies_applied=applied,
    )


def testing_outlay(policies: Sequence[Policy], population: int) -> float:
    """Total testing spend: everyone for mass testing, the traced fraction otherwise."""
    total = 0.0
    for policy in policies:
        if policy.kind == MASS_TESTING:
            total += population * policy.per_test_cost
        elif policy.kind == TARGETED_TESTING:
            total += policy.traced_fraction * (population * policy.per_test_cost)
    return total


def designer_cost(
    expected_infections: float,
    suppressed_benefit: float,
    population: int,
    policies: Sequence[Policy],
    model: DesignerCostModel,
) -> float:
    """Weighted sum of expected infections, testing outlay, and lost benefit."""
    return (
        model.weight_infection * expected_infections
        + model.weight_test * testing_outlay(policies, population)
        + model.weight_economic * suppressed_benefit
    )


def _mask_price(costs: MaskCosts, action: str) -> float:
    return {
        ACTION_NO: 0.0,
        ACTION_OUT: costs.c_out,
        ACTION_IN: costs.c_in,
        ACTION_USE: costs.c_use,
    }[action]


def evaluate_mechanism(
    scenario: Scenario, policies: Sequence[Policy], model: DesignerCostModel
) -> MechanismReport:
    """Apply policies in order, run the citizen games, aggregate the costs.

    Citizens first decide go/stay via the meeting optimization; goers then
    choose masks: revealed statuses play the full-information pair games
    (susceptibles wear in-masks whenever infected players exist, infected
    players go maskless), unrevealed citizens follow the Bayesian rule, and
    a mandate forces the out-mask on everyone.  New-infection probabilities
    scale the meeting exposure by ``a`` for a masked susceptible and ``b``
    for masked infected counterparts.
    """
    s = scenario
    for policy in policies:
        s = apply_policy(s, policy)

    d = s.distancing
    n = s.population
    baseline = extended_go_decision(
        s.benefit_fn, s.cost_fn, d.infection_prob, d.mortality, d.life_value, s.meeting_domain
    )
    if s.lockdown:
        outcome_decision: Decision = Decision.STAY
        z_star = None
        suppressed = (
            n * s.benefit_fn(baseline.z_star) if baseline.decision is Decision.GO else 0.0
        )
    else:
        outcome_decision, z_star = baseline.decision, baseline.z_star
        suppressed = 0.0

    if outcome_decision is Decision.STAY:
        outcome = CitizenOutcome(Decision.STAY, None, None, None, None, None, None)
        infections = 0.0
        social = n * s.cost_fn(s.meeting_domain.z_min)
    else:
        rho_b = s.bayesian.rho
        f_r = s.revealed_fraction
        costs = s.mask_costs
        if s.mask_mandate:
            # actions restricted to the out-mask for everyone
            rs_action = ri_action = u_action = ACTION_OUT
        else:
            rs_action = ACTION_IN if rho_b > 0 else ACTION_NO
            ri_action = ACTION_NO
            u_action = ACTION_USE if bayesian_best_p2(s.bayesian, costs) == 1.0 else ACTION_NO

        group = z_star if s.gathering_limit is None else min(float(s.gathering_limit), z_star)
        duration = z_star / group
        exposure = group_infection_probability(d.infection_prob, GroupMeeting(group, duration))

        def own_factor(action: str) -> float:
            return s.efficiency.a if action != ACTION_NO else 1.0

        masked_infected = f_r * (1.0 if ri_action != ACTION_NO else 0.0) + (1 - f_r) * (
            1.0 if u_action != ACTION_NO else 0.0
        )
        spread_factor = 1.0 - masked_infected * (1.0 - s.efficiency.b)
        infections = (
            exposure
            * spread_factor
            * (1 - rho_b)
            * n
            * (f_r * own_factor(rs_action) + (1 - f_r) * own_factor(u_action))
        )
        mask_spend = n * (
            f_r * ((1 - rho_b) * _mask_price(costs, rs_action) + rho_b * _mask_price(costs, ri_action))
            + (1 - f_r) * _mask_price(costs, u_action)
        )
        social = mask_spend + infections * costs.c_infection
        outcome = CitizenOutcome(
            Decision.GO,
            z_star,
            group,
            duration,
            rs_action if f_r > 0 and rho_b < 1 else None,
            ri_action if f_r > 0 and rho_b > 0 else None,
            u_action if f_r < 1 else None,
        )

    outlay = testing_outlay(s.policies_applied, n)
    total_designer = designer_cost(infections, suppressed, n, s.policies_applied, model)
    return MechanismReport(
        citizen_outcome=outcome,
        expected_infections=infections,
        social_cost=social,
        designer_cost=total_designer,
        testing_outlay=outlay,
        suppressed_benefit=suppressed,
        policies_applied=s.policies_applied,
        warnings=s.warnings,
    )


def compare_policies(
    scenario: Scenario,
    policy_sets: Sequence[Sequence[Policy]],
    model: DesignerCostModel,
) -> list[tuple[tuple[Policy, ...], MechanismReport]]:
    """Evaluate each policy set and rank ascending by designer cost.

    Ties fall back to social cost and then to input order (stable sort).
    """
    if not policy_sets:
        raise ValueError("at least one policy set is required")
    evaluated = [
        (tuple(policies), evaluate_mechanism(scenario, policies, model))
        for policies in policy_sets
    ]
    return sorted(evaluated, key=lambda item: (item[1].designer_cost, item[1].social_cost))

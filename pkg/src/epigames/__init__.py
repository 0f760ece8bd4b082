"""Pandemic decision games: mask and distancing analyses with a policy layer.

Everything is a pure function over immutable values, so all operations are
deterministic and safe to call concurrently.
"""

from .distancing import (
    CostBenefitFunction,
    Decision,
    DistancingParams,
    GoDecision,
    GroupMeeting,
    MeetingDomain,
    MeetingOptimum,
    StayHomeDecision,
    curve_series,
    distancing_utility,
    extended_go_decision,
    group_infection_probability,
    optimal_meeting,
    stay_home_decision,
    z_objective,
)
from .errors import DomainError, ScenarioError, VerificationError
from .games import (
    DEFAULT_TOL,
    ActionSet,
    CostTable,
    SolutionReport,
    StrategyProfile,
    best_responses,
    dominant_actions,
    is_pure_nash,
    pure_nash_equilibria,
    restrict,
    social_optima,
    solve,
)
from .masks import (
    ACTION_IN,
    ACTION_NO,
    ACTION_OUT,
    ACTION_USE,
    BayesianSetting,
    EfficiencyAnalysis,
    EfficiencyParams,
    HealthStatus,
    MaskCondition,
    MaskCosts,
    MultiplayerEquilibrium,
    SocialOptimumCondition,
    bayesian_best_p2,
    bayesian_expected_cost,
    bayesian_mask_condition,
    efficiency_analysis,
    efficiency_expected_cost,
    multiplayer_equilibrium,
    multiplayer_so_condition,
    pair_game,
)
from .policy import (
    CitizenOutcome,
    DesignerCostModel,
    MechanismReport,
    Policy,
    Scenario,
    apply_policy,
    compare_policies,
    designer_cost,
    evaluate_mechanism,
    testing_outlay,
)
from .scenario import ScenarioConfig, format_scenario, parse_scenario

__version__ = "0.1.0"

__all__ = [
    "ACTION_IN",
    "ACTION_NO",
    "ACTION_OUT",
    "ACTION_USE",
    "ActionSet",
    "BayesianSetting",
    "CitizenOutcome",
    "CostBenefitFunction",
    "CostTable",
    "DEFAULT_TOL",
    "Decision",
    "DesignerCostModel",
    "DistancingParams",
    "DomainError",
    "EfficiencyAnalysis",
    "EfficiencyParams",
    "GoDecision",
    "GroupMeeting",
    "HealthStatus",
    "MaskCondition",
    "MaskCosts",
    "MechanismReport",
    "MeetingDomain",
    "MeetingOptimum",
    "MultiplayerEquilibrium",
    "Policy",
    "Scenario",
    "ScenarioConfig",
    "ScenarioError",
    "SocialOptimumCondition",
    "SolutionReport",
    "StayHomeDecision",
    "StrategyProfile",
    "VerificationError",
    "apply_policy",
    "bayesian_best_p2",
    "bayesian_expected_cost",
    "bayesian_mask_condition",
    "best_responses",
    "compare_policies",
    "curve_series",
    "designer_cost",
    "distancing_utility",
    "dominant_actions",
    "efficiency_analysis",
    "efficiency_expected_cost",
    "evaluate_mechanism",
    "extended_go_decision",
    "format_scenario",
    "group_infection_probability",
    "is_pure_nash",
    "multiplayer_equilibrium",
    "multiplayer_so_condition",
    "optimal_meeting",
    "pair_game",
    "parse_scenario",
    "pure_nash_equilibria",
    "restrict",
    "social_optima",
    "solve",
    "stay_home_decision",
    "testing_outlay",
    "z_objective",
]

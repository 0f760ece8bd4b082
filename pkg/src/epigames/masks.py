"""Mask-choice games for meetings between susceptible and infected players.

Covers the full-information pair games over the actions (no, out, in), the
Bayesian analysis under unknown health status (merged action ``use``), the
mask-efficiency analysis with imperfect protection, and the many-player
assignment rule with its social-optimality condition.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .games import ActionSet, CostTable

ACTION_NO = "no"
ACTION_OUT = "out"
ACTION_IN = "in"
ACTION_USE = "use"

PAIR_ACTIONS = (ACTION_NO, ACTION_OUT, ACTION_IN)


class HealthStatus(enum.Enum):
    SUSCEPTIBLE = "susceptible"
    INFECTED = "infected"


@dataclass(frozen=True)
class MaskCosts:
    """Cost constants of the mask games, in abstract currency units.

    User-facing inputs are strictly positive with c_out < c_in < c_infection,
    but c_out and c_use may legitimately reach zero after a mask subsidy, so
    the type accepts zero for those two fields.
    """

    c_out: float
    c_in: float
    c_use: float
    c_infection: float

    def __post_init__(self) -> None:
        if not (0 <= self.c_out < self.c_in < self.c_infection):
            raise ValueError(
                "mask costs must satisfy 0 <= c_out < c_in < c_infection, got "
                f"c_out={self.c_out}, c_in={self.c_in}, c_infection={self.c_infection}"
            )
        if not (0 <= self.c_use < self.c_infection):
            raise ValueError(
                "mask costs must satisfy 0 <= c_use < c_infection, got "
                f"c_use={self.c_use}, c_infection={self.c_infection}"
            )


@dataclass(frozen=True)
class BayesianSetting:
    """Infection prior and the opponent's mask-wearing probability."""

    rho: float
    p1: float

    def __post_init__(self) -> None:
        if not 0 <= self.rho <= 1:
            raise ValueError(f"rho must be within [0, 1], got {self.rho}")
        if not 0 <= self.p1 <= 1:
            raise ValueError(f"p1 must be within [0, 1], got {self.p1}")


@dataclass(frozen=True)
class EfficiencyParams:
    """Per-encounter infection multipliers of a worn mask (smaller is better).

    ``a`` scales the wearer's own infection probability, ``b`` scales onward
    transmission from an infected wearer; real masks block outgoing droplets
    better than incoming aerosols, hence a <= b.
    """

    a: float = 1.0 / 3.0
    b: float = 2.0 / 3.0

    def __post_init__(self) -> None:
        if not 0 <= self.a <= self.b <= 1:
            raise ValueError(
                f"efficiencies must satisfy 0 <= a <= b <= 1, got a={self.a}, b={self.b}"
            )


def pair_game(status1: HealthStatus, status2: HealthStatus, costs: MaskCosts) -> CostTable:
    """Build the 3x3 full-information meeting game for the given status pair.

    A susceptible player facing an infected one bears the infection cost
    unless she wears the in-mask herself or the infected player wears the
    out-mask.  Infected players always carry their infection cost.
    """
    prices = (0.0, costs.c_out, costs.c_in)
    ci = costs.c_infection
    one_inf = HealthStatus.INFECTED
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            c1 = prices[i] + (ci if status1 is one_inf else 0.0)
            c2 = prices[j] + (ci if status2 is one_inf else 0.0)
            if status1 is not one_inf and status2 is one_inf and i != 2 and j != 1:
                c1 += ci
            if status2 is not one_inf and status1 is one_inf and j != 2 and i != 1:
                c2 += ci
            row.append((c1, c2))
        rows.append(tuple(row))
    return CostTable(ActionSet(PAIR_ACTIONS), ActionSet(PAIR_ACTIONS), tuple(rows))


def bayesian_expected_cost(setting: BayesianSetting, p2: float, costs: MaskCosts) -> float:
    """Expected cost of a player wearing a mask with probability ``p2``.

    Both players' statuses are unknown, each infected with probability rho;
    the opponent wears with probability p1.  Affine in p2.
    """
    if not 0 <= p2 <= 1:
        raise ValueError(f"p2 must be within [0, 1], got {p2}")
    rho, p1 = setting.rho, setting.p1
    cu, ci = costs.c_use, costs.c_infection
    when_susceptible = (1 - rho) * (p2 * cu) + rho * (p2 * cu + (1 - p2) * (1 - p1) * ci)
    when_infected = p2 * (ci + cu) + (1 - p2) * ci
    return (1 - rho) * when_susceptible + rho * when_infected


class MaskCondition(NamedTuple):
    threshold: float  # upper bound on c_use / c_infection for wearing to pay off
    wear: bool


def bayesian_mask_condition(setting: BayesianSetting, costs: MaskCosts) -> MaskCondition:
    """Wearing lowers the expected cost iff c_use/c_infection < rho(1-rho)(1-p1)."""
    threshold = setting.rho * (1 - setting.rho) * (1 - setting.p1)
    return MaskCondition(threshold, costs.c_use / costs.c_infection < threshold)


def bayesian_best_p2(setting: BayesianSetting, costs: MaskCosts) -> float:
    """Optimal wearing probability: 1 if wearing pays off, else 0.

    The expected cost is affine in p2, so the optimum sits on a boundary;
    exact indifference resolves to 0 (no mask).
    """
    return 1.0 if bayesian_mask_condition(setting, costs).wear else 0.0


def efficiency_expected_cost(p: float, eff: EfficiencyParams, costs: MaskCosts) -> float:
    """Expected cost when meeting an infected player with imperfect masks.

    Both players wear with the same probability ``p``; a worn mask scales
    the wearer's own infection probability by ``a`` and onward transmission
    by ``b``.
    """
    if not 0 <= p <= 1:
        raise ValueError(f"p must be within [0, 1], got {p}")
    a, b = eff.a, eff.b
    cu, ci = costs.c_use, costs.c_infection
    return (
        p * p * (cu + ci * a * b)
        + p * (1 - p) * (cu + ci * a)
        + (1 - p) * p * (ci * b)
        + (1 - p) * (1 - p) * ci
    )


@dataclass(frozen=True)
class EfficiencyAnalysis:
    """Closed-form shape analysis of the efficiency cost in p.

    The cost is quadratic with curvature 2*c_infection*(1-a)*(1-b) >= 0;
    when a=1 or b=1 it degenerates to an affine function and the minimizer
    is found by boundary comparison instead of the stationary point.
    """

    stationary_p: float | None
    second_derivative: float
    use_beats_no_threshold: float
    use_beats_no: bool
    best_p: float
    degenerate: bool


def efficiency_analysis(eff: EfficiencyParams, costs: MaskCosts) -> EfficiencyAnalysis:
    """Minimize the efficiency cost over p in [0, 1], in closed form."""
    a, b = eff.a, eff.b
    cu, ci = costs.c_use, costs.c_infection
    curvature = 2 * ci * (1 - a) * (1 - b)
    threshold = 1 - a * b
    beats = cu / ci < threshold
    degenerate = a == 1.0 or b == 1.0
    if degenerate:
        slope = cu + ci * (a + b) - 2 * ci
        stationary = None
        best = 1.0 if slope < 0 else 0.0
    else:
        stationary = (2 * ci - ci * (a + b) - cu) / curvature
        best = min(1.0, max(0.0, stationary))  # convex, so clamping is exact
    return EfficiencyAnalysis(stationary, curvature, threshold, beats, best, degenerate)


class MultiplayerEquilibrium(NamedTuple):
    actions: tuple[str, ...]
    no_infected: bool  # flags the degenerate all-susceptible input


def multiplayer_equilibrium(
    statuses: Sequence[HealthStatus], costs: MaskCosts
) -> MultiplayerEquilibrium:
    """Equilibrium assignment when every player meets every other player.

    Infected players go maskless; susceptible players wear the in-mask.
    With no infected player present the rule still assigns in-masks, which
    is flagged so callers can treat the risk-free case separately.
    """
    if not statuses:
        raise ValueError("at least one player is required")
    actions = tuple(
        ACTION_NO if s is HealthStatus.INFECTED else ACTION_IN for s in statuses
    )
    return MultiplayerEquilibrium(actions, HealthStatus.INFECTED not in statuses)


class SocialOptimumCondition(NamedTuple):
    holds: bool
    lhs: float  # c_in / c_out
    rhs: float  # rho / (1 - rho), infinite at rho = 1


def multiplayer_so_condition(rho: float, costs: MaskCosts) -> SocialOptimumCondition:
    """Whether the many-player equilibrium is also the social optimum.

    Susceptibles wearing in-masks beats infected wearing out-masks exactly
    when c_in/c_out < rho/(1-rho); at rho=1 the right side is unbounded and
    the condition holds vacuously.
    """
    if not 0 <= rho <= 1:
        raise ValueError(f"rho must be within [0, 1], got {rho}")
    lhs = math.inf if costs.c_out == 0 else costs.c_in / costs.c_out
    rhs = math.inf if rho == 1 else rho / (1 - rho)
    return SocialOptimumCondition(lhs < rhs, lhs, rhs)

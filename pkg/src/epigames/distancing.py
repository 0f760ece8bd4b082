"""Go-out versus stay-home decisions and meeting-size/duration optimization.

The basic decision weighs the benefit of going out against the expected
mortality cost of an infection.  The extended model prices a meeting with
``g`` potential infectious sources lasting ``t`` time units through the
combined exposure z = g*t, and optimizes the risk-adjusted stakes over z.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .errors import DomainError

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Decision(enum.Enum):
    STAY = "stay"
    GO = "go"


@dataclass(frozen=True)
class DistancingParams:
    """Benefit/cost of an outing plus infection-risk constants."""

    benefit: float
    home_cost: float
    mortality: float
    life_value: float
    infection_prob: float

    def __post_init__(self) -> None:
        for name in ("benefit", "home_cost", "mortality", "life_value", "infection_prob"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)}")
        if self.mortality > 1:
            raise ValueError(f"mortality must be within [0, 1], got {self.mortality}")
        if self.infection_prob > 1:
            raise ValueError(f"infection_prob must be within [0, 1], got {self.infection_prob}")


@dataclass(frozen=True)
class CostBenefitFunction:
    """Benefit or cost as a function of the exposure z: constant or linear.

    Coefficients are non-negative, so values are non-negative on z >= 0.
    """

    kind: str
    slope: float
    intercept: float

    def __post_init__(self) -> None:
        if self.kind not in ("constant", "linear"):
            raise ValueError(f"kind must be 'constant' or 'linear', got {self.kind!r}")
        if self.slope < 0 or self.intercept < 0:
            raise ValueError(
                f"coefficients must be non-negative, got slope={self.slope},"
                f" intercept={self.intercept}"
            )
        if self.kind == "constant" and self.slope != 0:
            raise ValueError("a constant function cannot carry a slope")

    @classmethod
    def constant(cls, k: float) -> "CostBenefitFunction":
        return cls("constant", 0.0, float(k))

    @classmethod
    def linear(cls, slope: float, intercept: float = 0.0) -> "CostBenefitFunction":
        return cls("linear", float(slope), float(intercept))

    def __call__(self, z: float) -> float:
        return self.slope * z + self.intercept

    def encode(self) -> str:
        """Exact text form, re-parseable by the scenario reader."""
        if self.kind == "constant":
            return f"constant:{self.intercept!r}"
        return f"linear:{self.slope!r},{self.intercept!r}"


@dataclass(frozen=True)
class MeetingDomain:
    """Search window for the combined exposure z = group_size * duration."""

    z_min: float = 0.1
    z_max: float = 100.0
    grid_steps: int = 10_000

    def __post_init__(self) -> None:
        if not 0 < self.z_min < self.z_max <= 100:
            raise ValueError(
                f"need 0 < z_min < z_max <= 100, got z_min={self.z_min}, z_max={self.z_max}"
            )
        if self.grid_steps < 1:
            raise ValueError(f"grid_steps must be positive, got {self.grid_steps}")

    def grid(self) -> list[float]:
        """grid_steps + 1 evenly spaced samples, endpoints included exactly."""
        width = (self.z_max - self.z_min) / self.grid_steps
        points = [self.z_min + k * width for k in range(self.grid_steps + 1)]
        points[-1] = self.z_max
        return points


@dataclass(frozen=True)
class GroupMeeting:
    """A meeting with ``group_size`` potential sources for ``duration`` time."""

    group_size: float
    duration: float

    def __post_init__(self) -> None:
        if self.group_size <= 0 or self.duration <= 0:
            raise ValueError(
                f"group size and duration must be positive, got g={self.group_size},"
                f" t={self.duration}"
            )

    @property
    def z(self) -> float:
        return self.group_size * self.duration

    def within(self, domain: MeetingDomain) -> bool:
        return domain.z_min <= self.z <= domain.z_max


def distancing_utility(p: float, params: DistancingParams) -> float:
    """Utility of going out with probability p; affine in p."""
    if not 0 <= p <= 1:
        raise ValueError(f"p must be within [0, 1], got {p}")
    stakes = params.benefit - params.infection_prob * params.mortality * params.life_value
    return p * stakes - (1 - p) * params.home_cost


class StayHomeDecision(NamedTuple):
    decision: Decision
    life_value_threshold: float


def stay_home_decision(params: DistancingParams) -> StayHomeDecision:
    """Stay home iff (benefit + home_cost) / (rho * mortality) < life_value.

    With no infection risk (rho * mortality = 0) going out always wins and
    the threshold is reported as unbounded.
    """
    exposure = params.infection_prob * params.mortality
    if exposure == 0:
        return StayHomeDecision(Decision.GO, math.inf)
    threshold = (params.benefit + params.home_cost) / exposure
    decision = Decision.STAY if threshold < params.life_value else Decision.GO
    return StayHomeDecision(decision, threshold)


def group_infection_probability(rho: float, meeting: GroupMeeting) -> float:
    """Probability of catching the infection: 1 - (1 - rho)^(g*t)."""
    if not 0 <= rho <= 1:
        raise ValueError(f"rho must be within [0, 1], got {rho}")
    return 1.0 - (1.0 - rho) ** meeting.z


def z_objective(
    z: float,
    benefit_fn: CostBenefitFunction,
    cost_fn: CostBenefitFunction,
    rho: float,
    m: float,
) -> float:
    """Risk-adjusted stakes of a meeting: (B(z) + C(z)) / ((1 - (1-rho)^z) * m).

    Going out is justified when this exceeds the player's life value.
    """
    if rho <= 0 or rho > 1:
        raise DomainError(f"meeting objective needs infection probability in (0, 1], got {rho}")
    if m <= 0:
        raise DomainError(f"meeting objective needs positive mortality, got {m}")
    if z <= 0:
        raise DomainError(f"exposure z must be positive, got {z}")
    return (benefit_fn(z) + cost_fn(z)) / ((1.0 - (1.0 - rho) ** z) * m)


class MeetingOptimum(NamedTuple):
    z_star: float
    value: float


def _golden_max(
    fn: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, float]:
    # Golden-section refinement for a maximum on [lo, hi].
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(200):
        if b - a <= tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
    x = (a + b) / 2
    return x, fn(x)


def optimal_meeting(
    benefit_fn: CostBenefitFunction,
    cost_fn: CostBenefitFunction,
    rho: float,
    m: float,
    domain: MeetingDomain,
) -> MeetingOptimum:
    """Maximize the meeting objective over the z domain.

    Uniform grid scan followed by one golden-section refinement pass on the
    bracketing interval; ties break toward smaller z (less exposure).
    """

    def objective(z: float) -> float:
        return z_objective(z, benefit_fn, cost_fn, rho, m)

    points = domain.grid()
    best_i, best_f = 0, objective(points[0])
    for i in range(1, len(points)):
        f = objective(points[i])
        if f > best_f:
            best_i, best_f = i, f
    lo = points[best_i - 1] if best_i > 0 else points[0]
    hi = points[best_i + 1] if best_i + 1 < len(points) else points[-1]
    best_z = points[best_i]
    if lo < hi:
        span = domain.z_max - domain.z_min
        z_ref, f_ref = _golden_max(objective, lo, hi, tol=span * 1e-12)
        if f_ref > best_f or (f_ref == best_f and z_ref < best_z):
            best_z, best_f = z_ref, f_ref
    return MeetingOptimum(best_z, best_f)


class GoDecision(NamedTuple):
    decision: Decision
    z_star: float | None


def extended_go_decision(
    benefit_fn: CostBenefitFunction,
    cost_fn: CostBenefitFunction,
    rho: float,
    m: float,
    life_value: float,
    domain: MeetingDomain,
) -> GoDecision:
    """Go out at the best exposure iff the maximized stakes exceed the life value."""
    optimum = optimal_meeting(benefit_fn, cost_fn, rho, m, domain)
    if optimum.value > life_value:
        return GoDecision(Decision.GO, optimum.z_star)
    return GoDecision(Decision.STAY, None)


def curve_series(
    benefit_fn: CostBenefitFunction,
    cost_fn: CostBenefitFunction,
    rho: float,
    m: float,
    domain: MeetingDomain,
) -> list[tuple[float, float]]:
    """grid_steps + 1 samples of the meeting objective, for plotting."""
    return [
        (z, z_objective(z, benefit_fn, cost_fn, rho, m)) for z in domain.grid()
    ]

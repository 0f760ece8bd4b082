"""Two-player normal-form games recorded as per-profile cost pairs.

Entries are costs and are minimized: a profile is better for a player when
her coordinate is smaller.  All solvers return every tied solution (within
an absolute tolerance) and enumerate profiles in row-major order, so output
is deterministic and reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

DEFAULT_TOL = 1e-9


class StrategyProfile(NamedTuple):
    """One action index per player."""

    action_p1: int
    action_p2: int


@dataclass(frozen=True)
class ActionSet:
    """Ordered, unique action labels for one player."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("an action set needs at least one action")
        if len(set(labels)) != len(labels):
            raise ValueError(f"action labels must be unique, got {labels!r}")

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown action {label!r}; have {self.labels!r}") from None


@dataclass(frozen=True)
class CostTable:
    """A total cost table over the action cross-product of two players.

    ``costs[i][j]`` is the pair ``(cost_p1, cost_p2)`` for player 1 playing
    her ``i``-th action against player 2's ``j``-th action.  Every entry must
    be a finite, non-negative real.
    """

    actions_p1: ActionSet
    actions_p2: ActionSet
    costs: tuple[tuple[tuple[float, float], ...], ...]

    def __post_init__(self) -> None:
        n1, n2 = len(self.actions_p1), len(self.actions_p2)
        if len(self.costs) != n1:
            raise ValueError(f"cost table has {len(self.costs)} rows, expected {n1}")
        rows = []
        for i, row in enumerate(self.costs):
            if len(row) != n2:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n2}")
            cells = []
            for j, cell in enumerate(row):
                c1, c2 = float(cell[0]), float(cell[1])
                for c in (c1, c2):
                    if not math.isfinite(c) or c < 0:
                        raise ValueError(
                            f"cost entry at profile ({i}, {j}) must be finite and"
                            f" non-negative, got {cell!r}"
                        )
                cells.append((c1, c2))
            rows.append(tuple(cells))
        object.__setattr__(self, "costs", tuple(rows))

    @property
    def n1(self) -> int:
        return len(self.actions_p1)

    @property
    def n2(self) -> int:
        return len(self.actions_p2)

    def pair(self, i: int, j: int) -> tuple[float, float]:
        """Cost pair at profile (i, j)."""
        return self.costs[i][j]

    def cost(self, player: int, i: int, j: int) -> float:
        """Cost of the given player at profile (i, j)."""
        _check_player(player)
        return self.costs[i][j][player - 1]

    def profiles(self) -> Iterator[StrategyProfile]:
        """All profiles in row-major order."""
        for i in range(self.n1):
            for j in range(self.n2):
                yield StrategyProfile(i, j)

    def profile_labels(self, profile: StrategyProfile) -> tuple[str, str]:
        return (
            self.actions_p1.labels[profile.action_p1],
            self.actions_p2.labels[profile.action_p2],
        )


@dataclass(frozen=True)
class SolutionReport:
    """Bundle of pure equilibria, social optima, and weakly dominant actions."""

    pure_nash: tuple[StrategyProfile, ...]
    social_optima: tuple[StrategyProfile, ...]
    dominant_p1: tuple[int, ...]
    dominant_p2: tuple[int, ...]


def _check_player(player: int) -> None:
    if player not in (1, 2):
        raise ValueError(f"player must be 1 or 2, got {player!r}")


def best_responses(
    game: CostTable, player: int, opponent_action: int, tol: float = DEFAULT_TOL
) -> list[int]:
    """Actions minimizing the player's cost against a fixed opponent action.

    All actions within ``tol`` of the minimum are returned, in index order.
    """
    _check_player(player)
    if tol < 0:
        raise ValueError("tol must be non-negative")
    n_own = game.n1 if player == 1 else game.n2
    n_opp = game.n2 if player == 1 else game.n1
    if not 0 <= opponent_action < n_opp:
        raise ValueError(f"opponent action {opponent_action} out of range [0, {n_opp})")
    if player == 1:
        own = [game.cost(1, a, opponent_action) for a in range(n_own)]
    else:
        own = [game.cost(2, opponent_action, a) for a in range(n_own)]
    floor = min(own)
    return [a for a, c in enumerate(own) if c <= floor + tol]


def is_pure_nash(game: CostTable, profile: StrategyProfile, tol: float = DEFAULT_TOL) -> bool:
    """True iff both actions are best responses to each other (within tol)."""
    i, j = profile
    if not (0 <= i < game.n1 and 0 <= j < game.n2):
        raise ValueError(f"profile {profile!r} out of range for {game.n1}x{game.n2} game")
    return i in best_responses(game, 1, j, tol) and j in best_responses(game, 2, i, tol)


def pure_nash_equilibria(game: CostTable, tol: float = DEFAULT_TOL) -> list[StrategyProfile]:
    """All profiles where no unilateral deviation lowers own cost by more than tol."""
    br1 = [set(best_responses(game, 1, j, tol)) for j in range(game.n2)]
    br2 = [set(best_responses(game, 2, i, tol)) for i in range(game.n1)]
    return [p for p in game.profiles() if p.action_p1 in br1[p.action_p2] and p.action_p2 in br2[p.action_p1]]


def social_optima(game: CostTable, tol: float = DEFAULT_TOL) -> list[StrategyProfile]:
    """All profiles whose total cost is within tol of the global minimum."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    sums = {p: sum(game.pair(*p)) for p in game.profiles()}
    floor = min(sums.values())
    return [p for p in game.profiles() if sums[p] <= floor + tol]


def dominant_actions(
    game: CostTable, player: int, weak: bool = True, tol: float = DEFAULT_TOL
) -> list[int]:
    """Actions that minimize the player's cost against every opponent action.

    Weak dominance allows ties (within tol); strict dominance requires the
    action to beat every alternative by more than tol in every column.
    """
    _check_player(player)
    n_own = game.n1 if player == 1 else game.n2
    n_opp = game.n2 if player == 1 else game.n1

    def own_cost(a: int, o: int) -> float:
        return game.cost(1, a, o) if player == 1 else game.cost(2, o, a)

    result = []
    for a in range(n_own):
        if weak:
            ok = all(
                own_cost(a, o) <= own_cost(b, o) + tol
                for o in range(n_opp)
                for b in range(n_own)
            )
        else:
            ok = all(
                own_cost(a, o) < own_cost(b, o) - tol
                for o in range(n_opp)
                for b in range(n_own)
                if b != a
            )
        if ok:
            result.append(a)
    return result


def restrict(
    game: CostTable,
    keep_p1: Sequence[int | str],
    keep_p2: Sequence[int | str],
) -> CostTable:
    """Sub-game over the given actions (indices or labels), order preserved."""

    def resolve(actions: ActionSet, keep: Sequence[int | str]) -> list[int]:
        idx = [actions.index(k) if isinstance(k, str) else int(k) for k in keep]
        for k in idx:
            if not 0 <= k < len(actions):
                raise ValueError(f"action index {k} out of range")
        return idx

    rows = resolve(game.actions_p1, keep_p1)
    cols = resolve(game.actions_p2, keep_p2)
    return CostTable(
        ActionSet(tuple(game.actions_p1.labels[i] for i in rows)),
        ActionSet(tuple(game.actions_p2.labels[j] for j in cols)),
        tuple(tuple(game.costs[i][j] for j in cols) for i in rows),
    )


def solve(game: CostTable, tol: float = DEFAULT_TOL) -> SolutionReport:
    """Full solution bundle with weak dominance (the reporting default)."""
    return SolutionReport(
        pure_nash=tuple(pure_nash_equilibria(game, tol)),
        social_optima=tuple(social_optima(game, tol)),
        dominant_p1=tuple(dominant_actions(game, 1, weak=True, tol=tol)),
        dominant_p2=tuple(dominant_actions(game, 2, weak=True, tol=tol)),
    )

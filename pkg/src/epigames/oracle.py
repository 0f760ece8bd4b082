"""Brute-force verifiers for cross-checking analytic results.

Shipped (not test-only) so the CLI can cross-check analytic and exhaustive
paths at runtime via ``--verify``.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .errors import DomainError
from .games import DEFAULT_TOL, CostTable, StrategyProfile


def enumerate_pure_ne(game: CostTable, tol: float = DEFAULT_TOL) -> list[StrategyProfile]:
    """Enumerate pure equilibria by exhaustive unilateral-deviation testing.

    Independent of the analytic solver: no best-response precomputation,
    just the definition checked profile by profile in row-major order.
    """
    found = []
    for i in range(game.n1):
        for j in range(game.n2):
            c1, c2 = game.costs[i][j]
            stable = True
            for k in range(game.n1):
                if c1 - game.costs[k][j][0] > tol:
                    stable = False
                    break
            if stable:
                for k in range(game.n2):
                    if c2 - game.costs[i][k][1] > tol:
                        stable = False
                        break
            if stable:
                found.append(StrategyProfile(i, j))
    return found


class GridPoint(NamedTuple):
    x_star: float
    f_star: float


def grid_argmin(fn: Callable[[float], float], lo: float, hi: float, steps: int) -> GridPoint:
    """Minimizing sample of ``fn`` over a uniform grid of ``steps`` points.

    Ties break toward smaller x. Raises DomainError on a non-finite value,
    naming the offending sample point.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if steps < 2:
        raise ValueError(f"need at least 2 samples, got {steps}")
    width = (hi - lo) / (steps - 1)
    best_x = best_f = None
    for k in range(steps):
        x = hi if k == steps - 1 else lo + k * width
        f = fn(x)
        if not math.isfinite(f):
            raise DomainError(f"objective is not finite at x={x!r} (got {f!r})")
        if best_f is None or f < best_f:
            best_x, best_f = x, f
    return GridPoint(best_x, best_f)


def check_affine(
    fn: Callable[[float], float], x1: float, x2: float, x3: float, tol: float = DEFAULT_TOL
) -> bool:
    """True iff the three sampled points are collinear within ``tol``."""
    if len({x1, x2, x3}) != 3:
        raise ValueError(f"sample points must be distinct, got {(x1, x2, x3)!r}")
    f1, f2, f3 = fn(x1), fn(x2), fn(x3)
    predicted = f1 + (f3 - f1) * (x2 - x1) / (x3 - x1)
    return abs(f2 - predicted) <= tol

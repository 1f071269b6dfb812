"""Brute-force verification of the closed forms by discretization.

Everything here re-derives results from first principles on grids: the
market-equilibrium oracle checks the defining utility inequalities at
every grid consumer for every candidate split, the deviation oracle
maximizes over a location grid, the welfare optimum oracle exhaustively
searches the (x1, x2, s1) box, and the region scan classifies every grid
cell through the Nash decision procedure. These routines certify the
closed forms within principled grid tolerances; they are the provenance
for the frozen expected values in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .behaviors import BehaviorKind, deviation_payoff, is_nash
from .model import (
    EquilibriumProfile,
    GameParams,
    Locations,
    enumerate_market_equilibria,
)
from .welfare import OptimumPoint

__all__ = [
    "GridSpec",
    "oracle_market_equilibria",
    "oracle_best_deviation",
    "oracle_social_optimum",
    "oracle_ne_region_scan",
    "oracle_consumer_welfare",
]


@dataclass(frozen=True)
class GridSpec:
    """Resolutions for the brute-force routines.

    n_consumers samples the consumer interval (at cell midpoints, so the
    boundary consumers 0 and 1 are not privileged), n_locations the
    location / deviation axis, n_shares the candidate-split axis.
    """

    n_consumers: int = 10_000
    n_locations: int = 2001
    n_shares: int = 2001

    def __post_init__(self):
        for name in ("n_consumers", "n_locations", "n_shares"):
            if getattr(self, name) < 2:
                raise ValueError(f"{name} must be at least 2")


def oracle_market_equilibria(params: GameParams, loc: Locations, grid: GridSpec) -> list:
    """Approximate equilibrium splits by checking the definition pointwise.

    For each candidate s1 on the share grid, every grid consumer left of
    the cut must weakly prefer firm 1 and every consumer from the cut on
    must weakly prefer firm 2. The slack is 1e-9 plus (1 + a) times the
    share-grid spacing: an exact equilibrium displaced by one grid step
    perturbs the utility margins by at most that much, so each true
    equilibrium produces a run of passing candidates. Maximal runs are
    collapsed to their midpoints.
    """
    a = params.a
    n = grid.n_consumers
    consumers = (np.arange(n) + 0.5) / n
    # advantage of firm 1 at share s1: a*(2 s1 - 1) + margin(v)
    margin = np.abs(consumers - loc.x2) - np.abs(consumers - loc.x1)
    prefix_min = np.minimum.accumulate(margin)
    suffix_max = np.maximum.accumulate(margin[::-1])[::-1]

    candidates = np.linspace(0.0, 1.0, grid.n_shares)
    spacing = 1.0 / (grid.n_shares - 1)
    slack = 1e-9 + (1.0 + a) * spacing

    cut = np.searchsorted(consumers, candidates, side="left")
    shift = a * (2.0 * candidates - 1.0)
    ok_left = np.ones(len(candidates), dtype=bool)
    has_left = cut > 0
    ok_left[has_left] = shift[has_left] + prefix_min[cut[has_left] - 1] >= -slack
    ok_right = np.ones(len(candidates), dtype=bool)
    has_right = cut < n
    ok_right[has_right] = shift[has_right] + suffix_max[cut[has_right]] <= slack
    passing = ok_left & ok_right

    clusters: list = []
    start = None
    for i, flag in enumerate(passing):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            clusters.append(0.5 * (candidates[start] + candidates[i - 1]))
            start = None
    if start is not None:
        clusters.append(0.5 * (candidates[start] + candidates[-1]))
    return clusters


def oracle_best_deviation(
    params: GameParams,
    behavior: BehaviorKind,
    deviator: int,
    x_other: float,
    grid: GridSpec,
):
    """Exhaustive deviation search: (location, payoff) at the grid argmax.

    The payoff map is piecewise Lipschitz in the deviation location
    (constant up to max(1/(1-a), 1/(2a)) across pieces), so the grid
    maximum trails the true supremum by at most that constant times the
    grid spacing.
    """
    best_x, best_v = 0.0, -1.0
    for x in np.linspace(0.0, 1.0, grid.n_locations):
        v = deviation_payoff(params, behavior, deviator, float(x), x_other).payoff
        if v > best_v:
            best_x, best_v = float(x), v
    return best_x, best_v


def _segment_distance(endpoint_lo, endpoint_hi, x):
    """Vectorized integral of |t - x| over [endpoint_lo, endpoint_hi]."""
    mid = 0.5 * (endpoint_lo + endpoint_hi)
    length = endpoint_hi - endpoint_lo
    inside = 0.5 * ((x - endpoint_lo) ** 2 + (endpoint_hi - x) ** 2)
    return np.where(
        x <= endpoint_lo,
        (mid - x) * length,
        np.where(x >= endpoint_hi, (x - mid) * length, inside),
    )


def oracle_social_optimum(params: GameParams, grid: GridSpec) -> OptimumPoint:
    """Grid argmax of consumer welfare over the full (x1, x2, s1) box.

    The welfare separates into a popularity term in s1 and one distance
    integral per firm, so for each candidate split the best x1 and x2
    can be minimized independently; the search is effectively
    n_shares * n_locations instead of cubic. Ties resolve to the
    smallest grid location, which reports the idle firm at 0 in the
    concentrated regime.
    """
    xs = np.linspace(0.0, 1.0, grid.n_locations)
    ss = np.linspace(0.0, 1.0, grid.n_shares)
    s_col = ss[:, None]
    left = _segment_distance(np.zeros_like(s_col), s_col, xs[None, :])
    right = _segment_distance(s_col, np.ones_like(s_col), xs[None, :])
    i1 = np.argmin(left, axis=1)
    i2 = np.argmin(right, axis=1)
    popularity = params.a * (ss * ss + (1.0 - ss) ** 2)
    welfare = (
        params.theta
        + popularity
        - left[np.arange(len(ss)), i1]
        - right[np.arange(len(ss)), i2]
    )
    k = int(np.argmax(welfare))
    return OptimumPoint(float(xs[i1[k]]), float(xs[i2[k]]), float(ss[k]), float(welfare[k]))


def oracle_ne_region_scan(params: GameParams, behavior: BehaviorKind, grid: GridSpec) -> list:
    """All Nash equilibria on an n_locations x n_locations location grid.

    Every cell with x1 <= x2 is enumerated and each market equilibrium
    kept iff the Nash decision accepts it. Feeds the figure emitters and
    the diameter-bound checks.
    """
    xs = np.linspace(0.0, 1.0, grid.n_locations)
    profiles: list = []
    for i, x1 in enumerate(xs):
        for x2 in xs[i:]:
            loc = Locations(float(x1), float(x2))
            for outcome in enumerate_market_equilibria(params, loc):
                profile = EquilibriumProfile(loc, outcome)
                if is_nash(params, behavior, profile):
                    profiles.append(profile)
    return profiles


def oracle_consumer_welfare(
    params: GameParams, x1: float, x2: float, s1: float, n_consumers: int = 100_000
) -> float:
    """Riemann-sum welfare with n_consumers midpoint samples per segment."""
    a, theta = params.a, params.theta
    total = 0.0
    for lo, hi, x, share in ((0.0, s1, x1, s1), (s1, 1.0, x2, 1.0 - s1)):
        if hi <= lo:
            continue
        width = (hi - lo) / n_consumers
        t = lo + (np.arange(n_consumers) + 0.5) * width
        total += float(np.sum(theta + a * share - np.abs(t - x)) * width)
    return total

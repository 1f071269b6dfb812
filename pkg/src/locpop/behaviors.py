"""Firm behavior under equilibrium multiplicity and Nash analysis.

A firm weighing a deviation cannot know which market equilibrium the
consumers will land on afterwards, so its evaluation of the deviation
depends on its attitude: a pessimistic firm assumes the equilibrium that
minimizes its own share, an optimistic one the equilibrium that maximizes
it, and a neutral one averages over all equilibria with equal weight (one
weight per kind, even when two kinds happen to carry the same share).

A profile is a Nash equilibrium when neither firm's behavior-evaluated
best deviation beats its on-path share. For pessimistic firms the best
deviation has a closed form and the NE set is an explicit share interval;
for neutral and optimistic firms the best deviation is located by an
analytic candidate set plus a uniform grid with one local refinement
pass.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .model import (
    EquilibriumProfile,
    Kind,
    Locations,
    MarketOutcome,
    GameParams,
    _equilibria,
    distinct_shares,
    enumerate_market_equilibria,
    is_market_equilibrium,
)

__all__ = [
    "NE_TOL",
    "DEFAULT_DEVIATION_GRID",
    "BehaviorKind",
    "NoEquilibriumError",
    "DeviationReport",
    "NashInterval",
    "deviation_payoff",
    "best_deviation",
    "best_deviation_pessimistic",
    "is_nash",
    "pessimistic_nash_interval",
    "neutral_nash",
    "symmetric_pessimistic_nash_set",
    "nash_region_a_half",
    "nash_diameter_bounds_check",
]

# Weak-inequality slack for Nash decisions; absorbs grid noise on the
# searched (non-closed-form) deviation paths.
NE_TOL = 1e-9

# Default resolution of the uniform deviation grid.
DEFAULT_DEVIATION_GRID = 4001


class BehaviorKind(enum.Enum):
    """Attitude toward the multiplicity of market equilibria."""

    PESSIMISTIC = "pessimistic"
    NEUTRAL = "neutral"
    OPTIMISTIC = "optimistic"


class NoEquilibriumError(Exception):
    """Raised when a computation needs a Nash equilibrium that does not exist."""


@dataclass(frozen=True)
class DeviationReport:
    """Evaluation of one deviation.

    For :func:`deviation_payoff` results, ``payoff`` is exactly the
    min / mean / max of the deviator's share over ``outcomes_considered``
    according to the active behavior. ``coincident_shares`` flags
    boundary instances where two kinds carry the same share within
    1e-12 (the neutral mean still counts each kind once).
    """

    deviator: int
    location: float
    payoff: float
    outcomes_considered: tuple
    coincident_shares: bool = False

    def as_dict(self) -> dict:
        return {
            "deviator": self.deviator,
            "location": self.location,
            "payoff": self.payoff,
            "coincident_shares": self.coincident_shares,
            "outcomes_considered": [o.as_dict() for o in self.outcomes_considered],
        }


@dataclass(frozen=True)
class NashInterval:
    """Interval of firm-1 shares supportable as pessimistic NE.

    Raw bounds are kept as computed (they may leave [0, 1]); clamping
    happens only at query time so tests can inspect the raw values.
    Empty iff lo > hi.
    """

    lo: float
    hi: float

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def contains(self, s1: float, tol: float = NE_TOL) -> bool:
        return self.lo - tol <= s1 <= self.hi + tol

    def clamped(self):
        """Intersection with [0, 1], or None when empty."""
        lo = max(self.lo, 0.0)
        hi = min(self.hi, 1.0)
        if lo > hi:
            return None
        return (lo, hi)

    def as_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "empty": self.is_empty}


def _deviation_value(a: float, behavior: BehaviorKind, x_dev: float, x_other: float) -> float:
    """Behavior-aggregated share of a firm locating at x_dev against x_other."""
    if x_dev <= x_other:
        shares = [s for _, s in _equilibria(a, x_dev, x_other)]
    else:
        shares = [1.0 - s for _, s in _equilibria(a, x_other, x_dev)]
    if behavior is BehaviorKind.PESSIMISTIC:
        return min(shares)
    if behavior is BehaviorKind.OPTIMISTIC:
        return max(shares)
    return sum(shares) / len(shares)


def deviation_payoff(
    params: GameParams,
    behavior: BehaviorKind,
    deviator: int,
    x_dev: float,
    x_other: float,
) -> DeviationReport:
    """Evaluate the deviation of ``deviator`` to ``x_dev`` against ``x_other``.

    Enumerates the market equilibria at the deviated location pair,
    extracts the deviator's share in each, and aggregates by min
    (pessimistic), max (optimistic) or the arithmetic mean over the
    enumerated kinds (neutral).
    """
    if deviator not in (1, 2):
        raise ValueError(f"deviator must be firm 1 or 2, got {deviator}")
    if not 0.0 <= x_dev <= 1.0 or not 0.0 <= x_other <= 1.0:
        raise ValueError("deviation and opponent locations must lie in [0, 1]")
    loc = Locations.from_unordered(x_dev, x_other)
    outcomes = tuple(enumerate_market_equilibria(params, loc))
    payoff = _deviation_value(params.a, behavior, x_dev, x_other)
    return DeviationReport(
        deviator=deviator,
        location=x_dev,
        payoff=payoff,
        outcomes_considered=outcomes,
        coincident_shares=len(distinct_shares(outcomes)) < len(outcomes),
    )


def best_deviation_pessimistic(
    params: GameParams, deviator: int, x_other: float
) -> DeviationReport:
    """Best pessimistic deviation against an opponent at ``x_other``.

    Any deviation within ``a`` of the opponent admits a zero-share
    equilibrium, so a pessimist only gains by jumping outside that band,
    and the closest admissible point on the far side of the market is
    best. Against x_other <= 1/2 that is x_other + a with value
    ``1 - x_other / (1 - a)`` (a supremum, approached from the right of
    the reported location); mirrored for x_other >= 1/2. When the band
    covers the whole interval every deviation is worth 0.

    The reported payoff is that supremum, so it is not the pessimistic
    aggregate over ``outcomes_considered`` at the reported location
    itself (which always contains a zero-share outcome).
    """
    if deviator not in (1, 2):
        raise ValueError(f"deviator must be firm 1 or 2, got {deviator}")
    if not 0.0 <= x_other <= 1.0:
        raise ValueError(f"opponent location must lie in [0, 1], got {x_other}")
    a = params.a
    if x_other <= 0.5:
        if x_other + a >= 1.0:
            location, payoff = min(x_other + a, 1.0), 0.0
        else:
            location, payoff = x_other + a, 1.0 - x_other / (1.0 - a)
    else:
        if x_other - a <= 0.0:
            location, payoff = max(x_other - a, 0.0), 0.0
        else:
            location, payoff = x_other - a, 1.0 - (1.0 - x_other) / (1.0 - a)
    loc = Locations.from_unordered(location, x_other)
    outcomes = tuple(enumerate_market_equilibria(params, loc))
    return DeviationReport(
        deviator=deviator,
        location=location,
        payoff=payoff,
        outcomes_considered=outcomes,
        coincident_shares=len(distinct_shares(outcomes)) < len(outcomes),
    )


def _candidate_deviations(a: float, x_other: float) -> np.ndarray:
    """Breakpoints of the deviation-payoff map plus a few analytic guesses.

    The payoff is piecewise linear in the deviation location with
    breakpoints at the band edges x_other +- a and at the existence
    boundaries of kinds II/IV; the interval endpoints, the opponent's
    own location and its reflection are added for good measure.
    """
    cands = [0.0, 1.0, x_other, 1.0 - x_other, x_other - a, x_other + a]
    if a != 0.5:
        cands.append(a + (1.0 - 2.0 * a) * x_other)
        cands.append((x_other - a) / (1.0 - 2.0 * a))
    return np.array([c for c in cands if 0.0 <= c <= 1.0])


def _search_best_deviation(
    a: float,
    behavior: BehaviorKind,
    x_other: float,
    grid_points: int,
    exclude: float | None = None,
):
    """Maximize the deviation payoff over [0, 1].

    Evaluates the analytic candidates and a uniform grid, then runs one
    bounded scalar-minimization refinement pass on the best bracket,
    keeping the best point seen. ``exclude`` removes a single location
    (the deviator's current position) from consideration.
    """
    xs = np.unique(
        np.concatenate([np.linspace(0.0, 1.0, grid_points), _candidate_deviations(a, x_other)])
    )
    if exclude is not None:
        xs = xs[np.abs(xs - exclude) > 1e-12]
    values = np.array([_deviation_value(a, behavior, float(x), x_other) for x in xs])
    i = int(np.argmax(values))
    best_x, best_v = float(xs[i]), float(values[i])

    lo = float(xs[i - 1]) if i > 0 else float(xs[0])
    hi = float(xs[i + 1]) if i + 1 < len(xs) else float(xs[-1])
    if hi - lo > 1e-12:
        seen = {"x": best_x, "v": best_v}

        def negated(x: float) -> float:
            x = float(x)
            if exclude is not None and abs(x - exclude) <= 1e-12:
                return 1.0  # dominated; payoffs live in [0, 1]
            v = _deviation_value(a, behavior, x, x_other)
            if v > seen["v"]:
                seen["x"], seen["v"] = x, v
            return -v

        minimize_scalar(
            negated, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
        )
        best_x, best_v = seen["x"], seen["v"]
    return best_x, best_v


@functools.lru_cache(maxsize=65536)
def _cached_best_deviation(a: float, behavior: BehaviorKind, x_other: float, grid_points: int):
    """Memoized search without exclusion; region scans revisit x_other often."""
    return _search_best_deviation(a, behavior, x_other, grid_points)


def best_deviation(
    params: GameParams,
    behavior: BehaviorKind,
    deviator: int,
    x_other: float,
    *,
    grid_points: int = DEFAULT_DEVIATION_GRID,
) -> DeviationReport:
    """Best deviation for any behavior; closed form when pessimistic."""
    if behavior is BehaviorKind.PESSIMISTIC:
        return best_deviation_pessimistic(params, deviator, x_other)
    x, _ = _cached_best_deviation(params.a, behavior, x_other, grid_points)
    return deviation_payoff(params, behavior, deviator, x, x_other)


def is_nash(
    params: GameParams,
    behavior: BehaviorKind,
    profile: EquilibriumProfile,
    *,
    grid_points: int = DEFAULT_DEVIATION_GRID,
    tol: float = NE_TOL,
) -> bool:
    """Decide whether a profile is a Nash equilibrium under ``behavior``.

    The profile's outcome must be a market equilibrium for its locations
    (ValueError otherwise). Each firm's on-path share is compared against
    its best deviation payoff with weak-inequality slack ``tol``.
    Deviations to the firm's own current location are not deviations; the
    memoized search ignores that exclusion and a re-search enforces it in
    the rare case the unconstrained maximizer is the current location.
    """
    loc = profile.locations
    if not is_market_equilibrium(params, loc, profile.s1):
        raise ValueError("profile outcome is not a market equilibrium for its locations")
    checks = (
        (1, profile.s1, loc.x1, loc.x2),
        (2, profile.s2, loc.x2, loc.x1),
    )
    for firm, own_share, own_x, opp_x in checks:
        if behavior is BehaviorKind.PESSIMISTIC:
            if own_share < best_deviation_pessimistic(params, firm, opp_x).payoff - tol:
                return False
            continue
        argmax, value = _cached_best_deviation(params.a, behavior, opp_x, grid_points)
        if own_share >= value - tol:
            continue
        if abs(argmax - own_x) > 1e-12:
            return False
        _, value_excl = _search_best_deviation(
            params.a, behavior, opp_x, grid_points, exclude=own_x
        )
        if own_share < value_excl - tol:
            return False
    return True


def pessimistic_nash_interval(params: GameParams, loc: Locations) -> NashInterval:
    """Shares supportable as pessimistic NE at ``loc``.

    A market equilibrium (s1, 1-s1) at (x1, x2) is a pessimistic NE iff
    s1 lies in this interval. The lower bound is firm 1's best deviation
    value, the upper bound the complement of firm 2's:

    * lo = (1 - x2 - a) / (1 - a)  if x2 <= 1/2, else (x2 - a) / (1 - a)
    * hi = x1 / (1 - a)            if x1 <= 1/2, else (1 - x1) / (1 - a)
    """
    a = params.a
    lo = (1.0 - loc.x2 - a) / (1.0 - a) if loc.x2 <= 0.5 else (loc.x2 - a) / (1.0 - a)
    hi = loc.x1 / (1.0 - a) if loc.x1 <= 0.5 else (1.0 - loc.x1) / (1.0 - a)
    return NashInterval(lo, hi)


def neutral_nash(params: GameParams):
    """The unique neutral NE, or None when a > 1/2.

    For a <= 1/2 both firms co-locate at the center and split the market
    evenly (minimal differentiation); for larger externalities a firm
    always gains on average by stepping away, so no NE exists.
    """
    if params.a > 0.5:
        return None
    return EquilibriumProfile(Locations(0.5, 0.5), MarketOutcome(Kind.III, 0.5))


def symmetric_pessimistic_nash_set(params: GameParams, x1: float, tol: float = NE_TOL):
    """Shares s1 making (x1, 1 - x1, s1, 1 - s1) a pessimistic NE.

    Requires x1 <= 1/2. The set grows as the firms approach the center:

    * empty below (1 - a)/2 (locations too far apart),
    * {1/2} from (1 - a)/2,
    * additionally 1/2 +- (1 - 2 x1)/(2 a) from (1 - a^2)/2,
    * additionally {0, 1} from 1 - a.

    Returns the sorted tuple of distinct values (union at overlapping
    region boundaries). The NE-decision slack ``tol`` is mapped through
    the constraint algebra onto each threshold (factor 1 - a for the
    outer regions, a (1 - a) for the middle one) so the characterization
    agrees with :func:`is_nash` decision-for-decision, including at
    region boundaries that are not floating-point representable.
    """
    if not 0.0 <= x1 <= 0.5:
        raise ValueError(f"symmetric analysis needs x1 in [0, 1/2], got {x1}")
    a = params.a
    values: list = []
    if x1 >= (1.0 - a) / 2.0 - tol * (1.0 - a):
        values.append(0.5)
    if x1 >= (1.0 - a * a) / 2.0 - tol * a * (1.0 - a):
        delta = (1.0 - 2.0 * x1) / (2.0 * a)
        values.extend([0.5 - delta, 0.5 + delta])
    if x1 >= 1.0 - a - tol * (1.0 - a):
        values.extend([0.0, 1.0])
    out: list = []
    for v in sorted(values):
        if not out or v - out[-1] > 1e-12:
            out.append(v)
    return tuple(out)


def nash_region_a_half(x1: float, x2: float, tol: float = NE_TOL) -> set:
    """Kinds forming a pessimistic NE at (x1, x2) when a = 1/2.

    Implements the explicit membership inequalities of the a = 1/2 NE
    map, with the same weak-inequality slack used by the NE decision so
    grid scans agree exactly. The region is non-convex even for fixed
    x1 (kind IV pockets below the diagonal detach from the rest).
    """
    if not 0.0 <= x1 <= x2 <= 1.0:
        raise ValueError(f"need 0 <= x1 <= x2 <= 1, got ({x1}, {x2})")
    kinds: set = set()
    if abs(x2 - 0.5) <= tol:
        kinds.add(Kind.I)
    if (x1 <= 0.5 + tol and 0.5 - tol <= x2 <= (3.0 + 2.0 * x1) / 6.0 + tol) or (
        0.5 - tol <= x1 <= 0.75 + tol and x2 <= (3.0 + 2.0 * x1) / 6.0 + tol
    ):
        kinds.add(Kind.II)
    if x1 <= 0.5 + tol and 0.5 - tol <= x2 <= (1.0 + 2.0 * x1) / 2.0 + tol:
        kinds.add(Kind.III)
    if 0.25 - tol <= x1 <= 0.5 + tol and x2 <= (-1.0 + 6.0 * x1) / 2.0 + tol:
        kinds.add(Kind.IV)
    if abs(x1 - 0.5) <= tol:
        kinds.add(Kind.V)
    return kinds


def nash_diameter_bounds_check(
    params: GameParams, profile: EquilibriumProfile, tol: float = 1e-12
) -> bool:
    """Diameter bounds every pessimistic NE satisfies.

    Locations differ by at most ``a`` and shares by at most
    ``a / (1 - a)``; both vanish as the externality does.
    """
    a = params.a
    if profile.locations.gap > a + tol:
        return False
    return abs(profile.s2 - profile.s1) <= a / (1.0 - a) + tol

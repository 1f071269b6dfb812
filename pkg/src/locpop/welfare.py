"""Consumer surplus, welfare optima, and efficiency ratios.

Welfare here is the consumers' side only: total firm profit is constant
(shares sum to one), so every comparison between outcomes reduces to the
integral of consumer utilities over [0, 1]. Welfare values are plain
floats.

The price of anarchy (PoA) divides the optimal welfare by the welfare of
the worst Nash equilibrium, the price of stability (PoS) by the best.
Both are computed from closed forms, with the brute-force grid routines
in :mod:`locpop.oracle` serving as the independent check, never the
reverse. Optimistic firms admit no NE, and neutral firms none beyond
a = 1/2, so those requests raise :class:`NoEquilibriumError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .behaviors import BehaviorKind, NoEquilibriumError
from .model import (
    EquilibriumProfile,
    GameParams,
    Kind,
    Locations,
    MarketOutcome,
)

__all__ = [
    "BEST_NE_BREAKPOINT",
    "OptimumPoint",
    "ProfileWelfare",
    "RatioReport",
    "consumer_welfare",
    "social_optimum",
    "worst_ne_pessimistic",
    "best_ne_pessimistic",
    "poa",
    "pos",
    "poa_minimizer_pessimistic",
]

# Externality level where the two interior best-NE regimes exchange
# optimality; both closed forms give welfare exactly theta there.
BEST_NE_BREAKPOINT = (2.0 - math.sqrt(2.0)) / 2.0


@dataclass(frozen=True)
class OptimumPoint:
    """An unconstrained welfare maximizer (no equilibrium requirement)."""

    x1: float
    x2: float
    s1: float
    welfare: float

    def as_dict(self) -> dict:
        return {"x1": self.x1, "x2": self.x2, "s1": self.s1, "welfare": self.welfare}


@dataclass(frozen=True)
class ProfileWelfare:
    """An equilibrium profile together with its consumer welfare."""

    profile: EquilibriumProfile
    welfare: float

    def as_dict(self) -> dict:
        return {**self.profile.as_dict(), "welfare": self.welfare}


@dataclass(frozen=True)
class RatioReport:
    """One efficiency ratio: the optimum over an extremal NE welfare."""

    value: float
    optimum: OptimumPoint
    extremal_ne: ProfileWelfare

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "optimum": self.optimum.as_dict(),
            "extremal_ne": self.extremal_ne.as_dict(),
        }


def _abs_distance_integral(alpha: float, beta: float, x: float) -> float:
    """Exact integral of |t - x| over [alpha, beta] (alpha <= beta)."""
    if x <= alpha:
        return 0.5 * (beta * beta - alpha * alpha) - x * (beta - alpha)
    if x >= beta:
        return x * (beta - alpha) - 0.5 * (beta * beta - alpha * alpha)
    return 0.5 * ((x - alpha) ** 2 + (beta - x) ** 2)


def consumer_welfare(params: GameParams, x1: float, x2: float, s1: float) -> float:
    """Total consumer utility at locations (x1, x2) and split s1.

    Consumers on [0, s1) buy from the firm at x1, the rest from the firm
    at x2, so

        W = theta + a s1^2 + a (1 - s1)^2
            - int_0^s1 |t - x1| dt - int_s1^1 |t - x2| dt.

    The distance integrals use the exact piecewise-quadratic
    antiderivative, split at the firm location when it falls inside the
    integration range. The locations need not be ordered and s1 need not
    lie between them (tail splits place it outside).
    """
    for name, value in (("x1", x1), ("x2", x2), ("s1", s1)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {value}")
    a = params.a
    popularity = a * (s1 * s1 + (1.0 - s1) * (1.0 - s1))
    travel = _abs_distance_integral(0.0, s1, x1) + _abs_distance_integral(s1, 1.0, x2)
    return params.theta + popularity - travel


def social_optimum(params: GameParams):
    """Unconstrained welfare maximizers, as a tuple of OptimumPoint.

    Below a = 1/4 the planner spreads the firms at the quartiles and
    splits demand evenly: welfare theta - 1/8 + a/2. Above, popularity
    dominates and everyone buys from a single central firm: welfare
    theta - 1/4 + a, with the idle firm's position immaterial (reported
    canonically at 0; the mirror with s1 = 1 is equally optimal). At
    a = 1/4 both configurations tie and both are returned.
    """
    a, theta = params.a, params.theta
    spread = OptimumPoint(0.25, 0.75, 0.5, theta - 0.125 + a / 2.0)
    concentrated = OptimumPoint(0.0, 0.5, 0.0, theta - 0.25 + a)
    if a < 0.25:
        return (spread,)
    if a > 0.25:
        return (concentrated,)
    return (spread, concentrated)


def worst_ne_pessimistic(params: GameParams) -> ProfileWelfare:
    """The pessimistic NE minimizing consumer welfare.

    Both firms co-locate at (1 - a)/2 and split evenly; the welfare is
    theta - (1 - a)^2 / 4 (computed here by direct evaluation).
    """
    x = (1.0 - params.a) / 2.0
    profile = EquilibriumProfile(Locations(x, x), MarketOutcome(Kind.IV, 0.5))
    return ProfileWelfare(profile, consumer_welfare(params, x, x, 0.5))


def _near(a: float, b: float, tol: float = 1e-12) -> bool:
    return abs(a - b) <= tol


def best_ne_pessimistic(params: GameParams) -> ProfileWelfare:
    """The pessimistic NE maximizing consumer welfare.

    Three regimes in a:

    * a <= (2 - sqrt(2))/2: maximal in-band spread around the center,
      ((1-a)/2, (1+a)/2) with an even split; welfare
      theta - (1 - 4a + 2a^2)/4.
    * up to 1/2: (1/2 - a, 1/2) with the interior split
      (1 - 2a)/(2(1 - a)); welfare
      theta - (1 - 6a + 12a^2 - 12a^3 + 4a^4)/(4 (1-a)^2).
    * beyond 1/2: (0, 1/2) with s1 = 0, which is the social optimum
      itself; welfare theta - 1/4 + a.

    Welfare is evaluated via :func:`consumer_welfare` at the stated
    profile. Adjacent regime formulas agree at the breakpoints; this is
    asserted when a falls on one.
    """
    a = params.a

    def branch_low():
        loc = Locations((1.0 - a) / 2.0, (1.0 + a) / 2.0)
        return EquilibriumProfile(loc, MarketOutcome(Kind.III, 0.5))

    def branch_mid():
        s1 = (1.0 - 2.0 * a) / (2.0 * (1.0 - a))
        loc = Locations(0.5 - a, 0.5)
        return EquilibriumProfile(loc, MarketOutcome(Kind.III, s1))

    def branch_high():
        return EquilibriumProfile(Locations(0.0, 0.5), MarketOutcome(Kind.I, 0.0))

    if a <= BEST_NE_BREAKPOINT:
        profile = branch_low()
        neighbor = branch_mid() if _near(a, BEST_NE_BREAKPOINT) else None
    elif a <= 0.5:
        profile = branch_mid()
        neighbor = branch_high() if _near(a, 0.5) else None
    else:
        profile = branch_high()
        neighbor = None
    welfare = consumer_welfare(params, profile.x1, profile.x2, profile.s1)
    if neighbor is not None:
        other = consumer_welfare(params, neighbor.x1, neighbor.x2, neighbor.s1)
        assert abs(other - welfare) <= 1e-9, "best-NE regimes disagree at a breakpoint"
    return ProfileWelfare(profile, welfare)


def _optimum_welfare(a: float, theta: float) -> float:
    return theta - (0.125 - a / 2.0) if a <= 0.25 else theta - (0.25 - a)


def _poa_value_pessimistic(a: float, theta: float) -> float:
    return _optimum_welfare(a, theta) / (theta - (1.0 - a) ** 2 / 4.0)


def _poa_value_neutral(a: float, theta: float) -> float:
    return _optimum_welfare(a, theta) / (theta - (0.25 - a / 2.0))


def _pos_value_pessimistic(a: float, theta: float) -> float:
    if a > 0.5:
        return 1.0
    if a <= BEST_NE_BREAKPOINT:
        denom = theta - (1.0 - 4.0 * a + 2.0 * a * a) / 4.0
    else:
        denom = theta - (1.0 - 4.0 * a + 2.0 * a * a) * (1.0 - 2.0 * a + 2.0 * a * a) / (
            4.0 * (1.0 - a) ** 2
        )
    return _optimum_welfare(a, theta) / denom


def _neutral_ne_welfare(params: GameParams) -> ProfileWelfare:
    profile = EquilibriumProfile(Locations(0.5, 0.5), MarketOutcome(Kind.III, 0.5))
    return ProfileWelfare(profile, consumer_welfare(params, 0.5, 0.5, 0.5))


def _require_equilibria(params: GameParams, behavior: BehaviorKind):
    if behavior is BehaviorKind.OPTIMISTIC:
        raise NoEquilibriumError("no equilibrium exists for optimistic firms")
    if behavior is BehaviorKind.NEUTRAL and params.a > 0.5:
        raise NoEquilibriumError("no equilibrium exists for neutral firms with a > 1/2")


def poa(params: GameParams, behavior: BehaviorKind) -> RatioReport:
    """Price of anarchy: optimal welfare over the worst NE welfare.

    Neutral firms have a unique NE, so their PoA equals their PoS:
    [theta - (1/8 - a/2)] / [theta - (1/4 - a/2)] up to a = 1/4 and
    [theta - (1/4 - a)] / [theta - (1/4 - a/2)] beyond. Pessimistic
    firms divide the optimum by theta - (1 - a)^2 / 4.
    """
    _require_equilibria(params, behavior)
    a, theta = params.a, params.theta
    optimum = social_optimum(params)[0]
    if behavior is BehaviorKind.NEUTRAL:
        return RatioReport(_poa_value_neutral(a, theta), optimum, _neutral_ne_welfare(params))
    return RatioReport(_poa_value_pessimistic(a, theta), optimum, worst_ne_pessimistic(params))


def pos(params: GameParams, behavior: BehaviorKind) -> RatioReport:
    """Price of stability: optimal welfare over the best NE welfare.

    Neutral firms: identical to :func:`poa`. Pessimistic firms follow
    the three best-NE regimes and the ratio is exactly 1 for a > 1/2,
    where the best NE coincides with the social optimum.
    """
    _require_equilibria(params, behavior)
    a, theta = params.a, params.theta
    optimum = social_optimum(params)[0]
    if behavior is BehaviorKind.NEUTRAL:
        return RatioReport(_poa_value_neutral(a, theta), optimum, _neutral_ne_welfare(params))
    return RatioReport(_pos_value_pessimistic(a, theta), optimum, best_ne_pessimistic(params))


def poa_minimizer_pessimistic(theta: float) -> float:
    """Externality level minimizing the pessimistic price of anarchy.

    Closed form ``(1 - 8 theta + sqrt(64 theta^2 - 16 theta + 9)) / 4``;
    local minimality is asserted by a finite-difference sign check. At
    theta = 1 this is (sqrt(57) - 7)/4, about 0.137, with PoA about
    1.159.
    """
    if not theta >= 1.0:
        raise ValueError(f"theta must be >= 1, got {theta}")
    a_star = (1.0 - 8.0 * theta + math.sqrt(64.0 * theta * theta - 16.0 * theta + 9.0)) / 4.0
    h = min(1e-4, a_star / 2.0)
    center = _poa_value_pessimistic(a_star, theta)
    assert _poa_value_pessimistic(a_star - h, theta) >= center, "not a local minimum (left)"
    assert _poa_value_pessimistic(a_star + h, theta) >= center, "not a local minimum (right)"
    return a_star

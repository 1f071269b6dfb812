#!/usr/bin/env python3
"""Tour of market splits: how popularity multiplies consumer equilibria.

Consumers on [0, 1] trade off distance against popularity: buying at
location x with market share s is worth theta + a*s - |v - x|. Because
the shares feed back into the choices, the demand split is a fixed
point, and when the firms sit close together several fixed points
coexist. This script walks through the taxonomy and cross-checks the
closed forms against the brute-force grid oracle.
"""

from locpop import (
    GameParams,
    GridSpec,
    Locations,
    consumer_utility,
    distinct_shares,
    enumerate_market_equilibria,
    market_equilibrium_count,
    oracle_market_equilibria,
)


def show(params, x1, x2):
    loc = Locations(x1, x2)
    outcomes = enumerate_market_equilibria(params, loc)
    report = market_equilibrium_count(params, loc)
    gap = "wide" if loc.gap > params.a else "narrow"
    print(f"\n  a={params.a:.2f}  locations=({x1:.3f}, {x2:.3f})  gap is {gap}")
    for o in outcomes:
        print(f"    kind {o.kind.value:>6s}:  s1={o.s1:.6f}  s2={o.s2:.6f}")
    if report.tight:
        print(f"    tight conditions: {sorted(report.tight)}")
    return outcomes


print("=" * 66)
print("1. A single split when the firms are far apart")
print("=" * 66)
params = GameParams(0.3)
show(params, 0.2, 0.8)
print("""
  The indifferent consumer sits between the firms; as the externality
  vanishes the cut approaches the plain midpoint (x1 + x2) / 2.""")
for a in (0.2, 0.05, 0.005):
    s = enumerate_market_equilibria(GameParams(a), Locations(0.2, 0.8))[0].s1
    print(f"    a={a:<6} interior cut = {s:.6f}")

print()
print("=" * 66)
print("2. Up to five splits when the firms compete closely")
print("=" * 66)
params = GameParams(0.5)
outcomes = show(params, 1 / 3, 2 / 3)

print("""
  The second split leaves every consumer left of x1 exactly indifferent:
  with shares (1/6, 5/6) the consumer at v = 1/6 nets the same utility
  from both firms (theta cancels from the comparison).""")
u1 = consumer_utility(params, 1 / 6, 1 / 3, outcomes[1].s1)
u2 = consumer_utility(params, 1 / 6, 2 / 3, outcomes[1].s2)
print(f"    utility from firm 1: theta + {u1 - params.theta:+.6f}")
print(f"    utility from firm 2: theta + {u2 - params.theta:+.6f}")

print()
print("=" * 66)
print("3. Three splits when only one tail can be indifferent")
print("=" * 66)
show(GameParams(0.6), 0.0, 0.5)
print("""
  Kinds I and V always survive inside the narrow regime, and exactly one
  of the tail splits II / IV exists unless the interior split III does;
  that coupling forces the count to be 1, 3 or 5, never anything else.""")

print()
print("=" * 66)
print("4. The grid oracle re-derives every split from the definition")
print("=" * 66)
grid = GridSpec()
for a, x1, x2 in ((0.5, 1 / 3, 2 / 3), (0.6, 0.0, 0.5), (0.1, 0.1, 0.9)):
    params = GameParams(a)
    loc = Locations(x1, x2)
    closed = distinct_shares(enumerate_market_equilibria(params, loc))
    clusters = oracle_market_equilibria(params, loc, grid)
    print(f"  a={a}: closed {['%.4f' % s for s in closed]}"
          f"  oracle {['%.4f' % c for c in clusters]}")
print("\n  The oracle checks the defining inequalities at 10^4 consumers for")
print("  2001 candidate cuts and recovers the same splits every time.")

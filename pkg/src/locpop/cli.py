"""Command-line front end: single computations, sweeps, figure data, verify.

Subcommands
-----------
market-eq         enumerate market equilibria at one location pair
nash-check        Nash verdict for one profile, with the binding deviation
nash-region       (x1, x2) scan at fixed a: every outcome with its NE flag
symmetric-region  NE shares along the symmetric diagonal x2 = 1 - x1
welfare           consumer welfare at one (x1, x2, s1)
social-opt        unconstrained welfare maximizer(s)
poa-curve         price of anarchy over an a-grid (or a single --a)
pos-curve         price of stability over an a-grid (or a single --a)
figures           emit all figure datasets into a directory
verify            run the oracle cross-check suites; nonzero exit on failure

Output is JSON (one document) or CSV (schema-versioned header); floats
are formatted to 12 significant digits so identical invocations are
byte-identical. Files are written atomically.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

import numpy as np

from .behaviors import (
    DEFAULT_DEVIATION_GRID,
    BehaviorKind,
    NoEquilibriumError,
    _search_best_deviation,
    best_deviation_pessimistic,
    deviation_payoff,
    is_nash,
    nash_diameter_bounds_check,
    pessimistic_nash_interval,
    symmetric_pessimistic_nash_set,
)
from .model import (
    EquilibriumProfile,
    GameParams,
    Locations,
    distinct_shares,
    enumerate_market_equilibria,
    mirror_profile,
)
from .oracle import (
    GridSpec,
    oracle_best_deviation,
    oracle_market_equilibria,
    oracle_social_optimum,
)
from .welfare import consumer_welfare, poa, pos, social_optimum

A_GRID_STEP = 0.005  # default sweep: 0.005 .. 0.995
REGION_GRID_DEFAULT = 201


def _fmt(x) -> str:
    return f"{float(x):.12g}"


def _round_floats(obj):
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _json_doc(payload: dict) -> str:
    return json.dumps(_round_floats(payload), indent=2) + "\n"


def _csv_doc(header, rows) -> str:
    buf = io.StringIO()
    buf.write("# schema=1\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text: str):
    if getattr(args, "out", None):
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def _params(args) -> GameParams:
    return GameParams(args.a, args.theta)


def _behavior(args) -> BehaviorKind:
    return BehaviorKind(args.behavior)


def _a_grid() -> np.ndarray:
    return np.arange(1, 200) * A_GRID_STEP


# ---------------------------------------------------------------------------
# subcommands


def _cmd_market_eq(args) -> int:
    params = _params(args)
    loc = Locations.from_unordered(args.x1, args.x2)
    outcomes = enumerate_market_equilibria(params, loc)
    if args.format == "json":
        _emit(args, _json_doc({
            "a": params.a, "theta": params.theta,
            "x1": loc.x1, "x2": loc.x2,
            "count": len(outcomes),
            "outcomes": [o.as_dict() for o in outcomes],
        }))
    else:
        rows = [(o.kind.value, o.s1, o.s2) for o in outcomes]
        _emit(args, _csv_doc(("kind", "s1", "s2"), rows))
    return 0


def _match_outcome(params, loc, s1):
    for outcome in enumerate_market_equilibria(params, loc):
        if abs(outcome.s1 - s1) <= 1e-9:
            return outcome
    return None


def _best_deviation_excluding(params, behavior, firm, x_opp, own_x):
    if behavior is BehaviorKind.PESSIMISTIC:
        return best_deviation_pessimistic(params, firm, x_opp)
    x, _ = _search_best_deviation(
        params.a, behavior, x_opp, DEFAULT_DEVIATION_GRID, exclude=own_x
    )
    return deviation_payoff(params, behavior, firm, x, x_opp)


def _cmd_nash_check(args) -> int:
    params = _params(args)
    behavior = _behavior(args)
    loc = Locations.from_unordered(args.x1, args.x2)
    outcome = _match_outcome(params, loc, args.s1)
    if outcome is None:
        raise ValueError(
            f"s1={args.s1} is not a market equilibrium at ({loc.x1}, {loc.x2})"
        )
    profile = EquilibriumProfile(loc, outcome)
    verdict = is_nash(params, behavior, profile)
    rep1 = _best_deviation_excluding(params, behavior, 1, loc.x2, loc.x1)
    rep2 = _best_deviation_excluding(params, behavior, 2, loc.x1, loc.x2)
    binding = rep1 if rep1.payoff - profile.s1 >= rep2.payoff - profile.s2 else rep2
    payload = {
        "a": params.a, "theta": params.theta, "behavior": behavior.value,
        "x1": loc.x1, "x2": loc.x2, "s1": outcome.s1, "kind": outcome.kind.value,
        "is_nash": verdict,
        "binding_deviation": {
            "deviator": binding.deviator,
            "location": binding.location,
            "payoff": binding.payoff,
        },
    }
    if behavior is BehaviorKind.PESSIMISTIC:
        payload["support_interval"] = pessimistic_nash_interval(params, loc).as_dict()
    if args.format == "json":
        _emit(args, _json_doc(payload))
    else:
        header = ("a", "theta", "behavior", "x1", "x2", "s1", "kind", "is_nash",
                  "deviator", "deviation_location", "deviation_payoff")
        row = (params.a, params.theta, behavior.value, loc.x1, loc.x2, outcome.s1,
               outcome.kind.value, int(verdict), binding.deviator,
               binding.location, binding.payoff)
        _emit(args, _csv_doc(header, [row]))
    return 0


def _region_rows(params, behavior, n_locations):
    rows = []
    xs = np.linspace(0.0, 1.0, n_locations)
    for i, x1 in enumerate(xs):
        for x2 in xs[i:]:
            loc = Locations(float(x1), float(x2))
            for outcome in enumerate_market_equilibria(params, loc):
                profile = EquilibriumProfile(loc, outcome)
                ne = is_nash(params, behavior, profile)
                w = consumer_welfare(params, loc.x1, loc.x2, outcome.s1)
                rows.append((params.a, loc.x1, loc.x2, outcome.kind.value,
                             outcome.s1, int(ne), w))
    return rows


def _cmd_nash_region(args) -> int:
    params = _params(args)
    behavior = _behavior(args)
    n = args.grid_locations or REGION_GRID_DEFAULT
    rows = _region_rows(params, behavior, n)
    header = ("a", "x1", "x2", "kind", "s1", "is_ne", "welfare")
    if args.format == "json":
        _emit(args, _json_doc({
            "behavior": behavior.value, "theta": params.theta,
            "rows": [dict(zip(header, r)) for r in rows],
        }))
    else:
        _emit(args, _csv_doc(header, rows))
    return 0


def _symmetric_rows(params, n_points):
    rows = []
    for x1 in np.linspace(0.0, 0.5, n_points):
        for s1 in symmetric_pessimistic_nash_set(params, float(x1)):
            rows.append((params.a, float(x1), s1))
    return rows


def _cmd_symmetric_region(args) -> int:
    params = _params(args)
    rows = _symmetric_rows(params, args.grid_locations or 501)
    header = ("a", "x1", "s1")
    if args.format == "json":
        _emit(args, _json_doc({"rows": [dict(zip(header, r)) for r in rows]}))
    else:
        _emit(args, _csv_doc(header, rows))
    return 0


def _cmd_welfare(args) -> int:
    params = _params(args)
    w = consumer_welfare(params, args.x1, args.x2, args.s1)
    payload = {"a": params.a, "theta": params.theta, "x1": args.x1,
               "x2": args.x2, "s1": args.s1, "welfare": w}
    if args.format == "json":
        _emit(args, _json_doc(payload))
    else:
        _emit(args, _csv_doc(tuple(payload), [tuple(payload.values())]))
    return 0


def _cmd_social_opt(args) -> int:
    params = _params(args)
    optima = social_optimum(params)
    if args.format == "json":
        _emit(args, _json_doc({"a": params.a, "theta": params.theta,
                               "optima": [o.as_dict() for o in optima]}))
    else:
        header = ("a", "theta", "x1", "x2", "s1", "welfare")
        rows = [(params.a, params.theta, o.x1, o.x2, o.s1, o.welfare) for o in optima]
        _emit(args, _csv_doc(header, rows))
    return 0


def _ratio_rows(behavior, theta, ratio_fn, a_values):
    rows = []
    for a in a_values:
        params = GameParams(float(a), theta)
        report = ratio_fn(params, behavior)
        ne = report.extremal_ne
        rows.append((
            params.a, theta, behavior.value, report.value,
            report.optimum.x1, report.optimum.x2, report.optimum.s1,
            report.optimum.welfare,
            ne.profile.x1, ne.profile.x2, ne.profile.s1, ne.welfare,
        ))
    return rows


def _cmd_ratio_curve(args, ratio_fn, label) -> int:
    behavior = _behavior(args)
    if behavior is BehaviorKind.OPTIMISTIC:
        raise NoEquilibriumError("no equilibrium exists for optimistic firms")
    if args.a is not None:
        a_values = [args.a]
        # single-point request: let the ratio raise for neutral a > 1/2
    else:
        grid = _a_grid()
        if behavior is BehaviorKind.NEUTRAL:
            grid = grid[grid <= 0.5]
        a_values = grid
    rows = _ratio_rows(behavior, args.theta, ratio_fn, a_values)
    header = ("a", "theta", "behavior", label,
              "opt_x1", "opt_x2", "opt_s1", "opt_welfare",
              "ne_x1", "ne_x2", "ne_s1", "ne_welfare")
    if args.format == "json":
        _emit(args, _json_doc({"rows": [dict(zip(header, r)) for r in rows]}))
    else:
        _emit(args, _csv_doc(header, rows))
    return 0


def _cmd_figures(args) -> int:
    outdir = args.out or "figures"
    os.makedirs(outdir, exist_ok=True)
    theta = args.theta
    written = []

    # symmetric NE shares over (a, x1)
    rows = []
    for a in _a_grid():
        rows.extend(_symmetric_rows(GameParams(float(a), theta), 201))
    _atomic_write(os.path.join(outdir, "symmetric_equilibria.csv"),
                  _csv_doc(("a", "x1", "s1"), rows))
    written.append("symmetric_equilibria.csv")

    # pessimistic NE map at a = 1/2
    rows = _region_rows(GameParams(0.5, theta), BehaviorKind.PESSIMISTIC,
                        REGION_GRID_DEFAULT)
    _atomic_write(os.path.join(outdir, "nash_region_a_half.csv"),
                  _csv_doc(("a", "x1", "x2", "kind", "s1", "is_ne", "welfare"), rows))
    written.append("nash_region_a_half.csv")

    header = ("a", "theta", "behavior", "value",
              "opt_x1", "opt_x2", "opt_s1", "opt_welfare",
              "ne_x1", "ne_x2", "ne_s1", "ne_welfare")
    neutral_grid = _a_grid()
    neutral_grid = neutral_grid[neutral_grid <= 0.5]
    for name, behavior, ratio_fn, grid in (
        ("neutral_efficiency.csv", BehaviorKind.NEUTRAL, poa, neutral_grid),
        ("pessimistic_poa.csv", BehaviorKind.PESSIMISTIC, poa, _a_grid()),
        ("pessimistic_pos.csv", BehaviorKind.PESSIMISTIC, pos, _a_grid()),
    ):
        rows = _ratio_rows(behavior, theta, ratio_fn, grid)
        _atomic_write(os.path.join(outdir, name), _csv_doc(header, rows))
        written.append(name)

    for name in written:
        print(os.path.join(outdir, name))
    return 0


# ---------------------------------------------------------------------------
# verify


def _check(name: str, ok: bool, detail: str, failures: list):
    status = "ok" if ok else "FAIL"
    print(f"{status:4s} {name}: {detail}")
    if not ok:
        failures.append(name)


def _existence_margin(a, loc):
    one_minus_2a = 1.0 - 2.0 * a
    return min(
        abs(loc.gap - a),
        abs(loc.x2 - one_minus_2a * loc.x1 - a),
        abs(loc.x1 - one_minus_2a * loc.x2 - a),
    )


def _verify_market_equilibria(rng, grid, instances, failures):
    spacing = 1.0 / (grid.n_shares - 1)
    mismatches = 0
    for _ in range(instances):
        a = float(rng.uniform(0.02, 0.98))
        x1, x2 = sorted(rng.uniform(0.0, 1.0, size=2))
        params = GameParams(a)
        loc = Locations(float(x1), float(x2))
        closed = distinct_shares(enumerate_market_equilibria(params, loc))
        clusters = oracle_market_equilibria(params, loc, grid)
        slack = 1e-9 + (1.0 + a) * spacing
        ctol = 2.0 * spacing + slack / (2.0 * min(a, 1.0 - a))
        ok = all(any(abs(c - s) <= ctol for c in clusters) for s in closed)
        if ok and _existence_margin(a, loc) > slack:
            # near-boundary instances legitimately grow extra clusters
            # from the adjacent branch; skip the converse check there
            ok = all(any(abs(c - s) <= ctol for s in closed) for c in clusters)
        mismatches += not ok
    _check("market-equilibria", mismatches == 0,
           f"{instances} random instances, {mismatches} mismatches", failures)


def _verify_best_deviation(rng, grid, instances, failures):
    mismatches = 0
    behaviors = list(BehaviorKind)
    for k in range(instances):
        a = float(rng.uniform(0.05, 0.95))
        x_other = float(rng.uniform(0.0, 1.0))
        behavior = behaviors[k % 3]
        params = GameParams(a)
        if behavior is BehaviorKind.PESSIMISTIC:
            analytic = best_deviation_pessimistic(params, 1, x_other).payoff
        else:
            _, analytic = _search_best_deviation(a, behavior, x_other,
                                                 DEFAULT_DEVIATION_GRID)
        _, grid_best = oracle_best_deviation(params, behavior, 1, x_other, grid)
        lipschitz = max(1.0 / (1.0 - a), 1.0 / (2.0 * a))
        tol = 2.0 * lipschitz / (grid.n_locations - 1) + 1e-6
        if grid_best > analytic + 1e-6 or analytic - grid_best > tol:
            mismatches += 1
    _check("best-deviation", mismatches == 0,
           f"{instances} random instances, {mismatches} mismatches", failures)


def _verify_social_optimum(theta, failures):
    worst_gap = 0.0
    for a in np.arange(1, 20) * 0.05:
        params = GameParams(float(a), theta)
        closed = social_optimum(params)[0].welfare
        found = oracle_social_optimum(params, GridSpec(n_locations=201, n_shares=201))
        worst_gap = max(worst_gap, abs(found.welfare - closed))
    _check("social-optimum", worst_gap <= 1e-3,
           f"max |grid - closed| welfare gap {worst_gap:.2e}", failures)


def _verify_regions(theta, failures):
    xs = np.linspace(0.0, 1.0, 101)

    disagreements = 0
    pess_profiles = {}
    for a in (0.2, 0.5, 0.8):
        params = GameParams(a, theta)
        found = []
        for i, x1 in enumerate(xs):
            for x2 in xs[i:]:
                loc = Locations(float(x1), float(x2))
                interval = pessimistic_nash_interval(params, loc)
                for outcome in enumerate_market_equilibria(params, loc):
                    profile = EquilibriumProfile(loc, outcome)
                    by_deviation = is_nash(params, BehaviorKind.PESSIMISTIC, profile)
                    by_interval = interval.contains(outcome.s1)
                    if by_deviation != by_interval:
                        disagreements += 1
                    if by_deviation:
                        found.append(profile)
                        if not nash_diameter_bounds_check(params, profile):
                            disagreements += 1
        pess_profiles[a] = found
    _check("pessimistic-region", disagreements == 0,
           f"3 externality levels on a 101x101 grid, {disagreements} disagreements",
           failures)

    mirrored = {
        (round(p.x1, 9), round(p.x2, 9), round(p.s1, 9)) for p in pess_profiles[0.5]
    }
    reflected = {
        (round(q.x1, 9), round(q.x2, 9), round(q.s1, 9))
        for q in map(mirror_profile, pess_profiles[0.5])
    }
    _check("mirror-symmetry", mirrored == reflected,
           f"{len(mirrored)} pessimistic NE profiles at a=0.5", failures)

    params = GameParams(0.3, theta)
    neutral_cells = set()
    for i, x1 in enumerate(xs):
        for x2 in xs[i:]:
            loc = Locations(float(x1), float(x2))
            for outcome in enumerate_market_equilibria(params, loc):
                if is_nash(params, BehaviorKind.NEUTRAL, EquilibriumProfile(loc, outcome)):
                    neutral_cells.add((float(x1), float(x2)))
    _check("neutral-region", neutral_cells == {(0.5, 0.5)},
           f"NE cells at a=0.3: {sorted(neutral_cells)}", failures)

    optimistic_hits = 0
    for i, x1 in enumerate(xs):
        for x2 in xs[i:]:
            loc = Locations(float(x1), float(x2))
            for outcome in enumerate_market_equilibria(params, loc):
                if is_nash(params, BehaviorKind.OPTIMISTIC, EquilibriumProfile(loc, outcome)):
                    optimistic_hits += 1
    _check("optimistic-region", optimistic_hits == 0,
           f"{optimistic_hits} optimistic NE found at a=0.3", failures)


def _cmd_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    grid = GridSpec(args.grid_consumers, args.grid_locations or 2001, args.grid_shares)
    failures: list = []
    _verify_market_equilibria(rng, grid, args.instances, failures)
    _verify_best_deviation(rng, grid, max(60, args.instances // 5), failures)
    _verify_social_optimum(args.theta, failures)
    _verify_regions(args.theta, failures)
    if failures:
        print(f"verification FAILED: {', '.join(failures)}")
        return 1
    print("all verification suites passed")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, *, needs_locations=False, needs_share=False, needs_behavior=False,
                needs_a=True):
    if needs_a:
        sub.add_argument("--a", type=float, required=True, help="externality magnitude in (0,1)")
    sub.add_argument("--theta", type=float, default=1.0, help="intrinsic utility (default 1)")
    if needs_locations:
        sub.add_argument("--x1", type=float, required=True)
        sub.add_argument("--x2", type=float, required=True)
    if needs_share:
        sub.add_argument("--s1", type=float, required=True)
    if needs_behavior:
        sub.add_argument("--behavior", required=True,
                         choices=[b.value for b in BehaviorKind])
    sub.add_argument("--out", help="write output to this path (atomic)")
    sub.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locpop",
        description="Equilibria, welfare and efficiency ratios for a two-firm "
                    "location game with popularity externalities.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("market-eq", help="enumerate market equilibria")
    _add_common(s, needs_locations=True)
    s.set_defaults(func=_cmd_market_eq)

    s = subs.add_parser("nash-check", help="Nash verdict for one profile")
    _add_common(s, needs_locations=True, needs_share=True, needs_behavior=True)
    s.set_defaults(func=_cmd_nash_check)

    s = subs.add_parser("nash-region", help="NE scan over the location grid")
    _add_common(s, needs_behavior=True)
    s.add_argument("--grid-locations", type=int, default=None)
    s.set_defaults(func=_cmd_nash_region, format="csv")

    s = subs.add_parser("symmetric-region", help="NE shares along x2 = 1 - x1")
    _add_common(s)
    s.add_argument("--grid-locations", type=int, default=None)
    s.set_defaults(func=_cmd_symmetric_region, format="csv")

    s = subs.add_parser("welfare", help="consumer welfare at one point")
    _add_common(s, needs_locations=True, needs_share=True)
    s.set_defaults(func=_cmd_welfare)

    s = subs.add_parser("social-opt", help="unconstrained welfare optimum")
    _add_common(s)
    s.set_defaults(func=_cmd_social_opt)

    for name, fn, label in (("poa-curve", poa, "poa"), ("pos-curve", pos, "pos")):
        s = subs.add_parser(name, help=f"{label} over an a-grid")
        s.add_argument("--a", type=float, default=None,
                       help="single externality level instead of the grid")
        s.add_argument("--theta", type=float, default=1.0)
        s.add_argument("--behavior", required=True,
                       choices=[b.value for b in BehaviorKind])
        s.add_argument("--out")
        s.add_argument("--format", choices=("json", "csv"), default="csv")
        s.set_defaults(func=lambda args, fn=fn, label=label:
                       _cmd_ratio_curve(args, fn, label))

    s = subs.add_parser("figures", help="emit all figure datasets")
    s.add_argument("--theta", type=float, default=1.0)
    s.add_argument("--out", help="output directory (default: figures)")
    s.set_defaults(func=_cmd_figures)

    s = subs.add_parser("verify", help="oracle cross-check suites")
    s.add_argument("--theta", type=float, default=1.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--instances", type=int, default=1000)
    s.add_argument("--grid-consumers", type=int, default=10_000)
    s.add_argument("--grid-locations", type=int, default=None)
    s.add_argument("--grid-shares", type=int, default=2001)
    s.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NoEquilibriumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()

"""Command-line entry point.

Exit codes: 0 clean run, 1 collision occurred, 2 configuration error.
"""

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from . import fmcw
from .config import BenchConfig, load_config
from .plots import emit_plots
from .scenario import catalog, get_scenario
from .simbench import ConfigError, compare_runs, emit_csv, run, with_rate

EXIT_OK, EXIT_COLLISION, EXIT_CONFIG = 0, 1, 2


def _bench(args) -> BenchConfig:
    target = args.scenario
    if os.path.isfile(target):
        cfg = load_config(target)
    else:
        try:
            cfg = BenchConfig(get_scenario(target))
        except KeyError:
            raise ConfigError(f"{target!r} is neither a catalog scenario nor a file") from None
    try:
        if args.dt is not None:
            cfg.dt = args.dt
        cfg.sensors, cfg.controller = with_rate(cfg.sensors, cfg.controller, cfg.dt)
        if args.duration is not None:
            cfg.scenario = replace(cfg.scenario, duration=args.duration)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def _run(cfg, seed, aeb):
    return run(cfg.scenario, cfg.sensors, cfg.tracker, cfg.controller, seed=seed,
               aeb_enabled=aeb, dt=cfg.dt)


def _describe(r):
    c = r.collision
    if c.collided:
        return f"collision at t={c.time:.2f} s, impact speed {c.impact_speed:.2f} m/s"
    return f"no collision, min headway {c.min_headway:.2f} m"


def cmd_run(args):
    cfg = _bench(args)
    r = _run(cfg, args.seed, not args.no_aeb)
    os.makedirs(args.out, exist_ok=True)
    stem = os.path.join(args.out, f"{r.scenario}_seed{args.seed}" + ("_noaeb" if args.no_aeb else ""))
    emit_csv(r, stem + ".csv")
    print(f"{r.scenario} seed={args.seed} aeb={'off' if args.no_aeb else 'on'}: {_describe(r)}")
    print(f"  log: {stem}.csv ({len(r.log)} rows)")
    if args.emit_plots:
        for path in emit_plots(r, stem):
            print(f"  plot: {path}")
    return EXIT_COLLISION if r.collision.collided else EXIT_OK


def cmd_list(args):
    for spec in catalog():
        a = spec.actors[0]
        print(f"{spec.name:34s} ego {spec.ego_initial_speed * 3.6:5.1f} km/h, "
              f"{a.kind.value} gap {a.gap:.1f} m at {a.speed * 3.6:.1f} km/h"
              + (f", braking {a.decel:g} m/s^2 from {a.decel_start:g} s" if a.decel else ""))
    return EXIT_OK


def cmd_compare(args):
    cfg = _bench(args)
    on, off = _run(cfg, args.seed, True), _run(cfg, args.seed, False)
    m = compare_runs(on, off)
    print(f"{m.scenario} seed={m.seed}")
    print(f"  AEB on : {_describe(on)}")
    print(f"  AEB off: {_describe(off)}")
    print(f"  collision avoided: {'yes' if m.avoided else 'no'}")
    print(f"  impact speed reduction: {m.speed_reduction:.2f} m/s ({m.speed_reduction_pct:.1f} %)")
    return EXIT_COLLISION if on.collision.collided else EXIT_OK


def cmd_fmcw_demo(args):
    w = fmcw.FmcwWaveform()
    if len(args.range) != len(args.speed):
        raise ConfigError("--range and --speed need the same number of values")
    try:
        targets = [fmcw.PointTarget(r, v) for r, v in zip(args.range, args.speed)]
        cube = fmcw.synthesize_beat(w, targets, args.noise, args.seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    rd = fmcw.range_doppler_map(cube, w)
    np.savetxt(args.out, rd, delimiter=",", fmt="%.6e")
    print(f"range-Doppler map {rd.shape[0]} Doppler x {rd.shape[1]} range bins -> {args.out}")
    for e in fmcw.estimate_range_doppler(cube, w):
        print(f"  peak: range {e.range:7.2f} m, radial speed {e.radial_speed:7.2f} m/s")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="aebbench", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def scenario_args(sp):
        sp.add_argument("--scenario", required=True, help="catalog name or config file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--duration", type=float, default=None)
        sp.add_argument("--dt", type=float, default=None)

    r = sub.add_parser("run", help="simulate one scenario and write its log")
    scenario_args(r)
    r.add_argument("--out", default=".")
    r.add_argument("--no-aeb", action="store_true")
    r.add_argument("--emit-plots", action="store_true")
    r.set_defaults(func=cmd_run)

    sub.add_parser("list-scenarios", help="list built-in scenarios").set_defaults(func=cmd_list)

    c = sub.add_parser("compare", help="AEB on vs off for one scenario and seed")
    scenario_args(c)
    c.set_defaults(func=cmd_compare)

    f = sub.add_parser("fmcw-demo", help="dump a range-Doppler magnitude map as CSV")
    f.add_argument("--range", type=float, nargs="+", default=[50.0])
    f.add_argument("--speed", type=float, nargs="+", default=[20.0])
    f.add_argument("--noise", type=float, default=0.0)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out", default="range_doppler.csv")
    f.set_defaults(func=cmd_fmcw_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

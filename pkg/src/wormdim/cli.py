"""Command-line interface.

Subcommands: simulate, frontier, batch, dimension, components, plot-data.
Exit codes: 0 success, 2 invalid arguments, 3 degenerate-input/estimation
error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from ._backend import backend_name
from .earthworm import simulate_earthworm
from .errors import DomainError
from .estimators import averaging_dimension, counting_fits, default_r_max, fit_loglog
from .frontier import extract_frontier
from .geometry import connected_components
from .pointio import read_point_set, write_point_set, write_real_points
from .runner import (
    ExperimentConfig,
    GeometricSchedule,
    census_report,
    emit_plot_data,
    fit_to_json,
    read_profile_csv,
    read_records,
    records_estimate,
    run_batch,
    write_profile_csv,
)
from .walks import rescale_walk, simulate_walk

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4


def _schedule(text: str) -> GeometricSchedule:
    try:
        return GeometricSchedule.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wormdim",
        description="Simulate lattice walks and the earthworm model; "
        "estimate box-counting dimensions of the resulting sets.",
    )
    parser.add_argument(
        "--version", action="version",
        version=f"wormdim {__version__} ({backend_name()} kernels)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one seeded simulation")
    sim_sub = sim.add_subparsers(dest="model", required=True)

    walk = sim_sub.add_parser("walk", help="simple random walk")
    walk.add_argument("--steps", type=int, required=True)
    walk.add_argument("--seed", type=int, required=True)
    walk.add_argument("--out", required=True, help="visited-set output file")
    walk.add_argument("--law", choices=["uniform4", "diagonal"], default="uniform4")
    walk.add_argument(
        "--rescaled-out", default=None,
        help="also write the path scaled by 1/sqrt(n) (plot data)",
    )
    walk.set_defaults(func=cmd_simulate_walk)

    worm = sim_sub.add_parser("earthworm", help="earthworm displacement model")
    worm.add_argument("--steps", type=int, required=True)
    worm.add_argument("--seed", type=int, required=True)
    worm.add_argument("--out", required=True, help="hole-set output file")
    worm.add_argument("--fill-rule", choices=["nearest", "adjacent"], default="nearest")
    worm.set_defaults(func=cmd_simulate_earthworm)

    fro = sub.add_parser("frontier", help="extract the frontier of a point set")
    fro.add_argument("--in", dest="infile", required=True)
    fro.add_argument("--out", required=True)
    fro.add_argument("--complement-connectivity", type=int, choices=[4, 8], default=4)
    fro.add_argument("--boundary-connectivity", type=int, choices=[4, 8], default=4)
    fro.set_defaults(func=cmd_frontier)

    bat = sub.add_parser("batch", help="run a seeded batch over a step schedule")
    bat.add_argument("--model", choices=["walk", "walk-frontier", "earthworm"], required=True)
    bat.add_argument("--schedule", type=_schedule, required=True,
                     help="geometric schedule g:START:FACTOR:COUNT")
    bat.add_argument("--replicates", type=int, required=True)
    bat.add_argument("--seed", type=int, required=True)
    bat.add_argument("--out", required=True, help="output directory")
    bat.add_argument("--workers", type=int, default=None)
    bat.add_argument("--fill-rule", choices=["nearest", "adjacent"], default="nearest")
    bat.add_argument("--law", choices=["uniform4", "diagonal"], default="uniform4")
    bat.add_argument("--adjacency", type=int, choices=[4, 8], default=4)
    bat.add_argument("--no-resume", action="store_true")
    bat.set_defaults(func=cmd_batch)

    dim = sub.add_parser("dimension", help="estimate a dimension")
    dim_sub = dim.add_subparsers(dest="method", required=True)

    cnt = dim_sub.add_parser("counting", help="counting method over batch records")
    cnt.add_argument("--records", required=True)
    cnt.add_argument("--direct", action="store_true",
                     help="fit log size against log diameter directly")
    cnt.add_argument("--out", default=None, help="write the fit JSON here too")
    cnt.set_defaults(func=cmd_dimension_counting)

    avg = dim_sub.add_parser("averaging", help="averaging method over one point set")
    avg.add_argument("--in", dest="infile", required=True)
    avg.add_argument("--rmin", type=int, default=4)
    avg.add_argument("--rmax", type=int, default=None,
                     help="default: diameter / 10")
    avg.add_argument("--centers", type=int, default=5000)
    avg.add_argument("--seed", type=int, default=0)
    avg.add_argument("--interior-margin", type=int, default=0)
    avg.add_argument("--profile-out", default=None, help="write the r,q_r CSV here")
    avg.add_argument("--out", default=None, help="write the fit JSON here too")
    avg.set_defaults(func=cmd_dimension_averaging)

    com = sub.add_parser("components", help="connected-component census of a point set")
    com.add_argument("--in", dest="infile", required=True)
    com.add_argument("--adjacency", type=int, choices=[4, 8], default=4)
    com.set_defaults(func=cmd_components)

    plo = sub.add_parser("plot-data", help="emit log-log scatter + fit-line CSVs")
    plo.add_argument("--records", default=None, help="records.csv from a batch")
    plo.add_argument("--profile", default=None, help="r,q_r CSV from dimension averaging")
    plo.add_argument("--fit", default=None, help="existing fit JSON (re-emit its line)")
    plo.add_argument("--direct", action="store_true")
    plo.add_argument("--out", required=True, help="output directory")
    plo.set_defaults(func=cmd_plot_data)

    cen = sub.add_parser("census", help="per-n census summary of earthworm records")
    cen.add_argument("--records", required=True)
    cen.set_defaults(func=cmd_census)

    return parser


def cmd_simulate_walk(args) -> int:
    trace = simulate_walk(args.steps, args.seed, args.law)
    meta = {"model": "walk", "n": args.steps, "seed": args.seed, "law": args.law}
    write_point_set(args.out, trace.visited, meta)
    if args.rescaled_out:
        write_real_points(args.rescaled_out, rescale_walk(trace))
    print(f"walk n={args.steps} visited={len(trace.visited)} -> {args.out}")
    return EXIT_OK


def cmd_simulate_earthworm(args) -> int:
    state = simulate_earthworm(args.steps, args.seed, args.fill_rule)
    meta = {
        "model": "earthworm",
        "n": args.steps,
        "seed": args.seed,
        "fill_rule": args.fill_rule,
        "creations": state.creations,
        "fills": state.fills,
    }
    write_point_set(args.out, state.holes.members, meta)
    print(
        f"earthworm n={args.steps} holes={len(state.holes)} "
        f"creations={state.creations} fills={state.fills} -> {args.out}"
    )
    return EXIT_OK


def cmd_frontier(args) -> int:
    trace, meta = read_point_set(args.infile)
    result = extract_frontier(
        trace, args.complement_connectivity, args.boundary_connectivity
    )
    out_meta = dict(meta)
    out_meta.update(
        {
            "frontier_of": args.infile,
            "trace_size": result.trace_size,
            "outside_cells": result.outside_cells,
        }
    )
    write_point_set(args.out, result.frontier, out_meta)
    print(
        f"frontier {len(result.frontier)} of {result.trace_size} trace points "
        f"-> {args.out}"
    )
    return EXIT_OK


def cmd_batch(args) -> int:
    config = ExperimentConfig(
        model=args.model,
        schedule=args.schedule,
        replicates=args.replicates,
        base_seed=args.seed,
        output_dir=Path(args.out),
        fill_rule=args.fill_rule,
        walk_law=args.law,
        adjacency=args.adjacency,
    )
    records = run_batch(config, workers=args.workers, resume=not args.no_resume)
    print(f"batch {args.model}: {len(records)} records -> {Path(args.out) / 'records.csv'}")
    return EXIT_OK


def cmd_dimension_counting(args) -> int:
    records = read_records(args.records)
    estimate = records_estimate(records, direct=args.direct)
    ns = [r.n for r in records]
    size_fit, diam_fit = counting_fits(
        [(r.n, r.set_size, r.diameter) for r in records]
    )
    payload = fit_to_json(
        estimate,
        fits={"size": size_fit, "diameter": diam_fit},
        n_points=len(records),
        x_log10_range=(math.log10(min(ns)), math.log10(max(ns))),
    )
    text = json.dumps(payload, indent=2)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_dimension_averaging(args) -> int:
    points, _ = read_point_set(args.infile)
    r_max = args.rmax if args.rmax is not None else default_r_max(points)
    profile, estimate = averaging_dimension(
        points,
        r_min=args.rmin,
        r_max=r_max,
        max_centers=args.centers,
        seed=args.seed,
        interior_margin=args.interior_margin,
    )
    q_fit = fit_loglog(list(zip(profile.radii, profile.q_values)))
    payload = fit_to_json(
        estimate,
        fits={"q_r": q_fit},
        n_points=len(profile.radii),
        x_log10_range=(math.log10(profile.radii[0]), math.log10(profile.radii[-1])),
    )
    payload["centers_sampled"] = profile.centers_sampled
    text = json.dumps(payload, indent=2)
    print(text)
    if args.profile_out:
        write_profile_csv(args.profile_out, profile)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_components(args) -> int:
    points, _ = read_point_set(args.infile)
    census = connected_components(points, args.adjacency)
    payload = {
        "component_count": census.component_count,
        "singleton_count": census.singleton_count,
        "total_points": census.total_points,
        "size_histogram": {
            str(size): census.component_sizes[size]
            for size in sorted(census.component_sizes)
        },
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_plot_data(args) -> int:
    chosen = [x for x in (args.records, args.profile, args.fit) if x]
    if len(chosen) != 1:
        print("error: pass exactly one of --records, --profile, --fit",
              file=sys.stderr)
        return EXIT_USAGE
    if args.records:
        written = emit_plot_data(args.out, records=read_records(args.records),
                                 direct=args.direct)
    elif args.profile:
        written = emit_plot_data(args.out, profile=read_profile_csv(args.profile))
    else:
        payload = json.loads(Path(args.fit).read_text(encoding="utf-8"))
        written = emit_plot_data(args.out, fit_payload=payload)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_census(args) -> int:
    records = read_records(args.records)
    summaries = census_report(records)
    payload = [
        {
            "n": s.n,
            "replicates": s.replicates,
            "mean_component_count": s.mean_component_count,
            "mean_singleton_component_fraction": s.mean_singleton_component_fraction,
            "mean_singleton_area_fraction": s.mean_singleton_area_fraction,
        }
        for s in summaries
    ]
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

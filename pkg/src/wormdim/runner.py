"""Batch orchestration: seeded schedules, record persistence, plot data.

Records are appended to records.csv as replicates finish (so interrupted
batches resume by skipping completed (n, seed) pairs) and the file is
rewritten sorted by (n, seed) on completion, making the final bytes
independent of worker count. Wall-clock timings go to a timings.csv
sidecar: they vary run to run and would break the byte-stable records
contract.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ._rng import MAX_STEPS, batch_seed
from .earthworm import simulate_earthworm
from .errors import DomainError
from .estimators import (
    DEFAULT_MAX_CENTERS,
    AveragingProfile,
    DimensionEstimate,
    LogLogFit,
    averaging_dimension,
    counting_dimension,
    counting_fits,
    fit_loglog,
)
from .frontier import extract_frontier
from .geometry import PointSet, connected_components, diameter
from .walks import simulate_walk

MODELS = ("walk", "walk-frontier", "earthworm")

RECORD_FIELDS = (
    "model",
    "n",
    "seed",
    "set_size",
    "diameter",
    "component_count",
    "singleton_count",
    "elapsed_ms",
)


@dataclass(frozen=True)
class GeometricSchedule:
    """Strictly increasing step counts start * factor^j, j = 0..count-1."""

    start: int
    factor: float
    count: int

    def __post_init__(self):
        if self.start < 1 or self.count < 1 or self.factor <= 1.0:
            raise ValueError("schedule needs start >= 1, factor > 1, count >= 1")

    def values(self) -> List[int]:
        ns = [int(round(self.start * self.factor**j)) for j in range(self.count)]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("schedule is not strictly increasing")
        if ns[-1] > MAX_STEPS:
            raise ValueError(f"schedule exceeds 2^40 steps ({ns[-1]})")
        return ns

    @classmethod
    def parse(cls, text: str) -> "GeometricSchedule":
        """Parse "g:START:FACTOR:COUNT"."""
        parts = text.split(":")
        if len(parts) != 4 or parts[0] != "g":
            raise ValueError(f"schedule must look like g:START:FACTOR:COUNT, got {text!r}")
        sched = cls(start=int(parts[1]), factor=float(parts[2]), count=int(parts[3]))
        sched.values()  # validate now
        return sched


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    schedule: GeometricSchedule
    replicates: int
    base_seed: int
    estimator: str = "counting"
    r_min: int = 4
    r_max: Optional[int] = None
    max_centers: int = DEFAULT_MAX_CENTERS
    output_dir: Optional[Path] = None
    fill_rule: str = "nearest"
    walk_law: str = "uniform4"
    adjacency: int = 4

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")


@dataclass
class SimulationRecord:
    """One (model, n, seed) observation."""

    model: str
    n: int
    seed: int
    set_size: int
    diameter: float
    component_count: Optional[int] = None
    singleton_count: Optional[int] = None
    elapsed_ms: Optional[int] = None

    def sort_key(self):
        return (self.n, self.seed)

    def csv_row(self) -> List[str]:
        # elapsed_ms stays blank: records.csv must be byte-identical across
        # reruns and worker counts; timings live in the sidecar.
        return [
            self.model,
            str(self.n),
            str(self.seed),
            str(self.set_size),
            repr(self.diameter),
            "" if self.component_count is None else str(self.component_count),
            "" if self.singleton_count is None else str(self.singleton_count),
            "",
        ]

    @classmethod
    def from_csv_row(cls, row: Sequence[str]) -> "SimulationRecord":
        return cls(
            model=row[0],
            n=int(row[1]),
            seed=int(row[2]),
            set_size=int(row[3]),
            diameter=float(row[4]),
            component_count=int(row[5]) if row[5] else None,
            singleton_count=int(row[6]) if row[6] else None,
            elapsed_ms=int(row[7]) if row[7] else None,
        )


def build_target_set(config: ExperimentConfig, n: int, seed: int) -> PointSet:
    """The point set a record measures: trace, its frontier, or the holes."""
    if config.model == "walk":
        return simulate_walk(n, seed, config.walk_law).visited
    if config.model == "walk-frontier":
        trace = simulate_walk(n, seed, config.walk_law).visited
        return extract_frontier(trace).frontier
    return simulate_earthworm(n, seed, config.fill_rule).holes.members


def _run_one(config: ExperimentConfig, n: int, replicate: int) -> SimulationRecord:
    seed = batch_seed(config.base_seed, n, replicate)
    t0 = time.perf_counter()
    target = build_target_set(config, n, seed)
    record = SimulationRecord(
        model=config.model,
        n=n,
        seed=seed,
        set_size=len(target),
        diameter=diameter(target),
    )
    if config.model == "earthworm":
        census = connected_components(target, config.adjacency)
        record.component_count = census.component_count
        record.singleton_count = census.singleton_count
    record.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return record


def read_records(path) -> List[SimulationRecord]:
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is not None and tuple(header) != RECORD_FIELDS:
            raise DomainError(f"unexpected records header in {path}")
        for row in reader:
            if row:
                records.append(SimulationRecord.from_csv_row(row))
    return records


def write_records(path, records: Sequence[SimulationRecord]) -> None:
    tmp = str(path) + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for rec in records:
            writer.writerow(rec.csv_row())
    os.replace(tmp, path)


def run_batch(
    config: ExperimentConfig,
    workers: Optional[int] = None,
    resume: bool = True,
) -> List[SimulationRecord]:
    """Run every (n, replicate) cell of the config's grid.

    Results are deterministic in content and, when persisted, in bytes:
    per-run seeds depend only on (base_seed, n, replicate) and the final
    records.csv is sorted by (n, seed).
    """
    ns = config.schedule.values()
    records_path = None
    timings_path = None
    done: Dict[Tuple[int, int], SimulationRecord] = {}
    if config.output_dir is not None:
        out = Path(config.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        records_path = out / "records.csv"
        timings_path = out / "timings.csv"
        if resume and records_path.exists():
            for rec in read_records(records_path):
                done[(rec.n, rec.seed)] = rec

    tasks = []
    for n in ns:
        for i in range(config.replicates):
            seed = batch_seed(config.base_seed, n, i)
            if (n, seed) not in done:
                tasks.append((n, i))

    new_records: List[SimulationRecord] = []
    append_fh = None
    append_writer = None
    if records_path is not None:
        fresh = not records_path.exists()
        append_fh = open(records_path, "a", encoding="utf-8", newline="")
        append_writer = csv.writer(append_fh, lineterminator="\n")
        if fresh:
            append_writer.writerow(RECORD_FIELDS)
    try:
        if workers is None:
            workers = os.cpu_count() or 1
        if workers <= 1:
            for n, i in tasks:
                rec = _run_one(config, n, i)
                new_records.append(rec)
                if append_writer is not None:
                    append_writer.writerow(rec.csv_row())
                    append_fh.flush()
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_run_one, config, n, i) for n, i in tasks]
                for fut in as_completed(futures):
                    rec = fut.result()
                    new_records.append(rec)
                    if append_writer is not None:
                        append_writer.writerow(rec.csv_row())
                        append_fh.flush()
    finally:
        if append_fh is not None:
            append_fh.close()

    all_records = list(done.values()) + new_records
    all_records.sort(key=SimulationRecord.sort_key)
    if records_path is not None:
        write_records(records_path, all_records)
        _write_timings(timings_path, all_records)
    return all_records


def _write_timings(path, records: Sequence[SimulationRecord]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["model", "n", "seed", "elapsed_ms"])
        for rec in records:
            writer.writerow(
                [rec.model, rec.n, rec.seed, "" if rec.elapsed_ms is None else rec.elapsed_ms]
            )


# ---------------------------------------------------------------------------
# estimates and plot data
# ---------------------------------------------------------------------------


def records_estimate(records: Sequence[SimulationRecord], direct: bool = False) -> DimensionEstimate:
    return counting_dimension(
        [(r.n, r.set_size, r.diameter) for r in records], direct=direct
    )


def fit_to_json(
    estimate: DimensionEstimate,
    fits: Optional[Dict[str, LogLogFit]] = None,
    n_points: int = 0,
    x_log10_range: Optional[Tuple[float, float]] = None,
) -> dict:
    """Flat JSON form of an estimate plus the per-quantity fit lines."""
    payload = {
        "method": estimate.method,
        "value": estimate.value,
        "intercept": None,
        "r_squared": estimate.fit_quality,
        "n_points": n_points,
        "h": estimate.h,
        "d": estimate.d,
    }
    if x_log10_range is not None:
        payload["x_log10_range"] = list(x_log10_range)
    if fits:
        payload["fits"] = {
            name: {
                "slope": f.slope,
                "intercept": f.intercept,
                "r_squared": f.r_squared,
                "n_points": f.n_points,
            }
            for name, f in fits.items()
        }
        if estimate.method == "averaging":
            payload["intercept"] = fits["q_r"].intercept
    return payload


def _write_scatter(path, xs, ys, header) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for x, y in zip(xs, ys):
            fh.write(f"{math.log10(x)!r},{math.log10(y)!r}\n")


def _write_fitline(path, fit: LogLogFit, x_log10_range) -> None:
    # endpoints of the fitted line in log10 coordinates
    ln10 = math.log(10.0)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("log10_x,log10_y\n")
        for lx in x_log10_range:
            ly = (fit.slope * (lx * ln10) + fit.intercept) / ln10
            fh.write(f"{lx!r},{ly!r}\n")


def emit_plot_data(
    out_dir,
    records: Optional[Sequence[SimulationRecord]] = None,
    profile: Optional[AveragingProfile] = None,
    fit_payload: Optional[dict] = None,
    direct: bool = False,
) -> List[Path]:
    """Write scatter CSVs, fitted-line endpoints, and the fit JSON.

    Exactly one of records/profile supplies scatter data; alternatively a
    previously written fit JSON alone re-emits its line endpoints.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []

    if records:
        ns = [r.n for r in records]
        sizes = [r.set_size for r in records]
        diams = [r.diameter for r in records]
        size_fit, diam_fit = counting_fits(
            [(r.n, r.set_size, r.diameter) for r in records]
        )
        estimate = records_estimate(records, direct=direct)
        x_range = (math.log10(min(ns)), math.log10(max(ns)))
        scatter_size = out / "scatter_size.csv"
        _write_scatter(scatter_size, ns, sizes, "log10_n,log10_size")
        scatter_diam = out / "scatter_diameter.csv"
        _write_scatter(scatter_diam, ns, diams, "log10_n,log10_diameter")
        line_size = out / "fitline_size.csv"
        _write_fitline(line_size, size_fit, x_range)
        line_diam = out / "fitline_diameter.csv"
        _write_fitline(line_diam, diam_fit, x_range)
        payload = fit_to_json(
            estimate,
            fits={"size": size_fit, "diameter": diam_fit},
            n_points=len(records),
            x_log10_range=x_range,
        )
        fit_path = out / "fit.json"
        fit_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        written += [scatter_size, scatter_diam, line_size, line_diam, fit_path]
    elif profile:
        q_fit = fit_loglog(list(zip(profile.radii, profile.q_values)))
        estimate = DimensionEstimate(
            method="averaging", value=q_fit.slope, h=None, d=None,
            fit_quality=q_fit.r_squared,
        )
        x_range = (math.log10(profile.radii[0]), math.log10(profile.radii[-1]))
        scatter = out / "scatter_qr.csv"
        _write_scatter(scatter, profile.radii, profile.q_values, "log10_r,log10_q_r")
        line = out / "fitline_qr.csv"
        _write_fitline(line, q_fit, x_range)
        payload = fit_to_json(
            estimate,
            fits={"q_r": q_fit},
            n_points=len(profile.radii),
            x_log10_range=x_range,
        )
        fit_path = out / "fit.json"
        fit_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        written += [scatter, line, fit_path]
    elif fit_payload:
        x_range = fit_payload.get("x_log10_range")
        if not x_range:
            raise DomainError("fit JSON lacks x_log10_range; cannot draw a line")
        fits = fit_payload.get("fits") or {}
        if not fits:
            raise DomainError("fit JSON lacks per-quantity fits")
        for name, f in fits.items():
            fit = LogLogFit(
                slope=f["slope"], intercept=f["intercept"],
                r_squared=f["r_squared"], n_points=f["n_points"],
            )
            p = out / f"fitline_{name}.csv"
            _write_fitline(p, fit, tuple(x_range))
            written.append(p)
    else:
        raise DomainError("nothing to plot: need records, a profile, or a fit")
    return written


def write_profile_csv(path, profile: AveragingProfile) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("r,q_r\n")
        for r, q in zip(profile.radii, profile.q_values):
            fh.write(f"{r},{q!r}\n")


def read_profile_csv(path) -> AveragingProfile:
    radii = []
    qs = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "r,q_r":
            raise DomainError(f"unexpected profile header in {path}")
        for line in fh:
            line = line.strip()
            if line:
                r, q = line.split(",")
                radii.append(int(r))
                qs.append(float(q))
    return AveragingProfile(radii=tuple(radii), q_values=tuple(qs), centers_sampled=0)


# ---------------------------------------------------------------------------
# component census reporting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CensusSummary:
    n: int
    replicates: int
    mean_component_count: float
    mean_singleton_component_fraction: float
    mean_singleton_area_fraction: float


def census_report(records: Sequence[SimulationRecord]) -> List[CensusSummary]:
    """Per-n means of component count and the two singleton fractions."""
    if not records:
        raise DomainError("no records")
    by_n: Dict[int, List[SimulationRecord]] = {}
    for rec in records:
        if rec.component_count is None or rec.singleton_count is None:
            raise DomainError("records lack census fields (not an earthworm batch?)")
        by_n.setdefault(rec.n, []).append(rec)
    out = []
    for n in sorted(by_n):
        group = by_n[n]
        out.append(
            CensusSummary(
                n=n,
                replicates=len(group),
                mean_component_count=float(
                    np.mean([r.component_count for r in group])
                ),
                mean_singleton_component_fraction=float(
                    np.mean([r.singleton_count / r.component_count for r in group])
                ),
                mean_singleton_area_fraction=float(
                    np.mean([r.singleton_count / r.set_size for r in group])
                ),
            )
        )
    return out

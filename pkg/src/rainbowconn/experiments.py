"""Reproducible experiment driver: seeded batch runs with CSV/JSON outputs.

A configuration fully determines every trial: the per-cell seed is a hash
of (base seed, n, r, trial), so grids can be extended without invalidating
earlier cells, and identical configs reproduce byte-identical CSV.  Wall
times are opt-in (``record_timing``) precisely because the CSV must be
deterministic by default.
"""

from __future__ import annotations

import io
import json
import math
import statistics
import time
from dataclasses import asdict, dataclass, field

from . import seeds
from .edge_colouring import rc_min_degree, rc_random_regular
from .errors import ConfigError, RainbowError
from .graphs import Graph
from .models import sample_connected_regular
from .verify import (
    check_certificate,
    diameter_statistics,
    is_rainbow_edge_connected_exact,
    is_rainbow_vertex_connected_exact,
)
from .vertex_colouring import rvc_random_regular

CSV_VERSION = "rainbowconn-results-v1"
PIPELINES = ("mindeg", "regular", "rvc", "diameter")
VERIFY_MODES = ("none", "certificate-sample", "certificate-all", "exact")

CSV_COLUMNS = (
    "experiment",
    "pipeline",
    "model",
    "n",
    "r",
    "trial",
    "seed",
    "colours_used",
    "bound_value",
    "diam1",
    "diam2",
    "shared_size",
    "verify_verdict",
    "status",
    "replay",
    "wall_ms",
)


@dataclass
class ExperimentConfig:
    experiment: str
    pipeline: str
    n_values: list
    r_values: list = field(default_factory=lambda: [0])
    trials: int = 1
    base_seed: int = 0
    verify: str = "certificate-sample"
    verify_pairs: int = 1000
    model: str | None = None
    record_timing: bool = False

    def validate(self) -> None:
        if not self.experiment:
            raise ConfigError("experiment: must be a non-empty id")
        if self.pipeline not in PIPELINES:
            raise ConfigError(f"pipeline: unknown value {self.pipeline!r}")
        if not self.n_values:
            raise ConfigError("n_values: must be non-empty")
        if any(int(n) < 1 for n in self.n_values):
            raise ConfigError("n_values: entries must be positive")
        if not self.r_values:
            raise ConfigError("r_values: must be non-empty")
        if self.trials < 1:
            raise ConfigError("trials: must be positive")
        if self.verify not in VERIFY_MODES:
            raise ConfigError(f"verify: unknown mode {self.verify!r}")
        if self.pipeline == "diameter" and not self.model:
            raise ConfigError("model: required for the diameter pipeline")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        data = json.loads(text)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        try:
            config = cls(**data)
        except TypeError as exc:
            raise ConfigError(f"missing config field: {exc}") from exc
        config.validate()
        return config


@dataclass
class ResultRow:
    experiment: str
    pipeline: str
    model: str
    n: int
    r: int
    trial: int
    seed: int
    colours_used: int | None
    bound_value: int | None
    diam1: int | None
    diam2: int | None
    shared_size: int | None
    verify_verdict: str
    status: str
    replay: str
    wall_ms: str

    def csv_values(self) -> list:
        raw = asdict(self)
        return ["" if raw[c] is None else str(raw[c]) for c in CSV_COLUMNS]


def _replay_command(config: ExperimentConfig, n: int, r: int, cell_seed: int) -> str:
    if config.pipeline == "mindeg":
        return f"rainbowconn color-edges --method mindeg --n {n} --r {r} --seed {cell_seed}"
    if config.pipeline == "regular":
        return f"rainbowconn color-edges --method regular --n {n} --r {r} --seed {cell_seed}"
    if config.pipeline == "rvc":
        return f"rainbowconn color-vertices --n {n} --r {r} --seed {cell_seed}"
    return (
        f"rainbowconn generate --model {config.model} --n {n} "
        f"--r {r} --seed {cell_seed}"
    )


def _verify_colouring(g: Graph, colouring, config: ExperimentConfig) -> str:
    if config.verify == "none":
        return ""
    if config.verify == "exact":
        report = is_rainbow_edge_connected_exact(g, colouring)
    elif config.verify == "certificate-all":
        report = check_certificate(g, colouring, pairs="all")
    else:
        report = check_certificate(
            g,
            colouring,
            pairs="sample",
            sample_size=config.verify_pairs,
            seed=seeds.derive_seed(config.base_seed, "verify", g.n),
        )
    return "pass" if report.verdict else "fail"


def _run_cell(config: ExperimentConfig, n: int, r: int, trial: int) -> ResultRow:
    cell_seed = seeds.derive_seed(config.base_seed, n, r, trial)
    replay = _replay_command(config, n, r, cell_seed)
    start = time.perf_counter()
    colours = bound = d1 = d2 = shared = None
    verdict = ""
    status = "ok"
    try:
        if config.pipeline == "mindeg":
            g = sample_connected_regular(n, r, seeds.derive_seed(cell_seed, "graph"))
            colouring = rc_min_degree(g)
            cert = colouring.certificate
            colours = colouring.colours_used
            bound = math.ceil(16 * n / r)
            d1, d2 = cert.diam1, cert.diam2
            shared = len(cert.shared_edges)
            verdict = _verify_colouring(g, colouring, config)
        elif config.pipeline == "regular":
            g, colouring = rc_random_regular(n, r, cell_seed)
            cert = colouring.certificate
            colours = colouring.colours_used
            bound = cert.diam1 + cert.diam2
            d1, d2 = cert.diam1, cert.diam2
            shared = len(cert.shared_edges)
            verdict = _verify_colouring(g, colouring, config)
        elif config.pipeline == "rvc":
            outcome = rvc_random_regular(n, r, cell_seed)
            cert = outcome.colouring.certificate
            colours = outcome.colouring.colours_used
            bound = outcome.colouring.bound()
            d1, d2 = cert.diam1, cert.diam2
            shared = len(cert.shared_vertices)
            if config.verify == "exact":
                report = is_rainbow_vertex_connected_exact(
                    outcome.graph, outcome.colouring
                )
                verdict = "pass" if report.verdict else "fail"
            elif config.verify != "none":
                mode = "all" if config.verify == "certificate-all" else "sample"
                report = check_certificate(
                    outcome.graph,
                    outcome.colouring,
                    pairs=mode,
                    sample_size=config.verify_pairs,
                    seed=seeds.derive_seed(cell_seed, "verify"),
                )
                verdict = "pass" if report.verdict else "fail"
        else:  # diameter
            stats = diameter_statistics(
                config.model, [n], trials=1, seed=cell_seed, r=r or None
            )[0]
            d1 = stats.dmin
            verdict = "pass"
    except RainbowError as exc:
        status = f"error: {exc}"
        verdict = "fail"
    wall = f"{(time.perf_counter() - start) * 1000:.1f}" if config.record_timing else ""
    return ResultRow(
        experiment=config.experiment,
        pipeline=config.pipeline,
        model=config.model or "",
        n=n,
        r=r,
        trial=trial,
        seed=cell_seed,
        colours_used=colours,
        bound_value=bound,
        diam1=d1,
        diam2=d2,
        shared_size=shared,
        verify_verdict=verdict,
        status=status,
        replay=replay,
        wall_ms=wall,
    )


def run_experiment(config: ExperimentConfig) -> list:
    """All grid cells in deterministic order; failures become rows, never drops."""
    config.validate()
    rows = []
    for n in config.n_values:
        for r in config.r_values:
            for trial in range(config.trials):
                rows.append(_run_cell(config, int(n), int(r), trial))
    return rows


def rows_to_csv(rows, config: ExperimentConfig) -> str:
    buf = io.StringIO()
    buf.write(f"# {CSV_VERSION}\n")
    buf.write(f"# config: {config.to_json()}\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        buf.write(",".join(row.csv_values()) + "\n")
    return buf.getvalue()


def write_csv(rows, config: ExperimentConfig, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(rows_to_csv(rows, config))


def read_csv(path) -> list:
    """Result rows back from CSV, as dicts with typed numeric fields."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    if not body:
        raise ConfigError("results CSV has no header row")
    header = body[0].split(",")
    if set(("experiment", "n", "colours_used")) - set(header):
        raise ConfigError("results CSV is missing required columns")
    out = []
    for ln in body[1:]:
        parts = ln.split(",")
        if len(parts) != len(header):
            raise ConfigError(f"malformed CSV row: {ln!r}")
        row = dict(zip(header, parts))
        for key in ("n", "r", "trial", "colours_used", "bound_value", "diam1", "diam2", "shared_size"):
            if key in row:
                row[key] = int(row[key]) if row[key] else None
        out.append(row)
    return out


def scaling_report(rows) -> dict:
    """Per-(pipeline, r, n) medians with the scaling ratio columns.

    Ratios: colours / (log n / log r) for colouring pipelines (natural
    logs), diam / log2 n for diameter studies.  Consecutive doublings in n
    get a non-increase flag per ratio column; with a single n the trend
    flags are suppressed.
    """
    groups = {}
    for row in rows:
        if isinstance(row, ResultRow):
            row = {k: getattr(row, k) for k in CSV_COLUMNS}
        key = (row["pipeline"], row.get("model") or "", row["r"])
        groups.setdefault(key, {}).setdefault(row["n"], []).append(row)
    report = {"version": CSV_VERSION, "groups": []}
    for (pipeline, model, r), per_n in sorted(groups.items(), key=str):
        entry = {
            "pipeline": pipeline,
            "model": model,
            "r": r,
            "cells": [],
        }
        ratio_series = []
        for n in sorted(per_n):
            cell_rows = per_n[n]
            ok = [row for row in cell_rows if row["status"] == "ok"]
            failures = len(cell_rows) - len(ok)
            cell = {"n": n, "trials": len(cell_rows), "failures": failures}
            colours = [row["colours_used"] for row in ok if row["colours_used"]]
            diams = [row["diam1"] for row in ok if row["diam1"] is not None]
            if colours:
                med = statistics.median(colours)
                cell["colours_median"] = med
                cell["colours_per_log_n"] = med / math.log(n) if n > 1 else None
                if r and r > 1:
                    cell["colours_per_lognr"] = med / (math.log(n) / math.log(r))
                    ratio_series.append((n, cell["colours_per_lognr"]))
            elif diams:
                med = statistics.median(diams)
                cell["diam_median"] = med
                cell["diam_per_log2_n"] = med / math.log2(n) if n > 1 else None
                cell["diam_per_ln_n"] = med / math.log(n) if n > 1 else None
                ratio_series.append((n, cell["diam_per_log2_n"]))
            entry["cells"].append(cell)
        if len(ratio_series) >= 2:
            steps = []
            for (n0, v0), (n1, v1) in zip(ratio_series, ratio_series[1:]):
                if n1 - n0 in (n0, n0 + 1):  # doubling, or the odd-n grid's 2n+1
                    steps.append(
                        {"from_n": n0, "to_n": n1, "non_increasing": v1 <= v0 + 1e-12}
                    )
            if steps:
                entry["doubling_steps"] = steps
                # Bounded = no monotone increase across the doublings.
                entry["ratio_bounded"] = any(s["non_increasing"] for s in steps)
        report["groups"].append(entry)
    return report

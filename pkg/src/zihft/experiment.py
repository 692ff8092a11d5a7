"""Replication harness: seeded runs per scenario, aggregation and report files."""
from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from zihft import __version__
from zihft.config import ConfigError, SimConfig
from zihft.metrics import (
    SCALAR_METRICS,
    HistogramSpec,
    InsufficientRuns,
    MetricSummary,
    RunStats,
    market_stats,
    per_market_average,
    summarize,
)
from zihft.order_flow import derive_run_seed, splitmix64
from zihft.simulation import run

SCHEMA_VERSION = 1
SCENARIOS = ("base", "hft")
# unpaired HFT runs draw from a seed family disjoint in construction from the base runs
_HFT_SALT = 0x48465453594E43  # "HFTSYNC"


def scenario_seeds(master_seed: int, runs: int, scenario: str, paired: bool) -> List[int]:
    """Per-run seeds. Paired scenarios share the base seeds run for run."""
    root = master_seed
    if scenario == "hft" and not paired:
        root = splitmix64(master_seed ^ _HFT_SALT)
    return [derive_run_seed(root, k) for k in range(runs)]


@dataclass
class RunRecord:
    run_index: int
    seed: int
    stats: RunStats
    trades: Optional[list] = None


@dataclass
class ScenarioResult:
    name: str
    paired: bool
    runs: List[RunRecord]
    summary: Dict[str, MetricSummary]
    histogram: List[Tuple[float, float, int]]


@dataclass
class Report:
    config: SimConfig
    scenarios: Dict[str, ScenarioResult]
    engine_version: str = __version__
    wall_clock_seconds: float = 0.0
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        scen = {}
        for name, res in self.scenarios.items():
            scen[name] = {
                "paired": res.paired,
                "aggregate": {m: _summary_dict(s) for m, s in res.summary.items()},
                "runs": [
                    {"run_index": r.run_index, "seed": r.seed, **r.stats.scalars()}
                    for r in res.runs
                ],
                "histogram": [list(b) for b in res.histogram],
            }
        return _finite_or_none(
            {
                "schema_version": self.schema_version,
                "engine_version": self.engine_version,
                "wall_clock_seconds": self.wall_clock_seconds,
                "config": self.config.to_dict(),
                "scenarios": scen,
            }
        )


def _summary_dict(s: MetricSummary) -> dict:
    return {
        "mean": s.mean,
        "sd": s.sd,
        "stderr": s.stderr,
        "ci95_low": s.ci95_low,
        "ci95_high": s.ci95_high,
        "n": s.n,
    }


def _finite_or_none(obj):
    # JSON has no NaN; undefined statistics serialize as null
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite_or_none(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_or_none(v) for v in obj]
    return obj


def _lenient_summary(values: Sequence[float]) -> MetricSummary:
    try:
        return summarize(values)
    except InsufficientRuns:
        defined = [v for v in values if not math.isnan(v)]
        mean = sum(defined) / len(defined) if defined else math.nan
        nan = math.nan
        return MetricSummary(mean, nan, nan, nan, nan, len(defined))


def histogram_spec(cfg: SimConfig) -> HistogramSpec:
    hi = cfg.price_max if cfg.price_max > cfg.price_min else cfg.price_min + cfg.bin_width
    return HistogramSpec(cfg.bin_width, cfg.price_min, hi)


def run_one(cfg: SimConfig, seed: int, keep_trades: bool = False):
    """One seeded run reduced to its market-averaged statistics."""
    result = run(cfg, seed)
    spec = histogram_spec(cfg)
    s0, s1 = (market_stats(t, cfg.steps, spec) for t in result.trades)
    trades = [tr for market in result.trades for tr in market] if keep_trades else None
    if trades is not None:
        trades.sort(key=lambda tr: (tr.step, tr.market_id))
    return per_market_average(s0, s1), trades


def _run_one_star(args):
    return run_one(*args)


def run_scenario(cfg: SimConfig, scenario: str, paired: bool = False) -> ScenarioResult:
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}")
    scfg = replace(cfg, hft_enabled=(scenario == "hft"))
    seeds = scenario_seeds(cfg.master_seed, cfg.runs, scenario, paired)
    keep = cfg.trade_log is not None
    jobs = [(scfg, s, keep) for s in seeds]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outputs = list(pool.map(_run_one_star, jobs, chunksize=max(1, len(jobs) // (4 * cfg.workers))))
    else:
        outputs = [_run_one_star(j) for j in jobs]

    records = [RunRecord(k, seed, stats, trades) for k, (seed, (stats, trades)) in enumerate(zip(seeds, outputs))]
    summary = {m: _lenient_summary([getattr(r.stats, m) for r in records]) for m in SCALAR_METRICS}
    hist = [list(b) for b in records[0].stats.histogram]
    for r in records[1:]:
        for acc, (_, _, c) in zip(hist, r.stats.histogram):
            acc[2] += c
    return ScenarioResult(scenario, paired, records, summary, [tuple(b) for b in hist])


def run_experiment(cfg: SimConfig, scenario: str = "base", paired: Optional[bool] = None) -> Report:
    """Run ``cfg.runs`` seeded runs for ``base``, ``hft`` or ``compare`` (both).

    ``compare`` pairs the scenarios on identical per-run seeds unless
    ``paired=False``; single scenarios are unpaired unless ``paired=True``.
    """
    cfg.validate()
    if scenario == "compare":
        names = SCENARIOS
        paired = True if paired is None else paired
    elif scenario in SCENARIOS:
        names = (scenario,)
        paired = bool(paired)
    else:
        raise ConfigError(f"unknown scenario {scenario!r}")
    t0 = time.perf_counter()
    results = {name: run_scenario(cfg, name, paired) for name in names}
    return Report(cfg, results, wall_clock_seconds=time.perf_counter() - t0)


def report_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


CSV_FIELDS = ["scenario", "metric", "mean", "sd", "stderr", "ci95_low", "ci95_high", "n"]


def _fmt(v):
    if isinstance(v, float) and not math.isfinite(v):
        return ""
    return repr(v) if isinstance(v, float) else v


def write_report(report: Report, format: str, path) -> List[Path]:
    """Write the report and, if configured, the trade log. Returns the files written.

    CSV output is the summary table at ``path`` plus ``<stem>_runs.csv`` and
    ``<stem>_histogram.csv`` beside it.
    """
    path = Path(path)
    written = []
    try:
        if format == "json":
            path.write_text(report_json(report))
            written.append(path)
        elif format == "csv":
            written += _write_csv(report, path)
        else:
            raise ConfigError(f"unknown format {format!r}")
        if report.config.trade_log:
            written.append(write_trade_log(report, report.config.trade_log))
    except OSError as e:
        raise OSError(f"cannot write report to {e.filename or path}: {e.strerror or e}") from e
    return written


def _write_csv(report: Report, path: Path) -> List[Path]:
    runs_path = path.with_name(path.stem + "_runs.csv")
    hist_path = path.with_name(path.stem + "_histogram.csv")
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(CSV_FIELDS)
        for name, res in report.scenarios.items():
            for metric, s in res.summary.items():
                w.writerow([name, metric] + [_fmt(v) for v in (s.mean, s.sd, s.stderr, s.ci95_low, s.ci95_high)] + [s.n])
    with open(runs_path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["scenario", "run_index", "seed", *SCALAR_METRICS])
        for name, res in report.scenarios.items():
            for r in res.runs:
                w.writerow([name, r.run_index, r.seed] + [_fmt(getattr(r.stats, m)) for m in SCALAR_METRICS])
    with open(hist_path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["scenario", "bin_lower", "bin_upper", "count"])
        for name, res in report.scenarios.items():
            for lo, hi, c in res.histogram:
                w.writerow([name, _fmt(float(lo)), _fmt(float(hi)), c])
    return [path, runs_path, hist_path]


def write_trade_log(report: Report, path) -> Path:
    """One row per trade: scenario, run, step, market, kind, price, maker and taker ids."""
    path = Path(path)
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["scenario", "run_index", "step", "market", "kind", "price", "maker_id", "taker_id"])
        for name, res in report.scenarios.items():
            for r in res.runs:
                for tr in r.trades or ():
                    taker = "" if tr.taker_id is None else tr.taker_id
                    w.writerow([name, r.run_index, tr.step, tr.market_id, tr.kind.value, tr.price, tr.maker_id, taker])
    return path

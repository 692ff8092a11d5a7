"""Observables of a run: price level, volatility, volume, transaction probability.

Transaction probability is ``volume / steps`` (trades per submitted order
in one market). ``order_fill_rate`` is the literal per-order reading: a
local trade fills two orders, a cross trade fills one order per market.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from zihft.market import Trade, TradeKind


class NoTrades(ValueError):
    """Mean and volatility are undefined without trades."""


class NoVariance(ValueError):
    """Sample standard deviation needs at least two trades."""


class InsufficientRuns(ValueError):
    """Cross-run dispersion needs at least two runs."""


class OutOfRange(ValueError):
    """A price fell outside the histogram range."""


Bin = Tuple[float, float, int]


class HistogramSpec(NamedTuple):
    bin_width: float
    lo: float
    hi: float


SCALAR_METRICS = ("mean_price", "volatility", "volume", "txn_probability", "order_fill_rate")


@dataclass
class RunStats:
    mean_price: float
    volatility: float
    volume: float
    txn_probability: float
    order_fill_rate: float
    histogram: List[Bin] = field(default_factory=list)

    def scalars(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in SCALAR_METRICS}


def histogram(prices: Sequence[float], bin_width: float, range: Tuple[float, float]) -> List[Bin]:
    """Counts over ``[lo, lo + w), [lo + w, lo + 2w), ...``; the last bin is closed.

    Bins are added until they cover ``hi``, so the last upper edge may lie
    past ``hi``. Prices outside ``[lo, hi]`` raise OutOfRange.
    """
    lo, hi = range
    if bin_width <= 0:
        raise ValueError(f"bin_width must be positive, got {bin_width}")
    if not lo < hi:
        raise ValueError(f"empty histogram range [{lo}, {hi}]")
    nbins = max(1, math.ceil((hi - lo) / bin_width))
    counts = [0] * nbins
    for p in prices:
        if p < lo or p > hi:
            raise OutOfRange(f"price {p} outside [{lo}, {hi}]")
        counts[min(int((p - lo) // bin_width), nbins - 1)] += 1
    return [(lo + i * bin_width, lo + (i + 1) * bin_width, c) for i, c in enumerate(counts)]


def run_stats(trades: Sequence[Trade], steps: int, bins: HistogramSpec) -> RunStats:
    """Statistics of one market's trade log.

    Raises NoTrades on an empty log and NoVariance on a single trade; use
    ``market_stats`` for the lenient version that reports NaN instead.
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if not trades:
        raise NoTrades("no trades in run")
    if len(trades) < 2:
        raise NoVariance("volatility needs at least two trades")
    return _stats(trades, steps, bins)


def market_stats(trades: Sequence[Trade], steps: int, bins: HistogramSpec) -> RunStats:
    """Like ``run_stats`` but never raises for thin logs: undefined values become NaN."""
    return _stats(trades, steps, bins)


def _stats(trades: Sequence[Trade], steps: int, bins: HistogramSpec) -> RunStats:
    prices = np.fromiter((t.price for t in trades), dtype=float, count=len(trades))
    volume = len(trades)
    n_local = sum(1 for t in trades if t.kind is TradeKind.LOCAL)
    n_cross = volume - n_local
    return RunStats(
        mean_price=float(prices.mean()) if volume else math.nan,
        volatility=float(prices.std(ddof=1)) if volume > 1 else math.nan,
        volume=volume,
        txn_probability=volume / steps if steps else 0.0,
        order_fill_rate=(2 * n_local + n_cross) / steps if steps else 0.0,
        histogram=histogram(prices.tolist(), bins.bin_width, (bins.lo, bins.hi)),
    )


def _pair_mean(a: float, b: float) -> float:
    if math.isnan(a):
        return b
    if math.isnan(b):
        return a
    return (a + b) / 2


def per_market_average(stats0: RunStats, stats1: RunStats) -> RunStats:
    """Average the two markets' scalar metrics and sum their histograms.

    A metric undefined in one market (NaN) takes the other market's value.
    """
    if len(stats0.histogram) != len(stats1.histogram):
        raise ValueError("histograms use different binning")
    merged = [
        (lo, hi, c0 + c1)
        for (lo, hi, c0), (_, _, c1) in zip(stats0.histogram, stats1.histogram)
    ]
    return RunStats(
        **{name: _pair_mean(getattr(stats0, name), getattr(stats1, name)) for name in SCALAR_METRICS},
        histogram=merged,
    )


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    sd: float
    stderr: float
    ci95_low: float
    ci95_high: float
    n: int


@dataclass(frozen=True)
class AggregateStats:
    mean_price: MetricSummary
    volatility: MetricSummary
    volume: MetricSummary
    txn_probability: MetricSummary
    order_fill_rate: MetricSummary

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self)]


def summarize(values: Sequence[float]) -> MetricSummary:
    """Mean, sample sd, sd/sqrt(n) and a mean +/- 2 stderr interval; NaNs are skipped."""
    x = np.asarray([v for v in values if not math.isnan(v)], dtype=float)
    n = len(x)
    if n < 2:
        raise InsufficientRuns(f"need at least 2 defined values, got {n}")
    mean = float(x.mean())
    sd = float(x.std(ddof=1))
    se = sd / math.sqrt(n)
    return MetricSummary(mean, sd, se, mean - 2 * se, mean + 2 * se, n)


def aggregate(all_runs: Sequence[RunStats]) -> AggregateStats:
    if len(all_runs) < 2:
        raise InsufficientRuns(f"need at least 2 runs, got {len(all_runs)}")
    return AggregateStats(
        **{name: summarize([getattr(r, name) for r in all_runs]) for name in SCALAR_METRICS}
    )

"""Exact expectations for tiny configurations by full enumeration.

Every equally likely order sequence is replayed through ``run_scripted``,
so the rules under test are the production rules; only the probability
weighting is independent of the Monte Carlo path.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from zihft.config import SimConfig
from zihft.order_flow import Order, Side
from zihft.simulation import run_scripted

MAX_SEQUENCES = 10**7
MAX_STEPS = 6


class TooLarge(ValueError):
    """The enumeration would exceed the sequence budget."""


@dataclass(frozen=True)
class SmallConfig:
    steps: int
    prices: Tuple[int, ...] = (1, 2)
    hft_enabled: bool = False
    markets: int = 1

    def n_sequences(self) -> int:
        return (2 * len(self.prices)) ** (self.markets * self.steps)

    def validate(self) -> None:
        if self.markets not in (1, 2):
            raise ValueError(f"markets must be 1 or 2, got {self.markets}")
        if self.hft_enabled and self.markets != 2:
            raise ValueError("HFT needs two markets")
        if not self.prices:
            raise ValueError("price set is empty")
        if not 0 <= self.steps <= MAX_STEPS:
            raise TooLarge(f"steps must be in [0, {MAX_STEPS}], got {self.steps}")
        if self.n_sequences() > MAX_SEQUENCES:
            raise TooLarge(f"{self.n_sequences()} sequences exceeds {MAX_SEQUENCES}")


def exact_expectations(cfg: SmallConfig) -> Dict[str, object]:
    """Exact per-market expectations over all order sequences.

    Returns (all rationals):

    - ``expected_volume``: trades per market
    - ``txn_probability``: expected_volume / steps
    - ``p_any_trade``: probability that market 0 trades at least once
    - ``mean_price``: volume-weighted mean trade price, E[sum p] / E[volume]
    - ``price_variance``: pooled variance of trade prices, E[sum p^2] / E[volume] - mean^2

    ``volatility`` is the square root of the pooled variance (a float, since
    it is generally irrational). Price moments are None when no trade is possible.
    """
    cfg.validate()
    prices = tuple(sorted(cfg.prices))
    sim_cfg = SimConfig(
        steps=cfg.steps,
        runs=1,
        price_min=prices[0],
        price_max=prices[-1],
        hft_enabled=cfg.hft_enabled,
    )
    draws = [(side, p) for side in (Side.BUY, Side.SELL) for p in prices]
    n_slots = cfg.markets * cfg.steps
    total = cfg.n_sequences()

    sum_volume = 0
    any_trade = 0
    sum_price = Fraction(0)
    sum_price_sq = Fraction(0)
    for seq in itertools.product(draws, repeat=n_slots):
        script = []
        for t in range(cfg.steps):
            row = seq[t * cfg.markets:(t + 1) * cfg.markets]
            o0 = Order(t, 0, row[0][0], row[0][1], t)
            o1 = Order(t, 1, row[1][0], row[1][1], t) if cfg.markets == 2 else None
            script.append((o0, o1))
        result = run_scripted(sim_cfg, script)
        market_trades = result.trades[: cfg.markets]
        for trades in market_trades:
            sum_volume += len(trades)
            for tr in trades:
                p = Fraction(tr.price)
                sum_price += p
                sum_price_sq += p * p
        any_trade += bool(market_trades[0])

    denom = total * cfg.markets
    expected_volume = Fraction(sum_volume, denom)
    out: Dict[str, object] = {
        "sequences": total,
        "expected_volume": expected_volume,
        "txn_probability": expected_volume / cfg.steps if cfg.steps else Fraction(0),
        "p_any_trade": Fraction(any_trade, total),
        "mean_price": None,
        "price_variance": None,
        "volatility": None,
    }
    if sum_volume:
        mean = sum_price / sum_volume
        var = sum_price_sq / sum_volume - mean * mean
        out.update(mean_price=mean, price_variance=var, volatility=math.sqrt(var))
    return out

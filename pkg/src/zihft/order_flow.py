"""Seedable zero-intelligence order stream.

Every order is unit size, buy or sell with equal probability, and priced
uniformly over the integer ticks ``[price_min, price_max]`` (or over the
continuous interval when ``continuous_prices`` is set).
"""
from __future__ import annotations

import enum
from typing import NamedTuple, Union

import numpy as np

from zihft.config import MASK64, SimConfig

# draws are pulled from the generator in blocks; one order = one (side, price) pair
_CHUNK = 4096

_GAMMA = 0x9E3779B97F4A7C15


class Side(enum.Enum):
    BUY = "buy"
    SELL = "sell"


class Order(NamedTuple):
    id: int
    market_id: int
    side: Side
    price: Union[int, float]
    step: int
    size: int = 1


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer; a bijection on 64-bit integers."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_run_seed(master_seed: int, run_index: int) -> int:
    """Per-run seed: ``splitmix64(master_seed + (run_index + 1) * GAMMA mod 2**64)``.

    GAMMA is odd, so the additive step is injective in ``run_index`` modulo
    2**64, and the finalizer is a bijection; distinct run indices below 2**64
    therefore never collide for a fixed master seed.
    """
    if run_index < 0:
        raise ValueError(f"run_index must be >= 0, got {run_index}")
    return splitmix64(master_seed + (run_index + 1) * _GAMMA)


class OrderFlow:
    """One run's order generator. Single owner; never share between runs.

    ``rng`` may be a seed or anything exposing numpy's ``integers``/``random``
    (tests pass stubs). ``size_hint``, the number of orders the caller
    expects to draw, caps the block size so tiny runs stay cheap; the
    stream for a given (seed, cfg, size_hint) is fixed.
    """

    def __init__(self, rng, cfg: SimConfig, n_markets: int = 2, size_hint: int = _CHUNK):
        if isinstance(rng, (int, np.integer)):
            rng = np.random.Generator(np.random.PCG64(int(rng)))
        self.rng = rng
        self.cfg = cfg
        self._next_id = [0] * n_markets
        self._sides: list = []
        self._prices: list = []
        self._pos = 0
        self._chunk = max(1, min(_CHUNK, size_hint))

    def _refill(self) -> None:
        cfg = self.cfg
        self._sides = self.rng.integers(0, 2, size=self._chunk).tolist()
        if cfg.continuous_prices:
            u = self.rng.random(size=self._chunk)
            self._prices = (cfg.price_min + (cfg.price_max - cfg.price_min) * u).tolist()
        else:
            self._prices = self.rng.integers(cfg.price_min, cfg.price_max + 1, size=self._chunk).tolist()
        self._pos = 0

    def next_order(self, step: int, market_id: int) -> Order:
        if self._pos >= len(self._sides):
            self._refill()
        i = self._pos
        self._pos = i + 1
        oid = self._next_id[market_id]
        self._next_id[market_id] = oid + 1
        side = Side.BUY if self._sides[i] == 0 else Side.SELL
        return Order(oid, market_id, side, self._prices[i], step)


def next_order(rng: OrderFlow, step: int, market_id: int, cfg: SimConfig) -> Order:
    """Draw the next order for ``market_id``; ``cfg`` must be the flow's config."""
    if cfg is not rng.cfg and cfg != rng.cfg:
        raise ValueError("config does not match the order flow's config")
    return rng.next_order(step, market_id)

"""Per-run time-step loop over the two markets and the HFT check.

Each step: one order per market (market 0 drawn first), each market steps
independently, then, if HFT is on and neither market traded locally, the
coupler looks for a cross-market match.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from zihft.config import ConfigError, SimConfig
from zihft.hft import CrossMatch, execute_cross, try_cross
from zihft.market import MarketState, Trade, market_step
from zihft.order_book import Book
from zihft.order_flow import Order, OrderFlow, Side

# observer(step, states, traded_locally, cross) runs after every step
Observer = Callable[[int, Tuple[MarketState, MarketState], Tuple[bool, bool], Optional[CrossMatch]], None]

StepOrders = Tuple[Optional[Order], Optional[Order]]


@dataclass
class RunResult:
    config: SimConfig
    seed: Optional[int]
    states: Tuple[MarketState, MarketState]

    @property
    def trades(self) -> Tuple[List[Trade], List[Trade]]:
        return self.states[0].trades, self.states[1].trades

    @property
    def order_counts(self) -> Tuple[int, int]:
        return self.states[0].submitted, self.states[1].submitted


def _simulate(
    cfg: SimConfig,
    seed: Optional[int],
    orders: Iterable[StepOrders],
    observer: Optional[Observer] = None,
) -> RunResult:
    s0 = MarketState(0, Book(cfg.tie_break))
    s1 = MarketState(1, Book(cfg.tie_break))
    states = (s0, s1)
    hft = cfg.hft_enabled
    for t, (o0, o1) in enumerate(orders):
        traded0 = o0 is not None and market_step(s0, o0).traded_locally
        traded1 = o1 is not None and market_step(s1, o1).traded_locally
        cross = None
        if hft and not (traded0 or traded1):
            cross = try_cross(s0.book, s1.book)
            if cross is not None:
                execute_cross(s0, s1, cross, t)
        if observer is not None:
            observer(t, states, (traded0, traded1), cross)
    for s in states:
        if not s.conserved():
            raise RuntimeError(f"order accounting broken in market {s.market_id}")
    return RunResult(cfg, seed, states)


def run(cfg: SimConfig, seed: int, observer: Optional[Observer] = None) -> RunResult:
    """Simulate ``cfg.steps`` steps with orders drawn from a generator seeded by ``seed``."""
    cfg.validate()
    flow = OrderFlow(seed, cfg, size_hint=2 * cfg.steps)
    draw = flow.next_order

    def orders():
        for t in range(cfg.steps):
            o0 = draw(t, 0)
            yield o0, draw(t, 1)

    return _simulate(cfg, seed, orders(), observer)


def run_scripted(
    cfg: SimConfig,
    script: Sequence[StepOrders],
    observer: Optional[Observer] = None,
) -> RunResult:
    """Same as ``run`` but with injected orders.

    ``script[t]`` holds the orders for markets 0 and 1 at step t; ``None``
    means that market receives no order (used to look at one market alone).
    """
    cfg.validate()
    if len(script) != cfg.steps:
        raise ConfigError(f"script has {len(script)} steps, config expects {cfg.steps}")
    for t, pair in enumerate(script):
        for m, o in enumerate(pair):
            if o is None:
                continue
            if o.market_id != m:
                raise ConfigError(f"step {t}: order for market {o.market_id} in slot {m}")
            if o.step != t:
                raise ConfigError(f"step {t}: order stamped with step {o.step}")
    return _simulate(cfg, None, script, observer)


def make_script(steps: Sequence[Tuple[Optional[tuple], Optional[tuple]]]) -> List[StepOrders]:
    """Build a script from ``(side, price)`` pairs, e.g. ``[(("buy", 150), ("sell", 130))]``."""
    next_id = [0, 0]
    script = []
    for t, pair in enumerate(steps):
        row = []
        for m, spec in enumerate(pair):
            if spec is None:
                row.append(None)
                continue
            side, price = spec
            row.append(Order(next_id[m], m, Side(side), price, t))
            next_id[m] += 1
        script.append(tuple(row))
    return script

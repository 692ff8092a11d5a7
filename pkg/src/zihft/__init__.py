"""Two-market zero-intelligence double auction with an HFT cross-market synchronizer."""

from zihft.config import ConfigError, SimConfig
from zihft.order_flow import Order, OrderFlow, Side, derive_run_seed, next_order
from zihft.order_book import Book, LocalTrade, best_ask, best_bid, clear, insert, match_incoming
from zihft.market import MarketState, StepOutcome, Trade, TradeKind, market_step
from zihft.hft import CrossMatch, execute_cross, try_cross
from zihft.simulation import RunResult, make_script, run, run_scripted
from zihft.metrics import (
    AggregateStats,
    RunStats,
    aggregate,
    histogram,
    per_market_average,
    run_stats,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateStats",
    "Book",
    "ConfigError",
    "CrossMatch",
    "LocalTrade",
    "MarketState",
    "Order",
    "OrderFlow",
    "RunResult",
    "RunStats",
    "Side",
    "SimConfig",
    "StepOutcome",
    "Trade",
    "TradeKind",
    "aggregate",
    "best_ask",
    "best_bid",
    "clear",
    "derive_run_seed",
    "execute_cross",
    "histogram",
    "insert",
    "make_script",
    "market_step",
    "match_incoming",
    "next_order",
    "per_market_average",
    "run",
    "run_scripted",
    "run_stats",
    "try_cross",
]

"""One exchange's per-step semantics: match or rest, then clear on trade."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Union

from zihft.config import ConfigError
from zihft.order_book import Book, LocalTrade, clear, insert, match_incoming
from zihft.order_flow import Order


class TradeKind(enum.Enum):
    LOCAL = "local"
    CROSS = "cross"


class Trade(NamedTuple):
    step: int
    kind: TradeKind
    market_id: int
    # int for local trades; possibly a half tick for cross trades
    price: Union[int, float]
    maker_id: int
    # None for cross trades: the counterparty is the HFT
    taker_id: Optional[int]


@dataclass
class MarketState:
    market_id: int
    book: Book = field(default_factory=Book)
    next_order_id: int = 0
    trades: List[Trade] = field(default_factory=list)
    # order accounting: submitted == consumed + discarded + len(book)
    submitted: int = 0
    consumed: int = 0
    discarded: int = 0

    def clear_after_fill(self, filled: int) -> None:
        """Book-keeping for a trade that filled ``filled`` resting orders, then clear."""
        self.consumed += filled
        self.discarded += len(self.book) - filled
        clear(self.book)

    def conserved(self) -> bool:
        return self.submitted == self.consumed + self.discarded + len(self.book)


class StepOutcome(NamedTuple):
    traded_locally: bool
    trade: Optional[LocalTrade]


_NO_TRADE = StepOutcome(False, None)


def market_step(state: MarketState, incoming: Order) -> StepOutcome:
    """Submit one order: trade against the best opposing quote and clear, or rest."""
    if incoming.market_id != state.market_id:
        raise ConfigError(
            f"order for market {incoming.market_id} sent to market {state.market_id}"
        )
    if incoming.id < state.next_order_id:
        raise ConfigError(
            f"order id {incoming.id} not increasing in market {state.market_id}"
        )
    state.next_order_id = incoming.id + 1
    state.submitted += 1

    local = match_incoming(state.book, incoming)
    if local is None:
        insert(state.book, incoming)
        return _NO_TRADE
    state.trades.append(
        Trade(incoming.step, TradeKind.LOCAL, state.market_id, local.price, local.maker_id, local.taker_id)
    )
    # the maker leaves the book filled; the taker never entered it
    state.consumed += 1
    state.clear_after_fill(1)
    return StepOutcome(True, local)

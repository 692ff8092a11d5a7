"""Cross-market synchronizer.

When neither market traded locally but the best bid of one market meets
the best ask of the other, the HFT buys from the ask and sells to the bid
at their midpoint. Both legs print at the same price, so its profit and
inventory stay at zero.
"""
from __future__ import annotations

from typing import NamedTuple, Optional, Tuple, Union

from zihft.market import MarketState, Trade, TradeKind
from zihft.order_book import Book, BookContractError
from zihft.order_flow import Order


class CrossMatch(NamedTuple):
    bid_market: int
    bid: Order
    ask: Order
    # exact: the midpoint of two integer ticks is a multiple of 0.5
    price: Union[int, float]

    @property
    def ask_market(self) -> int:
        return 1 - self.bid_market


def try_cross(book0: Book, book1: Book) -> Optional[CrossMatch]:
    """Find a bid in one book that meets an ask in the other. Pure query."""
    books = (book0, book1)
    found = None
    for i in (0, 1):
        bids, asks = books[i].bids, books[1 - i].asks
        if bids and asks and bids[0].price >= asks[0].price:
            if found is not None:
                # unreachable when both books are uncrossed
                raise BookContractError(f"both cross directions open: {book0!r} / {book1!r}")
            found = CrossMatch(i, bids[0], asks[0], (bids[0].price + asks[0].price) / 2)
    return found


def execute_cross(
    state0: MarketState, state1: MarketState, m: CrossMatch, step: int
) -> Tuple[Trade, Trade]:
    """Print the cross trade in both markets and clear both books."""
    states = (state0, state1)
    bid_state, ask_state = states[m.bid_market], states[m.ask_market]
    if not (
        bid_state.book.bids
        and bid_state.book.bids[0] is m.bid
        and ask_state.book.asks
        and ask_state.book.asks[0] is m.ask
    ):
        raise BookContractError("stale CrossMatch: books changed since try_cross")
    trades = []
    for state in states:
        resting = m.bid if state is bid_state else m.ask
        trade = Trade(step, TradeKind.CROSS, state.market_id, m.price, resting.id, None)
        state.trades.append(trade)
        state.clear_after_fill(1)
        trades.append(trade)
    return trades[0], trades[1]

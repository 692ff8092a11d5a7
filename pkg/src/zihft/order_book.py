"""Single-market limit order book with price-time priority.

Trades execute at the resting (maker) order's price. Only the best
opposing quote can match: orders are unit size and every trade clears the
book, so there is never a second fill to walk to.
"""
from __future__ import annotations

from bisect import insort
from typing import List, NamedTuple, Optional, Union

from zihft.order_flow import Order, Side


class BookContractError(RuntimeError):
    """An operation would leave a book crossed; indicates an engine bug."""


class LocalTrade(NamedTuple):
    price: Union[int, float]
    maker_id: int
    taker_id: int
    market_id: int
    step: int


def _bid_key_time(o: Order):
    return (-o.price, o.id)


def _ask_key_time(o: Order):
    return (o.price, o.id)


def _bid_key_reverse(o: Order):
    return (-o.price, -o.id)


def _ask_key_reverse(o: Order):
    return (o.price, -o.id)


_KEYS = {
    "time": (_bid_key_time, _ask_key_time),
    "reverse": (_bid_key_reverse, _ask_key_reverse),
}


class Book:
    """Resting bids (best first) and asks (best first) for one market."""

    __slots__ = ("bids", "asks", "tie_break", "_bid_key", "_ask_key")

    def __init__(self, tie_break: str = "time"):
        self.bids: List[Order] = []
        self.asks: List[Order] = []
        self.tie_break = tie_break
        self._bid_key, self._ask_key = _KEYS[tie_break]

    def __len__(self) -> int:
        return len(self.bids) + len(self.asks)

    def __repr__(self) -> str:
        bids = [o.price for o in self.bids]
        asks = [o.price for o in self.asks]
        return f"Book(bids={bids}, asks={asks})"

    def is_crossed(self) -> bool:
        return bool(self.bids and self.asks and self.bids[0].price >= self.asks[0].price)


def best_bid(book: Book) -> Optional[Union[int, float]]:
    return book.bids[0].price if book.bids else None


def best_ask(book: Book) -> Optional[Union[int, float]]:
    return book.asks[0].price if book.asks else None


def match_incoming(book: Book, incoming: Order) -> Optional[LocalTrade]:
    """Return the trade ``incoming`` would make against the book, if any.

    Pure query; the book is left untouched.
    """
    if incoming.side is Side.BUY:
        if book.asks and book.asks[0].price <= incoming.price:
            maker = book.asks[0]
        else:
            return None
    else:
        if book.bids and book.bids[0].price >= incoming.price:
            maker = book.bids[0]
        else:
            return None
    return LocalTrade(maker.price, maker.id, incoming.id, incoming.market_id, incoming.step)


def insert(book: Book, order: Order) -> Book:
    """Rest ``order`` in the book. Raises BookContractError if it would cross."""
    if order.side is Side.BUY:
        if book.asks and book.asks[0].price <= order.price:
            raise BookContractError(
                f"buy @ {order.price} would cross best ask {book.asks[0].price}"
            )
        insort(book.bids, order, key=book._bid_key)
    else:
        if book.bids and book.bids[0].price >= order.price:
            raise BookContractError(
                f"sell @ {order.price} would cross best bid {book.bids[0].price}"
            )
        insort(book.asks, order, key=book._ask_key)
    return book


def clear(book: Book) -> Book:
    book.bids.clear()
    book.asks.clear()
    return book

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zihft.order_book import (
    Book,
    BookContractError,
    best_ask,
    best_bid,
    clear,
    insert,
    match_incoming,
)
from zihft.order_flow import Order, Side

BUY, SELL = Side.BUY, Side.SELL


def book_with(bids=(), asks=(), tie_break="time"):
    book = Book(tie_break)
    oid = 0
    for p in bids:
        insert(book, Order(oid, 0, BUY, p, 0))
        oid += 1
    for p in asks:
        insert(book, Order(oid, 0, SELL, p, 0))
        oid += 1
    return book


def test_best_quotes():
    assert best_bid(Book()) is None and best_ask(Book()) is None
    assert best_bid(book_with(bids=[115, 120])) == 120
    assert best_ask(book_with(asks=[140, 130])) == 130
    book = book_with(bids=[120], asks=[130])
    clear(book)
    assert best_bid(book) is None and best_ask(book) is None


def test_match_at_maker_price():
    book = Book()
    for i in range(3):
        insert(book, Order(i, 0, BUY, 10 + i, 0))
    insert(book, Order(3, 0, SELL, 110, 0))
    trade = match_incoming(book, Order(4, 0, BUY, 120, 1))
    assert trade.price == 110 and trade.maker_id == 3 and trade.taker_id == 4


def test_sell_hits_best_bid():
    book = book_with(bids=[120, 115])
    trade = match_incoming(book, Order(9, 0, SELL, 115, 1))
    assert trade.price == 120 and trade.maker_id == 0


def test_empty_book_never_matches():
    assert match_incoming(Book(), Order(0, 0, BUY, 200, 0)) is None
    assert match_incoming(Book(), Order(0, 0, SELL, 1, 0)) is None


def test_insert_keeps_priority():
    book = book_with(bids=[50])
    assert [o.price for o in book.bids] == [50]
    book = book_with(bids=[120, 115])
    assert [o.price for o in book.bids] == [120, 115]
    book = book_with(asks=[130], bids=[])
    with pytest.raises(BookContractError):
        insert(book, Order(5, 0, BUY, 140, 0))


def test_time_priority_among_equal_prices():
    book = book_with(bids=[100, 100, 100])
    assert [o.id for o in book.bids] == [0, 1, 2]
    assert match_incoming(book, Order(9, 0, SELL, 90, 0)).maker_id == 0
    rev = book_with(bids=[100, 100, 100], tie_break="reverse")
    assert match_incoming(rev, Order(9, 0, SELL, 90, 0)).maker_id == 2


def test_clear_idempotent():
    book = book_with(bids=[1, 2], asks=[7])
    clear(book)
    assert len(book) == 0
    clear(book)
    assert len(book) == 0


orders = st.lists(st.tuples(st.sampled_from([BUY, SELL]), st.integers(1, 20)), max_size=60)


@given(orders)
def test_book_never_crossed_and_maker_rule(flow):
    book = Book()
    for i, (side, price) in enumerate(flow):
        o = Order(i, 0, side, price, i)
        before = (list(book.bids), list(book.asks))
        trade = match_incoming(book, o)
        assert match_incoming(book, o) == trade  # pure
        assert (book.bids, book.asks) == before
        if trade is None:
            insert(book, o)
        else:
            resting = {r.id: r for r in book.bids + book.asks}[trade.maker_id]
            assert trade.price == resting.price
            assert resting.side is not side
            assert price >= trade.price if side is BUY else price <= trade.price
            clear(book)
        assert not book.is_crossed()
        assert [r.price for r in book.bids] == sorted((r.price for r in book.bids), reverse=True)
        assert [r.price for r in book.asks] == sorted(r.price for r in book.asks)

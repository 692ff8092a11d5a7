import numpy as np
import pytest
from scipy import stats

from zihft.config import SimConfig
from zihft.order_flow import OrderFlow, Side, derive_run_seed, next_order, splitmix64


class MaxDrawRng:
    """Stub generator that always returns the largest admissible draw."""

    def integers(self, low, high, size):
        return np.full(size, high - 1)

    def random(self, size):
        return np.full(size, np.nextafter(1.0, 0.0))


def test_degenerate_price_range():
    cfg = SimConfig(price_min=5, price_max=5)
    flow = OrderFlow(3, cfg)
    assert {next_order(flow, t, t % 2, cfg).price for t in range(1000)} == {5}


def test_max_draw_maps_to_price_max():
    cfg = SimConfig()
    flow = OrderFlow(MaxDrawRng(), cfg)
    o = next_order(flow, 0, 0, cfg)
    assert o.price == 200
    assert o.side is Side.SELL


def test_ids_increase_per_market():
    cfg = SimConfig()
    flow = OrderFlow(7, cfg)
    orders = [next_order(flow, t, m, cfg) for t in range(50) for m in (0, 1)]
    for m in (0, 1):
        ids = [o.id for o in orders if o.market_id == m]
        assert ids == list(range(50))
    assert all(o.size == 1 for o in orders)


@pytest.fixture(scope="module")
def million_orders():
    cfg = SimConfig()
    flow = OrderFlow(20240601, cfg)
    return [flow.next_order(i // 2, i % 2) for i in range(10**6)]


def test_side_and_price_moments(million_orders):
    # n = 1e6: sd(buy fraction) = 5e-4, sd(mean price) = 57.73 / 1000 = 0.058
    buy = sum(o.side is Side.BUY for o in million_orders) / len(million_orders)
    mean = sum(o.price for o in million_orders) / len(million_orders)
    assert abs(buy - 0.5) <= 0.002
    assert abs(mean - 100.5) <= 0.2


def test_prices_within_bounds(million_orders):
    prices = [o.price for o in million_orders]
    assert min(prices) >= 1 and max(prices) <= 200
    assert all(isinstance(p, int) for p in prices[:1000])


def test_prices_chi_square_uniform(million_orders):
    counts = np.bincount([o.price for o in million_orders], minlength=201)[1:]
    assert len(counts) == 200
    assert stats.chisquare(counts).pvalue > 0.001


def test_same_seed_same_stream():
    cfg = SimConfig()
    a, b = OrderFlow(99, cfg), OrderFlow(99, cfg)
    assert [a.next_order(t, 0) for t in range(10000)] == [b.next_order(t, 0) for t in range(10000)]


def test_continuous_prices_option():
    cfg = SimConfig(continuous_prices=True)
    flow = OrderFlow(1, cfg)
    prices = [flow.next_order(t, 0).price for t in range(1000)]
    assert all(1 <= p <= 200 for p in prices)
    assert any(p != int(p) for p in prices)


def test_derive_run_seed_basics():
    s = 0xDEADBEEF
    assert derive_run_seed(s, 0) != derive_run_seed(s, 1)
    assert derive_run_seed(s, 5) == derive_run_seed(s, 5)
    seeds = [derive_run_seed(s, k) for k in range(10**4)]
    assert len(set(seeds)) == len(seeds)
    assert all(0 <= x < 2**64 for x in seeds)
    with pytest.raises(ValueError):
        derive_run_seed(s, -1)


def test_splitmix_reference_value():
    # first output of the reference SplitMix64 generator seeded with 0
    assert splitmix64(0x9E3779B97F4A7C15) == 0xE220A8397B1DCDAF

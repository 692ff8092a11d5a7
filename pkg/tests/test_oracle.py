import itertools
from fractions import Fraction

import pytest

from zihft.config import SimConfig
from zihft.oracle import SmallConfig, TooLarge, exact_expectations
from zihft.simulation import run


def reference_volume(seq):
    """Trades in one market for one order sequence, tracking only best quotes."""
    bid = ask = None
    volume = 0
    for side, p in seq:
        if side == "buy":
            if ask is not None and ask <= p:
                volume, bid, ask = volume + 1, None, None
            elif bid is None or p > bid:
                bid = p
        else:
            if bid is not None and bid >= p:
                volume, bid, ask = volume + 1, None, None
            elif ask is None or p < ask:
                ask = p
    return volume


def reference_expected_volume(steps, prices):
    draws = [(s, p) for s in ("buy", "sell") for p in prices]
    seqs = list(itertools.product(draws, repeat=steps))
    return Fraction(sum(reference_volume(s) for s in seqs), len(seqs))


def test_two_step_hand_value():
    out = exact_expectations(SmallConfig(steps=2, prices=(1, 2)))
    # 16 sequences; 6 cross: (b1,s1) (b2,s1) (b2,s2) (s1,b1) (s1,b2) (s2,b2)
    assert out["p_any_trade"] == Fraction(3, 8)
    assert out["expected_volume"] == Fraction(3, 8)
    assert out["txn_probability"] == Fraction(3, 16)


def test_single_step_never_trades():
    for cfg in (SmallConfig(1), SmallConfig(1, (1, 2, 3)), SmallConfig(1, markets=2)):
        assert exact_expectations(cfg)["expected_volume"] == 0


def test_two_market_single_step_hft():
    # a cross needs a bid in one market and an ask in the other with bid >= ask:
    # 3 of 4 price pairs, 2 directions, out of 16 draws
    out = exact_expectations(SmallConfig(1, (1, 2), hft_enabled=True, markets=2))
    assert out["p_any_trade"] == Fraction(6, 16)
    assert out["expected_volume"] == Fraction(6, 16)
    # cross prices 1, 1.5, 2 equally often
    assert out["mean_price"] == Fraction(3, 2)
    assert out["price_variance"] == Fraction(1, 6)


@pytest.mark.parametrize("steps,prices", [(2, (1, 2)), (3, (1, 2)), (4, (1, 2)), (3, (1, 2, 3))])
def test_matches_independent_reference(steps, prices):
    out = exact_expectations(SmallConfig(steps, prices))
    assert out["expected_volume"] == reference_expected_volume(steps, prices)


def test_two_markets_without_hft_equal_one_market():
    one = exact_expectations(SmallConfig(2, (1, 2)))
    two = exact_expectations(SmallConfig(2, (1, 2), markets=2))
    assert one["expected_volume"] == two["expected_volume"]


def test_too_large():
    with pytest.raises(TooLarge):
        exact_expectations(SmallConfig(7, (1, 2)))
    with pytest.raises(TooLarge):
        exact_expectations(SmallConfig(6, tuple(range(1, 10)), markets=2))


@pytest.mark.parametrize(
    "small",
    [SmallConfig(3, (1, 2)), SmallConfig(2, (1, 2, 3)), SmallConfig(2, (1, 2), hft_enabled=True, markets=2)],
)
def test_monte_carlo_agreement(small):
    exact = exact_expectations(small)
    cfg = SimConfig(steps=small.steps, price_min=min(small.prices), price_max=max(small.prices),
                    hft_enabled=small.hft_enabled)
    n = 20_000
    hits = sum(bool(run(cfg, seed).trades[0]) for seed in range(n))
    p = float(exact["p_any_trade"])
    sd = (p * (1 - p) / n) ** 0.5
    assert abs(hits / n - p) <= 4 * sd

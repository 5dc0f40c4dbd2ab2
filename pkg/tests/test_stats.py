from fractions import Fraction

import numpy as np
import pytest

from coinpurse import US, TOY, PriceModel, StrategySpec, Kind, build_chain, stationary_distribution
from coinpurse.errors import AlignmentError, DimensionMismatch
from coinpurse.stats import (
    US_MINT_2014,
    ReferenceDistribution,
    distribution_distance,
    lower_bound_check,
    report,
    round_half_away,
    shares_percent,
)


@pytest.fixture(scope="module")
def toy_report():
    space, m = build_chain(TOY, StrategySpec(Kind.BIG_SPENDER), PriceModel((0, 25, 50, 75)))
    return report(stationary_distribution(m), space)


def test_toy_statistics(toy_report):
    assert toy_report.expected_coins == pytest.approx(9 / 8, abs=1e-9)
    assert toy_report.expected_value_cents == pytest.approx(37.5, abs=1e-9)
    halves, quarters = toy_report.expected_per_denomination
    assert quarters == pytest.approx(3 / 4, abs=1e-9)
    assert halves == pytest.approx(3 / 8, abs=1e-9)


def test_toy_marginal_and_conditional(toy_report):
    m = toy_report.value_marginal
    assert sum(m) == pytest.approx(1)
    assert [n for n, x in enumerate(m) if x > 1e-15] == [0, 25, 50, 75]
    assert sum(n * x for n, x in enumerate(m)) == pytest.approx(toy_report.expected_value_cents)
    e = toy_report.conditional_expected_coins
    assert e[1] is None and e[0] == 0
    # value 75: {50,25} w.p. 7/32 and {25,25,25} w.p. 1/32
    assert e[75] == pytest.approx((7 / 32 * 2 + 1 / 32 * 3) / (8 / 32))


def test_toy_lower_bound(toy_report):
    assert lower_bound_check(toy_report, TOY)
    assert toy_report.expected_coins >= 1  # minimalist value in the toy currency


def test_report_invariants(us_big):
    rep = us_big.report
    assert rep.expected_coins == pytest.approx(sum(rep.expected_per_denomination))
    assert sum(rep.circulation_shares) == pytest.approx(100)
    assert sum(rep.value_marginal) == pytest.approx(1)
    assert np.allclose(rep.value_marginal, 0.01, atol=1e-9, rtol=0)
    assert rep.state_count == 6720 and rep.residual <= 1e-12
    probs = [p for _, p in rep.top_states]
    assert probs == sorted(probs, reverse=True)


def test_minimalist_lower_bound_tight(us_minimalist):
    rep = us_minimalist.report
    assert lower_bound_check(rep, US)
    from coinpurse.currency import min_coin_counts
    g = min_coin_counts(US)
    assert all(abs(e - g[n]) < 1e-9 for n, e in enumerate(rep.conditional_expected_coins))


def test_big_spender_lower_bound_strict(us_big):
    from coinpurse.currency import min_coin_counts
    rep = us_big.report
    g = min_coin_counts(US)
    assert lower_bound_check(rep, US)
    assert any(e > g[n] + 1e-6 for n, e in enumerate(rep.conditional_expected_coins))


def test_lower_bound_detects_violation(us_minimalist):
    from dataclasses import replace
    rep = us_minimalist.report
    broken = list(rep.conditional_expected_coins)
    broken[99] = 1.0
    assert not lower_bound_check(replace(rep, conditional_expected_coins=tuple(broken)), US)


def test_alignment():
    space, m = build_chain(TOY, StrategySpec(Kind.BIG_SPENDER), PriceModel((0, 25, 50, 75)))
    with pytest.raises(AlignmentError):
        report(np.ones(5) / 5, space)


def test_mint_reference():
    assert [round_half_away(s, 1) for s in US_MINT_2014.shares] == [11.9, 17.4, 9.1, 61.6]
    with pytest.raises(ValueError):
        ReferenceDistribution("bad", (50.0, 20.0))


def test_distance():
    assert distribution_distance((1, 2, 3), (1, 2, 3)) == 0
    assert distribution_distance((0, 3), (4, 0)) == 5
    with pytest.raises(DimensionMismatch):
        distribution_distance((1, 2), US_MINT_2014)


def test_shares():
    assert shares_percent([Fraction(3, 2), Fraction(4, 5), Fraction(2, 5), 2]) == pytest.approx(
        (150 / 4.7, 80 / 4.7, 40 / 4.7, 200 / 4.7))
    assert shares_percent([0, 0]) == (0.0, 0.0)


@pytest.mark.parametrize("x, places, out", [(0.125, 2, 0.13), (-0.125, 2, -0.13), (10.0457, 2, 10.05),
                                            (42.553, 1, 42.6), (2.5, 0, 3.0)])
def test_round_half_away(x, places, out):
    assert round_half_away(x, places) == out


def test_json_keys(us_big):
    doc = us_big.report.to_json()
    for key in ("expected_coins", "expected_value_cents", "per_denomination", "shares_percent",
                "top_states", "value_marginal", "residual", "state_count"):
        assert key in doc
    assert doc["top_states"][0] == {"state": "{}", "probability": pytest.approx(0.01, abs=5e-5)}


def test_keeper_versus_big_spender_distance(us_big):
    # frozen from an independent float computation on the published share vectors
    keeper = distribution_distance((150 / 4.7, 80 / 4.7, 40 / 4.7, 200 / 4.7), US_MINT_2014)
    rounded_big = distribution_distance((10.6, 11.5, 9.1, 68.9), US_MINT_2014)
    assert keeper == pytest.approx(27.578164, abs=1e-6)
    assert rounded_big == pytest.approx(9.513627, abs=1e-6)
    big = distribution_distance(us_big.report.circulation_shares, US_MINT_2014)
    assert 2 < keeper / big < 3

from fractions import Fraction

import pytest

from coinpurse.cashier import CashierRule, make_change
from coinpurse.currency import SHALLIT, TOY, US, minimal_partitions
from coinpurse.errors import AmbiguousChange, UnrepresentableAmount


def as_pairs(dist):
    return sorted((tuple(m.coins()), p) for m, p in dist)


def test_shallit_77_split():
    dist = make_change(77, SHALLIT, CashierRule.MINIMAL_SPLIT)
    assert as_pairs(dist) == [((18, 18, 18, 18, 5), Fraction(1, 2)), ((25, 25, 25, 1, 1), Fraction(1, 2))]


def test_us_30():
    assert as_pairs(make_change(30, US, CashierRule.MINIMAL_SPLIT)) == [((25, 5), 1)]


@pytest.mark.parametrize("currency", [US, SHALLIT, TOY])
@pytest.mark.parametrize("rule", list(CashierRule))
def test_zero(currency, rule):
    assert as_pairs(make_change(0, currency, rule)) == [((), 1)]


def test_us_all_rules_agree():
    for n in range(100):
        outs = {tuple(as_pairs(make_change(n, US, rule))) for rule in CashierRule}
        assert len(outs) == 1


def test_shallit_two_outcome_amounts():
    two = [n for n in range(100) if len(make_change(n, SHALLIT, CashierRule.MINIMAL_SPLIT)) == 2]
    assert two == [77, 82, 95]


def test_outcomes_have_minimal_size_and_sum_to_one():
    for n in range(100):
        dist = make_change(n, SHALLIT, CashierRule.MINIMAL_SPLIT)
        g = len(minimal_partitions(n, SHALLIT)[0])
        assert sum(p for _, p in dist) == 1
        assert all(len(m) == g and m.total == n for m, _ in dist)


def test_unique_rule_refuses_ties():
    with pytest.raises(AmbiguousChange):
        make_change(82, SHALLIT, CashierRule.MINIMAL_UNIQUE)
    assert len(make_change(28, SHALLIT, CashierRule.MINIMAL_UNIQUE)) == 1


def test_greedy_rule_can_be_non_minimal():
    assert as_pairs(make_change(28, SHALLIT, CashierRule.GREEDY)) == [((25, 1, 1, 1), 1)]


def test_unrepresentable():
    with pytest.raises(UnrepresentableAmount):
        make_change(10, TOY, CashierRule.MINIMAL_SPLIT)


def test_parse():
    assert CashierRule.parse("minimal_split") is CashierRule.MINIMAL_SPLIT
    with pytest.raises(ValueError):
        CashierRule.parse("random")

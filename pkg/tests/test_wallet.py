from itertools import product

import numpy as np
import pytest

from coinpurse.currency import SHALLIT, TOY, US, CoinMultiset
from coinpurse.wallet import StateSpace, WalletConstraints, enumerate_states, total_value


def test_total_value():
    assert total_value(CoinMultiset((0, 0, 0, 0), US.denominations)) == 0
    assert total_value(US.multiset([25, 10, 1, 1])) == 37
    assert total_value(TOY.multiset([50, 25])) == 75


@pytest.mark.parametrize("currency, constraints, count", [
    (US, WalletConstraints(), 6720),
    (US, WalletConstraints(caps={1: 4}), 1065),
    (US, WalletConstraints(forbidden_denominations={25}), 4125),
    (US, WalletConstraints(forbidden_denominations={1}), 213),
    (SHALLIT, WalletConstraints(), 4238),
    (TOY, WalletConstraints(), 6),
])
def test_state_counts(currency, constraints, count):
    assert len(enumerate_states(currency, constraints)) == count


def test_toy_states():
    space = enumerate_states(TOY)
    assert [str(s) for s in space] == ["{}", "{25}", "{25,25}", "{25,25,25}", "{50}", "{50,25}"]


def test_box_filter_agrees_at_us_scale():
    # filter the full 4 x 10 x 20 x 100 box of count vectors
    box = [c for c in product(range(4), range(10), range(20), range(100))
           if 25 * c[0] + 10 * c[1] + 5 * c[2] + c[3] <= 99]
    assert len(box) == 6720
    assert list(enumerate_states(US).states) == box  # product order is the canonical order


def test_order_is_deterministic_and_indexed():
    a, b = enumerate_states(SHALLIT), enumerate_states(SHALLIT)
    assert a.states == b.states
    assert list(a.states) == sorted(a.states)
    assert all(a.position(s) == i for i, s in enumerate(a.states))
    assert np.array_equal(a.counts, np.array(a.states))


def test_every_state_admissible():
    c = WalletConstraints(max_total_value=60, caps={1: 4}, forbidden_denominations={10})
    space = enumerate_states(US, c)
    for s in space:
        assert s.total <= 60 and s.counts[3] <= 4 and s.counts[1] == 0
    assert np.all(space.totals <= 60)


def test_from_states_sorts_and_checks():
    space = StateSpace.from_states(US, WalletConstraints(), [(0, 0, 0, 2), (0, 0, 0, 0), (0, 0, 0, 2)])
    assert space.states == ((0, 0, 0, 0), (0, 0, 0, 2))
    with pytest.raises(ValueError):
        StateSpace.from_states(US, WalletConstraints(), [(4, 0, 0, 0)])


@pytest.mark.parametrize("constraints", [
    WalletConstraints(max_total_value=100),
    WalletConstraints(forbidden_denominations={3}),
    WalletConstraints(caps={2: 1}),
])
def test_invalid_constraints(constraints):
    with pytest.raises(ValueError):
        enumerate_states(US, constraints)

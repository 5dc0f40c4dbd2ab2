import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coinpurse import SHALLIT, US, PriceModel, build_chain, preset, stationary_distribution  # noqa: E402
from coinpurse.stats import report  # noqa: E402


class Solved:
    def __init__(self, currency, name):
        spec, prices = preset(name, currency)
        self.spec = spec
        self.prices = PriceModel(tuple(prices)) if prices else PriceModel.uniform(currency.modulus)
        self.space, self.matrix = build_chain(currency, spec, self.prices)
        self.dist = stationary_distribution(self.matrix)
        self.report = report(self.dist, self.space)


_cache = {}


def solved(currency, name):
    key = (currency, name)
    if key not in _cache:
        _cache[key] = Solved(currency, name)
    return _cache[key]


@pytest.fixture(scope="session")
def us_big():
    return solved(US, "big-spender")


@pytest.fixture(scope="session")
def us_pennies_first():
    return solved(US, "pennies-first")


@pytest.fixture(scope="session")
def us_pennies_separate():
    return solved(US, "pennies-separate")


@pytest.fixture(scope="session")
def us_pennyless():
    return solved(US, "pennyless")


@pytest.fixture(scope="session")
def us_hoarder():
    return solved(US, "quarter-hoarder")


@pytest.fixture(scope="session")
def us_heavy():
    return solved(US, "heavy-spender")


@pytest.fixture(scope="session")
def us_minimalist():
    return solved(US, "minimalist")


@pytest.fixture(scope="session")
def shallit_big():
    return solved(SHALLIT, "big-spender")


@pytest.fixture(scope="session")
def shallit_minimalist():
    return solved(SHALLIT, "minimalist")

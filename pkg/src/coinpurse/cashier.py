"""How a cashier hands back change, including random tie-splitting."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from coinpurse.currency import CoinMultiset, Currency, greedy_partition, minimal_partitions
from coinpurse.errors import AmbiguousChange


class CashierRule(enum.Enum):
    GREEDY = "greedy"
    MINIMAL_UNIQUE = "minimal-unique"
    MINIMAL_SPLIT = "minimal-split"

    @classmethod
    def parse(cls, text: str) -> "CashierRule":
        key = text.strip().lower().replace("_", "-")
        for rule in cls:
            if rule.value == key:
                return rule
        raise ValueError(f"unknown cashier rule {text!r}; expected one of "
                         f"{', '.join(r.value for r in cls)}")


@dataclass(frozen=True)
class ChangeDistribution:
    outcomes: tuple[tuple[CoinMultiset, Fraction], ...]

    def __post_init__(self):
        if sum(p for _, p in self.outcomes) != 1:
            raise ValueError("change probabilities must sum to 1")

    def __len__(self):
        return len(self.outcomes)

    def __iter__(self):
        return iter(self.outcomes)


@lru_cache(maxsize=4096)
def make_change(amount: int, currency: Currency, rule: CashierRule = CashierRule.MINIMAL_SPLIT) -> ChangeDistribution:
    """Distribution of the coins handed back for ``amount`` cents under ``rule``.

    ``minimal-split`` is uniform over all fewest-coin partitions.
    """
    if rule is CashierRule.GREEDY:
        return ChangeDistribution(((greedy_partition(amount, currency), Fraction(1)),))
    options = minimal_partitions(amount, currency)
    if len(options) > 1 and rule is CashierRule.MINIMAL_UNIQUE:
        raise AmbiguousChange(f"{amount} cents has {len(options)} minimal partitions in {currency}: "
                              + ", ".join(map(str, options)))
    share = Fraction(1, len(options))
    return ChangeDistribution(tuple((m, share) for m in options))


def change_table(currency: Currency, rule: CashierRule) -> list[ChangeDistribution]:
    """``make_change`` for every amount 0..modulus-1."""
    return [make_change(n, currency, rule) for n in range(currency.modulus)]

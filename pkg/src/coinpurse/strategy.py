"""Spending strategies: which coins leave the wallet and what comes back."""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from coinpurse.cashier import CashierRule, make_change
from coinpurse.currency import CoinMultiset, Currency
from coinpurse.errors import ConfigurationError, ConstraintViolation, InsufficientFunds
from coinpurse.wallet import WalletConstraints


class Kind(enum.Enum):
    MINIMALIST = "minimalist"
    BIG_SPENDER = "big_spender"
    PENNIES_FIRST = "pennies_first"
    PENNIES_SEPARATE = "pennies_separate"
    HEAVY_SPENDER = "heavy_spender"


class TieRule(enum.Enum):
    FAVOR_BIG_COINS = "favor_big_coins"
    FAVOR_MANY_COINS = "favor_many_coins"


@dataclass(frozen=True)
class StrategySpec:
    kind: Kind
    constraints: WalletConstraints = field(default_factory=WalletConstraints)
    discard_denominations: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "discard_denominations", frozenset(self.discard_denominations))
        if not self.discard_denominations <= self.constraints.forbidden_denominations:
            raise ConfigurationError("discarded denominations must also be forbidden in the wallet")

    @property
    def tie_rule(self) -> TieRule:
        if self.kind is Kind.HEAVY_SPENDER:
            return TieRule.FAVOR_MANY_COINS
        return TieRule.FAVOR_BIG_COINS

    def validate(self, currency: Currency) -> None:
        self.constraints.validate(currency)
        if self.kind in (Kind.PENNIES_FIRST, Kind.PENNIES_SEPARATE):
            penny_modulus(currency)
            if 1 in self.constraints.forbidden_denominations:
                raise ConfigurationError(f"{self.kind.value} cannot run with pennies forbidden")


def penny_modulus(currency: Currency) -> int:
    """The coin size pennies are spent against (5 for US coins): the smallest non-penny coin."""
    denoms = currency.denominations
    if denoms[-1] != 1 or len(denoms) < 2:
        raise ConfigurationError(f"penny strategies need a 1-cent coin and another coin; got {currency}")
    return denoms[-2]


@dataclass(frozen=True)
class TransactionOutcome:
    outcomes: tuple[tuple[CoinMultiset, Fraction], ...]

    def __iter__(self):
        return iter(self.outcomes)

    def __len__(self):
        return len(self.outcomes)

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return {w.counts: p for w, p in self.outcomes}


def _counts(wallet) -> tuple[int, ...]:
    return wallet.counts if isinstance(wallet, CoinMultiset) else tuple(wallet)


def minimal_overpay_payments(wallet: CoinMultiset, price: int) -> list[CoinMultiset]:
    """Every sub-multiset of ``wallet`` whose total is the least total >= ``price``.

    Subset-sum reachability is tabulated per suffix of denominations, so the
    work is polynomial in the wallet's value rather than exponential in its size.
    """
    counts, denoms = wallet.counts, wallet.denominations
    total = wallet.total
    if price > total:
        raise InsufficientFunds(f"wallet {wallet} ({total} cents) cannot cover {price}")
    price = max(price, 0)
    k = len(denoms)
    # reach[i]: bitmask of totals reachable from counts[i:]
    reach = [0] * (k + 1)
    reach[k] = 1
    for i in range(k - 1, -1, -1):
        mask, d = reach[i + 1], denoms[i]
        acc = mask
        for _ in range(counts[i]):
            mask <<= d
            acc |= mask
        reach[i] = acc
    target = price
    while not (reach[0] >> target) & 1:
        target += 1

    found = []

    def walk(i, rest, prefix):
        if i == k:
            found.append(CoinMultiset(tuple(prefix), denoms))
            return
        d = denoms[i]
        for x in range(min(counts[i], rest // d), -1, -1):
            if (reach[i + 1] >> (rest - x * d)) & 1:
                prefix.append(x)
                walk(i + 1, rest - x * d, prefix)
                prefix.pop()

    walk(0, target, [])
    return found


def tie_break(candidates: Iterable[CoinMultiset], rule: TieRule = TieRule.FAVOR_BIG_COINS) -> CoinMultiset:
    """Choose one payment among equally good ones.

    Big coins: the lexicographically greatest descending coin list. Many
    coins: the largest payment, big coins breaking any remaining tie.
    """
    candidates = list(candidates)
    if not candidates:
        raise ValueError("no candidates to choose from")
    rule = TieRule(rule)
    if rule is TieRule.FAVOR_BIG_COINS:
        return max(candidates, key=lambda m: m.coins())
    return max(candidates, key=lambda m: (len(m), m.coins()))


def _big_spend(counts, price, currency, cashier, rule):
    """(remaining wallet counts, change distribution) for one big-spender payment."""
    wallet = CoinMultiset(counts, currency.denominations)
    if wallet.total < price:
        return counts, make_change((currency.modulus - price) % currency.modulus, currency, cashier)
    pay = tie_break(minimal_overpay_payments(wallet, price), rule)
    left = tuple(c - p for c, p in zip(counts, pay.counts))
    return left, make_change(pay.total - price, currency, cashier)


def transact(wallet: CoinMultiset, price: int, spec: StrategySpec, currency: Currency,
             cashier: CashierRule = CashierRule.MINIMAL_SPLIT) -> TransactionOutcome:
    """Distribution of the wallet after one purchase at ``price``.

    Each resulting wallet is checked against the strategy's constraints,
    including the bound on total value; a violation raises ConstraintViolation.
    """
    counts = _counts(wallet)
    denoms = currency.denominations
    mod = currency.modulus
    if not 0 <= price < mod:
        raise ValueError(f"price {price} outside 0..{mod - 1}")
    dist: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    kind = spec.kind

    if kind is Kind.MINIMALIST:
        value = sum(c * d for c, d in zip(counts, denoms))
        for change, p in make_change((value - price) % mod, currency, cashier):
            dist[change.counts] += p
    elif kind is Kind.PENNIES_SEPARATE:
        five = penny_modulus(currency)
        r = price % five
        pennies = counts[-1]
        pennies = pennies - r if pennies >= r else pennies + five - r
        rest = counts[:-1] + (0,)
        left, change = _big_spend(rest, price - r, currency, cashier, spec.tie_rule)
        for got, p in change:
            nxt = tuple(a + b for a, b in zip(left, got.counts))
            dist[nxt[:-1] + (nxt[-1] + pennies,)] += p
    else:
        if kind is Kind.PENNIES_FIRST:
            r = price % penny_modulus(currency)
            if counts[-1] >= r:
                counts = counts[:-1] + (counts[-1] - r,)
                price -= r
        left, change = _big_spend(counts, price, currency, cashier, spec.tie_rule)
        for got, p in change:
            dist[tuple(a + b for a, b in zip(left, got.counts))] += p

    drop = [currency.index(d) for d in spec.discard_denominations]
    outcomes = defaultdict(Fraction)
    for nxt, p in dist.items():
        if drop:
            nxt = tuple(0 if i in drop else c for i, c in enumerate(nxt))
        if not spec.constraints.admits(nxt, currency):
            raise ConstraintViolation(
                f"{kind.value}: wallet {CoinMultiset(counts, denoms)} at price {price} "
                f"led to {CoinMultiset(nxt, denoms)}, outside {spec.constraints}")
        outcomes[nxt] += p
    return TransactionOutcome(tuple((CoinMultiset(s, denoms), p) for s, p in sorted(outcomes.items())))


def coin_keeper_tally(currency: Currency, cashier: CashierRule = CashierRule.MINIMAL_SPLIT,
                      prices: Iterable[int] | None = None) -> tuple[Fraction, ...]:
    """Expected coins of each denomination received per purchase by someone who never spends coins."""
    prices = list(range(currency.modulus)) if prices is None else list(prices)
    sums = [Fraction(0)] * len(currency)
    for price in prices:
        for change, p in make_change((currency.modulus - price) % currency.modulus, currency, cashier):
            for i, c in enumerate(change.counts):
                sums[i] += p * c
    return tuple(s / len(prices) for s in sums)


def minimalist_states(currency: Currency, cashier: CashierRule = CashierRule.MINIMAL_SPLIT) -> list[tuple[int, ...]]:
    """Wallets a minimalist can hold: the cashier's possible change for each amount."""
    states = set()
    for n in range(currency.modulus):
        for change, _ in make_change(n, currency, cashier):
            states.add(change.counts)
    return sorted(states)


# CLI names -> (kind, how the preset shapes constraints and prices)
STRATEGY_NAMES = (
    "minimalist", "big-spender", "pennies-first", "pennies-separate",
    "heavy-spender", "pennyless", "quarter-hoarder", "coin-keeper",
)


def preset(name: str, currency: Currency) -> tuple[StrategySpec, list[int] | None]:
    """Strategy for a CLI name, plus the price list it implies (``None`` = all prices).

    ``pennyless`` forbids 1-cent coins and restricts prices to multiples of the
    smallest other coin; ``quarter-hoarder`` forbids and discards 25-cent coins.
    """
    key = name.strip().lower().replace("_", "-")
    if key == "coin-keeper":
        raise ConfigurationError("the coin keeper's wallet grows without bound; "
                                 "use coin_keeper_tally instead of a chain")
    if key == "minimalist":
        return StrategySpec(Kind.MINIMALIST), None
    if key == "big-spender":
        return StrategySpec(Kind.BIG_SPENDER), None
    if key == "heavy-spender":
        return StrategySpec(Kind.HEAVY_SPENDER), None
    if key in ("pennies-first", "pennies-separate"):
        five = penny_modulus(currency)
        kind = Kind.PENNIES_FIRST if key == "pennies-first" else Kind.PENNIES_SEPARATE
        return StrategySpec(kind, WalletConstraints(caps={1: five - 1})), None
    if key == "pennyless":
        five = penny_modulus(currency)
        prices = list(range(0, currency.modulus, five))
        return StrategySpec(Kind.BIG_SPENDER, WalletConstraints(forbidden_denominations={1})), prices
    if key == "quarter-hoarder":
        if 25 not in currency.denominations:
            raise ConfigurationError(f"quarter-hoarder needs a 25-cent coin; currency is {currency}")
        return StrategySpec(Kind.BIG_SPENDER, WalletConstraints(forbidden_denominations={25}),
                            discard_denominations={25}), None
    raise ConfigurationError(f"unknown strategy {name!r}; expected one of {', '.join(STRATEGY_NAMES)}")

"""Denomination systems and the change-making arithmetic that depends only on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import inf
from typing import Iterable, NamedTuple

from coinpurse.errors import UnrepresentableAmount


@dataclass(frozen=True)
class Currency:
    """A set of coin denominations (strictly decreasing, in cents) and a price modulus."""

    denominations: tuple[int, ...]
    modulus: int = 100

    def __post_init__(self):
        denoms = tuple(int(d) for d in self.denominations)
        object.__setattr__(self, "denominations", denoms)
        if not denoms:
            raise ValueError("a currency needs at least one denomination")
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if any(d <= 0 for d in denoms):
            raise ValueError(f"denominations must be positive: {denoms}")
        if any(a <= b for a, b in zip(denoms, denoms[1:])):
            raise ValueError(f"denominations must be strictly decreasing: {denoms}")
        if denoms[0] >= self.modulus:
            raise ValueError(f"denomination {denoms[0]} is not below the modulus {self.modulus}")

    @classmethod
    def of(cls, values: Iterable[int], modulus: int = 100) -> "Currency":
        """Build a currency from denominations in any order."""
        values = [int(v) for v in values]
        if len(set(values)) != len(values):
            raise ValueError(f"duplicate denominations: {values}")
        return cls(tuple(sorted(values, reverse=True)), modulus)

    @classmethod
    def parse(cls, text: str, modulus: int = 100) -> "Currency":
        """Parse the textual form ``"25,18,5,1"`` (braces and spaces tolerated)."""
        body = text.strip().strip("{}").strip()
        if not body:
            raise ValueError("empty currency string")
        try:
            values = [int(part) for part in body.split(",")]
        except ValueError:
            raise ValueError(f"cannot parse currency {text!r}") from None
        return cls.of(values, modulus)

    def __str__(self):
        return ",".join(map(str, self.denominations))

    def __len__(self):
        return len(self.denominations)

    def index(self, denomination: int) -> int:
        try:
            return self.denominations.index(denomination)
        except ValueError:
            raise ValueError(f"{denomination} is not a denomination of {self}") from None

    def multiset(self, coins: Iterable[int] = ()) -> "CoinMultiset":
        """Build a multiset from a list of coin values, e.g. ``US.multiset([25, 10, 1, 1])``."""
        counts = [0] * len(self.denominations)
        for coin in coins:
            counts[self.index(coin)] += 1
        return CoinMultiset(tuple(counts), self.denominations)


US = Currency((25, 10, 5, 1))
SHALLIT = Currency((25, 18, 5, 1))
TOY = Currency((50, 25))


@dataclass(frozen=True, slots=True)
class CoinMultiset:
    """Coin counts aligned with a currency's denominations (largest first)."""

    counts: tuple[int, ...]
    denominations: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != len(self.denominations):
            raise ValueError("counts and denominations differ in length")
        if any(c < 0 for c in self.counts):
            raise ValueError(f"negative coin count in {self.counts}")

    @property
    def total(self) -> int:
        return sum(c * d for c, d in zip(self.counts, self.denominations))

    def __len__(self):
        return sum(self.counts)

    def coins(self) -> list[int]:
        """The coin values in descending order."""
        out = []
        for c, d in zip(self.counts, self.denominations):
            out.extend([d] * c)
        return out

    def __str__(self):
        return "{" + ",".join(map(str, self.coins())) + "}"

    def __repr__(self):
        return f"CoinMultiset({self})"

    @classmethod
    def parse(cls, text: str, currency: Currency) -> "CoinMultiset":
        body = text.strip().strip("{}").strip()
        coins = [int(part) for part in body.split(",")] if body else []
        return currency.multiset(coins)


def greedy_partition(amount: int, currency: Currency) -> CoinMultiset:
    """Partition ``amount`` by repeatedly taking the largest coin that fits."""
    if amount < 0:
        raise ValueError(f"amount must be non-negative, got {amount}")
    counts = []
    rest = amount
    for d in currency.denominations:
        q, rest = divmod(rest, d)
        counts.append(q)
    if rest:
        raise UnrepresentableAmount(amount, currency.denominations)
    return CoinMultiset(tuple(counts), currency.denominations)


@lru_cache(maxsize=64)
def _suffix_min_table(denominations: tuple[int, ...], limit: int) -> tuple[tuple[float, ...], ...]:
    # table[i][v]: fewest coins from denominations[i:] summing to v (inf if impossible)
    k = len(denominations)
    table = [None] * (k + 1)
    table[k] = (0,) + (inf,) * limit
    for i in range(k - 1, -1, -1):
        d = denominations[i]
        below = table[i + 1]
        row = list(below)
        for v in range(d, limit + 1):
            cand = row[v - d] + 1
            if cand < row[v]:
                row[v] = cand
        table[i] = tuple(row)
    return tuple(table)


@lru_cache(maxsize=64)
def min_coin_counts(currency: Currency, limit: int | None = None) -> tuple[float, ...]:
    """g(n) for 0 <= n <= limit (default modulus - 1); ``inf`` marks unrepresentable amounts."""
    limit = currency.modulus - 1 if limit is None else limit
    return _suffix_min_table(currency.denominations, limit)[0]


def minimal_partitions(amount: int, currency: Currency) -> list[CoinMultiset]:
    """All partitions of ``amount`` using the fewest coins, ordered big coins first."""
    if amount < 0:
        raise ValueError(f"amount must be non-negative, got {amount}")
    denoms = currency.denominations
    table = _suffix_min_table(denoms, max(amount, currency.modulus - 1))
    if table[0][amount] == inf:
        raise UnrepresentableAmount(amount, denoms)
    k = len(denoms)
    found = []

    def walk(i, rest, prefix):
        if i == k:
            if rest == 0:
                found.append(CoinMultiset(tuple(prefix), denoms))
            return
        target = table[i][rest]
        d = denoms[i]
        for x in range(rest // d, -1, -1):
            if x + table[i + 1][rest - x * d] == target:
                prefix.append(x)
                walk(i + 1, rest - x * d, prefix)
                prefix.pop()

    walk(0, amount, [])
    return found


class CanonicityResult(NamedTuple):
    canonical: bool
    counterexample: int | None


def is_greedy_canonical(currency: Currency, bound: int | None = None) -> CanonicityResult:
    """Check by brute force that greedy change is minimal for every 0 <= n <= bound.

    Amounts that no partition can represent are skipped; an amount the greedy
    algorithm fails on but some partition reaches counts as a counterexample.
    """
    bound = currency.modulus - 1 if bound is None else bound
    if bound < 1:
        raise ValueError("bound must be at least 1")
    g = _suffix_min_table(currency.denominations, bound)[0]
    for n in range(bound + 1):
        if g[n] == inf:
            continue
        try:
            greedy = len(greedy_partition(n, currency))
        except UnrepresentableAmount:
            return CanonicityResult(False, n)
        if greedy != g[n]:
            return CanonicityResult(False, n)
    return CanonicityResult(True, None)


def average_change_coins(currency: Currency) -> Fraction:
    """Mean of g(n) over 0 <= n < modulus, exactly."""
    g = min_coin_counts(currency)
    for n, count in enumerate(g):
        if count == inf:
            raise UnrepresentableAmount(n, currency.denominations)
    return Fraction(int(sum(g)), currency.modulus)


class SearchResult(NamedTuple):
    best: Currency
    average: Fraction
    minimizers: list[Currency]


def search_min_average_currency(num_denominations: int, modulus: int = 100) -> SearchResult:
    """Exhaustively find the currencies with the lowest average change size.

    The smallest denomination is fixed at 1. ``best`` is the lexicographically
    smallest optimal denomination tuple; ``minimizers`` lists every optimum.
    """
    from coinpurse import kernels

    if num_denominations < 1:
        raise ValueError("need at least one denomination")
    if num_denominations > modulus - 1:
        raise ValueError(f"only {modulus - 1} denominations fit below modulus {modulus}")
    total, tuples = kernels.min_average_search(num_denominations, modulus)
    found = [Currency(t, modulus) for t in sorted(tuples)]
    return SearchResult(found[0], Fraction(total, modulus), found)


"""Wallet constraints and deterministic enumeration of wallet state spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from coinpurse.currency import CoinMultiset, Currency


def total_value(wallet: CoinMultiset) -> int:
    return wallet.total


@dataclass(frozen=True)
class WalletConstraints:
    """Limits on what a wallet may hold.

    ``max_total_value`` of ``None`` means ``modulus - 1``. ``caps`` maps a
    denomination to the most coins of it the wallet may carry.
    """

    max_total_value: int | None = None
    forbidden_denominations: frozenset[int] = frozenset()
    caps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "forbidden_denominations", frozenset(self.forbidden_denominations))
        caps = self.caps.items() if isinstance(self.caps, Mapping) else self.caps
        object.__setattr__(self, "caps", tuple(sorted((int(d), int(c)) for d, c in caps)))

    def limit(self, currency: Currency) -> int:
        return currency.modulus - 1 if self.max_total_value is None else self.max_total_value

    def validate(self, currency: Currency) -> None:
        limit = self.limit(currency)
        if not 0 <= limit < currency.modulus:
            raise ValueError(f"max_total_value {limit} must lie in 0..{currency.modulus - 1}")
        for d in self.forbidden_denominations:
            if d not in currency.denominations:
                raise ValueError(f"forbidden denomination {d} is not in currency {currency}")
        for d, cap in self.caps:
            if d not in currency.denominations:
                raise ValueError(f"capped denomination {d} is not in currency {currency}")
            if cap < 0:
                raise ValueError(f"cap for {d} must be non-negative")

    def max_counts(self, currency: Currency) -> tuple[int, ...]:
        """Per-denomination upper bound on coin counts implied by every constraint."""
        limit = self.limit(currency)
        caps = dict(self.caps)
        out = []
        for d in currency.denominations:
            bound = 0 if d in self.forbidden_denominations else limit // d
            if d in caps:
                bound = min(bound, caps[d])
            out.append(bound)
        return tuple(out)

    def admits(self, counts: Iterable[int], currency: Currency) -> bool:
        counts = tuple(counts)
        if any(c < 0 or c > m for c, m in zip(counts, self.max_counts(currency))):
            return False
        return sum(c * d for c, d in zip(counts, currency.denominations)) <= self.limit(currency)


@dataclass(frozen=True, eq=False)
class StateSpace:
    """Admissible wallet states in canonical order with a reverse index.

    Canonical order is lexicographic on count vectors read from the largest
    denomination down. ``counts`` is an ``(n, k)`` int64 array of the same
    states, used by the vectorised chain builder.
    """

    currency: Currency
    constraints: WalletConstraints
    states: tuple[tuple[int, ...], ...]
    index: Mapping[tuple[int, ...], int] = field(repr=False)
    counts: np.ndarray = field(repr=False)

    @classmethod
    def from_states(cls, currency: Currency, constraints: WalletConstraints,
                    states: Iterable[Iterable[int]]) -> "StateSpace":
        ordered = tuple(sorted({tuple(int(c) for c in s) for s in states}))
        for s in ordered:
            if len(s) != len(currency) or not constraints.admits(s, currency):
                raise ValueError(f"state {s} violates {constraints}")
        index = {s: i for i, s in enumerate(ordered)}
        arr = np.array(ordered, dtype=np.int64).reshape(len(ordered), len(currency))
        arr.setflags(write=False)
        return cls(currency, constraints, ordered, index, arr)

    def __len__(self):
        return len(self.states)

    def __getitem__(self, i: int) -> CoinMultiset:
        return CoinMultiset(self.states[i], self.currency.denominations)

    def __iter__(self):
        for s in self.states:
            yield CoinMultiset(s, self.currency.denominations)

    def position(self, wallet: CoinMultiset | tuple[int, ...]) -> int:
        key = wallet.counts if isinstance(wallet, CoinMultiset) else tuple(wallet)
        return self.index[key]

    def __contains__(self, wallet):
        key = wallet.counts if isinstance(wallet, CoinMultiset) else tuple(wallet)
        return key in self.index

    @property
    def totals(self) -> np.ndarray:
        return self.counts @ np.asarray(self.currency.denominations, dtype=np.int64)

    @property
    def sizes(self) -> np.ndarray:
        return self.counts.sum(axis=1)


def _admissible(denoms, bounds, limit):
    k = len(denoms)
    counts = [0] * k

    def walk(i, budget):
        if i == k:
            yield tuple(counts)
            return
        d = denoms[i]
        for x in range(min(bounds[i], budget // d) + 1):
            counts[i] = x
            yield from walk(i + 1, budget - x * d)
        counts[i] = 0

    yield from walk(0, limit)


def enumerate_states(currency: Currency, constraints: WalletConstraints | None = None) -> StateSpace:
    """All wallets satisfying ``constraints``, already in canonical order."""
    constraints = constraints or WalletConstraints()
    constraints.validate(currency)
    states = tuple(_admissible(currency.denominations, constraints.max_counts(currency),
                               constraints.limit(currency)))
    index = {s: i for i, s in enumerate(states)}
    arr = np.array(states, dtype=np.int64).reshape(len(states), len(currency))
    arr.setflags(write=False)
    return StateSpace(currency, constraints, states, index, arr)

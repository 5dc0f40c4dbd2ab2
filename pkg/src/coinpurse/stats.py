"""Statistics derived from a stationary distribution."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from math import inf
from typing import Sequence

import numpy as np

from coinpurse.chain import StationaryDistribution
from coinpurse.currency import CoinMultiset, Currency, min_coin_counts
from coinpurse.errors import AlignmentError, DimensionMismatch
from coinpurse.wallet import StateSpace


@dataclass(frozen=True)
class ReferenceDistribution:
    label: str
    shares: tuple[float, ...]

    def __post_init__(self):
        if abs(sum(self.shares) - 100.0) > 1e-6:
            raise ValueError(f"shares of {self.label} sum to {sum(self.shares)}, not 100")

    @classmethod
    def from_counts(cls, label: str, counts: Sequence[float]) -> "ReferenceDistribution":
        total = float(sum(counts))
        return cls(label, tuple(100.0 * c / total for c in counts))


# quarters, dimes, nickels, pennies minted in 2014 (millions)
US_MINT_2014_COUNTS = (1580, 2302, 1206, 8146)
US_MINT_2014 = ReferenceDistribution.from_counts("US-mint-2014", US_MINT_2014_COUNTS)

REFERENCES = {US_MINT_2014.label: US_MINT_2014}


def shares_percent(per_denomination: Sequence[float]) -> tuple[float, ...]:
    total = float(sum(per_denomination))
    if total == 0:
        return tuple(0.0 for _ in per_denomination)
    return tuple(100.0 * float(x) / total for x in per_denomination)


def round_half_away(x: float, places: int) -> float:
    """Round the way printed tables do (0.125 -> 0.13), not banker's rounding."""
    q = Decimal(1).scaleb(-places)
    d = Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP)
    return float(d)


@dataclass(frozen=True)
class StationaryReport:
    currency: Currency
    expected_coins: float
    expected_value_cents: float
    expected_per_denomination: tuple[float, ...]
    circulation_shares: tuple[float, ...]
    top_states: tuple[tuple[CoinMultiset, float], ...]
    value_marginal: tuple[float, ...]
    # e(n); None where the total n has probability zero
    conditional_expected_coins: tuple[float | None, ...]
    residual: float = 0.0
    state_count: int = 0
    extras: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "currency": str(self.currency),
            "modulus": self.currency.modulus,
            "state_count": self.state_count,
            "residual": self.residual,
            "expected_coins": self.expected_coins,
            "expected_value_cents": self.expected_value_cents,
            "per_denomination": list(self.expected_per_denomination),
            "shares_percent": list(self.circulation_shares),
            "top_states": [{"state": str(s), "probability": p} for s, p in self.top_states],
            "value_marginal": list(self.value_marginal),
            "conditional_expected_coins": list(self.conditional_expected_coins),
            **self.extras,
        }


def report(p: StationaryDistribution | np.ndarray, space: StateSpace, top: int = 10) -> StationaryReport:
    """Expected coins, value, per-denomination counts and value classes under ``p``."""
    probs = np.asarray(getattr(p, "probabilities", p), dtype=np.float64)
    if probs.shape != (len(space),):
        raise AlignmentError(f"distribution has {probs.size} entries, state space has {len(space)}")
    residual = float(getattr(p, "residual", 0.0))
    currency = space.currency
    sizes = space.sizes
    totals = space.totals
    per = tuple(float(x) for x in probs @ space.counts)

    marginal = np.bincount(totals, weights=probs, minlength=currency.modulus)
    coin_mass = np.bincount(totals, weights=probs * sizes, minlength=currency.modulus)
    conditional = tuple(float(c / m) if m > 0 else None for c, m in zip(coin_mass, marginal))

    # stable sort keeps canonical order among equal probabilities
    order = np.argsort(-probs, kind="stable")[:top]
    top_states = tuple((space[int(i)], float(probs[i])) for i in order)

    return StationaryReport(
        currency=currency,
        expected_coins=float(probs @ sizes),
        expected_value_cents=float(probs @ totals),
        expected_per_denomination=per,
        circulation_shares=shares_percent(per),
        top_states=top_states,
        value_marginal=tuple(float(x) for x in marginal),
        conditional_expected_coins=conditional,
        residual=residual,
        state_count=len(space),
    )


def distribution_distance(a: Sequence[float], b: ReferenceDistribution | Sequence[float]) -> float:
    """Euclidean distance between two share vectors, in percentage points."""
    other = b.shares if isinstance(b, ReferenceDistribution) else tuple(b)
    if len(a) != len(other):
        raise DimensionMismatch(f"cannot compare {len(a)} shares with {len(other)}")
    return float(np.linalg.norm(np.asarray(a, dtype=float) - np.asarray(other, dtype=float)))


def lower_bound_check(rep: StationaryReport, currency: Currency, eps: float = 1e-9) -> bool:
    """e(n) >= g(n) for every reachable wallet total, hence E[coins] >= mean g."""
    g = min_coin_counts(currency)
    for n, e in enumerate(rep.conditional_expected_coins):
        if e is None:
            continue
        if g[n] == inf or e < g[n] - eps:
            return False
    floor = sum(m * g[n] for n, m in enumerate(rep.value_marginal) if m > 0)
    return rep.expected_coins >= floor - eps

"""Exact sparse transition matrices and their stationary distributions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from coinpurse import kernels
from coinpurse.cashier import CashierRule, make_change
from coinpurse.currency import Currency
from coinpurse.errors import ClosureViolation, ConfigurationError, NoConvergence
from coinpurse.strategy import Kind, StrategySpec, TieRule, minimalist_states, penny_modulus, transact
from coinpurse.wallet import StateSpace, enumerate_states


@dataclass(frozen=True)
class PriceModel:
    """Distinct prices below the modulus, each equally likely."""

    prices: tuple[int, ...]

    def __post_init__(self):
        prices = tuple(int(p) for p in self.prices)
        object.__setattr__(self, "prices", prices)
        if not prices:
            raise ValueError("price list is empty")
        if len(set(prices)) != len(prices):
            raise ValueError(f"duplicate prices in {prices}")

    @classmethod
    def uniform(cls, modulus: int = 100) -> "PriceModel":
        return cls(tuple(range(modulus)))

    @classmethod
    def multiples(cls, step: int, modulus: int = 100) -> "PriceModel":
        return cls(tuple(range(0, modulus, step)))

    def check(self, currency: Currency) -> None:
        bad = [p for p in self.prices if not 0 <= p < currency.modulus]
        if bad:
            raise ValueError(f"prices {bad} outside 0..{currency.modulus - 1}")

    def __len__(self):
        return len(self.prices)


class TransitionMatrix:
    """Row-stochastic matrix stored as integer numerators over one common denominator."""

    def __init__(self, numerators: sp.spmatrix, denominator: int):
        m = sp.csr_matrix(numerators, dtype=np.int64)
        m.sum_duplicates()
        m.eliminate_zeros()
        m.sort_indices()
        self.numerators = m
        self.denominator = int(denominator)

    @property
    def dimension(self) -> int:
        return self.numerators.shape[0]

    @property
    def nnz(self) -> int:
        return self.numerators.nnz

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.numerators[i, j]), self.denominator)

    def row(self, i: int) -> dict[int, Fraction]:
        m = self.numerators
        lo, hi = m.indptr[i], m.indptr[i + 1]
        return {int(j): Fraction(int(v), self.denominator) for j, v in zip(m.indices[lo:hi], m.data[lo:hi])}

    def dense(self) -> list[list[Fraction]]:
        return [[Fraction(int(v), self.denominator) for v in row]
                for row in self.numerators.toarray()]

    def to_float(self) -> sp.csr_matrix:
        return (self.numerators.astype(np.float64) / self.denominator).tocsr()

    def is_row_stochastic(self) -> bool:
        """Exact check: every row's numerators add up to the denominator."""
        sums = np.asarray(self.numerators.sum(axis=1)).ravel()
        return bool(np.all(sums == self.denominator) and (self.numerators.data >= 0).all())

    def reduced_denominators(self) -> set[int]:
        return {Fraction(int(v), self.denominator).denominator for v in np.unique(self.numerators.data)}

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        if self.numerators.shape != other.numerators.shape:
            return False
        a = self.numerators * other.denominator
        b = other.numerators * self.denominator
        return (a != b).nnz == 0

    def __repr__(self):
        return f"TransitionMatrix(dimension={self.dimension}, nnz={self.nnz}, denominator={self.denominator})"

    def to_text(self) -> str:
        m = self.numerators
        lines = [f"dimension {self.dimension} denominator {self.denominator}"]
        for i in range(self.dimension):
            for ptr in range(m.indptr[i], m.indptr[i + 1]):
                lines.append(f"{i} {m.indices[ptr]} {m.data[ptr]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TransitionMatrix":
        lines = text.splitlines()
        head = lines[0].split()
        if len(head) != 4 or head[0] != "dimension" or head[2] != "denominator":
            raise ValueError(f"bad matrix header: {lines[0]!r}")
        n, den = int(head[1]), int(head[3])
        body = np.array([list(map(int, ln.split())) for ln in lines[1:] if ln.strip()],
                        dtype=np.int64).reshape(-1, 3)
        m = sp.coo_matrix((body[:, 2], (body[:, 0], body[:, 1])), shape=(n, n))
        return cls(m, den)


@dataclass(frozen=True)
class StationaryDistribution:
    probabilities: np.ndarray
    residual: float
    iterations: int

    def __len__(self):
        return len(self.probabilities)


def state_space_for(currency: Currency, spec: StrategySpec,
                    cashier: CashierRule = CashierRule.MINIMAL_SPLIT) -> StateSpace:
    if spec.kind is Kind.MINIMALIST:
        return StateSpace.from_states(currency, spec.constraints, minimalist_states(currency, cashier))
    return enumerate_states(currency, spec.constraints)


def _change_arrays(amounts: np.ndarray, currency: Currency, cashier: CashierRule):
    """Flattened change outcomes for the amounts that occur, weighted over a common lcm."""
    needed = np.unique(amounts)
    tables = {int(a): make_change(int(a), currency, cashier) for a in needed}
    ties = lcm(*(len(t) for t in tables.values()))
    start = np.zeros(currency.modulus, dtype=np.int64)
    size = np.zeros(currency.modulus, dtype=np.int64)
    vecs, weights = [], []
    for a, dist in tables.items():
        start[a] = len(vecs)
        size[a] = len(dist)
        for change, p in dist:
            vecs.append(change.counts)
            weights.append(int(p * ties))
    return (start, size, np.array(vecs, dtype=np.int64).reshape(-1, len(currency)),
            np.array(weights, dtype=np.int64), ties)


def _assemble(space: StateSpace, rows, nxt, weights, denominator, what) -> TransitionMatrix:
    n, k = space.counts.shape
    radix = np.maximum(space.counts.max(axis=0), nxt.max(axis=0)) + 1
    place = np.ones(k, dtype=np.int64)
    for i in range(k - 2, -1, -1):
        place[i] = place[i + 1] * radix[i + 1]
    keys = space.counts @ place
    targets = nxt @ place
    cols = np.searchsorted(keys, targets)
    cols_clipped = np.minimum(cols, n - 1)
    missing = keys[cols_clipped] != targets
    if missing.any():
        j = int(np.flatnonzero(missing)[0])
        state = space[int(rows[j])]
        raise ClosureViolation(f"{what}: state {state} moves to counts {tuple(nxt[j])}, "
                               "which is not in the state space")
    m = sp.coo_matrix((weights, (rows, cols)), shape=(n, n))
    return TransitionMatrix(m, denominator)


def _build_vectorised(space: StateSpace, currency: Currency, spec: StrategySpec,
                      prices: PriceModel, cashier: CashierRule) -> TransitionMatrix:
    denoms = np.asarray(currency.denominations, dtype=np.int64)
    mod = currency.modulus
    n, m = len(space), len(prices)
    price = np.tile(np.asarray(prices.prices, dtype=np.int64), n)
    rows = np.repeat(np.arange(n, dtype=np.int64), m)
    wallet = np.repeat(space.counts, m, axis=0)
    pennies = np.zeros(n * m, dtype=np.int64)
    kind = spec.kind

    if kind is Kind.MINIMALIST:
        left = np.zeros_like(wallet)
        amount = (wallet @ denoms - price) % mod
    else:
        if kind is Kind.PENNIES_FIRST:
            r = price % penny_modulus(currency)
            ok = wallet[:, -1] >= r
            wallet[ok, -1] -= r[ok]
            price = np.where(ok, price - r, price)
        elif kind is Kind.PENNIES_SEPARATE:
            five = penny_modulus(currency)
            r = price % five
            held = wallet[:, -1]
            pennies = np.where(held >= r, held - r, held + five - r)
            wallet[:, -1] = 0
            price = price - r
        favor_many = spec.tie_rule is TieRule.FAVOR_MANY_COINS
        pay, paid = kernels.select_payments(wallet, price, denoms, favor_many)
        left = wallet - pay
        amount = np.where(paid < 0, (mod - price) % mod, paid - price)

    start, size, vecs, wts, ties = _change_arrays(amount, currency, cashier)
    fan = size[amount]
    rep = np.repeat(np.arange(n * m), fan)
    first = np.repeat(np.cumsum(fan) - fan, fan)
    pick = start[amount[rep]] + (np.arange(len(rep)) - first)
    nxt = left[rep] + vecs[pick]
    nxt[:, -1] += pennies[rep]
    for d in spec.discard_denominations:
        nxt[:, currency.index(d)] = 0
    return _assemble(space, rows[rep], nxt, wts[pick], m * ties, kind.value)


def _build_reference(space: StateSpace, currency: Currency, spec: StrategySpec,
                     prices: PriceModel, cashier: CashierRule) -> TransitionMatrix:
    share = Fraction(1, len(prices))
    entries: dict[tuple[int, int], Fraction] = {}
    for i, wallet in enumerate(space):
        for price in prices.prices:
            for nxt, p in transact(wallet, price, spec, currency, cashier):
                if nxt not in space:
                    raise ClosureViolation(f"{spec.kind.value}: state {wallet} moves to {nxt} "
                                           "outside the state space")
                key = (i, space.position(nxt))
                entries[key] = entries.get(key, Fraction(0)) + p * share
    den = lcm(*(f.denominator for f in entries.values()))
    rows, cols = zip(*entries)
    data = [int(f * den) for f in entries.values()]
    m = sp.coo_matrix((np.array(data, dtype=np.int64), (rows, cols)), shape=(len(space),) * 2)
    return TransitionMatrix(m, den)


def build_chain(currency: Currency, spec: StrategySpec, prices: PriceModel | None = None,
                cashier: CashierRule = CashierRule.MINIMAL_SPLIT, method: str = "vectorised",
                space: StateSpace | None = None) -> tuple[StateSpace, TransitionMatrix]:
    """Enumerate the states of ``spec`` and build the exact one-purchase transition matrix.

    ``method="reference"`` builds row by row through ``transact``; the default
    vectorised builder batches every (state, price) pair through the payment kernel.
    """
    prices = prices or PriceModel.uniform(currency.modulus)
    prices.check(currency)
    spec.validate(currency)
    space = space or state_space_for(currency, spec, cashier)
    if method == "vectorised":
        matrix = _build_vectorised(space, currency, spec, prices, cashier)
    elif method == "reference":
        matrix = _build_reference(space, currency, spec, prices, cashier)
    else:
        raise ConfigurationError(f"unknown build method {method!r}")
    return space, matrix


def stationary_distribution(matrix: TransitionMatrix, tolerance: float = 1e-12,
                            max_iterations: int = 1_000_000, start: Sequence[float] | None = None
                            ) -> StationaryDistribution:
    """Power iteration ``p <- pM`` until the L1 change is at most ``tolerance``."""
    n = matrix.dimension
    step = matrix.to_float().T.tocsr()
    p = np.full(n, 1.0 / n) if start is None else np.asarray(start, dtype=np.float64).copy()
    p /= p.sum()
    residual = np.inf
    for it in range(max_iterations):
        q = step @ p
        residual = float(np.abs(q - p).sum())
        if residual <= tolerance:
            return StationaryDistribution(p, residual, it)
        p = q / q.sum()
    raise NoConvergence(max_iterations, residual)


def _components(matrix: TransitionMatrix):
    return connected_components(matrix.numerators, directed=True, connection="strong")


def verify_irreducible(matrix: TransitionMatrix) -> bool:
    count, _ = _components(matrix)
    return count == 1


def verify_aperiodic(matrix: TransitionMatrix) -> bool:
    """Sufficient test: every strongly connected class contains a self-loop."""
    count, labels = _components(matrix)
    looped = np.zeros(count, dtype=bool)
    diag = matrix.numerators.diagonal()
    looped[labels[diag > 0]] = True
    return bool(looped.all())


def export_chain(space: StateSpace, matrix: TransitionMatrix, matrix_path: str | Path,
                 states_path: str | Path | None = None) -> tuple[Path, Path]:
    """Write the matrix text format and the state list (one state per line, canonical order)."""
    matrix_path = Path(matrix_path)
    states_path = Path(states_path) if states_path else matrix_path.with_name(matrix_path.stem + ".states.txt")
    matrix_path.write_text(matrix.to_text(), encoding="utf-8")
    states_path.write_text("".join(f"{s}\n" for s in space), encoding="utf-8")
    return matrix_path, states_path


def price_model_from(values: Iterable[int] | None, modulus: int) -> PriceModel:
    return PriceModel.uniform(modulus) if values is None else PriceModel(tuple(values))

"""Pure-Python/numpy versions of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built.
"""

from itertools import combinations

import numpy as np


def _coin_tables(wallet, denoms):
    # best[i][v]: most coins from wallet[i:] summing exactly to v, -1 if unreachable
    k = len(denoms)
    total = sum(c * d for c, d in zip(wallet, denoms))
    best = [None] * (k + 1)
    best[k] = [0] + [-1] * total
    for i in range(k - 1, -1, -1):
        d, c = denoms[i], wallet[i]
        below = best[i + 1]
        if c == 0:
            best[i] = below
            continue
        row = [-1] * (total + 1)
        for v in range(total + 1):
            b = -1
            for x in range(min(c, v // d) + 1):
                r = below[v - x * d]
                if r >= 0 and r + x > b:
                    b = r + x
            row[v] = b
        best[i] = row
    return total, best


def _reconstruct(best, wallet, denoms, target, favor_many):
    pay = []
    rest = target
    for i, d in enumerate(denoms):
        below = best[i + 1]
        goal = best[i][rest]
        x = min(wallet[i], rest // d)
        while x >= 0:
            r = below[rest - x * d]
            if r >= 0 and (not favor_many or r + x == goal):
                break
            x -= 1
        pay.append(x)
        rest -= x * d
    return pay


def select_payments(wallets, prices, denoms, favor_many=False):
    """Pick the coins each wallet hands over for its price.

    Returns ``(payments, paid)``: payment count vectors and their totals, with
    ``paid == -1`` (and a zero payment) where the wallet cannot cover the price.
    The payment has the least total >= price; ties go to the lexicographically
    greatest coin sequence, or with ``favor_many`` to the most coins first.
    """
    wallets = np.asarray(wallets, dtype=np.int64)
    prices = np.asarray(prices, dtype=np.int64)
    denoms = [int(d) for d in denoms]
    n, k = wallets.shape
    payments = np.zeros((n, k), dtype=np.int64)
    paid = np.full(n, -1, dtype=np.int64)
    cache = {}
    rows = wallets.tolist()
    for j, (wallet, price) in enumerate(zip(rows, prices.tolist())):
        key = tuple(wallet)
        entry = cache.get(key)
        if entry is None:
            total, best = _coin_tables(wallet, denoms)
            entry = cache[key] = (total, best, {})
        total, best, chosen = entry
        if price > total:
            continue
        top = best[0]
        target = price
        while top[target] < 0:
            target += 1
        pay = chosen.get(target)
        if pay is None:
            pay = chosen[target] = _reconstruct(best, wallet, denoms, target, favor_many)
        payments[j] = pay
        paid[j] = target
    return payments, paid


def _chunk_sums(combos, modulus):
    # combos: (N, m) descending denominations without the trailing 1
    n_rows = combos.shape[0]
    g = np.zeros((n_rows, modulus), dtype=np.int32)
    rows = np.arange(n_rows)
    for v in range(1, modulus):
        col = g[:, v - 1] + 1
        for j in range(combos.shape[1]):
            d = combos[:, j]
            ok = d <= v
            cand = np.where(ok, g[rows, np.where(ok, v - d, 0)] + 1, col)
            np.minimum(col, cand, out=col)
        g[:, v] = col
    return g.sum(axis=1)


def min_average_search(num_denominations, modulus):
    """Return ``(best_sum, optimal_tuples)`` over currencies whose smallest coin is 1.

    ``best_sum`` is the least value of sum(g(n) for n < modulus).
    """
    if num_denominations == 1:
        return modulus * (modulus - 1) // 2, [(1,)]
    best = None
    winners = []
    extra = num_denominations - 1
    for lead in range(extra + 1, modulus):
        rest = list(combinations(range(lead - 1, 1, -1), extra - 1))
        combos = np.empty((len(rest), extra), dtype=np.int64)
        combos[:, 0] = lead
        if extra > 1:
            combos[:, 1:] = np.array(rest, dtype=np.int64).reshape(len(rest), extra - 1)
        sums = _chunk_sums(combos, modulus)
        low = int(sums.min())
        if best is None or low < best:
            best, winners = low, []
        if low == best:
            for row in combos[sums == low]:
                winners.append(tuple(int(x) for x in row) + (1,))
    return best, winners

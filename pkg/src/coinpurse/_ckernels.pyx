# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free, realloc
from libc.string cimport memcmp, memcpy

cnp.import_array()

ctypedef cnp.int64_t i64


cdef void _fill_tables(const i64* wallet, const i64* denoms, Py_ssize_t k,
                       Py_ssize_t total, i64* best) noexcept nogil:
    # best[i*(total+1) + v]: most coins from wallet[i:] summing to v, -1 if unreachable
    cdef Py_ssize_t width = total + 1
    cdef Py_ssize_t i, v, x, top
    cdef i64 d, c, b, r
    cdef i64* row
    cdef i64* below
    below = best + k * width
    below[0] = 0
    for v in range(1, width):
        below[v] = -1
    for i in range(k - 1, -1, -1):
        row = best + i * width
        below = best + (i + 1) * width
        d = denoms[i]
        c = wallet[i]
        if c == 0:
            memcpy(row, below, width * sizeof(i64))
            continue
        for v in range(width):
            b = -1
            top = v // d
            if top > c:
                top = c
            for x in range(top + 1):
                r = below[v - x * d]
                if r >= 0 and r + x > b:
                    b = r + x
            row[v] = b


def select_payments(wallets, prices, denoms, bint favor_many=False):
    """Pick the coins each wallet hands over for its price.

    Returns ``(payments, paid)``; ``paid == -1`` marks wallets that cannot
    cover their price.
    """
    cdef i64[:, ::1] W = np.ascontiguousarray(wallets, dtype=np.int64)
    cdef i64[::1] P = np.ascontiguousarray(prices, dtype=np.int64)
    cdef i64[::1] D = np.ascontiguousarray(denoms, dtype=np.int64)
    cdef Py_ssize_t n = W.shape[0]
    cdef Py_ssize_t k = W.shape[1]
    out_pay = np.zeros((n, k), dtype=np.int64)
    out_paid = np.full(n, -1, dtype=np.int64)
    cdef i64[:, ::1] PAY = out_pay
    cdef i64[::1] PAID = out_paid
    cdef Py_ssize_t j, i, x, width = 0, cap = 0, total, prev = -1
    cdef i64 price, target, rest, d, goal, r
    cdef i64* best = NULL
    cdef i64* row
    cdef i64* below
    if D.shape[0] != k:
        raise ValueError("wallet width does not match denominations")
    try:
        with nogil:
            for j in range(n):
                if prev < 0 or memcmp(&W[j, 0], &W[prev, 0], k * sizeof(i64)) != 0:
                    total = 0
                    for i in range(k):
                        total += W[j, i] * D[i]
                    width = total + 1
                    if (k + 1) * width > cap:
                        cap = (k + 1) * width
                        best = <i64*> realloc(best, cap * sizeof(i64))
                        if best == NULL:
                            with gil:
                                raise MemoryError()
                    _fill_tables(&W[j, 0], &D[0], k, total, best)
                    prev = j
                price = P[j]
                if price > width - 1:
                    continue
                target = price
                while best[target] < 0:
                    target += 1
                rest = target
                for i in range(k):
                    row = best + i * width
                    below = best + (i + 1) * width
                    d = D[i]
                    goal = row[rest]
                    x = rest // d
                    if x > W[j, i]:
                        x = W[j, i]
                    while x >= 0:
                        r = below[rest - x * d]
                        if r >= 0 and (not favor_many or r + x == goal):
                            break
                        x -= 1
                    PAY[j, i] = x
                    rest -= x * d
                PAID[j] = target
    finally:
        free(best)
    return out_pay, out_paid


cdef i64 _change_sum(const i64* denoms, Py_ssize_t k, Py_ssize_t modulus, i64* g, i64 bound) noexcept nogil:
    # sum of fewest-coin counts over 0..modulus-1; stops early once it exceeds bound
    cdef Py_ssize_t v, j
    cdef i64 best, cand, d, s = 0
    g[0] = 0
    for v in range(1, modulus):
        best = g[v - 1] + 1
        for j in range(k):
            d = denoms[j]
            if d <= v:
                cand = g[v - d] + 1
                if cand < best:
                    best = cand
        g[v] = best
        s += best
        if bound >= 0 and s > bound:
            return s
    return s


def min_average_search(int num_denominations, int modulus):
    """Return ``(best_sum, optimal_tuples)`` over currencies whose smallest coin is 1."""
    if num_denominations == 1:
        return modulus * (modulus - 1) // 2, [(1,)]
    cdef Py_ssize_t m = num_denominations - 1
    cdef Py_ssize_t i, j
    cdef i64 s, best = -1
    cdef i64* g = <i64*> malloc(modulus * sizeof(i64))
    cdef i64* combo = <i64*> malloc(m * sizeof(i64))
    if g == NULL or combo == NULL:
        free(g)
        free(combo)
        raise MemoryError()
    winners = []
    try:
        if m > modulus - 2:
            return None, []
        # combo[0] > combo[1] > ... > combo[m-1] >= 2, enumerated with the leading coin ascending
        for i in range(m):
            combo[i] = m + 1 - i
        while True:
            s = _change_sum(combo, m, modulus, g, best)
            if best < 0 or s < best:
                best = s
                winners = []
            if s == best:
                winners.append(tuple([combo[i] for i in range(m)]) + (1,))
            # advance: bump the smallest position that can grow, reset the rest below it
            i = m - 1
            while i >= 0:
                if (i == 0 and combo[0] < modulus - 1) or (i > 0 and combo[i] + 1 < combo[i - 1]):
                    break
                i -= 1
            if i < 0:
                break
            combo[i] += 1
            for j in range(i + 1, m):
                combo[j] = m + 1 - j
    finally:
        free(g)
        free(combo)
    return best, winners

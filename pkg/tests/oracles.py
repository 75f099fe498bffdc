"""Slow, independent reference implementations used only by the tests.

None of these share code with the package beyond game construction.
"""

import itertools
from fractions import Fraction

import numpy as np


def cofactor_det(m):
    """Laplace expansion along the first row."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def monotone_functions(n):
    """Truth tables (int bitmasks over 2^n inputs) of all monotone Boolean
    functions on n variables, built from pairs f0 <= f1 on n - 1 variables."""
    if n == 0:
        return [0, 1]
    prev = monotone_functions(n - 1)
    half = 1 << (n - 1)
    out = []
    for f0 in prev:
        for f1 in prev:
            if f0 & ~f1 == 0:  # f0 <= f1 pointwise
                out.append(f0 | (f1 << half))
    return out


def winning_masks(g):
    return [s for s in range(1 << g.n) if g.is_winning(s)]


def brute_trade(g, k):
    """Smallest j <= k with a winning/losing multiset pair of equal player
    counts, by direct multiset enumeration."""
    n = g.n
    win = winning_masks(g)
    lose = [s for s in range(1 << n) if not g.is_winning(s)]
    if not win or not lose:
        return None

    def counts(ms):
        return tuple(sum(1 for s in ms if s >> i & 1) for i in range(n))

    for j in range(1, k + 1):
        wv = {counts(c) for c in itertools.combinations_with_replacement(win, j)}
        for c in itertools.combinations_with_replacement(lose, j):
            if counts(c) in wv:
                return j
    return None


def brute_min_objectives(g, box):
    """Minimum quota, max weight and weight sum over nonnegative integer
    weights in ``[0, box]^n``, by scanning the whole box."""
    n = g.n
    grid = np.array(list(itertools.product(range(box + 1), repeat=n)), dtype=np.int64)
    inc = np.array([[(s >> i) & 1 for i in range(n)] for s in range(1 << n)], dtype=np.int64)
    sums = grid @ inc.T
    win = np.array([g.is_winning(s) for s in range(1 << n)])
    lo = sums[:, ~win].max(axis=1) if (~win).any() else np.full(len(grid), -1)
    hi = sums[:, win].min(axis=1) if win.any() else np.full(len(grid), 10**9)
    q = lo + 1
    ok = q <= hi
    return {
        "quota": int(q[ok].min()),
        "max_weight": int(grid[ok].max(axis=1).min()),
        "weight_sum": int(grid[ok].sum(axis=1).min()),
    }


def float_weighted(g):
    """Maximise the margin eps in a float LP; weighted iff eps > 0."""
    from scipy.optimize import linprog

    n = g.n
    rows, rhs = [], []
    for s in range(1 << n):
        chi = [(s >> i) & 1 for i in range(n)]
        if g.is_winning(s):
            # q - chi.w <= 0
            rows.append([-c for c in chi] + [1, 0])
        else:
            # chi.w - q + eps <= 0
            rows.append(chi + [-1, 1])
        rhs.append(0)
    c = [0] * (n + 1) + [-1]
    bounds = [(-1, 1)] * (n + 1) + [(0, 1)]
    res = linprog(c, A_ub=np.array(rows, float), b_ub=rhs, bounds=bounds, method="highs")
    return -res.fun > 1e-9


def f_quad(x):
    from scipy.integrate import quad

    x = float(x)
    pts = [-k for k in range(1, int(x) + 1)]
    val, _ = quad(lambda mu: mu - np.floor(mu), -x, 0, points=pts or None, limit=200)
    return val / x


def rough_naive(g, q, w):
    n = g.n
    if q == 0 and all(x == 0 for x in w):
        return False
    for s in range(1 << n):
        v = sum(Fraction(w[i]) for i in range(n) if s >> i & 1)
        if v < q and g.is_winning(s):
            return False
        if v > q and not g.is_winning(s):
            return False
    return True

"""Maximal 0-1 determinants and the bounds built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import NamedTuple, Sequence

from .exact import determinant
from .game import ScopeError

# OEIS A003432; index 0 is the empty determinant
ALPHA = (1, 1, 1, 2, 3, 5, 9, 32, 56, 144, 320, 1458)

ALPHA_BRUTEFORCE_MAX_N = 5
HADAMARD_DENOMINATOR = 10**10


def alpha(n: int) -> int:
    """Maximal |det| over n x n 0-1 matrices, for 0 <= n <= 11."""
    if not 0 <= n < len(ALPHA):
        raise ScopeError(f"alpha({n}) not tabulated; use hadamard_bound")
    return ALPHA[n]


def alpha_bruteforce(n: int) -> int:
    """Exhaustive max |det| over n x n 0-1 matrices.

    Row order only flips the sign, and a repeated or zero row kills the
    determinant, so it suffices to scan sets of n distinct nonzero rows.
    """
    if not 1 <= n <= ALPHA_BRUTEFORCE_MAX_N:
        raise ScopeError(f"brute-force alpha limited to 1 <= n <= {ALPHA_BRUTEFORCE_MAX_N}")
    rows = [tuple((r >> i) & 1 for i in range(n)) for r in range(1, 1 << n)]
    best = 0
    for combo in itertools.combinations(rows, n):
        d = abs(determinant(combo))
        if d > best:
            best = d
    return best


class Bracket(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


def hadamard_bound(n: int) -> Bracket:
    """``(n+1)^((n+1)/2) / 2^n`` as an exact value or a rational bracket.

    When ``(n+1)^(n+1)`` is a perfect square the value is rational and both
    ends coincide; otherwise the ends are rounded outward to multiples of
    ``1 / HADAMARD_DENOMINATOR``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    square = (n + 1) ** (n + 1)
    root = isqrt(square)
    den = 2**n
    if root * root == square:
        v = Fraction(root, den)
        return Bracket(v, v)
    scale = HADAMARD_DENOMINATOR
    lo_num = isqrt(square * scale * scale) // den
    return Bracket(Fraction(lo_num, scale), Fraction(lo_num + 1, scale))


def within_hadamard(value: int, n: int) -> bool:
    """Exact test of ``value <= (n+1)^((n+1)/2) / 2^n`` by squaring."""
    if value <= 0:
        return True
    return (value * 2**n) ** 2 <= (n + 1) ** (n + 1)


@dataclass(frozen=True)
class Lemma1Result:
    det: int
    all_one_line: bool  # case (c1) applies
    single_zero_line: bool  # case (c2) applies
    holds: bool


def _lines(m):
    yield from m
    yield from zip(*m)


def lemma1_check(m: Sequence[Sequence[int]]) -> Lemma1Result:
    """Classify a square 0-1 matrix under both determinant lemmas and test them.

    (c1): an all-one row or column forces ``|det| <= alpha(n-1)``.
    (c2): a row or column with exactly one zero forces ``|det| <= 2 alpha(n-1)``.
    """
    n = len(m)
    if n < 1 or any(len(r) != n for r in m):
        raise ValueError("lemma1_check needs a nonempty square matrix")
    if any(x not in (0, 1) for r in m for x in r):
        raise ValueError("lemma1_check needs a 0-1 matrix")
    d = abs(determinant(m))
    c1 = any(all(x == 1 for x in line) for line in _lines(m))
    c2 = any(sum(line) == n - 1 for line in _lines(m))
    a = alpha(n - 1)
    holds = (not c1 or d <= a) and (not c2 or d <= 2 * a)
    return Lemma1Result(d, c1, c2, holds)

"""Exact linear algebra over Python integers and :class:`fractions.Fraction`.

Everything here is exact.  The feasibility solvers run phase 1 of the
simplex method on an integer (fraction-free) tableau with Bland's rule,
and report the basis they end on so callers can apply Cramer scaling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

Matrix = list[list[int]]


class InconsistentSystem(ValueError):
    """An equality system with a row reducing to ``0 = c`` for ``c != 0``."""


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def independent_rows(a: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int]:
    """Indices of the lexicographically first maximal independent row set.

    Raises :class:`InconsistentSystem` when a dependent row disagrees with
    the right-hand side implied by the rows before it.
    """
    pivots: list[tuple[int, list[int]]] = []
    kept = []
    for idx, (row, b) in enumerate(zip(a, rhs)):
        v = list(row) + [b]
        for col, brow in pivots:
            f = v[col]
            if f:
                p = brow[col]
                v = [x * p - f * y for x, y in zip(v, brow)]
                g = gcd(*v)
                if g > 1:
                    v = [x // g for x in v]
        lead = next((j for j, x in enumerate(v[:-1]) if x), None)
        if lead is None:
            if v[-1]:
                raise InconsistentSystem(f"row {idx} reduces to 0 = {v[-1]}")
            continue
        pivots.append((lead, v))
        kept.append(idx)
    return kept


def remove_redundant_rows(a: Sequence[Sequence[int]], rhs: Sequence[int]):
    """Drop redundant equalities, keeping the first independent rows."""
    kept = independent_rows(a, rhs)
    return [list(a[i]) for i in kept], [rhs[i] for i in kept]


@dataclass(frozen=True)
class BasicSolution:
    """A basic feasible solution together with its basis.

    ``basis_matrix`` is the square submatrix of the constraint matrix with
    rows ``rows`` and columns ``basis``.  Variables outside ``basis`` sit at
    their lower bound (zero for every system built in this package).
    """

    values: tuple[Fraction, ...]
    basis: tuple[int, ...]
    rows: tuple[int, ...]
    det_abs: int
    basis_matrix: tuple[tuple[int, ...], ...] = field(repr=False)

    def scaled(self) -> tuple[int, ...]:
        """``det_abs * values`` as integers (Cramer's rule makes this exact)."""
        out = []
        for v in self.values:
            s = v * self.det_abs
            if s.denominator != 1:
                raise ArithmeticError(f"det-scaled value {s} is not integral")
            out.append(s.numerator)
        return tuple(out)


_INT64_SAFE = 2**31 - 1


def _phase_one(tab: np.ndarray, basic: list[int], artificial_from: int):
    """Run phase 1 on an integer tableau.

    ``tab`` holds m constraint rows followed by the objective row; the last
    column is the right-hand side.  Entries are the true tableau times the
    common denominator ``d`` (Edmonds' integer-preserving pivoting), so each
    entry stays a minor of the input and every division is exact.  The
    array is int64 while all entries fit in 31 bits (so no product can
    overflow) and is promoted to Python integers otherwise.

    Returns ``(tab, d, redundant_rows)`` on success, ``None`` if infeasible.
    """
    m = len(basic)
    d = 1

    def pivot(tab, r, c):
        nonlocal d
        if tab.dtype != object and np.abs(tab).max() > _INT64_SAFE:
            tab = tab.astype(object)
        p = tab[r, c]
        row = tab[r].copy()
        col = tab[:, c].copy()
        tab = (tab * p - np.outer(col, row)) // d
        tab[r] = row
        if p < 0:
            tab = -tab
            p = -p
        d = int(p)
        basic[r] = c
        return tab

    while True:
        # Bland: lowest-index column with negative reduced cost enters
        neg = np.flatnonzero(tab[m, :-1] < 0)
        if not len(neg):
            break
        enter = int(neg[0])
        colv = tab[:m, enter]
        cand = np.flatnonzero(colv > 0)
        if not len(cand):
            raise ArithmeticError("phase-1 objective unbounded; tableau corrupt")
        leave = None
        best_num = best_den = 0
        for i in cand:
            num, coef = int(tab[i, -1]), int(colv[i])
            if leave is None:
                leave, best_num, best_den = i, num, coef
                continue
            lhs, rhs_ = num * best_den, best_num * coef
            if lhs < rhs_ or (lhs == rhs_ and basic[i] < basic[leave]):
                leave, best_num, best_den = i, num, coef
        tab = pivot(tab, int(leave), enter)

    if tab[m, -1] != 0:
        return None

    redundant = []
    for r in range(m):
        if basic[r] < artificial_from:
            continue
        nz = np.flatnonzero(tab[r, :artificial_from])
        if not len(nz):
            redundant.append(r)
        else:
            tab = pivot(tab, r, int(nz[0]))
    return tab, d, redundant


def _solve_standard(a, rhs, senses, lower):
    """Shared driver: build the phase-1 tableau and decode the basis.

    ``lower[j]`` is ``None`` for a free variable, else the variable's lower
    bound.  Returns a :class:`BasicSolution` or ``None``.
    """
    m = len(a)
    nvar = len(a[0]) if m else len(lower)
    # structural columns: (variable, sign)
    columns: list[tuple[int, int]] = []
    for j in range(nvar):
        columns.append((j, 1))
        if lower[j] is None:
            columns.append((j, -1))
    ns = len(columns)
    slack_of_row = {}
    for i, s in enumerate(senses):
        if s != "=":
            slack_of_row[i] = ns + len(slack_of_row)
    nslack = len(slack_of_row)
    shifted = []
    for i in range(m):
        b = rhs[i] - sum(a[i][j] * lower[j] for j in range(nvar) if lower[j])
        shifted.append(b)

    art_start = ns + nslack
    rows = []
    basic: list = []
    for i in range(m):
        row = [0] * art_start
        for k, (j, sg) in enumerate(columns):
            row[k] = sg * a[i][j]
        if i in slack_of_row:
            row[slack_of_row[i]] = 1 if senses[i] == "<=" else -1
        b = shifted[i]
        if b < 0 or (b == 0 and i in slack_of_row and row[slack_of_row[i]] < 0):
            row = [-x for x in row]
            b = -b
        if i in slack_of_row and row[slack_of_row[i]] == 1:
            basic.append(slack_of_row[i])
        else:
            basic.append(None)
        rows.append((row, b))
    n_art = basic.count(None)
    art = art_start
    tab = []
    for r, (row, b) in enumerate(rows):
        ext = [0] * n_art
        if basic[r] is None:
            ext[art - art_start] = 1
            basic[r] = art
            art += 1
        tab.append(row + ext + [b])
    obj = [0] * (art_start + n_art + 1)
    for r, row in zip(basic, tab):
        if r >= art_start:
            for k in range(art_start):
                obj[k] -= row[k]
            obj[-1] -= row[-1]
    tab.append(obj)
    tab = np.array(tab, dtype=np.int64)

    res = _phase_one(tab, basic, art_start)
    if res is None:
        return None
    tab, d, redundant = res

    colval = {}
    for r in range(m):
        if r in redundant:
            continue
        colval[basic[r]] = Fraction(int(tab[r, -1]), d)
    values = []
    for j in range(nvar):
        v = Fraction(lower[j] or 0)
        for k, (jj, sg) in enumerate(columns):
            if jj == j and k in colval:
                v += sg * colval[k]
        values.append(v)
    basis_vars = sorted({columns[k][0] for k in colval if k < ns})
    basic_slacks = {k for k in colval if ns <= k < art_start}
    tight = [
        i
        for i in range(m)
        if i not in redundant and (i not in slack_of_row or slack_of_row[i] not in basic_slacks)
    ]
    if len(tight) != len(basis_vars):
        raise ArithmeticError("basis decoding produced a non-square basis matrix")
    bmat = tuple(tuple(a[i][j] for j in basis_vars) for i in tight)
    det_abs = abs(determinant(bmat))
    if det_abs != d:
        raise ArithmeticError(f"tableau denominator {d} != |det B| = {det_abs}")
    return BasicSolution(tuple(values), tuple(basis_vars), tuple(tight), det_abs, bmat)


def feasible_equality(
    a: Sequence[Sequence[int]],
    rhs: Sequence[int],
    nonneg: Optional[Sequence[int]] = None,
) -> Optional[BasicSolution]:
    """Find a basic feasible solution of ``a z = rhs`` or return ``None``.

    ``nonneg`` lists the variables constrained to ``z >= 0`` (default: all).
    Redundant rows are removed first; ``rows`` in the result index the
    original rows and ``basis_matrix`` is taken from the reduced system.
    An inconsistent system is reported as infeasible.
    """
    nvar = len(a[0]) if a else 0
    nn = set(range(nvar)) if nonneg is None else set(nonneg)
    try:
        kept = independent_rows(a, rhs)
    except InconsistentSystem:
        return None
    sub = [list(a[i]) for i in kept]
    sol = _solve_standard(sub, [rhs[i] for i in kept], ["="] * len(kept),
                          [0 if j in nn else None for j in range(nvar)])
    if sol is None:
        return None
    return BasicSolution(sol.values, sol.basis, tuple(kept[i] for i in sol.rows),
                         sol.det_abs, sol.basis_matrix)


def feasible_inequality(
    a: Sequence[Sequence[int]],
    rhs: Sequence[int],
    senses: Sequence[str],
    lower: Optional[Sequence[Optional[int]]] = None,
    strict: Sequence[int] = (),
) -> Optional[BasicSolution]:
    """Find a basic feasible solution of a mixed inequality system.

    ``senses[i]`` is one of ``">="``, ``"<="``, ``"="``.  ``lower[j]`` is
    ``None`` for a free variable or an integer lower bound (default: all
    free).  Rows listed in ``strict`` must read ``expr > 0``; since the
    caller guarantees the system is a cone in those rows, they are solved
    as ``expr >= 1``.
    """
    nvar = len(a[0]) if a else 0
    lower = [None] * nvar if lower is None else list(lower)
    rhs = list(rhs)
    senses = list(senses)
    for i in strict:
        if rhs[i] != 0 or senses[i] != ">=":
            raise ValueError("strict rows must have the form expr > 0")
        rhs[i] = 1
    return _solve_standard([list(r) for r in a], rhs, senses, lower)


@dataclass
class LinearSystem:
    """A labelled linear system ``a x (senses) rhs`` with variable bounds."""

    a: Matrix
    rhs: list[int]
    senses: list[str]
    lower: list[Optional[int]]
    names: list[str]
    labels: list = field(default_factory=list)
    strict: tuple[int, ...] = ()

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.a), len(self.names)

    def solve(self) -> Optional[BasicSolution]:
        if all(s == "=" for s in self.senses) and all(lb in (0, None) for lb in self.lower):
            return feasible_equality(
                self.a, self.rhs, [j for j, lb in enumerate(self.lower) if lb == 0]
            )
        return feasible_inequality(self.a, self.rhs, self.senses, self.lower, self.strict)

    def check(self, x: Sequence[Fraction]) -> bool:
        """Exact substitution check of every row and bound."""
        rhs = list(self.rhs)
        for i in self.strict:
            rhs[i] = 0
        for j, lb in enumerate(self.lower):
            if lb is not None and x[j] < lb:
                return False
        for i, (row, s) in enumerate(zip(self.a, self.senses)):
            v = sum(c * xj for c, xj in zip(row, x) if c)
            if i in self.strict:
                if not v > 0:
                    return False
            elif s == ">=" and v < rhs[i]:
                return False
            elif s == "<=" and v > rhs[i]:
                return False
            elif s == "=" and v != rhs[i]:
                return False
        return True

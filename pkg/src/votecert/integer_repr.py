"""Integer weight representations: Cramer-scaled basic solutions and
exhaustive minimum representations for small games."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounds import ALPHA, alpha
from .exact import LinearSystem
from .game import (
    HypothesisError,
    ScopeError,
    SimpleGame,
    characteristic,
    check_eq2,
    maximal_losing,
    minimal_winning,
)

OBJECTIVES = ("quota", "max_weight", "weight_sum")
MINIMUM_SEARCH_MAX_N = 5


class NotWeightedError(ValueError):
    """The game admits no weighted representation."""


@dataclass(frozen=True)
class IntegerRepresentation:
    q: int
    w: tuple[int, ...]
    det_abs: Optional[int] = None
    u: Optional[int] = None
    objective: Optional[str] = field(default=None, compare=False)

    @property
    def max_abs_weight(self) -> int:
        return max(abs(x) for x in self.w)

    @property
    def weight_sum(self) -> int:
        return sum(self.w)

    def value(self, objective: str) -> int:
        if objective == "quota":
            return self.q
        if objective == "max_weight":
            return self.max_abs_weight
        if objective == "weight_sum":
            return self.weight_sum
        raise ValueError(f"unknown objective {objective!r}")

    def bound_report(self) -> dict:
        n = len(self.w)
        if n + 1 >= len(ALPHA):
            return {}
        a_n, a_n1 = alpha(n), alpha(n + 1)
        return {
            "max_abs_weight": [self.max_abs_weight, a_n, self.max_abs_weight <= a_n],
            "quota_abs": [abs(self.q), a_n1, abs(self.q) <= a_n1],
            "weight_sum": [
                self.weight_sum,
                2 * a_n1 - 1,
                1 <= self.weight_sum <= 2 * a_n1 - 1,
            ],
        }

    def to_json(self) -> dict:
        out = {"q": self.q, "w": list(self.w)}
        if self.objective is not None:
            out["objective"] = self.objective
        if self.det_abs is not None:
            out["det_abs"] = self.det_abs
        return out


def require_proper(g: SimpleGame) -> None:
    if not g.has_empty_losing:
        raise HypothesisError("the empty coalition must be losing")
    if not g.has_grand_winning:
        raise HypothesisError("the grand coalition must be winning")


def build_p2(g: SimpleGame) -> LinearSystem:
    """Rows ``A(W) w - q >= 0``, ``-A(L) w + q >= 1``, ``-sum w + u >= 1``
    over the free variables ``(w_1..w_n, -q, u)``."""
    require_proper(g)
    n = g.n
    a, rhs, labels = [], [], []
    for s in g.winning:
        a.append(characteristic(s, n) + [1, 0])
        rhs.append(0)
        labels.append(("W", s))
    for s in g.losing:
        a.append([-x for x in characteristic(s, n)] + [-1, 0])
        rhs.append(1)
        labels.append(("L", s))
    a.append([-1] * n + [0, 1])
    rhs.append(1)
    labels.append("sum")
    names = [f"w{i + 1}" for i in range(n)] + ["-q", "u"]
    return LinearSystem(a, rhs, [">="] * len(a), [None] * (n + 2), names, labels)


def integer_representation(g: SimpleGame) -> IntegerRepresentation:
    """Cramer-scaled basic feasible solution of the integer-weight system.

    The result is checked exhaustively and against the alpha bounds on
    ``|w_i|``, ``|q|`` and ``sum w`` before it is returned.
    """
    sol = build_p2(g).solve()
    if sol is None:
        raise NotWeightedError("game is not weighted")
    n = g.n
    z = sol.scaled()
    w, q, u = z[:n], -z[n], z[n + 1]
    rep = IntegerRepresentation(q, tuple(w), sol.det_abs, u)
    if not check_eq2(g, q, w):
        raise ArithmeticError("scaled basic solution does not represent the game")
    if sum(w) > u - 1:
        raise ArithmeticError("weight sum exceeds u - 1")
    report = rep.bound_report()
    for key, (value, bound, ok) in report.items():
        if not ok:
            raise ArithmeticError(f"{key} = {value} violates its bound {bound}")
    return rep


def _more_desirable(g: SimpleGame, i: int, j: int) -> bool:
    """Player i (0-indexed) is at least as desirable as player j."""
    bi, bj = 1 << i, 1 << j
    t = g.table
    for s in range(1 << g.n):
        if s & (bi | bj):
            continue
        if t[s | bj] and not t[s | bi]:
            return False
    return True


def desirability_order(g: SimpleGame) -> list[int]:
    """Players (0-indexed) from most to least desirable; ties by index."""

    def cmp(i, j):
        a, b = _more_desirable(g, i, j), _more_desirable(g, j, i)
        if a and not b:
            return -1
        if b and not a:
            return 1
        return i - j

    return sorted(range(g.n), key=functools.cmp_to_key(cmp))


@functools.lru_cache(maxsize=None)
def _candidates(n: int, total: int) -> np.ndarray:
    """Non-increasing nonnegative integer vectors with sum at most ``total``."""
    rows = []

    def rec(prefix, cap, remaining, slots):
        if slots == 0:
            rows.append(prefix)
            return
        for x in range(min(cap, remaining), -1, -1):
            rec(prefix + (x,), x, remaining - x, slots - 1)

    rec((), total, total, n)
    return np.array(rows, dtype=np.int64).reshape(-1, n)


def minimum_representation(
    g: SimpleGame, objective: str = "quota", override: bool = False
) -> IntegerRepresentation:
    """Exhaustive minimum integer representation with nonnegative weights.

    Weights are searched in desirability order, which loses nothing (equally
    desirable players can swap weights), over all non-increasing vectors
    with sum at most ``n * alpha(n+1)``.  That set contains an optimum for
    every objective: the quota optimum has ``q <= alpha(n+1)`` and its
    weights can be clipped to ``q``.  For each weight vector the smallest
    valid quota is one more than the heaviest maximal losing coalition.
    Ties are broken on (objective, q, weights in desirability order).
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}")
    if g.n > MINIMUM_SEARCH_MAX_N and not override:
        raise ScopeError(f"minimum representation search limited to n <= {MINIMUM_SEARCH_MAX_N}")
    require_proper(g)
    if not g.is_monotone:
        raise HypothesisError("minimum representation search needs a monotone game")
    n = g.n
    order = desirability_order(g)
    cand = _candidates(n, n * alpha(n + 1))
    # column k of cand is the weight of player order[k]
    def incidence(masks):
        return np.array([[(s >> p) & 1 for p in order] for s in masks], dtype=np.int64)

    mw = incidence(minimal_winning(g))
    ml = incidence(maximal_losing(g))
    min_win = (cand @ mw.T).min(axis=1)
    max_lose = (cand @ ml.T).max(axis=1)
    q = max_lose + 1
    valid = np.flatnonzero(min_win >= q)
    if not len(valid):
        raise NotWeightedError("no integer representation in the search set")
    if objective == "quota":
        obj = q
    elif objective == "max_weight":
        obj = cand[:, 0]
    else:
        obj = cand.sum(axis=1)
    sub = cand[valid]
    keys = [sub[:, k] for k in range(n - 1, -1, -1)] + [q[valid], obj[valid]]
    best = valid[np.lexsort(keys)[0]]
    w = [0] * n
    for k, p in enumerate(order):
        w[p] = int(cand[best, k])
    rep = IntegerRepresentation(int(q[best]), tuple(w), objective=objective)
    if not check_eq2(g, rep.q, rep.w):
        raise ArithmeticError("minimum representation failed verification")
    return rep


# max over weighted games of each minimum objective, n = 1..5
MAXMIN_EXPECTED = {
    "quota": (1, 2, 3, 5, 9),
    "max_weight": (1, 1, 2, 3, 5),
    "weight_sum": (1, 2, 4, 8, 15),
}


def maxmin_table(n: int, games=None) -> dict:
    """Max over weighted monotone games (empty losing, grand winning) of the
    minimum of each objective."""
    from .enumeration import enumerate_monotone
    from .weightedness import Weighted, decide_weighted

    if games is None:
        games = [
            g
            for g in enumerate_monotone(n, require_empty_losing=True, require_grand_winning=True)
            if isinstance(decide_weighted(g), Weighted)
        ]
    out = {}
    for objective in OBJECTIVES:
        best, witness = None, None
        for g in games:
            v = minimum_representation(g, objective).value(objective)
            if best is None or v > best:
                best, witness = v, g
        out[objective] = (best, witness)
    return out


def reproduce_maxmin_table(max_n: int = 5) -> list[dict]:
    """One row per (objective, n) with the computed and expected maxima."""
    if not 1 <= max_n <= 5:
        raise ScopeError("table reproduction limited to n <= 5")
    rows = []
    for n in range(1, max_n + 1):
        maxima = maxmin_table(n)
        for objective in OBJECTIVES:
            value, _ = maxima[objective]
            expected = MAXMIN_EXPECTED[objective][n - 1]
            rows.append(
                {
                    "objective": objective,
                    "n": n,
                    "computed": value,
                    "expected": expected,
                    "status": "PASS" if value == expected else "FAIL",
                }
            )
        rows.append(
            {
                "objective": "alpha_n+1_bound_on_quota",
                "n": n,
                "computed": maxima["quota"][0],
                "expected": alpha(n + 1),
                "status": "PASS" if maxima["quota"][0] == alpha(n + 1) else "FAIL",
            }
        )
    return rows

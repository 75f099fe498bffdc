"""Deciding weightedness, with a trading transform when the answer is no.

The primal system asks for weights ``w``, quota ``q`` and a margin ``eps``
with every winning coalition at or above the quota and every losing one at
least ``eps`` below it.  When that fails, Farkas' lemma hands us a solution
of the dual equality system; scaling its basic solution by ``|det B|``
gives integer multiplicities of winning and losing coalitions, i.e. a
trading transform of size ``|det B| <= alpha(n + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .bounds import ALPHA, alpha
from .exact import BasicSolution, LinearSystem, determinant
from .game import (
    SimpleGame,
    TradingTransform,
    characteristic,
    check_eq2,
    coalition_sums,
    verify_trading_transform,
)


class FarkasViolation(ArithmeticError):
    """Both or neither of a Farkas pair came out feasible: a solver bug."""


def build_p1(g: SimpleGame) -> LinearSystem:
    """Primal system over ``(w_1..w_n, -q, eps)`` with ``eps >= 1``.

    One row per coalition: ``chi(S).w - q >= 0`` for winning S and
    ``-chi(S).w + q - eps >= 0`` for losing S.  ``eps > 0`` is imposed as the
    variable bound ``eps >= 1``, harmless because the system is a cone.
    """
    n = g.n
    a, labels = [], []
    for s in g.winning:
        a.append(characteristic(s, n) + [1, 0])
        labels.append(("W", s))
    for s in g.losing:
        a.append([-x for x in characteristic(s, n)] + [-1, -1])
        labels.append(("L", s))
    names = [f"w{i + 1}" for i in range(n)] + ["-q", "eps"]
    return LinearSystem(a, [0] * len(a), [">="] * len(a), [None] * (n + 1) + [1], names, labels)


def build_d1(g: SimpleGame) -> LinearSystem:
    """Dual equality system over nonnegative ``(x_S for S in W, y_S for S in L)``.

    Rows: one balance row per player, the total balance ``sum x = sum y``,
    and the normalisation ``-sum y = -1``.
    """
    n = g.n
    win, lose = g.winning, g.losing
    a = []
    for i in range(n):
        bit = 1 << i
        a.append([1 if s & bit else 0 for s in win] + [-1 if s & bit else 0 for s in lose])
    a.append([1] * len(win) + [-1] * len(lose))
    a.append([0] * len(win) + [-1] * len(lose))
    rhs = [0] * (n + 1) + [-1]
    names = [("x", s) for s in win] + [("y", s) for s in lose]
    labels = [f"player {i + 1}" for i in range(n)] + ["total", "normalisation"]
    return LinearSystem(a, rhs, ["="] * len(a), [0] * len(names), names, labels)


@dataclass(frozen=True)
class Weighted:
    q: Fraction
    w: tuple[Fraction, ...]

    kind = "weighted"

    def to_json(self) -> dict:
        return {"verdict": "weighted", "q": str(self.q), "w": [str(x) for x in self.w]}


@dataclass(frozen=True)
class NonWeighted:
    certificate: TradingTransform
    det_abs: int
    basis_matrix: tuple[tuple[int, ...], ...]
    y_columns: tuple[int, ...]  # basis-matrix columns indexed by losing coalitions

    kind = "non_weighted"

    def to_json(self) -> dict:
        out = {"verdict": "non_weighted"}
        out.update(self.certificate.to_json())
        return out


WeightednessVerdict = Union[Weighted, NonWeighted]


def expand_multiplicities(coalitions, counts) -> tuple[int, ...]:
    """Repeat each coalition ``count`` times, in the given (canonical) order."""
    out = []
    for s, c in zip(coalitions, counts):
        if c < 0:
            raise ArithmeticError("negative multiplicity")
        out.extend([s] * c)
    return tuple(out)


def trade_from_d1(g: SimpleGame, sol: BasicSolution) -> NonWeighted:
    win, lose = g.winning, g.losing
    z = sol.scaled()
    xs = expand_multiplicities(win, z[: len(win)])
    ys = expand_multiplicities(lose, z[len(win):])
    t = TradingTransform(xs, ys)
    if not verify_trading_transform(g, t):
        raise ArithmeticError("scaled dual solution is not a trading transform")
    if t.size != sol.det_abs:
        raise ArithmeticError(f"transform size {t.size} != |det B| = {sol.det_abs}")
    if g.n + 1 < len(ALPHA) and t.size > alpha(g.n + 1):
        raise ArithmeticError(f"transform size {t.size} exceeds alpha_{g.n + 1}")
    ycols = tuple(k for k, j in enumerate(sol.basis) if j >= len(win))
    # negating the y-columns turns the basis into a 0-1 matrix of equal |det|
    flipped = [[-x if k in ycols else x for k, x in enumerate(row)] for row in sol.basis_matrix]
    if any(x not in (0, 1) for row in flipped for x in row):
        raise ArithmeticError("sign-normalised basis is not a 0-1 matrix")
    if abs(determinant(flipped)) != sol.det_abs:
        raise ArithmeticError("sign normalisation changed |det B|")
    return NonWeighted(t, sol.det_abs, sol.basis_matrix, ycols)


def decide_weighted(g: SimpleGame) -> WeightednessVerdict:
    """Weighted representation or a trading transform of size <= alpha(n+1)."""
    n = g.n
    if not g.winning:
        return Weighted(Fraction(1), (Fraction(0),) * n)
    if not g.losing:
        return Weighted(Fraction(0), (Fraction(0),) * n)
    primal = build_p1(g).solve()
    if primal is not None:
        w = primal.values[:n]
        q = -primal.values[n]
        # rescale so the heaviest losing coalition sits exactly 1 below q
        margin = q - max(coalition_sums(n, w)[s] for s in g.losing)
        w = tuple(v / margin for v in w)
        q = q / margin
        if not check_eq2(g, q, w):
            raise ArithmeticError("primal solution does not represent the game")
        return Weighted(q, w)
    dual = build_d1(g).solve()
    if dual is None:
        raise FarkasViolation("neither P1 nor D1 is feasible")
    return trade_from_d1(g, dual)

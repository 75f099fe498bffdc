"""Roughly weighted games.

A rough representation ``(q; w) != 0`` only constrains coalitions off the
quota: below it they lose, above it they win.  Either a passer gives one
for free, or the quota-normalised system P4 has a basic solution that
scales to integers, or the game has a potent certificate (a trading
transform with the grand coalition among the winners and the empty
coalition among the losers) read off a basic solution of D3+.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .bounds import ALPHA, alpha
from .exact import BasicSolution, LinearSystem
from .game import (
    HypothesisError,
    SimpleGame,
    TradingTransform,
    characteristic,
    coalition_sums,
    passers,
    verify_trading_transform,
)
from .weightedness import expand_multiplicities

log = logging.getLogger(__name__)


def require_rough_hypotheses(g: SimpleGame) -> None:
    if not g.is_monotone:
        raise HypothesisError("rough analysis needs a monotone game")
    if not g.has_empty_losing:
        raise HypothesisError("the empty coalition must be losing")
    if not g.has_grand_winning:
        raise HypothesisError("the grand coalition must be winning")


def is_rough_representation(g: SimpleGame, q, w: Sequence) -> bool:
    if q == 0 and not any(w):
        return False
    t = g.table
    for s, v in enumerate(coalition_sums(g.n, w)):
        if v < q and t[s]:
            return False
        if v > q and not t[s]:
            return False
    return True


def build_p3(g: SimpleGame) -> LinearSystem:
    """Rows ``chi(S).w - q >= 0`` (S winning), ``-chi(S).w + q >= 0`` (S losing)
    and the strict row ``sum w > 0``, over free ``(w_1..w_n, -q)``."""
    n = g.n
    a, labels = [], []
    for s in g.winning:
        a.append(characteristic(s, n) + [1])
        labels.append(("W", s))
    for s in g.losing:
        a.append([-x for x in characteristic(s, n)] + [-1])
        labels.append(("L", s))
    a.append([1] * n + [0])
    labels.append("positive")
    m = len(a)
    names = [f"w{i + 1}" for i in range(n)] + ["-q"]
    return LinearSystem(a, [0] * m, [">="] * m, [None] * (n + 1), names, labels, strict=(m - 1,))


def _d3_rows(g: SimpleGame):
    n = g.n
    win, lose = g.winning, g.losing
    a = []
    for i in range(n):
        bit = 1 << i
        a.append([1 if s & bit else 0 for s in win] + [-1 if s & bit else 0 for s in lose])
    a.append([1] * len(win) + [-1] * len(lose))
    return a, [-1] * n + [0]


def build_d3(g: SimpleGame) -> LinearSystem:
    """``A(W)^T x - A(L)^T y = -1``, ``sum x - sum y = 0``, ``x, y >= 0``."""
    a, rhs = _d3_rows(g)
    names = [("x", s) for s in g.winning] + [("y", s) for s in g.losing]
    labels = [f"player {i + 1}" for i in range(g.n)] + ["total"]
    return LinearSystem(a, rhs, ["="] * len(a), [0] * len(names), names, labels)


def build_d3_plus(g: SimpleGame) -> LinearSystem:
    """D3 with an extra column ``u >= 0`` and the row ``sum x - u = -1``."""
    a, rhs = _d3_rows(g)
    a = [row + [0] for row in a]
    a.append([1] * len(g.winning) + [0] * len(g.losing) + [-1])
    rhs.append(-1)
    names = [("x", s) for s in g.winning] + [("y", s) for s in g.losing] + ["u"]
    labels = [f"player {i + 1}" for i in range(g.n)] + ["total", "length"]
    return LinearSystem(a, rhs, ["="] * len(a), [0] * len(names), names, labels)


def build_p4(g: SimpleGame) -> LinearSystem:
    """``chi(S).w >= 1`` (S winning), ``-chi(S).w >= -1`` (S losing) and
    ``-sum w + u >= 0`` over nonnegative ``(w_1..w_n, u)``."""
    n = g.n
    a, rhs, labels = [], [], []
    for s in g.winning:
        a.append(characteristic(s, n) + [0])
        rhs.append(1)
        labels.append(("W", s))
    for s in g.losing:
        a.append([-x for x in characteristic(s, n)] + [0])
        rhs.append(-1)
        labels.append(("L", s))
    a.append([-1] * n + [1])
    rhs.append(0)
    labels.append("length")
    names = [f"w{i + 1}" for i in range(n)] + ["u"]
    return LinearSystem(a, rhs, [">="] * len(a), [0] * (n + 1), names, labels)


@dataclass(frozen=True)
class RoughlyWeighted:
    q: int
    w: tuple[int, ...]
    source: str  # "passer" or "p4"
    det_abs: Optional[int] = None

    kind = "roughly_weighted"

    def to_json(self) -> dict:
        return {"verdict": "roughly_weighted", "source": self.source, "q": self.q, "w": list(self.w)}


@dataclass(frozen=True)
class PotentCertificate:
    transform: TradingTransform
    det_abs: int
    u_prime: Fraction

    kind = "not_rough"

    @property
    def length(self) -> int:
        return self.transform.size

    def to_json(self) -> dict:
        full = max(self.transform.xs)
        out = {"verdict": "not_rough", "potent": True}
        out.update(self.transform.to_json())
        out["grand_indices"] = [i for i, x in enumerate(self.transform.xs) if x == full]
        out["empty_indices"] = [i for i, y in enumerate(self.transform.ys) if y == 0]
        return out


RoughVerdict = Union[RoughlyWeighted, PotentCertificate]


def _check_rough_bounds(n: int, q: int, w: Sequence[int]) -> None:
    if n >= len(ALPHA):
        return
    if not all(0 <= x <= alpha(n - 1) for x in w):
        raise ArithmeticError(f"rough weights {list(w)} exceed alpha_{n - 1}")
    if not 0 <= q <= alpha(n):
        raise ArithmeticError(f"rough quota {q} exceeds alpha_{n}")
    if sum(w) == 0:
        # the weaker form 0 <= sum w would still hold; only 1 <= sum w is enforced
        log.warning("rough weight sum is 0 for n=%d", n)
    if not 1 <= sum(w) <= 2 * alpha(n):
        raise ArithmeticError(f"rough weight sum {sum(w)} outside [1, 2 alpha_{n}]")


def rough_from_p4(g: SimpleGame, sol: BasicSolution) -> RoughlyWeighted:
    n = g.n
    z = sol.scaled()
    q, w, u = sol.det_abs, tuple(z[:n]), z[n]
    if sum(w) > u:
        raise ArithmeticError("weight sum exceeds u*")
    if not is_rough_representation(g, q, w):
        raise ArithmeticError("scaled P4 solution is not a rough representation")
    _check_rough_bounds(n, q, w)
    return RoughlyWeighted(q, w, "p4", sol.det_abs)


def potent_certificate(g: SimpleGame) -> PotentCertificate:
    """Potent certificate from a basic solution of D3+, with the +1 shift on
    the grand and empty coalitions."""
    require_rough_hypotheses(g)
    sol = build_d3_plus(g).solve()
    if sol is None:
        raise HypothesisError("game is roughly weighted; no potent certificate exists")
    win, lose = g.winning, g.losing
    d = sol.det_abs
    z = sol.scaled()
    xs_count = list(z[: len(win)])
    ys_count = list(z[len(win): len(win) + len(lose)])
    xs_count[win.index(g.full)] += d
    ys_count[lose.index(0)] += d
    t = TradingTransform(expand_multiplicities(win, xs_count), expand_multiplicities(lose, ys_count))
    if not verify_trading_transform(g, t):
        raise ArithmeticError("shifted D3+ solution is not a trading transform")
    if g.full not in t.xs or 0 not in t.ys:
        raise ArithmeticError("certificate is not potent")
    u_prime = sol.values[-1]
    if t.size != d * u_prime:
        raise ArithmeticError(f"length {t.size} != |det B| u' = {d * u_prime}")
    if g.n + 1 < len(ALPHA) and t.size > 2 * alpha(g.n + 1):
        raise ArithmeticError(f"certificate length {t.size} exceeds 2 alpha_{g.n + 1}")
    return PotentCertificate(t, d, u_prime)


def decide_rough(g: SimpleGame) -> RoughVerdict:
    require_rough_hypotheses(g)
    n = g.n
    ps = passers(g)
    if ps:
        w = tuple(1 if i + 1 == ps[0] else 0 for i in range(n))
        if not is_rough_representation(g, 0, w):
            raise ArithmeticError("passer representation failed the rough check")
        _check_rough_bounds(n, 0, w)
        return RoughlyWeighted(0, w, "passer")
    sol = build_p4(g).solve()
    if sol is not None:
        return rough_from_p4(g, sol)
    return potent_certificate(g)


def clamp_p3(g: SimpleGame, values: Sequence) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Drop negative weights of a P3 solution ``(w_1..w_n, -q)``; the result
    is still rough for monotone games."""
    n = g.n
    w = tuple(max(Fraction(x), Fraction(0)) for x in values[:n])
    q = -Fraction(values[n])
    if not is_rough_representation(g, q, w):
        raise ArithmeticError("clamped P3 solution is not a rough representation")
    return q, w


def rough_farkas_pair(g: SimpleGame) -> tuple[bool, bool]:
    """Feasibility of (P3, D3); exactly one should hold."""
    p3 = build_p3(g).solve()
    if p3 is not None and g.is_monotone:
        clamp_p3(g, p3.values)
    d3 = build_d3(g).solve()
    return p3 is not None, d3 is not None

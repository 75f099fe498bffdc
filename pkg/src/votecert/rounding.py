"""LP relaxation of the integer-weight problem and two ways back to integers.

``scale_by_n`` floors ``n`` times the relaxed solution.  ``find_lambda``
searches the multiplier interval ``[l1, u1]`` with
``l1 = (2 - sqrt2) n - (sqrt2 - 1)`` and ``u1 = (2 - sqrt2) n + (sqrt2 - 1)``
for a point where

    g(lam) = lam - sum_i frac(lam * w_i)

is positive, and floors ``lam`` times the relaxed solution there.  All
comparisons against the irrational endpoints are exact: numbers of the form
``a + b*sqrt2`` are compared by squaring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import Bracket
from .exact import feasible_inequality
from .game import (
    HypothesisError,
    SimpleGame,
    check_eq2,
    maximal_losing,
    minimal_winning,
    null_players,
)
from .integer_repr import IntegerRepresentation, NotWeightedError, require_proper

BRACKET_DENOMINATOR = 10**10  # bracket width 1e-10, inside the 1e-9 budget


def _sign(a: Fraction, b: Fraction) -> int:
    """Sign of ``a + b*sqrt2``."""
    if a >= 0 and b >= 0:
        return 1 if a or b else 0
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare a^2 with 2 b^2
    lhs, rhs = a * a, 2 * b * b
    if lhs == rhs:
        return 0
    return (1 if a > 0 else -1) if lhs > rhs else (1 if b > 0 else -1)


@dataclass(frozen=True)
class Surd:
    """The real number ``a + b*sqrt2`` with rational ``a``, ``b``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __add__(self, other):
        o = _as_surd(other)
        return Surd(self.a + o.a, self.b + o.b)

    def __sub__(self, other):
        o = _as_surd(other)
        return Surd(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return _as_surd(other) - self

    def __mul__(self, k):
        if isinstance(k, Surd):
            return Surd(self.a * k.a + 2 * self.b * k.b, self.a * k.b + self.b * k.a)
        return Surd(self.a * k, self.b * k)

    __rmul__ = __mul__

    def sign(self) -> int:
        return _sign(self.a, self.b)

    def cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return self.cmp(other) == 0

    def __hash__(self):
        return hash((self.a, self.b))

    def floor(self) -> int:
        k = math.floor(float(self))
        while self < k:
            k -= 1
        while self >= k + 1:
            k += 1
        return k

    def ceil(self) -> int:
        return -((-1 * self).floor())

    def bracket(self, den: int = BRACKET_DENOMINATOR) -> Bracket:
        """Outward rational bracket of width at most ``1/den``."""
        if self.b == 0:
            return Bracket(self.a, self.a)
        k = (self * den).floor()
        return Bracket(Fraction(k, den), Fraction(k + 1, den))


def _as_surd(x) -> Surd:
    return x if isinstance(x, Surd) else Surd(Fraction(x), Fraction(0))


SQRT2 = Surd(0, 1)


@dataclass(frozen=True)
class LambdaInterval:
    n: int
    ell1: Surd
    u1: Surd

    @classmethod
    def for_players(cls, n: int) -> "LambdaInterval":
        ell1 = Surd(2 * n + 1, -(n + 1))  # (2 - sqrt2) n - (sqrt2 - 1)
        u1 = Surd(2 * n - 1, -(n - 1))  # (2 - sqrt2) n + (sqrt2 - 1)
        return cls(n, ell1, u1)

    @property
    def ell1_bracket(self) -> Bracket:
        return self.ell1.bracket()

    @property
    def u1_bracket(self) -> Bracket:
        return self.u1.bracket()

    def contains(self, lam) -> bool:
        return self.ell1 <= lam and lam <= self.u1

    def to_json(self) -> dict:
        lo, hi = self.ell1_bracket, self.u1_bracket
        return {
            "ell1": [str(lo.lo), str(lo.hi)],
            "u1": [str(hi.lo), str(hi.hi)],
        }


@dataclass(frozen=True)
class RelaxationSolution:
    q_star: Fraction
    w_star: tuple[Fraction, ...]

    def __post_init__(self):
        if self.q_star < 1 or any(x < 1 for x in self.w_star):
            raise HypothesisError("relaxed solution needs q* >= 1 and every w*_i >= 1")

    def to_json(self) -> dict:
        return {"q_star": str(self.q_star), "w_star": [str(x) for x in self.w_star]}


def require_rounding_hypotheses(g: SimpleGame) -> None:
    require_proper(g)
    if not g.is_monotone:
        raise HypothesisError("rounding needs a monotone game")
    nulls = null_players(g)
    if nulls:
        raise HypothesisError(f"rounding needs a game without null players; null: {nulls}")


def triplet_valid(g: SimpleGame, q, w: Sequence) -> bool:
    """Constraints on minimal winning and maximal losing coalitions only."""
    n = g.n

    def weight(s):
        return sum(w[i] for i in range(n) if s >> i & 1)

    return all(weight(s) >= q for s in minimal_winning(g)) and all(
        weight(s) <= q - 1 for s in maximal_losing(g)
    )


def solve_relaxation(g: SimpleGame) -> RelaxationSolution:
    """Basic feasible solution of the relaxation over ``(q, w_1..w_n)``."""
    require_rounding_hypotheses(g)
    n = g.n
    a, rhs = [], []
    for s in minimal_winning(g):
        a.append([-1] + [(s >> i) & 1 for i in range(n)])
        rhs.append(0)
    for s in maximal_losing(g):
        a.append([1] + [-((s >> i) & 1) for i in range(n)])
        rhs.append(1)
    sol = feasible_inequality(a, rhs, [">="] * len(a), [1] * (n + 1))
    if sol is None:
        raise NotWeightedError("relaxation infeasible: game is not weighted")
    q, w = sol.values[0], tuple(sol.values[1:])
    if not triplet_valid(g, q, w):
        raise ArithmeticError("relaxation solution violates its constraints")
    return RelaxationSolution(q, w)


def _floor_pair(lam, sol: RelaxationSolution) -> tuple[int, tuple[int, ...]]:
    q = math.floor(lam * (sol.q_star - 1)) + 1
    w = tuple(math.floor(lam * x) for x in sol.w_star)
    return q, w


def scale_by_n(g: SimpleGame, sol: RelaxationSolution) -> IntegerRepresentation:
    """``w' = floor(n w*)``, ``q' = floor(n (q* - 1)) + 1``."""
    n = g.n
    q, w = _floor_pair(n, sol)
    if not (triplet_valid(g, q, w) and check_eq2(g, q, w)):
        raise ArithmeticError("n-scaled representation is invalid")
    if q > n * sol.q_star or any(wi > n * x for wi, x in zip(w, sol.w_star)):
        raise ArithmeticError("n-scaled representation exceeds n (q*; w*)")
    return IntegerRepresentation(q, w)


def g_eval(lam, w_star: Sequence) -> Fraction:
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    total = lam
    for x in w_star:
        v = lam * x
        total -= v - math.floor(v)
    return total


def breakpoints(sol: RelaxationSolution, interval: LambdaInterval) -> list[Fraction]:
    """All ``k / w*_i`` inside ``[l1, u1]``, sorted and deduplicated."""
    pts = set()
    for x in sol.w_star:
        lo = (interval.ell1 * x).ceil()
        hi = (interval.u1 * x).floor()
        for k in range(lo, hi + 1):
            pts.add(Fraction(k) / x)
    return sorted(pts)


@dataclass(frozen=True)
class LambdaResult:
    lam: Fraction
    g: Fraction
    representation: IntegerRepresentation
    interval: LambdaInterval
    candidates: int

    def to_json(self) -> dict:
        return {
            "lambda": str(self.lam),
            "g": str(self.g),
            "q": self.representation.q,
            "w": list(self.representation.w),
            "interval": self.interval.to_json(),
        }


def find_lambda(g: SimpleGame, sol: RelaxationSolution) -> LambdaResult:
    """Constructive multiplier search.

    ``g`` is right-continuous and decreasing between breakpoints, so its
    supremum on each cell sits at the cell's left end.  We evaluate every
    breakpoint in the interval, the inward rational next to ``l1`` and the
    inward rational next to ``u1``, then keep the largest ``g`` (ties to the
    smaller multiplier).
    """
    n = g.n
    interval = LambdaInterval.for_players(n)
    cands = breakpoints(sol, interval)
    lo_in = interval.ell1_bracket.hi
    hi_in = interval.u1_bracket.lo
    cands.extend(x for x in (lo_in, hi_in) if interval.contains(x))
    best = None
    for lam in sorted(set(cands)):
        val = g_eval(lam, sol.w_star)
        if val > 0 and (best is None or val > best[1]):
            best = (lam, val)
    if best is None:
        raise AssertionError("no multiplier with positive g in [l1, u1]")
    lam, val = best
    assert interval.contains(lam)
    assert interval.ell1_bracket.lo <= lam <= interval.u1_bracket.hi
    q, w = _floor_pair(lam, sol)
    if not (triplet_valid(g, q, w) and check_eq2(g, q, w)):
        raise AssertionError(f"floor pair at lambda = {lam} is not a representation")
    # multiplier bound, once exactly and once against the outward bracket
    u1, u1_hi = interval.u1, interval.u1_bracket.hi
    for v, x in zip((q,) + w, (sol.q_star,) + sol.w_star):
        assert v <= u1 * x, "component exceeds u1 times the relaxed value"
        assert v <= u1_hi * x
    return LambdaResult(lam, val, IntegerRepresentation(q, w), interval, len(cands))


def round_game(g: SimpleGame) -> dict:
    """Relaxation, n-scaled and lambda-rounded representations side by side."""
    sol = solve_relaxation(g)
    scaled = scale_by_n(g, sol)
    res = find_lambda(g, sol)
    if g.n >= 2:
        # lambda <= u1 < n, so the floors can only shrink
        assert res.representation.q <= scaled.q
        assert all(a <= b for a, b in zip(res.representation.w, scaled.w))
    return {
        "relaxation": sol.to_json(),
        "n_scaled": {"q": scaled.q, "w": list(scaled.w)},
        "lambda_rounded": res.to_json(),
    }


# --- the averaging function behind the interval choice ---

F_TARGET = Surd(2, -1)  # 2 - sqrt2
F_START = Surd(-2, 2)  # 2 (sqrt2 - 1)


def f_eval(x) -> Fraction:
    """``f(x) = (1/x) * integral_{-x}^{0} frac(mu) d mu``, in closed form.

    With ``m = floor(x)`` and ``r = x - m`` the integral is
    ``m/2 + r - r^2/2``: each whole unit contributes ``1/2`` and the
    partial unit ``[-x, -m)`` contributes ``r - r^2/2``.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("f is defined for x > 0")
    m = math.floor(x)
    r = x - m
    return (Fraction(m, 2) + r - r * r / 2) / x


def local_max_bounded(m: int) -> bool:
    """Exact test that the interior maximum of cell ``[m, m+1)`` stays below
    ``2 - sqrt2``.

    Setting the derivative to zero gives ``r^2 + 2 m r - m = 0``, so the
    maximum sits at ``x_m = sqrt(m^2 + m)`` with value ``1 + m - x_m``.
    The bound is then ``m - 1 + sqrt2 <= sqrt(m^2 + m)``.  Cell 0 has no
    interior maximum since ``f = 1 - x/2`` there.
    """
    if m < 1:
        raise ValueError("cells with an interior maximum start at m = 1")
    lhs = Surd(m - 1, 1)  # both sides positive, so squaring is monotone
    sq = lhs * lhs
    return sq <= m * m + m


def f_start_value() -> Surd:
    """Exact ``f`` at ``x0 = 2(sqrt2 - 1)``, which lies in cell 0 where ``f = 1 - x/2``."""
    return 1 - F_START * Fraction(1, 2)


def f_bound_check(step: Fraction = Fraction(1, 1000), x_max: int = 20) -> dict:
    """Verify ``f(x) <= 2 - sqrt2`` for ``x >= x0`` on a grid and at every local
    maximum, and equality at ``x0``."""
    k0 = (F_START * (1 / step)).ceil()
    k1 = math.floor(x_max / step)
    worst, worst_x, grid_ok, points = None, None, True, 0
    for k in range(k0, k1 + 1):
        x = k * step
        v = f_eval(x)
        points += 1
        if F_TARGET < v:
            grid_ok = False
        if worst is None or v > worst:
            worst, worst_x = v, x
    maxima_ok = all(local_max_bounded(m) for m in range(1, x_max))
    equality = f_start_value() == F_TARGET
    # bracketed cross-check at x0: evaluate f on both bracket ends
    br = F_START.bracket()
    t = F_TARGET.bracket()
    near = all(abs(f_eval(e) - t.lo) <= Fraction(1, 10**9) for e in (br.lo, br.hi))
    return {
        "grid_points": points,
        "grid_ok": grid_ok,
        "grid_max": str(worst),
        "grid_argmax": str(worst_x),
        "local_maxima_ok": maxima_ok,
        "equality_at_start": equality,
        "equality_bracketed": near,
        "holds": grid_ok and maxima_ok and equality and near,
    }


def f_rows(step: Fraction = Fraction(1, 100), x_min: Fraction = Fraction(1, 100), x_max=20):
    """``(x, f(x))`` pairs for plotting."""
    x = Fraction(x_min)
    while x <= x_max:
        yield x, f_eval(x)
        x += step

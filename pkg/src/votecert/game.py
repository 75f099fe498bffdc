"""Simple games over bitmask coalitions.

A coalition is a plain ``int``: player ``i`` (1-indexed) is bit ``i - 1``.
Games store their winning family; the losing family is everything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

MAX_PLAYERS = 62

# oracle limits for the exponential trade search
TRADE_ORACLE_MAX_N = 5
TRADE_ORACLE_MAX_K = 9


class GameError(ValueError):
    """Malformed or inconsistent game data."""


class HypothesisError(ValueError):
    """A game does not satisfy the preconditions of an analysis."""


class ScopeError(ValueError):
    """Input exceeds a hard-coded size cap of an exhaustive routine."""


def coalition(players: Iterable[int]) -> int:
    mask = 0
    for p in players:
        mask |= 1 << (p - 1)
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def canonical_key(mask: int) -> tuple[int, int]:
    """Sort key: popcount first, then the numeric encoding."""
    return (mask.bit_count(), mask)


def canonical_sorted(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=canonical_key))


def characteristic(mask: int, n: int) -> list[int]:
    return [(mask >> i) & 1 for i in range(n)]


def _to_mask(c, n: int) -> int:
    players = list(c)
    for p in players:
        if not isinstance(p, int) or not 1 <= p <= n:
            raise GameError(f"player {p!r} outside 1..{n}")
    return coalition(players)


class SimpleGame:
    """A simple game ``(N, W)`` with ``N = {1..n}``.

    Construction is cheap enough for exhaustive sweeps: the winning family
    is kept as a lookup table of length ``2**n`` plus a canonically sorted
    tuple.  Instances are immutable.
    """

    __slots__ = ("n", "winning", "_table", "is_monotone")

    def __init__(self, n: int, winning: Iterable[int]):
        if not 1 <= n <= MAX_PLAYERS:
            raise GameError(f"player count {n} outside 1..{MAX_PLAYERS}")
        full = (1 << n) - 1
        masks = set(winning)
        for s in masks:
            if s < 0 or s & ~full:
                raise GameError(f"coalition {s:#x} not within {n} players")
        table = bytearray(1 << n)
        for s in masks:
            table[s] = 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "winning", canonical_sorted(masks))
        object.__setattr__(self, "_table", bytes(table))
        object.__setattr__(self, "is_monotone", _monotone(table, n))

    def __setattr__(self, name, value):
        raise AttributeError("SimpleGame is immutable")

    def __eq__(self, other):
        return isinstance(other, SimpleGame) and self.n == other.n and self._table == other._table

    def __hash__(self):
        return hash((self.n, self._table))

    def __repr__(self):
        mw = [list(members(s)) for s in minimal_winning(self)]
        return f"SimpleGame(n={self.n}, minimal_winning={mw})"

    def __reduce__(self):
        return (SimpleGame, (self.n, self.winning))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def losing(self) -> tuple[int, ...]:
        t = self._table
        return canonical_sorted(s for s in range(1 << self.n) if not t[s])

    @property
    def has_empty_losing(self) -> bool:
        return not self._table[0]

    @property
    def has_grand_winning(self) -> bool:
        return bool(self._table[self.full])

    def is_winning(self, s: int) -> bool:
        return bool(self._table[s])

    @property
    def table(self) -> bytes:
        """Membership table indexed by coalition mask."""
        return self._table

    def permuted(self, perm: Sequence[int]) -> "SimpleGame":
        """Relabel players: player ``i`` becomes ``perm[i - 1]``."""
        return SimpleGame(self.n, (permute_mask(s, perm) for s in self.winning))

    def to_json(self) -> dict:
        return {"n": self.n, "winning": [list(members(s)) for s in self.winning]}


def _monotone(table, n: int) -> bool:
    for s in range(1 << n):
        if table[s]:
            for i in range(n):
                if not table[s | (1 << i)]:
                    return False
    return True


def permute_mask(s: int, perm: Sequence[int]) -> int:
    out = 0
    i = 0
    while s:
        if s & 1:
            out |= 1 << (perm[i] - 1)
        s >>= 1
        i += 1
    return out


def from_winning(n: int, winning: Iterable[Iterable[int]]) -> SimpleGame:
    if n < 1:
        raise GameError("a game needs at least one player")
    return SimpleGame(n, (_to_mask(c, n) for c in winning))


def _is_antichain(masks: Sequence[int]) -> bool:
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b == a or a & b == b:
                return False
    return True


def upward_closure(n: int, generators: Iterable[int]) -> list[int]:
    gens = list(generators)
    return [s for s in range(1 << n) if any(g & s == g for g in gens)]


def from_min_max(
    n: int,
    min_winning: Iterable[Iterable[int]],
    max_losing: Iterable[Iterable[int]],
) -> SimpleGame:
    """Rebuild a monotone game from its minimal winning / maximal losing pair."""
    mw = canonical_sorted(_to_mask(c, n) for c in min_winning)
    ml = canonical_sorted(_to_mask(c, n) for c in max_losing)
    if not _is_antichain(mw):
        raise GameError("minimal winning coalitions do not form an antichain")
    if not _is_antichain(ml):
        raise GameError("maximal losing coalitions do not form an antichain")
    for l in ml:
        for w in mw:
            if w & l == w:
                raise GameError(
                    f"losing coalition {list(members(l))} contains winning {list(members(w))}"
                )
    g = SimpleGame(n, upward_closure(n, mw))
    if maximal_losing(g) != ml:
        raise GameError("maximal losing coalitions disagree with the upward closure")
    return g


def minimal_winning(g: SimpleGame) -> tuple[int, ...]:
    """Winning coalitions with no winning proper subset."""
    t = g.table
    n = g.n
    below = bytearray(1 << n)  # some proper subset is winning
    for s in range(1, 1 << n):
        m = s
        while m:
            low = m & -m
            sub = s ^ low
            if t[sub] or below[sub]:
                below[s] = 1
                break
            m ^= low
    return canonical_sorted(s for s in range(1 << n) if t[s] and not below[s])


def maximal_losing(g: SimpleGame) -> tuple[int, ...]:
    """Losing coalitions with no losing proper superset."""
    t = g.table
    n = g.n
    full = g.full
    above = bytearray(1 << n)  # some proper superset is losing
    for s in range(full - 1, -1, -1):
        comp = full & ~s
        while comp:
            low = comp & -comp
            sup = s | low
            if not t[sup] or above[sup]:
                above[s] = 1
                break
            comp ^= low
    return canonical_sorted(s for s in range(1 << n) if not t[s] and not above[s])


def passers(g: SimpleGame) -> list[int]:
    t = g.table
    out = []
    for i in range(g.n):
        bit = 1 << i
        if all(t[s] for s in range(1 << g.n) if s & bit):
            out.append(i + 1)
    return out


def null_players(g: SimpleGame) -> list[int]:
    t = g.table
    out = []
    for i in range(g.n):
        bit = 1 << i
        if all(t[s] == t[s | bit] for s in range(1 << g.n) if not s & bit):
            out.append(i + 1)
    return out


@dataclass(frozen=True)
class TradingTransform:
    """Paired coalition sequences ``(X_1..X_j; Y_1..Y_j)``.

    Nothing is enforced at construction; use :func:`verify_trading_transform`.
    """

    xs: tuple[int, ...]
    ys: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.xs)

    def is_balanced(self) -> bool:
        if len(self.xs) != len(self.ys) or not self.xs:
            return False
        width = max(max(self.xs), max(self.ys)).bit_length()
        for i in range(width):
            bit = 1 << i
            if sum(1 for x in self.xs if x & bit) != sum(1 for y in self.ys if y & bit):
                return False
        return True

    def permuted(self, perm: Sequence[int]) -> "TradingTransform":
        return TradingTransform(
            tuple(permute_mask(x, perm) for x in self.xs),
            tuple(permute_mask(y, perm) for y in self.ys),
        )

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "X": [list(members(x)) for x in self.xs],
            "Y": [list(members(y)) for y in self.ys],
        }


def verify_trading_transform(
    g: SimpleGame, t: TradingTransform, require_winning_losing: bool = True
) -> bool:
    if any(s & ~g.full for s in t.xs + t.ys):
        return False
    if not t.is_balanced():
        return False
    if require_winning_losing:
        if not all(g.is_winning(x) for x in t.xs):
            return False
        if any(g.is_winning(y) for y in t.ys):
            return False
    return True


def _reachable(coalitions, n, k, base):
    """Count vectors reachable with j coalitions, j = 0..k, with back-pointers."""
    enc = [sum(base ** i for i in range(n) if s >> i & 1) for s in coalitions]
    levels = [{0: None}]
    for _ in range(k):
        prev = levels[-1]
        cur: dict = {}
        for v in prev:
            for s, e in zip(coalitions, enc):
                w = v + e
                if w not in cur:
                    cur[w] = (v, s)
        levels.append(cur)
    return levels


def _unwind(levels, j, v):
    out = []
    while j > 0:
        v, s = levels[j][v]
        out.append(s)
        j -= 1
    return tuple(sorted(out, key=canonical_key))


def trade_counterexample(
    g: SimpleGame, k: int, override: bool = False
) -> Optional[TradingTransform]:
    """Smallest winning/losing trading transform of size at most ``k``, if any.

    Brute force over player-count vectors: the set of vectors reachable as a
    sum of ``j`` winning characteristic vectors is intersected with the same
    set for losing coalitions.  Exponential; capped at n <= 5, k <= 9.
    """
    if not override and (g.n > TRADE_ORACLE_MAX_N or k > TRADE_ORACLE_MAX_K):
        raise ScopeError(
            f"trade oracle limited to n <= {TRADE_ORACLE_MAX_N}, k <= {TRADE_ORACLE_MAX_K}"
        )
    win = g.winning
    lose = g.losing
    if not win or not lose:
        return None
    base = k + 1
    wl = _reachable(win, g.n, k, base)
    ll = _reachable(lose, g.n, k, base)
    for j in range(1, k + 1):
        common = wl[j].keys() & ll[j].keys()
        if common:
            v = min(common)
            return TradingTransform(_unwind(wl, j, v), _unwind(ll, j, v))
    return None


def is_k_trade_robust_bruteforce(g: SimpleGame, k: int, override: bool = False) -> bool:
    return trade_counterexample(g, k, override) is None


def game_from_json(data: dict) -> SimpleGame:
    """Parse the canonical JSON game format (either variant)."""
    if not isinstance(data, dict) or "n" not in data:
        raise GameError("game JSON needs an 'n' field")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GameError("'n' must be an integer")
    if "winning" in data:
        return from_winning(n, data["winning"])
    if "minimal_winning" in data and "maximal_losing" in data:
        return from_min_max(n, data["minimal_winning"], data["maximal_losing"])
    raise GameError("game JSON needs 'winning' or 'minimal_winning' + 'maximal_losing'")


def check_eq2(g: SimpleGame, q, w: Sequence) -> bool:
    """Exhaustive weightedness check: S wins iff its weight reaches ``q``."""
    t = g.table
    return all((v >= q) == bool(t[s]) for s, v in enumerate(coalition_sums(g.n, w)))


def coalition_sums(n: int, w: Sequence) -> list:
    sums = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        sums[s] = sums[s ^ low] + w[low.bit_length() - 1]
    return sums

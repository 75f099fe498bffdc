"""Exhaustive generation of monotone simple games for small n.

Monotone games correspond one-to-one with antichains of the subset lattice
(their minimal winning coalitions), so we enumerate antichains by a
depth-first search that picks coalitions in increasing order and blocks
everything comparable to a pick.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from .game import ScopeError, SimpleGame, null_players, permute_mask
from .weightedness import Weighted, decide_weighted

ENUMERATION_MAX_N = 5
ENUMERATION_OVERRIDE_MAX_N = 6


def _check_scope(n: int, override: bool) -> None:
    cap = ENUMERATION_OVERRIDE_MAX_N if override else ENUMERATION_MAX_N
    if not 1 <= n <= cap:
        raise ScopeError(f"enumeration limited to 1 <= n <= {cap}")


def antichains(n: int) -> Iterator[tuple[int, ...]]:
    """All antichains of ``2^{1..n}``, each exactly once."""
    size = 1 << n
    comparable = []
    for s in range(size):
        bits = 0
        for t in range(size):
            if s & t == s or s & t == t:
                bits |= 1 << t
        comparable.append(bits)

    stack = [(0, 0, ())]
    while stack:
        start, blocked, chosen = stack.pop()
        yield chosen
        for s in range(size - 1, start - 1, -1):
            if not blocked >> s & 1:
                stack.append((s + 1, blocked | comparable[s], chosen + (s,)))


def _closure_table(n: int, gens: tuple[int, ...]) -> list[int]:
    size = 1 << n
    table = bytearray(size)
    for g in gens:
        table[g] = 1
    # propagate upward in increasing order of masks
    for s in range(size):
        if table[s]:
            for i in range(n):
                table[s | (1 << i)] = 1
    return [s for s in range(size) if table[s]]


def orbit_key(g: SimpleGame) -> int:
    """Smallest winning-family encoding over all player relabelings."""
    best = None
    for perm in itertools.permutations(range(1, g.n + 1)):
        code = 0
        for s in g.winning:
            code |= 1 << permute_mask(s, perm)
        if best is None or code < best:
            best = code
    return best


def _family_code(g: SimpleGame) -> int:
    code = 0
    for s in g.winning:
        code |= 1 << s
    return code


def enumerate_monotone(
    n: int,
    require_empty_losing: bool = False,
    require_grand_winning: bool = False,
    no_null_players: bool = False,
    canonical: bool = False,
    override: bool = False,
) -> Iterator[SimpleGame]:
    """Every monotone game on n players passing the filters.

    With ``canonical`` only the representative whose winning-family
    encoding is minimal within its permutation orbit is produced.
    """
    _check_scope(n, override)
    for gens in antichains(n):
        if require_grand_winning and not gens:
            continue
        if require_empty_losing and gens == (0,):
            continue
        g = SimpleGame(n, _closure_table(n, gens))
        if no_null_players and null_players(g):
            continue
        if canonical and _family_code(g) != orbit_key(g):
            continue
        yield g


def orbit_size(g: SimpleGame) -> int:
    codes = set()
    for perm in itertools.permutations(range(1, g.n + 1)):
        code = 0
        for s in g.winning:
            code |= 1 << permute_mask(s, perm)
        codes.add(code)
    return len(codes)


def enumerate_weighted(
    n: int,
    objective: Optional[str] = "quota",
    require_empty_losing: bool = True,
    require_grand_winning: bool = True,
    no_null_players: bool = False,
    override: bool = False,
):
    """Weighted monotone games paired with a minimum integer representation.

    ``objective=None`` pairs each game with its real-valued representation
    from :func:`decide_weighted` instead of running the integer search.
    """
    from .integer_repr import minimum_representation

    for g in enumerate_monotone(
        n, require_empty_losing, require_grand_winning, no_null_players, override=override
    ):
        verdict = decide_weighted(g)
        if not isinstance(verdict, Weighted):
            continue
        if objective is None:
            yield g, verdict
        else:
            yield g, minimum_representation(g, objective, override=override)


import pytest
from hypothesis import given, settings, strategies as st

from conftest import monotone, verdicts
from oracles import float_weighted
from votecert.bounds import alpha
from votecert.exact import determinant
from votecert.game import (
    SimpleGame,
    check_eq2,
    from_min_max,
    from_winning,
    verify_trading_transform,
)
from votecert.weightedness import (
    NonWeighted,
    Weighted,
    build_d1,
    build_p1,
    decide_weighted,
)

MAJ3 = from_winning(3, [[1, 2], [1, 3], [2, 3], [1, 2, 3]])
N4 = from_min_max(4, [[1, 2], [3, 4]], [[1, 3], [1, 4], [2, 3], [2, 4]])
DICT1 = from_winning(1, [[1]])


def test_p1_shapes():
    assert build_p1(DICT1).shape == (2, 3)
    assert build_p1(MAJ3).shape == (8, 5)
    assert build_p1(N4).shape == (16, 6)
    assert build_d1(N4).shape == (6, 16)


def test_p1_d1_examples():
    assert build_p1(N4).solve() is None
    assert build_p1(MAJ3).solve() is not None
    assert build_d1(DICT1).solve() is None
    sol = build_d1(N4).solve()
    assert sol is not None and sol.det_abs <= alpha(5)
    everything = SimpleGame(2, range(4))
    assert build_d1(everything).solve() is None


def test_majority_representation():
    v = decide_weighted(MAJ3)
    assert isinstance(v, Weighted)
    assert v.w[0] == v.w[1] == v.w[2]
    assert v.w[0] < v.q <= 2 * v.w[0]
    # heaviest losing coalition is exactly one below the quota
    assert v.q - v.w[0] == 1


def test_n4_certificate():
    v = decide_weighted(N4)
    assert isinstance(v, NonWeighted)
    t = v.certificate
    assert t.size == 2 == v.det_abs
    assert sorted(t.xs) == [0b0011, 0b1100]
    assert verify_trading_transform(N4, t)
    for y in t.ys:  # the losing side splits both pairs
        assert y & 0b0011 not in (0, 0b0011) and y & 0b1100 not in (0, 0b1100)


def test_degenerate_games():
    for g in (SimpleGame(3, []), SimpleGame(3, range(8))):
        v = decide_weighted(g)
        assert isinstance(v, Weighted) and check_eq2(g, v.q, v.w)


def test_json():
    assert decide_weighted(MAJ3).to_json() == {"verdict": "weighted", "q": "2", "w": ["1", "1", "1"]}
    j = decide_weighted(N4).to_json()
    assert j["verdict"] == "non_weighted" and j["size"] == 2 and len(j["X"]) == len(j["Y"]) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sweep_against_float_lp(n):
    for g, v in verdicts(n):
        assert isinstance(v, Weighted) == float_weighted(g)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sign_normalised_basis(n):
    for g, v in verdicts(n):
        if isinstance(v, NonWeighted):
            flipped = [[-x if k in v.y_columns else x for k, x in enumerate(row)]
                       for row in v.basis_matrix]
            assert all(x in (0, 1) for row in flipped for x in row)
            assert abs(determinant(flipped)) == v.det_abs


def test_small_n_all_weighted():
    for n in (1, 2, 3):
        assert all(isinstance(v, Weighted) for _, v in verdicts(n))
    assert any(isinstance(v, NonWeighted) for _, v in verdicts(4))


def test_non_monotone_games_are_handled():
    g = from_winning(2, [[], [1]])
    v = decide_weighted(g)
    assert isinstance(v, Weighted) and check_eq2(g, v.q, v.w)
    xor = from_winning(2, [[1], [2]])
    v = decide_weighted(xor)
    assert isinstance(v, NonWeighted) and verify_trading_transform(xor, v.certificate)


@given(st.integers(0, len(monotone(4)) - 1), st.permutations([1, 2, 3, 4]))
@settings(max_examples=60, deadline=None)
def test_relabelling_invariance(idx, perm):
    g = monotone(4)[idx]
    v, vp = decide_weighted(g), decide_weighted(g.permuted(perm))
    assert type(v) is type(vp)
    if isinstance(v, NonWeighted):
        assert verify_trading_transform(g.permuted(perm), v.certificate.permuted(perm))
    else:
        assert check_eq2(g.permuted(perm), v.q, [v.w[perm.index(i + 1)] for i in range(4)])


@given(st.lists(st.integers(0, 31), max_size=20))
@settings(max_examples=60, deadline=None)
def test_arbitrary_games_are_sound(wins):
    g = SimpleGame(5, wins)
    v = decide_weighted(g)
    if isinstance(v, Weighted):
        assert check_eq2(g, v.q, v.w)
    else:
        assert verify_trading_transform(g, v.certificate)
        assert v.certificate.size <= alpha(6)

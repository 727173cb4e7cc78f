from fractions import Fraction

import pytest
from conftest import F, ex3

from intervalgames import oracle, tugame
from intervalgames.errors import EmptyPolytope, PlayerCountMismatch
from intervalgames.intgame import border_games
from intervalgames.shapley import midpoint_game
from intervalgames.tugame import (
    TuGame,
    additive_game,
    core_is_empty,
    core_membership,
    core_vertices,
    excess,
    is_monotonic,
    is_superadditive,
    is_supermodular,
    shapley,
    size,
)


def cardinality(n):
    return TuGame.from_function(n, size)


def majority3():
    return TuGame.from_function(3, lambda m: int(size(m) >= 2))


SPLIT = TuGame.from_list(2, [0, 0, 1])


def test_coalition_helpers():
    assert tugame.members(0b101) == (1, 3)
    assert tugame.coalition([1, 3]) == 0b101
    assert list(tugame.subsets(0b101)) == [0, 1, 4, 5]
    assert tugame.shapley_weight(1, 3) == Fraction(1, 6)


def test_game_invariants():
    with pytest.raises(ValueError):
        TuGame(2, (1, 0, 0, 0))
    with pytest.raises(ValueError):
        TuGame(2, (0, 0, 0))
    with pytest.raises(PlayerCountMismatch):
        cardinality(2) + cardinality(3)


def test_is_monotonic():
    assert is_monotonic(cardinality(4))
    assert not is_monotonic(TuGame.from_list(2, [1, 0, 0]))
    upper = border_games(ex3())[1]
    # brute force over every comparable pair
    expected = all(upper(t) <= upper(s) for s in range(8) for t in range(8) if t & s == t)
    assert is_monotonic(upper) is expected is True


def test_is_supermodular():
    assert is_supermodular(additive_game([3, -1, 2]))
    square = TuGame.from_function(3, lambda m: size(m) ** 2)
    expected = all(square(s) + square(t) <= square(s | t) + square(s & t) for s in range(8) for t in range(8))
    assert is_supermodular(square) is expected is True
    flat = TuGame.from_list(2, [1, 1, 1])
    assert not is_supermodular(flat)
    assert tugame.supermodular_violation(flat) == (1, 2)


def test_shapley_examples():
    assert shapley(SPLIT) == F("1/2", "1/2")
    assert shapley(additive_game([3, "-1/2", 2])) == F(3, "-1/2", 2)
    mid = midpoint_game(ex3())
    assert oracle.shapley_by_permutations(mid) == F("7/4", 2, "11/4")
    assert shapley(mid) == F("7/4", 2, "11/4")


def test_core_membership_examples():
    assert core_membership([3, -1, 2], additive_game([3, -1, 2]))
    assert core_membership(["1/2", "1/2"], SPLIT)
    assert not core_membership([2, -1], SPLIT)


def test_core_emptiness_examples():
    assert core_is_empty(majority3())
    assert oracle.core_empty_by_balanced_collections(majority3())
    assert not core_is_empty(additive_game([1, 2, 3]))
    assert not core_is_empty(TuGame.from_function(3, lambda m: size(m) ** 2))


def test_core_vertices_examples():
    assert core_vertices(additive_game([1, 2, 3])) == [F(1, 2, 3)]
    assert core_vertices(SPLIT) == [F(0, 1), F(1, 0)]
    assert core_vertices(TuGame.from_list(2, [0, 0, 6])) == [F(0, 6), F(6, 0)]
    with pytest.raises(EmptyPolytope):
        core_vertices(majority3())


def test_excess_examples():
    assert excess([1, 1], 0b01, TuGame.from_list(2, [0, 0, 0])) == 1
    assert excess([2, 2], 0b11, TuGame.from_list(2, [0, 0, 6])) == -2


def test_shapley_axioms_random(rng):
    for _ in range(200):
        n = rng.randint(1, 4)
        u, v = tugame.random_game(n, rng), tugame.random_game(n, rng)
        phi = shapley(v)
        assert sum(phi) == v(v.grand)
        assert shapley(u + v) == tuple(a + b for a, b in zip(shapley(u), phi))
        for i in range(n):
            bi = 1 << i
            if all(v(s | bi) == v(s) for s in range(1 << n) if not s & bi):
                assert phi[i] == 0
            for j in range(i + 1, n):
                bj = 1 << j
                if all(v(s | bi) == v(s | bj) for s in range(1 << n) if not s & (bi | bj)):
                    assert phi[i] == phi[j]


def test_symmetry_and_null_player_constructed():
    # players 1 and 2 symmetric, player 3 null
    v = TuGame.from_function(3, lambda m: 4 * int(m & 3 == 3) + size(m & 3))
    phi = shapley(v)
    assert phi[0] == phi[1] and phi[2] == 0


def test_supermodular_games_have_core_points(rng):
    for _ in range(100):
        v = tugame.random_supermodular_game(rng.randint(1, 4), rng)
        assert is_supermodular(v) and is_superadditive(v)
        assert not core_is_empty(v)


def test_core_vertices_are_core_members(rng):
    checked = 0
    for _ in range(100):
        v = tugame.random_game(rng.randint(1, 4), rng)
        if core_is_empty(v):
            continue
        verts = core_vertices(v)
        assert verts and all(core_membership(x, v) for x in verts)
        checked += 1
    assert checked > 10

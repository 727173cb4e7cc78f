import os
import random
import zlib
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from intervalgames import exactgeom, solution, tugame
from intervalgames.intervals import Interval
from intervalgames.intgame import IntervalGame

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("fast", max_examples=20, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

BASE_SEED = int(os.environ.get("INTERVALGAMES_SEED", "20261014"))


def make_rng(label: str) -> random.Random:
    seed = BASE_SEED ^ zlib.crc32(label.encode())
    print(f"[seed] {label}: {seed}")
    return random.Random(seed)


@pytest.fixture
def rng(request):
    """Per-test generator whose seed is printed, so failures replay exactly."""
    return make_rng(request.node.nodeid)


def ex3() -> IntervalGame:
    # coalition order by mask: 1, 2, 12, 3, 13, 23, 123
    return IntervalGame.from_list(
        3,
        [(0, 2), ("1/2", "3/2"), (2, 3), (1, 2), (3, 4), (4, 4), (6, 7)],
    )


def two_player() -> IntervalGame:
    """w(1) = w(2) = [0, 1], w(12) = [4, 6]."""
    return IntervalGame.from_list(2, [(0, 1), (0, 1), (4, 6)])


@pytest.fixture
def EX3():
    return ex3()


@pytest.fixture
def TWO():
    return two_player()


def F(*xs):
    return tuple(Fraction(x) for x in xs)


def sample_payoff(w: IntervalGame, rng: random.Random):
    """A payoff vector that is often but not always in the selection core."""
    kind = rng.randrange(4)
    if kind == 0 or solution.selection_core_is_empty(w):
        return [Fraction(rng.randint(-4, 16), 2) for _ in range(w.n)]
    verts = solution.selection_core_vertices(w)
    a = rng.choice(verts)
    if kind == 1:
        return list(a)
    if kind == 2:
        b = rng.choice(verts)
        t = Fraction(rng.randint(0, 4), 4)
        return [t * p + (1 - t) * q for p, q in zip(a, b)]
    x = list(a)
    x[rng.randrange(w.n)] += Fraction(rng.choice((-1, 1)), 2)
    return x


def random_bounded_system(rng: random.Random, d: int) -> exactgeom.ConstraintSystem:
    """Random bounded system: a box plus random cuts, sometimes an equality."""
    sys = exactgeom.ConstraintSystem(d)
    for i in range(d):
        e = [int(j == i) for j in range(d)]
        sys.ge(e, -rng.randint(0, 3))
        sys.ge([-c for c in e], -rng.randint(0, 3))
    for _ in range(rng.randint(0, 5)):
        sys.ge([rng.randint(-2, 2) for _ in range(d)], rng.randint(-3, 2))
    if d > 1 and rng.random() < 0.3:
        sys.eq([rng.randint(-1, 2) for _ in range(d)], rng.randint(-1, 1))
    return sys


def near_secig(n, rng):
    """Strictly supermodular base with widths up to 2, straddling the selection-convex boundary."""
    base = tugame.random_supermodular_game(n, rng, strict=True)
    widths = [Fraction(0)] + [Fraction(rng.randint(0, 4), 2) for _ in range(1, 1 << n)]
    return IntervalGame(n, tuple(Interval(v, v + d) for v, d in zip(base.values, widths)))


def random_interval(rng, lo=-2, hi=6, degenerate=False):
    a = Fraction(rng.randint(2 * lo, 2 * hi), 2)
    return Interval(a, a + (0 if degenerate else Fraction(rng.randint(0, 6), 2)))


def with_null_player(rng, n, player, total=False):
    """Random game on n players in which ``player`` is null (total null: all worths degenerate)."""
    bit = 1 << (player - 1)
    table = {}
    for s in range(1, 1 << n):
        key = s & ~bit
        if key and key not in table:
            table[key] = random_interval(rng, degenerate=total)
    return IntervalGame.from_function(n, lambda s: table[s & ~bit] if s & ~bit else Interval(0))


def with_symmetric_pair(rng, n, i, j):
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    table = {}

    def value(s):
        key = (s & ~(bi | bj), bool(s & bi) + bool(s & bj))
        if key not in table:
            table[key] = random_interval(rng)
        return table[key]

    return IntervalGame.from_function(n, value)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def intervals(draw):
    a = draw(rationals)
    return Interval(a, a + draw(st.fractions(min_value=0, max_value=10, max_denominator=12)))


@st.composite
def interval_games(draw, n=st.integers(1, 3)):
    k = draw(n)
    return IntervalGame.from_list(k, [draw(intervals()) for _ in range(1, 1 << k)])


# acceptance criterion -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")

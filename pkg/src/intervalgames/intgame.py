"""Interval-valued cooperative games, their derived classical games, and
class membership tests.

Selection-based classes are decided in closed form from endpoint
inequalities.  Each such inequality involves four (or three) distinct
coalitions, so its worst case over all selections is attained at a corner
selection that takes the adverse endpoint at each of them independently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import tugame
from .errors import BudgetExceeded, InvalidParameter, PlayerCountMismatch
from .intervals import Interval, to_rational
from .tugame import TuGame, grand, size, subsets

CORNER_BUDGET = 20


@dataclass(frozen=True)
class IntervalGame:
    n: int
    values: tuple[Interval, ...]

    def __post_init__(self):
        tugame._check_n(self.n)
        vals = tuple(v if isinstance(v, Interval) else Interval(*v) for v in self.values)
        if len(vals) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} coalition values, got {len(vals)}")
        if vals[0] != Interval(0, 0):
            raise ValueError("the empty coalition must have worth [0, 0]")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_list(cls, n: int, nonempty: Sequence) -> IntervalGame:
        """Intervals (or ``(lo, hi)`` pairs) for masks ``1 .. 2**n - 1`` in mask order."""
        return cls(n, (Interval(0, 0), *nonempty))

    @classmethod
    def from_function(cls, n: int, f: Callable[[int], object]) -> IntervalGame:
        tugame._check_n(n)
        return cls.from_list(n, [f(m) for m in range(1, 1 << n)])

    @classmethod
    def from_tu(cls, v: TuGame) -> IntervalGame:
        return cls(v.n, tuple(Interval.point(x) for x in v.values))

    @classmethod
    def from_borders(cls, lower: TuGame, upper: TuGame) -> IntervalGame:
        if lower.n != upper.n:
            raise PlayerCountMismatch(lower.n, upper.n)
        return cls(lower.n, tuple(Interval(a, b) for a, b in zip(lower.values, upper.values)))

    @property
    def grand(self) -> int:
        return grand(self.n)

    def __call__(self, mask: int) -> Interval:
        return self.values[mask]

    def lo(self, mask: int) -> Fraction:
        return self.values[mask].lo

    def hi(self, mask: int) -> Fraction:
        return self.values[mask].hi

    def __add__(self, other: IntervalGame) -> IntervalGame:
        if not isinstance(other, IntervalGame):
            return NotImplemented
        if other.n != self.n:
            raise PlayerCountMismatch(self.n, other.n)
        return IntervalGame(self.n, tuple(a + b for a, b in zip(self.values, other.values)))


# -- derived games -------------------------------------------------------------


def border_games(w: IntervalGame) -> tuple[TuGame, TuGame]:
    return (
        TuGame(w.n, tuple(x.lo for x in w.values)),
        TuGame(w.n, tuple(x.hi for x in w.values)),
    )


def length_game(w: IntervalGame) -> TuGame:
    return TuGame(w.n, tuple(x.length for x in w.values))


def is_degenerate(w: IntervalGame) -> bool:
    return all(x.is_degenerate for x in w.values)


def is_selection(v: TuGame, w: IntervalGame) -> bool:
    if v.n != w.n:
        raise PlayerCountMismatch(v.n, w.n)
    return all(x.lo <= y <= x.hi for x, y in zip(w.values, v.values))


def corner_selections(w: IntervalGame) -> Iterator[TuGame]:
    """Every selection taking an endpoint at each coalition, once each.

    Order: binary counting over the non-degenerate coalitions in mask order,
    bit set meaning the upper endpoint.
    """
    free = [m for m in range(1, 1 << w.n) if not w(m).is_degenerate]
    if len(free) > CORNER_BUDGET:
        raise BudgetExceeded(f"{len(free)} non-degenerate coalitions exceed the corner budget {CORNER_BUDGET}")
    base = [x.lo for x in w.values]
    for k in range(1 << len(free)):
        vals = list(base)
        for j, m in enumerate(free):
            if k >> j & 1:
                vals[m] = w.hi(m)
        yield TuGame(w.n, tuple(vals))


def extremal_selection(w: IntervalGame, player: int, direction: str) -> TuGame:
    """Selection attaining the ``min``/``max`` end of the interval Shapley value of ``player``."""
    if direction not in ("min", "max"):
        raise InvalidParameter(f"direction must be 'min' or 'max', got {direction!r}")
    bit = 1 << (player - 1)
    vals = []
    for m, x in enumerate(w.values):
        with_player = bool(m & bit)
        take_low = with_player if direction == "min" else not with_player
        vals.append(x.lo if take_low else x.hi)
    return TuGame(w.n, tuple(vals))


def random_selection(w: IntervalGame, rng: random.Random, resolution: int = 1000) -> TuGame:
    vals = [Fraction(0)]
    for x in w.values[1:]:
        vals.append(x.lo + x.length * Fraction(rng.randint(0, resolution), resolution))
    return TuGame(w.n, tuple(vals))


# -- selection-class conditions ------------------------------------------------


def _incomparable(s: int, t: int) -> bool:
    return s & t != s and s & t != t


def convexity_pairs_violation(w: IntervalGame) -> tuple[int, int] | None:
    N = 1 << w.n
    for s in range(1, N):
        for t in range(s + 1, N):
            if _incomparable(s, t) and w.hi(s) + w.hi(t) > w.lo(s | t) + w.lo(s & t):
                return s, t
    return None


def convexity_union_violation(w: IntervalGame, singleton: bool = False) -> tuple[int, int, int] | None:
    """First ``(U1, U2, U)`` with ``U1 ⊊ U2 ⊆ N \\ U`` breaking increasing marginals."""
    full = grand(w.n)
    for u in range(1, full + 1):
        if singleton and size(u) != 1:
            continue
        rest = full & ~u
        for u2 in subsets(rest):
            for u1 in subsets(u2):
                if u1 == u2:
                    continue
                if w.hi(u1 | u) - w.lo(u1) > w.lo(u2 | u) - w.hi(u2):
                    return u1, u2, u
    return None


def selection_convex_condition(w: IntervalGame, variant: str = "pairs") -> bool:
    if variant == "pairs":
        return convexity_pairs_violation(w) is None
    if variant == "union":
        return convexity_union_violation(w) is None
    if variant == "singleton":
        return convexity_union_violation(w, singleton=True) is None
    raise InvalidParameter(f"unknown variant {variant!r}")


def selection_monotonic_violation(w: IntervalGame) -> tuple[int, int] | None:
    for s in range(1, 1 << w.n):
        for t in subsets(s):
            if t != s and w.hi(t) > w.lo(s):
                return t, s
    return None


def selection_superadditive_violation(w: IntervalGame) -> tuple[int, int] | None:
    N = 1 << w.n
    for s in range(1, N):
        for t in range(s + 1, N):
            if s & t == 0 and w.hi(s) + w.hi(t) > w.lo(s | t):
                return s, t
    return None


def worst_selection(w: IntervalGame) -> TuGame:
    """Upper endpoints on proper coalitions, lower on N: the hardest core to be nonempty."""
    vals = [x.hi for x in w.values]
    vals[w.grand] = w.lo(w.grand)
    return TuGame(w.n, tuple(vals))


def best_selection(w: IntervalGame) -> TuGame:
    vals = [x.lo for x in w.values]
    vals[w.grand] = w.hi(w.grand)
    return TuGame(w.n, tuple(vals))


# -- classification ------------------------------------------------------------

FLAGS = (
    "degenerate",
    "size_monotonic",
    "supermodular_interval",
    "convex_interval",
    "selection_monotonic",
    "selection_convex",
    "selection_superadditive",
    "superadditive_interval",
    "strongly_balanced",
    "nonempty_selection_core",
)


@dataclass(frozen=True)
class ClassReport:
    degenerate: bool
    size_monotonic: bool
    supermodular_interval: bool
    convex_interval: bool
    selection_monotonic: bool
    selection_convex: bool
    selection_superadditive: bool
    superadditive_interval: bool
    strongly_balanced: bool
    nonempty_selection_core: bool
    # flag name -> witness for every false flag; a witness is a dict whose
    # coalition entries are bitmasks
    witnesses: dict = field(default_factory=dict, compare=False)

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in FLAGS}


def classify(w: IntervalGame) -> ClassReport:
    lower, upper = border_games(w)
    lengths = length_game(w)
    flags: dict[str, bool] = {}
    witnesses: dict[str, dict] = {}

    def record(name: str, witness: dict | None) -> None:
        flags[name] = witness is None
        if witness is not None:
            witnesses[name] = witness

    nondeg = next((m for m in range(1, 1 << w.n) if not w(m).is_degenerate), None)
    record("degenerate", None if nondeg is None else {"coalition": nondeg})

    pair = tugame.monotonic_violation(lengths)
    record("size_monotonic", None if pair is None else {"game": "length", "pair": pair})

    def supermodular_witness(games):
        for name, g in games:
            pair = tugame.supermodular_violation(g)
            if pair is not None:
                return {"game": name, "pair": pair}
        return None

    borders = [("lower", lower), ("upper", upper)]
    record("supermodular_interval", supermodular_witness(borders))
    record("convex_interval", supermodular_witness(borders + [("length", lengths)]))

    pair = selection_monotonic_violation(w)
    record("selection_monotonic", None if pair is None else {"pair": pair})
    pair = convexity_pairs_violation(w)
    record("selection_convex", None if pair is None else {"pair": pair})
    pair = selection_superadditive_violation(w)
    record("selection_superadditive", None if pair is None else {"pair": pair})

    witness = None
    for name, g in borders:
        pair = tugame.superadditive_violation(g)
        if pair is not None:
            witness = {"game": name, "pair": pair}
            break
    record("superadditive_interval", witness)

    worst = worst_selection(w)
    record("strongly_balanced", {"selection": worst} if tugame.core_is_empty(worst) else None)
    best = best_selection(w)
    record("nonempty_selection_core", {"selection": best} if tugame.core_is_empty(best) else None)

    return ClassReport(**flags, witnesses=witnesses)


# -- generators ----------------------------------------------------------------


def gen_wa_game(n: int, b) -> IntervalGame:
    """Point intervals ``1/|S|`` off the grand coalition and ``[n, n + b]`` on it."""
    b = to_rational(b)
    if b <= 0:
        raise InvalidParameter(f"b must be positive, got {b}")
    full = grand(n)

    def worth(m: int):
        if m == full:
            return Interval(n, n + b)
        return Interval.point(Fraction(1, size(m)))

    return IntervalGame.from_function(n, worth)


def random_interval_game(
    n: int,
    rng: random.Random,
    lo: int = -2,
    hi: int = 6,
    max_width: int = 3,
    degenerate_prob: float = 0.2,
    denom: int = 2,
) -> IntervalGame:
    """Small half-integer endpoints so that equality boundaries are hit often."""

    def worth(_m: int) -> Interval:
        a = Fraction(rng.randint(lo * denom, hi * denom), denom)
        if rng.random() < degenerate_prob:
            return Interval.point(a)
        return Interval(a, a + Fraction(rng.randint(0, max_width * denom), denom))

    return IntervalGame.from_function(n, worth)


def random_secig_game(n: int, rng: random.Random) -> IntervalGame:
    """Selection convex game with every nonempty coalition non-degenerate.

    The lower game has a gap of at least 2 on incomparable pairs, so widths
    in (0, 1) keep every selection supermodular.
    """
    base = tugame.random_supermodular_game(n, rng, strict=True)
    widths = [Fraction(0)] + [Fraction(rng.randint(1, 7), 8) for _ in range(1, 1 << n)]
    return IntervalGame(n, tuple(Interval(v, v + d) for v, d in zip(base.values, widths)))


def random_cig_game(n: int, rng: random.Random) -> IntervalGame:
    """Convex interval game: convex lower game plus a convex, positive length game."""
    lower = tugame.random_supermodular_game(n, rng)
    c = Fraction(rng.randint(1, 3), 2)
    a = [Fraction(rng.randint(0, 3), 2) for _ in range(n)]
    lengths = TuGame.from_function(n, lambda m: c * size(m) ** 2 + tugame.payoff_sum(a, m))
    return IntervalGame.from_borders(lower, lower + lengths)

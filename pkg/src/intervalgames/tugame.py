"""Classical transferable-utility games.

Coalitions are bitmasks: player ``i`` (1-based) is bit ``i - 1``.  Every
iteration over coalitions runs in increasing mask order, so witnesses and
reports are deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Iterator, Sequence

from . import exactgeom
from .errors import EmptyPolytope, InvalidParameter, PlayerCountMismatch
from .intervals import to_rational

MAX_PLAYERS = 16

PayoffVector = tuple[Fraction, ...]


# -- coalition helpers -------------------------------------------------------


def grand(n: int) -> int:
    return (1 << n) - 1


def members(mask: int) -> tuple[int, ...]:
    """1-based players in ``mask``, increasing."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def coalition(players: Iterable[int]) -> int:
    mask = 0
    for p in players:
        mask |= 1 << (p - 1)
    return mask


def size(mask: int) -> int:
    return mask.bit_count()


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` (including 0 and ``mask``) in increasing order."""
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    out = []
    for k in range(1 << len(bits)):
        s = 0
        for j, b in enumerate(bits):
            if k >> j & 1:
                s |= b
        out.append(s)
    return iter(sorted(out))


def shapley_weight(s: int, n: int) -> Fraction:
    """``|S|!(n-|S|-1)!/n!`` for a coalition of size ``s`` not containing the player."""
    return Fraction(factorial(s) * factorial(n - s - 1), factorial(n))


def payoff_sum(x: Sequence[Fraction], mask: int) -> Fraction:
    total = Fraction(0)
    i = 0
    while mask:
        if mask & 1:
            total += x[i]
        mask >>= 1
        i += 1
    return total


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_PLAYERS:
        raise InvalidParameter(f"player count must be in 1..{MAX_PLAYERS}, got {n}")


# -- the game ----------------------------------------------------------------


@dataclass(frozen=True)
class TuGame:
    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        _check_n(self.n)
        vals = tuple(to_rational(v) for v in self.values)
        if len(vals) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} coalition values, got {len(vals)}")
        if vals[0] != 0:
            raise ValueError("the empty coalition must have worth 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, n: int, f: Callable[[int], object]) -> TuGame:
        _check_n(n)
        return cls(n, tuple([Fraction(0)] + [to_rational(f(m)) for m in range(1, 1 << n)]))

    @classmethod
    def from_list(cls, n: int, nonempty: Sequence) -> TuGame:
        """Values for masks ``1 .. 2**n - 1`` in mask order."""
        return cls(n, (0, *nonempty))

    @property
    def grand(self) -> int:
        return grand(self.n)

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    def __add__(self, other: TuGame) -> TuGame:
        if not isinstance(other, TuGame):
            return NotImplemented
        if other.n != self.n:
            raise PlayerCountMismatch(self.n, other.n)
        return TuGame(self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def replace(self, mask: int, value) -> TuGame:
        vals = list(self.values)
        vals[mask] = to_rational(value)
        return TuGame(self.n, tuple(vals))


def additive_game(weights: Sequence) -> TuGame:
    a = [to_rational(w) for w in weights]
    return TuGame.from_function(len(a), lambda m: payoff_sum(a, m))


# -- class predicates --------------------------------------------------------


def monotonic_violation(v: TuGame) -> tuple[int, int] | None:
    """First pair ``(T, S)`` with ``T ⊆ S`` and ``v(T) > v(S)``."""
    for s in range(1 << v.n):
        for t in subsets(s):
            if v(t) > v(s):
                return t, s
    return None


def is_monotonic(v: TuGame) -> bool:
    return monotonic_violation(v) is None


def supermodular_violation(v: TuGame) -> tuple[int, int] | None:
    """Lexicographically first unordered pair ``(S, T)``, ``S < T``, breaking supermodularity."""
    N = 1 << v.n
    for s in range(N):
        for t in range(s + 1, N):
            if v(s) + v(t) > v(s | t) + v(s & t):
                return s, t
    return None


def is_supermodular(v: TuGame) -> bool:
    return supermodular_violation(v) is None


def superadditive_violation(v: TuGame) -> tuple[int, int] | None:
    N = 1 << v.n
    for s in range(1, N):
        for t in range(s + 1, N):
            if s & t == 0 and v(s) + v(t) > v(s | t):
                return s, t
    return None


def is_superadditive(v: TuGame) -> bool:
    return superadditive_violation(v) is None


# -- solution concepts -------------------------------------------------------


def shapley(v: TuGame) -> PayoffVector:
    n = v.n
    weights = [shapley_weight(s, n) for s in range(n)]
    phi = []
    for i in range(n):
        bit = 1 << i
        total = Fraction(0)
        for s in range(1 << n):
            if not s & bit:
                total += weights[size(s)] * (v(s | bit) - v(s))
        phi.append(total)
    return tuple(phi)


def excess(x: Sequence, mask: int, v: TuGame) -> Fraction:
    return payoff_sum([to_rational(a) for a in x], mask) - v(mask)


def core_membership(x: Sequence, v: TuGame) -> bool:
    x = [to_rational(a) for a in x]
    if len(x) != v.n:
        raise PlayerCountMismatch(len(x), v.n)
    if payoff_sum(x, v.grand) != v(v.grand):
        return False
    return all(payoff_sum(x, s) >= v(s) for s in range(1, 1 << v.n))


def core_system(v: TuGame) -> exactgeom.ConstraintSystem:
    n = v.n
    sys = exactgeom.ConstraintSystem(n)
    for s in range(1, grand(n)):
        sys.ge([int(s >> i & 1) for i in range(n)], v(s))
    sys.eq([1] * n, v(grand(n)))
    return sys


def core_point(v: TuGame) -> PayoffVector | None:
    """Some core element, or None when the core is empty."""
    ok, point = exactgeom.feasible(core_system(v))
    return point if ok else None


def core_is_empty(v: TuGame) -> bool:
    return core_point(v) is None


def core_vertices(v: TuGame) -> list[PayoffVector]:
    """Vertices of the core.  Raises EmptyPolytope if the core is empty."""
    try:
        return exactgeom.vertices(core_system(v))
    except EmptyPolytope:
        raise EmptyPolytope("the core is empty") from None


# -- random generators (tests and scripts) ------------------------------------


def random_game(n: int, rng: random.Random, lo: int = -3, hi: int = 6, denom: int = 2) -> TuGame:
    return TuGame.from_function(n, lambda m: Fraction(rng.randint(lo * denom, hi * denom), denom))


def random_supermodular_game(n: int, rng: random.Random, strict: bool = False) -> TuGame:
    """Additive part plus a convex function of coalition size plus a nonnegative
    weighted sum of unanimity games; each term is supermodular.

    With ``strict`` the size term is ``|S|**2``-based, giving a gap of at least 2
    on every incomparable pair.
    """
    a = [Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(n)]
    c = Fraction(rng.randint(1 if strict else 0, 3))
    unanimity = {rng.randint(1, grand(n)): Fraction(rng.randint(0, 4), 2) for _ in range(rng.randint(0, 3))}

    def worth(m: int) -> Fraction:
        total = payoff_sum(a, m) + c * size(m) ** 2
        for t, lam in unanimity.items():
            if m & t == t:
                total += lam
        return total

    return TuGame.from_function(n, worth)

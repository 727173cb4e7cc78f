"""Brute-force reference implementations.

None of these touch the simplex code in :mod:`exactgeom`; they exist to
cross-check the main modules.

Corner selections are enumerated in blocks as integer arrays: every worth is
multiplied by the common denominator of the game, so the comparisons stay
exact.  Games whose scaled worths could overflow 64 bits fall back to
enumerating :class:`TuGame` objects one at a time.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial, lcm
from typing import Iterator

import numpy as np

from . import tugame
from .errors import BudgetExceeded, InvalidParameter
from .exactgeom import solve_square
from .intgame import CORNER_BUDGET, IntervalGame, corner_selections, random_selection
from .tugame import TuGame, grand, payoff_sum

PERMUTATION_MAX_PLAYERS = 8
BALANCED_MAX_PLAYERS = 4

# corner selections per block of the integer table
CORNER_BLOCK = 1 << 13
# scaled worths must stay below this so sums of a few of them fit in int64
_INT_LIMIT = 1 << 58


def shapley_by_permutations(v: TuGame) -> tuple[Fraction, ...]:
    """Average marginal contribution over all ``n!`` orders of arrival."""
    n = v.n
    if n > PERMUTATION_MAX_PLAYERS:
        raise BudgetExceeded(f"{n}! orders exceed the permutation budget")
    totals = [Fraction(0)] * n
    for order in permutations(range(n)):
        coalition = 0
        for i in order:
            totals[i] += v(coalition | 1 << i) - v(coalition)
            coalition |= 1 << i
    count = factorial(n)
    return tuple(t / count for t in totals)


@lru_cache(maxsize=None)
def minimal_balanced_collections(n: int) -> tuple[tuple[tuple[int, ...], tuple[Fraction, ...]], ...]:
    """All minimal balanced collections of proper nonempty coalitions with their weights.

    A collection is minimal balanced iff its incidence vectors are linearly
    independent and the balancing weights are strictly positive, so only
    collections of at most ``n`` coalitions need be tried.
    """
    proper = list(range(1, grand(n)))
    out = []
    for k in range(1, n + 1):
        for coll in combinations(proper, k):
            # n equations (one per player) in k unknowns; solve through the
            # normal equations, then confirm the solution is exact
            a = [[Fraction(s >> i & 1) for s in coll] for i in range(n)]
            ata = [[sum(a[r][p] * a[r][q] for r in range(n)) for q in range(k)] for p in range(k)]
            atb = [sum(a[r][p] for r in range(n)) for p in range(k)]
            lam = solve_square(ata, atb)
            if lam is None or any(x <= 0 for x in lam):
                continue
            if all(sum(a[r][p] * lam[p] for p in range(k)) == 1 for r in range(n)):
                out.append((coll, tuple(lam)))
    return tuple(out)


def core_empty_by_balanced_collections(v: TuGame) -> bool:
    """Bondareva–Shapley: the core is empty iff some balanced collection overpays ``v(N)``."""
    if v.n > BALANCED_MAX_PLAYERS:
        raise BudgetExceeded(f"balanced-collection oracle supports n <= {BALANCED_MAX_PLAYERS}")
    if v.n == 1:
        return False
    target = v(v.grand)
    for coll, lam in minimal_balanced_collections(v.n):
        if sum(l * v(s) for s, l in zip(coll, lam)) > target:
            return True
    return False


PROPERTIES = ("monotonic", "supermodular", "superadditive", "nonempty_core")


def _has_property(v: TuGame, prop: str) -> bool:
    if prop == "monotonic":
        return tugame.is_monotonic(v)
    if prop == "supermodular":
        return tugame.is_supermodular(v)
    if prop == "superadditive":
        return tugame.is_superadditive(v)
    if prop == "nonempty_core":
        return not core_empty_by_balanced_collections(v)
    raise InvalidParameter(f"unknown property {prop!r}")


def _corner_blocks(w: IntervalGame, extra=()) -> tuple[int, Iterator[np.ndarray]] | None:
    """``(scale, blocks)``: ``scale * v(S)`` for every corner selection ``v``, a block of rows at a time.

    Each row is indexed by coalition mask.  The scale also clears the
    denominators of ``extra``.  None when the scaled worths are too large for
    exact int64 arithmetic.
    """
    free = [m for m in range(1, 1 << w.n) if not w(m).is_degenerate]
    if len(free) > CORNER_BUDGET:
        raise BudgetExceeded(f"{len(free)} non-degenerate coalitions exceed the corner budget {CORNER_BUDGET}")
    scale = lcm(*(q.denominator for x in w.values for q in (x.lo, x.hi)), *(q.denominator for q in extra))
    lo = [int(x.lo * scale) for x in w.values]
    hi = [int(x.hi * scale) for x in w.values]
    if max(map(abs, lo + hi)) >= _INT_LIMIT:
        return None
    lo_arr = np.array(lo, dtype=np.int64)
    width = np.array([hi[m] - lo[m] for m in free], dtype=np.int64)
    shifts = np.arange(len(free), dtype=np.int64)

    def blocks():
        total = 1 << len(free)
        for start in range(0, total, CORNER_BLOCK):
            ks = np.arange(start, min(start + CORNER_BLOCK, total), dtype=np.int64)
            bits = (ks[:, None] >> shifts) & 1
            table = np.tile(lo_arr, (len(ks), 1))
            table[:, free] += bits * width
            yield table

    return scale, blocks()


def _block_has_property(t: np.ndarray, n: int, prop: str) -> bool:
    """Does every row of the integer table ``t`` have ``prop``?"""
    full = grand(n)
    if prop == "monotonic":
        return all((t[:, s & ~(1 << i)] <= t[:, s]).all() for s in range(1, full + 1) for i in range(n) if s >> i & 1)
    if prop == "supermodular":
        return all(
            (t[:, s] + t[:, u] <= t[:, s | u] + t[:, s & u]).all()
            for s in range(1, full + 1)
            for u in range(s + 1, full + 1)
            if s & u not in (s, u)
        )
    if prop == "superadditive":
        return all(
            (t[:, s] + t[:, u] <= t[:, s | u]).all()
            for s in range(1, full + 1)
            for u in range(s + 1, full + 1)
            if not s & u
        )
    if prop == "nonempty_core":
        if n > BALANCED_MAX_PLAYERS:
            raise BudgetExceeded(f"balanced-collection oracle supports n <= {BALANCED_MAX_PLAYERS}")
        for coll, lam in minimal_balanced_collections(n):
            d = lcm(*(l.denominator for l in lam))
            lhs = sum(int(l * d) * t[:, s] for s, l in zip(coll, lam))
            if (lhs > d * t[:, full]).any():
                return False
        return True
    raise InvalidParameter(f"unknown property {prop!r}")


def selection_property_by_enumeration(
    w: IntervalGame, prop: str, interior_samples: int = 0, seed: int = 0
) -> bool:
    """Does ``prop`` hold for every corner selection and some random interior ones?"""
    if prop not in PROPERTIES:
        raise InvalidParameter(f"unknown property {prop!r}")
    table = _corner_blocks(w)
    if table is None:
        corners_ok = all(_has_property(v, prop) for v in corner_selections(w))
    else:
        corners_ok = all(_block_has_property(t, w.n, prop) for t in table[1])
    if not corners_ok:
        return False
    rng = random.Random(seed)
    return all(_has_property(random_selection(w, rng), prop) for _ in range(interior_samples))


def any_selection_core_contains(
    x, w: IntervalGame, interior_samples: int = 0, seed: int = 0
) -> bool:
    """Is ``x`` in the classical core of some corner (or sampled) selection, with ``v(N)`` set to ``x(N)``?"""
    x = [Fraction(a) for a in x]
    full = w.grand
    total = payoff_sum(x, full)
    if total not in w(full):
        return False

    def contains(v: TuGame) -> bool:
        return all(payoff_sum(x, s) >= v(s) for s in range(1, full))

    table = _corner_blocks(w, extra=x)
    sums = None
    if table is not None:
        scale, blocks = table
        scaled = [payoff_sum(x, s) * scale for s in range(1, full)]
        if all(abs(q) < _INT_LIMIT for q in scaled):
            sums = np.array([int(q) for q in scaled], dtype=np.int64)
    if sums is not None:
        if any((t[:, 1:full] <= sums).all(axis=1).any() for t in blocks):
            return True
    elif any(contains(v) for v in corner_selections(w)):
        return True
    rng = random.Random(seed)
    return any(contains(random_selection(w, rng)) for _ in range(interior_samples))

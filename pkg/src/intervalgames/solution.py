"""Selection and interval imputations/cores, the ``gen`` projection of the
interval core, and a decision procedure for core coincidence.

``gen(C(w))`` is the set of real vectors ``x`` that sit componentwise inside
some interval-core element.  Writing such an element as
``[x_i - l_i, x_i + u_i]`` turns membership into a linear feasibility
problem in ``(l, u)``; :func:`gen_membership` solves that one, while
:func:`gen_membership_by_containment` searches for the interval-core element
directly, as two independent classical-core problems.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exactgeom, tugame
from .errors import BudgetExceeded, EmptyPolytope, PlayerCountMismatch
from .intervals import Interval, interval_sum, to_rational, weakly_better
from .intgame import IntervalGame, best_selection, border_games, is_degenerate
from .tugame import PayoffVector, payoff_sum

IntervalVector = tuple[Interval, ...]

# selection-core vertices are enumerated only up to this many players
SC_VERTEX_MAX_PLAYERS = exactgeom.VERTEX_MAX_VARS


def _vector(x: Sequence, n: int) -> list[Fraction]:
    x = [to_rational(a) for a in x]
    if len(x) != n:
        raise PlayerCountMismatch(len(x), n)
    return x


def _indicator(mask: int, n: int) -> list[int]:
    return [mask >> i & 1 for i in range(n)]


def selection_imputation_membership(x: Sequence, w: IntervalGame) -> bool:
    x = _vector(x, w.n)
    total = sum(x, Fraction(0))
    if not w.lo(w.grand) <= total <= w.hi(w.grand):
        return False
    return all(x[i] >= w.lo(1 << i) for i in range(w.n))


def selection_core_membership(x: Sequence, w: IntervalGame) -> bool:
    x = _vector(x, w.n)
    total = sum(x, Fraction(0))
    if not w.lo(w.grand) <= total <= w.hi(w.grand):
        return False
    return all(payoff_sum(x, s) >= w.lo(s) for s in range(1, w.grand))


def interval_imputation_membership(iv: Sequence[Interval], w: IntervalGame) -> bool:
    if len(iv) != w.n:
        raise PlayerCountMismatch(len(iv), w.n)
    if interval_sum(iv) != w(w.grand):
        return False
    return all(weakly_better(iv[i], w(1 << i)) for i in range(w.n))


def interval_core_membership(iv: Sequence[Interval], w: IntervalGame) -> bool:
    if not interval_imputation_membership(iv, w):
        return False
    for s in range(1, 1 << w.n):
        part = interval_sum(iv[i] for i in range(w.n) if s >> i & 1)
        if not weakly_better(part, w(s)):
            return False
    return True


# -- gen(C(w)) -----------------------------------------------------------------


@dataclass(frozen=True)
class GenCertificate:
    """Nonnegative shifts ``l``, ``u`` such that ``[x_i - l_i, x_i + u_i]`` is in the interval core."""

    l: tuple[Fraction, ...]
    u: tuple[Fraction, ...]

    def interval_vector(self, x: Sequence) -> IntervalVector:
        return tuple(Interval(to_rational(xi) - li, to_rational(xi) + ui) for xi, li, ui in zip(x, self.l, self.u))


def certificate_holds(x: Sequence, w: IntervalGame, cert: GenCertificate) -> bool:
    """Check the four defining conditions of a certificate exactly."""
    x = _vector(x, w.n)
    if len(cert.l) != w.n or len(cert.u) != w.n:
        return False
    if any(v < 0 for v in cert.l) or any(v < 0 for v in cert.u):
        return False
    full = w.grand
    if payoff_sum(x, full) - payoff_sum(cert.l, full) != w.lo(full):
        return False
    if payoff_sum(x, full) + payoff_sum(cert.u, full) != w.hi(full):
        return False
    for s in range(1, 1 << w.n):
        xs = payoff_sum(x, s)
        if xs - payoff_sum(cert.l, s) < w.lo(s) or xs + payoff_sum(cert.u, s) < w.hi(s):
            return False
    return True


def gen_system(x: Sequence, w: IntervalGame) -> exactgeom.ConstraintSystem:
    """Linear system in ``(l_1..l_n, u_1..u_n)``."""
    n = w.n
    x = _vector(x, n)
    zeros = [0] * n
    sys = exactgeom.ConstraintSystem(2 * n)
    full = w.grand
    xn = payoff_sum(x, full)
    sys.eq([-1] * n + zeros, w.lo(full) - xn)
    sys.eq(zeros + [1] * n, w.hi(full) - xn)
    for s in range(1, 1 << n):
        ind = _indicator(s, n)
        xs = payoff_sum(x, s)
        sys.ge([-a for a in ind] + zeros, w.lo(s) - xs)
        sys.ge(zeros + ind, w.hi(s) - xs)
    for i in range(2 * n):
        sys.ge([int(j == i) for j in range(2 * n)], 0)
    return sys


def gen_membership(x: Sequence, w: IntervalGame) -> tuple[bool, GenCertificate | None]:
    """Is ``x`` in ``gen(C(w))``?  Returns a re-verified certificate when it is."""
    x = _vector(x, w.n)
    ok, point = exactgeom.feasible(gen_system(x, w))
    if not ok:
        return False, None
    cert = GenCertificate(tuple(point[: w.n]), tuple(point[w.n :]))
    if not certificate_holds(x, w, cert):
        raise AssertionError("gen certificate failed re-verification")
    return True, cert


def gen_membership_by_containment(x: Sequence, w: IntervalGame) -> tuple[bool, IntervalVector | None]:
    """Search for an interval-core element containing ``x`` componentwise.

    The lower and upper endpoint vectors decouple: lower endpoints form a
    core element of the lower border game lying below ``x``, upper endpoints
    one of the upper border game lying above ``x``.
    """
    n = w.n
    x = _vector(x, n)
    lower, upper = border_games(w)
    ends = []
    for game, sign in ((lower, -1), (upper, 1)):
        sys = tugame.core_system(game)
        for i in range(n):
            # lower: y_i <= x_i ; upper: z_i >= x_i
            sys.ge([sign * int(j == i) for j in range(n)], sign * x[i])
        ok, point = exactgeom.feasible(sys)
        if not ok:
            return False, None
        ends.append(point)
    iv = tuple(Interval(a, b) for a, b in zip(*ends))
    if not interval_core_membership(iv, w):
        raise AssertionError("containment search produced a non-core interval vector")
    return True, iv


# -- the selection core as a polytope ----------------------------------------


def selection_core_system(w: IntervalGame) -> exactgeom.ConstraintSystem:
    n = w.n
    sys = exactgeom.ConstraintSystem(n)
    full = w.grand
    ones = [1] * n
    if w(full).is_degenerate:
        sys.eq(ones, w.lo(full))
    else:
        sys.ge(ones, w.lo(full))
        sys.ge([-1] * n, -w.hi(full))
    for s in range(1, full):
        sys.ge(_indicator(s, n), w.lo(s))
    return sys


def selection_core_is_empty(w: IntervalGame) -> bool:
    return not exactgeom.feasible(selection_core_system(w))[0]


def selection_core_vertices(w: IntervalGame) -> list[PayoffVector]:
    try:
        return exactgeom.vertices(selection_core_system(w))
    except EmptyPolytope:
        raise EmptyPolytope("the selection core is empty") from None


# -- core coincidence ------------------------------------------------------------


def thm_noncoincidence_test(w: IntervalGame) -> bool:
    """Both the best selection (lower values, upper grand worth) and the upper
    border game have nonempty cores.

    This is the hypothesis of a published sufficient condition for
    non-coincidence.  It is reported alongside, never instead of, the exact
    vertex check: it also holds on some coincident games.
    """
    _, upper = border_games(w)
    return not tugame.core_is_empty(best_selection(w)) and not tugame.core_is_empty(upper)


class Outcome(enum.Enum):
    COINCIDENT = "Coincident"
    NOT_COINCIDENT = "NotCoincident"
    UNKNOWN = "Unknown"


class Reason(enum.Enum):
    EMPTY_SC = "EmptySC"
    DEGENERATE = "Degenerate"
    VERTEX_INCLUSION = "VertexInclusion"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass(frozen=True)
class CoincidenceVerdict:
    outcome: Outcome
    reason: Reason
    witness: PayoffVector | None = None
    # result of thm_noncoincidence_test where it was evaluated (None: not run
    # or over budget)
    theorem_test: bool | None = None

    @property
    def theorem_test_disagrees(self) -> bool:
        """The published test says "not coincident" but the exact check says coincident."""
        return self.theorem_test is True and self.outcome is Outcome.COINCIDENT


def _theorem_test_or_none(w: IntervalGame) -> bool | None:
    try:
        return thm_noncoincidence_test(w)
    except BudgetExceeded:
        return None


def decide_core_coincidence(w: IntervalGame) -> CoincidenceVerdict:
    """Decide whether ``gen(C(w)) == SC(w)``.

    ``gen(C(w)) ⊆ SC(w)`` always holds and ``gen(C(w))`` is convex, so
    equality holds iff every vertex of the bounded polytope ``SC(w)`` lies in
    ``gen(C(w))``.  When several vertices fail, the lexicographically greatest
    is reported.
    """
    try:
        if selection_core_is_empty(w):
            return CoincidenceVerdict(Outcome.COINCIDENT, Reason.EMPTY_SC)
    except BudgetExceeded:
        pass
    if is_degenerate(w):
        return CoincidenceVerdict(Outcome.COINCIDENT, Reason.DEGENERATE)

    try:
        if w.n > SC_VERTEX_MAX_PLAYERS:
            raise BudgetExceeded(f"{w.n} players exceed the vertex budget")
        verts = selection_core_vertices(w)
        failing = [v for v in verts if not gen_membership(v, w)[0]]
    except BudgetExceeded:
        return CoincidenceVerdict(Outcome.UNKNOWN, Reason.BUDGET_EXCEEDED, theorem_test=_theorem_test_or_none(w))

    test = _theorem_test_or_none(w)
    if not failing:
        return CoincidenceVerdict(Outcome.COINCIDENT, Reason.VERTEX_INCLUSION, theorem_test=test)
    witness = failing[-1]
    if not selection_core_membership(witness, w) or gen_membership(witness, w)[0]:
        raise AssertionError(f"witness {witness} failed re-verification")
    return CoincidenceVerdict(Outcome.NOT_COINCIDENT, Reason.VERTEX_INCLUSION, witness=witness, theorem_test=test)

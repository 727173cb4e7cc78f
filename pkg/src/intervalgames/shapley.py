"""Interval Shapley values and an audit harness for value-function axioms."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import tugame
from .errors import PlayerCountMismatch
from .intervals import ZERO, Interval, indifferent, interval_sum, moore_sub
from .intgame import IntervalGame, extremal_selection, is_degenerate, random_selection
from .solution import IntervalVector
from .tugame import TuGame, shapley_weight, size

ValueFunction = Callable[[IntervalGame], IntervalVector]


def interval_shapley(w: IntervalGame) -> IntervalVector:
    n = w.n
    weights = [shapley_weight(s, n) for s in range(n)]
    out = []
    for i in range(n):
        bit = 1 << i
        lo = hi = Fraction(0)
        for s in range(1 << n):
            if s & bit:
                continue
            d = moore_sub(w(s | bit), w(s))
            lo += weights[size(s)] * d.lo
            hi += weights[size(s)] * d.hi
        out.append(Interval(lo, hi))
    return tuple(out)


def midpoint_game(w: IntervalGame) -> TuGame:
    return TuGame(w.n, tuple(x.midpoint for x in w.values))


def improved_shapley(w: IntervalGame) -> IntervalVector:
    """Efficiency-corrected interval value centred on the midpoint game's Shapley value.

    Player ``i`` gets half-width ``r_i * |w(N)| / 2`` where ``r_i`` is its share
    of the total width of the interval Shapley value.  Games where the
    interval Shapley value is already efficient get it back unchanged.
    """
    phi_star = interval_shapley(w)
    top = w(w.grand)
    if interval_sum(phi_star) == top:
        return phi_star
    centers = tugame.shapley(midpoint_game(w))
    total_width = sum((x.length for x in phi_star), Fraction(0))
    out = []
    for c, x in zip(centers, phi_star):
        radius = x.length / total_width * top.length / 2
        out.append(Interval(c - radius, c + radius))
    return tuple(out)


def shapley_selection_range_check(
    w: IntervalGame,
    samples: int = 100,
    value: ValueFunction = interval_shapley,
    seed: int = 0,
) -> bool:
    """Does ``value(w)`` match the range of Shapley values over selections?

    Endpoint attainment is checked exactly via the extremal selections;
    containment via ``samples`` seeded random selections.
    """
    ranges = value(w)
    for p in range(1, w.n + 1):
        lo = tugame.shapley(extremal_selection(w, p, "min"))[p - 1]
        hi = tugame.shapley(extremal_selection(w, p, "max"))[p - 1]
        if lo != ranges[p - 1].lo or hi != ranges[p - 1].hi:
            return False
    rng = random.Random(seed)
    for _ in range(samples):
        phi = tugame.shapley(random_selection(w, rng))
        if any(phi[i] not in ranges[i] for i in range(w.n)):
            return False
    return True


# -- player roles -----------------------------------------------------------------


@dataclass(frozen=True)
class PlayerRoles:
    null: tuple[int, ...]
    total_null: tuple[int, ...]
    symmetric: tuple[tuple[int, int], ...]


def is_null_player(w: IntervalGame, player: int) -> bool:
    bit = 1 << (player - 1)
    return all(w(s) == w(s | bit) for s in range(1 << w.n) if not s & bit)


def is_total_null_player(w: IntervalGame, player: int) -> bool:
    bit = 1 << (player - 1)
    return all(moore_sub(w(s), w(s | bit)) == ZERO for s in range(1 << w.n) if not s & bit)


def are_symmetric(w: IntervalGame, i: int, j: int) -> bool:
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    return all(w(s | bi) == w(s | bj) for s in range(1 << w.n) if not s & (bi | bj))


def player_roles(w: IntervalGame) -> PlayerRoles:
    players = range(1, w.n + 1)
    return PlayerRoles(
        null=tuple(p for p in players if is_null_player(w, p)),
        total_null=tuple(p for p in players if is_total_null_player(w, p)),
        symmetric=tuple((i, j) for i in players for j in players if i < j and are_symmetric(w, i, j)),
    )


def null_player_radius(w: IntervalGame, player: int) -> Fraction:
    """``sum over S not containing player of weight(S) * |w|(S)``."""
    bit = 1 << (player - 1)
    return sum(
        (shapley_weight(size(s), w.n) * w(s).length for s in range(1 << w.n) if not s & bit),
        Fraction(0),
    )


# -- axiom audit --------------------------------------------------------------------

AXIOMS = ("IEFF", "EFF", "INP", "TNP", "SYM", "ADD")


def check_ieff(F: ValueFunction, w: IntervalGame) -> dict | None:
    total = interval_sum(F(w))
    return None if indifferent(total, w(w.grand)) else {"sum": total, "grand": w(w.grand)}


def check_eff(F: ValueFunction, w: IntervalGame) -> dict | None:
    total = interval_sum(F(w))
    return None if total == w(w.grand) else {"sum": total, "grand": w(w.grand)}


def check_inp(F: ValueFunction, w: IntervalGame) -> tuple[dict | None, Fraction | None]:
    """Null players must all get the same symmetric interval ``[-t, t]``.

    Returns ``(witness, t)``; ``t`` is None when the game has no null player.
    """
    values = F(w)
    t = None
    for p in range(1, w.n + 1):
        if not is_null_player(w, p):
            continue
        x = values[p - 1]
        if x.lo != -x.hi:
            return {"player": p, "value": x}, t
        if t is None:
            t = x.hi
        elif x.hi != t:
            return {"player": p, "value": x, "t": t}, t
    return None, t


def check_tnp(F: ValueFunction, w: IntervalGame) -> dict | None:
    values = F(w)
    for p in range(1, w.n + 1):
        if is_total_null_player(w, p) and values[p - 1] != ZERO:
            return {"player": p, "value": values[p - 1]}
    return None


def check_sym(F: ValueFunction, w: IntervalGame) -> dict | None:
    values = F(w)
    for i in range(1, w.n + 1):
        for j in range(i + 1, w.n + 1):
            if are_symmetric(w, i, j) and values[i - 1] != values[j - 1]:
                return {"players": (i, j), "values": (values[i - 1], values[j - 1])}
    return None


def check_add(F: ValueFunction, v: IntervalGame, w: IntervalGame) -> dict | None:
    if v.n != w.n:
        raise PlayerCountMismatch(v.n, w.n)
    joint = F(v + w)
    split = tuple(a + b for a, b in zip(F(v), F(w)))
    for p in range(v.n):
        if joint[p] != split[p]:
            return {"player": p + 1, "joint": joint[p], "split": split[p]}
    return None


@dataclass
class AxiomOutcome:
    passed: bool = True
    checked: int = 0
    # first failing instance: {"game": index} or {"pair": index} plus the check's detail
    witness: dict | None = None

    def record(self, where: dict, detail: dict | None) -> None:
        self.checked += 1
        if detail is not None and self.passed:
            self.passed = False
            self.witness = {**where, **detail}


@dataclass
class ValueAuditReport:
    outcomes: dict[str, AxiomOutcome] = field(default_factory=lambda: {a: AxiomOutcome() for a in AXIOMS})
    # per game: the common null-player radius, None when the game has no null player
    inp_radius: list[Fraction | None] = field(default_factory=list)

    def passed(self, axiom: str) -> bool:
        return self.outcomes[axiom].passed


def audit_value_function(
    F: ValueFunction,
    games: Sequence[IntervalGame],
    pairs: Sequence[tuple[IntervalGame, IntervalGame]] = (),
) -> ValueAuditReport:
    ns = {g.n for g in games} | {g.n for pair in pairs for g in pair}
    if len(ns) > 1:
        a, b = sorted(ns)[:2]
        raise PlayerCountMismatch(a, b)
    report = ValueAuditReport()
    out = report.outcomes
    for k, w in enumerate(games):
        where = {"game": k}
        out["IEFF"].record(where, check_ieff(F, w))
        out["EFF"].record(where, check_eff(F, w))
        witness, t = check_inp(F, w)
        out["INP"].record(where, witness)
        report.inp_radius.append(t)
        out["TNP"].record(where, check_tnp(F, w))
        out["SYM"].record(where, check_sym(F, w))
    for k, (v, w) in enumerate(pairs):
        out["ADD"].record({"pair": k}, check_add(F, v, w))
    return report


def degenerate_fallback_applies(w: IntervalGame) -> bool:
    """True when :func:`improved_shapley` returns the interval Shapley value unchanged."""
    return is_degenerate(w) or interval_sum(interval_shapley(w)) == w(w.grand)

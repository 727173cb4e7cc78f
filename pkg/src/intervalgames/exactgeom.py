"""Exact rational linear feasibility and vertex enumeration.

Systems are H-representations over free variables with ``>=`` and ``=``
rows.  :func:`feasible` runs a Bland-rule phase-one simplex on Fractions and
returns a witness point; :func:`vertices` enumerates the vertices of a
bounded system either by walking the graph of feasible bases (default) or
by brute-force enumeration of every d-subset of rows.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import BudgetExceeded, EmptyPolytope, Unbounded
from .intervals import to_rational

GE = ">="
EQ = "="

FEASIBLE_MAX_VARS = 64
FEASIBLE_MAX_ROWS = 2048
VERTEX_MAX_VARS = 8
VERTEX_MAX_ROWS = 300
# Cap on feasible bases visited by the pivot walk.
VERTEX_MAX_BASES = 200_000
# Cap on d-subsets tried by the exhaustive method.
EXHAUSTIVE_MAX_SUBSETS = 2_000_000

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class Row:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def value(self, point: Sequence[Fraction]) -> Fraction:
        return sum((a * x for a, x in zip(self.coeffs, point)), Fraction(0))

    def holds(self, point: Sequence[Fraction]) -> bool:
        lhs = self.value(point)
        return lhs == self.rhs if self.rel == EQ else lhs >= self.rhs


@dataclass
class ConstraintSystem:
    nvars: int
    rows: list[Row] = field(default_factory=list)

    def add(self, coeffs, rel: str, rhs) -> None:
        coeffs = tuple(to_rational(c) for c in coeffs)
        if len(coeffs) != self.nvars:
            raise ValueError(f"row has {len(coeffs)} coefficients, expected {self.nvars}")
        if rel not in (GE, EQ):
            raise ValueError(f"unknown relation {rel!r}")
        self.rows.append(Row(coeffs, rel, to_rational(rhs)))

    def ge(self, coeffs, rhs) -> None:
        self.add(coeffs, GE, rhs)

    def eq(self, coeffs, rhs) -> None:
        self.add(coeffs, EQ, rhs)

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        return len(point) == self.nvars and all(r.holds(point) for r in self.rows)


# ---------------------------------------------------------------------------
# dense exact linear algebra helpers


def _rref(matrix: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of the first ``ncols`` columns (extra columns ride along)."""
    m = [row[:] for row in matrix]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [v / piv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(matrix: list[list[Fraction]]) -> int:
    if not matrix:
        return 0
    return len(_rref(matrix, len(matrix[0]))[1])


def solve_square(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve ``a x = b`` exactly; None when ``a`` is singular."""
    k = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = _rref(aug, k)
    if len(pivots) < k:
        return None
    return [red[i][k] for i in range(k)]


def _mat_inverse(a: list[list[Fraction]]) -> list[list[Fraction]] | None:
    k = len(a)
    one, zero = Fraction(1), Fraction(0)
    aug = [list(row) + [one if i == j else zero for j in range(k)] for i, row in enumerate(a)]
    red, pivots = _rref(aug, k)
    if len(pivots) < k:
        return None
    return [row[k:] for row in red]


def _affine_hull(eq_rows: list[Row], d: int) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Parametrize ``{x : E x = e}`` as ``x0 + N z``.

    Returns ``(x0, N)`` with ``N`` given as a list of d-vectors (its columns),
    or None when the equalities are inconsistent.
    """
    zero = Fraction(0)
    if not eq_rows:
        basis = [[Fraction(int(i == j)) for i in range(d)] for j in range(d)]
        return [zero] * d, basis
    aug = [list(r.coeffs) + [r.rhs] for r in eq_rows]
    red, pivots = _rref(aug, d)
    for row in red[len(pivots):]:
        if row[d] != 0:
            return None
    x0 = [zero] * d
    for i, c in enumerate(pivots):
        x0[c] = red[i][d]
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * d
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return x0, basis


# ---------------------------------------------------------------------------
# feasibility


def _check_feasible_budget(sys: ConstraintSystem) -> None:
    if sys.nvars > FEASIBLE_MAX_VARS or len(sys.rows) > FEASIBLE_MAX_ROWS:
        raise BudgetExceeded(
            f"feasibility budget is {FEASIBLE_MAX_VARS} variables x {FEASIBLE_MAX_ROWS} rows; "
            f"got {sys.nvars} x {len(sys.rows)}"
        )


def _phase_one(sys: ConstraintSystem) -> Point | None:
    d = sys.nvars
    zero = Fraction(0)
    n_ge = sum(1 for r in sys.rows if r.rel == GE)
    # columns: x+ (d), x- (d), one surplus per >= row
    ncols = 2 * d + n_ge
    tableau: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []  # column index; artificials are labelled ncols + row
    slack_col = 2 * d
    for r in sys.rows:
        row = [zero] * ncols
        for j, a in enumerate(r.coeffs):
            row[j] = a
            row[d + j] = -a
        b = r.rhs
        if r.rel == GE:
            row[slack_col] = Fraction(-1)
            if b <= 0:
                row = [-v for v in row]
                b = -b
                basis.append(slack_col)
            else:
                basis.append(ncols + len(basis))
            slack_col += 1
        else:
            if b < 0:
                row = [-v for v in row]
                b = -b
            basis.append(ncols + len(basis))
        tableau.append(row)
        rhs.append(b)

    # Phase-one objective: minimise the sum of artificials.  ``cost[j] > 0``
    # means increasing column j lowers the objective.
    cost = [zero] * ncols
    obj = zero
    for i, bv in enumerate(basis):
        if bv >= ncols:
            cost = [c + v for c, v in zip(cost, tableau[i])]
            obj += rhs[i]

    while obj > 0:
        enter = next((j for j in range(ncols) if cost[j] > 0), None)
        if enter is None:
            return None
        best = None
        for i, row in enumerate(tableau):
            a = row[enter]
            if a > 0:
                key = (rhs[i] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # cannot happen while obj > 0: the objective is bounded below by 0
            raise AssertionError("phase one reported unbounded")
        i = best[1]
        piv = tableau[i][enter]
        prow = [v / piv for v in tableau[i]]
        prhs = rhs[i] / piv
        nz = [j for j, v in enumerate(prow) if v != 0]
        tableau[i], rhs[i] = prow, prhs
        for k, row in enumerate(tableau):
            if k != i and row[enter] != 0:
                f = row[enter]
                for j in nz:
                    row[j] -= f * prow[j]
                rhs[k] -= f * prhs
        f = cost[enter]
        for j in nz:
            cost[j] -= f * prow[j]
        obj -= f * prhs
        basis[i] = enter

    values = [zero] * ncols
    for i, bv in enumerate(basis):
        if bv < ncols:
            values[bv] = rhs[i]
    return tuple(values[j] - values[d + j] for j in range(d))


def feasible(sys: ConstraintSystem) -> tuple[bool, Point | None]:
    """Exact feasibility test.  On success the witness satisfies every row exactly."""
    _check_feasible_budget(sys)
    point = _phase_one(sys)
    if point is None:
        return False, None
    if not sys.satisfied_by(point):
        raise AssertionError("phase-one witness fails the system")
    return True, point


# ---------------------------------------------------------------------------
# vertex enumeration


def _check_vertex_budget(sys: ConstraintSystem) -> None:
    if sys.nvars > VERTEX_MAX_VARS or len(sys.rows) > VERTEX_MAX_ROWS:
        raise BudgetExceeded(
            f"vertex budget is {VERTEX_MAX_VARS} variables x {VERTEX_MAX_ROWS} rows; "
            f"got {sys.nvars} x {len(sys.rows)}"
        )


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


class _Reduced:
    """Inequalities ``G z >= h`` in coordinates of the equalities' affine hull."""

    def __init__(self, sys: ConstraintSystem):
        eqs = [r for r in sys.rows if r.rel == EQ]
        hull = _affine_hull(eqs, sys.nvars)
        if hull is None:
            raise EmptyPolytope("equality rows are inconsistent")
        self.x0, self.basis = hull
        self.k = len(self.basis)
        self.G: list[list[Fraction]] = []
        self.h: list[Fraction] = []
        for r in sys.rows:
            if r.rel == GE:
                self.G.append([_dot(r.coeffs, col) for col in self.basis])
                self.h.append(r.rhs - _dot(r.coeffs, self.x0))

    def lift(self, z: Sequence[Fraction]) -> Point:
        x = list(self.x0)
        for zj, col in zip(z, self.basis):
            if zj:
                x = [xi + zj * ci for xi, ci in zip(x, col)]
        return tuple(x)

    def system(self) -> ConstraintSystem:
        s = ConstraintSystem(self.k)
        for g, b in zip(self.G, self.h):
            s.rows.append(Row(tuple(g), GE, b))
        return s

    def check_pointed_and_bounded(self) -> None:
        if rank(self.G) < self.k:
            raise Unbounded("feasible region contains a line")
        # bounded iff no direction with G dir >= 0 and G dir != 0
        cone = ConstraintSystem(self.k)
        for g in self.G:
            cone.rows.append(Row(tuple(g), GE, Fraction(0)))
        total = [sum(col) for col in zip(*self.G)]
        cone.rows.append(Row(tuple(total), GE, Fraction(1)))
        if _phase_one(cone) is not None:
            raise Unbounded("feasible region has a recession direction")


def _initial_cobasis(red: _Reduced, z: list[Fraction]) -> tuple[int, ...]:
    """Slide a feasible point onto a vertex and return d tight independent rows."""
    G, h, k = red.G, red.h, red.k
    zero = Fraction(0)
    while True:
        tight = [i for i in range(len(G)) if _dot(G[i], z) == h[i]]
        rows = [G[i] for i in tight]
        if rank(rows) == k:
            break
        # a nonzero direction in the null space of the tight rows
        if rows:
            red_m, pivots = _rref(rows, k)
            free = next(c for c in range(k) if c not in pivots)
            direction = [zero] * k
            direction[free] = Fraction(1)
            for i, c in enumerate(pivots):
                direction[c] = -red_m[i][free]
        else:
            direction = [Fraction(int(c == 0)) for c in range(k)]
        for sign in (1, -1):
            dvec = [sign * v for v in direction]
            step = None
            for i in range(len(G)):
                g = _dot(G[i], dvec)
                if g < 0:
                    t = (_dot(G[i], z) - h[i]) / -g
                    if step is None or t < step:
                        step = t
            if step is not None:
                z = [zi + step * di for zi, di in zip(z, dvec)]
                break
        else:
            raise Unbounded("feasible region contains a line")
    chosen: list[int] = []
    for i in tight:
        if rank([G[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == k:
                break
    return tuple(sorted(chosen))


def _pivot_walk(red: _Reduced) -> set[Point]:
    G, h, k = red.G, red.h, red.k
    ok, z = feasible(red.system())
    if not ok:
        raise EmptyPolytope("system is infeasible")
    start = _initial_cobasis(red, list(z))
    seen = {start}
    queue = deque([start])
    found: set[Point] = set()
    while queue:
        cob = queue.popleft()
        inv = _mat_inverse([G[i] for i in cob])
        if inv is None:
            raise AssertionError("singular cobasis reached")
        point = [_dot(row, [h[i] for i in cob]) for row in inv]
        found.add(tuple(point))
        in_cob = set(cob)
        for pos, leaving in enumerate(cob):
            # direction raising the slack of ``leaving`` while keeping the others tight
            direction = [inv[r][pos] for r in range(k)]
            step = None
            blockers: list[int] = []
            for i in range(len(G)):
                if i in in_cob:
                    continue
                g = _dot(G[i], direction)
                if g < 0:
                    t = (_dot(G[i], point) - h[i]) / -g
                    if step is None or t < step:
                        step, blockers = t, [i]
                    elif t == step:
                        blockers.append(i)
            if step is None:
                raise Unbounded("unbounded edge found during vertex enumeration")
            for b in blockers:
                nxt = tuple(sorted((in_cob - {leaving}) | {b}))
                if nxt not in seen:
                    if len(seen) >= VERTEX_MAX_BASES:
                        raise BudgetExceeded(
                            f"more than {VERTEX_MAX_BASES} feasible bases visited"
                        )
                    seen.add(nxt)
                    queue.append(nxt)
    return found


def _exhaustive(red: _Reduced) -> set[Point]:
    G, h, k = red.G, red.h, red.k
    if comb(len(G), k) > EXHAUSTIVE_MAX_SUBSETS:
        raise BudgetExceeded(f"C({len(G)}, {k}) row subsets exceed the exhaustive budget")
    found: set[Point] = set()
    for subset in combinations(range(len(G)), k):
        z = solve_square([G[i] for i in subset], [h[i] for i in subset])
        if z is None:
            continue
        if all(_dot(g, z) >= b for g, b in zip(G, h)):
            found.add(tuple(z))
    return found


def vertices(sys: ConstraintSystem, method: str = "pivot") -> list[Point]:
    """All vertices of a bounded system, lexicographically sorted, each once.

    ``method="exhaustive"`` tries every d-subset of rows instead of walking
    adjacent bases; it is slower but shares no code with the pivot walk
    beyond the linear-algebra helpers.
    """
    _check_vertex_budget(sys)
    red = _Reduced(sys)
    if red.k == 0:
        point = red.lift(())
        if not sys.satisfied_by(point):
            raise EmptyPolytope("system is infeasible")
        return [point]
    if method == "pivot":
        if not feasible(red.system())[0]:
            raise EmptyPolytope("system is infeasible")
        red.check_pointed_and_bounded()
        found = _pivot_walk(red)
    elif method == "exhaustive":
        if not feasible(red.system())[0]:
            raise EmptyPolytope("system is infeasible")
        red.check_pointed_and_bounded()
        found = _exhaustive(red)
    else:
        raise ValueError(f"unknown vertex enumeration method {method!r}")
    points = sorted({red.lift(z) for z in found})
    for p in points:
        if not sys.satisfied_by(p):
            raise AssertionError(f"emitted vertex {p} violates the system")
    return points

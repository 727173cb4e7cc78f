"""Command-line interface.

Game files are JSON::

    {"players": 2, "coalitions": {"1": [0, 1], "2": [0, 1], "1,2": [4, 6]}}

Keys are comma-separated increasing 1-based players; every nonempty
coalition appears exactly once and the empty one is omitted.  Endpoints are
JSON numbers (decimals are read exactly) or ``"p/q"`` strings.

Every command prints one JSON document on stdout.  Rationals are always
written as ``"p/q"`` strings.  Exit codes: 0 success, 1 input error,
2 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import intgame, shapley, solution, tugame
from .errors import BudgetExceeded, IntervalGameError
from .intervals import Interval, format_rational, to_rational
from .intgame import IntervalGame
from .tugame import MAX_PLAYERS, TuGame, members


class GameFileError(IntervalGameError, ValueError):
    pass


# -- parsing ---------------------------------------------------------------------


def _no_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise GameFileError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _exact_number(text: str) -> Fraction:
    return Fraction(text)


def _endpoint(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (Fraction, str)):
        raise GameFileError(f"{where}: endpoint must be a number or 'p/q' string, got {value!r}")
    try:
        return to_rational(value)
    except ValueError as exc:
        raise GameFileError(f"{where}: {exc}") from None


def parse_coalition_key(key: str, n: int) -> int:
    parts = key.split(",")
    try:
        players = [int(p) for p in parts]
    except ValueError:
        raise GameFileError(f"bad coalition key {key!r}") from None
    if any(str(p) != s for p, s in zip(players, parts)):
        raise GameFileError(f"bad coalition key {key!r}")
    if any(not 1 <= p <= n for p in players):
        raise GameFileError(f"coalition key {key!r} names a player outside 1..{n}")
    if any(a >= b for a, b in zip(players, players[1:])):
        raise GameFileError(f"non-canonical coalition key {key!r}")
    return tugame.coalition(players)


def coalition_key(mask: int) -> str:
    return ",".join(str(p) for p in members(mask))


def game_from_document(doc) -> IntervalGame:
    if not isinstance(doc, dict) or set(doc) != {"players", "coalitions"}:
        raise GameFileError("game file must be an object with exactly 'players' and 'coalitions'")
    n = doc["players"]
    if isinstance(n, Fraction) and n.denominator == 1:
        n = int(n)
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_PLAYERS:
        raise GameFileError(f"players must be an integer in 1..{MAX_PLAYERS}, got {doc['players']!r}")
    coalitions = doc["coalitions"]
    if not isinstance(coalitions, dict):
        raise GameFileError("'coalitions' must be an object")
    values: list[Interval | None] = [None] * (1 << n)
    values[0] = Interval(0, 0)
    for key, value in coalitions.items():
        if key == "":
            raise GameFileError("the empty coalition must be absent")
        mask = parse_coalition_key(key, n)
        if values[mask] is not None:
            raise GameFileError(f"duplicate coalition {key!r}")
        if not isinstance(value, list) or len(value) != 2:
            raise GameFileError(f"coalition {key!r}: value must be a two-element array")
        lo, hi = (_endpoint(v, f"coalition {key!r}") for v in value)
        if lo > hi:
            raise GameFileError(f"coalition {key!r}: lower bound {lo} exceeds upper bound {hi}")
        values[mask] = Interval(lo, hi)
    missing = [coalition_key(m) for m, v in enumerate(values) if v is None]
    if missing:
        raise GameFileError(f"incomplete characteristic function: missing {', '.join(missing)}")
    return IntervalGame(n, tuple(values))


def loads_game(text: str) -> IntervalGame:
    try:
        doc = json.loads(
            text,
            object_pairs_hook=_no_duplicates,
            parse_float=_exact_number,
            parse_int=_exact_number,
        )
    except json.JSONDecodeError as exc:
        raise GameFileError(f"invalid JSON: {exc}") from None
    return game_from_document(doc)


def parse_game(path) -> IntervalGame:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GameFileError(f"cannot read {path}: {exc}") from None
    return loads_game(text)


# -- serialization -------------------------------------------------------------------


def rat(q) -> str:
    return format_rational(to_rational(q))


def interval_json(x: Interval) -> list[str]:
    return [rat(x.lo), rat(x.hi)]


def game_document(w: IntervalGame) -> dict:
    return {
        "players": w.n,
        "coalitions": {coalition_key(m): interval_json(w(m)) for m in range(1, 1 << w.n)},
    }


def tu_document(v: TuGame) -> dict:
    return {coalition_key(m): rat(v(m)) for m in range(1, 1 << v.n)}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _witness_json(witness: dict) -> dict:
    out = {}
    for key, value in witness.items():
        if key == "coalition":
            out[key] = list(members(value))
        elif key == "pair":
            out[key] = [list(members(m)) for m in value]
        elif key == "selection":
            out[key] = tu_document(value)
        else:
            out[key] = value
    return out


def report_json(report: intgame.ClassReport) -> dict:
    doc = dict(report.flags())
    doc["witnesses"] = {k: _witness_json(v) for k, v in sorted(report.witnesses.items())}
    return doc


def verdict_json(v: solution.CoincidenceVerdict) -> dict:
    doc = {"outcome": v.outcome.value, "reason": v.reason.value}
    if v.witness is not None:
        doc["witness"] = [rat(x) for x in v.witness]
    if v.outcome is solution.Outcome.UNKNOWN and v.theorem_test is not None:
        doc["heuristic_not_coincident"] = v.theorem_test
    if v.theorem_test_disagrees:
        doc["theorem_test_disagrees"] = True
    return doc


def _detail_json(value):
    if isinstance(value, Interval):
        return interval_json(value)
    if isinstance(value, Fraction):
        return rat(value)
    if isinstance(value, (tuple, list)):
        return [_detail_json(v) for v in value]
    if isinstance(value, dict):
        return {k: _detail_json(v) for k, v in value.items()}
    return value


def audit_json(report: shapley.ValueAuditReport) -> dict:
    doc = {}
    for axiom, outcome in report.outcomes.items():
        entry = {"passed": outcome.passed, "checked": outcome.checked}
        if outcome.witness is not None:
            entry["witness"] = _detail_json(outcome.witness)
        doc[axiom] = entry
    doc["inp_radius"] = [None if t is None else rat(t) for t in report.inp_radius]
    return doc


# -- commands ------------------------------------------------------------------------


def _parse_point(text: str, n: int) -> list[Fraction]:
    try:
        x = [to_rational(p) for p in text.split(",")]
    except ValueError as exc:
        raise GameFileError(f"bad --point: {exc}") from None
    if len(x) != n:
        raise GameFileError(f"--point has {len(x)} entries, the game has {n} players")
    return x


def cmd_classify(args):
    return report_json(intgame.classify(parse_game(args.file)))


def cmd_shapley(args):
    return [interval_json(x) for x in shapley.interval_shapley(parse_game(args.file))]


def cmd_improved_shapley(args):
    return [interval_json(x) for x in shapley.improved_shapley(parse_game(args.file))]


def cmd_core(args):
    w = parse_game(args.file)
    x = _parse_point(args.point, w.n)
    in_gen, cert = solution.gen_membership(x, w)
    doc = {
        "selection_imputation": solution.selection_imputation_membership(x, w),
        "selection_core": solution.selection_core_membership(x, w),
        "gen_interval_core": in_gen,
    }
    if cert is not None:
        doc["certificate"] = {"l": [rat(v) for v in cert.l], "u": [rat(v) for v in cert.u]}
    return doc


def cmd_coincide(args):
    return verdict_json(solution.decide_core_coincidence(parse_game(args.file)))


def cmd_vertices(args):
    w = parse_game(args.file)
    if args.set == "sc":
        if solution.selection_core_is_empty(w):
            return []
        verts = solution.selection_core_vertices(w)
    else:
        lower, upper = intgame.border_games(w)
        game = lower if args.set == "lower-core" else upper
        if tugame.core_is_empty(game):
            return []
        verts = tugame.core_vertices(game)
    return [[rat(v) for v in p] for p in verts]


def cmd_audit(args):
    w = parse_game(args.file)
    rng = random.Random(args.seed)
    companions = [intgame.random_interval_game(w.n, rng) for _ in range(args.pairs)]
    pairs = [(w, c) for c in companions]
    roles = shapley.player_roles(w)
    doc = {
        "roles": {
            "null": list(roles.null),
            "total_null": list(roles.total_null),
            "symmetric": [list(p) for p in roles.symmetric],
        },
        "seed": args.seed,
    }
    for name, F in (("interval_shapley", shapley.interval_shapley), ("improved_shapley", shapley.improved_shapley)):
        entry = audit_json(shapley.audit_value_function(F, [w], pairs))
        entry["selection_range"] = shapley.shapley_selection_range_check(w, args.samples, value=F, seed=args.seed)
        doc[name] = entry
    return doc


def cmd_gen_wa(args):
    try:
        b = to_rational(args.b)
    except ValueError as exc:
        raise GameFileError(f"bad --b: {exc}") from None
    doc = game_document(intgame.gen_wa_game(args.n, b))
    if args.out is None:
        return doc
    Path(args.out).write_text(dumps(doc) + "\n")
    return {"written": str(args.out)}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors; exit code 2 is reserved for budgets
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="intervalgames", description="Cooperative interval game analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="game file (JSON)")
        p.set_defaults(func=func)
        return p

    with_file("classify", cmd_classify, "class membership flags with witnesses")
    with_file("shapley", cmd_shapley, "interval Shapley value")
    with_file("improved-shapley", cmd_improved_shapley, "efficiency-corrected interval Shapley value")
    p = with_file("core", cmd_core, "membership of a payoff vector in the selection and interval cores")
    p.add_argument("--point", required=True, help="comma-separated payoff vector, e.g. 2,2,2")
    with_file("coincide", cmd_coincide, "decide whether gen(C(w)) equals SC(w)")
    p = with_file("vertices", cmd_vertices, "vertex list of a core polytope")
    p.add_argument("--set", choices=("sc", "lower-core", "upper-core"), default="sc")
    p = with_file("audit", cmd_audit, "player roles and value-function axiom audit")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--samples", type=int, default=100, help="random selections for the range check")
    p.add_argument("--pairs", type=int, default=10, help="random companion games for additivity")
    p = sub.add_parser("gen-wa", help="write the coincident family game with grand worth [n, n+b]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen_wa)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (IntervalGameError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(dumps(doc) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())

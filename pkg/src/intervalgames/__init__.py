"""Cooperative games with interval uncertainty: exact interval arithmetic,
class membership, selection and interval cores, core coincidence, and
interval Shapley values."""

from .errors import (
    BudgetExceeded,
    DivisionByZeroInterval,
    EmptyPolytope,
    IntervalGameError,
    InvalidParameter,
    PartialSubtractionUndefined,
    PlayerCountMismatch,
    Unbounded,
)
from .intervals import Interval
from .intgame import IntervalGame, classify, gen_wa_game
from .shapley import improved_shapley, interval_shapley
from .solution import CoincidenceVerdict, Outcome, Reason, decide_core_coincidence
from .tugame import TuGame

__all__ = [
    "BudgetExceeded",
    "CoincidenceVerdict",
    "DivisionByZeroInterval",
    "EmptyPolytope",
    "Interval",
    "IntervalGame",
    "IntervalGameError",
    "InvalidParameter",
    "Outcome",
    "PartialSubtractionUndefined",
    "PlayerCountMismatch",
    "Reason",
    "TuGame",
    "Unbounded",
    "classify",
    "decide_core_coincidence",
    "gen_wa_game",
    "improved_shapley",
    "interval_shapley",
]

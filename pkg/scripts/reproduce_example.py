"""Recompute every quantity of the three-player worked example.

    python3 scripts/reproduce_example.py [game.json]

Without an argument the bundled example game is used.
"""

import sys
from pathlib import Path

from intervalgames import intgame, shapley, solution, tugame
from intervalgames.cli import dumps, interval_json, parse_game, report_json, verdict_json

DEFAULT = Path(__file__).resolve().parent.parent / "tests" / "data" / "ex3.json"


def main(argv):
    w = parse_game(argv[1] if len(argv) > 1 else DEFAULT)
    phi = shapley.interval_shapley(w)
    improved = shapley.improved_shapley(w)
    print("interval Shapley:", dumps([interval_json(x) for x in phi]))
    print("improved value:  ", dumps([interval_json(x) for x in improved]))
    for p in range(1, w.n + 1):
        lo = intgame.extremal_selection(w, p, "min")
        low_value = tugame.shapley(lo)[p - 1]
        print(f"player {p}: min over selections {low_value}, inside improved value: {low_value in improved[p - 1]}")
    print("range check (interval Shapley):", shapley.shapley_selection_range_check(w))
    print("range check (improved value):  ", shapley.shapley_selection_range_check(w, value=shapley.improved_shapley))
    print("classification:", dumps(intgame.classify(w).flags()))
    print("coincidence:   ", dumps(verdict_json(solution.decide_core_coincidence(w))))
    print("witnesses:     ", dumps(report_json(intgame.classify(w))["witnesses"]))


if __name__ == "__main__":
    main(sys.argv)

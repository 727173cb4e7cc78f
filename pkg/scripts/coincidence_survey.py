"""Tally core-coincidence verdicts over seeded random games, per generator.

    python3 scripts/coincidence_survey.py --games 50 --seed 1

Also counts how often the published sufficient test for non-coincidence
fires on games the exact vertex check proves coincident.
"""

import argparse
import random
from collections import Counter

from intervalgames import intgame, solution


def w_a_family(n, rng):
    return intgame.gen_wa_game(n, rng.choice(["1/2", 1, 2, 5]))


GENERATORS = {
    "random": intgame.random_interval_game,
    "secig": intgame.random_secig_game,
    "cig": intgame.random_cig_game,
    "w_a": w_a_family,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--games", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--players", type=int, nargs="+", default=[2, 3])
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print(f"seed {args.seed}, {args.games} games per generator and player count")
    for name, gen in GENERATORS.items():
        for n in args.players:
            tally = Counter()
            disagree = 0
            for _ in range(args.games):
                v = solution.decide_core_coincidence(gen(n, rng))
                tally[f"{v.outcome.value}/{v.reason.value}"] += 1
                disagree += v.theorem_test_disagrees
            summary = ", ".join(f"{k}: {c}" for k, c in sorted(tally.items()))
            print(f"{name:7s} n={n}  {summary}  (sufficient test contradicted: {disagree})")


if __name__ == "__main__":
    main()

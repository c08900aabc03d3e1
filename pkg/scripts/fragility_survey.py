"""Survey fixed-weight versus best-achievable non-fragility on random graphs.

For each random connected graph the script prints the brute-force level at
the drawn weights, the graphic level from the minimum follower cutset, and
the per-p vector. A summary table counts how often the two levels agree.

    python3 scripts/fragility_survey.py --graphs 200 --max-n 8 --weights int
"""

import argparse
from collections import Counter

import numpy as np

from netctrl.errors import InputError
from netctrl.generators import random_connected_graph
from netctrl.nonfragility import classify_brute_force
from netctrl.system import MasSystem


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graphs", type=int, default=100)
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--weights", choices=("uniform", "int"), default="uniform")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    weights = "int" if args.weights == "int" else (0.1, 2.0)
    tally: Counter = Counter()
    gap_by_n: Counter = Counter()
    for i in range(args.graphs):
        n = int(rng.integers(args.min_n, args.max_n + 1))
        sys = MasSystem(random_connected_graph(rng, n, weights=weights), "v1")
        try:
            rep = classify_brute_force(sys)
        except InputError:
            tally["uncontrollable"] += 1
            continue
        status = "equal" if rep.k == rep.graphic_level else "below graphic"
        tally[status] += 1
        if status != "equal":
            gap_by_n[n] += 1
        if not args.quiet:
            per_p = "".join("1" if ok else "0" for ok in rep.per_p)
            print(f"{i:4d} n={n} k={rep.k} graphic={rep.graphic_level} per_p={per_p} {rep.classification}")
    print("\nsummary")
    for key in ("equal", "below graphic", "uncontrollable"):
        print(f"  {key:15s} {tally[key]}")
    if gap_by_n:
        print("  gaps by n: " + ", ".join(f"{n}:{c}" for n, c in sorted(gap_by_n.items())))


if __name__ == "__main__":
    main()

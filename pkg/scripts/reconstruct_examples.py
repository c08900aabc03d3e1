"""Rebuild the three small example fixtures and freeze them under tests/fixtures/.

Run from the repository root:

    python3 scripts/reconstruct_examples.py [--seed 42] [--check]

With --check nothing is written; the script exits 1 if a stored fixture
differs from a fresh search.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from netctrl.io import document_from_system, dumps, system_from_document
from netctrl.nonfragility import classify_brute_force
from netctrl.preservation import check_preservation_numeric, check_preservation_structural
from netctrl.reconstruct import search_fragile_but_two_nf, search_preservation_gap, split_group_graph

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def build(seed: int) -> dict[str, dict]:
    out = {}
    t = time.perf_counter()
    r = search_fragile_but_two_nf(seed)
    elapsed = time.perf_counter() - t
    rep = classify_brute_force(r.system)
    print(f"fragile_but_two_nf: trial {r.trials}, {elapsed:.2f}s, {rep.classification}, per_p={rep.per_p}")
    out["fragile_but_two_nf.json"] = {**document_from_system(r.system), "seed": r.seed, "trials": r.trials}

    t = time.perf_counter()
    r = search_preservation_gap(seed)
    elapsed = time.perf_counter() - t
    st = check_preservation_structural(r.system, ["v4", "v5"], ["v3"])
    num = check_preservation_numeric(r.system, ["v4", "v5"], ["v3"])
    print(
        f"preservation_gap: trial {r.trials}, {elapsed:.2f}s, structural={st.structurally_preserved}, "
        f"numeric={num.partially_controllable}"
    )
    out["preservation_gap.json"] = {**document_from_system(r.system), "seed": r.seed, "trials": r.trials}

    sys_ = split_group_graph()
    st = check_preservation_structural(sys_, ["v4", "v5", "v6", "v7", "v8"], ["v3"])
    print(f"split_group: separated after losing v3 = {list(st.violated_targets)}")
    out["split_group.json"] = document_from_system(sys_)
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--check", action="store_true", help="compare against stored fixtures instead of writing")
    args = ap.parse_args()
    docs = build(args.seed)
    FIXTURES.mkdir(parents=True, exist_ok=True)
    stale = []
    for name, doc in docs.items():
        path = FIXTURES / name
        if args.check:
            stored = json.loads(path.read_text())
            if system_from_document(stored) != system_from_document(doc):
                stale.append(name)
        else:
            path.write_text(dumps(doc) + "\n")
            print(f"wrote {path}")
    if stale:
        print(f"stale fixtures: {stale}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``netctrl <command> GRAPH [options]``.

Every command prints one JSON report on stdout. Exit codes: 0 success,
2 input error, 3 analysis infeasible (enumeration bound, singular block,
iteration cap).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .config import DEFAULT_SEED, DEFAULT_TOL, Tolerances
from .cuts import CutReport
from .errors import InfeasibleError, InputError, NetCtrlError
from .graph import connected_components, distance_partition, is_connected
from .groups import GroupVerdict, all_maximal_groups, check_group_grammian, check_group_rows, maximal_group
from .io import document_from_system, dumps, load_system, save_system
from .linalg import numerical_rank
from .nonfragility import FragilityReport, classify_brute_force, classify_graphic, synthesize_snf_weights
from .preservation import (
    check_preservation_numeric,
    check_preservation_structural,
    min_breaking_set,
    synthesize_preserving_weights,
)
from .steering import plan_steering, simulate, write_trajectory_csv
from .system import MasSystem, controllability_matrix, controllability_rank, is_controllable


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _labels(text: str | None) -> list[str]:
    if not text:
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def _targets(text: str) -> dict[str, float]:
    out = {}
    for item in _labels(text):
        if "=" not in item:
            raise InputError(f"target {item!r} must look like label=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise InputError(f"target value for {k!r} is not a number: {v!r}") from None
    return out


def _read_json(path: str, what: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {what} file {path}: {exc}") from None


def _tolerances(args) -> Tolerances:
    tol = DEFAULT_TOL
    return Tolerances(
        krylov=args.tol if args.tol is not None else tol.krylov,
        rows=args.tol if args.tol is not None else tol.rows,
        grammian=args.grammian_tol if args.grammian_tol is not None else tol.grammian,
    )


def _seed(args) -> int:
    env = os.environ.get("NETCTRL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"NETCTRL_SEED must be an integer, got {env!r}") from None
    return args.seed


def cut_dict(rep: CutReport) -> dict:
    return {"exists": rep.exists, "size": rep.size if rep.exists else "none", "witness": list(rep.witness)}


def fragility_dict(rep: FragilityReport) -> dict:
    out = {
        "classification": rep.classification,
        "k": rep.k,
        "breaking_set": list(rep.breaking_set),
        "graphic_k": "unbounded" if rep.graphic_k is None else rep.graphic_k,
        "method": rep.method,
        "distance_length": rep.distance_length,
        "min_cutset": list(rep.min_cutset),
    }
    if rep.method == "graphic":
        out["semantics"] = "existence over weights"
    else:
        out["per_p_nf"] = list(rep.per_p)
    return out


def verdict_dict(v: GroupVerdict) -> dict:
    out = {
        "group": list(v.group),
        "criterion": v.criterion,
        "partially_controllable": v.partially_controllable,
        "tolerance": v.tol,
        "decision_ratio": v.decision_ratio,
        "in_guard_band": v.in_guard_band,
    }
    if v.row_rank is not None:
        out["row_rank"] = v.row_rank.rank
        out["singular_values"] = list(v.row_rank.singular_values)
    if v.horizon is not None:
        out["grammian_min_singular"] = v.grammian_min_singular
        out["horizon"] = list(v.horizon)
    return out


# -- commands -------------------------------------------------------------


def cmd_analyze(sys: MasSystem, args, tol: Tolerances) -> dict:
    g = sys.graph
    out = {
        "n": g.n,
        "num_edges": g.num_edges,
        "leader": sys.leader,
        "connected": is_connected(g),
        "components": [list(c) for c in connected_components(g)],
        "rank_q": controllability_rank(sys, tol.krylov),
        "rank_q_svd": numerical_rank(controllability_matrix(sys).q).rank,
        "controllable": is_controllable(sys, tol.krylov),
    }
    if out["connected"]:
        dp = distance_partition(g, sys.leader)
        out["distance_partition"] = [list(layer) for layer in dp.layers]
        out["length"] = dp.length
    else:
        out["distance_partition"] = None
        out["length"] = None
    return out


def cmd_nonfragility(sys: MasSystem, args, tol: Tolerances) -> dict:
    out = {}
    if args.method in ("graphic", "both"):
        out["graphic"] = fragility_dict(classify_graphic(sys.graph, sys.leader))
    if args.method in ("brute", "both"):
        rep = classify_brute_force(sys, tol.krylov)
        out["brute_force"] = fragility_dict(rep)
        if args.method == "both":
            out["consistency"] = {
                "brute_k_le_graphic_k": rep.k <= rep.graphic_level,
                "equal": rep.k == rep.graphic_level,
            }
    return out


def cmd_groups(sys: MasSystem, args, tol: Tolerances) -> dict:
    modes = [bool(args.check), args.maximal, args.all]
    if sum(modes) != 1:
        raise InputError("choose exactly one of --check, --maximal, --all")
    if args.all:
        groups = all_maximal_groups(sys, tol.rows)
        return {"mode": "all", "rank_q": controllability_rank(sys, tol.krylov), "groups": [list(x) for x in groups]}
    if args.maximal:
        grp = maximal_group(sys, _labels(args.include), tol.rows)
        return {"mode": "maximal", "rank_q": controllability_rank(sys, tol.krylov), "group": list(grp), "size": len(grp)}
    group = _labels(args.check)
    out: dict = {"mode": "check", "group": list(sys.graph.sort_nodes(group))}
    verdicts = []
    if args.criterion in ("rows", "both"):
        verdicts.append(check_group_rows(sys, group, tol.rows))
    if args.criterion in ("grammian", "both"):
        verdicts.append(check_group_grammian(sys, group, args.t0, args.t1, tol.grammian))
    for v in verdicts:
        out[v.criterion] = verdict_dict(v)
    if len(verdicts) == 2:
        agree = verdicts[0].partially_controllable == verdicts[1].partially_controllable
        out["agreement"] = agree
        if not agree:
            msg = "row and grammian criteria disagree"
            if any(v.in_guard_band for v in verdicts):
                msg += " inside the tolerance guard band"
            if args.strict:
                raise InfeasibleError(msg)
            out["warning"] = msg
            _warn(msg)
    return out


def cmd_preserve(sys: MasSystem, args, tol: Tolerances) -> dict:
    vq = _labels(args.important)
    if not vq:
        raise InputError("--important is required")
    out: dict = {"important": list(sys.graph.sort_nodes(vq))}
    if args.removed is not None:
        removed = _labels(args.removed)
        st = check_preservation_structural(sys, vq, removed)
        num = check_preservation_numeric(sys, vq, removed, tol.rows)
        out["removed"] = list(st.removed)
        out["structurally_preserved"] = st.structurally_preserved
        out["violated_targets"] = list(st.violated_targets)
        out["compressed_graph_preserved"] = st.compressed_preserved
        out["numeric"] = verdict_dict(num)
    if args.min_break:
        out["min_break"] = cut_dict(min_breaking_set(sys, vq))
    if args.synthesize:
        out["synthesis"] = _synthesize_preserve(sys, vq, args, tol)
    if len(out) == 1:
        raise InputError("choose at least one of --removed, --min-break, --synthesize")
    return out


def _synthesize_preserve(sys: MasSystem, vq, args, tol: Tolerances) -> dict:
    scenarios = None
    if args.scenarios:
        raw = _read_json(args.scenarios, "scenarios")
        if not isinstance(raw, list) or not all(isinstance(s, list) for s in raw):
            raise InputError("scenarios file must hold a JSON list of label lists")
        scenarios = raw
    weights = synthesize_preserving_weights(sys, vq, scenarios, tol.rows, seed=_seed(args))
    new = MasSystem(sys.graph.with_weights(weights), sys.leader)
    if args.out:
        save_system(new, args.out)
    return {
        "seed": _seed(args),
        "scenarios": "exhaustive" if scenarios is None else scenarios,
        "graph": document_from_system(new),
    }


def cmd_steer(sys: MasSystem, args, tol: Tolerances) -> dict:
    targets = _targets(args.targets)
    if not targets:
        raise InputError("--targets is required")
    x0 = None
    if args.x0:
        raw = _read_json(args.x0, "initial state")
        if isinstance(raw, dict):
            unknown = set(raw) - set(sys.nodes)
            if unknown:
                raise InputError(f"initial state names unknown nodes {sorted(unknown)}")
            x0 = [float(raw.get(v, 0.0)) for v in sys.nodes]
        elif isinstance(raw, list):
            x0 = raw
        else:
            raise InputError("initial state file must hold a JSON object or list")
    plan = plan_steering(sys, list(targets), x0, targets, args.t0, args.t1, tol.grammian)
    plan = simulate(sys, plan, args.steps)
    if args.out:
        write_trajectory_csv(sys, plan, args.out)
    return {
        "group": list(plan.group),
        "t0": plan.t0,
        "t1": plan.t1,
        "steps": args.steps,
        "z": {v: plan.z[sys.graph.index(v)] for v in plan.group},
        "targets": dict(zip(plan.group, plan.targets)),
        "final_state": dict(zip(sys.nodes, plan.final_state)),
        "closed_form_final_state": dict(zip(sys.nodes, plan.predicted_final)),
        "target_error": dict(zip(plan.group, plan.target_error)),
        "max_target_error": float(plan.target_error.max()),
        "trajectory_csv": args.out,
    }


def cmd_synthesize(sys: MasSystem, args, tol: Tolerances) -> dict:
    if args.mode == "snf":
        weights, M = synthesize_snf_weights(sys.graph, sys.leader, tol.krylov)
        new = MasSystem(sys.graph.with_weights(weights), sys.leader)
        if args.out:
            save_system(new, args.out)
        check = classify_brute_force(new, tol.krylov)
        return {"mode": "snf", "follower_weight_bound": M, "graph": document_from_system(new),
                "verified": fragility_dict(check)}
    vq = _labels(args.important)
    if not vq:
        raise InputError("--important is required for --mode preserve")
    return {"mode": "preserve", **_synthesize_preserve(sys, vq, args, tol)}


COMMANDS = {
    "analyze": cmd_analyze,
    "nonfragility": cmd_nonfragility,
    "groups": cmd_groups,
    "preserve": cmd_preserve,
    "steer": cmd_steer,
    "synthesize": cmd_synthesize,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("graph", help="graph file (JSON document or edge list)")
    common.add_argument("--tol", type=float, default=None, help="rank tolerance (Krylov and row tests)")
    common.add_argument("--grammian-tol", type=float, default=None, help="Grammian singular-ratio tolerance")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized steps (NETCTRL_SEED overrides)")
    common.add_argument("--strict", action="store_true", help="turn criterion disagreements into errors")
    common.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for byte-stable output")

    parser = argparse.ArgumentParser(prog="netctrl", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"netctrl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common], help="size, connectivity, distance partition, rank(Q)")

    p = sub.add_parser("nonfragility", parents=[common], help="non-fragility classification")
    p.add_argument("--method", choices=("brute", "graphic", "both"), default="both")

    p = sub.add_parser("groups", parents=[common], help="partial controllability of node groups")
    p.add_argument("--check", help="comma-separated group to test")
    p.add_argument("--maximal", action="store_true", help="greedy maximal controllable group")
    p.add_argument("--include", help="seed nodes for --maximal")
    p.add_argument("--all", action="store_true", help="all maximal controllable groups")
    p.add_argument("--criterion", choices=("rows", "grammian", "both"), default="rows")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=1.0)

    p = sub.add_parser("preserve", parents=[common], help="partial controllability under agent loss")
    p.add_argument("--important", help="comma-separated important nodes")
    p.add_argument("--removed", help="comma-separated removed followers")
    p.add_argument("--min-break", action="store_true", help="smallest removal breaking the group")
    p.add_argument("--synthesize", action="store_true", help="find preserving weights")
    p.add_argument("--scenarios", help="JSON list of removal sets (default: all preserving removals)")
    p.add_argument("--out", help="write the reweighted graph here")

    p = sub.add_parser("steer", parents=[common], help="steer a node group to target states")
    p.add_argument("--targets", required=True, help="label=value,... for the group")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=1.0)
    p.add_argument("--x0", help="JSON file with the initial state (object or list)")
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--out", help="trajectory CSV path")

    p = sub.add_parser("synthesize", parents=[common], help="weight synthesis")
    p.add_argument("--mode", choices=("snf", "preserve"), required=True)
    p.add_argument("--important", help="comma-separated important nodes (preserve mode)")
    p.add_argument("--scenarios", help="JSON list of removal sets (preserve mode)")
    p.add_argument("--out", help="write the reweighted graph here")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        tol = _tolerances(args)
        system = load_system(args.graph)
        verdicts = COMMANDS[args.command](system, args, tol)
    except NetCtrlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return InputError.exit_code
    elapsed = 0 if args.no_timing else round((time.perf_counter() - start) * 1000)
    report = {
        "command": args.command,
        "inputs": {
            "graph_file": args.graph,
            "graph": document_from_system(system),
            "options": {k: v for k, v in vars(args).items() if k not in ("command", "graph")},
        },
        "verdicts": verdicts,
        "tolerances": {"krylov": tol.krylov, "rows": tol.rows, "grammian": tol.grammian},
        "version": __version__,
        "elapsed_ms": elapsed,
    }
    print(dumps(report))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

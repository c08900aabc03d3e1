import json
import string

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from netctrl.cli import main
from netctrl.graph import path_graph, star_graph
from netctrl.io import (
    document_from_system,
    dumps,
    load_system,
    parse_edge_list,
    save_system,
    system_from_document,
)
from netctrl.system import MasSystem

from strategies import graphs


def write(tmp_path, name, sys):
    path = tmp_path / name
    save_system(sys, path)
    return str(path)


def run(capsys, *argv):
    code = main([*map(str, argv), "--no-timing"])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 else None), err


@pytest.fixture
def star_file(tmp_path):
    return write(tmp_path, "star.json", MasSystem(star_graph(2), "v1"))


@pytest.fixture
def path_file(tmp_path):
    return write(tmp_path, "path.json", MasSystem(path_graph(3), "v1"))


# -- file formats --------------------------------------------------------


@given(graphs(min_n=1, max_n=8))
def test_document_round_trip(g):
    sys = MasSystem(g, g.nodes[-1])
    doc = document_from_system(sys)
    assert system_from_document(json.loads(json.dumps(doc))) == sys


def test_edge_list_form():
    sys = parse_edge_list("# demo\nleader v1\nv1 v2 1.0\nv2 v3 0.5  # tail comment\nnode v9\n")
    assert sys.leader == "v1" and sys.nodes == ("v1", "v2", "v3", "v9")
    assert sys.graph.weight("v2", "v3") == 0.5


def test_load_detects_format(tmp_path):
    (tmp_path / "g.txt").write_text("leader a\na b 2\n")
    (tmp_path / "g.json").write_text(json.dumps({"nodes": ["a", "b"], "leader": "a", "edges": [{"u": "a", "v": "b", "w": 2}]}))
    assert load_system(tmp_path / "g.txt") == load_system(tmp_path / "g.json")


def test_dumps_is_canonical():
    assert dumps({"b": 1 / 3, "a": [float("inf")]}) == '{\n  "a": [\n    "inf"\n  ],\n  "b": 0.333333333333\n}'


# -- commands ------------------------------------------------------------


def test_analyze_star(tmp_path, capsys):
    f = write(tmp_path, "s.json", MasSystem(star_graph(2, weights=[1.0, 2.0]), "v1"))
    code, rep, _ = run(capsys, "analyze", f)
    assert code == 0
    v = rep["verdicts"]
    assert v["controllable"] and v["length"] == 1 and v["rank_q"] == 3
    assert rep["command"] == "analyze" and rep["elapsed_ms"] == 0
    assert set(rep) == {"command", "inputs", "verdicts", "tolerances", "version", "elapsed_ms"}


def test_analyze_disconnected(tmp_path, capsys):
    (tmp_path / "d.txt").write_text("leader v1\nv1 v2 1\nnode v3\n")
    code, rep, _ = run(capsys, "analyze", tmp_path / "d.txt")
    assert code == 0 and not rep["verdicts"]["controllable"] and rep["verdicts"]["length"] is None


def test_negative_weight_is_rejected(tmp_path, capsys):
    (tmp_path / "bad.txt").write_text("leader v1\nv1 v2 -1\n")
    code, _, err = run(capsys, "analyze", tmp_path / "bad.txt")
    assert code == 2 and "edge weight must be positive" in err and "line 2" in err


def test_missing_field_names_the_field(tmp_path, capsys):
    (tmp_path / "bad.json").write_text('{"nodes": ["a"], "edges": []}')
    code, _, err = run(capsys, "analyze", tmp_path / "bad.json")
    assert code == 2 and "leader" in err


def test_nonfragility_path(path_file, capsys):
    code, rep, _ = run(capsys, "nonfragility", path_file)
    v = rep["verdicts"]
    assert v["brute_force"]["classification"] == "Fragile"
    assert v["graphic"]["graphic_k"] == 0
    assert v["consistency"] == {"brute_k_le_graphic_k": True, "equal": True}


def test_nonfragility_bound(tmp_path, capsys):
    f = write(tmp_path, "p15.json", MasSystem(path_graph(15), "v1"))
    code, _, err = run(capsys, "nonfragility", f, "--method", "brute")
    assert code == 3 and "graphic" in err


def test_synthesized_star_is_snf(tmp_path, capsys):
    f = write(tmp_path, "s.json", MasSystem(star_graph(3), "v1"))
    out = tmp_path / "snf.json"
    code, rep, _ = run(capsys, "synthesize", f, "--mode", "snf", "--out", out)
    assert code == 0 and rep["verdicts"]["verified"]["classification"] == "SNF"
    code, rep, _ = run(capsys, "nonfragility", out)
    assert rep["verdicts"]["brute_force"]["classification"] == "SNF"
    assert rep["verdicts"]["graphic"]["classification"] == "SNF"


def test_groups(star_file, capsys):
    code, rep, _ = run(capsys, "groups", star_file, "--check", "v2,v3", "--criterion", "both")
    v = rep["verdicts"]
    assert not v["rows"]["partially_controllable"] and not v["grammian"]["partially_controllable"]
    assert v["agreement"]
    code, rep, _ = run(capsys, "groups", star_file, "--maximal")
    assert rep["verdicts"]["size"] == rep["verdicts"]["rank_q"] == 2
    code, rep, _ = run(capsys, "groups", star_file, "--all")
    assert rep["verdicts"]["groups"] == [["v1", "v2"], ["v1", "v3"]]
    code, _, _ = run(capsys, "groups", star_file, "--maximal", "--all")
    assert code == 2


def test_preserve(tmp_path, path_file, capsys):
    code, rep, _ = run(capsys, "preserve", path_file, "--important", "v3", "--removed", "v2", "--min-break")
    v = rep["verdicts"]
    assert not v["structurally_preserved"] and v["violated_targets"] == ["v3"]
    assert v["min_break"] == {"exists": True, "size": 1, "witness": ["v2"]}
    code, rep, _ = run(capsys, "preserve", path_file, "--important", "v3", "--removed", "")
    assert rep["verdicts"]["structurally_preserved"] and rep["verdicts"]["numeric"]["partially_controllable"]


def test_steer(tmp_path, capsys):
    f = write(tmp_path, "e.json", MasSystem(path_graph(2), "v1"))
    csv_path = tmp_path / "traj.csv"
    code, rep, _ = run(capsys, "steer", f, "--targets", "v1=1,v2=1", "--out", csv_path)
    assert code == 0 and rep["verdicts"]["max_target_error"] <= 1e-6
    assert csv_path.read_text().splitlines()[0] == "time,v1,v2"
    code, _, err = run(capsys, "steer", f, "--targets", "v1")
    assert code == 2


def test_steer_infeasible(star_file, capsys):
    code, _, err = run(capsys, "steer", star_file, "--targets", "v2=1,v3=2")
    assert code == 3 and "not partially controllable" in err


def test_reports_are_byte_stable(star_file, capsys):
    outs = []
    for _ in range(2):
        main(["synthesize", star_file, "--mode", "preserve", "--important", "v3", "--no-timing"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_env_seed_overrides(star_file, capsys, monkeypatch):
    monkeypatch.setenv("NETCTRL_SEED", "7")
    code, rep, _ = run(capsys, "synthesize", star_file, "--mode", "preserve", "--important", "v3")
    assert rep["verdicts"]["seed"] == 7
    monkeypatch.setenv("NETCTRL_SEED", "x")
    code, _, _ = run(capsys, "synthesize", star_file, "--mode", "preserve", "--important", "v3")
    assert code == 2


def test_unreadable_file(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", tmp_path / "nope.json")
    assert code == 2 and "cannot read" in err


json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-3, 3) | st.floats() | st.text(string.ascii_letters + " ", max_size=3),
    lambda kids: st.lists(kids, max_size=3) | st.dictionaries(st.sampled_from(["u", "v", "w", "x"]), kids, max_size=4),
    max_leaves=12,
)


@settings(max_examples=80, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(
    st.fixed_dictionaries(
        {"nodes": st.lists(st.sampled_from(["a", "b", "c", "", 1]) | json_values, max_size=4)},
        optional={"leader": st.sampled_from(["a", "b", "z"]) | json_values, "edges": st.lists(json_values, max_size=4)},
    ),
    st.sampled_from(["analyze", "nonfragility", "groups --all", "preserve --important b --min-break"]),
)
def test_fuzzed_documents_never_crash(tmp_path, capsys, doc, command):
    path = tmp_path / "fuzz.json"
    path.write_text(json.dumps(doc))
    cmd, *rest = command.split()
    code = main([cmd, str(path), *rest, "--no-timing"])
    capsys.readouterr()
    assert code in (0, 2, 3)


@settings(max_examples=80, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.binary(max_size=80) | st.text(max_size=80))
def test_fuzzed_bytes_never_crash(tmp_path, capsys, blob):
    path = tmp_path / "fuzz.txt"
    if isinstance(blob, bytes):
        path.write_bytes(blob)
    else:
        path.write_text(blob, encoding="utf-8")
    code = main(["analyze", str(path), "--no-timing"])
    capsys.readouterr()
    assert code in (0, 2, 3)

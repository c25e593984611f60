import io
import json

import pytest

from legendrian_calculus.data import CORPUS_ENV
from legendrian_calculus.run import dispatch


@pytest.fixture(autouse=True)
def bundled_corpus(monkeypatch):
    monkeypatch.delenv(CORPUS_ENV, raising=False)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_front_invariants():
    assert run_json("front", "invariants", "trefoil") == {"cusps": 4, "crossings": 3, "writhe": 3, "r": 0, "tb": 1}


def test_front_validate_text():
    code, out, _ = run("front", "validate", "unknot")
    assert code == 0
    assert "valid: True" in out.splitlines()
    assert "tb: -1" in out.splitlines()


def test_invalid_front_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"format": 1, "kind": "front", "events": [["X", 1]]}), encoding="utf-8")
    code, out, err = run("front", "validate", str(path))
    assert code == 1
    assert out == ""
    assert err.startswith("CorpusLoadError")


def test_front_stabilize():
    result = run_json("front", "stabilize", "unknot", "--i", "1")
    assert result["events"] == [["L", 1], ["L", 2], ["R", 1], ["R", 1]]
    assert (result["tb"], result["r"]) == (-2, 1)


def test_front_moves():
    listed = run_json("front", "move", "triple_point_unknot")["moves"]
    assert ["triple-point", 2, 0] in listed
    moved = run_json("front", "move", "triple_point_unknot", "--move", "triple-point", "--index", "2")
    assert moved["events"][2:5] == [["X", 1], ["X", 2], ["X", 1]]
    assert moved["tb"] == -3


def test_front_to_framed():
    result = run_json("front", "to-framed", "trefoil")
    assert result["offset"] == -2
    assert len(result["gauss"]) == 6


def test_framed_commands():
    assert run_json("framed", "sl", "trefoil") == {"self_linking": 3, "writhe": 3, "offset": 0}
    assert run_json("framed", "obstruction", "unknot", "unknot_minus_one") == {"obstruction": 1, "homotopic": False}


def test_framed_apply_move():
    changed = run_json("framed", "apply-move", "positive_kink", "--move", "crossing-change",
                       "--params", '{"crossing": 1}')
    assert changed["self_linking"] == -2
    moved = run_json("framed", "apply-move", "r3_tangle", "--move", "r3", "--params", '{"a": 1, "b": 2, "c": 3}')
    assert moved["self_linking"] == 3
    assert moved["gauss"][0] == [2, "o", 1]


def test_framed_move_that_does_not_apply():
    code, _, err = run("framed", "apply-move", "trefoil", "--move", "kink-absorb", "--params", '{"crossing": 1}')
    assert code == 1
    assert err.startswith("MoveNotApplicable")


def test_path_delta_i():
    result = run_json("path", "delta-i", "essential_loop_crossing", "--filter", "alpha-nu", "--group", "free:2")
    assert result == {"delta_i": -1, "crossing_changes": 1, "is_loop": False, "filtered": -1}
    assert "filtered" not in run_json("path", "delta-i", "kink_flip_back")


def test_vassiliev_commands():
    assert run_json("vassiliev", "alt-sum", "kink") == {"alternating_sum": 2, "double_points": 1}
    order = run_json("vassiliev", "order-test", "--n", "1")
    assert order["order_at_most"] is True
    assert order["diagrams"] == 12
    assert run_json("vassiliev", "order-test", "--n", "0")["order_at_most"] is False
    extended = run_json("vassiliev", "extend", "trefoil_sl", "--n", "1", "--height", "2")
    assert extended["values"] == {"-3": -3, "-1": -1, "1": 1, "3": 3, "5": 5}
    assert run_json("vassiliev", "verify", "trefoil_sl", "--n", "1")["holds"] is True


def test_vassiliev_roundtrip():
    result = run_json("vassiliev", "roundtrip", "--n", "1", "--depth", "3")
    assert result["roundtrip"] is True
    assert [ladder["knot"] for ladder in result["ladders"]] == ["unknot", "trefoil"]
    squared = run_json("vassiliev", "roundtrip", "trefoil", "--invariant", "self-linking-squared")
    assert squared["roundtrip"] is False


def test_topology_commands():
    euler = run_json("topo", "euler-realizable", "torsion_euler")
    assert euler == {"h2": "Z/6", "euler": [2], "realizable": True, "half": [1]}
    verdict = run_json("topo", "condition-star", "s1xs2")
    assert (verdict["name"], verdict["status"], verdict["rule"]) == ("S1 x S2", "Fails", "InterpretationII")


def test_bundle_multiplication():
    assert run_json("topo", "bundle-mul", "--a", "1:a", "--b", "2:b") == {"product": {"k": 3, "w": "ab"}}
    assert run_json("topo", "bundle-mul", "--a", "0:b", "--b=-1:B") == {"product": {"k": 1, "w": ""}}
    code, _, _ = run("topo", "bundle-mul", "--a", "x:a")
    assert code == 2


def test_alpha_nu_command():
    result = run_json("topo", "alpha-nu", "--first", "a", "--second", "b",
                      "--other_first", "a", "--other_second", "abA")
    assert result == {"pair": ["a", "b"], "alpha_nu": 1, "equivalence": "Equal"}


def test_ttt_witness():
    result = run_json("topo", "ttt-witness", "--a", "0:b", "--b", "0:bb")
    assert result == {"witness": {"n": 1, "i": 2, "j": 0}, "verified": True}
    code, _, err = run("topo", "ttt-witness", "--a", "0:b", "--b", "1:")
    assert code == 1
    assert err.startswith("NotCommuting")


def test_corpus_list():
    names = run_json("corpus", "list")
    assert "trefoil" in names["fronts"]
    assert "s1xs2" in names["descriptors"]


def test_suite_run():
    code, out, _ = run("suite", "run", "--only", "topology", "--json")
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 5
    assert all(line["status"] == "pass" for line in lines)


@pytest.mark.parametrize("argv", [
    ("front", "explode"),
    ("front",),
    ("front", "invariants"),
    ("front", "invariants", "trefoil", "--frobnicate"),
    ("front", "move", "trefoil", "--move", "spin"),
])
def test_usage_errors(argv):
    code, out, _ = run(*argv)
    assert code == 2
    assert out == ""


def test_domain_errors():
    assert run("framed", "sl", "figure_eight")[0] == 1
    assert run("front", "stabilize", "unknot", "--i=-1")[0] == 1
    assert run("vassiliev", "verify", "trefoil_sl", "--n", "3")[0] == 1

import io
import json
from pathlib import Path

import pytest

from operad_forge.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"
T = "v1:c(v2:a(l1:c,l2:b),v3:b(l5:a,l3:a,l4:a))"
T1 = "v2:c(v1:c(l1:a,l2:b))"
T2 = "v1:a(v2:b(l1:c),l2:b)"
T3 = "v2:b(l3:a,v1:c(l2:a,l1:a))"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def data(name):
    return str(DATA / name)


def test_worked_composition_example():
    code, out, _ = call("sc", "compose", T, "--with", T1, "--with", T2, "--with", T3)
    assert code == 0
    assert out.strip() == "v2:c(v1:c(v3:a(v4:b(l1:c),l2:b),v6:b(l4:a,v5:c(l3:a,l5:a))))"


def test_circ_and_act():
    code, out, _ = call("sc", "circ", T, "-i", "2", T2)
    assert code == 0 and out.strip() == "v1:c(v2:a(v3:b(l1:c),l2:b),v4:b(l5:a,l3:a,l4:a))"
    code, out, _ = call("sc", "act", T, "--perm", "2,1,3")
    assert out.strip() == "v2:c(v1:a(l1:c,l2:b),v3:b(l5:a,l3:a,l4:a))"


def test_enumerate_two_lines():
    code, out, _ = call("sc", "enumerate", "--profiles", "(c;c);(c;c)", "--boundary", "(c;c)")
    assert code == 0
    assert out.splitlines() == ["v1:c(v2:c(l1:c))", "v2:c(v1:c(l1:c))"]


def test_enumerate_json():
    code, out, _ = call("sc", "enumerate", "--profiles", "", "--boundary", "(c;c)", "--format", "json")
    assert json.loads(out) == {"count": 1, "trees": ["e:c"]}


def test_tree_check(tmp_path):
    code, out, _ = call("tree", "check", "v1:c(v2:a(l2:b,l1:b),v4:b(l4:c,v3:a(),l3:a))")
    assert code == 0
    assert "boundary: (b,b,a,c;c)" in out
    f = tmp_path / "t.txt"
    f.write_text("v1:c(l1:a,l1:b)\n")
    code, out, _ = call("tree", "check", "-f", str(f))
    assert code == 1 and "duplicate leaf number 1" in out
    code, out, _ = call("tree", "check", "v1:c(l1:d)", "--colours", "a,c", "--format", "json")
    assert code == 1 and json.loads(out)["violations"] == ["unknown colour 'd'"]


def test_syntax_error_exit_2():
    code, _, err = call("tree", "check", "v1:c(l1:a")
    assert code == 2 and "position" in err
    code, out, _ = call("sc", "compose", "v1:c(", "--format", "json")
    assert code == 2 and json.loads(out)["error"] == "syntax"


def test_unknown_flag_rejected():
    assert call("sc", "enumerate", "--bogus")[0] == 2
    assert call()[0] == 2


def test_operad_verify_terminal():
    code, out, _ = call("operad", "verify", data("terminal_ab3.json"))
    assert code == 0
    assert out.startswith("OK (") and "checks)" in out.splitlines()[0]


def test_operad_verify_failure(tmp_path):
    doc = json.loads(Path(data("p_z3.json")).read_text())
    doc["circ"][0]["map"]["1,1"] = "0"
    f = tmp_path / "broken.json"
    f.write_text(json.dumps(doc))
    code, out, _ = call("operad", "verify", str(f), "--format", "json")
    report = json.loads(out)
    assert code == 1 and not report["ok"] and report["violations"]


def test_builders_emit_verifiable_json(tmp_path):
    for argv in (["operad", "ass", "--max-arity", "3"], ["operad", "terminal", "--colours", "a,b", "--max-arity", "2"],
                 ["operad", "from-monoid", data("monoid_z3.json")]):
        code, out, _ = call(*argv)
        assert code == 0
        f = tmp_path / "op.json"
        f.write_text(out)
        assert call("operad", "verify", str(f))[0] == 0


def test_gamma():
    code, out, _ = call("operad", "gamma", data("ass3.json"), "-e", "(2 1)", "-a", "(1),(2 1)")
    assert code == 0 and out.strip() == "(3 2 1) in (c,c,c;c)"
    code, _, err = call("operad", "gamma", data("terminal_a2.json"), "-e", "*", "-a", "*")
    assert code == 2 and "several components" in err
    code, out, _ = call("operad", "gamma", data("terminal_a2.json"), "-e", "*@(a,a;a)", "-a", "*@(;a),*@(a;a)")
    assert code == 0 and out.strip() == "* in (a;a)"


def test_free_enumerate():
    code, out, _ = call("free", "enumerate", data("binary_generator.json"), "--boundary", "(c,c,c;c)",
                        "--max-vertices", "2", "--exact")
    assert code == 0 and len(out.splitlines()) == 3
    code, _, err = call("free", "enumerate", data("binary_generator.json"), "--boundary", "(a;a)",
                        "--max-vertices", "1")
    assert code == 2 and "not in the collection" in err


def test_algebra_commands():
    assert call("algebra", "verify", data("z3_regular.json"))[0] == 0
    code, out, _ = call("algebra", "verify", data("z3_broken.json"))
    assert code == 1 and "composition not respected" in out
    assert call("algebra", "map-check", data("z3_regular.json"), data("z3_point.json"), data("collapse.json"))[0] == 0
    assert call("algebra", "map-check", data("z3_point.json"), data("z3_regular.json"), data("collapse.json"))[0] == 1


def test_roundtrip():
    code, out, _ = call("roundtrip", data("p_z3.json"), "--max-vertices", "3")
    assert code == 0 and out.startswith("OK")


def test_missing_file_exit_2():
    code, _, err = call("operad", "verify", "/nonexistent/op.json")
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("argv", [
    ["operad", "verify", data("ass3.json")],
    ["sc", "enumerate", "--profiles", "(a,b;c);(b,b;a)", "--boundary", "(a,b,b;c)"],
    ["free", "enumerate", data("binary_generator.json"), "--boundary", "(c,c,c,c;c)", "--max-vertices", "3"],
])
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_output_is_deterministic(argv, fmt):
    first = call(*argv, "--format", fmt)
    assert first == call(*argv, "--format", fmt)
    assert first[0] == 0


def test_json_mirrors_text_report():
    _, text, _ = call("operad", "verify", data("ass3.json"))
    _, js, _ = call("operad", "verify", data("ass3.json"), "--format", "json")
    report = json.loads(js)
    assert text.splitlines()[0] == f"OK ({report['checks']} checks)"

import json

import pytest

from icsheaf.cli import main

SPHERE = {"vertices": ["0", "1", "2", "3"],
          "maximal_simplices": [["0", "1", "2"], ["0", "1", "3"], ["0", "2", "3"], ["1", "2", "3"]]}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return {
        "complex": write("s2.json", dict(SPHERE, depth={"0": 2})),
        "bare": write("bare.json", SPHERE),
        "point": write("point.json", {"depth": {"0": 2}}),
        "trivial": write("trivial.json", {"depth": {}}),
        "bad": write("bad.json", {"depth": {"0,1": 1}}),
        "sigma": write("sigma.json", ["0"]),
        "coeffs": write("g.json", {"rank": 2}),
        "tmp": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("args,want", [
    ([], [1, 0, 0]),
    (["--strat", "TRIVIAL", "--perversity", "zero"], [1, 0, 1]),
    (["--field", "Fp:2", "--reduce"], [1, 0, 0]),
    (["--perversity", "[0,1]"], [1, 0, 0]),
])
def test_ih(capsys, files, args, want):
    args = [files["trivial"] if a == "TRIVIAL" else a for a in args]
    code, out, _ = run(capsys, "ih", files["complex"], *args)
    assert code == 0 and json.loads(out)["ih"] == want


def test_ih_coefficients_and_stages(capsys, files):
    dump = files["tmp"] / "sheaf.json"
    code, out, _ = run(capsys, "ih", files["complex"], "--coeffs", files["coeffs"], "--retain-stages",
                       "--dump-sheaf", str(dump))
    rep = json.loads(out)
    assert code == 0 and rep["ih"] == [2, 0, 0]
    assert sorted(rep["stages"]) == ["1", "2", "3"]
    assert json.loads(dump.read_text())["field"] == "Q"


def test_malformed_depth_exits_2(capsys, files):
    code, out, err = run(capsys, "ih", files["bare"], "--strat", files["bad"])
    assert code == 2 and out == ""
    assert err.startswith("NotClosed(1)")


@pytest.mark.parametrize("argv", [
    ["ih", "missing.json"],
    ["ih", "COMPLEX", "--perversity", "[0,3]"],
    ["ih", "COMPLEX", "--field", "Fp:9"],
])
def test_bad_input_exits_2(capsys, files, argv):
    argv = [files["complex"] if a == "COMPLEX" else a for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_compare_equal_and_not_subject(capsys, files):
    code, out, _ = run(capsys, "compare", files["bare"], "--sigma", files["sigma"],
                       "--strat", files["point"], "--strat", files["point"])
    assert code == 0 and json.loads(out)["equal"]
    code, _, err = run(capsys, "compare", files["bare"], "--sigma", files["sigma"],
                       "--strat", files["point"], "--strat", files["trivial"])
    assert code == 2 and "not subject" in err


def test_compare_reports_difference(capsys, files, tmp_path):
    # same singular set, but the point sits in codimension one instead of two
    low = tmp_path / "low.json"
    low.write_text(json.dumps({"depth": {"0": 1}}))
    code, out, _ = run(capsys, "compare", files["bare"], "--sigma", files["sigma"], "--perversity", "[0,1]",
                       "--strat", files["point"], "--strat", str(low), "--output", "md")
    assert code == 1 and "equal: False" in out
    code, out, _ = run(capsys, "compare", files["bare"], "--sigma", files["sigma"], "--perversity", "[0,1]",
                       "--strat", files["point"], "--strat", str(low))
    assert json.loads(out)["first_difference"] == {"strat": str(low), "degree": 2, "values": [0, 1]}


def test_axioms_against_constant(capsys, files):
    code, out, _ = run(capsys, "axioms", files["complex"], "--systems", "AX2", "AX2'", "--against-constant")
    rep = json.loads(out)["reports"]
    assert code == 0
    assert [r["pass"] for r in rep["deligne"]] == [True, True]
    assert [r["pass"] for r in rep["constant"]] == [True, False]


def test_axioms_ultra_notes_infinite_threshold(capsys, files):
    code, out, _ = run(capsys, "axioms", files["complex"], "--systems", "AX3")
    rep = json.loads(out)["reports"]["deligne"][0]
    assert rep["pass"] and rep["notes"]["c"] == "inf"


def test_check_and_markdown(capsys, files):
    code, out, _ = run(capsys, "check", files["complex"], "--output", "md")
    assert code == 0 and out.startswith("# icsheaf check")


def test_output_is_byte_identical(capsys, files):
    a = run(capsys, "axioms", files["complex"], "--against-constant")[1]
    b = run(capsys, "axioms", files["complex"], "--against-constant")[1]
    assert a == b


@pytest.mark.parametrize("extra", [[], ["--field", "F2"], ["--reduce"]])
def test_worked_examples_quick(capsys, extra):
    code, out, _ = run(capsys, "paper-examples", "--quick", *extra)
    rep = json.loads(out)
    assert code == 0 and rep["all_match"]
    assert "seconds" not in rep["examples"][0]


@pytest.mark.slow
def test_worked_examples_full(capsys):
    code, out, _ = run(capsys, "paper-examples", "--reduce", "--output", "md")
    assert code == 0 and "all match: True" in out

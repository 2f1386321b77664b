import json
import subprocess
import sys
from fractions import Fraction

import pytest

from chanprob.cli import main

CYCLIC = """domain D { d0 d1 }
node A : D <- B { (d0) -> 1: d0
 (d1) -> 1: d1 }
node B : D <- A { (d0) -> 1: d0
 (d1) -> 1: d1 }
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "student.bn")
    assert code == 0 and "ok" in out


def test_validate_cycle(tmp_path, capsys):
    f = tmp_path / "cyc.bn"
    f.write_text(CYCLIC)
    code, _, err = run(capsys, "validate", str(f))
    assert code == 2 and "Cycle" in err


def test_validate_garbage(tmp_path, capsys):
    f = tmp_path / "junk.bn"
    f.write_bytes(b"\xff\xfe\x00garbage {{{")
    assert run(capsys, "validate", str(f))[0] == 1
    f.write_text("node node node")
    code, _, err = run(capsys, "validate", str(f))
    assert code == 1 and "1:" in err


def test_infer_letter_prior(capsys):
    code, out, _ = run(capsys, "infer", "student.bn", "--target", "Letter")
    assert code == 0
    assert out.splitlines()[0] == "0.4977|l0> + 0.5023|l1>"
    code, out, _ = run(capsys, "infer", "student.bn", "--target", "Letter", "--digits", "3")
    assert out.splitlines()[0] == "0.498|l0> + 0.502|l1>"


def test_infer_soft_evidence(capsys):
    code, out, _ = run(capsys, "infer", "burglar.bn", "--target", "Burglar",
                       "--evidence", "Alarm~{a:0.7,na:0.3}")
    assert code == 0
    assert out.splitlines()[0] == "0.0229|b> + 0.9771|nb>"


def test_infer_both_methods(capsys):
    code, out, err = run(capsys, "infer", "student.bn", "--target", "Intelligence",
                         "--evidence", "Grade=g3", "--evidence", "SAT=s1", "--method", "both",
                         "--timings")
    assert code == 0
    assert out.splitlines()[0] == "0.4217|i0> + 0.5783|i1>"
    assert "crossover" in err and "transformer" in err
    assert "crossover" not in out


def test_infer_json_is_exact(capsys):
    code, out, _ = run(capsys, "infer", "student.bn", "-t", "Intelligence", "-e", "Grade=g3",
                       "--format", "json", "--digits", "1")
    obj = json.loads(out)
    assert obj["method"] == "both"
    w = {e["elem"][0]: Fraction(int(e["num"]), int(e["den"])) for e in obj["dist"]["weights"]}
    assert w == {"i0": Fraction(35, 38), "i1": Fraction(3, 38)}
    assert obj["validity"]["num"] == "437"


def test_infer_zero_validity(capsys):
    code, _, _ = run(capsys, "infer", "burglar.bn", "-t", "Burglar",
                     "-e", "Earthquake=ne", "-e", "Radio=r")
    assert code == 3


def test_infer_engine_mismatch(capsys, monkeypatch):
    from chanprob import network
    from chanprob.core import uniform

    real = network.transformer_infer

    def skewed(*a):
        res = real(*a)
        res.dist = uniform(res.dist.domain)
        return res

    monkeypatch.setattr(network, "transformer_infer", skewed)
    assert run(capsys, "infer", "student.bn", "-t", "Letter")[0] == 4


@pytest.mark.parametrize("argv, code", [
    (["infer", "student.bn", "-t", "Nope"], 2),
    (["infer", "student.bn", "-t", "Letter", "-e", "Grade=g9"], 2),
    (["infer", "student.bn", "-t", "Letter", "-e", "Grade"], 1),
    (["infer", "missing.bn", "-t", "Letter"], 1),
])
def test_infer_errors(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_digits_must_be_positive(capsys):
    with pytest.raises(SystemExit):
        main(["infer", "student.bn", "-t", "Letter", "--digits", "0"])


def test_joint(capsys):
    code, out, _ = run(capsys, "joint", "student.bn")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 1 + 48
    code, out, _ = run(capsys, "joint", "student.bn", "--format", "json")
    assert len(json.loads(out)["weights"]) == 48


def test_disintegrate(capsys):
    code, out, _ = run(capsys, "disintegrate", "twofactor.json", "--given", "1", "--target", "2")
    rows = {r["elem"][0]: [Fraction(int(w["num"]), int(w["den"])) for w in r["weights"]]
            for r in json.loads(out)["rows"]}
    assert rows == {"x": [Fraction(1, 3), Fraction(2, 3)], "y": [Fraction(3, 5), Fraction(2, 5)]}


def test_disintegrate_flags_empty_rows(tmp_path, capsys):
    f = tmp_path / "j.json"
    f.write_text('{"domain": [["x", "y"], ["a", "b"]], "weights": ['
                 '{"elem": ["x", "a"], "weight": "1"}]}')
    code, _, err = run(capsys, "disintegrate", str(f))
    assert code == 0 and "'y'" in err


def test_dot(capsys):
    code, out, _ = run(capsys, "dot", "student.bn")
    assert code == 0 and out.count("->") == 4


def test_check(capsys):
    code, out, _ = run(capsys, "check", "student.bn", "--samples", "20", "--seed", "7")
    assert code == 0 and "FAIL" not in out


def test_output_is_deterministic(capsys):
    first = run(capsys, "check", "burglar.bn", "--samples", "5", "--seed", "1")
    second = run(capsys, "check", "burglar.bn", "--samples", "5", "--seed", "1")
    assert first[:2] == second[:2]
    assert run(capsys, "joint", "student.bn")[1] == run(capsys, "joint", "student.bn")[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "chanprob", "infer", "student.bn",
                           "-t", "Letter", "-e", "Intelligence=i0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("0.6114|l0> + 0.3886|l1>")

"""Golden-file tests for the command line.

Run ``python tests/test_cli.py --regen`` to rewrite the golden outputs after
an intentional format change, then review the diff.
"""
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from slpkit.cli import run_command

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

# (name, argv, exit code); paths are relative to tests/data
CASES = [
    ("hilbert", ["hilbert", "ex41.ideal"], 0),
    ("decompose", ["decompose", "ex41.ideal", "--form", "0,1"], 0),
    ("decompose_auto", ["decompose", "ci35.json", "--auto"], 0),
    ("slp_holds", ["slp", "ex41.ideal", "--form", "0,1"], 0),
    ("slp_fails", ["slp", "ex42_m.ideal", "--form", "1,0"], 1),
    ("slp_not_found", ["slp", "cp22.ideal", "--char", "2"], 1),
    ("wlp", ["wlp", "ex41.ideal", "--form", "0,1"], 0),
    ("class_h_no", ["class-h", "ex41.ideal"], 1),
    ("class_h_yes", ["class-h", "ci35.json"], 0),
    ("almost_centered_no", ["almost-centered", "ex41.ideal", "--form", "0,1"], 1),
    ("almost_centered_yes", ["almost-centered", "ci35.json"], 0),
    ("almost_centered_not_slp", ["almost-centered", "cp22.ideal", "--form", "1,0"], 1),
    ("diagram", ["diagram", "ex41.ideal", "--form", "0,1"], 0),
    ("diagram_m3", ["diagram", "ex41.ideal", "--form", "0,1", "--m", "3"], 0),
    ("tensor", ["tensor", "ex42_m.ideal", "ex42_n.ideal", "--form", "0,1,0,1"], 1),
    ("tensor_symmetric", ["tensor", "cp22.ideal", "ci35.json"], 0),
    ("extend", ["extend", "ex41.ideal", "--m", "3", "--form", "0,1"], 1),
    ("extend_ok", ["extend", "ex41.ideal", "--m", "2", "--form", "0,1"], 0),
    ("minimal_failing_m", ["minimal-failing-m", "ex41.ideal", "--form", "0,1"], 1),
    ("minimal_failing_m_none", ["minimal-failing-m", "ci35.json", "--m-max", "8"], 0),
    ("theorem_310", ["theorem-310", "ex41.ideal", "--form", "0,1"], 1),
    ("theorem_310_json", ["theorem-310", "ex41.ideal", "--form", "0,1", "--json"], 1),
    ("theorem_310_ci", ["theorem-310", "ci35.json"], 0),
    ("char_p_2", ["char-p", "cp22.ideal", "--p", "2", "--form", "1,1"], 1),
    ("char_p_3", ["char-p", "cp22.ideal", "--p", "3", "--form", "1,1"], 0),
    ("char_p_json", ["char-p", "cp22.ideal", "--p", "2", "--form", "1,1", "--json"], 1),
    ("monomial_ci", ["monomial-ci", "--exps", "3,5"], 0),
    ("module_json", ["decompose", "module.json", "--form", "1,1", "--json"], 0),
    ("harness", ["harness", "--trials", "5", "--max-socle", "5"], 0),
    ("harness_inject", ["harness", "--trials", "1", "--inject", "ex41.ideal", "--json"], 0),
    ("harness_one_var", ["harness", "--trials", "10", "--max-vars", "1"], 0),
]

ERRORS = [
    (["hilbert", "bad_exponent.ideal"], "line 3, column 3"),
    (["hilbert", "not_artinian.ideal"], "Artinian"),
    (["hilbert", "missing.ideal"], "cannot read"),
    (["slp", "ex41.ideal", "--char", "4"], "prime"),
    (["slp", "ex41.ideal", "--form", "0,0"], "zero"),
    (["slp", "ex41.ideal", "--form", "1"], "coefficients"),
    (["slp", "ex41.ideal", "--form", "1,abc"], "form"),
    (["monomial-ci", "--exps", "2,0"], "positive"),
    (["extend", "ex41.ideal", "--m", "0"], "m"),
]


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(DATA / a) if (DATA / a).suffix in (".ideal", ".json") else a
                        for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code):
    got_code, out, err = run(argv)
    assert got_code == code, err
    text = out.replace(str(DATA) + "/", "")
    assert text == (GOLDEN / f"{name}.txt").read_text()


@pytest.mark.parametrize("argv,message", ERRORS, ids=[" ".join(e[0]) for e in ERRORS])
def test_input_errors_exit_two(argv, message):
    code, out, err = run(argv)
    assert code == 2 and out == ""
    assert message in err


def test_usage_error_exits_two():
    assert run(["no-such-command"])[0] == 2
    assert run(["extend", "ex41.ideal"])[0] == 2


def test_json_reports_are_byte_identical():
    for name, argv, _ in CASES:
        argv = argv if "--json" in argv else argv + ["--json"]
        first, second = run(argv), run(argv)
        assert first == second, name
        if first[1]:
            json.loads(first[1])


def test_report_fields():
    _, out, _ = run(["theorem-310", "ex41.ideal", "--form", "0,1", "--json"])
    rep = json.loads(out)
    assert rep["verdicts"] == {"almost_centered": False, "class_h": False, "consistent": True,
                               "extensions_all_pass": False}
    assert rep["witnesses"]["failure"] == {"m": 3, "a": 3, "d": 1}
    assert rep["decomposition"] == [[0, 5], [1, 1]]
    assert "timings" not in rep
    _, out, _ = run(["char-p", "cp22.ideal", "--p", "2", "--form", "1,1", "--json"])
    rep = json.loads(out)
    assert rep["witnesses"]["failure"]["a"] == 2 and rep["witnesses"]["failure"]["d"] == 0


def test_timings_only_on_request():
    _, out, _ = run(["hilbert", "ex41.ideal", "--json", "--timings"])
    assert "seconds" in json.loads(out)["timings"]


def test_json_ideal_round_trips(tmp_path):
    _, out, _ = run(["hilbert", "ex41.ideal", "--json"])
    (tmp_path / "echo.json").write_text(json.dumps(json.loads(out)["inputs"][0]))
    code, again, _ = run(["hilbert", str(tmp_path / "echo.json")])
    assert code == 0 and again == (GOLDEN / "hilbert.txt").read_text()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "slpkit", "slp", str(DATA / "ex41.ideal"),
                           "--form", "0,1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "SLP holds" in proc.stdout


def _regenerate():
    GOLDEN.mkdir(exist_ok=True)
    for name, argv, code in CASES:
        got, out, err = run(argv)
        if got != code:
            print(f"{name}: exit {got}, expected {code}\n{err}")
        (GOLDEN / f"{name}.txt").write_text(out.replace(str(DATA) + "/", ""))


if __name__ == "__main__":
    if "--regen" in sys.argv:
        _regenerate()

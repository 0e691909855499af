import csv
import io
import json
import subprocess
import sys

import pytest

from greensum import cli, verification

FIELDS = {
    "check_id", "module", "criterion", "description", "value", "reference", "provenance",
    "abs_error", "rel_error", "tolerance", "kind", "passed", "note",
}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sumrule_box(capsys):
    code, out, _ = run(capsys, "sumrule", "--box", "1", "--k", "-2")
    assert code == 0
    assert out.startswith("PASS boxlab.sumrule.case1.k-2: value=0.166666666667")
    code, out, _ = run(capsys, "sumrule", "--box", "4", "--k", "-4")
    assert code == 0 and "reference=0.0111111111111" in out


def test_sumrule_oscillator(capsys):
    code, out, _ = run(capsys, "sumrule", "--oscillator")
    assert code == 0
    assert out.count("PASS") == 2


def test_sumrule_powerlaw(capsys, tmp_path):
    target = tmp_path / "alt.json"
    code, out, _ = run(capsys, "sumrule", "--powerlaw", "4", "--alternating", "--out", str(target))
    assert code == 0 and out.startswith("PASS powerlaw.sumrule.alpha4.alternating")
    doc = json.loads(target.read_text())
    assert doc["checks"][0]["provenance"] == "oracle"


def test_failing_check_exits_one(capsys):
    code, out, _ = run(capsys, "sumrule", "--powerlaw", "4", "--states", "3", "--tol", "1e-12")
    assert code == 1 and out.startswith("FAIL")


@pytest.mark.parametrize(
    "argv",
    [
        ("sumrule", "--box", "5", "--k", "-2"),
        ("sumrule", "--box", "1", "--k", "-3"),
        ("sumrule", "--box", "1"),
        ("sumrule", "--powerlaw", "2", "--even"),
        ("verify", "--only", "nope"),
        ("figure", "--n", "3"),
        ("figure", "--n", "4", "--samples", "1"),
        ("eigs", "--alpha", "4", "--parity", "even", "--count", "0"),
        ("eigs", "--alpha", "-1", "--parity", "even", "--count", "2"),
        ("identity", "--id", "q9"),
        ("identity", "--id", "q1", "--grid", "0"),
    ],
)
def test_selector_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify"])
    assert exc.value.code == 2


def test_verify_only_module(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--only", "susy", "--out", str(target))
    assert code == 0
    doc = json.loads(target.read_text())
    assert {c["module"] for c in doc["checks"]} == {"susy"}
    assert all(set(c) == FIELDS for c in doc["checks"])
    ids = [c["check_id"] for c in doc["checks"]]
    assert ids == sorted(ids)
    assert out.strip().endswith(f"{len(ids)} checks, 0 failed")


def test_verify_output_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "--only", "spectral", "--out", str(a))
    run(capsys, "verify", "--only", "spectral", "--out", str(b), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes()


def test_verify_timing_field(capsys, tmp_path):
    target = tmp_path / "t.json"
    run(capsys, "verify", "--only", "specfun", "--out", str(target), "--timing")
    assert "wall_time" in json.loads(target.read_text())["checks"][0]


def test_suite_covers_every_module():
    assert set(verification.MODULES) == {
        "boxlab", "eigensolve", "powerlaw", "quadrature", "reflectionless", "specfun", "spectral", "susy",
    }
    assert {c.criterion for c in verification.CHECKS} == set(range(1, 13))


def test_figure(capsys, tmp_path):
    target = tmp_path / "fig.csv"
    code, _, _ = run(capsys, "figure", "--n", "4", "--out", str(target))
    assert code == 0
    rows = list(csv.reader(io.StringIO(target.read_text())))
    assert rows[0] == ["x", "U", "U_partner", "groundstate"]
    body = rows[1:]
    assert len(body) == 801
    assert float(body[0][1]) == 16.0 and float(body[-1][1]) == 16.0
    for left, right in zip(body, body[::-1]):
        assert left[2] == right[2] and left[3] == right[3]
    assert all("e" not in cell.lower() for row in body for cell in row)


def test_figure_stdout_and_range(capsys):
    code, out, _ = run(capsys, "figure", "--n", "2", "--range", "-1", "1", "--samples", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    assert lines[3].startswith("0.")


def test_eigs(capsys):
    code, out, _ = run(capsys, "eigs", "--alpha", "2", "--parity", "odd", "--count", "3")
    assert code == 0
    values = [float(line.split()[1]) for line in out.strip().splitlines()]
    assert values == pytest.approx([3, 7, 11], abs=1e-6)
    code, out, _ = run(capsys, "eigs", "--alpha", "4", "--parity", "even", "--count", "2", "--partner")
    assert code == 0 and abs(float(out.split()[1])) < 1e-5


def test_identity(capsys):
    code, out, _ = run(capsys, "identity", "--id", "q6", "--grid", "3")
    assert code == 0 and out.startswith("PASS boxlab.identity.q6")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "greensum", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "greensum" in proc.stdout

import json
import subprocess
import sys

import pytest

from regbound import cli
from regbound.verifier import CheckOutcome, SuiteReport

PROG = "ring Q[x0..x2];\nideal I = (x0^2, x0*x1);\n"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants_structured(capsys):
    code, out, _ = run(capsys, "-e", PROG + "invariants I", "--format", "structured")
    assert code == 0
    rec = json.loads(out)
    assert (rec["reg"], rec["bdeg"], rec["hdeg"], rec["deg"]) == ("1", "2", "2", "1")
    assert rec["betti"] == [["0", "0", "1"], ["1", "2", "2"], ["2", "3", "1"]]


def test_text_commands(capsys):
    for cmd in ("invariants", "gin", "hilbert", "resolve", "cohomology"):
        code, out, _ = run(capsys, "-e", PROG + f"{cmd} I")
        assert code == 0 and out.strip()
    code, out, _ = run(capsys, "-e", PROG + "hilbert I")
    assert "1 - 2*z^2 + z^3" in out


def test_gin_structured(capsys):
    code, out, _ = run(capsys, "-e", PROG + "gin I", "--format", "structured")
    rec = json.loads(out)
    assert code == 0 and rec["borel_fixed"] is True


def test_stdin_and_file(capsys, tmp_path, monkeypatch):
    p = tmp_path / "in.txt"
    p.write_text(PROG + "hilbert I\n")
    code, from_file, _ = run(capsys, str(p))
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(PROG + "hilbert I\n"))
    code2, from_stdin, _ = run(capsys, "-")
    assert code == code2 == 0 and from_file == from_stdin


@pytest.mark.parametrize(
    "argv",
    [
        ["-e", "ring Q[x0..x1]; ideal I = (x0^2 + x1); invariants I"],
        ["-e", "ring Q[x0..x1]; ideal I = (x0^2, y); invariants I"],
        ["-e", "ring Q[x0..x1]; invariants J"],
        ["-e", "ring Q[x0..x1]; ideal I = (x0)"],
        ["verify", "--suite", "bogus"],
        ["family", "--n", "2", "--t", "3", "--degs", "1"],
        ["/nonexistent/file"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_parse_error_position(capsys):
    code, _, err = run(capsys, "-e", "ring Q[x0..x1];\nideal I = (x0^2 + x1);\ninvariants I")
    assert code == 2 and "line 2" in err


def test_characteristic_warning(capsys):
    code, _, err = run(capsys, "-e", "ring Fp(3)[x0..x1]; ideal I = (x0^3, x1^2); invariants I")
    assert code == 0 and "characteristic 3" in err


def test_family_command(capsys):
    code, out, _ = run(capsys, "family", "--n", "3", "--t", "0", "--degs", "1,1,1,1", "--format", "structured")
    rec = json.loads(out)
    assert code == 0 and rec["agree"] is True
    assert (rec["computed"]["reg"], rec["computed"]["bdeg"], rec["computed"]["hdeg"]) == ("3", "4", "5")


def test_family_explicit(capsys):
    code, out, _ = run(
        capsys, "family", "--n", "1", "--t", "0", "--degs", "1,1", "--explicit", "f1=x0; f0=x1; l0=x0", "--format", "structured"
    )
    assert code == 0 and json.loads(out)["agree"] is True


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "reg-bound", "--samples", "3", "--format", "structured")
    rec = json.loads(out)
    assert code == 0 and rec["ok"] is True and rec["failures"] == []


def test_verify_failure_exit_1(capsys, monkeypatch):
    def fake(suite, which, seed, samples, profile):
        rep = SuiteReport(seed, samples)
        rep.outcomes.append(CheckOutcome("reg-bound/bdeg", "ring Q[x0..x1]; ideal I = (x0); invariants I", seed, "fail", {"reg": 9}))
        return rep

    monkeypatch.setattr(cli, "run_suite", fake)
    code, out, _ = run(capsys, "verify", "--suite", "reg-bound")
    assert code == 1
    assert "FAIL reg-bound/bdeg" in out and "replay: ring Q" in out


def test_structured_output_byte_identical():
    argv = [sys.executable, "-m", "regbound.cli", "verify", "--suite", "hypsec", "--samples", "4", "--seed", "5", "--format", "structured"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_replay_of_failure_witness_runs(capsys):
    from regbound.verifier import random_module_stream, replay_text

    for M in random_module_stream(11, count=3):
        code, out, _ = run(capsys, "-e", replay_text(M), "--format", "structured")
        assert code == 0 and "reg" in json.loads(out)

"""Command-line surface: values, formats, exit codes, determinism."""

import json

import pytest

from tanglepoly.cli import main
from helpers import (
    CLASP_TEXT,
    SINGULAR_VIRTUAL_TREFOIL_TEXT,
    VIRTUAL_TREFOIL_TEXT,
)


@pytest.fixture
def clasp_file(tmp_path):
    path = tmp_path / "clasp.tangle"
    path.write_text(CLASP_TEXT)
    return str(path)


@pytest.fixture
def trefoil_file(tmp_path):
    path = tmp_path / "trefoil.tangle"
    path.write_text(VIRTUAL_TREFOIL_TEXT)
    return str(path)


@pytest.fixture
def singular_file(tmp_path):
    path = tmp_path / "singular.tangle"
    path.write_text(SINGULAR_VIRTUAL_TREFOIL_TEXT)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_clasp(capsys, clasp_file):
    code, out, _ = run(capsys, "compute", "-i", clasp_file, "--a", "1", "--b", "2")
    assert code == 0
    assert "plk: 3 t1 t2" in out
    assert "plkL: 1 t1 t2^-1 + 2 t1^-1 t2" in out
    assert "psc: 0" in out


def test_compute_trefoil(capsys, trefoil_file):
    code, out, _ = run(capsys, "compute", "-i", trefoil_file)
    assert code == 0
    assert "psc: -2 + 2 t1" in out


def test_compute_identity_braid(capsys, tmp_path):
    path = tmp_path / "id.tangle"
    path.write_text("tangle 2 2\ncomponent A long T1:in B1:out\n"
                    "component B long T2:in B2:out\n")
    code, out, _ = run(capsys, "compute", "-i", str(path))
    assert code == 0
    assert "psc: 0" in out and "plk: 0" in out and "plkL: 0" in out


def test_compute_json(capsys, clasp_file):
    # negative rationals need the --flag=value spelling
    code, out, _ = run(capsys, "compute", "-i", clasp_file, "--a", "2/3",
                       "--b=-1/5", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"psc", "plk", "plkL", "vlk", "wriggle"}
    assert data["plk"]["a"] == "2/3"
    assert data["plk"]["value"] == [{"coeff": "7/15", "exps": [1, 1]}]
    assert data["vlk"] == [[0, 1], [1, 0]]


def test_compute_rational_flag_rejected(capsys, clasp_file):
    for bad in ("abc", "1/0"):
        with pytest.raises(SystemExit) as info:
            main(["compute", "-i", clasp_file, "--a", bad])
        assert info.value.code == 2
        capsys.readouterr()


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.tangle"
    path.write_text("tangle 0 0\ncomponent K closed\nO1+ U2+\n")
    code, _, err = run(capsys, "compute", "-i", str(path))
    assert code == 2
    assert "dangling chord" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "compute", "-i", "/nonexistent/never.tangle")
    assert code == 2


def test_singular_input_rejected_by_compute(capsys, singular_file):
    code, _, err = run(capsys, "compute", "-i", singular_file)
    assert code == 3
    assert "derivative" in err


def test_derivative_on_singular(capsys, singular_file):
    code, out, _ = run(capsys, "derivative", "-i", singular_file)
    assert code == 0
    assert "singular chords: 1" in out
    assert "psc: -2 + 2 t1" in out


def test_derivative_two_singular_vanishes(capsys, tmp_path):
    path = tmp_path / "two.tangle"
    path.write_text("tangle 0 0\ncomponent K closed\nS1+ O3+ S2- S1+ U3+ S2-\n")
    code, out, _ = run(capsys, "derivative", "-i", str(path))
    assert code == 0
    assert "psc: 0" in out and "plk: 0" in out and "plkL: 0" in out


def test_derivative_matches_compute_without_singular(capsys, trefoil_file):
    code, out, _ = run(capsys, "derivative", "-i", trefoil_file)
    assert code == 0
    assert "psc: -2 + 2 t1" in out


def test_fuzz_success_and_determinism(capsys, clasp_file):
    args = ("fuzz", "-i", clasp_file, "--steps", "25", "--trials", "4",
            "--seed", "7")
    code, first, _ = run(capsys, *args)
    assert code == 0
    assert "fuzz ok" in first
    code, second, _ = run(capsys, *args)
    assert code == 0
    assert first == second
    code, third, _ = run(capsys, "fuzz", "-i", clasp_file, "--steps", "0",
                         "--trials", "2", "--seed", "7")
    assert code == 0


def test_fuzz_rejects_singular(capsys, singular_file):
    code, _, err = run(capsys, "fuzz", "-i", singular_file, "--steps", "1",
                       "--trials", "1")
    assert code == 3


def test_fuzz_counterexample_exit_code(capsys, clasp_file, monkeypatch):
    # legal moves never change the invariants, so fault-inject a broken
    # "move" to pin the counterexample contract: exit 4 plus both diagrams
    import tanglepoly.cli as cli
    from tanglepoly import parse

    broken = parse("tangle 2 2\ncomponent A long T1:in B1:out\nO1- U2+\n"
                   "component B long T2:in B2:out\nU1- O2+\n")

    def fake_walk(diagram, steps, seed, cap):
        return [diagram, broken]

    monkeypatch.setattr(cli, "random_walk", fake_walk)
    code, out, _ = run(capsys, "fuzz", "-i", clasp_file, "--steps", "1",
                       "--trials", "1")
    assert code == 4
    assert "FAIL" in out
    assert "before the move" in out and "after the move" in out


def test_sum_clasp_clasp(capsys, clasp_file):
    code, out, _ = run(capsys, "sum", "-i", clasp_file, "-i", clasp_file,
                       "--a", "1", "--b", "2")
    assert code == 0
    assert "additivity: PASS" in out
    assert "plk: 6 t1 t2" in out
    assert "relations: t1=u1 t2=u2" in out


def test_sum_with_identity(capsys, clasp_file, tmp_path):
    path = tmp_path / "id.tangle"
    path.write_text("tangle 2 2\ncomponent A long T1:in B1:out\n"
                    "component B long T2:in B2:out\n")
    code, out, _ = run(capsys, "sum", "-i", clasp_file, "-i", str(path),
                       "--a", "1", "--b", "2")
    assert code == 0
    assert "additivity: PASS" in out
    # the sum against the trivial braid keeps the clasp's invariants
    assert out.count("plk: 3 t1 t2") >= 2


def test_sum_incompatible(capsys, clasp_file, tmp_path):
    path = tmp_path / "one.tangle"
    path.write_text("tangle 1 1\ncomponent A long T1:in B1:out\n")
    code, _, err = run(capsys, "sum", "-i", clasp_file, "-i", str(path))
    assert code == 5
    assert "mismatch" in err


def test_sum_needs_two_inputs(capsys, clasp_file):
    code, _, err = run(capsys, "sum", "-i", clasp_file)
    assert code == 2


def test_gen_pipe_compute(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "3", "2")
    assert code == 0
    path = tmp_path / "gen.tangle"
    path.write_text(out)
    code, out, _ = run(capsys, "compute", "-i", str(path))
    assert code == 0
    assert "vlk:" in out
    assert ". 3" in out and "-2 ." in out


def test_gen_0_0_is_unlink(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "0", "0")
    assert code == 0
    path = tmp_path / "unlink.tangle"
    path.write_text(out)
    code, out, _ = run(capsys, "compute", "-i", str(path))
    assert code == 0
    assert "psc: 0" in out and "plk: 0" in out


def test_gen_separation_witness(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "2", "1")
    path = tmp_path / "sep.tangle"
    path.write_text(out)
    code, out, _ = run(capsys, "compute", "-i", str(path), "--a", "1", "--b", "2")
    assert code == 0
    assert "plk: 0" in out
    assert "plkL: 2 t1 t2^-1 + -2 t1^-1 t2" in out


def test_gen_negative(capsys):
    code, _, err = run(capsys, "gen", "-1", "2")
    assert code == 2


def test_stdin_input(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(CLASP_TEXT))
    code, out, _ = run(capsys, "compute", "-i", "-", "--a", "1", "--b", "2")
    assert code == 0
    assert "plk: 3 t1 t2" in out

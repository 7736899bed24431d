import random
import subprocess
import sys

import pytest

from divcodes.catalog import FamilyTag, construct, simplex
from divcodes.cli import main
from divcodes.code import direct_sum, extend_zeros, format_matrix, from_rows, parse_matrix, zero_code
from divcodes.field import field_of_order
from generators import shuffle_code


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(C, name="code.txt"):
        path = tmp_path / name
        path.write_text(format_matrix(C))
        return path

    return _write


def test_construct(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "SIM", 2, 3)
    assert code == 0
    C = parse_matrix(out)
    assert (C.n, C.k) == (7, 3) and C == simplex(2, 3)
    path = tmp_path / "pc.txt"
    assert run(capsys, "construct", "PC", 2, 7, 2, "-o", path)[0] == 0
    C = parse_matrix(path.read_text())
    assert (C.k, C.n) == (7, 16)
    _, out, _ = run(capsys, "construct", "RM", 2, 2)
    assert [line for line in out.splitlines() if not line.startswith("#")] == ["2 2 2", "10", "01"]


def test_construct_bad_spec(capsys):
    assert run(capsys, "construct", "RM", 2, 1)[0] == 2
    assert run(capsys, "construct", "SIM", 6, 2)[0] == 2
    assert run(capsys, "construct", "XX", 2, 2)[0] == 2


def test_analyze(capsys, write):
    code, out, _ = run(capsys, "analyze", write(simplex(2, 3)))
    assert code == 0
    assert "summary: constant weight 4, projective, indecomposable" in out
    assert "weight distribution: 0:1 4:7" in out
    assert "dual distribution: 0:1 3:7 4:7 7:1" in out
    assert "divisibility: 4" in out
    assert "pless moments: ok" in out
    _, out, _ = run(capsys, "analyze", write(construct(FamilyTag("RM", 2, 2))))
    assert "decomposable: 2 blocks" in out
    F = field_of_order(3)
    _, out, _ = run(capsys, "analyze", write(from_rows(F, 3, [[1, 0, 2], [0, 0, 0]])))
    assert "zero positions: [2]" in out
    assert "pless" not in out


def test_analyze_formats(capsys, write):
    path = write(simplex(2, 3))
    _, kv, _ = run(capsys, "analyze", path, "--format", "kv")
    assert "n_eff=7" in kv.splitlines()
    _, csv, _ = run(capsys, "analyze", path, "--format", "csv")
    assert csv.splitlines()[0] == "key,value" and "n,7" in csv.splitlines()


def test_analyze_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3 1\n12\n")
    code, _, err = run(capsys, "analyze", bad)
    assert code == 2 and "ParseError" in err
    assert run(capsys, "analyze", tmp_path / "missing.txt")[0] == 2


def test_classify(capsys, write):
    C = shuffle_code(direct_sum(simplex(2, 3), construct(FamilyTag("PC", 2, 4, 2))), random.Random(1))
    code, out, _ = run(capsys, "classify", write(C), "--delta", 4)
    assert code == 0
    assert out.splitlines()[:2] == ["1 x SIM(2,3)", "2 x PC(2,4)"]
    assert out.splitlines()[2:] == ["zeros: 0", "leftover_dim: 0"]


def test_classify_exit_codes(capsys, write):
    code, _, err = run(capsys, "classify", write(construct(FamilyTag("PC", 2, 4))), "--delta", 4)
    assert code == 1 and "NotDivisible" in err
    code, out, _ = run(capsys, "classify", write(zero_code(field_of_order(2), 5)), "--delta", 4)
    assert code == 0 and out == "zeros: 5\nleftover_dim: 0\n"
    left = direct_sum(simplex(2, 3), construct(FamilyTag("SIM", 2, 1, 8)))
    code, out, _ = run(capsys, "classify", write(left), "--delta", 4)
    assert code == 1 and "leftover_dim: 1" in out
    assert run(capsys, "classify", write(simplex(2, 3)))[0] == 2


def test_cap_exit_code(capsys, write):
    C = construct(FamilyTag("SIM", 2, 3, 2))
    code, _, err = run(capsys, "classify", write(C), "--delta", 8, "--cap", 4)
    assert code == 3 and "EnumerationTooLarge" in err


def test_check_lemmas(capsys, write):
    code, out, _ = run(capsys, "check-lemmas", write(simplex(2, 3)), "--delta", 4)
    assert code == 0
    assert "proper pairs: 21" in out and "equivalent pairs: 0" in out and "disjoint pairs: 0" in out
    assert "proper b values: 2" in out and "residual violations: 0" in out
    code, out, _ = run(capsys, "check-lemmas", write(direct_sum(simplex(2, 3), simplex(2, 3))), "--delta", 4)
    assert code == 0 and "disjoint pairs: 49" in out


def test_check_lemmas_surfaces_violation(capsys, write):
    corrupted = from_rows(field_of_order(2), 7, [[1, 1, 1, 1, 0, 0, 0], [0, 1, 1, 1, 1, 0, 0]])
    code, _, err = run(capsys, "check-lemmas", write(corrupted), "--delta", 4)
    assert code == 1 and "LemmaViolation" in err


def test_table1(capsys):
    code, out, _ = run(capsys, "table1", 2)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 18
    a_delta = [line.split(",")[2] for line in run(capsys, "table1", 2, "--format", "csv")[1].splitlines()[1:]]
    assert a_delta[:8] == ["0", "28", "21", "15", "16", "10", "11", "13"] and a_delta[-1] == "4"
    assert run(capsys, "table1", 0)[0] == 2


def test_fourdelta(capsys):
    code, out, _ = run(capsys, "fourdelta", 2)
    assert code == 0
    assert "weight-span dims: 8 7" in out and "extension fingerprints: 1" in out
    code, out, _ = run(capsys, "fourdelta", 3)
    assert code == 0
    assert "code 1: RM(2,5) ⊕ RM(2,5)" in out and "code 2" not in out
    assert run(capsys, "fourdelta", 1)[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "table1", 2, "--seedless")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_entry_point_is_deterministic(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text(format_matrix(extend_zeros(simplex(3, 2), 1)))
    cmd = [sys.executable, "-m", "divcodes", "analyze", str(path)]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and b"zero positions: [5]" in first

import subprocess
import sys

from locat.category import find_inverse
from locat.cli import main
from locat.fileformat import load

from .conftest import DATA


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", DATA / "fixP.cat")
    assert code == 0 and "7 morphisms" in out


def test_missing_file(capsys):
    code, _, err = run(capsys, "localize", "missing.cat", "--method", "fractions")
    assert code == 2 and "missing.cat" in err


def test_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.cat"
    bad.write_text("ob 0\nmor f : 0 -> 9\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "line 2" in err


def test_bad_arguments(capsys):
    assert run(capsys, "localize")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_equal(capsys):
    code, out, _ = run(capsys, "equal", DATA / "fixI.cat", "f.~f", "@0")
    assert code == 0 and out.startswith("Equal")
    assert "family 3" in out
    code, out, _ = run(capsys, "equal", DATA / "fixP.cat", "f.t.~t", "f")
    assert code == 0 and out.startswith("Equal")


def test_equal_outcomes(capsys):
    code, out, _ = run(capsys, "equal", DATA / "z2.cat", "z", "@0")
    assert code == 1 and out.startswith("Distinct")
    code, _, _ = run(capsys, "equal", DATA / "fixI.cat", "f", "@0")
    assert code == 1
    code, _, _ = run(capsys, "equal", DATA / "fixI.cat", "f.f", "@0")
    assert code == 2


def test_check_fractions(capsys):
    code, out, _ = run(capsys, "check-fractions", DATA / "fixI_sigma_all.cat")
    assert code == 0
    for name in "abcd":
        assert f"({name}) pass" in out
    code, out, _ = run(capsys, "check-fractions", DATA / "fixI.cat")
    assert code == 1 and "(a) fail" in out


def test_localize(capsys, tmp_path):
    out_file = tmp_path / "loc.cat"
    code, _, _ = run(capsys, "localize", DATA / "fixP.cat", "--method", "fractions", "-o", out_file)
    assert code == 0
    p = load(out_file)
    assert len(p.category) == 7 and p.mor_map["g"] == p.mor_map["f"]
    code, out, _ = run(capsys, "localize", DATA / "fixP.cat", "--method", "words")
    assert code == 0 and "family 4 instances: 13" in out
    code, _, _ = run(capsys, "localize", DATA / "fixP.cat", "--side", "right")
    assert code == 1
    code, out, _ = run(capsys, "localize", DATA / "fixI_sigma_all.cat", "--side", "right")
    assert code == 0 and out.count("\nmor ") == 2


def test_localize_deterministic(capsys):
    first = run(capsys, "localize", DATA / "fixP.cat")[1]
    assert run(capsys, "localize", DATA / "fixP.cat")[1] == first


def test_saturate(capsys):
    code, out, _ = run(capsys, "saturate", DATA / "fixI_sigma_all.cat")
    assert code == 0 and "sigma 1_0, 1_1, f" in out
    assert run(capsys, "saturate", DATA / "fixI.cat")[0] == 1


def test_groupoidify(capsys, tmp_path):
    out_file = tmp_path / "g.cat"
    code, _, _ = run(capsys, "groupoidify", DATA / "fixI_plain.cat", "-o", out_file)
    assert code == 0
    g = load(out_file).category
    assert len(g.objects) == 2 and len(g) == 4
    assert all(find_inverse(g, f) for f in g.morphisms)


def test_functor_bijection_command(capsys):
    code, out, _ = run(capsys, "lemma12", DATA / "fixI_sigma_all.cat", "--target", DATA / "walking_iso.cat")
    assert code == 0 and "functors from the localization: 4" in out
    assert run(capsys, "lemma12", DATA / "fixI.cat", "--target", DATA / "z2.cat")[0] == 1


def test_bridge_check(capsys):
    code, out, _ = run(capsys, "bridge-check", DATA / "fixI_sigma_all.cat", "--max-word-len", "3")
    assert code == 0 and "by fallback: 0" in out
    assert run(capsys, "bridge-check", DATA / "fixI.cat", "--max-word-len", "2")[0] == 1


def test_find_counterexample(capsys, tmp_path):
    code, out, _ = run(capsys, "find-counterexample", "--max-obj", "1", "--max-mor", "1")
    assert code == 1 and "NotFound" in out
    out_file = tmp_path / "cx.cat"
    code, out, _ = run(capsys, "find-counterexample", "-o", out_file)
    assert code == 0 and "FAIL" not in out
    p = load(out_file)
    assert len(p.category) == 7


def test_size_cap(capsys):
    code, _, err = run(
        capsys, "lemma12", DATA / "fixI_sigma_all.cat", "--target", DATA / "walking_iso.cat", "--cap", "2"
    )
    assert code == 3 and "size cap" in err


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "locat", "validate", str(DATA / "fixI.cat")], capture_output=True, text=True
    )
    assert result.returncode == 0

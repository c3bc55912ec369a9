import json

import pytest

from massey_tensors.cli import main
from massey_tensors.fileformat import dump
from massey_tensors.models import connected_sum_s2s6, torus_algebra


@pytest.fixture
def p3file(tmp_path):
    path = tmp_path / "p3.txt"
    assert main(["p3", "--rank", "2", "--out", str(path)]) == 0
    return str(path)


def run(capsys, *argv):
    capsys.readouterr()
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cohomology_machine_output(capsys, p3file):
    code, out, _ = run(capsys, "--machine", "cohomology", p3file)
    assert code == 0
    data = json.loads(out)
    assert data["degrees"]["2"]["betti"] == 2
    assert data["exit_code"] == 0


def test_machine_output_is_stable(capsys, p3file):
    _, a, _ = run(capsys, "--machine", "bianchi", p3file)
    _, b, _ = run(capsys, "--machine", "bianchi", p3file)
    assert a == b


def test_repdim(capsys):
    code, out, _ = run(capsys, "--machine", "repdim", "--rank", "3")
    data = json.loads(out)
    assert code == 0 and data["dim_R"] == 6 and data["agrees"]


def test_bianchi_reports_nonformality(capsys, p3file):
    code, out, _ = run(capsys, "bianchi", p3file)
    assert code == 0
    assert "Bianchi-Massey tensor nonzero: not formal" in out
    assert "choice: canonical" in out


def test_triple_without_vanishing_choice(capsys, p3file):
    code, out, _ = run(capsys, "triple", "--vanish", p3file)
    assert code == 1 and "no cochain choice" in out


def test_pentagonal_canonical_needs_orientation(capsys, p3file):
    code, out, _ = run(capsys, "pentagonal", "--canonical", p3file)
    assert code == 1 and "orientation" in out


def test_formality_verdicts(capsys, tmp_path):
    cs, torus = tmp_path / "cs.txt", tmp_path / "t.txt"
    dump(connected_sum_s2s6(3), str(cs))
    dump(torus_algebra(), str(torus))
    code, out, _ = run(capsys, "formality", "--conn", "2", str(cs))
    assert code == 0 and out.startswith("Formal")
    code, out, _ = run(capsys, "formality", "--conn", "2", str(torus))
    assert code == 1 and out.startswith("NotApplicable")


def test_massey_not_defined(capsys, p3file):
    code, out, _ = run(capsys, "massey4", p3file, "--classes", "h2_0,h2_1,h2_1,h2_0")
    assert code == 1 and "not defined" in out


def test_discrepancy_identity(capsys, tmp_path, p3file):
    iso = tmp_path / "id.map"
    iso.write_text("map identity\n")
    code, out, _ = run(capsys, "--machine", "discrepancy", p3file, p3file, "--iso", str(iso))
    data = json.loads(out)
    assert code == 0 and all(d["zero"] for d in data["degrees"].values())


@pytest.mark.parametrize("argv", [["cohomology", "missing.txt"], ["massey4", "{p3}", "--classes", "h2_0,h2_1"],
                                  ["massey4", "{p3}", "--classes", "h2_0,h2_1,h2_0,h9_9"],
                                  ["cohomology", "{bad}"], ["repdim", "--rank", "0"]])
def test_input_errors_exit_2(capsys, tmp_path, p3file, argv):
    bad = tmp_path / "bad.txt"
    bad.write_text("gen x 2\nfrobnicate\n")
    argv = [a.format(p3=p3file, bad=bad) for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_machine_errors_are_json(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("gen x 2\nfrobnicate\n")
    code, out, _ = run(capsys, "--machine", "cohomology", str(bad))
    data = json.loads(out)
    assert code == 2 and data["error"] == "ModelSyntaxError" and "line 2" in data["message"]


def test_argparse_errors():
    with pytest.raises(SystemExit) as info:
        main(["repdim"])
    assert info.value.code == 2

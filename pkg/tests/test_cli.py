import json

import pytest

from knopkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hom_basis(capsys):
    code, out, _ = run(capsys, "hom-basis", "--cat", "sets-op", "--x", "2", "--y", "1")
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 5 and len(data["relations"]) == 5


def test_compose_scales_projection(capsys):
    code, out, _ = run(capsys, "compose", "--x", "1", "--y", "1", "--z", "1",
                       "--first", "r1", "--second", "3*r1")
    assert code == 0
    assert "3*t" in out or "3t" in out


def test_slice_adjunction_passes(capsys):
    code, out, _ = run(capsys, "adjunction-check", "--adj", "slice", "--inner", "vect:q=2",
                       "--base", "1", "--bound", "2")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_invariants_lift_reports_square(capsys):
    code, out, _ = run(capsys, "lift-check", "--functor", "invariants-G:G=C2", "--bound", "2")
    assert code == 1
    data = json.loads(out)
    assert data["lifted"] is False
    square = [r for r in data["reports"] if r["check"] == "preserves_pullbacks"][0]["counterexample"]
    assert (square["z"], square["image_of_pullback"], square["pullback_of_images"]) == ("free", "1", "2")


@pytest.mark.parametrize("argv,token", [
    (["compose", "--x", "1", "--y", "1", "--z", "1", "--first", "2*r1+", "--second", "r1"], "2*r1+"),
    (["hom-basis", "--cat", "sets-op", "--x", "1", "--y", "q"], "q"),
    (["hom-basis", "--cat", "bogus:q=2", "--x", "1", "--y", "1"], "bogus"),
    (["compose", "--x", "1", "--y", "1", "--z", "1", "--first", "1/t*r1", "--second", "r1"], "1/t"),
    (["lift-check", "--functor", "nope:G=C2"], "nope"),
])
def test_usage_errors_name_token(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "offending token" in err and token in err


def test_bound_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("KNOPKIT_BOUND", "1")
    _, out, _ = run(capsys, "hom-dim-table", "--cat", "sets-op", "--format", "csv")
    assert out.splitlines()[0] == "x\\y,0,1"


def test_csv_table(capsys):
    code, out, _ = run(capsys, "hom-dim-table", "--cat", "sets-op", "--bound", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["x\\y,0,1,2", "0,1,1,2", "1,1,2,5", "2,2,5,15"]


def test_gram_is_labelled_diagnostic(capsys):
    code, out, _ = run(capsys, "gram", "--x", "1", "--y", "1", "--format", "text")
    assert code == 0 and "diagnostic pairing" in out


def test_karoubi_hom(capsys):
    code, out, _ = run(capsys, "karoubi-hom", "--x", "1;2", "--y", "1")
    assert code == 0 and json.loads(out)["hom_rank"] == 7


def test_tran_poset_text(capsys):
    code, out, _ = run(capsys, "tran-poset", "-G", "V4", "--format", "text")
    assert code == 0 and out.strip()


def test_figures_are_written(capsys, tmp_path):
    heat, hasse = tmp_path / "dims.png", tmp_path / "poset.png"
    assert main(["hom-dim-table", "--cat", "sets-op", "--bound", "2", "--figure", str(heat)]) == 0
    assert main(["tran-poset", "-G", "S3", "--figure", str(hasse)]) == 0
    capsys.readouterr()
    for p in (heat, hasse):
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

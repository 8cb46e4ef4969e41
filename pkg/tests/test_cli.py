"""Command line interface, exercised in process through main()."""

from __future__ import annotations

import json
import pathlib

from gwpa.cli import main
from gwpa.gallery import univariate_family
from gwpa.specfile import render_algebra_spec, spec_from_gwpa

SPEC_DIR = pathlib.Path(__file__).resolve().parent.parent / "specs"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bracket_on_plane(capsys):
    code, out, err = run(capsys, "bracket", "p2", "Y1", "X1")
    assert (code, out, err) == (0, "1\n", "")


def test_bracket_on_quantization_uses_commutator(capsys):
    code, out, _ = run(capsys, "bracket", "usl2", "X1", "Y1")
    assert code == 0
    assert out == "2*H\n"


def test_mul_normal_form(capsys):
    code, out, _ = run(capsys, "mul", "p2", "X1", "Y1")
    assert (code, out) == (0, "H1\n")
    code, out, _ = run(capsys, "mul", "usl2", "X1", "Y1")
    assert (code, out) == (0, "-H^2 + C + H\n")


def test_centre_listing(capsys):
    code, out, _ = run(capsys, "centre", "gr_usl2", "--degree", "4")
    assert code == 0
    assert "dimension: 5" in out
    assert "  C^4" in out
    code, out, _ = run(
        capsys, "centre", "p2n_2", "--alpha", "1,0", "--degree", "4"
    )
    assert code == 0
    assert "dimension: 0" in out
    assert "(empty)" in out


def test_centre_json_format(capsys):
    code, out, _ = run(
        capsys, "centre", "gr_usl2", "--degree", "3", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "centre"
    assert report["dimension"] == 4
    assert report["basis"] == ["1", "C", "C^2", "C^3"]


def test_field_check(capsys):
    code, out, _ = run(capsys, "field-check", "p2n_2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "holds"
    assert report["exact"] is True
    code, out, _ = run(capsys, "field-check", "gr_usl2")
    assert code == 0
    assert "fails (exact)" in out
    assert "witness: C" in out


def test_simple_negative_verdict_still_exits_zero(capsys, tmp_path):
    spec = spec_from_gwpa(univariate_family(["H1^2"], ["1"]))
    path = tmp_path / "squared.json"
    path.write_text(render_algebra_spec(spec))
    code, out, _ = run(capsys, "simple", str(path))
    assert code == 0
    assert "overall: fails" in out
    assert "witness: H1" in out
    code, out, _ = run(capsys, "simple", "p2n_2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["overall"] == "holds"
    assert report["condition2"]["status"] == "holds"


def test_closure_command(capsys):
    code, out, _ = run(capsys, "closure", "p2", "X1", "--degree", "2")
    assert code == 0
    assert "contains_unit: true" in out
    code, out, _ = run(
        capsys, "closure", "p2", "X1", "Y1", "--degree", "2", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["contains_unit"] is True


def test_quantize_check(capsys):
    code, out, _ = run(capsys, "quantize-check", "usl2", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["all_match"] is True
    assert report["pairs"] == 10
    assert report["predicted_a"] == ["-H^2 + C"]
    code, _, err = run(capsys, "quantize-check", "p2")
    assert code == 1
    assert "needs a gwa spec" in err


def test_validate_command(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "weyl_1")
    assert code == 0
    assert "kind: gwa" in out
    assert "ok: true" in out
    path = tmp_path / "plane.json"
    path.write_text((SPEC_DIR / "p2.json").read_text())
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 0
    assert "kind: gwpa" in out


def test_gallery_listing_and_specs(capsys):
    code, out, _ = run(capsys, "gallery")
    assert code == 0
    names = out.strip().split("\n")
    assert names == ["p2", "p2n_2", "gr_usl2", "gr_heisenberg_1", "weyl_1", "usl2"]
    for name in names:
        filename = "%s.gwa.json" % name if name in ("weyl_1", "usl2") else "%s.json" % name
        code, out, _ = run(capsys, "gallery", name)
        assert code == 0
        assert out == (SPEC_DIR / filename).read_text()


def test_outputs_are_byte_stable(capsys):
    first = run(capsys, "simple", "gr_usl2", "--format", "json")
    second = run(capsys, "simple", "gr_usl2", "--format", "json")
    assert first == second
    first = run(capsys, "centre", "gr_heisenberg_1", "--degree", "4")
    second = run(capsys, "centre", "gr_heisenberg_1", "--degree", "4")
    assert first == second


def test_usage_errors_exit_two(capsys):
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2
    code, _, _ = run(capsys)
    assert code == 2
    code, _, _ = run(capsys, "bracket", "p2", "X1")
    assert code == 2


def test_computation_errors_exit_one(capsys, tmp_path):
    code, _, err = run(capsys, "bracket", "missing-algebra", "X1", "Y1")
    assert code == 1
    assert "no such file or gallery name" in err
    code, _, err = run(capsys, "bracket", "p2", "Y1", "bogus^")
    assert code == 1
    assert "error:" in err
    code, _, err = run(capsys, "gallery", "bogus")
    assert code == 1
    assert "unknown gallery name" in err
    code, _, err = run(capsys, "centre", "p2n_2", "--alpha", "1")
    assert code == 1
    assert "rank" in err


def test_invalid_spec_reports_violations(capsys, tmp_path):
    doc = {
        "kind": "gwpa",
        "variables": ["H1", "H2"],
        "bracket": [["0", "0"], ["0", "0"]],
        "rank": 2,
        "a": ["H1", "H2"],
        "partials": [["H2", "0"], ["0", "1"]],
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", str(path))
    assert code == 1
    assert "error: invalid algebra data" in err
    assert "commuting-derivations" in err

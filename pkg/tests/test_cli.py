import json

import pytest

from fpvariety.cli import EXIT_BUDGET, EXIT_PARSE, run


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_charvar_hopf(capsys):
    assert run(["charvar", "a,b | [a,b]"]) == 0
    doc = _json(capsys)
    assert doc["schema"] == 1
    assert doc["hypersurface"] == "x*y*z - x^2 - y^2 - z^2 + 4"


def test_census_hopf(capsys):
    assert run(["census", "a,b | [a,b]", "--N", "6"]) == 0
    doc = _json(capsys)
    assert doc["eta"] == [1, 3, 4, 7, 6, 12] and doc["N"] == 6


def test_empty_presentation_is_parse_error(capsys):
    assert run(["charvar", ""]) == EXIT_PARSE
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["status"] == 2


def test_unknown_flag_is_parse_error(capsys):
    assert run(["census", "hopf", "--bogus"]) == EXIT_PARSE


def test_budget_exit(capsys):
    assert run(["census", "modular", "--N", "4", "--tables", "--max-cosets", "2"]) == EXIT_BUDGET


def test_nonpositive_bound(capsys):
    assert run(["census", "hopf", "--N", "0"]) == EXIT_PARSE


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# census settings\npresentation = a,b | [a,b]\nN = 3\n")
    assert run(["census", "--config", str(cfg)]) == 0
    assert _json(capsys)["eta"] == [1, 3, 4]
    assert run(["census", "--config", str(cfg), "--N", "4"]) == 0
    assert _json(capsys)["eta"] == [1, 3, 4, 7]
    cfg.write_text("colour = blue\n")
    assert run(["census", "hopf", "--config", str(cfg)]) == EXIT_PARSE


def test_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["charvar", "L5a1", "--out", str(a)]) == 0
    assert run(["charvar", "L5a1", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_subst(capsys):
    assert run(["subst", "hopf", "--map", "silver", "--N", "4", "--repeats", "2"]) == 0
    doc = _json(capsys)
    assert doc["invariant"] and doc["char_poly"] == "x^2 - 2*x - 1"
    assert run(["subst", "hopf", "--map", "custom:a=b,b=ab", "--N", "3"]) == 0
    assert run(["subst", "hopf", "--map", "nickel"]) == EXIT_PARSE


def test_mic(capsys):
    assert run(["mic", "--dim", "3"]) == 0
    doc = _json(capsys)
    assert any(f["gram_rank"] == 9 and f.get("geometry", {}).get("configuration") == "Hesse"
               for f in doc["fiducials"])


def test_surface(tmp_path, capsys):
    mesh = tmp_path / "h.obj"
    assert run(["surface", "--box", "4", "--res", "16", "--mesh", str(mesh)]) == 0
    doc = _json(capsys)
    assert len(doc["singular_points"]) == 4 and mesh.exists()


def test_reproduce_subset(capsys):
    assert run(["reproduce", "--only", "1,12"]) == 0
    doc = _json(capsys)
    assert doc["passed"] == doc["total"] == 2

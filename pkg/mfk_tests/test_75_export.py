import json

import pytest

from mfk import catalog, export
from mfk.errors import UnknownLabel
from mfk.poly import parse


@pytest.mark.parametrize("target", export.golden_targets())
def test_committed_golden_files_match(target, golden_dir):
    assert export.golden_diff(target, golden_dir) is None


def test_golden_targets():
    assert export.golden_targets() == ["E6", "E7", "E8", "D4", "D5", "D6", "D7", "D8"]
    with pytest.raises(UnknownLabel):
        export.render_golden("D9")
    with pytest.raises(UnknownLabel):
        export.render_golden("E5")


def test_golden_header_and_blocks():
    text = export.render_golden("D4")
    blocks = text.split("\n\n")
    assert blocks[0] == "D4 f = Y^2*Z - Z^3 + X^2"
    assert [b.splitlines()[0] for b in blocks[1:]] == [f"D4:k={k} xi" for k in range(1, 5)]
    assert text.endswith("]\n")


def test_write_then_diff(tmp_path):
    path = export.write_golden("E6", str(tmp_path))
    assert path.name == "E6.txt"
    assert export.golden_diff("E6", str(tmp_path)) is None

    path.write_text(path.read_text(encoding="utf-8").replace("E6 g =", "E6 g  ="), encoding="utf-8")
    drift = export.golden_diff("E6", str(tmp_path))
    assert drift["line"] == 1

    missing = export.golden_diff("E7", str(tmp_path))
    assert missing["reason"] == "missing"


def test_text_rendering():
    text = export.render(catalog.universal_flop1(), "text")
    assert text.startswith("UF1 f = ")
    assert "UF1 phi\n[" in text and "UF1 psi\n[" in text
    split = export.render(catalog.dn_gsv_matfac(4, 2), "text")
    assert "D:n=4:k=2:gsv xi\n[" in split


def test_json_rendering(flop):
    data = json.loads(export.render(flop, "json"))
    assert data["name"] == "UF2" and data["size"] == 4
    assert data["split"]["x"] == "x"
    assert parse(data["f"]) == flop.f


def test_tex_rendering():
    assert export.poly_tex(parse("alpha12^2*Z - 2*eta*alpha12")) == "\\alpha_{12}^{2} Z - 2 \\alpha_{12} \\eta"
    assert export.poly_tex(parse("x/2 + lam11")) == "\\tfrac{1}{2} x + \\lambda_{11}"
    tex = export.render(catalog.an_family(2, 1, deformed=False), "tex")
    assert "\\begin{pmatrix}" in tex and "\\Phi =" in tex


def test_unknown_format(flop):
    with pytest.raises(UnknownLabel):
        export.render(flop, "yaml")


def test_rendering_is_deterministic(flop):
    assert export.render(flop, "json") == export.render(flop, "json")
    assert export.render_golden("E8") == export.render_golden("E8")

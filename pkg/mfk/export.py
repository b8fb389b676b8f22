"""Renderers for factorizations and charts.

Three formats: canonical `text` (the golden-file format), `json` and `tex`.
All output is a pure function of the input, so two runs give identical
bytes.

Golden files hold one target each: `E6`, `E7`, `E8` (every table matrix in
print order) and `D4` … `D8` (the GSV Ξ for every k). A file is a header line
followed by blank-line separated blocks of the form

    <name> <role>
    [
      [e, e, ...],
      ...
    ]
"""
from __future__ import annotations

import json
import logging
import re
from pathlib import Path
from typing import Dict, List, Optional

from mfk import catalog
from mfk.config import settings
from mfk.errors import UnknownLabel
from mfk.mcm import MatFac
from mfk.poly import Poly
from mfk.polymat import PolyMatrix

logger = logging.getLogger(__name__)

FORMATS = ("text", "json", "tex")
E_TARGETS = ("E6", "E7", "E8")
GOLDEN_D_RANKS = range(4, 9)


# -----------------------------
# Canonical text
# -----------------------------
def _block(title: str, mat: PolyMatrix) -> str:
    return f"{title}\n{mat.to_text()}"


def matfac_text(m: MatFac) -> str:
    blocks = [f"{m.name} f = {m.f.to_text()}"]
    if m.split is not None:
        blocks.append(_block(f"{m.name} xi", m.split.xi))
    else:
        blocks.append(_block(f"{m.name} phi", m.phi))
        blocks.append(_block(f"{m.name} psi", m.psi))
    return "\n\n".join(blocks) + "\n"


def golden_targets() -> List[str]:
    return list(E_TARGETS) + [f"D{n}" for n in GOLDEN_D_RANKS]


def _e_golden(series: str) -> str:
    blocks = [f"{series} g = {catalog.e_polynomial(series).to_text()}"]
    for label in catalog.e_labels(series):
        m = catalog.e_series(series, label)
        if m.split is not None:
            blocks.append(_block(f"{series}:{label} xi", m.split.xi))
        else:
            phi, psi = catalog.e_pair(series, label)
            blocks.append(_block(f"{series}:{label} phi", phi))
            blocks.append(_block(f"{series}:{label} psi", psi))
    return "\n\n".join(blocks) + "\n"


def _d_golden(n: int) -> str:
    f = catalog.dn_gsv_matfac(n, 1).f
    blocks = [f"D{n} f = {f.to_text()}"]
    for k in range(1, n + 1):
        blocks.append(_block(f"D{n}:k={k} xi", catalog.dn_gsv(n, k)))
    return "\n\n".join(blocks) + "\n"


def render_golden(target: str) -> str:
    if target in E_TARGETS:
        return _e_golden(target)
    m = re.fullmatch(r"D(\d+)", target)
    if m and int(m.group(1)) in GOLDEN_D_RANKS:
        return _d_golden(int(m.group(1)))
    raise UnknownLabel(f"no golden target {target!r}", {"target": target, "known": golden_targets()})


def golden_path(target: str, golden_dir: Optional[str] = None) -> Path:
    return Path(golden_dir or settings.golden_dir) / f"{target}.txt"


def golden_diff(target: str, golden_dir: Optional[str] = None) -> Optional[dict]:
    """None when the committed file matches the rendering byte for byte."""
    path = golden_path(target, golden_dir)
    want = render_golden(target)
    if not path.exists():
        return {"target": target, "path": str(path), "reason": "missing"}
    got = path.read_text(encoding="utf-8")
    if got == want:
        return None
    got_lines, want_lines = got.splitlines(), want.splitlines()
    for i, (a, b) in enumerate(zip(got_lines, want_lines)):
        if a != b:
            return {"target": target, "line": i + 1, "committed": a, "rendered": b}
    return {
        "target": target,
        "reason": "length differs",
        "committed_lines": len(got_lines),
        "rendered_lines": len(want_lines),
    }


def write_golden(target: str, golden_dir: Optional[str] = None) -> Path:
    path = golden_path(target, golden_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_golden(target), encoding="utf-8")
    logger.info("wrote %s", path)
    return path


# -----------------------------
# JSON
# -----------------------------
def matfac_json(m: MatFac) -> Dict[str, object]:
    out: Dict[str, object] = {
        "name": m.name,
        "size": m.size,
        "f": m.f.to_text(),
        "params": list(m.params),
        "tags": list(m.tags),
        "phi": m.phi.to_json(),
        "psi": m.psi.to_json(),
    }
    if m.split is not None:
        out["split"] = {"x": m.split.x_name, "xi": m.split.xi.to_json()}
    return out


def dumps(payload: object) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


# -----------------------------
# TeX
# -----------------------------
_GREEK = ("alpha", "beta", "gamma", "delta", "eta", "lambda", "mu", "xi", "phi", "psi")
_NAME_RE = re.compile(r"^([A-Za-z]+?)(\d*)$")
_GEN_PREFIX = {"lam": "lambda"}


def _tex_name(name: str) -> str:
    m = _NAME_RE.match(name)
    if not m:
        return name
    stem, idx = m.group(1), m.group(2)
    stem = _GEN_PREFIX.get(stem, stem)
    head = f"\\{stem}" if stem in _GREEK else stem
    return f"{head}_{{{idx}}}" if idx else head


def _tex_coefficient(text: str) -> str:
    # "(a+b*i)" / "(b*i)" / "p/q"
    text = text.replace("*i", "i")
    m = re.fullmatch(r"(-?)(\d+)/(\d+)", text)
    if m:
        return f"{m.group(1)}\\tfrac{{{m.group(2)}}}{{{m.group(3)}}}"
    return text


def poly_tex(p: Poly) -> str:
    if p.is_zero():
        return "0"
    pieces: List[str] = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = " ".join(
            _tex_name(v) if k == 1 else f"{_tex_name(v)}^{{{k}}}" for v, k in zip(p.vars, e) if k
        )
        if not c.im:
            neg = c.re < 0
            mag = -c.re if neg else c.re
            coef = "" if (mag == 1 and mono) else _tex_coefficient(str(mag))
        else:
            neg = False
            coef = _tex_coefficient(c.to_text())
        body = f"{coef} {mono}".strip()
        if idx == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


def matrix_tex(mat: PolyMatrix) -> str:
    rows = [" & ".join(poly_tex(p) for p in mat.row(i)) for i in range(mat.rows)]
    return "\\begin{pmatrix}\n" + " \\\\\n".join(rows) + "\n\\end{pmatrix}"


def matfac_tex(m: MatFac) -> str:
    lines = [f"% {m.name}", f"f = {poly_tex(m.f)}"]
    if m.split is not None:
        lines.append(f"\\Xi = {matrix_tex(m.split.xi)}")
    else:
        lines.append(f"\\Phi = {matrix_tex(m.phi)}")
        lines.append(f"\\Psi = {matrix_tex(m.psi)}")
    return "\n\n".join(lines) + "\n"


def render(m: MatFac, fmt: str = "text") -> str:
    if fmt == "text":
        return matfac_text(m)
    if fmt == "json":
        return dumps(matfac_json(m))
    if fmt == "tex":
        return matfac_tex(m)
    raise UnknownLabel(f"unknown export format {fmt!r}", {"format": fmt, "known": list(FORMATS)})

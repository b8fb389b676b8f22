"""Matrix factorizations: the record type, exact verification, split form,
the flop involution and direct-sum decomposition by explicit base changes."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from mfk.errors import DimensionMismatch, NotAFactorization, NotBlockDiagonal, NotSplittable
from mfk.poly import Poly
from mfk.polymat import (
    Partition,
    PolyMatrix,
    adjugate_inverse,
    block_violations,
    conj2,
    determinant,
    direct_sum,
    matmul,
)
from mfk.reports import Report

logger = logging.getLogger(__name__)

# discrepancy lists in reports are cut at this length
MAX_DISCREPANCIES = 20


@dataclass(frozen=True)
class Split:
    x_name: str
    xi: PolyMatrix


@dataclass(frozen=True)
class MatFac:
    phi: PolyMatrix
    psi: PolyMatrix
    f: Poly
    split: Optional[Split] = None
    name: str = ""
    params: Tuple[str, ...] = ()
    tags: Tuple[str, ...] = ()
    # closed-form data the constructors know (g, h, W, ...), keyed by name
    data: Mapping[str, Poly] = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return self.phi.rows

    @property
    def vars(self) -> Tuple[str, ...]:
        names: List[str] = list(self.phi.vars)
        for v in self.psi.vars + self.f.vars:
            if v not in names:
                names.append(v)
        return tuple(names)

    def coordinates(self) -> Tuple[str, ...]:
        return tuple(v for v in self.vars if v not in self.params)

    @classmethod
    def from_xi(cls, xi: PolyMatrix, x_name: str, f: Poly, **kw) -> "MatFac":
        """(xI − Ξ, xI + Ξ) for a Ξ that does not involve x."""
        if not xi.is_square():
            raise NotSplittable(f"Xi must be square, got {xi.rows}x{xi.cols}")
        if any(e.involves([x_name]) for e in xi.entries):
            raise NotSplittable(f"Xi involves the split variable {x_name}", {"x": x_name})
        x_i = PolyMatrix.scalar(Poly.var(x_name), xi.rows)
        return cls(phi=x_i - xi, psi=x_i + xi, f=f, split=Split(x_name, xi), **kw)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "size": self.size,
            "f": self.f.to_text(),
            "split": self.split.x_name if self.split else None,
            "params": list(self.params),
            "tags": list(self.tags),
        }


# -----------------------------
# Verification
# -----------------------------
def _product_discrepancies(prod: PolyMatrix, f: Poly) -> List[dict]:
    out = []
    for i in range(prod.rows):
        for j in range(prod.cols):
            want = f if i == j else Poly.zero()
            got = prod[i, j]
            if got != want:
                out.append({"row": i, "col": j, "got": got.to_text(), "want": want.to_text()})
    return out


def product_check(name: str, left: PolyMatrix, right: PolyMatrix, f: Poly) -> Tuple[bool, Optional[dict]]:
    prod = matmul(left, right)
    diffs = _product_discrepancies(prod, f)
    if not diffs:
        return True, None
    logger.warning("%s: %d entries differ from f*I", name, len(diffs))
    return False, {"discrepancies": diffs[:MAX_DISCREPANCIES], "count": len(diffs)}


def verify_factorization(m: MatFac) -> Report:
    """Both products against f·I; failures are report entries, never raised."""
    report = Report(id=m.name or "matfac")
    n = m.size
    if not (m.phi.is_square() and m.psi.is_square() and m.psi.rows == n):
        report.add(
            "shape",
            False,
            {"phi": [m.phi.rows, m.phi.cols], "psi": [m.psi.rows, m.psi.cols]},
        )
        return report
    ok, detail = product_check("phi*psi", m.phi, m.psi, m.f)
    report.add("phi*psi", ok, detail)
    ok, detail = product_check("psi*phi", m.psi, m.phi, m.f)
    report.add("psi*phi", ok, detail)
    return report


def det_check(m: MatFac) -> Report:
    """det(φ)·det(ψ) = f^k."""
    report = Report(id=f"{m.name}:det")
    lhs = determinant(m.phi) * determinant(m.psi)
    rhs = m.f ** m.size
    ok = lhs == rhs
    report.add("det(phi)*det(psi)=f^k", ok, None if ok else {"difference": (lhs - rhs).to_text()})
    return report


def split_square_check(m: MatFac) -> Report:
    """Ξ² = −g·I where f = x² + g."""
    report = Report(id=f"{m.name}:xi^2")
    if m.split is None:
        report.add("xi^2=-g*I", False, {"skipped": "no split form"})
        return report
    x = Poly.var(m.split.x_name)
    g = m.f - x * x
    sq = matmul(m.split.xi, m.split.xi)
    diffs = _product_discrepancies(sq, -g)
    report.add("xi^2=-g*I", not diffs, {"discrepancies": diffs[:MAX_DISCREPANCIES]} if diffs else None)
    return report


# -----------------------------
# Split form and the involution
# -----------------------------
def split_form(m: MatFac, x_name: str) -> MatFac:
    n = m.size
    x = Poly.var(x_name)
    if m.phi + m.psi != PolyMatrix.scalar(x.scale(2), n):
        raise NotSplittable("phi + psi is not 2x*I", {"x": x_name, "name": m.name})
    xi = (m.psi - m.phi).map(lambda p: p.scale(Fraction(1, 2)))
    bad = [(i, j) for i in range(n) for j in range(n) if xi[i, j].involves([x_name])]
    if bad:
        raise NotSplittable(f"(psi - phi)/2 involves {x_name}", {"entries": [list(b) for b in bad]})
    g = m.f - x * x
    if g.involves([x_name]):
        raise NotSplittable(f"f is not {x_name}^2 plus an {x_name}-free part", {"f": m.f.to_text()})
    return replace(m, split=Split(x_name, xi))


def involution_check(m: MatFac) -> Optional[bool]:
    """x → −x sends (φ, ψ) to (−ψ, −φ). None when there is no split form."""
    if m.split is None:
        return None
    flip = {m.split.x_name: -Poly.var(m.split.x_name)}
    return m.phi.substitute(flip) == -m.psi and m.psi.substitute(flip) == -m.phi


# -----------------------------
# Decomposition
# -----------------------------
def _violation_detail(label: str, mat: PolyMatrix, bad: List[Tuple[int, int]]) -> dict:
    return {
        "matrix": label,
        "entries": [{"row": i, "col": j, "value": mat[i, j].to_text()} for i, j in bad[:MAX_DISCREPANCIES]],
    }


def conjugated(m: MatFac, b_left: PolyMatrix, b_right: PolyMatrix) -> Tuple[PolyMatrix, PolyMatrix]:
    """(B_left·φ·B_right⁻¹, B_right·ψ·B_left⁻¹)."""
    if b_left.rows != m.size or b_right.rows != m.size:
        raise DimensionMismatch(
            f"base changes must be {m.size}x{m.size}",
            {"left": [b_left.rows, b_left.cols], "right": [b_right.rows, b_right.cols]},
        )
    return conj2(b_left, m.phi, b_right), conj2(b_right, m.psi, b_left)


def decompose(
    m: MatFac,
    b_left: PolyMatrix,
    b_right: PolyMatrix,
    partition: Partition,
    names: Sequence[str] = (),
) -> List[MatFac]:
    phi2, psi2 = conjugated(m, b_left, b_right)
    for label, mat in (("phi", phi2), ("psi", psi2)):
        bad = block_violations(mat, partition)
        if bad:
            raise NotBlockDiagonal(
                f"conjugated {label} has {len(bad)} entries outside the blocks",
                _violation_detail(label, mat, bad),
            )

    parts: List[MatFac] = []
    for b, idx in enumerate(partition):
        idx = list(idx)
        label = names[b] if b < len(names) else f"{m.name}[{','.join(map(str, idx))}]"
        part = MatFac(
            phi=phi2.submatrix(idx),
            psi=psi2.submatrix(idx),
            f=m.f,
            name=label,
            params=m.params,
        )
        if m.split is not None and len(idx) % 2 == 0:
            try:
                part = split_form(part, m.split.x_name)
            except NotSplittable:
                pass
        report = verify_factorization(part)
        if not report.passed:
            raise NotAFactorization(f"block {idx} does not re-verify", {"block": idx, "report": report.to_dict()})
        parts.append(part)
    logger.debug("%s splits into blocks of sizes %s", m.name, [p.size for p in parts])
    return parts


def direct_sum_check(
    m: MatFac,
    parts: Sequence[MatFac],
    b_left: PolyMatrix,
    b_right: PolyMatrix,
    partition: Partition,
) -> Report:
    """The blocks, reassembled and conjugated back, give the original pair."""
    report = Report(id=f"{m.name}:direct-sum")
    phi_sum = direct_sum([p.phi for p in parts], partition)
    psi_sum = direct_sum([p.psi for p in parts], partition)
    phi_back = matmul(matmul(adjugate_inverse(b_left), phi_sum), b_right)
    psi_back = matmul(matmul(adjugate_inverse(b_right), psi_sum), b_left)
    report.add("phi", phi_back == m.phi)
    report.add("psi", psi_back == m.psi)
    return report


def block_summary(parts: Sequence[MatFac]) -> Dict[str, object]:
    return {
        "sizes": [p.size for p in parts],
        "split": [p.split is not None for p in parts],
    }

import pytest

from mfk import catalog, mcm
from mfk.errors import NotBlockDiagonal, NotSplittable
from mfk.poly import Poly, parse
from mfk.polymat import PolyMatrix


def _pair(phi_rows, psi_rows, f, name="test"):
    return mcm.MatFac(
        phi=PolyMatrix.from_rows([[parse(e) for e in r] for r in phi_rows]),
        psi=PolyMatrix.from_rows([[parse(e) for e in r] for r in psi_rows]),
        f=parse(f),
        name=name,
    )


def test_failure_is_a_report_not_an_exception():
    m = _pair([["x", "y"], ["0", "x"]], [["x", "-y"], ["0", "x"]], "x^2 + 1")
    report = mcm.verify_factorization(m)
    assert not report.passed
    assert [c.name for c in report.failures()] == ["phi*psi", "psi*phi"]
    diffs = report.failures()[0].detail["discrepancies"]
    assert {"row": 0, "col": 0, "got": "x^2", "want": "x^2 + 1"} in diffs


def test_shape_failure():
    m = mcm.MatFac(
        phi=PolyMatrix.from_rows([[1, 0]]),
        psi=PolyMatrix.identity(2),
        f=Poly.const(1),
        name="bad-shape",
    )
    report = mcm.verify_factorization(m)
    assert not report.passed
    assert report.checks[0].name == "shape"


def test_det_check():
    m = catalog.an_family(3, 1)
    assert mcm.det_check(m).passed
    assert mcm.det_check(catalog.universal_flop1()).passed


def test_split_form_recovers_xi(flop):
    plain = mcm.MatFac(phi=flop.phi, psi=flop.psi, f=flop.f, name="UF2-plain")
    split = mcm.split_form(plain, "x")
    assert split.split.xi == flop.split.xi
    assert mcm.involution_check(split) is True


def test_split_form_rejects():
    m = catalog.an_family(3, 1)
    with pytest.raises(NotSplittable):
        mcm.split_form(m, "x")
    with pytest.raises(NotSplittable):
        mcm.MatFac.from_xi(PolyMatrix.from_rows([[Poly.var("x")]]), "x", Poly.var("x") ** 2)


def test_involution_without_split_form():
    assert mcm.involution_check(catalog.an_family(3, 1)) is None
    report = mcm.split_square_check(catalog.an_family(3, 1))
    assert not report.passed


# -----------------------------
# Decomposition
# -----------------------------
@pytest.mark.parametrize("n, k", [(4, 1), (4, 4), (4, 3), (5, 1), (5, 4), (5, 5)])
def test_d_decompositions(n, k):
    m = catalog.dn_family(n, k)
    fx = catalog.dn_decomposition(n, k)
    parts = mcm.decompose(m, fx.b_left, fx.b_right, fx.partition)
    assert [p.size for p in parts] == [len(b) for b in fx.partition]
    for part, want in zip(parts, fx.expected_xi):
        assert mcm.verify_factorization(part).passed
        if want is not None:
            assert part.split is not None and part.split.xi == want
    assert mcm.direct_sum_check(m, parts, fx.b_left, fx.b_right, fx.partition).passed


def test_k1_scalar_blocks():
    m = catalog.dn_family(4, 1)
    fx = catalog.dn_decomposition(4, 1)
    parts = mcm.decompose(m, fx.b_left, fx.b_right, fx.partition)
    assert parts[0].phi[0, 0] == m.f and parts[0].psi[0, 0] == 1
    assert parts[1].phi[0, 0] == 1 and parts[1].psi[0, 0] == m.f
    assert mcm.block_summary(parts) == {"sizes": [1, 1, 2], "split": [False, False, True]}


def test_identity_base_change_is_not_block_diagonal():
    m = catalog.dn_family(4, 2)
    b = PolyMatrix.identity(4)
    with pytest.raises(NotBlockDiagonal) as err:
        mcm.decompose(m, b, b, ((0, 1), (2, 3)))
    assert err.value.detail["matrix"] == "phi"
    assert err.value.detail["entries"]

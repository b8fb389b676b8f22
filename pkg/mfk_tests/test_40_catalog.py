import pytest

from mfk import catalog, mcm
from mfk.errors import BadIndex, NotAFactorization, UnknownLabel
from mfk.poly import Poly, parse
from mfk.polymat import PolyMatrix


# -----------------------------
# A, REID and the universal flops
# -----------------------------
@pytest.mark.parametrize("n, k", [(2, 1), (3, 1), (3, 2), (6, 2), (9, 5)])
def test_a_family_factorizes(n, k):
    for m in (
        catalog.an_family(n, k),
        catalog.an_family(n, k, deformed=False),
        catalog.an_family(n, k, split=True),
    ):
        assert mcm.verify_factorization(m).passed, m.name


def test_a_coefficients_are_balanced():
    g, h, params = catalog.an_coefficients(5, 2)
    assert params == ("a0", "a1", "b0", "b1")
    assert g.degree("z") == 2 and h.degree("z") == 3
    assert (g * h).coefficients_in("z").get(4, Poly.zero()).is_zero()

    g0, h0, none = catalog.an_coefficients(5, 2, deformed=False)
    z = Poly.var("z")
    assert (g0, h0, none) == (z ** 2, z ** 3, ())


def test_split_a_family():
    m = catalog.an_family(4, 1, split=True)
    assert m.split is not None and m.split.x_name == "u"
    assert mcm.split_square_check(m).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_reid_pagoda(n):
    m = catalog.reid_pagoda(n)
    x, y, z, t = (Poly.var(v) for v in "xyzt")
    assert m.f == x * y - z * z + t ** (2 * n)
    assert mcm.verify_factorization(m).passed


def test_universal_flops(flop):
    assert mcm.verify_factorization(flop).passed
    assert flop.size == 4 and flop.split.xi.trace().is_zero()
    assert flop.f.evaluate({v: 1 for v in catalog.FLOP_VARS}) == 5
    assert mcm.verify_factorization(catalog.universal_flop1()).passed


@pytest.mark.parametrize(
    "call",
    [
        lambda: catalog.an_family(1, 1),
        lambda: catalog.an_family(4, 4),
        lambda: catalog.an_family(4, 0),
        lambda: catalog.an_family(99999, 1),
        lambda: catalog.dn_family(4, 5),
        lambda: catalog.dn_family(1, 1),
        lambda: catalog.dn_gsv(99999, 1),
        lambda: catalog.reid_pagoda(0),
        lambda: catalog.dn_invariants_from_roots(4, 2, (1, 2)),
        lambda: catalog.dn_decomposition(6, 3),
    ],
)
def test_bad_index(call):
    with pytest.raises(BadIndex):
        call()


# -----------------------------
# D invariants
# -----------------------------
def test_worked_instance():
    inv = catalog.dn_invariants_from_roots(4, 2, (1, 2, 3, 4))
    U, Z = Poly.var("U"), Poly.var("Z")
    assert inv.f == U * U - 3 * U + 2
    assert inv.P == -3 and inv.Q == 2 - Z and inv.S == -1 and inv.G == -1
    assert inv.eta == 12 and inv.gamma == 24
    assert inv.h == Z + 25
    assert inv.Q * inv.Q + Z * inv.P * inv.P == (Z + 1) * (Z + 4)
    assert Z * inv.F + inv.gamma * inv.gamma == (Z + 1) * (Z + 4) * (Z + 9) * (Z + 16)


def test_symbolic_invariants():
    inv = catalog.dn_invariants(4, 2)
    assert inv.params == ("fc0", "fc1", "hc0", "eta")
    assert set(catalog.dn_origin(4, 2)) == {"fc0", "fc1", "hc0", "eta"}
    U, Z = Poly.var("U"), Poly.var("Z")
    assert U * inv.P + inv.Q == (U * U + Z) * inv.G + inv.f


def test_k_equal_n_has_no_eta():
    inv = catalog.dn_invariants(5, 5)
    assert inv.h.is_zero() and inv.eta == 1
    assert "eta" not in inv.params
    assert all(p.startswith("fc") for p in inv.params)


def test_elementary_symmetric():
    assert catalog.elementary_symmetric([1, 2, 3], 0) == 1
    assert catalog.elementary_symmetric([1, 2, 3], 2) == 11
    assert catalog.elementary_symmetric([1, 2, 3], 3) == 6


@pytest.mark.parametrize("n, k", [(4, 1), (4, 2), (5, 3), (6, 6)])
def test_d_family_factorizes(n, k):
    m = catalog.dn_family(n, k)
    assert mcm.verify_factorization(m).passed
    assert mcm.split_square_check(m).passed
    assert ("degenerate:D%d" % (n - k) in m.tags) == (n - k <= 3)


@pytest.mark.parametrize("n, k", [(4, 1), (4, 2), (5, 4), (7, 3), (8, 7)])
def test_origin_is_gsv(n, k):
    xi = catalog.dn_family(n, k).split.xi.substitute(catalog.dn_origin(n, k))
    assert xi == catalog.dn_gsv(n, k)


@pytest.mark.parametrize("n", [4, 5, 8])
def test_gsv_factorizes(n):
    for k in range(1, n + 1):
        assert mcm.verify_factorization(catalog.dn_gsv_matfac(n, k)).passed


def test_d4_and_the_flop_are_one_family():
    xi_flop = catalog.flop_xi()
    xi_d4 = catalog.dn_family(4, 2).split.xi
    assert xi_d4.substitute(catalog.d4_from_flop()) == xi_flop
    assert xi_flop.substitute(catalog.flop_from_d4()) == xi_d4


# -----------------------------
# E tables and stabilization
# -----------------------------
@pytest.mark.parametrize("series", ["E6", "E7", "E8"])
def test_every_e_entry_factorizes(series):
    for label in catalog.e_labels(series):
        m = catalog.e_series(series, label)
        assert mcm.verify_factorization(m).passed, m.name
        stable = catalog.e_stabilized(series, label)
        assert mcm.verify_factorization(stable).passed, stable.name
        assert stable.size == 2 * m.size or m.split is not None


def test_stabilize_scalars():
    one = PolyMatrix.from_rows([[1]])
    m = catalog.stabilize(one, one, Poly.const(-1))
    assert m.f == parse("X^2 - 1")
    assert m.split.xi == PolyMatrix.from_rows([[0, 1], [1, 0]])
    assert mcm.verify_factorization(m).passed


def test_stabilized_e7():
    m = catalog.e_stabilized("E7", "1")
    assert m.f == parse("X^2 + Y^3 + Y*Z^3")
    assert m.size == 2


def test_stabilize_rejects_a_non_factorization():
    with pytest.raises(NotAFactorization):
        catalog.stabilize(PolyMatrix.from_rows([[1]]), PolyMatrix.from_rows([[2]]), Poly.const(-1))


def test_unknown_labels():
    with pytest.raises(UnknownLabel):
        catalog.e_series("E7", "9")
    with pytest.raises(UnknownLabel):
        catalog.e_polynomial("E9")
    with pytest.raises(UnknownLabel):
        catalog.e_pair("E6", "1+")
    with pytest.raises(UnknownLabel):
        catalog.build(catalog.FamilySpec(series="B"))


def test_ell_of_label():
    assert catalog.ell_of_label("1+") == 1
    assert catalog.ell_of_label("2'") == 2
    assert catalog.ell_of_label("3''") == 3


# -----------------------------
# Manifest
# -----------------------------
def test_manifest():
    entries = {e.key: e for e in catalog.manifest()}
    assert entries["UF2"].ell == 2 and entries["UF1"].ell == 1
    assert entries["D:n=6:k=3"].ell == 2
    assert entries["D:n=6:k=5"].ell == 1
    assert entries["D:n=6:k=3"].tags == ["degenerate:D3"]
    assert entries["D:n=4:k=2:gsv"].deformed is False
    assert entries["E8:label=6"].ell == 6
    assert "A:n=12:k=11" in entries and "REID:n=4" in entries
    assert len(entries) == len(catalog.manifest())

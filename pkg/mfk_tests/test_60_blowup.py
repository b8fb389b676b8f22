from dataclasses import replace

import pytest

from mfk import blowup, catalog, mcm
from mfk.config import Caps
from mfk.errors import (
    BadPivot,
    CapExceeded,
    GenerationFailed,
    IdentityFailed,
    NotLinearUnit,
    WitnessFailed,
)
from mfk.poly import Poly, parse
from mfk.polymat import PolyMatrix
from mfk.witnesses import FLOP_CHARTS


# -----------------------------
# Chart construction
# -----------------------------
def test_bad_pivots(flop):
    with pytest.raises(BadPivot):
        blowup.make_chart(flop, "psi", (0,))
    with pytest.raises(BadPivot):
        blowup.make_chart(flop, "psi", (1, 1))
    with pytest.raises(BadPivot):
        blowup.make_chart(flop, "psi", (0, 4))
    with pytest.raises(BadPivot):
        blowup.make_chart(flop, "xi", (0, 1))
    odd = mcm.MatFac(phi=PolyMatrix.identity(1), psi=PolyMatrix.identity(1), f=Poly.const(1), name="odd")
    with pytest.raises(BadPivot):
        blowup.make_chart(odd, "psi", ())


def test_kernel_has_identity_in_pivot_rows(flop):
    c = blowup.make_chart(flop, "psi", (0, 2))
    assert c.unknowns == ("beta11", "beta12", "beta21", "beta22")
    assert c.kernel.row(0) == [Poly.const(1), Poly.zero()]
    assert c.kernel.row(2) == [Poly.zero(), Poly.const(1)]
    assert set(c.raw) == {f"mu{i}{j}" for i in range(1, 5) for j in (1, 2)}


def test_every_flop_chart_contains_f(flop):
    charts = blowup.enumerate_charts(flop)
    assert len(charts) == 6
    for c in charts:
        assert blowup.membership_check(c).passed, c.pivots


@pytest.mark.parametrize("which", [1, 2])
def test_flop_charts_are_smooth(which):
    c, cls = blowup.flop_pipeline(which)
    assert c.residual == ()
    assert cls.kind == "smooth"
    assert [v for v, _ in c.elim_log] == [v for v, _ in FLOP_CHARTS[which].plan]


def test_chart_symmetry(flop):
    assert blowup.symmetry_check(flop, (0, 1)).passed
    assert blowup.symmetry_check(flop, (1, 3)).passed


# -----------------------------
# Witnesses and generation
# -----------------------------
def _chart1(flop):
    ws = FLOP_CHARTS[1]
    return ws, blowup.make_chart(flop, "psi", ws.pivots, ws.prefix, ws.gen_prefix)


def test_witnesses_hold(flop):
    ws, c = _chart1(flop)
    report = blowup.verify_witnesses(c, ws.instantiate())
    assert [ch.name for ch in report.checks] == ["lam1", "lam2", "lam3"]
    extended = blowup.extend_chart(c, ws.instantiate())
    assert extended.extended["lam1"] == parse("alpha11 - alpha22")
    assert blowup.verify_generation(extended, ws.expressions()).passed


def test_tampered_witness_fails(flop):
    ws, c = _chart1(flop)
    witnesses = ws.instantiate()
    witnesses[0] = replace(witnesses[0], quotient=witnesses[0].quotient + 1)
    with pytest.raises(WitnessFailed) as err:
        blowup.extend_chart(c, witnesses)
    assert err.value.detail["witness"] == "lam1"


def test_tampered_generation_fails(flop):
    ws, c = _chart1(flop)
    c = blowup.extend_chart(c, ws.instantiate())
    exprs = ws.expressions()
    exprs["lam11"] = {"lam22": Poly.const(2)}
    with pytest.raises(GenerationFailed):
        blowup.generated_chart(c, exprs)
    with pytest.raises(GenerationFailed):
        blowup.verify_generation(c, {"lam99": {"lam22": Poly.const(1)}})


def test_admit_by_membership():
    m = catalog.an_family(2, 1, deformed=False)
    c = blowup.make_chart(m, "psi", (1,))
    alpha, y, z = Poly.var("alpha11"), Poly.var("y"), Poly.var("z")
    c2 = blowup.admit_by_membership(c, "e1", y * alpha - z, Poly.const(1))
    assert c2.certificates["e1"].startswith("membership")
    with pytest.raises(WitnessFailed):
        blowup.admit_by_membership(c, "e2", alpha, Poly.const(1))


# -----------------------------
# Elimination
# -----------------------------
def test_elimination_needs_a_linear_unit():
    c = blowup.make_chart(catalog.an_family(3, 1), "psi", (1,))
    with pytest.raises(NotLinearUnit):
        blowup.eliminate(c, [("y", "lam11")])
    with pytest.raises(NotLinearUnit):
        blowup.eliminate(c, [("x", "lam99")])


def test_prune_relations():
    x, y = Poly.var("x"), Poly.var("y")
    assert blowup.prune_relations([Poly.zero(), x * y, x, y]) == (x, y)


# -----------------------------
# A and pair charts
# -----------------------------
@pytest.mark.parametrize("n, k", [(2, 1), (4, 1), (4, 2), (7, 3)])
def test_a_charts(n, k):
    m = catalog.an_family(n, k)
    for which, want in ((1, k - 1), (2, n - k - 1)):
        c, cls = blowup.an_pipeline(n, k, which)
        assert c.residual == (blowup.an_closed_form(m, which),)
        assert (cls.kind, cls.m) == ("A", want)
        assert cls.tag == ("A0=smooth" if want == 0 else None)


@pytest.mark.parametrize("m", [catalog.universal_flop1(), catalog.reid_pagoda(1)])
def test_smooth_pair_charts(m):
    for which in (1, 2):
        c, cls = blowup.pair_pipeline(m, which)
        assert blowup.membership_check(c).passed
        assert cls.kind == "smooth"


# -----------------------------
# D charts
# -----------------------------
@pytest.mark.parametrize(
    "n, k, m, tag",
    [(6, 3, 3, "D3=A3"), (8, 2, 6, None), (5, 5, 0, "D0=smooth"), (5, 4, 1, "D1=smooth"), (6, 4, 2, "D2=A1+A1")],
)
def test_d_chart1_classes(n, k, m, tag):
    c, cls = blowup.dn_pipeline(n, k, 1)
    assert len(c.residual) == 1
    assert (cls.kind, cls.m, cls.tag) == ("D", m, tag)


def test_d_chart1_residual():
    c, _ = blowup.dn_pipeline(4, 2, 1)
    inv = catalog.dn_invariants(4, 2)
    a12, a22, Z = Poly.var("alpha12"), Poly.var("alpha22"), Poly.var("Z")
    assert c.residual[0] == a22 * a22 + a12 * a12 * Z - 2 * inv.eta * a12 - inv.h


@pytest.mark.parametrize("n, k", [(4, 2), (5, 3), (6, 6)])
def test_d_chart2_tyurina(n, k):
    c, _ = blowup.dn_pipeline(n, k, 2)
    assert len(c.residual) == 2
    report = blowup.tyurina(c, catalog.dn_invariants(n, k).G)
    assert report.passed
    cls = next(ch for ch in report.checks if ch.name == "classification")
    assert cls.detail["label"] == f"A({k - 1})"


def test_tyurina_rejects_chart1():
    c, _ = blowup.dn_pipeline(4, 2, 1)
    with pytest.raises(IdentityFailed):
        blowup.tyurina(c, catalog.dn_invariants(4, 2).G)


# -----------------------------
# Classifier
# -----------------------------
@pytest.mark.parametrize(
    "text, label",
    [
        ("x^2 + y^2*z - z^3", "D(4)"),
        ("x*y - z^3", "A(2)"),
        ("z + x*y", "A(0)"),
        ("x^2 + y^2 + z^2", "unknown"),
        ("x + y^2", "smooth"),
    ],
)
def test_classify_relations(text, label):
    cls = blowup.classify_relations([parse(text)], ("x", "y", "z"))
    assert cls.label == label


def test_classify_empty_and_systems():
    assert blowup.classify_relations([], ("x",)).kind == "smooth"
    assert blowup.classify_relations([parse("x"), parse("y + z^2")], ("x", "y", "z")).kind == "smooth"


# -----------------------------
# Universal flop, chart 1
# -----------------------------
def test_chart1_fibres():
    assert blowup.conic_fiber_check().passed
    assert blowup.matrix_form_check().passed
    assert blowup.line_fiber_relation().passed


# -----------------------------
# Gröbner oracle
# -----------------------------
@pytest.mark.parametrize("n, k", [(2, 1), (3, 1), (3, 2)])
def test_a_oracle(n, k):
    for which in (1, 2):
        assert blowup.an_oracle(n, k, which).passed


@pytest.mark.slow
def test_d4_oracle():
    assert blowup.d4_oracle().passed


@pytest.mark.slow
def test_d4_oracle_needs_localization_generators():
    report = blowup.d4_oracle(raw=True)
    assert not report.passed
    assert report.id == "oracle:D:n=4:k=2:chart1:raw"


def test_oracle_caps():
    with pytest.raises(CapExceeded):
        blowup.an_oracle(3, 1, 1, Caps(max_degree=24, max_basis=1))

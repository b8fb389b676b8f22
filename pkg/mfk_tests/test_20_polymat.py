import pytest

from mfk import catalog
from mfk.errors import DimensionMismatch, NonUnitDeterminant, NotSquare
from mfk.poly import Poly, symbols
from mfk.polymat import (
    PolyMatrix,
    adjugate,
    adjugate_inverse,
    block_pattern,
    block_violations,
    blocks,
    conj2,
    conjugate,
    determinant,
    direct_sum,
    matmul,
    quadratic_form_matrix,
)


def test_text_rendering(xyz):
    x, y, _ = xyz
    m = PolyMatrix.from_rows([[x, 1], [0, -y]])
    assert m.to_text() == "[\n  [x, 1],\n  [0, -y]\n]"


def test_shapes_are_checked(xyz):
    x, _, _ = xyz
    a = PolyMatrix.from_rows([[x, 1, 0]])
    with pytest.raises(DimensionMismatch):
        matmul(a, a)
    with pytest.raises(DimensionMismatch):
        PolyMatrix.from_rows([[x, 1], [0]])
    with pytest.raises(DimensionMismatch):
        a + PolyMatrix.identity(3)
    with pytest.raises(NotSquare):
        a.trace()
    with pytest.raises(NotSquare):
        determinant(a)


def test_determinant_and_adjugate():
    x, y, z, t = symbols("x y z t")
    m = PolyMatrix.from_rows([[x, y], [z, t]])
    assert determinant(m) == x * t - y * z
    assert matmul(m, adjugate(m)) == PolyMatrix.scalar(x * t - y * z, 2)
    assert determinant(PolyMatrix.identity(5)) == 1

    m3 = PolyMatrix.from_rows([[x, 1, 0], [0, y, 1], [1, 0, z]])
    assert determinant(m3) == x * y * z + 1
    assert matmul(adjugate(m3), m3) == PolyMatrix.scalar(x * y * z + 1, 3)


def test_unimodular_inverse(xyz):
    x, _, _ = xyz
    b = PolyMatrix.from_rows([[1, x], [0, 1]])
    assert adjugate_inverse(b) == PolyMatrix.from_rows([[1, -x], [0, 1]])
    with pytest.raises(NonUnitDeterminant):
        adjugate_inverse(PolyMatrix.from_rows([[x, 0], [0, 1]]))
    with pytest.raises(NonUnitDeterminant):
        adjugate_inverse(PolyMatrix.zeros(2, 2))


def test_base_changes_are_unimodular():
    inv = catalog.dn_invariants(5, 1)
    b0, b1 = catalog.b0_b1(inv)
    for b in (b0, b1, catalog.b2(), catalog.b3()):
        d = determinant(b)
        assert d.is_constant() and not d.is_zero()
        assert matmul(b, adjugate_inverse(b)) == PolyMatrix.identity(4)


def test_conjugation(xyz):
    x, y, _ = xyz
    b = PolyMatrix.from_rows([[1, y], [0, 1]])
    m = PolyMatrix.from_rows([[x, 0], [0, -x]])
    got = conj2(b, m, b)
    assert got == matmul(matmul(b, m), adjugate_inverse(b))
    assert got.trace() == m.trace()
    assert conjugate(b, m) == got


def test_block_structure(xyz):
    x, y, z = xyz
    m = PolyMatrix.from_rows([[x, 0, y], [0, z, 0], [1, 0, x]])
    assert block_violations(m, ((0, 2), (1,))) == []
    assert block_pattern(m, ((0, 2), (1,)))
    assert block_violations(m, ((0,), (1, 2))) == [(0, 2), (2, 0)]

    parts = blocks(m, ((0, 2), (1,)))
    assert parts[0] == PolyMatrix.from_rows([[x, y], [1, x]])
    assert direct_sum(parts, ((0, 2), (1,))) == m

    with pytest.raises(DimensionMismatch):
        block_violations(m, ((0, 1),))
    with pytest.raises(DimensionMismatch):
        block_violations(m, ((0, 1), (1, 2)))


def test_flop_discriminant(flop):
    q = quadratic_form_matrix(flop.f, ("x", "y", "z", "t"))
    u, v, w = Poly.var("u"), Poly.var("v"), Poly.var("w")
    assert q[1, 2] == v and q[1, 1] == u and q[2, 2] == w
    assert determinant(q) == (u * w - v * v) ** 2


def test_json(xyz):
    x, y, _ = xyz
    m = PolyMatrix.from_rows([[x, y * y], [0, 1]])
    data = m.to_json()
    assert (data["rows"], data["cols"]) == (2, 2)
    assert PolyMatrix.from_json(data) == m

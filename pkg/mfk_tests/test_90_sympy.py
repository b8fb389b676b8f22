"""Cross-checks against sympy; skipped when it is not installed."""
import pytest

sympy = pytest.importorskip("sympy")

from mfk import catalog  # noqa: E402
from mfk.ideal import Ideal, buchberger  # noqa: E402
from mfk.poly import Poly, parse  # noqa: E402
from mfk.polymat import determinant  # noqa: E402


def to_sympy(p: Poly):
    text = p.to_text().replace("^", "**").replace("*i", "*I")
    return sympy.sympify(text, locals={"I": sympy.I})


def _random_poly(rng):
    x, y, z = (Poly.var(v, ("x", "y", "z")) for v in "xyz")
    p = Poly.zero(("x", "y", "z"))
    for _ in range(3):
        p = p + rng.randint(-4, 4) * x ** rng.randint(0, 3) * y ** rng.randint(0, 2) * z ** rng.randint(0, 2)
    return p


def test_products_expand_the_same(rng):
    for _ in range(50):
        a, b = _random_poly(rng), _random_poly(rng)
        assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


def test_gaussian_coefficients():
    p = parse("(1+i)*x - i*y^2")
    assert sympy.expand(to_sympy(p * p) - to_sympy(p) ** 2) == 0


def test_flop_determinant(flop):
    ours = to_sympy(determinant(flop.phi))
    w = to_sympy(flop.f)
    assert sympy.expand(ours - w ** 2) == 0


def test_d_hypersurface_matches():
    inv = catalog.dn_invariants_from_roots(5, 2, (1, -2, 3, 2, -1))
    X, Y, Z = sympy.symbols("X Y Z")
    F = to_sympy(inv.F)
    gamma = to_sympy(inv.gamma)
    lhs = sympy.expand(Z * F + gamma ** 2)
    rhs = sympy.expand(sympy.prod([Z + t * t for t in (1, -2, 3, 2, -1)]))
    assert sympy.expand(lhs - rhs) == 0
    assert sympy.expand(to_sympy(inv.hypersurface()) - (X ** 2 + Y ** 2 * Z + 2 * gamma * Y - F)) == 0


def test_groebner_basis_matches():
    x, y, z = (Poly.var(v, ("x", "y", "z")) for v in "xyz")
    gens = [x * x - y, x * y - z, y * y - x * z]
    ours = buchberger(Ideal.of(gens))
    theirs = sympy.groebner([to_sympy(g) for g in gens], *sympy.symbols("x y z"), order="grlex")
    assert len(ours.gens) == len(theirs.exprs)
    for g in ours.gens:
        assert theirs.contains(to_sympy(g))

import pytest

from mfk.config import Caps
from mfk.errors import CapExceeded
from mfk.ideal import (
    GRLEX,
    Ideal,
    buchberger,
    contains,
    divide,
    elimination_ideal,
    is_groebner,
    reduce,
    same_principal,
)
from mfk.poly import symbols


def test_division_remainder():
    x, y = symbols("x y")
    g1, g2 = x * y - 1, y * y - 1
    p = x * x * y + x * y * y + y * y
    (q1, q2), r = divide(p, [g1, g2], GRLEX, ("x", "y"))
    assert r == x + y + 1
    assert p == q1 * g1 + q2 * g2 + r


def test_buchberger_gives_groebner_basis():
    x, y, z = symbols("x y z")
    ideal = Ideal.of([x * x - y, x * y - z, y * y - x * z])
    gb = buchberger(ideal)
    assert is_groebner(gb)
    for g in ideal.gens:
        assert reduce(g, gb).is_zero()
    # the input itself is not a Gröbner basis
    assert not is_groebner(Ideal.of([x * x - y, x * y - 1]))


def test_membership():
    x, y = symbols("x y")
    ideal = Ideal.of([x * y - 1])
    assert contains(ideal, x * x * y - x)
    assert not contains(ideal, x)


def test_elimination_of_a_parametrized_cusp():
    x, y, t = symbols("x y t")
    ideal = Ideal.of([x - t * t, y - t ** 3])
    elim = elimination_ideal(ideal, ["x", "y"])
    assert len(elim.gens) == 1
    assert same_principal(elim.gens[0], y * y - x ** 3)
    assert not elim.gens[0].involves(["t"])


def test_same_principal():
    x, y = symbols("x y")
    assert same_principal(2 * x + 2, x + 1)
    assert same_principal(-(x * y), x * y)
    assert not same_principal(x, y)
    assert not same_principal(x, x * 0)


def test_caps():
    x, y = symbols("x y")
    with pytest.raises(CapExceeded) as err:
        buchberger(Ideal.of([x * x - y, x * y - 1]), Caps(max_degree=24, max_basis=1))
    assert err.value.detail["max_basis"] == 1
    with pytest.raises(CapExceeded):
        buchberger(Ideal.of([x ** 3 - y]), Caps(max_degree=2, max_basis=500))

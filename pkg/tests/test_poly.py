from fractions import Fraction

import pytest
from hypothesis import given

from umbral import Poly

from conftest import polys

X = Poly.var("x")
Y = Poly.var("y")


def test_ring_identities():
    assert (X + 1) * (X - 1) == X**2 - 1
    p = 3 * X**2 + Y
    assert p + Poly.const(0) == p
    assert (X * Fraction(1, 2)) * 2 == X


def test_rational_coefficients_cancel_exactly():
    p = X * Fraction(1, 3) + X * Fraction(2, 3)
    assert p == X
    assert (X * Fraction(2, 7)) * Fraction(7, 2) == X


def test_substitute():
    p = Poly.var("n") * X
    assert p.substitute({"n": 3}) == 3 * X
    q = X**2 + Y
    assert q.substitute({"x": Y}) == Y**2 + Y
    r = Poly.var("a_1") ** 2
    assert r.substitute({"a_1": Fraction(1, 2)}) == Poly.const(Fraction(1, 4))


def test_substitute_is_simultaneous():
    p = X + Y
    swapped = p.substitute({"x": Y, "y": X})
    assert swapped == X + Y


def test_derivative():
    assert (X**3).derivative("x") == 3 * X**2
    assert Y.derivative("x") == Poly.const(0)
    assert (X**2 * Y).derivative("y") == X**2


def test_degree_conventions():
    assert Poly.const(0).degree() == -1
    assert Poly.const(5).degree() == 0
    assert (X**2 * Y).degree() == 3
    assert (X + Y**4).degree_in("y") == 4


def test_coefficients_in():
    p = 2 * X**2 * Y + X**2 + 3 * Y - 1
    split = p.coefficients_in("x")
    assert split[2] == 2 * Y + 1
    assert split[0] == 3 * Y - 1


def test_canonical_text():
    assert str(Poly.const(0)) == "0"
    assert str(X**3 + 3 * X**2 + 2 * X) == "x^3+3*x^2+2*x"
    assert str(X**2 - X + Fraction(1, 6)) == "x^2-x+1/6"
    assert str(-X) == "-x"
    assert str(X**2 * Y + X * Y**2) == "x^2*y+x*y^2"


def test_indexed_symbols_sort_numerically():
    p = Poly.var("a_10") + Poly.var("a_2")
    assert str(p) == "a_2+a_10"


def test_json_roundtrip():
    p = X**2 * Y - Poly.var("a_1") * Fraction(1, 2) + 3
    data = p.to_json()
    assert data[0] == {"coeff": "1", "vars": {"x": 2, "y": 1}}
    assert Poly.from_json(data) == p


def test_pow_rejects_negative():
    with pytest.raises(ValueError):
        X ** (-1)


def test_as_rational():
    assert Poly.const(Fraction(3, 4)).as_rational() == Fraction(3, 4)
    with pytest.raises(ValueError):
        X.as_rational()


@given(polys(), polys(), polys())
def test_mul_associative_and_distributive(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys(), polys())
def test_mul_commutative(p, q):
    assert p * q == q * p


@given(polys(), polys())
def test_derivative_product_rule(p, q):
    lhs = (p * q).derivative("x")
    rhs = p.derivative("x") * q + p * q.derivative("x")
    assert lhs == rhs


@given(polys(variables=("x",)))
def test_substitution_roundtrip(p):
    there = p.substitute({"x": Y})
    back = there.substitute({"y": X})
    assert back == p

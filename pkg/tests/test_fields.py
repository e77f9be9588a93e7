"""Field arithmetic: axioms, inverses, and extension construction."""

import random
from fractions import Fraction

import pytest

from lyco import QQ, NonInvertible, PrimeField, SimpleExtension, ZeroInversion

GAUSS = SimpleExtension(QQ, "i", [1, 0, 1])
F7 = PrimeField(7)
CUBIC = SimpleExtension(QQ, "c", [2, 0, 0, 1])  # c^3 = -2


def random_element(field, rng):
    if field is QQ:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    if isinstance(field, PrimeField):
        return field.from_int(rng.randint(0, field.p - 1))
    return tuple(QQ.coerce(rng.randint(-5, 5)) for _ in range(field.deg))


@pytest.mark.parametrize("field", [QQ, F7, GAUSS, CUBIC], ids=lambda f: f.describe())
def test_field_axioms_random(field):
    rng = random.Random(20240811)
    for _ in range(200):
        a = random_element(field, rng)
        b = random_element(field, rng)
        c = random_element(field, rng)
        assert field.add(a, b) == field.add(b, a)
        assert field.mul(a, b) == field.mul(b, a)
        assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.mul(a, field.add(b, c)) == field.add(
            field.mul(a, b), field.mul(a, c)
        )
        assert field.add(a, field.zero) == a
        assert field.mul(a, field.one) == a
        assert field.add(a, field.neg(a)) == field.zero
        assert field.sub(a, b) == field.add(a, field.neg(b))
        if a != field.zero:
            assert field.mul(a, field.inv(a)) == field.one
            assert field.div(b, a) == field.mul(b, field.inv(a))


@pytest.mark.parametrize("field", [QQ, F7, GAUSS, CUBIC], ids=lambda f: f.describe())
def test_zero_inversion_raises(field):
    with pytest.raises((ZeroInversion, NonInvertible)):
        field.inv(field.zero)


def test_rationals_exact():
    a = Fraction(1, 3)
    b = Fraction(1, 6)
    assert QQ.add(a, b) == Fraction(1, 2)
    assert QQ.mul(a, b) == Fraction(1, 18)
    assert QQ.inv(Fraction(-7, 3)) == Fraction(-3, 7)
    assert QQ.coerce(5) == Fraction(5)
    assert QQ.describe() == "Q"


def test_prime_field_fermat_and_construction():
    for p in (2, 3, 5, 7, 11, 13):
        F = PrimeField(p)
        for a in range(p):
            power = F.one
            for _ in range(p):
                power = F.mul(power, a)
            assert power == a % p  # Fermat: a^p = a
            if a:
                assert F.mul(a, F.inv(a)) == F.one
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(1)
    assert PrimeField(7).describe() == "F7"


def test_gaussian_arithmetic():
    i = GAUSS.generator
    assert GAUSS.mul(i, i) == GAUSS.neg(GAUSS.one)
    # (1+i)(1-i) = 2
    one_plus_i = GAUSS.add(GAUSS.one, i)
    one_minus_i = GAUSS.sub(GAUSS.one, i)
    assert GAUSS.mul(one_plus_i, one_minus_i) == GAUSS.from_int(2)
    # 1/(1+i) = (1-i)/2
    inv = GAUSS.inv(one_plus_i)
    assert inv == (Fraction(1, 2), Fraction(-1, 2))
    assert GAUSS.describe() == "Q(i)/i^2+1"
    assert GAUSS.is_rational(GAUSS.from_int(3))
    assert not GAUSS.is_rational(i)


def test_cubic_extension_relation():
    c = CUBIC.generator
    c3 = CUBIC.mul(CUBIC.mul(c, c), c)
    assert c3 == CUBIC.from_int(-2)


def test_reducible_minpoly_rejected():
    with pytest.raises(ValueError):
        SimpleExtension(QQ, "a", [-1, 0, 1])  # a^2 - 1 = (a-1)(a+1)
    with pytest.raises(ValueError):
        SimpleExtension(QQ, "a", [1, 2, 1])  # (a+1)^2
    with pytest.raises(ValueError):
        SimpleExtension(PrimeField(5), "a", [1, 0, 1])  # splits mod 5
    # x^2+1 stays irreducible mod 7
    E = SimpleExtension(PrimeField(7), "a", [1, 0, 1])
    assert E.mul(E.generator, E.generator) == E.neg(E.one)


def test_extension_towers_rejected():
    with pytest.raises(ValueError):
        SimpleExtension(GAUSS, "j", [1, 0, 1])


def test_nonmonic_and_low_degree_rejected():
    with pytest.raises(ValueError):
        SimpleExtension(QQ, "a", [1, 1])  # degree 1
    # non-monic input is normalized by the constructor only if monic;
    # a leading 2 must be rejected
    with pytest.raises(ValueError):
        SimpleExtension(QQ, "a", [1, 0, 2])

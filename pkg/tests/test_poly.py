"""Multivariate polynomials: orders, arithmetic, parsing, quotient rings."""

import random
from fractions import Fraction

import pytest

import oracles
from lyco import (
    MonomialOverflow,
    PrimeField,
    QQ,
    RingCtx,
    RingMismatch,
    SessionSyntaxError,
    SimpleExtension,
    UndeclaredVariable,
)
from lyco.poly import GrevLex, Lex

R3 = RingCtx(QQ, ["x", "y", "z"], "grevlex")
R3L = RingCtx(QQ, ["x", "y", "z"], "lex")


def random_exps(rng, nvars, maxdeg=4):
    return tuple(rng.randint(0, maxdeg) for _ in range(nvars))


def random_poly(ring, rng, nterms=5, maxdeg=4):
    d = {}
    field = ring.field
    for _ in range(nterms):
        c = field.coerce(rng.randint(-6, 6))
        if c == field.zero:
            continue
        d[random_exps(rng, ring.nvars, maxdeg)] = c
    return ring.from_dict(d)


# ---------------------------------------------------------------------------
# monomial orders against the textbook comparators


def test_orders_match_reference_definitions():
    rng = random.Random(7)
    lex, grevlex = Lex(), GrevLex()
    for _ in range(3000):
        a = random_exps(rng, 3)
        b = random_exps(rng, 3)
        assert (lex.key(a) > lex.key(b)) == oracles.lex_greater(a, b)
        assert (grevlex.key(a) > grevlex.key(b)) == oracles.grevlex_greater(a, b)


def test_order_frozen_cases():
    # grevlex on x,y,z: x^2 > xy > y^2 > xz > yz > z^2
    ring = R3
    seq = ["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"]
    keys = [GrevLex.key(ring.parse(s).leading_monomial()) for s in seq]
    assert keys == sorted(keys, reverse=True)
    # lex: x^2 > xy > xz > y^2 > yz > z^2
    seq = ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]
    keys = [Lex.key(ring.parse(s).leading_monomial()) for s in seq]
    assert keys == sorted(keys, reverse=True)


def test_terms_sorted_descending():
    rng = random.Random(11)
    for ring in (R3, R3L):
        for _ in range(50):
            p = random_poly(ring, rng)
            keys = [ring.order.key(m) for m, _ in p.terms]
            assert keys == sorted(keys, reverse=True)


# ---------------------------------------------------------------------------
# ring arithmetic against naive dict arithmetic


@pytest.mark.parametrize(
    "field", [QQ, PrimeField(7), SimpleExtension(QQ, "i", [1, 0, 1])],
    ids=lambda f: f.describe(),
)
def test_arithmetic_matches_naive_oracle(field):
    ring = RingCtx(field, ["x", "y"], "grevlex")
    rng = random.Random(101)
    for _ in range(120):
        p = random_poly(ring, rng, nterms=4, maxdeg=3)
        q = random_poly(ring, rng, nterms=4, maxdeg=3)
        dp, dq = oracles.dict_of(p), oracles.dict_of(q)
        assert oracles.dict_of(p + q) == oracles.naive_add(field, dp, dq)
        assert oracles.dict_of(p * q) == oracles.naive_mul(field, dp, dq)
        assert oracles.dict_of(-p) == oracles.naive_scale(field, dp, field.neg(field.one))
        assert p - q == p + (-q)
        assert (p + q) * (p - q) == p * p - q * q
        assert p * ring.one == p
        assert p * ring.zero == ring.zero
        assert (p * q) * p == p * (q * p)


def test_power_and_scale():
    x, y, _ = R3.gens()
    p = x + y
    assert p**0 == R3.one
    assert p**3 == x**3 + 3 * x**2 * y + 3 * x * y**2 + y**3
    assert p.scale(Fraction(1, 2)) * 2 == p
    with pytest.raises(ValueError):
        p ** (-1)


def test_integer_operand_coercion():
    x = R3.gens()[0]
    assert 2 * x == x + x
    assert x + 1 == x + R3.one
    assert 1 - x == -(x - 1)


# ---------------------------------------------------------------------------
# parse / print


def test_parse_str_round_trip_random():
    rng = random.Random(202)
    fields = [QQ, PrimeField(5), SimpleExtension(QQ, "i", [1, 0, 1])]
    for field in fields:
        ring = RingCtx(field, ["x", "y", "z"], "grevlex")
        for _ in range(80):
            p = random_poly(ring, rng)
            assert ring.parse(str(p)) == p
    assert str(R3.zero) == "0"
    assert R3.parse("0") == R3.zero


def test_parse_frozen_forms():
    x, y, z = R3.gens()
    cases = {
        "x+y*z": x + y * z,
        "(x+y)^2": x**2 + 2 * x * y + y**2,
        "2x(y+z)": 2 * x * y + 2 * x * z,
        "-x^2 - -y": -(x**2) + y,
        "x - 2/3 y": x - Fraction(2, 3) * y,
        "x*y^2": x * y**2,
        "xy^2": x * y**2,  # glued symbols; ^ binds to the last factor
        "xyz": x * y * z,
        "(x+y)(x-y)": x**2 - y**2,
        "3": R3.from_int(3),
    }
    for text, expected in cases.items():
        assert R3.parse(text) == expected, text


def test_parse_glued_respects_declared_names():
    ring = RingCtx(QQ, ["x1", "x12", "y"], "grevlex")
    x1, x12, y = ring.gens()
    # longest declared name wins during splitting
    assert ring.parse("x12y") == x12 * y
    assert ring.parse("x1y") == x1 * y


def test_parse_extension_generator():
    G = SimpleExtension(QQ, "i", [1, 0, 1])
    ring = RingCtx(G, ["w", "x"], "lex")
    w, x = ring.gens()
    p = ring.parse("w - i*x")
    q = ring.parse("w + ix")
    assert p * q == ring.parse("w^2 + x^2")


def test_parse_errors():
    with pytest.raises(UndeclaredVariable):
        R3.parse("x + q")
    for bad in ("x +", "(x", "x ^ y", "2 // 3", "^2"):
        with pytest.raises(SessionSyntaxError):
            R3.parse(bad)


# ---------------------------------------------------------------------------
# structure queries


def test_homogeneity_and_degrees():
    x, y, z = R3.gens()
    assert (x * y + z**2).is_homogeneous()
    assert not (x * y + z).is_homogeneous()
    assert (x * y + z).total_degree() == 2
    assert R3.zero.total_degree() == -1
    assert (x**2 * y).degree_in(1) == 1
    assert (x + y).support_vars() == [0, 1]
    assert (x + 1).constant_coeff() == Fraction(1)


def test_substitute():
    x, y, z = R3.gens()
    target = RingCtx(QQ, ["u", "v"], "grevlex")
    u, v = target.gens()
    p = x**2 + y * z
    q = p.substitute(target, [u, v, target.one])
    assert q == u**2 + v
    # substitution is a ring map on products
    a, b = x + y, y - z
    img = [u, v, u + v]
    assert (a * b).substitute(target, img) == a.substitute(target, img) * b.substitute(
        target, img
    )


def test_from_dict_validates_exponent_width():
    with pytest.raises(ValueError):
        R3.from_dict({(1, 2): Fraction(1)})
    with pytest.raises(MonomialOverflow):
        big = R3.from_dict({(2**40, 0, 0): Fraction(1)})
        _ = big * big


def test_ring_mismatch_guard():
    other = RingCtx(QQ, ["x", "y", "z"], "lex")
    with pytest.raises(RingMismatch):
        _ = R3.gens()[0] + other.gens()[0]


# ---------------------------------------------------------------------------
# hypersurface quotients


def test_quotient_ring_reduction():
    amb = RingCtx(QQ, ["u", "v", "x", "y"], "grevlex")
    f = amb.parse("x*v - y*u")
    Q = amb.with_modulus(f)
    # the relation itself vanishes
    assert Q.parse("x*v - y*u").is_zero()
    # products are reduced to normal form automatically
    assert Q.parse("x*v") == Q.parse("y*u")
    lhs = Q.parse("x") * Q.parse("v^2")
    assert lhs == Q.parse("y*u*v")
    assert Q.dimension == 3
    assert Q.ambient() == amb
    # arithmetic stays associative/distributive in the quotient
    rng = random.Random(42)
    for _ in range(40):
        p = random_poly(Q, rng, nterms=3, maxdeg=2)
        q = random_poly(Q, rng, nterms=3, maxdeg=2)
        r = random_poly(Q, rng, nterms=3, maxdeg=2)
        assert p * (q + r) == p * q + p * r
        assert (p * q) * r == p * (q * r)


def test_quotient_modulus_constraints():
    amb = RingCtx(QQ, ["x", "y"], "grevlex")
    from lyco import NonHomogeneousInput

    with pytest.raises(NonHomogeneousInput):
        amb.with_modulus(amb.parse("x^2 + y"))
    with pytest.raises(ValueError):
        amb.with_modulus(amb.parse("3"))

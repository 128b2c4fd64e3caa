"""Scalar field: canonical forms, arithmetic laws, specialization."""

import random
from fractions import Fraction

import pytest

from semigraded.scalars import (
    ParamDecl,
    ScalarField,
    SpecializationError,
    scalar_arith,
    scalar_normalize,
    scalar_specialize,
)


def field_qnu():
    return ScalarField(
        (ParamDecl("q", invertible=True, root_order=2), ParamDecl("nu", invertible=True))
    )


def test_paramless_field_uses_fractions():
    field = ScalarField(())
    assert field.zero == Fraction(0)
    assert field.one == Fraction(1)
    assert isinstance(field.coerce(3), Fraction)
    assert field.coerce(Fraction(2, 4)) == Fraction(1, 2)


def test_parameter_and_root_access():
    field = field_qnu()
    q = field.parameter("q")
    assert field.format(q) == "q"
    half = field.root_power("q", 1, 2)
    assert half * half == q
    assert field.format(half) == "q^(1/2)"


def test_unknown_parameter_rejected():
    field = field_qnu()
    with pytest.raises(KeyError):
        field.parameter("zeta")


def test_arithmetic_field_laws():
    field = field_qnu()
    q = field.parameter("q")
    nu = field.parameter("nu")
    rng = random.Random(7)
    samples = [
        field.one,
        q,
        nu,
        q + nu,
        field.one / q,
        q * nu - field.coerce(2),
        field.root_power("q", 3, 2) + nu**2,
    ]
    for _ in range(25):
        a, b, c = (samples[rng.randrange(len(samples))] for _ in range(3))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a - a == field.zero
        if a != field.zero:
            assert a * (field.one / a) == field.one


def test_normalization_is_canonical():
    field = field_qnu()
    q = field.parameter("q")
    nu = field.parameter("nu")
    a = (q**2 - nu**2) / (q - nu)
    b = q + nu
    assert a == b
    assert field.format(a) == field.format(b)
    # the reduced fraction of (q^2 + q*nu) / q must drop the common factor
    c = (q**2 + q * nu) / q
    assert c == q + nu


def test_scalar_normalize_and_arith_dispatch():
    field = field_qnu()
    q = field.parameter("q")
    squared = q * q
    assert scalar_normalize(field, squared.num, q.num) == q
    assert scalar_arith("add", q, field.one) == q + field.one
    assert scalar_arith("mul", q, q) == q**2
    assert scalar_arith("neg", q) == -q
    assert scalar_arith("inv", q) == field.one / q
    assert scalar_arith("inv", Fraction(4)) == Fraction(1, 4)
    with pytest.raises(ZeroDivisionError):
        scalar_arith("inv", field.zero)
    with pytest.raises(ValueError):
        scalar_arith("pow", q, q)


def test_specialize_is_a_homomorphism():
    field = field_qnu()
    q = field.parameter("q")
    nu = field.parameter("nu")
    assignment = {"q": Fraction(3), "nu": Fraction(1, 2)}
    samples = [q, nu, q + nu, q * nu - field.coerce(5), field.one / (q + nu)]
    for a in samples:
        for b in samples:
            left = field.specialize(a * b, assignment)
            right = field.specialize(a, assignment) * field.specialize(b, assignment)
            assert left == right
            assert field.specialize(a + b, assignment) == field.specialize(
                a, assignment
            ) + field.specialize(b, assignment)


def test_root_specialization_squares_the_value():
    field = field_qnu()
    q = field.parameter("q")
    half = field.root_power("q", 1, 2)
    # assigning v to a root-order-2 parameter means q^(1/2) = v, so q = v^2
    assignment = {"q": Fraction(3), "nu": Fraction(1)}
    assert field.specialize(half, assignment) == Fraction(3)
    assert field.specialize(q, assignment) == Fraction(9)


def test_default_specialization_primes_plus_one():
    field = field_qnu()
    defaults = field.default_specialization()
    assert defaults == {"q": Fraction(3), "nu": Fraction(4)}
    three = ScalarField(
        (ParamDecl("a"), ParamDecl("b"), ParamDecl("c"))
    ).default_specialization()
    assert list(three.values()) == [Fraction(3), Fraction(4), Fraction(6)]


def test_invertible_parameter_rejects_zero():
    field = field_qnu()
    q = field.parameter("q")
    with pytest.raises(SpecializationError):
        field.specialize(q, {"q": Fraction(0), "nu": Fraction(1)})


def test_denominator_zero_under_specialization_raises():
    field = field_qnu()
    q = field.parameter("q")
    nu = field.parameter("nu")
    x = field.one / (q - nu)
    # q has root_order 2, so "q"=2 binds the root: q specializes to 4
    with pytest.raises(SpecializationError):
        field.specialize(x, {"q": Fraction(2), "nu": Fraction(4)})


def test_scalar_specialize_wrapper():
    field = field_qnu()
    q = field.parameter("q")
    value = scalar_specialize(field, q + field.one, {"q": 2, "nu": 1})
    assert value == Fraction(5)  # q = 2^2 under the root convention


def test_format_round_trip_through_parser():
    from semigraded.presentation import parse_scalar

    field = field_qnu()
    q = field.parameter("q")
    nu = field.parameter("nu")
    samples = [
        field.one,
        -field.one,
        Fractionish(field, 3, 2),
        q,
        field.one / q,
        field.root_power("q", 1, 2),
        -field.root_power("q", 3, 2) * nu,
        (q + nu) / (q - nu),
        q**2 + field.coerce(2) * q + field.one,
    ]
    for x in samples:
        assert parse_scalar(field, field.format(x)) == x


def Fractionish(field, a, b):
    return field.coerce(Fraction(a, b))

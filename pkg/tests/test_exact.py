from fractions import Fraction

import math
import pytest
from hypothesis import given, settings, strategies as st

from hp3flat.exact import ExactAngle, Surd, is_rational_square, parse_rational, to_fraction

pos_frac = st.fractions(min_value=Fraction(1, 1000), max_value=1000)


def test_is_rational_square_examples():
    assert is_rational_square(Fraction(135, 128)) is None
    assert is_rational_square(Fraction(9, 16)) == Fraction(3, 4)
    assert is_rational_square(0) == 0
    with pytest.raises(ValueError):
        is_rational_square(Fraction(-1, 4))


@given(st.fractions(min_value=0, max_value=10**6))
def test_squares_are_recognized(q):
    assert is_rational_square(q * q) == q


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_non_squares_are_rejected(n, d):
    q = Fraction(n, d)
    root = is_rational_square(q)
    if root is None:
        assert math.isqrt(q.numerator) ** 2 != q.numerator or math.isqrt(q.denominator) ** 2 != q.denominator
    else:
        assert root * root == q


def test_floats_are_refused():
    with pytest.raises(TypeError):
        to_fraction(0.25)
    with pytest.raises(ValueError):
        parse_rational("0.25")
    assert parse_rational(" -3/12 ") == Fraction(-1, 4)


def test_exact_angle():
    a = ExactAngle.from_cos("1/4")
    assert a.sin_sq == Fraction(15, 16)
    assert a.sin_sign == 1
    assert a.supplement().cos == Fraction(-1, 4)
    assert a.double().cos == Fraction(-7, 8)
    assert a.double().sin_sq == 4 * a.cos ** 2 * a.sin_sq
    assert math.isclose(a.radians, math.acos(0.25))
    for bad in (1, -1, Fraction(3, 2)):
        with pytest.raises(ValueError):
            ExactAngle(bad)


@settings(deadline=None)
@given(pos_frac)
def test_surd_sqrt_squares_back(q):
    s = Surd.sqrt(q)
    assert (s * s) == Surd.rational(q)
    assert math.isclose(float(s), math.sqrt(q), rel_tol=1e-12)


@settings(deadline=None)
@given(pos_frac, pos_frac, st.fractions(max_denominator=50, min_value=-5, max_value=5),
       st.fractions(max_denominator=50, min_value=-5, max_value=5))
def test_surd_field_operations(p, q, a, b):
    x = a + Surd.sqrt(p)
    y = b * Surd.sqrt(q) + 1
    ref = (float(x) * float(y), float(x) + float(y))
    assert math.isclose(float(x * y), ref[0], rel_tol=1e-9, abs_tol=1e-9)
    assert math.isclose(float(x + y), ref[1], rel_tol=1e-9, abs_tol=1e-9)
    if not y.is_zero():
        assert (x / y) * y == x


def test_surd_inverse_multi_prime():
    x = 1 + Surd.sqrt(2) + Surd.sqrt(3) + Surd.sqrt(Fraction(5, 7))
    assert x * x.inverse() == Surd.rational(1)
    with pytest.raises(ZeroDivisionError):
        Surd().inverse()


def test_surd_rationality():
    assert Surd.sqrt(Fraction(9, 4)).is_rational()
    assert Surd.sqrt(Fraction(9, 4)).rational_value() == Fraction(3, 2)
    assert not Surd.sqrt(Fraction(15, 16)).is_rational()
    with pytest.raises(ValueError):
        Surd.sqrt(2).rational_value()

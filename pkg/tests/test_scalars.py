from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prelie.errors import FieldMismatchError
from prelie.scalars import (
    QQ,
    FpElement,
    PrimeField,
    field_by_name,
    field_name,
    is_prime,
    scalar_to_str,
)


def test_rational_lowest_terms():
    x = QQ("2/4")
    assert x == Fraction(1, 2)
    assert scalar_to_str(x) == "1/2"
    assert scalar_to_str(QQ("-2/4")) == "-1/2"
    assert scalar_to_str(QQ(3)) == "3"


def test_rational_parse_roundtrip():
    for s in ["0", "7", "-1/2", "22/7"]:
        assert QQ.format(QQ.parse(s)) == s


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(1)
    assert PrimeField(2).p == 2
    assert PrimeField(13).p == 13


def test_is_prime_small():
    primes = [p for p in range(2, 30) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_fp_arithmetic():
    F5 = PrimeField(5)
    a, b = F5(3), F5(4)
    assert a + b == F5(2)
    assert a - b == F5(4)
    assert a * b == F5(2)
    assert a / b == F5(2)  # 3 * 4^{-1} = 3 * 4 = 12 = 2
    assert -a == F5(2)
    assert bool(F5(0)) is False
    assert a == 3 and a != 4


def test_fp_parse_and_format():
    F3 = PrimeField(3)
    assert F3.parse("2 mod 3") == F3(2)
    assert F3.parse("5") == F3(2)
    assert F3.parse("1/2") == F3(2)  # inverse of 2 is 2
    assert scalar_to_str(F3(2)) == "2 mod 3"
    with pytest.raises(FieldMismatchError):
        F3.parse("1 mod 5")


def test_fp_cross_field_mixing_rejected():
    with pytest.raises(FieldMismatchError):
        PrimeField(3)(1) + PrimeField(5)(1)


def test_field_names():
    assert field_by_name("q") is QQ
    assert field_by_name("f7") == PrimeField(7)
    assert field_name(PrimeField(2)) == "f2"
    assert field_name(QQ) == "q"
    with pytest.raises(ValueError):
        field_by_name("r64")


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_fp_add_sub_inverse(a, b):
    F7 = PrimeField(7)
    x, y = F7(a), F7(b)
    assert x + y - y == x


@given(st.fractions(max_denominator=30), st.fractions(max_denominator=30))
def test_rational_exactness(a, b):
    assert QQ(a) + QQ(b) - QQ(b) == QQ(a)

from hypothesis import given, strategies as st
import pytest

from qdeform.fields import QQ, FpElement, PrimeField, field_by_name


def test_rational_basics():
    assert QQ.parse("3/4") + QQ.parse("1/4") == QQ.one
    assert QQ.fmt(QQ.parse("-6/4")) == "-3/2"
    assert QQ.fmt(QQ.of(7)) == "7"
    assert not QQ.zero
    assert QQ.one


def test_prime_field_arithmetic():
    F7 = PrimeField(7)
    a, b = F7.of(3), F7.of(5)
    assert a + b == F7.of(1)
    assert a * b == F7.of(1)
    assert a / b == a * F7.of(3)  # 5^-1 = 3 mod 7
    assert -a == F7.of(4)
    assert F7.parse("1/2") == F7.of(4)
    with pytest.raises(ZeroDivisionError):
        a / F7.zero


def test_prime_field_validation():
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ValueError):
        PrimeField(1)
    with pytest.raises(ValueError):
        PrimeField(2**31 + 11)
    assert PrimeField(2).of(3) == PrimeField(2).one


def test_field_by_name():
    assert field_by_name("Q") == QQ
    assert field_by_name("Fp:5") == PrimeField(5)
    with pytest.raises(ValueError):
        field_by_name("R")


def test_fp_equality_scoped_to_modulus():
    assert FpElement(5, 2) != FpElement(7, 2)
    assert hash(FpElement(5, 7)) == hash(FpElement(5, 2))


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_field_axioms(x, y, z):
    for field in (QQ, PrimeField(7), PrimeField(2)):
        a, b, c = field.of(x), field.of(y), field.of(z)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == field.zero
        if b:
            assert (a / b) * b == a

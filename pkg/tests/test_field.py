import itertools

import pytest
from hypothesis import given, strategies as st

from bcdual.field import F9, OMEGA, ONE, ZERO, elements, f3, frobenius, units


def poly_mul(a, b):
    """(a0 + a1 x)(b0 + b1 x) mod (3, x^2 - x - 1), written out by hand."""
    c0 = a[0] * b[0]
    c1 = a[0] * b[1] + a[1] * b[0]
    c2 = a[1] * b[1]  # x^2 = x + 1
    return ((c0 + c2) % 3, (c1 + c2) % 3)


PAIRS = [(a, b) for a in range(3) for b in range(3)]
f9s = st.builds(F9, st.integers(-5, 5), st.integers(-5, 5))


def key(x):
    return (x.c0 % 3, x.c1 % 3)


def test_balanced_f3():
    assert [f3(n) for n in range(-3, 4)] == [0, 1, -1, 0, 1, -1, 0]


def test_exhaustive_multiplication_table():
    for a, b in itertools.product(PAIRS, repeat=2):
        assert key(F9(*a) * F9(*b)) == poly_mul(a, b)
        assert key(F9(*a) + F9(*b)) == ((a[0] + b[0]) % 3, (a[1] + b[1]) % 3)


def test_omega_is_a_primitive_eighth_root():
    powers = [OMEGA ** k for k in range(8)]
    assert len(set(powers)) == 8
    assert OMEGA ** 8 == ONE
    assert OMEGA ** 4 == F9(-1)
    assert OMEGA ** 2 == OMEGA + 1


def test_units_and_inverse():
    assert len(units()) == 8 and len(list(elements())) == 9
    for x in units():
        assert x * x.inverse() == ONE
        assert x ** -3 == (x ** 3).inverse()
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_frobenius_is_a_field_automorphism_of_order_two():
    for x, y in itertools.product(elements(), repeat=2):
        assert frobenius(x * y) == frobenius(x) * frobenius(y)
        assert frobenius(x + y) == frobenius(x) + frobenius(y)
        assert frobenius(frobenius(x)) == x
    fixed = [x for x in elements() if frobenius(x) == x]
    assert sorted(key(x) for x in fixed) == [(0, 0), (1, 0), (2, 0)]


def test_norm_lands_in_f3():
    for x in elements():
        assert (x * frobenius(x)).in_f3()
    for a in units():
        assert a * a ** 3 == a ** 4 and (a ** 4).in_f3()


def test_discrete_log_and_printing():
    for k in range(8):
        assert (OMEGA ** k).log() == k
        assert F9.parse(str(OMEGA ** k)) == OMEGA ** k
    assert str(F9(-1)) == "-1"


@given(f9s, f9s, f9s)
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == ZERO
    if y:
        assert (x / y) * y == x


def test_elements_are_immutable():
    with pytest.raises(AttributeError):
        ONE.c0 = 2

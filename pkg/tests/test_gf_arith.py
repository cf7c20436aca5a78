from __future__ import annotations


import numpy as np
import pytest
from hypothesis import given, strategies as st

from cosetcodes import Field, field_new, gf
from cosetcodes.errors import FieldMismatchError, InfeasibleParametersError
from cosetcodes._conway import CONWAY
from oracles import field_tables, is_irreducible, is_primitive

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (2, 8)]


def test_prime_fields():
    f2, f3 = field_new(2, 1), field_new(3, 1)
    assert f2.order == 2 and [int(x) for x in f2] == [0, 1]
    assert f3.order == 3
    assert int(f2(1) + f2(1)) == 0
    assert int(f3(2).inverse()) == 2


def test_f4_defining_polynomial_and_product():
    f4 = field_new(2, 2)
    assert f4.modulus == (1, 1, 1)  # x^2 + x + 1
    x = f4(2)
    assert int(x * x) == 3  # x + 1
    assert int(x.frobenius(1, 2)) == 3


def test_frobenius_fixes_base_field_and_zero():
    f4 = field_new(2, 2)
    for a in (0, 1):
        assert int(f4(a).frobenius(1, 2)) == a
    for p, e in FIELDS:
        f = field_new(p, e)
        assert int(f(0).frobenius(3)) == 0


@pytest.mark.parametrize("p,e", FIELDS)
def test_defining_polynomial_irreducible(p, e):
    f = field_new(p, e)
    assert len(f.modulus) == e + 1 and f.modulus[-1] == 1
    assert is_irreducible(list(f.modulus), p)


def test_every_tabulated_polynomial_is_primitive():
    for (p, e), coeffs in CONWAY.items():
        m = list(coeffs)
        assert len(m) == e + 1 and m[-1] == 1
        assert is_irreducible(m, p) and is_primitive(m, p), (p, e)


@pytest.mark.parametrize("p,e", [fe for fe in FIELDS if fe[0] ** fe[1] <= 32])
def test_tables_match_polynomial_arithmetic(p, e):
    f = field_new(p, e)
    add, mul = field_tables(p, e, tuple(f.modulus))
    a = np.arange(f.order)
    assert np.array_equal(f.add_arr(a[:, None], a[None, :]), add)
    assert np.array_equal(f.mul_arr(a[:, None], a[None, :]), mul)


@pytest.mark.parametrize("p,e", [fe for fe in FIELDS if fe[0] ** fe[1] <= 32])
def test_field_axioms_exhaustive(p, e):
    f = field_new(p, e)
    q = f.order
    a = np.arange(q)
    A, B, C = np.meshgrid(a, a, a, indexing="ij")
    add, mul = f.add_arr, f.mul_arr
    assert np.array_equal(add(A, B), add(B, A))
    assert np.array_equal(mul(A, B), mul(B, A))
    assert np.array_equal(add(add(A, B), C), add(A, add(B, C)))
    assert np.array_equal(mul(mul(A, B), C), mul(A, mul(B, C)))
    assert np.array_equal(mul(A, add(B, C)), add(mul(A, B), mul(A, C)))
    nz = a[1:]
    assert np.all(mul(nz, f.inv_arr(nz)) == 1)
    assert np.all(add(a, f.neg_arr(a)) == 0)


@pytest.mark.parametrize("p,e", FIELDS)
def test_fermat_and_frobenius_order(p, e):
    f = field_new(p, e)
    for v in range(f.order):
        x = f(v)
        assert int(x ** f.order) == v
        assert int(x.frobenius(e)) == v  # x^(p^e) = x


@pytest.mark.parametrize("p,e", FIELDS)
def test_serialization_round_trip(p, e):
    f = field_new(p, e)
    for v in range(f.order):
        c = f.coefficients(v)
        assert len(c) == e and all(0 <= x < p for x in c)
        assert f.from_coefficients(c) == v


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        gf(5)(0).inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        gf(4)(1) + gf(2)(1)


@pytest.mark.parametrize("p,e", [(4, 1), (1, 1), (2, 0), (2, 17)])
def test_invalid_fields(p, e):
    with pytest.raises(InfeasibleParametersError):
        Field(p, e)


def test_gf_rejects_non_prime_power():
    with pytest.raises(InfeasibleParametersError):
        gf(6)


def test_fields_are_cached():
    assert gf(8) is field_new(2, 3)


@given(st.sampled_from([(2, 4), (3, 2), (2, 8), (5, 2)]), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 12))
def test_frobenius_is_additive_and_multiplicative(fe, x, y, i):
    f = field_new(*fe)
    a, b = f(x % f.order), f(y % f.order)
    assert (a + b).frobenius(i) == a.frobenius(i) + b.frobenius(i)
    assert (a * b).frobenius(i) == a.frobenius(i) * b.frobenius(i)


def test_integers_act_through_prime_subfield():
    f9 = gf(9)
    assert int(f9(5) * 1) == 5
    assert int(f9(5) * 3) == 0
    assert int(f9(4) + 4) == int(f9(4) + f9(1))

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from piso.field import (
    FiniteField,
    field_make,
    is_irreducible,
    is_prime,
    poly_add,
    poly_divmod,
    poly_factor,
    poly_gcd,
    poly_mul,
    poly_trim,
    prime_factors,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2)]


def _naive_mul(F: FiniteField, a: int, b: int) -> int:
    """Schoolbook product of digit polynomials reduced by the modulus."""
    da, db = F.digits(a), F.digits(b)
    prod = [0] * (2 * F.r - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + int(x) * int(y)) % F.p
    mod = list(F.modulus)  # low to high, monic
    for k in range(len(prod) - 1, F.r - 1, -1):
        c = prod[k]
        if c:
            for t in range(F.r + 1):
                prod[k - F.r + t] = (prod[k - F.r + t] - c * mod[t]) % F.p
    return int(sum(prod[i] * F.p**i for i in range(F.r)))


@pytest.mark.parametrize("p,r", FIELDS)
def test_multiplication_matches_schoolbook(p, r):
    F = field_make(p, r)
    for a in range(F.q):
        for b in range(F.q):
            assert int(F.mul(a, b)) == _naive_mul(F, a, b)


@pytest.mark.parametrize("p,r", FIELDS)
def test_field_axioms(p, r):
    F = field_make(p, r)
    els = np.arange(F.q)
    assert np.all(F.add(els, F.neg(els)) == 0)
    nz = els[1:]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    # the multiplicative group is cyclic of order q - 1
    assert np.all(F.power(nz, F.q - 1) == 1)
    assert np.all(F.frobenius(els) == F.power(els, p))


def _has_root(coeffs, p):
    return any(sum(c * x**i for i, c in enumerate(coeffs)) % p == 0 for x in range(p))


@pytest.mark.parametrize("p,r", [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3), (7, 2)])
def test_modulus_is_least_irreducible(p, r):
    # degree 2 and 3: irreducible exactly when rootless
    F = field_make(p, r)
    assert not _has_root(F.modulus, p)
    for high_to_low in itertools.product(range(p), repeat=r):
        coeffs = tuple(reversed(high_to_low)) + (1,)
        if coeffs == tuple(F.modulus):
            break
        assert _has_root(coeffs, p)


@given(st.integers(0, 3), st.lists(st.integers(0, 4), min_size=1, max_size=7))
def test_factorisation_multiplies_back(which, coeffs):
    p = [2, 3, 5, 7][which]
    F = field_make(p, 1)
    f = poly_trim(np.array([c % p for c in coeffs] + [1]))
    factors = poly_factor(f, F)
    prod = np.array([1])
    for g, e in factors:
        assert is_irreducible(g, F)
        for _ in range(e):
            prod = poly_mul(prod, g, F)
    assert np.array_equal(poly_trim(prod), f)


def test_x4_minus_1_splits_over_f5():
    F = field_make(5, 1)
    f = np.array([4, 0, 0, 0, 1])
    factors = poly_factor(f, F)
    assert [len(g) - 1 for g, _ in factors] == [1, 1, 1, 1]


@given(st.lists(st.integers(0, 2), min_size=1, max_size=6), st.lists(st.integers(0, 2), min_size=1, max_size=6))
def test_divmod_and_gcd(a, b):
    F = field_make(3, 1)
    f = poly_trim(np.array(a + [1]))
    g = poly_trim(np.array(b + [1]))
    q, rem = poly_divmod(f, g, F)
    back = poly_add(poly_mul(q, g, F), rem, F)
    assert np.array_equal(back, f)
    d = poly_gcd(f, g, F)
    assert not np.any(poly_divmod(f, d, F)[1]) and not np.any(poly_divmod(g, d, F)[1])


def test_prime_helpers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_factors(360) == [2, 3, 5]

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from piso.field import field_make
from piso.linalg import (
    FqMatrix,
    InconsistentSystem,
    Span,
    char_poly,
    inverse,
    min_poly,
    nullspace,
    poly_eval_matrix,
    rank,
    replay_words,
    right_nullspace,
    rref,
    solve,
    spin,
    spin_words,
)


def matrices(p, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.integers(0, p - 1), min_size=m * n, max_size=m * n).map(
                lambda xs: np.array(xs, dtype=np.int64).reshape(m, n)
            )
        )
    )


def _span_size(A, p):
    """Number of distinct vectors in the row space, by enumeration."""
    seen = set()
    for coeffs in itertools.product(range(p), repeat=A.shape[0]):
        seen.add(tuple((np.array(coeffs) @ A) % p))
    return len(seen)


def _det_mod(A, p):
    n = A.shape[0]
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= int(A[i, perm[i]])
        total += sign * prod
    return total % p


@given(matrices(3))
def test_rank_matches_row_space_size(A):
    F = field_make(3, 1)
    assert 3 ** rank(A, F) == _span_size(A, 3)


@given(matrices(2, 5, 5))
def test_rref_is_reduced(A):
    F = field_make(2, 1)
    R, piv = rref(A, F)
    assert len(piv) == rank(A, F)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
    assert _span_size(R, 2) == _span_size(A, 2)


@given(matrices(5))
def test_kernels(A):
    F = field_make(5, 1)
    N = nullspace(A, F)
    assert N.shape[0] == A.shape[0] - rank(A, F)
    if N.size:
        assert not np.any(F.dot(N, A))
    K = right_nullspace(A, F)
    assert K.shape[0] == A.shape[1] - rank(A, F)
    if K.size:
        assert not np.any(F.dot(A, K.T))


@given(matrices(7, 4, 4), st.integers(0, 2**32 - 1))
def test_solve_left_system(A, seed):
    F = field_make(7, 1)
    rng = np.random.default_rng(seed)
    X0 = rng.integers(0, 7, (2, A.shape[0]))
    B = F.dot(X0, A)
    X = solve(A, B, F)
    assert np.array_equal(F.dot(X, A), B)


def test_inconsistent_system_raises():
    F = field_make(2, 1)
    with pytest.raises(InconsistentSystem):
        solve(np.array([[1, 0]]), np.array([[0, 1]]), F)


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_inverse_over_extension_fields(p, r):
    F = field_make(p, r)
    rng = np.random.default_rng(1)
    for _ in range(20):
        A = F.random(rng, (4, 4))
        if rank(A, F) < 4:
            continue
        assert np.array_equal(F.dot(A, inverse(A, F)), F.eye(4))


@given(st.lists(st.integers(0, 6), min_size=9, max_size=9))
def test_char_poly_by_interpolation(xs):
    F = field_make(7, 1)
    A = np.array(xs, dtype=np.int64).reshape(3, 3)
    f = char_poly(A, F)
    assert len(f) == 4 and f[-1] == 1
    for x in range(7):
        val = sum(int(c) * x**i for i, c in enumerate(f)) % 7
        assert val == _det_mod((x * np.eye(3, dtype=np.int64) - A) % 7, 7)


@given(st.lists(st.integers(0, 2), min_size=16, max_size=16))
def test_min_poly_annihilates_and_divides(xs):
    F = field_make(3, 1)
    A = np.array(xs, dtype=np.int64).reshape(4, 4)
    m = min_poly(A, F)
    assert not np.any(poly_eval_matrix(m, A, F))
    assert not np.any(poly_eval_matrix(char_poly(A, F), A, F))
    # no proper divisor of lower degree annihilates: test all monic polynomials of lower degree
    for d in range(len(m) - 1):
        for coeffs in itertools.product(range(3), repeat=d):
            g = np.array(list(coeffs) + [1])
            assert np.any(poly_eval_matrix(g, A, F))


def test_spin_and_words():
    F = field_make(2, 1)
    # permutation matrices of a 4-cycle acting on F_2^4
    P = np.roll(np.eye(4, dtype=np.int64), 1, axis=1)
    v = np.array([1, 0, 0, 0])
    B = spin([v], [P], F)
    assert B.shape[0] == 4
    B2, words = spin_words(v, [P], F)
    assert np.array_equal(replay_words(v, words, [P], F) % 2, B2 % 2)
    w = np.array([1, 1, 1, 1])
    assert spin([w], [P], F).shape[0] == 1


def test_span_incremental():
    F = field_make(3, 1)
    S = Span(F, 3)
    S.add(np.array([[1, 2, 0]]))
    assert S.contains(np.array([2, 1, 0]))
    assert not S.contains(np.array([0, 0, 1]))
    S.add(np.array([[2, 1, 0], [0, 0, 2]]))
    assert S.dim == 2


def test_fqmatrix_wrapper():
    F = field_make(5, 1)
    A = FqMatrix(F, np.array([[1, 2], [3, 4]]))
    I = FqMatrix.identity(F, 2)
    assert A @ A.inverse() == I
    assert A.rank() == 2

import itertools
from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from piso.smith import (
    FgAbelianGroup,
    cokernel,
    cokernel_with_projection,
    det,
    induced_map,
    matmul,
    smith_normal_form,
)


def int_matrices(max_dim=4, bound=9):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.integers(-bound, bound), min_size=m * n, max_size=m * n).map(
                lambda xs: [xs[i * n : (i + 1) * n] for i in range(m)]
            )
        )
    )


def _leibniz(M):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= M[i][perm[i]]
        total += (-1) ** inv * prod
    return total


def _invariant_factors_oracle(A):
    """d_k = D_k / D_{k-1} with D_k the gcd of all k x k minors."""
    m, n = len(A), len(A[0])
    D = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, _leibniz([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        D.append(g)
    return [D[k] // D[k - 1] for k in range(1, len(D))]


@given(int_matrices())
def test_smith_form_is_a_certified_diagonalisation(A):
    S = smith_normal_form(A)
    assert matmul(matmul(S.U, A), S.V) == S.D()
    assert abs(det(S.U)) == 1 and abs(det(S.V)) == 1
    diag = list(S.diagonal)
    nz = [d for d in diag if d]
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0


@given(int_matrices())
def test_invariant_factors_match_minors(A):
    S = smith_normal_form(A)
    nz = [abs(d) for d in S.diagonal if d]
    assert nz == _invariant_factors_oracle(A)


@given(int_matrices())
def test_cokernel_rank_and_order(A):
    G = cokernel(np.array(A, dtype=np.int64), nrows=len(A))
    oracle = _invariant_factors_oracle(A)
    assert G.free_rank == len(A) - len(oracle)
    expected = FgAbelianGroup.from_orders(G.free_rank, oracle)
    assert G == expected


@given(st.lists(st.integers(0, 40), max_size=6), st.randoms(use_true_random=False))
def test_from_orders_is_canonical(orders, rnd):
    a = FgAbelianGroup.from_orders(0, orders)
    shuffled = list(orders)
    rnd.shuffle(shuffled)
    assert a == FgAbelianGroup.from_orders(0, shuffled)
    # torsion order is the product of the nonzero orders
    prod = 1
    for d in orders:
        if d:
            prod *= d
    free = sum(1 for d in orders if d == 0)
    assert a.free_rank == free
    if free == 0:
        assert a.order() == prod


def test_rendering_and_json():
    assert str(FgAbelianGroup.from_orders(0, [2, 2, 2])) == "(Z/2)^3"
    assert str(FgAbelianGroup.from_orders(1, [2, 2])) == "Z + (Z/2)^2"
    assert str(FgAbelianGroup.trivial()) == "0"
    G = FgAbelianGroup.from_orders(0, [2, 3])
    assert str(G) == "Z/6"
    assert FgAbelianGroup.from_json(G.to_json()) == G
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (4, 2))


def test_small_cartan_cokernels():
    assert str(cokernel(np.array([[2, 1], [1, 2]]))) == "Z/3"
    assert str(cokernel(np.array([[4, 2], [2, 3]]))) == "Z/8"
    assert str(cokernel(2 * np.eye(3, dtype=np.int64))) == "(Z/2)^3"


@given(int_matrices(3, 5))
def test_presentation_projection_kills_relations(A):
    M = np.array(A, dtype=np.int64)
    P = cokernel_with_projection(M, nrows=M.shape[0])
    for col in M.T:
        assert P.is_zero(col)
    for i in range(M.shape[0]):
        e = np.zeros(M.shape[0], dtype=np.int64)
        e[i] = 1
        assert len(P.reduce(e)) == len(P.moduli)


def test_induced_map_descends_or_refuses():
    src = cokernel_with_projection(np.array([[4]]), nrows=1)
    tgt = cokernel_with_projection(np.array([[2]]), nrows=1)
    m = induced_map(src, tgt, np.array([[1]]))
    assert np.array(m).shape == (1, 1)
    with pytest.raises(ValueError):
        induced_map(tgt, src, np.array([[1]]))

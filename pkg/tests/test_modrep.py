import numpy as np
import pytest

import _oracle as O
from piso.field import field_make
from piso.linalg import rank
from piso.named import alternating, cyclic, parse_group_spec, symmetric
from piso.modrep import (
    GModule,
    chop,
    count_simples_expected,
    dual,
    find_simples,
    hom_dimension,
    induce,
    is_isomorphic,
    permutation_module,
    regular_module,
    restrict,
    tensor,
    trivial_module,
)
from piso.perm import CapExceeded, sylow_subgroup
from piso.subgroups import subgroup_classes

CASES = [("symmetric:3", 2, 1), ("symmetric:3", 3, 1), ("alternating:4", 2, 1), ("alternating:4", 2, 2),
         ("alternating:4", 3, 1), ("dihedral:5", 2, 1), ("dihedral:5", 2, 2), ("cyclic:7", 2, 1),
         ("cyclic:7", 2, 3), ("quaternion8", 3, 1), ("symmetric:4", 3, 1), ("agl1:5", 5, 1)]


def _tuples(G):
    return frozenset(tuple(int(x) for x in row) for row in G.perms)


@pytest.mark.parametrize("spec,p,r", CASES)
def test_simple_count_matches_brute_force(spec, p, r):
    G = parse_group_spec(spec)
    F = field_make(p, r)
    n = O.p_regular_fq_classes(_tuples(G), p, F.q)
    assert count_simples_expected(G, F) == n
    reg = find_simples(G, F)
    assert len(reg) == n


@pytest.mark.parametrize("spec,p,r", CASES)
def test_simples_are_simple_and_distinct(spec, p, r):
    G = parse_group_spec(spec)
    F = field_make(p, r)
    reg = find_simples(G, F)
    for S in reg.simples:
        S.module.check()
        assert hom_dimension(S, S.module) == S.endo_degree
        # no proper nonzero submodule: every nonzero vector spins to everything
        rng = np.random.default_rng(1)
        v = F.random(rng, S.dim)
        if np.any(v):
            from piso.linalg import spin

            assert len(spin(v, S.module.action, F)) == S.dim
    for i, A in enumerate(reg.simples):
        for B in reg.simples[i + 1 :]:
            assert not is_isomorphic(A.module, B.module, A)[0]
    # sum of (dim / endo degree) * dim of the projective cover is |G|; over a p'-group
    # this is the Wedderburn count sum dim^2 / d = |G|
    if G.order % p:
        assert sum(S.dim**2 // S.endo_degree for S in reg.simples) == G.order


def test_known_simple_dimensions():
    assert [S.dim for S in find_simples(parse_group_spec("psl2:7"), field_make(7, 1)).simples] == [1, 3, 5, 7]
    reg = find_simples(alternating(5), field_make(2, 1))
    assert [S.dim for S in reg.simples] == [1, 4, 4]
    assert [S.endo_degree for S in reg.simples] == [1, 1, 2]
    assert len(find_simples(symmetric(5), field_make(5, 1))) == 6
    reg = find_simples(alternating(5), field_make(2, 2))
    assert [S.dim for S in reg.simples] == [1, 2, 2, 4]
    assert [S.endo_degree for S in reg.simples] == [1, 1, 1, 1]


def test_regular_and_permutation_modules():
    G = symmetric(4)
    F = field_make(2, 1)
    R = regular_module(G, F)
    R.check()
    assert R.dim == 24
    Pm = permutation_module(G, F)
    Pm.check()
    # the algebra hook agrees with summing element matrices
    rng = np.random.default_rng(0)
    a = F.random(rng, G.order)
    slow = np.zeros((24, 24), dtype=np.int64)
    for g in range(G.order):
        slow = F.add(slow, F.mul(a[g], R.matrix_of(g)))
    assert np.array_equal(R.algebra_matrix(a), slow)


def test_tensor_and_dual():
    G = symmetric(3)
    F = field_make(5, 1)
    N = permutation_module(G, F)
    T = tensor(N, N)
    T.check()
    assert T.dim == 9
    D = dual(N)
    D.check()
    assert is_isomorphic(N, D)[0]  # permutation modules are self-dual
    counts, reg = chop(T)
    assert sum(reg.simples[k].dim * m for k, m in counts.items()) == 9


def test_malformed_module_rejected():
    G = cyclic(3)
    F = field_make(2, 1)
    with pytest.raises(ValueError):
        GModule(G, F, 1, (np.ones((1, 1)), np.ones((1, 1))))
    bad = GModule(symmetric(3), F, 1, (np.ones((1, 1), dtype=np.int64), np.zeros((1, 1), dtype=np.int64)))
    with pytest.raises(ValueError):
        bad.check()


def test_induce_from_trivial_is_regular():
    G = alternating(4)
    F = field_make(2, 1)
    W = G.whole()
    E = G.trivial()
    M = induce(W, E, trivial_module(E.group, F))
    M.check()
    assert is_isomorphic(M, regular_module(G, F))[0]


@pytest.mark.parametrize("spec,p", [("symmetric:4", 2), ("dihedral:5", 5), ("alternating:4", 3)])
def test_induce_restrict_dimensions(spec, p):
    G = parse_group_spec(spec)
    F = field_make(p, 1)
    W = G.whole()
    for H in subgroup_classes(G).reps:
        M = induce(W, H, trivial_module(H.group, F))
        M.check()
        assert M.dim == G.order // H.order
        R = restrict(W, H, M)
        R.check()
        # Frobenius reciprocity for the trivial module: Hom_G(k, Ind k) = fixed points,
        # which is one dimensional (the sum over cosets)
        fixed = np.eye(M.dim, dtype=np.int64)
        rows = [F.sub(a, fixed) for a in M.action]
        A = np.concatenate(rows, axis=1) if rows else np.zeros((M.dim, 0), dtype=np.int64)
        assert M.dim - rank(A, F) == 1


def test_cap():
    with pytest.raises(CapExceeded):
        regular_module(alternating(7), field_make(2, 1))


def test_sylow_restriction_of_regular_is_free():
    G = symmetric(4)
    F = field_make(3, 1)
    S = sylow_subgroup(G, 3)
    R = restrict(G.whole(), S, regular_module(G, F))
    counts, reg = chop(R)
    assert len(reg) == 1 and counts == {0: 24}

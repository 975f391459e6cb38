import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import _oracle as O
from piso.named import agl1, alternating, cyclic, dihedral, frobenius_data, parse_group_spec, psl2, symmetric
from piso.perm import (
    ConsistencyError,
    FiniteGroup,
    Permutation,
    Subgroup,
    centralizer,
    conjugacy_classes,
    is_frobenius_pair,
    is_p_isolated,
    is_trivial_intersection,
    normalizer,
    prime_graph,
    sylow_subgroup,
    transporter,
    weyl_action_is_free,
    weyl_group,
)
from piso.subgroups import double_cosets, p_subgroup_classes, subgroup_classes

SMALL = ["symmetric:3", "symmetric:4", "alternating:4", "dihedral:4", "dihedral:5", "dihedral:6",
         "quaternion8", "agl1:5", "cyclic:12", "cyclic:2xcyclic:4", "psl2:3", "alternating:5"]


def _tuples(G: FiniteGroup):
    return frozenset(tuple(int(x) for x in row) for row in G.perms)


def _oracle_group(G: FiniteGroup):
    return O.closure([g.images for g in G.generators], G.degree)


@pytest.mark.parametrize("spec", SMALL)
def test_enumeration_matches_closure(spec):
    G = parse_group_spec(spec)
    assert _tuples(G) == _oracle_group(G)
    assert G.order == len(_oracle_group(G))


@pytest.mark.parametrize("spec", SMALL)
def test_multiplication_and_inverse(spec):
    G = parse_group_spec(spec)
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b = (int(x) for x in rng.integers(0, G.order, 2))
        ab = G.element(int(G.mul(a, b)))
        assert ab.images == O.compose(G.element(a).images, G.element(b).images)
        assert G.element(int(G.inv[a])).images == O.inverse(G.element(a).images)


@pytest.mark.parametrize("spec", SMALL)
def test_class_sizes_and_orders(spec):
    G = parse_group_spec(spec)
    cc = conjugacy_classes(G)
    assert sorted(int(s) for s in cc.sizes) == O.conjugacy_class_sizes(_oracle_group(G))
    assert [int(o) for o in G.orders] == [O.order(tuple(int(x) for x in row)) for row in G.perms]


def test_sigma4_classes():
    G = symmetric(4)
    sizes = sorted(int(s) for s in conjugacy_classes(G).sizes)
    assert sizes == sorted([1, 6, 8, 6, 3])


@pytest.mark.parametrize("spec", SMALL + ["psl2:7", "m9", "agl1:7", "symmetric:5"])
def test_isolation_against_element_orders(spec):
    G = parse_group_spec(spec)
    T = _tuples(G)
    for p in O.prime_divisors(G.order):
        res = is_p_isolated(G, p)
        assert bool(res) == O.is_p_isolated(T, p)
        assert res.routines == (bool(res),) * 3


def test_isolation_examples():
    assert is_p_isolated(symmetric(4), 2)
    assert not is_p_isolated(cyclic(6), 2)
    assert is_p_isolated(parse_group_spec("m9"), 2)
    assert not is_p_isolated(symmetric(5), 2)
    r = is_p_isolated(cyclic(5), 2)
    assert r and r.degenerate


def test_prime_graph():
    pg = prime_graph(symmetric(5))
    assert tuple(pg.vertices) == (2, 3, 5)
    assert [tuple(e) for e in pg.edges] == [(2, 3)]
    assert pg.isolated(5) and not pg.isolated(2)


@pytest.mark.parametrize("spec", SMALL)
def test_sylow_and_weyl(spec):
    G = parse_group_spec(spec)
    T = _tuples(G)
    for p in O.prime_divisors(G.order):
        S = sylow_subgroup(G, p)
        assert S.order == O.p_part(G.order, p)
        assert S.is_p_group(p)
        St = frozenset(G.element(int(x)).images for x in S.elements)
        assert normalizer(G, S).order == O.normalizer_order(T, St)
        assert weyl_group(G, S).order == O.normalizer_order(T, St) // S.order
        assert is_trivial_intersection(G, S) == O.is_ti(T, St)


def test_weyl_examples():
    G = symmetric(4)
    S = sylow_subgroup(G, 2)
    assert S.order == 8 and weyl_group(G, S).order == 1
    assert not is_trivial_intersection(G, S)
    A = alternating(4)
    S = sylow_subgroup(A, 2)
    assert weyl_group(A, S).order == 3 and is_trivial_intersection(A, S)
    assert sylow_subgroup(symmetric(9), 3).order == 81


@pytest.mark.parametrize("spec,p", [("dihedral:7", 7), ("agl1:7", 7), ("psl2:7", 7), ("symmetric:5", 5), ("alternating:5", 2)])
def test_weyl_acts_freely_on_isolated_sylow(spec, p):
    G = parse_group_spec(spec)
    assert weyl_action_is_free(G, sylow_subgroup(G, p))


def test_centralizer_and_transporter():
    G = cyclic(5)
    assert centralizer(G, 1).order == 5
    S4 = symmetric(4)
    H = sylow_subgroup(S4, 3)
    N = normalizer(S4, H)
    t = transporter(S4, H, H)
    assert np.array_equal(np.sort(t), N.elements)
    # every conjugate of H lands in H for exactly |N| elements
    assert len(t) == 6


def test_frobenius_certificates():
    cases = [("dihedral", 5, 5, "kernel-p"), ("dihedral", 5, 2, "complement-p"),
             ("agl1", 7, 7, "kernel-p"), ("m9", 2, 2, "complement-p"), ("m9", 2, 3, "kernel-p")]
    for name, n, p, case in cases:
        K, H, action = frobenius_data(name, n)
        cert = is_frobenius_pair(K, H, action, p)
        assert cert.free
        assert cert.case == case
    # C_2 acting trivially on C_5 is not free
    K = cyclic(5)
    cert = is_frobenius_pair(K, cyclic(2), [np.arange(5)], 2)
    assert not cert.free and cert.case is None


def test_permutation_basics():
    a = Permutation.from_cycles(4, (0, 1, 2))
    b = Permutation.from_cycles(4, (2, 3))
    assert (a * b).images == O.compose(a.images, b.images)
    assert (a ** 3).is_identity()
    assert a.inverse() * a == Permutation.identity(4)
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


@pytest.mark.parametrize("spec", ["symmetric:3", "symmetric:4", "alternating:4", "dihedral:4", "dihedral:6",
                                  "quaternion8", "agl1:5", "cyclic:12", "cyclic:2xcyclic:4", "alternating:5",
                                  "cyclic:3xcyclic:2xcyclic:4"])
def test_subgroup_classes_against_brute_force(spec):
    G = parse_group_spec(spec)
    ours = sorted(H.order for H in subgroup_classes(G).reps)
    assert ours == O.subgroup_classes(_tuples(G))


def test_subgroup_class_counts():
    counts = {"symmetric:4": 11, "alternating:5": 9, "alternating:6": 22, "psl2:7": 15, "symmetric:5": 19, "m9": 14}
    for spec, n in counts.items():
        assert len(subgroup_classes(parse_group_spec(spec))) == n
    assert len(p_subgroup_classes(symmetric(4), 2)) == 7
    assert len(p_subgroup_classes(parse_group_spec("m9"), 2)) == 6
    assert len(p_subgroup_classes(alternating(6), 3)) == 4


@pytest.mark.parametrize("spec", ["symmetric:3", "symmetric:4", "dihedral:5"])
def test_double_cosets_partition(spec):
    G = parse_group_spec(spec)
    reps = subgroup_classes(G).reps
    for K in reps:
        for H in reps:
            seen = set()
            for g in double_cosets(G, K, H):
                block = {int(x) for x in G.mul(G.mul(K.elements[:, None], g), H.elements[None, :]).ravel()}
                assert not (block & seen)
                seen |= block
            assert len(seen) == G.order


@given(st.sampled_from(SMALL), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_associativity(spec, a, b, c):
    G = parse_group_spec(spec)
    a, b, c = a % G.order, b % G.order, c % G.order
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_conjugate_subgroup_is_subgroup(spec, g):
    G = parse_group_spec(spec)
    g %= G.order
    for H in subgroup_classes(G).reps:
        C = H.conjugate(g)
        assert C.order == H.order
        prod = G.mul(C.elements[:, None], C.elements[None, :])
        assert set(prod.ravel().tolist()) <= set(C.elements.tolist())


def test_named_orders():
    expected = {"psl2:5": 60, "psl2:7": 168, "m9": 72, "agl1:7": 42, "alternating:6": 360,
                "cyclic:3xcyclic:2xcyclic:4": 24, "dihedral:2": 4, "quaternion8": 8}
    for spec, n in expected.items():
        assert parse_group_spec(spec).order == n
    assert parse_group_spec("m9").exponent == O.exponent(_tuples(parse_group_spec("m9")))


def test_whole_subgroup_reuses_parent():
    G = symmetric(4)
    W = G.whole()
    assert W.group is G
    assert np.array_equal(W.embed, np.arange(G.order))

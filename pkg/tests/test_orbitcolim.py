import numpy as np
import pytest

from piso.field import field_make
from piso.green import GreenContext, g0_induction
from piso.named import parse_group_spec
from piso.orbitcolim import (
    NotTrivialIntersection,
    OrbitCategory,
    cofinal_collection,
    cofinal_reduction,
    colimit,
    colimit_report,
    sk_diagram,
    weyl_coinvariants,
)
from piso.perm import sylow_subgroup, transporter
from piso.smith import FgAbelianGroup, cokernel
from piso.subgroups import p_subgroup_classes


def Z(*orders):
    return FgAbelianGroup.from_orders(0, list(orders))


def _brute_colimit(ctx, p):
    """Colimit over every p-subgroup (not classes) and every element of every transporter."""
    G = ctx.G
    objs = {}
    for H in p_subgroup_classes(G, p).reps:
        for g in range(G.order):
            C = H.conjugate(g)
            objs.setdefault(C.key, C)
    objs = list(objs.values())
    ranks = [ctx.data(H).nsimples for H in objs]
    off = np.concatenate([[0], np.cumsum(ranks)])
    total = int(off[-1])
    cols = []
    for i, H in enumerate(objs):
        block = np.zeros((total, ranks[i]), dtype=np.int64)
        block[off[i] : off[i + 1]] = ctx.data(H).cartan.T
        cols.append(block)
        for j, K in enumerate(objs):
            for g in transporter(G, H, K):
                M = g0_induction(ctx, H, K, int(g)).matrix
                block = np.zeros((total, ranks[i]), dtype=np.int64)
                block[off[i] : off[i + 1]] += np.eye(ranks[i], dtype=np.int64)
                block[off[j] : off[j + 1]] -= M
                cols.append(block)
    return cokernel(np.concatenate(cols, axis=1), nrows=total)


@pytest.mark.parametrize("spec,p,r", [("symmetric:3", 3, 1), ("alternating:4", 2, 1), ("symmetric:4", 2, 1),
                                      ("dihedral:5", 5, 1), ("cyclic:6", 2, 2), ("dihedral:4", 2, 1),
                                      ("symmetric:4", 3, 1)])
def test_colimit_matches_brute_force(spec, p, r):
    G = parse_group_spec(spec)
    ctx = GreenContext(G, field_make(p, r))
    res = colimit(sk_diagram(ctx, OrbitCategory.p_subgroups(G, p)))
    assert res.group == _brute_colimit(ctx, p)


@pytest.mark.parametrize("spec,p", [("symmetric:3", 3), ("alternating:4", 2), ("symmetric:4", 2), ("dihedral:6", 3)])
def test_hom_set_sizes(spec, p):
    G = parse_group_spec(spec)
    cat = OrbitCategory.p_subgroups(G, p)
    for i, H in enumerate(cat.objects):
        for j, K in enumerate(cat.objects):
            assert len(cat.hom(i, j)) == len(transporter(G, H, K)) // K.order


def test_composition_is_associative():
    G = parse_group_spec("symmetric:4")
    cat = OrbitCategory.p_subgroups(G, 2)
    n = len(cat.objects)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    for f in cat.hom(i, j)[:3]:
                        for g in cat.hom(j, k)[:3]:
                            for h in cat.hom(k, l)[:3]:
                                a = cat.compose(i, k, l, cat.compose(i, j, k, f, g), h)
                                b = cat.compose(i, j, l, f, cat.compose(j, k, l, g, h))
                                assert a == b


def test_small_category_counts():
    G = parse_group_spec("symmetric:3")
    cat = OrbitCategory.p_subgroups(G, 3)
    assert [H.order for H in cat.objects] == [1, 3]
    assert cat.nmorphisms == 6 + 2 + 2


HEAD = [("symmetric:3", 3, Z(3)), ("alternating:4", 2, Z(4)), ("symmetric:4", 2, Z(8)), ("alternating:5", 2, Z(4)),
        ("dihedral:5", 5, Z(5)), ("dihedral:5", 2, Z(2)), ("psl2:7", 7, Z(7)), ("m9", 2, Z(8)), ("agl1:7", 7, Z(7))]


@pytest.mark.parametrize("spec,p,value", HEAD)
def test_colimit_equals_sk_on_isolated_groups(spec, p, value):
    G = parse_group_spec(spec)
    ctx = GreenContext(G, field_make(p, 1))
    rep = colimit_report(ctx, p)
    assert rep["agree"]
    assert rep["colimit"] == str(value)
    assert rep["reduced_colimit"] == rep["colimit"]
    if rep["weyl_coinvariants"] is not None:
        assert rep["weyl_coinvariants"] == rep["colimit"]


def test_negative_controls():
    G = parse_group_spec("cyclic:6")
    ctx = GreenContext(G, field_make(2, 2))
    rep = colimit_report(ctx, 2)
    assert not rep["agree"]
    assert rep["colimit"] == str(Z(2)) and rep["sk"] == str(Z(2, 2, 2))
    G = parse_group_spec("cyclic:3xcyclic:2xcyclic:4")
    rep = colimit_report(GreenContext(G, field_make(2, 1)), 2)
    assert not rep["agree"]
    assert rep["colimit"] == str(Z(8)) and rep["sk"] == str(Z(8, 8))


def test_weyl_coinvariants():
    G = parse_group_spec("alternating:5")
    ctx = GreenContext(G, field_make(2, 1))
    assert weyl_coinvariants(ctx, 2) == Z(4)
    G = parse_group_spec("symmetric:4")
    with pytest.raises(NotTrivialIntersection):
        weyl_coinvariants(GreenContext(G, field_make(2, 1)), 2)
    G = parse_group_spec("psl2:7")
    assert weyl_coinvariants(GreenContext(G, field_make(7, 1)), 7) == Z(7)


def test_cofinal_collections():
    def orders(spec, p):
        return [H.order for H in cofinal_collection(parse_group_spec(spec), p)]

    assert orders("agl1:7", 7) == [7]  # normal Sylow
    assert orders("alternating:5", 2) == [1, 4]  # trivial intersection, not normal
    assert orders("symmetric:4", 2) == [4, 8]
    assert orders("cyclic:5", 2) == [1]


def test_cofinal_reduction_accepts_and_rejects_collections():
    G = parse_group_spec("symmetric:4")
    ctx = GreenContext(G, field_make(2, 1))
    full = colimit(sk_diagram(ctx, OrbitCategory.p_subgroups(G, 2))).group
    assert cofinal_reduction(ctx, 2).group == full
    assert cofinal_reduction(ctx, 2, cofinal_collection(G, 2)).group == full
    S = sylow_subgroup(G, 2)
    with pytest.raises(ValueError):  # D_4 meets a conjugate in V_4
        cofinal_reduction(ctx, 2, [S])
    small = [H for H in p_subgroup_classes(G, 2).reps if H.order == 2]
    with pytest.raises(ValueError):
        cofinal_reduction(ctx, 2, small)

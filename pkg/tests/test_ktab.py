import csv
import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import _oracle as O
from piso.cartan import cartan_matrix
from piso.field import field_make
from piso.ktab import (
    HypothesisError,
    describe_group,
    g_theory_table,
    integral_sigma_p_table,
    quillen_k,
    reduction_report,
    sigma_p_regular_classes,
    sylp_exponent,
    sylp_formula,
    sylp_table,
)
from piso.named import alternating, dihedral, parse_group_spec, symmetric
from piso.perm import sylow_subgroup
from piso.smith import FgAbelianGroup


def Z(*orders):
    return FgAbelianGroup.from_orders(0, list(orders))


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 25, 27]), st.integers(0, 30))
def test_quillen(q, n):
    g = quillen_k(q, n)
    if n == 0:
        assert g == FgAbelianGroup(1, ())
    elif n % 2 == 0:
        assert g.is_trivial()
    else:
        assert g.order() == q ** ((n + 1) // 2) - 1


def test_quillen_values():
    assert quillen_k(4, 1) == Z(3)
    assert quillen_k(3, 3) == Z(8)
    assert quillen_k(2, 1).is_trivial()
    with pytest.raises(ValueError):
        quillen_k(5, -1)


def test_g_theory_table():
    data = cartan_matrix(alternating(5), field_make(2, 1))  # endo degrees 1, 1, 2
    t = g_theory_table(data, 6)
    assert t[0] == FgAbelianGroup(3, ())
    assert t[1] == Z(3)  # K_1(F_2)^2 + K_1(F_4)
    assert t[3] == Z(3, 15) + Z(3)  # two copies of Z/3 and one Z/15
    assert t[2].is_trivial()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sylp_formulas(p):
    q = p
    expect = {
        f"symmetric:{p}": "k^{i}",
        f"symmetric:{p + 1}": "k^{i}",
        f"alternating:{p}": "k^{2i}",
        f"alternating:{p + 1}": "k^{2i}",
        f"alternating:{p + 2}": "k^{i}",
        f"dihedral:{p}": sylp_formula((p - 1) // 2),
        f"agl1:{p}": "k^{i}",
        f"psl2:{p}": "k^{2i}",
    }
    for spec, f in expect.items():
        G = parse_group_spec(spec)
        t = sylp_table(G, p, 1, 8, gate=G.order <= 200)
        assert t.formula == f
        m = sylp_exponent(G, p)
        assert t[1] == Z(*([q] * m))
        assert t[5] == Z(*([q] * (3 * m)))
        assert all(t[n].is_trivial() for n in range(0, 9, 2))


def test_sylp_oracle_exponent():
    # (p - 1) / |N(S)/S| from the brute-force normaliser
    for spec, p in [("symmetric:5", 5), ("alternating:5", 5), ("dihedral:7", 7), ("agl1:7", 7), ("psl2:7", 7)]:
        G = parse_group_spec(spec)
        T = frozenset(tuple(int(x) for x in row) for row in G.perms)
        S = sylow_subgroup(G, p)
        St = frozenset(G.element(int(x)).images for x in S.elements)
        assert sylp_exponent(G, p) == (p - 1) // (O.normalizer_order(T, St) // p)


def test_sylp_over_extension_and_gate():
    t = sylp_table(dihedral(5), 5, 2, 4)
    assert t[1] == Z(5, 5, 5, 5)
    assert any("passed" in n for n in t.notes)


def test_sylp_refusals():
    with pytest.raises(HypothesisError):
        sylp_table(symmetric(4), 2, 1)  # Sylow of order 8
    with pytest.raises(HypothesisError):
        sylp_table(parse_group_spec("cyclic:6"), 2, 1)  # order 2 Sylow, not isolated
    with pytest.raises(HypothesisError):
        sylp_exponent(symmetric(3), 4)


def test_sigma_p_counts():
    for p in [2, 3, 5, 7]:
        assert sigma_p_regular_classes(p, True) == sigma_p_regular_classes(p, False)
    assert sigma_p_regular_classes(3) == 2
    assert sigma_p_regular_classes(11) == 55


def test_integral_sigma_3():
    t = integral_sigma_p_table(3, 1, 6)
    assert t[0] == FgAbelianGroup(2, ())
    assert t[1] == Z(2, 2, 3)
    assert t[3] == Z(8, 8, 3, 3)
    assert t[5] == Z(26, 26, 3, 3, 3)
    assert t[2].is_trivial()
    assert t.rows[1].expression == "(Z/2)^2 + Z/3"
    t2 = integral_sigma_p_table(5, 2, 3)
    assert t2[1] == Z(*([24] * 6 + [5, 5]))


def test_serialisations():
    t = integral_sigma_p_table(3, 1, 3)
    j = json.loads(json.dumps(t.to_json()))
    assert [r["n"] for r in j["rows"]] == [0, 1, 2, 3]
    assert FgAbelianGroup.from_json(j["rows"][1]["group"]) == Z(2, 2, 3)
    rows = list(csv.reader(io.StringIO(t.to_csv())))
    assert rows[0] == ["n", "invariant_factors", "provenance"]
    assert rows[1][1] == "0 0"
    assert rows[2][1].split() == [str(d) for d in Z(2, 2, 3).torsion]
    txt = t.to_text()
    assert "provenance" in txt and txt.endswith("\n")


def test_describe_group():
    assert describe_group(sylow_subgroup(symmetric(4), 2)) == "D_4"
    assert describe_group(parse_group_spec("quaternion8")) == "Q_8"
    assert describe_group(sylow_subgroup(alternating(4), 2)) == "C_2^2"
    assert describe_group(sylow_subgroup(alternating(6), 3)) == "C_3^2"
    assert describe_group(parse_group_spec("cyclic:9")) == "C_9"
    assert describe_group(symmetric(3)) == "Sigma_3"


def test_reduction_reports():
    r = reduction_report(alternating(5), 2, 1, 4)
    assert r["shape"] == "colimit" and r["coinvariants"] == "K_n(kC_2^2;Z_2)/C_3"
    assert r["evidence"]["match"]
    r = reduction_report(symmetric(4), 2, 1, 4)
    assert not r["trivial_intersection"]
    arrows = [e for e in r["edges"] if e["source"] == "C_2^2" and e["target"] == "D_4"]
    assert arrows and arrows[0]["morphisms"] == 3
    loops = [e for e in r["edges"] if e["source"] == "C_2^2" and e["target"] == "C_2^2"]
    assert loops[0]["automorphism_group"] == "Sigma_3"
    r = reduction_report(alternating(6), 3, 1, 4)
    assert r["coinvariants"] == "K_n(kC_3^2;Z_3)/C_4"
    r = reduction_report(symmetric(5), 2, 1, 4)
    assert not r["applicable"]
    r = reduction_report(symmetric(5), 5, 1, 4)
    assert r["shape"] == "closed form" and r["table"]["formula"] == "k^{i}"

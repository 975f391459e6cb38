"""Colimits of S_k over orbit categories of p-subgroups, and Weyl coinvariants.

Objects are subgroups up to conjugacy.  A morphism H -> K is a coset K g
with g H g^-1 <= K; composition of K g and L g' is L g'g.  The functor sends
K g to conjugation by g followed by induction.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .green import GreenContext, g0_induction, sk_descend
from .modrep import conjugate
from .perm import FiniteGroup, Subgroup, is_trivial_intersection, sylow_subgroup, transporter, weyl_group
from .smith import FgAbelianGroup, cokernel
from .subgroups import canonical_conjugate, is_subconjugate, p_subgroup_classes

__all__ = [
    "OrbitCategory",
    "AbDiagram",
    "ColimitResult",
    "NotTrivialIntersection",
    "sk_diagram",
    "colimit",
    "weyl_coinvariants",
    "cofinal_collection",
    "cofinal_reduction",
    "colimit_report",
]

FUNCTORIALITY_SAMPLE = 2000


class NotTrivialIntersection(ValueError):
    """Weyl coinvariants are only offered for trivial-intersection Sylow subgroups."""


def _hom_reps(G: FiniteGroup, H: Subgroup, K: Subgroup) -> tuple[list[int], np.ndarray]:
    """Least element of each coset K g inside N_G(H, K), and a coset lookup."""
    T = transporter(G, H, K)
    label = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for g in T:
        if label[g] >= 0:
            continue
        label[G.mul(K.elements, int(g))] = len(reps)
        reps.append(int(g))
    return reps, label


class OrbitCategory:
    """Full subcategory of the orbit category on the given subgroups."""

    def __init__(self, G: FiniteGroup, objects: list[Subgroup]):
        self.G = G
        self.objects = list(objects)
        n = len(self.objects)
        self._homs: dict[tuple[int, int], tuple[list[int], np.ndarray]] = {}
        for i in range(n):
            for j in range(n):
                self._homs[i, j] = _hom_reps(G, self.objects[i], self.objects[j])

    @classmethod
    def p_subgroups(cls, G: FiniteGroup, p: int) -> "OrbitCategory":
        return cls(G, p_subgroup_classes(G, p).reps)

    def hom(self, i: int, j: int) -> list[int]:
        return self._homs[i, j][0]

    def rep(self, i: int, j: int, g: int) -> int:
        """Canonical representative of the coset containing g in hom(i, j)."""
        reps, label = self._homs[i, j]
        c = int(label[g])
        if c < 0:
            raise ValueError("element does not define a morphism")
        return reps[c]

    def compose(self, i: int, j: int, k: int, g: int, h: int) -> int:
        """(K g) then (L h) as a morphism from object i to object k."""
        return self.rep(i, k, int(self.G.mul(h, g)))

    def morphisms(self):
        for (i, j), (reps, _) in self._homs.items():
            for g in reps:
                yield i, j, g

    @property
    def nmorphisms(self) -> int:
        return sum(len(r) for r, _ in self._homs.values())


@dataclass(eq=False)
class AbDiagram:
    """S_k on an orbit category: G_0 ranks, Cartan relations and morphism matrices."""

    category: OrbitCategory
    ranks: list[int]
    cartan: list[np.ndarray]  # columns = projective classes
    maps: dict[tuple[int, int, int], np.ndarray] = field(default_factory=dict)

    def offsets(self) -> list[int]:
        return [0] + list(np.cumsum(self.ranks))


def sk_diagram(ctx: GreenContext, cat: OrbitCategory, check: bool = True) -> AbDiagram:
    objs = cat.objects
    diag = AbDiagram(cat, [ctx.data(H).nsimples for H in objs], [ctx.data(H).cartan.T for H in objs])
    for i, j, g in cat.morphisms():
        gm = g0_induction(ctx, objs[i], objs[j], g)
        sk_descend(ctx, gm)  # raises if Cartan images are not preserved
        diag.maps[i, j, g] = gm.matrix
    if check:
        _check_functor(ctx, cat, diag)
    return diag


def _check_functor(ctx: GreenContext, cat: OrbitCategory, diag: AbDiagram) -> None:
    G = cat.G
    rng = np.random.default_rng(ctx.seed)
    n = len(cat.objects)
    for i in range(n):
        if not np.array_equal(diag.maps[i, i, cat.rep(i, i, 0)], np.eye(diag.ranks[i], dtype=np.int64)):
            raise AssertionError("identity morphism does not act as the identity")
    triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
    pairs = [(i, j, k, g, h) for i, j, k in triples for g in cat.hom(i, j) for h in cat.hom(j, k)]
    if len(pairs) > FUNCTORIALITY_SAMPLE:
        pick = rng.choice(len(pairs), FUNCTORIALITY_SAMPLE, replace=False)
        pairs = [pairs[t] for t in sorted(pick)]
    for i, j, k, g, h in pairs:
        comp = diag.maps[i, k, cat.compose(i, j, k, g, h)]
        if not np.array_equal(comp, diag.maps[j, k, h] @ diag.maps[i, j, g]):
            raise AssertionError("diagram is not functorial")
    # the matrix does not depend on the coset representative
    for i, j, g in list(cat.morphisms())[:50]:
        K = cat.objects[j]
        k = int(K.elements[rng.integers(0, K.order)])
        other = g0_induction(ctx, cat.objects[i], K, int(G.mul(k, g))).matrix
        if not np.array_equal(other, diag.maps[i, j, g]):
            raise AssertionError("morphism matrix depends on the coset representative")


@dataclass
class ColimitResult:
    group: FgAbelianGroup
    objects: list[int]  # subgroup orders
    nmorphisms: int
    nrelations: int


def colimit(diag: AbDiagram) -> ColimitResult:
    """colim = (sum of G_0 levels) / (Cartan images, x - f(x) for every morphism f)."""
    off = diag.offsets()
    total = off[-1]
    cols = []
    for i, C in enumerate(diag.cartan):
        block = np.zeros((total, C.shape[1]), dtype=np.int64)
        block[off[i] : off[i + 1]] = C
        cols.append(block)
    for (i, j, _g), M in diag.maps.items():
        block = np.zeros((total, diag.ranks[i]), dtype=np.int64)
        block[off[i] : off[i + 1]] += np.eye(diag.ranks[i], dtype=np.int64)
        block[off[j] : off[j + 1]] -= M
        if np.any(block):
            cols.append(block)
    A = np.concatenate(cols, axis=1)
    return ColimitResult(
        cokernel(A, nrows=total),
        [H.order for H in diag.category.objects],
        diag.category.nmorphisms,
        A.shape[1],
    )


def weyl_coinvariants(ctx: GreenContext, p: int, S: Subgroup | None = None) -> FgAbelianGroup:
    """S_k(S)_W for a trivial-intersection Sylow subgroup S, W = N_G(S)/S."""
    G = ctx.G
    if S is None:
        S = sylow_subgroup(G, p)
    if not is_trivial_intersection(G, S):
        raise NotTrivialIntersection("Sylow subgroup is not trivial-intersection")
    D = ctx.data(S)
    reg = D.registry()
    W = weyl_group(G, S)
    s = D.nsimples
    cols = [D.cartan.T]
    for w in W.cosets:
        perm = []
        for X in D.simples:
            _K, Y = conjugate(S, int(w), X.module)
            j = reg.identify(Y)
            if j is None:
                raise AssertionError("conjugate of a simple module is not simple")
            perm.append(j)
        P = np.zeros((s, s), dtype=np.int64)
        P[perm, np.arange(s)] = 1
        if not np.array_equal(P @ D.cartan.T, D.cartan.T[:, perm]):
            raise AssertionError("Weyl action does not preserve the Cartan matrix")
        cols.append(np.eye(s, dtype=np.int64) - P)
    return cokernel(np.concatenate(cols, axis=1), nrows=s)


def cofinal_collection(G: FiniteGroup, p: int) -> list[Subgroup]:
    """Class representatives of the closure of the Sylow conjugates under intersection."""
    S = sylow_subgroup(G, p)
    if S.order == 1:
        return [G.trivial()]
    found: dict[bytes, Subgroup] = {}
    for g in range(G.order):
        C = S.conjugate(g)
        found.setdefault(C.key, C)
    frontier = list(found.values())
    base = list(found.values())
    while frontier:
        new = []
        for A in frontier:
            for B in base:
                X = A.intersect(B)
                if X.key not in found:
                    found[X.key] = X
                    new.append(X)
        frontier = new
    reps: dict[bytes, Subgroup] = {}
    for X in found.values():
        c = canonical_conjugate(G, X)
        reps.setdefault(c.key, c)
    return sorted(reps.values(), key=lambda R: (R.order, R.elements.tolist()))


def _validate_collection(G: FiniteGroup, p: int, coll: list[Subgroup]) -> None:
    for A in coll:
        if not A.is_p_group(p):
            raise ValueError("collection members must be p-subgroups")

    def member(X: Subgroup) -> bool:
        return any(X.order == Y.order and is_subconjugate(G, X, Y)[0] for Y in coll)

    for A in coll:
        for B in coll:
            for g in range(G.order):
                if not member(A.intersect(B.conjugate(g))):
                    raise ValueError("collection is not closed under intersection")
    S = sylow_subgroup(G, p)
    if not any(is_subconjugate(G, S, Y)[0] for Y in coll):
        raise ValueError("collection does not cover the Sylow subgroup")


def cofinal_reduction(ctx: GreenContext, p: int, collection: list[Subgroup] | None = None) -> ColimitResult:
    """Colimit over the full subcategory on a collection closed under conjugation and intersection."""
    G = ctx.G
    if collection is None:
        collection = cofinal_collection(G, p)
    else:
        _validate_collection(G, p, collection)
    return colimit(sk_diagram(ctx, OrbitCategory(G, collection)))


def colimit_report(ctx: GreenContext, p: int, weyl: bool = True, reduce: bool = True) -> dict:
    """Colimit of S_k over all p-subgroups, compared with S_k(G)."""
    G = ctx.G
    cat = OrbitCategory.p_subgroups(G, p)
    res = colimit(sk_diagram(ctx, cat))
    target = ctx.sk(G.whole()).group
    out = {
        "group": G.label,
        "order": G.order,
        "p": p,
        "q": ctx.F.q,
        "seed": ctx.seed,
        "objects": res.objects,
        "morphisms": res.nmorphisms,
        "colimit": str(res.group),
        "colimit_json": res.group.to_json(),
        "sk": str(target),
        "sk_json": target.to_json(),
        "agree": res.group == target,
    }
    if weyl:
        try:
            out["weyl_coinvariants"] = str(weyl_coinvariants(ctx, p))
        except NotTrivialIntersection:
            out["weyl_coinvariants"] = None
    if reduce:
        coll = cofinal_collection(G, p)
        red = cofinal_reduction(ctx, p, coll)
        out["reduced_objects"] = [H.order for H in coll]
        out["reduced_colimit"] = str(red.group)
    return out


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)

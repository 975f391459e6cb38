"""The Green functor S_k = coker(Cartan) on subgroups, with induction and restriction.

Levels are indexed by :class:`~piso.perm.Subgroup` objects of one ambient
group.  G_0 maps are integer matrices in the simple-module bases chosen by
:func:`~piso.cartan.cartan_matrix`; they descend to S_k after a containment
check on Cartan images.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cartan import CartanData, cartan_matrix, class_in_G0
from .field import FiniteField
from .modrep import GModule, conjugate, induce, restrict
from .perm import FiniteGroup, Subgroup
from .smith import FgAbelianGroup, Presentation, cokernel, cokernel_with_projection, induced_map
from .subgroups import double_cosets, is_subconjugate, subgroup_classes

__all__ = [
    "G0Level",
    "SkLevel",
    "GreenMap",
    "DescentError",
    "GreenContext",
    "sk_level",
    "g0_induction",
    "g0_restriction",
    "sk_descend",
    "mackey_check",
    "induction_surjectivity",
    "SurjectivityResult",
    "defect_base",
    "is_hyperelementary",
]


class DescentError(AssertionError):
    """An integer map failed to carry Cartan images into Cartan images."""


@dataclass(eq=False)
class G0Level:
    subgroup: Subgroup
    data: CartanData

    @property
    def rank(self) -> int:
        return self.data.nsimples

    @property
    def cartan_image(self) -> np.ndarray:
        """Columns = classes of the projective indecomposables in G_0."""
        return self.data.cartan.T


@dataclass(eq=False)
class SkLevel:
    subgroup: Subgroup
    data: CartanData
    presentation: Presentation

    @property
    def group(self) -> FgAbelianGroup:
        return self.presentation.group

    def project(self, vec) -> tuple[int, ...]:
        return self.presentation.reduce(vec)


@dataclass(eq=False)
class GreenMap:
    source: object
    target: object
    matrix: np.ndarray  # target rank x source rank
    kind: str = ""


class GreenContext:
    """Caches Cartan data per subgroup for one ambient group and field."""

    def __init__(self, G: FiniteGroup, F: FiniteField, seed: int = 0):
        self.G = G
        self.F = F
        self.seed = seed
        self._levels: dict[bytes, SkLevel] = {}

    def data(self, H: Subgroup) -> CartanData:
        return cartan_matrix(H.group, self.F, self.seed)

    def g0(self, H: Subgroup) -> G0Level:
        return G0Level(H, self.data(H))

    def sk(self, H: Subgroup) -> SkLevel:
        if H.key not in self._levels:
            D = self.data(H)
            self._levels[H.key] = SkLevel(H, D, cokernel_with_projection(D.cartan.T, nrows=D.nsimples))
        return self._levels[H.key]

    def whole(self) -> Subgroup:
        return self.G.whole()


def sk_level(H: Subgroup | FiniteGroup, F: FiniteField, seed: int = 0) -> SkLevel:
    if isinstance(H, FiniteGroup):
        H = H.whole()
    D = cartan_matrix(H.group, F, seed)
    return SkLevel(H, D, cokernel_with_projection(D.cartan.T, nrows=D.nsimples))


def _classes(M: GModule, data: CartanData) -> np.ndarray:
    if data.nsimples == 1:
        # a single simple: the class is the composition length, read off the dimension
        d = data.simples[0].dim
        if M.dim % d:
            raise AssertionError("dimension not a multiple of the unique simple")
        return np.array([M.dim // d], dtype=np.int64)
    return class_in_G0(M, data)


def g0_induction(ctx: GreenContext, H: Subgroup, K: Subgroup, g: int = 0) -> GreenMap:
    """G_0(kH) -> G_0(kK), [M] -> [Ind_{gHg^-1}^K conj(g, M)] for gHg^-1 <= K."""
    Hg = H.conjugate(g)
    if not Hg.issubgroup(K):
        raise ValueError("induction needs g H g^-1 <= K")
    src = ctx.data(H)
    tgt = ctx.data(K)
    cols = []
    for S in src.simples:
        Hc, Mc = conjugate(H, g, S.module)
        cols.append(_classes(induce(K, Hc, Mc), tgt))
    mat = np.array(cols, dtype=np.int64).T.reshape(tgt.nsimples, src.nsimples)
    return GreenMap(ctx.g0(H), ctx.g0(K), mat, kind="induction")


def g0_restriction(ctx: GreenContext, K: Subgroup, H: Subgroup) -> GreenMap:
    """G_0(kK) -> G_0(kH) for H <= K."""
    if not H.issubgroup(K):
        raise ValueError("restriction needs H <= K")
    src = ctx.data(K)
    tgt = ctx.data(H)
    cols = [_classes(restrict(K, H, S.module), tgt) for S in src.simples]
    mat = np.array(cols, dtype=np.int64).T.reshape(tgt.nsimples, src.nsimples)
    return GreenMap(ctx.g0(K), ctx.g0(H), mat, kind="restriction")


def sk_descend(ctx: GreenContext, gmap: GreenMap) -> GreenMap:
    """Descend a G_0 map to S_k after checking Cartan-image containment."""
    src = ctx.sk(gmap.source.subgroup)
    tgt = ctx.sk(gmap.target.subgroup)
    M = gmap.matrix
    img = M @ gmap.source.cartan_image
    for col in img.T:
        if not tgt.presentation.is_zero(col):
            raise DescentError(f"{gmap.kind} map does not preserve Cartan images")
    mat = induced_map(src.presentation, tgt.presentation, M)
    return GreenMap(src, tgt, np.array(mat, dtype=np.int64).reshape(len(tgt.presentation.moduli), len(src.presentation.moduli)), kind=gmap.kind)


def mackey_check(ctx: GreenContext, H: Subgroup, K: Subgroup, M: GModule) -> bool:
    """Res_K Ind_H^G M = sum over K g H of Ind_{K cap gHg^-1}^K Res conj(g, M) in G_0(kK)."""
    G = ctx.G
    top = G.whole()
    dK = ctx.data(K)
    lhs = _classes(restrict(top, K, induce(top, H, M)), dK)
    rhs = np.zeros_like(lhs)
    for g in double_cosets(G, K, H):
        Hc, Mc = conjugate(H, int(g), M)
        L = K.intersect(Hc)
        res = restrict(Hc, L, Mc)
        rhs = rhs + _classes(induce(K, L, res), dK)
    return bool(np.array_equal(lhs, rhs))


@dataclass
class SurjectivityResult:
    surjective: bool
    cokernel: FgAbelianGroup  # S_k(G) / (sum of induction images)
    target: FgAbelianGroup
    images: dict = field(default_factory=dict)  # subgroup order -> columns

    def __bool__(self) -> bool:
        return self.surjective


def _closed_under_subconjugacy(G: FiniteGroup, family: list[Subgroup], classes: list[Subgroup]) -> bool:
    for H in family:
        for L in classes:
            if L.order < H.order and H.order % L.order == 0 and is_subconjugate(G, L, H)[0]:
                if not any(L.order == X.order and is_subconjugate(G, L, X)[0] for X in family):
                    return False
    return True


def _induction_columns(ctx: GreenContext, H: Subgroup) -> np.ndarray:
    top = ctx.whole()
    return g0_induction(ctx, H, top, 0).matrix


def induction_surjectivity(ctx: GreenContext, family: list[Subgroup], check_closure: bool = True, all_classes: list[Subgroup] | None = None) -> SurjectivityResult:
    """Do inductions from the family generate S_k(G)?"""
    G = ctx.G
    if check_closure:
        classes = all_classes if all_classes is not None else subgroup_classes(G).reps
        if not _closed_under_subconjugacy(G, family, classes):
            raise ValueError("family is not closed under subconjugacy")
    D = ctx.data(G.whole())
    cols = [D.cartan.T]
    images = {}
    rng = np.random.default_rng(ctx.seed)
    for H in family:
        I = _induction_columns(ctx, H)
        # conjugating the subgroup does not change the image
        if G.order > 1:
            g = int(rng.integers(0, G.order))
            if not np.array_equal(I, _induction_columns_conj(ctx, H, g)):
                raise AssertionError("induction from a conjugate subgroup changed the image")
        images[H.order] = images.get(H.order, []) + [I.tolist()]
        cols.append(I)
    A = np.concatenate(cols, axis=1)
    cok = cokernel(A, nrows=D.nsimples)
    return SurjectivityResult(cok.is_trivial(), cok, ctx.sk(G.whole()).group, images)


def _induction_columns_conj(ctx: GreenContext, H: Subgroup, g: int) -> np.ndarray:
    """Induction to G from gHg^-1 of the conjugated simples of H."""
    top = ctx.whole()
    tgt = ctx.data(top)
    src = ctx.data(H)
    cols = []
    for S in src.simples:
        Hc, Mc = conjugate(H, g, S.module)
        cols.append(_classes(induce(top, Hc, Mc), tgt))
    return np.array(cols, dtype=np.int64).T.reshape(tgt.nsimples, src.nsimples)


DEFECT_CLASS_CAP = 40


def defect_base(ctx: GreenContext) -> list[Subgroup]:
    """The minimal subconjugacy-closed family with surjective induction."""
    G = ctx.G
    classes = subgroup_classes(G).reps
    if len(classes) > DEFECT_CLASS_CAP:
        raise ValueError(f"defect base search limited to {DEFECT_CLASS_CAP} subgroup classes")
    D = ctx.data(G.whole())
    cols = {i: _induction_columns(ctx, H) for i, H in enumerate(classes)}
    below = {
        i: {j for j, L in enumerate(classes) if j != i and H.order % L.order == 0 and is_subconjugate(G, L, H)[0]}
        for i, H in enumerate(classes)
    }

    def surj(fam: set[int]) -> bool:
        A = np.concatenate([D.cartan.T] + [cols[i] for i in sorted(fam)], axis=1)
        return cokernel(A, nrows=D.nsimples).is_trivial()

    fam = set(range(len(classes)))
    assert surj(fam)
    changed = True
    while changed:
        changed = False
        # maximal members, largest first for a deterministic sweep
        maximal = [i for i in sorted(fam, key=lambda i: (-classes[i].order, i)) if not any(i in below[j] for j in fam)]
        for i in maximal:
            trial = fam - {i}
            if surj(trial):
                fam = trial
                changed = True
                break
    return [classes[i] for i in sorted(fam)]


def is_hyperelementary(H: Subgroup) -> bool:
    """H = C x| Q with C a normal cyclic q'-subgroup and Q a q-group, for some prime q."""
    from .field import prime_factors

    n = H.order
    if n == 1:
        return True
    G = H.parent
    for q in prime_factors(n):
        m = n
        while m % q == 0:
            m //= q
        if m == 1:
            return True
        for x in H.elements:
            if int(G.orders[x]) == m:
                C = Subgroup(G, _cyclic(G, int(x)))
                if C.is_normal_in(H):
                    return True
    return False


def _cyclic(G: FiniteGroup, x: int) -> list[int]:
    out = [0]
    cur = x
    while cur != 0:
        out.append(cur)
        cur = int(G.mul(cur, x))
    return out

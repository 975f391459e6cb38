"""Subgroups up to conjugacy, subconjugacy, transporters and double cosets."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .perm import FiniteGroup, Subgroup, _closure_mask, conjugacy_classes, normalizer, transporter

__all__ = [
    "SubgroupClasses",
    "subgroup_classes",
    "p_subgroup_classes",
    "is_subconjugate",
    "canonical_conjugate",
    "double_cosets",
    "right_coset_reps",
]

FULL_LATTICE_CAP = 1000


@dataclass
class SubgroupClasses:
    group: FiniteGroup
    reps: list[Subgroup]

    def __len__(self) -> int:
        return len(self.reps)

    def index_of(self, H: Subgroup) -> int:
        """Class index of an arbitrary subgroup."""
        for i, R in enumerate(self.reps):
            if R.order == H.order and _invariant(self.group, R) == _invariant(self.group, H):
                if len(transporter(self.group, H, R)):
                    return i
        raise KeyError("subgroup not found among the class representatives")


def _invariant(G: FiniteGroup, H: Subgroup) -> tuple:
    cc = conjugacy_classes(G)
    counts = np.bincount(cc.labels[H.elements], minlength=len(cc))
    return (H.order, counts.tobytes())


def canonical_conjugate(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """The conjugate of H whose sorted element list is lexicographically least."""
    allg = np.arange(G.order)
    conj = G.conj(allg[:, None], H.elements[None, :])
    conj.sort(axis=1)
    best = min(range(G.order), key=lambda i: conj[i].tolist())
    return Subgroup(G, conj[best])


def _classify(G: FiniteGroup, p: int | None) -> list[Subgroup]:
    if p is None and G.order > FULL_LATTICE_CAP:
        raise ValueError(f"full subgroup classification limited to order <= {FULL_LATTICE_CAP}")
    trivial = G.trivial()
    reps: list[Subgroup] = [trivial]
    by_inv: dict[tuple, list[int]] = {_invariant(G, trivial): [0]}
    seen: dict[bytes, int] = {trivial.key: 0}
    orders = G.orders
    queue = 0
    while queue < len(reps):
        H = reps[queue]
        queue += 1
        if p is not None:
            N = normalizer(G, H)
            cands = [int(x) for x in N.elements if not H.mask[x] and H.mask[G.mul(_pow_idx(G, int(x), p), 0)]]
        else:
            cands = [int(x) for x in right_coset_reps(G, H) if not H.mask[x]]
        for x in cands:
            mask = _closure_mask(G, list(H.generators) + [x])
            key = np.flatnonzero(mask).tobytes()
            if key in seen:
                continue
            K = Subgroup(G, np.flatnonzero(mask))
            inv = _invariant(G, K)
            cls = None
            for j in by_inv.get(inv, []):
                if len(transporter(G, K, reps[j])):
                    cls = j
                    break
            if cls is None:
                cls = len(reps)
                reps.append(K)
                by_inv.setdefault(inv, []).append(cls)
            seen[key] = cls
    del orders
    canon = [canonical_conjugate(G, R) for R in reps]
    canon.sort(key=lambda R: (R.order, R.elements.tolist()))
    return canon


def _pow_idx(G: FiniteGroup, x: int, e: int) -> int:
    out = 0
    base = x
    while e:
        if e & 1:
            out = int(G.mul(out, base))
        base = int(G.mul(base, base))
        e >>= 1
    return out


def subgroup_classes(G: FiniteGroup) -> SubgroupClasses:
    cached = getattr(G, "_subgroup_classes", None)
    if cached is None:
        cached = SubgroupClasses(G, _classify(G, None))
        G._subgroup_classes = cached
    return cached


def p_subgroup_classes(G: FiniteGroup, p: int) -> SubgroupClasses:
    store = G.__dict__.setdefault("_p_subgroup_classes", {})
    if p not in store:
        store[p] = SubgroupClasses(G, _classify(G, p))
    return store[p]


def is_subconjugate(G: FiniteGroup, H: Subgroup, K: Subgroup) -> tuple[bool, int | None]:
    """Whether some g has g H g^-1 <= K, with the least such g."""
    if K.order % H.order:
        return False, None
    t = transporter(G, H, K)
    return (True, int(t[0])) if len(t) else (False, None)


def right_coset_reps(G: FiniteGroup, H: Subgroup) -> np.ndarray:
    """Least element of each right coset H g, sorted."""
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if label[g] >= 0:
            continue
        label[G.mul(H.elements, g)] = len(reps)
        reps.append(g)
    return np.array(reps, dtype=np.int64)


def double_cosets(G: FiniteGroup, K: Subgroup, H: Subgroup) -> list[int]:
    """Least representative of each double coset K g H."""
    label = np.zeros(G.order, dtype=bool)
    reps = []
    for g in range(G.order):
        if label[g]:
            continue
        block = G.mul(G.mul(K.elements[:, None], g), H.elements[None, :])
        label[block.ravel()] = True
        reps.append(g)
    return reps

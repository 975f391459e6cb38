"""Permutation groups with full element enumeration.

A :class:`FiniteGroup` stores every element as a row of an integer array.
Elements are ordered breadth-first by word length in the generators, ties
broken by the lexicographic order of the image sequence, so indices are a
deterministic function of the generator list.  Products follow the
left-to-right convention: ``g * h`` applies ``g`` first, i.e.
``(g*h)[i] = h[g[i]]``.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .field import is_prime, prime_factors

__all__ = [
    "Permutation",
    "FiniteGroup",
    "Subgroup",
    "QuotientGroup",
    "PrimeGraph",
    "IsolationResult",
    "CapExceeded",
    "enumerate_group",
    "element_order",
    "conjugacy_classes",
    "centralizer",
    "normalizer",
    "transporter",
    "subgroup_generated",
    "is_conjugate_subgroups",
    "sylow_subgroup",
    "prime_graph",
    "is_p_isolated",
    "is_trivial_intersection",
    "weyl_group",
    "weyl_action_on",
    "is_frobenius_pair",
    "p_part",
]

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """The closure grew past the configured element cap."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError("images must be a bijection of 0..degree-1")
        object.__setattr__(self, "images", imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles) -> "Permutation":
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(tuple(img))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse() ** (-e)
        out = Permutation.identity(self.degree)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (len(c) for c in self.cycles()), 1)

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


def _orders_of(perms: np.ndarray) -> np.ndarray:
    """Element orders of a stack of permutations (lcm of cycle lengths)."""
    n, deg = perms.shape
    orders = np.ones(n, dtype=np.int64)
    cur = perms.copy()
    idx = np.arange(deg)
    cycle_len = np.zeros((n, deg), dtype=np.int64)
    k = 1
    # cycle length of point i = least k with g^k(i) = i
    pending = np.ones((n, deg), dtype=bool)
    while pending.any():
        hit = pending & (cur == idx[None, :])
        cycle_len[hit] = k
        pending &= ~hit
        if not pending.any():
            break
        cur = np.take_along_axis(perms, cur, axis=1)
        k += 1
    for j in range(deg):
        orders = np.lcm(orders, cycle_len[:, j])
    return orders


class FiniteGroup:
    """An enumerated permutation group."""

    def __init__(self, generators, degree: int | None = None, label: str = "", cap: int = DEFAULT_CAP):
        gens = [g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators must share one degree")
        self.degree = degree
        self.generators = tuple(gens)
        self.label = label or f"<{len(gens)} gens on {degree} points>"
        self._enumerate(cap)

    # ------------------------------------------------------------ enumeration
    def _keys(self, arr: np.ndarray):
        if self.degree <= 15:
            w = self.degree ** np.arange(self.degree - 1, -1, -1, dtype=np.uint64)
            return (arr.astype(np.uint64) * w[None, :]).sum(axis=1, dtype=np.uint64)
        return [bytes(row) for row in arr.astype(np.uint8 if self.degree < 256 else ">u2")]

    def _enumerate(self, cap: int) -> None:
        deg = self.degree
        dtype = np.int16 if deg < 2**15 else np.int32
        gen_arr = np.array([g.images for g in self.generators], dtype=np.int64).reshape(-1, deg)
        ident = np.arange(deg, dtype=np.int64)[None, :]
        layers = [ident]
        parents = [np.array([-1])]
        gen_of = [np.array([-1])]
        depth_of = [np.array([0])]
        exact = deg <= 15
        seen_set = set(self._keys(ident).tolist() if exact else self._keys(ident))
        total = 1
        frontier = ident
        base = 0
        depth = 0
        ngen = len(gen_arr)
        while len(frontier) and ngen:
            # products frontier[m] * gen[s] -> gen[s][frontier[m]]
            prods = gen_arr[np.arange(ngen)[None, :, None], frontier[:, None, :]]  # (m, ngen, deg)
            prods = prods.reshape(-1, deg)
            par = base + np.repeat(np.arange(len(frontier)), ngen)
            gid = np.tile(np.arange(ngen), len(frontier))
            keys = self._keys(prods)
            if exact:
                keys = np.asarray(keys)
                # first occurrence in (parent, gen) order
                uk, first = np.unique(keys, return_index=True)
                fresh = np.array([k not in seen_set for k in uk.tolist()], dtype=bool) if len(uk) else np.zeros(0, bool)
                uk, first = uk[fresh], first[fresh]
                # np.unique sorts keys, which is lexicographic on images
                order = first
                seen_set.update(uk.tolist())
            else:
                firsts: dict[bytes, int] = {}
                for i, k in enumerate(keys):
                    if k not in seen_set and k not in firsts:
                        firsts[k] = i
                items = sorted(firsts.items())
                order = np.array([i for _, i in items], dtype=np.int64)
                seen_set.update(firsts.keys())
            if len(order) == 0:
                break
            new = prods[order]
            total += len(new)
            if total > cap:
                raise CapExceeded(f"group closure exceeds cap of {cap} elements")
            depth += 1
            base += len(frontier)
            layers.append(new)
            parents.append(par[order])
            gen_of.append(gid[order])
            depth_of.append(np.full(len(new), depth))
            frontier = new
        self.perms = np.concatenate(layers, axis=0).astype(dtype)
        self.perms.setflags(write=False)
        self.parent = np.concatenate(parents).astype(np.int64)
        self.gen_index = np.concatenate(gen_of).astype(np.int64)
        self.depth = np.concatenate(depth_of).astype(np.int64)
        self.order = len(self.perms)
        if exact:
            keys = self._keys(self.perms)
            self._sort = np.argsort(keys, kind="stable")
            self._sorted_keys = keys[self._sort]
        else:
            self._lookup = {k: i for i, k in enumerate(self._keys(self.perms))}
        # generator indices
        self.gen_ids = tuple(int(i) for i in self.index_of(gen_arr)) if ngen else ()

    # -------------------------------------------------------------- lookups
    def index_of(self, arr) -> np.ndarray:
        """Element indices of a stack of permutation rows (-1 when absent)."""
        arr = np.atleast_2d(np.asarray(arr))
        if self.degree <= 15:
            keys = self._keys(arr)
            pos = np.searchsorted(self._sorted_keys, keys)
            pos = np.minimum(pos, self.order - 1)
            ok = self._sorted_keys[pos] == keys
            return np.where(ok, self._sort[pos], -1)
        return np.array([self._lookup.get(k, -1) for k in self._keys(arr)], dtype=np.int64)

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.perms[i]))

    @property
    def elements(self) -> list[Permutation]:
        return [self.element(i) for i in range(self.order)]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"

    @cached_property
    def identity(self) -> int:
        return 0

    @cached_property
    def inv(self) -> np.ndarray:
        invp = np.empty_like(self.perms)
        rows = np.arange(self.order)[:, None]
        invp[rows, self.perms] = np.arange(self.degree)[None, :]
        out = self.index_of(invp)
        out.setflags(write=False)
        return out

    def mul(self, a, b) -> np.ndarray:
        """Vectorised product indices of a * b (broadcasting index arrays)."""
        a = np.asarray(a)
        b = np.asarray(b)
        if self.order <= 4096:
            return self.table[a, b].astype(np.int64)
        a, b = np.broadcast_arrays(a, b)
        prods = np.take_along_axis(self.perms[b.ravel()], self.perms[a.ravel()].astype(np.int64), axis=1)
        return self.index_of(prods).reshape(a.shape)

    @cached_property
    def table(self) -> np.ndarray:
        """Multiplication table T[x, y] = index of x * y."""
        n = self.order
        if n > 4096:
            raise CapExceeded("multiplication table limited to groups of order <= 4096")
        T = np.empty((n, n), dtype=np.int32 if n > 32767 else np.int16)
        P = self.perms.astype(np.int64)
        for y in range(n):
            T[:, y] = self.index_of(P[y][P])
        T.setflags(write=False)
        return T

    def conj(self, g, x) -> np.ndarray:
        """g x g^-1 (indices, broadcasting)."""
        g = np.asarray(g)
        return self.mul(self.mul(g, x), self.inv[g])

    @cached_property
    def orders(self) -> np.ndarray:
        o = _orders_of(self.perms.astype(np.int64))
        o.setflags(write=False)
        return o

    @cached_property
    def hash(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.degree).encode())
        h.update(np.ascontiguousarray(self.perms.astype(np.int32)).tobytes())
        return h.hexdigest()

    def word(self, i: int) -> list[int]:
        """Generator indices w with element i = gen[w0] * gen[w1] * ..."""
        out = []
        while self.parent[i] >= 0:
            out.append(int(self.gen_index[i]))
            i = int(self.parent[i])
        return out[::-1]

    @cached_property
    def exponent(self) -> int:
        return int(reduce(lambda a, b: a * b // gcd(a, b), self.orders.tolist(), 1))

    def is_abelian(self) -> bool:
        g = np.array(self.gen_ids)
        if len(g) == 0:
            return True
        return bool(np.all(self.mul(g[:, None], g[None, :]) == self.mul(g[None, :], g[:, None])))

    def whole(self) -> "Subgroup":
        return Subgroup(self, np.arange(self.order))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, np.array([0]))


def enumerate_group(generators, degree: int | None = None, label: str = "", cap: int = DEFAULT_CAP) -> FiniteGroup:
    return FiniteGroup(generators, degree=degree, label=label, cap=cap)


class Subgroup:
    """A subgroup given by its sorted parent indices."""

    def __init__(self, parent: FiniteGroup, elements, generators=None):
        els = np.unique(np.asarray(elements, dtype=np.int64))
        self.parent = parent
        self.elements = els
        self.elements.setflags(write=False)
        self._gens = None if generators is None else tuple(int(g) for g in generators)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.elements] = True
        return m

    @cached_property
    def key(self) -> bytes:
        return self.elements.tobytes()

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __contains__(self, i) -> bool:
        return bool(self.mask[int(i)])

    def issubgroup(self, other: "Subgroup") -> bool:
        return bool(np.all(other.mask[self.elements]))

    @property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: scan elements in index order, keep new ones."""
        if self._gens is None:
            gens: list[int] = []
            cur = np.zeros(self.parent.order, dtype=bool)
            cur[0] = True
            size = 1
            for x in self.elements:
                if size == self.order:
                    break
                if not cur[x]:
                    gens.append(int(x))
                    cur = _closure_mask(self.parent, gens)
                    size = int(cur.sum())
            self._gens = tuple(gens)
        return self._gens

    @cached_property
    def group(self) -> FiniteGroup:
        """The subgroup as a standalone enumerated group (its own ordering)."""
        G = self.parent
        if self.order == G.order:
            return G
        gens = [G.element(i) for i in self.generators]
        return FiniteGroup(gens, degree=G.degree, label=f"sub{self.order}")

    @cached_property
    def embed(self) -> np.ndarray:
        """Parent index of each element of ``self.group``."""
        out = self.parent.index_of(self.group.perms)
        out.setflags(write=False)
        return out

    @cached_property
    def local_index(self) -> np.ndarray:
        """Parent index -> index in ``self.group`` (-1 outside)."""
        out = np.full(self.parent.order, -1, dtype=np.int64)
        out[self.embed] = np.arange(self.order)
        return out

    def conjugate(self, g: int) -> "Subgroup":
        """g H g^-1."""
        G = self.parent
        return Subgroup(G, G.conj(g, self.elements))

    def intersect(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, np.intersect1d(self.elements, other.elements))

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def is_normal_in(self, other: "Subgroup") -> bool:
        G = self.parent
        gens = np.array(other.generators, dtype=np.int64)
        if len(gens) == 0:
            return True
        c = G.conj(gens[:, None], self.elements[None, :])
        return bool(np.all(self.mask[c]))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} in {self.parent.label})"


def _closure_mask(G: FiniteGroup, gens) -> np.ndarray:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens = np.asarray(list(gens), dtype=np.int64)
    if len(gens) == 0:
        return mask
    frontier = np.array([0])
    while len(frontier):
        prods = G.mul(frontier[:, None], gens[None, :]).ravel()
        prods = np.unique(prods)
        prods = prods[~mask[prods]]
        mask[prods] = True
        frontier = prods
    return mask


def subgroup_generated(G: FiniteGroup, elements) -> Subgroup:
    els = [int(x) for x in elements]
    return Subgroup(G, np.flatnonzero(_closure_mask(G, els)))


def element_order(g) -> int:
    if isinstance(g, Permutation):
        return g.order()
    return Permutation(tuple(g)).order()


@dataclass(frozen=True)
class ConjugacyClasses:
    labels: np.ndarray  # class id per element
    reps: tuple[int, ...]
    sizes: tuple[int, ...]

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.labels == c)

    def __len__(self) -> int:
        return len(self.reps)


_CLASS_CACHE: dict[int, ConjugacyClasses] = {}


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    """Orbits of the conjugation action; classes ordered by least element index."""
    cached = getattr(G, "_classes", None)
    if cached is not None:
        return cached
    n = G.order
    rows, cols = [], []
    allx = np.arange(n)
    for s in G.gen_ids:
        rows.append(allx)
        cols.append(G.conj(G.inv[s], allx))
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        A = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n, n))
        _, lab = connected_components(A, directed=True, connection="weak")
    else:
        lab = np.zeros(n, dtype=np.int64)
    # relabel by least member
    first = {}
    for i, l in enumerate(lab.tolist()):
        if l not in first:
            first[l] = i
    order = sorted(first, key=lambda l: first[l])
    relabel = {l: k for k, l in enumerate(order)}
    labels = np.array([relabel[l] for l in lab.tolist()], dtype=np.int64)
    reps = tuple(first[l] for l in order)
    sizes = tuple(int(x) for x in np.bincount(labels))
    cc = ConjugacyClasses(labels, reps, sizes)
    G._classes = cc
    return cc


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    allx = np.arange(G.order)
    ok = G.mul(allx, g) == G.mul(g, allx)
    return Subgroup(G, np.flatnonzero(ok))


def transporter(G: FiniteGroup, H: Subgroup, K: Subgroup) -> np.ndarray:
    """N_G(H, K) = {g : g H g^-1 <= K} as sorted indices."""
    allx = np.arange(G.order)
    ok = np.ones(G.order, dtype=bool)
    for h in H.generators:
        ok &= K.mask[G.conj(allx, h)]
    return np.flatnonzero(ok)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    return Subgroup(G, transporter(G, H, H))


def is_conjugate_subgroups(G: FiniteGroup, H: Subgroup, K: Subgroup) -> tuple[bool, int | None]:
    """Brute-force search for g with g H g^-1 = K."""
    if H.order != K.order:
        return False, None
    cand = transporter(G, H, K)
    if len(cand):
        g = int(cand[0])
        assert H.conjugate(g) == K
        return True, g
    return False, None


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """Sylow p-subgroup by growth inside successive normalisers."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = p_part(G.order, p)
    if target == 1:
        return G.trivial()
    orders = G.orders
    ppow = np.array([p_part(int(o), p) == int(o) for o in orders]) & (orders > 1)
    cand = np.flatnonzero(ppow)
    start = int(cand[np.argmax(orders[cand])])
    P = subgroup_generated(G, [start])
    while P.order < target:
        N = normalizer(G, P)
        found = None
        for x in N.elements:
            if P.mask[x]:
                continue
            o = int(orders[x])
            m = o // p_part(o, p)
            y = _power(G, int(x), m)
            if not P.mask[y]:
                found = y
                break
        if found is None:
            raise AssertionError("Sylow growth stalled; normaliser has no new p-element")
        P = subgroup_generated(G, list(P.generators) + [found])
    assert P.order == target
    return P


def _power(G: FiniteGroup, x: int, e: int) -> int:
    out = 0
    base = x
    while e:
        if e & 1:
            out = int(G.mul(out, base))
        base = int(G.mul(base, base))
        e >>= 1
    return out


@dataclass(frozen=True)
class PrimeGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def isolated(self, p: int) -> bool:
        return all(p not in e for e in self.edges)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


def prime_graph(G: FiniteGroup) -> PrimeGraph:
    primes = prime_factors(G.order) if G.order > 1 else []
    orders = np.unique(G.orders)
    edges = []
    for i, q in enumerate(primes):
        for r in primes[i + 1 :]:
            if np.any(orders % (q * r) == 0):
                edges.append((q, r))
    return PrimeGraph(tuple(primes), tuple(edges))


@dataclass(frozen=True)
class IsolationResult:
    value: bool
    degenerate: bool
    routines: tuple[bool, bool, bool]
    witness: int | None = None  # an element of order divisible by pq

    def __bool__(self) -> bool:
        return self.value


class ConsistencyError(AssertionError):
    """Independent routines disagreed: a bug, never an answer."""


def is_p_isolated(G: FiniteGroup, p: int) -> IsolationResult:
    """Three independent tests of p-isolation that must agree.

    (1) no element order divisible by p*q for a prime q != p;
    (2) centralisers of order-p elements are p-groups;
    (3) centralisers of nontrivial p-regular elements are p'-groups.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if G.order % p:
        return IsolationResult(True, True, (True, True, True))
    orders = G.orders
    mixed = (orders % p == 0) & (orders != np.array([p_part(int(o), p) for o in orders]))
    r1 = not mixed.any()
    witness = int(np.flatnonzero(mixed)[0]) if not r1 else None
    cc = conjugacy_classes(G)
    r2 = True
    r3 = True
    for rep in cc.reps:
        o = int(orders[rep])
        if o == p:
            if not centralizer(G, rep).is_p_group(p):
                r2 = False
        elif o > 1 and o % p:
            if centralizer(G, rep).order % p == 0:
                r3 = False
    if not (r1 == r2 == r3):
        raise ConsistencyError(f"isolation routines disagree for p={p}: {(r1, r2, r3)}")
    return IsolationResult(r1, False, (r1, r2, r3), witness)


def _left_coset_reps(G: FiniteGroup, H: Subgroup) -> np.ndarray:
    """Least representative of each left coset gH, in increasing order."""
    label = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if label[g] >= 0:
            continue
        members = G.mul(g, H.elements)
        label[members] = len(reps)
        reps.append(g)
    return np.array(reps, dtype=np.int64)


def is_trivial_intersection(G: FiniteGroup, S: Subgroup) -> bool:
    N = normalizer(G, S)
    for g in _left_coset_reps(G, N):
        if N.mask[g]:
            continue
        if S.intersect(S.conjugate(int(g))).order > 1:
            return False
    return True


class QuotientGroup:
    """N / S for S normal in N, with coset table and regular representation."""

    def __init__(self, ambient: Subgroup, normal: Subgroup):
        if not normal.issubgroup(ambient) or not normal.is_normal_in(ambient):
            raise ValueError("quotient needs a normal subgroup")
        G = ambient.parent
        self.ambient = ambient
        self.normal = normal
        coset_of = np.full(G.order, -1, dtype=np.int64)
        reps = []
        for x in ambient.elements:
            if coset_of[x] >= 0:
                continue
            coset_of[G.mul(x, normal.elements)] = len(reps)
            reps.append(int(x))
        self.cosets = tuple(reps)
        self.coset_of = coset_of
        m = len(reps)
        r = np.array(reps, dtype=np.int64)
        self.table = coset_of[G.mul(r[:, None], r[None, :])] if m else np.zeros((0, 0), dtype=np.int64)

    @property
    def order(self) -> int:
        return len(self.cosets)

    @cached_property
    def regular_rep(self) -> FiniteGroup:
        m = self.order
        gens = []
        for c in range(m):
            perm = tuple(int(x) for x in self.table[:, c])  # right multiplication by coset c
            gens.append(Permutation(perm))
        # a small generating set: greedy over cosets
        chosen = []
        reached = 1
        for c in range(1, m):
            trial = FiniteGroup([gens[i] for i in chosen + [c]], degree=m)
            if trial.order > reached:
                chosen.append(c)
                reached = trial.order
            if reached == m:
                break
        return FiniteGroup([gens[i] for i in chosen], degree=m, label="W")


def weyl_group(G: FiniteGroup, S: Subgroup) -> QuotientGroup:
    return QuotientGroup(normalizer(G, S), S)


def weyl_action_on(G: FiniteGroup, S: Subgroup, W: QuotientGroup | None = None) -> list[np.ndarray]:
    """For each Weyl coset representative w, the permutation s -> w s w^-1 of S.

    Permutations act on positions in ``S.elements``.
    """
    if W is None:
        W = weyl_group(G, S)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[S.elements] = np.arange(S.order)
    out = []
    for w in W.cosets:
        img = pos[G.conj(w, S.elements)]
        assert np.all(img >= 0)
        out.append(img)
    return out


def weyl_action_is_free(G: FiniteGroup, S: Subgroup) -> bool:
    acts = weyl_action_on(G, S)
    for k, perm in enumerate(acts):
        if k == 0:
            continue
        fixed = np.flatnonzero(perm == np.arange(len(perm)))
        if len(fixed) != 1:
            return False
    return True


@dataclass(frozen=True)
class FrobeniusCertificate:
    free: bool
    prime: int | None
    case: str | None  # "complement-p" or "kernel-p"


def is_frobenius_pair(K: FiniteGroup, H: FiniteGroup, action, p: int | None = None) -> FrobeniusCertificate:
    """Check that H acts freely on K minus the identity.

    ``action`` gives, for each generator of H, a permutation of K's element
    indices that is an automorphism of K.  When ``p`` is supplied and one of
    the two Frobenius hypotheses holds (H a nontrivial p-group with K a
    p'-group, or H a p'-group with K a nontrivial p-group) the certificate
    records which case applies.
    """
    phi = extend_action(K, H, action)
    free = True
    for h in range(1, H.order):
        fixed = np.flatnonzero(phi[h] == np.arange(K.order))
        if len(fixed) != 1:
            free = False
            break
    case = None
    if free and p is not None:
        hp = p_part(H.order, p)
        kp = p_part(K.order, p)
        if H.order > 1 and hp == H.order and kp == 1:
            case = "complement-p"
        elif K.order > 1 and kp == K.order and hp == 1:
            case = "kernel-p"
    return FrobeniusCertificate(free, p if case else None, case)


def extend_action(K: FiniteGroup, H: FiniteGroup, action) -> np.ndarray:
    """Extend generator automorphisms to a table phi[h] (h in H's ordering).

    Rejects data that is not a homomorphism H -> Aut(K).
    """
    acts = [np.asarray(a, dtype=np.int64) for a in action]
    if len(acts) != len(H.generators):
        raise ValueError("one automorphism per generator of H is required")
    T = K.table
    for a in acts:
        if sorted(a.tolist()) != list(range(K.order)):
            raise ValueError("action is not a permutation of K")
        if not np.all(a[T] == T[a[:, None], a[None, :]]):
            raise ValueError("action is not an automorphism of K")
    phi = np.empty((H.order, K.order), dtype=np.int64)
    phi[0] = np.arange(K.order)
    for h in range(1, H.order):
        # element h = parent * gen, acting on the right: phi(h) = phi(gen) o phi(parent)
        # we use left actions h.k, so phi(xy) = phi(x) o phi(y)
        par = H.parent[h]
        s = H.gen_index[h]
        phi[h] = phi[par][acts[s]]
    # homomorphism check phi(x * s) = phi(x) o phi(s) for all x and generators s
    for s_idx, s in enumerate(H.gen_ids):
        xs = H.mul(np.arange(H.order), s)
        if not np.all(phi[xs] == phi[:, acts[s_idx]]):
            raise ValueError("action data is not a homomorphism H -> Aut(K)")
    return phi

"""Modules over kG as generator matrices, MeatAxe chopping and homomorphisms.

Vectors are rows and group elements act on the right.  A module over a
subgroup lives over ``H.group`` for a :class:`~piso.perm.Subgroup` ``H``; the
induction, restriction and conjugation helpers translate between element
indices of the ambient group and of the subgroup.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .field import FiniteField, poly_trim, poly_monic, poly_gcd, poly_sub, poly_mod, poly_mul, poly_divmod, poly_powmod, _frobenius_matrix, _apply_frobenius, _squarefree, _equal_degree
from .linalg import (
    InconsistentSystem,
    Span,
    inverse,
    nullspace,
    poly_eval_matrix,
    rank,
    replay_words_batch,
    right_nullspace,
    rref,
    spin,
    spin_words,
    char_poly,
    min_poly,
)
from .perm import CapExceeded, FiniteGroup, Subgroup, conjugacy_classes

__all__ = [
    "REP_CAP",
    "GModule",
    "SimpleModule",
    "Registry",
    "ChopFailure",
    "regular_module",
    "trivial_module",
    "permutation_module",
    "tensor",
    "dual",
    "chop",
    "is_isomorphic",
    "homs_from_simple",
    "hom_dimension",
    "induce",
    "restrict",
    "conjugate",
    "find_simples",
    "count_simples_expected",
    "radical_series",
]

REP_CAP = 500


class ChopFailure(RuntimeError):
    """The randomised splitting search ran out of attempts."""


@dataclass(eq=False)
class GModule:
    group: FiniteGroup
    field: FiniteField
    dim: int
    action: tuple  # one dim x dim matrix per generator of ``group``
    label: str = ""
    # optional fast evaluation of rho(a) for a in kG (group-algebra vector)
    algebra_hook: Callable | None = field(default=None, repr=False)

    def __post_init__(self):
        acts = tuple(np.asarray(a, dtype=np.int64).reshape(self.dim, self.dim) for a in self.action)
        if len(acts) != len(self.group.generators):
            raise ValueError("need one matrix per group generator")
        for a in acts:
            a.setflags(write=False)
        self.action = acts

    def word_matrix(self, word) -> np.ndarray:
        out = np.eye(self.dim, dtype=np.int64)
        for s in word:
            out = self.field.dot(out, self.action[s])
        return out

    def matrix_of(self, i: int) -> np.ndarray:
        """rho(g) for the element with index i in ``group``."""
        return self.word_matrix(self.group.word(int(i)))

    @cached_property
    def element_matrices(self) -> np.ndarray:
        """rho(g) for every element, built layer by layer along the word tree."""
        G, F = self.group, self.field
        n, d = G.order, self.dim
        if n * d * d > 6 * 10**7:
            raise CapExceeded("too many entries for the all-element matrix table")
        out = np.zeros((n, d, d), dtype=np.int64)
        out[0] = np.eye(d, dtype=np.int64)
        depth = G.depth
        for k in range(1, int(depth.max()) + 1 if n > 1 else 1):
            layer = np.flatnonzero(depth == k)
            for s in range(len(self.action)):
                idx = layer[G.gen_index[layer] == s]
                if len(idx):
                    out[idx] = F.dot(out[G.parent[idx]], self.action[s])
        out.setflags(write=False)
        return out

    def algebra_matrix(self, a) -> np.ndarray:
        """rho(a) = sum_g a_g rho(g) for a group-algebra vector a."""
        a = np.asarray(a, dtype=np.int64)
        if self.algebra_hook is not None:
            return self.algebra_hook(a)
        mats = self.element_matrices.reshape(self.group.order, -1)
        nz = np.flatnonzero(a)
        if len(nz) == 0:
            return np.zeros((self.dim, self.dim), dtype=np.int64)
        return self.field.dot(a[nz][None, :], mats[nz])[0].reshape(self.dim, self.dim)

    def check(self, samples: int = 8, seed: int = 0) -> None:
        """Spot-check that word evaluation is a homomorphism."""
        G, F = self.group, self.field
        rng = np.random.default_rng(seed)
        for a in self.action:
            if rank(a, F) != self.dim:
                raise ValueError("action matrix is singular")
        for _ in range(samples if G.order > 1 else 0):
            x, y = (int(v) for v in rng.integers(0, G.order, 2))
            xy = int(G.mul(x, y))
            if not np.array_equal(F.dot(self.matrix_of(x), self.matrix_of(y)), self.matrix_of(xy)):
                raise ValueError("generator matrices do not define a representation")

    def submodule(self, basis) -> "GModule":
        B, piv = rref(basis, self.field)
        acts = [self.field.dot(B, a)[:, piv] for a in self.action]
        return GModule(self.group, self.field, len(piv), tuple(acts), label=f"sub({self.label})")

    def quotient(self, basis) -> "GModule":
        F = self.field
        B, piv = rref(basis, F)
        free = [c for c in range(self.dim) if c not in set(piv)]
        acts = []
        for a in self.action:
            rows = a[free]
            if piv:
                rows = F.sub(rows, F.dot(rows[:, piv], B))
            acts.append(rows[:, free])
        return GModule(self.group, F, len(free), tuple(acts), label=f"quot({self.label})")

    def direct_sum(self, other: "GModule") -> "GModule":
        acts = []
        for a, b in zip(self.action, other.action):
            m = np.zeros((self.dim + other.dim,) * 2, dtype=np.int64)
            m[: self.dim, : self.dim] = a
            m[self.dim :, self.dim :] = b
            acts.append(m)
        return GModule(self.group, self.field, self.dim + other.dim, tuple(acts))


def _check_cap(G: FiniteGroup) -> None:
    if G.order > REP_CAP:
        raise CapExceeded(f"representation-theoretic operations limited to |G| <= {REP_CAP}")


def regular_module(G: FiniteGroup, F: FiniteField) -> GModule:
    _check_cap(G)
    n = G.order
    acts = []
    for s in G.gen_ids:
        m = np.zeros((n, n), dtype=np.int64)
        m[np.arange(n), G.mul(np.arange(n), s)] = 1
        acts.append(m)
    T = G.table.astype(np.int64)
    RI = T[G.inv[:, None], np.arange(n)[None, :]]

    def hook(a, RI=RI):
        return a[RI]

    return GModule(G, F, n, tuple(acts), label="regular", algebra_hook=hook)


def trivial_module(G: FiniteGroup, F: FiniteField) -> GModule:
    return GModule(G, F, 1, tuple(np.ones((1, 1), dtype=np.int64) for _ in G.generators), label="trivial")


def permutation_module(G: FiniteGroup, F: FiniteField) -> GModule:
    """The natural permutation module on the points."""
    d = G.degree
    acts = []
    for g in G.generators:
        m = np.zeros((d, d), dtype=np.int64)
        m[np.arange(d), np.array(g.images)] = 1
        acts.append(m)
    return GModule(G, F, d, tuple(acts), label="natural")


def tensor(M: GModule, N: GModule) -> GModule:
    F = M.field
    acts = []
    for a, b in zip(M.action, N.action):
        acts.append(np.kron(a, b) % F.p if F.r == 1 else _kron(a, b, F))
    return GModule(M.group, F, M.dim * N.dim, tuple(acts), label=f"{M.label}*{N.label}")


def _kron(a, b, F):
    out = F.mul(a[:, None, :, None], b[None, :, None, :])
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def dual(M: GModule) -> GModule:
    acts = [inverse(a, M.field).T.copy() for a in M.action]
    return GModule(M.group, M.field, M.dim, tuple(acts), label=f"{M.label}^*")


# ----------------------------------------------------------------- MeatAxe
@dataclass(frozen=True)
class Certificate:
    """Irreducibility witness: a = sum coef * word, f | charpoly(a), v in ker f(a)."""

    recipe: tuple  # ((coef, (gen, gen, ...)), ...)
    poly: tuple
    vector: tuple

    def element(self, M: GModule, cache: dict | None = None) -> np.ndarray:
        F = M.field
        out = np.zeros((M.dim, M.dim), dtype=np.int64)
        for coef, word in self.recipe:
            key = tuple(word)
            if cache is not None and key in cache:
                w = cache[key]
            else:
                w = M.word_matrix(word)
                if cache is not None:
                    cache[key] = w
            out = F.add(out, F.mul(coef, w))
        return out

    def nullspace_in(self, M: GModule) -> np.ndarray:
        a = self.element(M)
        return nullspace(poly_eval_matrix(np.array(self.poly), a, M.field), M.field)

    def to_json(self) -> dict:
        return {
            "recipe": [[int(c), list(map(int, w))] for c, w in self.recipe],
            "poly": list(map(int, self.poly)),
            "vector": list(map(int, self.vector)),
        }

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        return cls(
            tuple((int(c), tuple(int(x) for x in w)) for c, w in d["recipe"]),
            tuple(int(x) for x in d["poly"]),
            tuple(int(x) for x in d["vector"]),
        )


@dataclass(eq=False)
class SimpleModule:
    module: GModule
    certificate: Certificate
    endo_degree: int = 0
    id: int = -1
    endo_basis: tuple = ()

    @cached_property
    def std(self) -> tuple[np.ndarray, list, np.ndarray]:
        """Standard basis spun from the certificate vector and its inverse."""
        B, words = spin_words(np.array(self.certificate.vector), self.module.action, self.module.field)
        if len(B) != self.module.dim:
            raise AssertionError("certificate vector does not generate the simple module")
        return B, words, inverse(B, self.module.field)

    @property
    def dim(self) -> int:
        return self.module.dim

    @cached_property
    def endo_generator(self) -> np.ndarray:
        """A matrix generating End(S) as a field over F_q."""
        F = self.module.field
        d = self.endo_degree
        if d == 1:
            return np.eye(self.dim, dtype=np.int64)
        basis = [np.asarray(b) for b in self.endo_basis]
        rng = np.random.default_rng(12345)
        cands = list(basis)
        for _ in range(200):
            cands.append(F.lincomb(F.random(rng, len(basis)), np.array(basis)))
        for c in cands:
            if len(min_poly(c, F)) - 1 == d:
                return c
        raise AssertionError("no generator of the endomorphism field found")

    @cached_property
    def fingerprint(self) -> tuple:
        """Traces of rho(g) on conjugacy class representatives."""
        G = self.module.group
        F = self.module.field
        cc = conjugacy_classes(G)
        out = []
        for rep in cc.reps:
            m = self.module.matrix_of(rep)
            out.append(int(F.sum(np.diag(m))))
        return tuple(out)


def homs_from_simple(S: SimpleModule, M: GModule) -> list[np.ndarray]:
    """Basis of Hom_kG(S, M) as dim S x dim M matrices (row convention)."""
    F = M.field
    N = S.certificate.nullspace_in(M)
    if len(N) == 0:
        return []
    B, words, Binv = S.std
    # images of the standard basis for every candidate start vector w in N
    imgs = replay_words_batch(N, words, M.action, F)  # (dimS, k, dimM)
    k = len(N)
    thetas = np.stack([F.dot(Binv, imgs[:, t, :]) for t in range(k)])  # (k, dimS, dimM)
    # constraint A^S theta = theta A^M, linear in the coefficients
    res = []
    for aS, aM in zip(S.module.action, M.action):
        left = np.stack([F.dot(aS, th) for th in thetas])
        right = F.dot(thetas, aM)
        res.append(F.sub(left, right).reshape(k, -1))
    R = np.concatenate(res, axis=1) if res else np.zeros((k, 0), dtype=np.int64)
    C = nullspace(R, F) if R.shape[1] else np.eye(k, dtype=np.int64)
    return [F.lincomb(c, thetas) for c in C]


def hom_dimension(S: SimpleModule, M: GModule) -> int:
    return len(homs_from_simple(S, M))


def is_isomorphic(M: GModule, N: GModule, S: SimpleModule | None = None) -> tuple[bool, np.ndarray | None]:
    """Isomorphism test with an explicit intertwiner X (rows: M -> N, X A^N = A^M X).

    With a certified simple ``S`` standing for M the standard-basis spin-up
    is used; otherwise the generic linear system for Hom(M, N) is solved and
    an invertible element searched for.
    """
    F = M.field
    if M.dim != N.dim:
        return False, None
    if S is not None:
        homs = homs_from_simple(S, N)
        if not homs:
            return False, None
        X = homs[0]
        if rank(X, F) != M.dim:
            return False, None
        return True, X
    homs = _hom_space(M, N)
    if not homs:
        return False, None
    rng = np.random.default_rng(0)
    for trial in range(32):
        c = F.random(rng, len(homs)) if trial else np.eye(len(homs), dtype=np.int64)[0]
        X = F.lincomb(c, np.array(homs))
        if rank(X, F) == M.dim:
            return True, X
    return False, None


def _hom_space(M: GModule, N: GModule) -> list[np.ndarray]:
    """Hom(M, N) from the Kronecker system A^M X = X A^N (small modules only)."""
    F = M.field
    m, n = M.dim, N.dim
    if m * n > 1600:
        raise CapExceeded("generic hom space limited to dim(M) * dim(N) <= 1600")
    blocks = []
    I_m = np.eye(m, dtype=np.int64)
    I_n = np.eye(n, dtype=np.int64)
    for a, b in zip(M.action, N.action):
        # vec_r(A X) = (A kron I) vec_r(X); vec_r(X B) = (I kron B^T) vec_r(X)
        lhs = _kron(a, I_n, F)
        rhs = _kron(I_m, b.T, F)
        blocks.append(F.sub(lhs, rhs))
    Msys = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, m * n), dtype=np.int64)
    sol = right_nullspace(Msys, F) if len(Msys) else np.eye(m * n, dtype=np.int64)
    return [s.reshape(m, n) for s in sol]


def _low_degree_factors(f, F: FiniteField, maxdeg: int) -> list[np.ndarray]:
    """Monic irreducible factors of f of degree <= maxdeg (sorted by degree)."""
    out = []
    rng = np.random.default_rng(7)
    x = np.array([0, 1], dtype=np.int64)
    for g, _e in _squarefree(f, F):
        rest = g
        if len(rest) <= 1:
            continue
        Q = _frobenius_matrix(rest, F)
        h = poly_mod(x, rest, F)
        for d in range(1, maxdeg + 1):
            if len(rest) - 1 < d:
                break
            h = _apply_frobenius(h, Q, F)
            hm = poly_mod(h, rest, F) if len(h) >= len(rest) else h
            gd = poly_gcd(rest, poly_sub(hm, x, F), F)
            if len(gd) > 1:
                out.extend(_equal_degree(gd, d, F, rng))
                rest = poly_divmod(rest, gd, F)[0]
                if len(rest) <= 1:
                    break
                # Frobenius matrix relative to the smaller modulus
                Q = _frobenius_matrix(rest, F)
                h = poly_mod(x, rest, F)
                for _ in range(d):
                    h = _apply_frobenius(h, Q, F)
    uniq = {}
    for f_ in out:
        m = poly_monic(f_, F)
        uniq[tuple(int(c) for c in m)] = m
    items = sorted(uniq.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))
    return [v for _, v in items]


@dataclass
class _Split:
    sub: np.ndarray | None
    certificate: Certificate | None


def meataxe_split(M: GModule, rng: np.random.Generator, max_trials: int = 60) -> _Split:
    """Find a proper submodule or certify irreducibility (Holt-Rees / Norton)."""
    F = M.field
    n = M.dim
    ngen = len(M.action)
    if n == 1:
        return _Split(None, Certificate(((1, ()),), (F.p - 1 if F.p > 1 else 0, 1), (1,)))
    if ngen == 0:
        v = np.zeros(n, dtype=np.int64)
        v[0] = 1
        return _Split(v[None, :], None)
    words: list[tuple] = [(s,) for s in range(ngen)]
    mats: dict[tuple, np.ndarray] = {w: M.action[w[0]] for w in words}
    transposes = [a.T.copy() for a in M.action]
    maxdeg = max(4, min(n, 12))
    for trial in range(max_trials):
        # grow the word pool by a random product
        i, j = rng.integers(0, len(words), 2)
        w = words[i] + words[j]
        if w not in mats and len(w) <= 24:
            words.append(w)
            mats[w] = F.dot(mats[words[i]], mats[words[j]])
        k = int(rng.integers(1, min(len(words), 4) + 1))
        chosen = rng.choice(len(words), size=k, replace=False)
        coefs = F.random(rng, k, nonzero=True)
        recipe = tuple(sorted(((int(c), words[int(t)]) for c, t in zip(coefs, chosen)), key=lambda x: x[1]))
        a = np.zeros((n, n), dtype=np.int64)
        for c, wd in recipe:
            a = F.add(a, F.mul(c, mats[wd]))
        cp = char_poly(a, F)
        for f in _low_degree_factors(cp, F, maxdeg):
            B = poly_eval_matrix(f, a, F)
            N = nullspace(B, F)
            if len(N) == 0:
                continue
            v = N[0]
            U = spin(v[None, :], M.action, F, limit=n - 1)
            if len(U) < n:
                return _Split(U, None)
            if len(N) != len(f) - 1:
                # not a good factor; try the other kernel vectors cheaply
                for v2 in N[1:3]:
                    U = spin(v2[None, :], M.action, F, limit=n - 1)
                    if len(U) < n:
                        return _Split(U, None)
                continue
            # Norton's dual test: a kernel vector of B^T spins the dual
            wt = right_nullspace(B, F)[0]
            W = spin(wt[None, :], transposes, F, limit=n - 1)
            if len(W) < n:
                ann = nullspace(W.T, F)  # vectors orthogonal to W
                return _Split(ann, None)
            return _Split(None, Certificate(recipe, tuple(int(c) for c in f), tuple(int(c) for c in v)))
    raise ChopFailure(f"MeatAxe gave up after {max_trials} random elements (dim {n})")


class Registry:
    """Isomorphism classes of simple modules found so far for one (group, field)."""

    def __init__(self, group: FiniteGroup, field: FiniteField):
        self.group = group
        self.field = field
        self.simples: list[SimpleModule] = []

    def __len__(self) -> int:
        return len(self.simples)

    def identify(self, X: GModule) -> int | None:
        for i, S in enumerate(self.simples):
            if S.dim == X.dim and is_isomorphic(S.module, X, S)[0]:
                return i
        return None

    def register(self, X: GModule, cert: Certificate) -> int:
        S = SimpleModule(X, cert)
        ends = homs_from_simple(S, X)
        S.endo_degree = len(ends)
        S.endo_basis = tuple(ends)
        if S.endo_degree < 1:
            raise AssertionError("simple module with trivial endomorphism ring")
        S.id = len(self.simples)
        self.simples.append(S)
        return S.id


def chop(M: GModule, registry: Registry | None = None, seed: int = 0) -> tuple[dict[int, int], Registry]:
    """Composition factors of M as {simple id: multiplicity}, updating the registry."""
    if registry is None:
        registry = Registry(M.group, M.field)
    rng = np.random.default_rng(seed)
    counts: dict[int, int] = {}
    stack = [M]
    while stack:
        X = stack.pop()
        if X.dim == 0:
            continue
        # split off copies of already known simples first
        split = False
        for S in registry.simples:
            if S.dim > X.dim:
                continue
            homs = homs_from_simple(S, X)
            if homs:
                img = homs[0]
                counts[S.id] = counts.get(S.id, 0) + 1
                if S.dim < X.dim:
                    stack.append(X.quotient(img))
                split = True
                break
        if split:
            continue
        res = meataxe_split(X, rng)
        if res.sub is not None:
            stack.append(X.submodule(res.sub))
            stack.append(X.quotient(res.sub))
            continue
        sid = registry.identify(X)
        if sid is None:
            sid = registry.register(X, res.certificate)
        counts[sid] = counts.get(sid, 0) + 1
    total = sum(registry.simples[i].dim * m for i, m in counts.items())
    assert total == M.dim, "composition length conservation failed"
    return counts, registry


def count_simples_expected(G: FiniteGroup, F: FiniteField) -> int:
    """Number of F_q-conjugacy classes of p-regular elements (Brauer-Berman)."""
    cc = conjugacy_classes(G)
    p, q = F.p, F.q
    reg = [c for c, rep in enumerate(cc.reps) if G.orders[rep] % p]
    parent = {c: c for c in reg}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for c in reg:
        rep = cc.reps[c]
        o = int(G.orders[rep])
        e = q % o if o > 1 else 0
        x = 0
        base = rep
        k = e
        while k:
            if k & 1:
                x = int(G.mul(x, base))
            base = int(G.mul(base, base))
            k >>= 1
        d = int(cc.labels[x])
        a, b = find(c), find(d)
        if a != b:
            parent[max(a, b)] = min(a, b)
    return len({find(c) for c in reg})


def find_simples(G: FiniteGroup, F: FiniteField, seed: int = 0) -> Registry:
    """All simple kG-modules via chopping a faithful module and tensor products."""
    _check_cap(G)
    target = count_simples_expected(G, F)
    reg = Registry(G, F)
    chop(trivial_module(G, F), reg, seed)
    if len(reg) < target:
        chop(permutation_module(G, F), reg, seed + 1)
    done_pairs: set[tuple[int, int]] = set()
    tries = 0
    while len(reg) < target:
        progressed = False
        n = len(reg)
        for i in range(n):
            for j in range(i, n):
                if (i, j) in done_pairs or len(reg) >= target:
                    continue
                done_pairs.add((i, j))
                Si, Sj = reg.simples[i], reg.simples[j]
                if Si.dim == 1 and Sj.dim == 1 and i == 0:
                    continue
                if Si.dim * Sj.dim > 400:
                    continue
                before = len(reg)
                chop(tensor(Si.module, Sj.module), reg, seed + 7 * i + 13 * j + 2)
                if len(reg) > before:
                    progressed = True
        if len(reg) < target:
            for i in range(len(reg)):
                if ("dual", i) in done_pairs:
                    continue
                done_pairs.add(("dual", i))
                before = len(reg)
                chop(dual(reg.simples[i].module), reg, seed + 3 * i + 1)
                progressed = progressed or len(reg) > before
        tries += 1
        if not progressed or tries > 10:
            break
    if len(reg) < target:
        chop(regular_module(G, F), reg, seed + 999)
    if len(reg) != target:
        raise AssertionError(f"found {len(reg)} simples, expected {target}")
    _canonical_order(reg)
    return reg


def _canonical_order(reg: Registry) -> None:
    order = sorted(range(len(reg.simples)), key=lambda i: (reg.simples[i].dim, reg.simples[i].endo_degree, reg.simples[i].fingerprint, i))
    reg.simples = [reg.simples[i] for i in order]
    for k, S in enumerate(reg.simples):
        S.id = k


# ------------------------------------------------- induction and friends
def _module_over(sub: Subgroup) -> FiniteGroup:
    return sub.group


def restrict(G_sub: Subgroup, H: Subgroup, M: GModule) -> GModule:
    """Restrict M (over G_sub.group) to H <= G_sub (both subgroups of one parent)."""
    if not H.issubgroup(G_sub):
        raise ValueError("restriction needs a subgroup")
    Hg = H.group
    parent_gens = H.embed[list(Hg.gen_ids)] if Hg.gen_ids else []
    acts = [M.matrix_of(int(G_sub.local_index[g])) for g in parent_gens]
    return GModule(Hg, M.field, M.dim, tuple(acts), label=f"res({M.label})")


def conjugate(H: Subgroup, g: int, M: GModule) -> tuple[Subgroup, GModule]:
    """The module x -> rho(g^-1 x g) over gHg^-1."""
    P = H.parent
    K = H.conjugate(g)
    if K == H:
        K = H  # keep one ordering of the subgroup
    Kg = K.group
    ginv = int(P.inv[g])
    acts = []
    for x in Kg.gen_ids:
        px = int(K.embed[x])
        h = int(P.mul(P.mul(ginv, px), g))
        acts.append(M.matrix_of(int(H.local_index[h])))
    return K, GModule(Kg, M.field, M.dim, tuple(acts), label=f"conj({M.label})")


def _right_transversal(P: FiniteGroup, G_sub: Subgroup, H: Subgroup) -> np.ndarray:
    """Least representative (parent index) of each right coset H t inside G_sub."""
    label = np.full(P.order, -1, dtype=np.int64)
    reps = []
    for t in G_sub.elements:
        if label[t] >= 0:
            continue
        label[P.mul(H.elements, int(t))] = len(reps)
        reps.append(int(t))
    return np.array(reps, dtype=np.int64)


def induce(G_sub: Subgroup, H: Subgroup, M: GModule) -> GModule:
    """Ind from H to G_sub of M (over H.group), block-monomial on right cosets."""
    if not H.issubgroup(G_sub):
        raise ValueError("induction needs a subgroup")
    P = H.parent
    F = M.field
    T = _right_transversal(P, G_sub, H)
    m = len(T)
    d = M.dim
    coset_of = np.full(P.order, -1, dtype=np.int64)
    for a, t in enumerate(T):
        coset_of[P.mul(H.elements, int(t))] = a
    Gg = G_sub.group
    acts = []
    for s in Gg.gen_ids:
        ps = int(G_sub.embed[s])
        mat = np.zeros((m * d, m * d), dtype=np.int64)
        for a, t in enumerate(T):
            ts = int(P.mul(int(t), ps))
            b = int(coset_of[ts])
            h = int(P.mul(ts, int(P.inv[T[b]])))
            mat[a * d : (a + 1) * d, b * d : (b + 1) * d] = M.matrix_of(int(H.local_index[h]))
        acts.append(mat)

    Hmats = None

    def hook(e):
        nonlocal Hmats
        if Hmats is None:
            Hmats = M.element_matrices.reshape(H.order, -1)
        # block (a, b) = sum_h e[t_a^-1 h t_b] rho(h); h runs over H.group ordering
        hpar = H.embed  # parent index of each local element
        tinv = P.inv[T]
        idx = P.mul(P.mul(tinv[:, None, None], hpar[None, :, None]), T[None, None, :])  # (m, |H|, m)
        loc = G_sub.local_index[idx]
        coeff = e[loc]  # (m, |H|, m)
        C = coeff.transpose(0, 2, 1).reshape(m * m, H.order)
        blocks = F.dot(C, Hmats).reshape(m, m, d, d)
        return blocks.transpose(0, 2, 1, 3).reshape(m * d, m * d)

    return GModule(Gg, F, m * d, tuple(acts), label=f"ind({M.label})", algebra_hook=hook)


def radical_series(M: GModule, radical_basis: np.ndarray) -> list[int]:
    """Dimensions of M, MJ, MJ^2, ... given a basis of J(kG) as algebra vectors."""
    F = M.field
    mats = [M.algebra_matrix(j) for j in radical_basis]
    dims = [M.dim]
    cur = np.eye(M.dim, dtype=np.int64)
    while len(cur):
        nxt = np.concatenate([F.dot(cur, x) for x in mats], axis=0) if mats else np.zeros((0, M.dim), dtype=np.int64)
        cur = rref(nxt, F)[0] if len(nxt) else nxt
        dims.append(len(cur))
        if len(dims) > M.dim + 2:
            raise AssertionError("radical series does not terminate")
    return dims

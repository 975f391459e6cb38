"""Jacobson radical, primitive idempotents, projective indecomposables and Cartan matrices.

Group-algebra elements are coefficient vectors indexed by the group's element
ordering.  ``R(b)`` is the matrix of right multiplication by ``b`` and
``L(a)`` the matrix of left multiplication by ``a``, both in the row-vector
convention ``x -> x @ R(b) = x * b``.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .field import FiniteField, field_make
from .linalg import Span, inverse, min_poly, nullspace, rank, rref, solve
from .modrep import (
    Certificate,
    GModule,
    Registry,
    SimpleModule,
    _check_cap,
    chop,
    find_simples,
    homs_from_simple,
)
from .perm import FiniteGroup
from .smith import FgAbelianGroup, cokernel, det

__all__ = [
    "GroupAlgebra",
    "CartanData",
    "cartan_matrix",
    "radical",
    "primitive_idempotents",
    "class_in_G0",
    "CACHE_ENV",
    "SCHEMA_VERSION",
]

CACHE_ENV = "PISO_CACHE_DIR"
SCHEMA_VERSION = 1
DEFAULT_SEED = 0


class GroupAlgebra:
    def __init__(self, G: FiniteGroup, F: FiniteField):
        _check_cap(G)
        self.G = G
        self.F = F
        self.n = G.order
        T = G.table.astype(np.int64)
        inv = G.inv
        ar = np.arange(self.n)
        self.RI = T[inv[:, None], ar[None, :]]  # R_b[y, z] = b[y^-1 z]
        self.LI = T[ar[None, :], inv[:, None]]  # L_a[w, z] = a[z w^-1]
        self._T = T
        self._inv = inv

    def one(self) -> np.ndarray:
        e = np.zeros(self.n, dtype=np.int64)
        e[0] = 1
        return e

    def basis(self, g: int) -> np.ndarray:
        e = np.zeros(self.n, dtype=np.int64)
        e[g] = 1
        return e

    def R(self, b) -> np.ndarray:
        return np.asarray(b)[self.RI]

    def L(self, a) -> np.ndarray:
        return np.asarray(a)[self.LI]

    def mul(self, a, b) -> np.ndarray:
        return self.F.dot(np.asarray(a)[None, :], self.R(b))[0]

    def power(self, a, e: int) -> np.ndarray:
        out = self.one()
        base = np.asarray(a)
        while e:
            if e & 1:
                out = self.mul(out, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return out

    def right_by_gen(self, V: np.ndarray, s: int) -> np.ndarray:
        """Rows v -> v * s for a group element s (a coordinate permutation)."""
        # (v s)(z) = v(z s^-1)
        idx = self._T[:, self._inv[s]]
        return V[:, idx]

    def left_by_gen(self, V: np.ndarray, s: int) -> np.ndarray:
        # (s v)(z) = v(s^-1 z)
        idx = self._T[self._inv[s], :]
        return V[:, idx]

    def right_spin(self, V) -> Span:
        S = Span(self.F, self.n)
        new = S.add(V)
        while len(new):
            imgs = np.concatenate([self.right_by_gen(new, s) for s in self.G.gen_ids], axis=0)
            new = S.add(imgs)
        return S

    def two_sided_spin(self, V) -> Span:
        S = Span(self.F, self.n)
        new = S.add(V)
        while len(new):
            imgs = [self.right_by_gen(new, s) for s in self.G.gen_ids]
            imgs += [self.left_by_gen(new, s) for s in self.G.gen_ids]
            new = S.add(np.concatenate(imgs, axis=0))
        return S


@dataclass(eq=False)
class CartanData:
    group: FiniteGroup
    field: FiniteField
    seed: int
    simples: list[SimpleModule]
    radical: np.ndarray  # basis of J(kG) as rows
    layers: list[int]  # dims of J^m, m = 0, 1, ..., down to 0
    idempotents: list[np.ndarray]  # primitive orthogonal idempotents summing to 1
    idempotent_simple: list[int]  # simple index for each idempotent
    cartan: np.ndarray  # c_ij = [P_i : S_j]
    layer_counts: np.ndarray = field(default=None, repr=False)  # [m, i, j] multiplicities

    @property
    def nsimples(self) -> int:
        return len(self.simples)

    @property
    def dims(self) -> list[int]:
        return [S.dim for S in self.simples]

    @property
    def endo_degrees(self) -> list[int]:
        return [S.endo_degree for S in self.simples]

    @cached_property
    def principal(self) -> list[np.ndarray]:
        """One primitive idempotent per simple module, in simple order."""
        out = []
        for j in range(self.nsimples):
            k = self.idempotent_simple.index(j)
            out.append(self.idempotents[k])
        return out

    @property
    def nilpotency_index(self) -> int:
        return len(self.layers) - 1

    @cached_property
    def algebra(self) -> GroupAlgebra:
        return GroupAlgebra(self.group, self.field)

    def projective_basis(self, i: int) -> np.ndarray:
        """Basis of P_i = e_i kG inside the regular module."""
        e = self.principal[i]
        return rref(self.algebra.L(e), self.field)[0]

    def sk(self) -> FgAbelianGroup:
        return cokernel(self.cartan.T)

    def registry(self) -> Registry:
        reg = Registry(self.group, self.field)
        reg.simples = list(self.simples)
        return reg


def _phi_matrix(simples: list[SimpleModule], n: int) -> np.ndarray:
    blocks = [S.module.element_matrices.reshape(n, -1) for S in simples]
    return np.concatenate(blocks, axis=1)


def radical(A: GroupAlgebra, simples: list[SimpleModule]) -> np.ndarray:
    """J(kG) as the common annihilator of the simple modules."""
    F = A.F
    Phi = _phi_matrix(simples, A.n)
    J = nullspace(Phi, F)
    expected = sum(S.dim * S.dim // S.endo_degree for S in simples)
    if A.n - len(J) != expected:
        raise AssertionError(
            f"Wedderburn check failed: dim kG/J = {A.n - len(J)} but sum dim^2/d = {expected}"
        )
    return J


def _two_sided_generators(A: GroupAlgebra, J: np.ndarray) -> list[np.ndarray]:
    gens = []
    S = Span(A.F, A.n)
    for v in J:
        if S.contains(v):
            continue
        gens.append(v)
        S = A.two_sided_spin(np.array(gens))
        if S.dim == len(J):
            break
    return gens


def radical_powers(A: GroupAlgebra, J: np.ndarray) -> list[np.ndarray]:
    """Bases of kG = J^0, J, J^2, ..., ending with the zero space (nilpotency certificate)."""
    F = A.F
    out = [np.eye(A.n, dtype=np.int64)]
    if len(J) == 0:
        out.append(J)
        return out
    gens = _two_sided_generators(A, J)
    Rg = [A.R(x) for x in gens]
    cur = J
    out.append(J)
    while len(cur):
        prods = np.concatenate([F.dot(cur, R) for R in Rg], axis=0)
        nxt = A.right_spin(prods).basis
        if len(nxt) >= len(cur):
            raise AssertionError("radical is not nilpotent")
        out.append(nxt)
        cur = nxt
    return out


def _division_basis_projections(S: SimpleModule) -> list[np.ndarray]:
    """Orthogonal primitive idempotents of End_D(S) from a D-basis of S."""
    F = S.module.field
    n, d = S.dim, S.endo_degree
    delta = S.endo_generator
    powers = [np.eye(n, dtype=np.int64)]
    for _ in range(d - 1):
        powers.append(F.dot(powers[-1], delta))
    span = Span(F, n)
    rows = []
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        block = np.array([F.dot(e[None, :], P)[0] for P in powers])
        if span.contains(e):
            continue
        span.add(block)
        rows.append(block)
        if span.dim == n:
            break
    C = np.concatenate(rows, axis=0)
    if len(C) != n:
        raise AssertionError("failed to find a basis over the endomorphism field")
    Cinv = inverse(C, F)
    projs = []
    for t in range(len(rows)):
        Delta = np.zeros((n, n), dtype=np.int64)
        Delta[t * d : (t + 1) * d, t * d : (t + 1) * d] = np.eye(d, dtype=np.int64)
        projs.append(F.dot(F.dot(Cinv, Delta), C))
    return projs


def primitive_idempotents(A: GroupAlgebra, simples: list[SimpleModule], nil_index: int) -> tuple[list[np.ndarray], list[int]]:
    """Lift primitive idempotents of kG/J to kG by p-power iteration in corners."""
    F = A.F
    Phi = _phi_matrix(simples, A.n)
    widths = [S.dim * S.dim for S in simples]
    offsets = np.cumsum([0] + widths)
    targets, labels = [], []
    for j, S in enumerate(simples):
        for E in _division_basis_projections(S):
            t = np.zeros(Phi.shape[1], dtype=np.int64)
            t[offsets[j] : offsets[j + 1]] = E.reshape(-1)
            targets.append(t)
            labels.append(j)
    pre = solve(Phi, np.array(targets), F)
    m = 0
    while F.p**m < max(nil_index, 1):
        m += 1
    one = A.one()
    f = np.zeros(A.n, dtype=np.int64)
    idems = []
    for k, a in enumerate(pre):
        if k == len(pre) - 1:
            e = F.sub(one, f)
        else:
            c = F.sub(one, f)
            b = A.mul(A.mul(c, a), c)
            e = b
            for _ in range(m):
                e = A.power(e, F.p)
        if not np.array_equal(A.mul(e, e), e):
            raise AssertionError("idempotent lift failed")
        idems.append(e)
        f = F.add(f, e)
    if not np.array_equal(f, one):
        raise AssertionError("idempotents do not sum to 1")
    return idems, labels


def _compute(G: FiniteGroup, F: FiniteField, seed: int) -> CartanData:
    reg = find_simples(G, F, seed)
    simples = reg.simples
    A = GroupAlgebra(G, F)
    J = radical(A, simples)
    powers = radical_powers(A, J)
    nil = len(powers) - 1
    idems, labels = primitive_idempotents(A, simples, nil)
    s = len(simples)
    principal = [idems[labels.index(j)] for j in range(s)]
    # multiplicity of S_j in layer m of P_i is dim(e_i J^m e_j / e_i J^{m+1} e_j) / d_j
    dims = np.zeros((len(powers), s, s), dtype=np.int64)
    Rj = [A.R(e) for e in principal]
    for i, ei in enumerate(principal):
        Li = A.L(ei)
        for m, V in enumerate(powers):
            if len(V) == 0:
                continue
            W = rref(F.dot(V, Li), F)[0]
            if len(W) == 0:
                continue
            for j in range(s):
                dims[m, i, j] = rank(F.dot(W, Rj[j]), F)
    layer = dims[:-1] - dims[1:]
    d = np.array([S.endo_degree for S in simples])
    if np.any(layer % d[None, None, :]):
        raise AssertionError("layer multiplicities are not integral")
    counts = layer // d[None, None, :]
    C = counts.sum(axis=0)
    data = CartanData(G, F, seed, simples, J, [len(V) for V in powers], idems, labels, C, counts)
    _verify(data, A)
    return data


def _verify(data: CartanData, A: GroupAlgebra) -> None:
    F = data.field
    idems = data.idempotents
    for a in range(len(idems)):
        for b in range(len(idems)):
            if a != b and np.any(A.mul(idems[a], idems[b])):
                raise AssertionError("idempotents are not orthogonal")
    total = 0
    Jbasis = data.radical
    for e, j in zip(idems, data.idempotent_simple):
        P = rank(A.L(e), F)
        total += P
        S = data.simples[j]
        # top of P: e kG / e J has the dimension of S_j, and S_j e != 0
        eJ = rank(F.dot(Jbasis, A.L(e)), F) if len(Jbasis) else 0
        if P - eJ != S.dim:
            raise AssertionError("P_i / P_i J is not the expected simple module")
        if not np.any(S.module.algebra_matrix(e)):
            raise AssertionError("idempotent does not act on its simple module")
    if total != A.n:
        raise AssertionError("projective dimensions do not sum to |G|")
    C = data.cartan
    if np.any(C < 0) or np.any(np.diag(C) < 1):
        raise AssertionError("Cartan matrix has invalid entries")
    # c_ij = dim(e_i kG e_j) / d_j, the telescoped total
    for i, ei in enumerate(data.principal):
        for j, ej in enumerate(data.principal):
            v = rank(F.dot(A.L(ei), A.R(ej)), F)
            if v != C[i, j] * data.simples[j].endo_degree:
                raise AssertionError("Cartan entry disagrees with dim e_i kG e_j")


def class_in_G0(M: GModule, data: CartanData, method: str = "idempotent", seed: int = 0) -> np.ndarray:
    """Composition multiplicities of M in the simple basis of ``data``."""
    F = M.field
    s = data.nsimples
    if method == "idempotent":
        out = np.zeros(s, dtype=np.int64)
        for j, e in enumerate(data.principal):
            r = rank(M.algebra_matrix(e), F)
            d = data.simples[j].endo_degree
            if r % d:
                raise AssertionError("non-integral multiplicity")
            out[j] = r // d
        if int(np.dot(out, data.dims)) != M.dim:
            raise AssertionError("multiplicities do not account for the dimension")
        return out
    if method == "chop":
        reg = data.registry()
        counts, reg2 = chop(M, reg, seed)
        if len(reg2.simples) != s:
            raise AssertionError("chopping found a simple missing from the registry")
        out = np.zeros(s, dtype=np.int64)
        for k, c in counts.items():
            out[k] = c
        return out
    raise ValueError(f"unknown method {method!r}")


# ------------------------------------------------------------------ cache
_MEMO: dict[tuple, CartanData] = {}


def cache_dir() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _cache_key(G: FiniteGroup, F: FiniteField, seed: int) -> str:
    mod = "".join(map(str, F.modulus))
    return f"{G.hash[:32]}_p{F.p}_r{F.r}_m{mod}_s{seed}"


def cartan_matrix(G: FiniteGroup, F: FiniteField, seed: int = DEFAULT_SEED, use_cache: bool = True, cache: Path | None = None) -> CartanData:
    key = (G.hash, F.p, F.r, F.modulus, seed)
    if use_cache and key in _MEMO:
        return _MEMO[key]
    cdir = cache if cache is not None else cache_dir()
    data = None
    if use_cache and cdir is not None:
        path = Path(cdir) / (_cache_key(G, F, seed) + ".json")
        if path.exists():
            data = load_cartan(path, G, F)
    if data is None:
        data = _compute(G, F, seed)
        if use_cache and cdir is not None:
            save_cartan(data, Path(cdir) / (_cache_key(G, F, seed) + ".json"))
    if use_cache:
        _MEMO[key] = data
    return data


def clear_memo() -> None:
    _MEMO.clear()


def to_json(data: CartanData) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "group_hash": data.group.hash,
        "p": data.field.p,
        "r": data.field.r,
        "modulus": list(data.field.modulus),
        "seed": data.seed,
        "simples": [
            {
                "dim": S.dim,
                "endo_degree": S.endo_degree,
                "action": [a.tolist() for a in S.module.action],
                "certificate": S.certificate.to_json(),
                "endo_basis": [np.asarray(b).tolist() for b in S.endo_basis],
            }
            for S in data.simples
        ],
        "radical": data.radical.tolist(),
        "layers": list(map(int, data.layers)),
        "idempotents": [e.tolist() for e in data.idempotents],
        "idempotent_simple": list(map(int, data.idempotent_simple)),
        "cartan": data.cartan.tolist(),
        "layer_counts": data.layer_counts.tolist(),
    }


def save_cartan(data: CartanData, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(to_json(data), sort_keys=True, separators=(",", ":"))
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def load_cartan(path: Path, G: FiniteGroup, F: FiniteField) -> CartanData | None:
    d = json.loads(Path(path).read_text())
    if d.get("schema") != SCHEMA_VERSION or d.get("group_hash") != G.hash:
        return None
    if tuple(d["modulus"]) != tuple(F.modulus):
        return None
    simples = []
    for k, s in enumerate(d["simples"]):
        M = GModule(G, F, s["dim"], tuple(np.array(a, dtype=np.int64) for a in s["action"]))
        S = SimpleModule(M, Certificate.from_json(s["certificate"]), int(s["endo_degree"]), k,
                         tuple(np.array(b, dtype=np.int64) for b in s["endo_basis"]))
        simples.append(S)
    n = G.order
    rad = np.array(d["radical"], dtype=np.int64).reshape(-1, n)
    return CartanData(
        G,
        F,
        int(d["seed"]),
        simples,
        rad,
        list(d["layers"]),
        [np.array(e, dtype=np.int64) for e in d["idempotents"]],
        list(d["idempotent_simple"]),
        np.array(d["cartan"], dtype=np.int64),
        np.array(d["layer_counts"], dtype=np.int64),
    )


def cartan_determinant(data: CartanData) -> int:
    return det(data.cartan)

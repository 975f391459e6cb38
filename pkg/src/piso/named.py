"""Named groups and group-spec parsing.

Spec strings look like ``symmetric:4``, ``dihedral:5``, ``psl2:7``, ``m9`` or
products ``cyclic:3xcyclic:2``.  JSON group-spec files use either
``{"named": "symmetric", "n": 4}`` or ``{"degree": n, "generators": [[...], ...]}``.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .field import is_prime
from .perm import FiniteGroup, Permutation, extend_action

__all__ = [
    "cyclic",
    "dihedral",
    "symmetric",
    "alternating",
    "quaternion8",
    "agl1",
    "psl2",
    "direct_product",
    "semidirect_product",
    "m9",
    "named_group",
    "parse_group_spec",
    "load_group_spec",
]


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    if n == 1:
        return FiniteGroup([], degree=1, label="C1")
    return FiniteGroup([Permutation(tuple((i + 1) % n for i in range(n)))], label=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n acting on the n-gon (n >= 3); D_2 = C2 x C2."""
    if n < 2:
        raise ValueError("dihedral group needs n >= 2")
    if n == 2:
        g = direct_product(cyclic(2), cyclic(2))
        g.label = "D2"
        return g
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    ref = Permutation(tuple((-i) % n for i in range(n)))
    return FiniteGroup([rot, ref], label=f"D{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    if n == 1:
        return FiniteGroup([], degree=1, label="S1")
    if n == 2:
        return FiniteGroup([Permutation((1, 0))], label="S2")
    return FiniteGroup(
        [Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, tuple(range(n)))],
        label=f"S{n}",
    )


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("alternating group needs n >= 1")
    if n <= 2:
        return FiniteGroup([], degree=n, label=f"A{n}")
    if n == 3:
        return FiniteGroup([Permutation.from_cycles(3, (0, 1, 2))], label="A3")
    gens = [Permutation.from_cycles(n, (0, 1, 2))]
    if n % 2:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    else:
        gens.append(Permutation.from_cycles(n, tuple(range(1, n))))
    return FiniteGroup(gens, label=f"A{n}")


def quaternion8() -> FiniteGroup:
    """Q8 in its regular representation (elements +-1, +-i, +-j, +-k)."""
    # encode (sign, unit) as 2*unit + sign, units 1,i,j,k -> 0..3
    mult = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def prod(a, b):
        sa, ua = a % 2, a // 2
        sb, ub = b % 2, b // 2
        s, u = mult[(ua, ub)]
        return 2 * u + ((sa + sb + s) % 2)

    gens = []
    for g in (2, 4):  # i, j
        gens.append(Permutation(tuple(prod(x, g) for x in range(8))))
    return FiniteGroup(gens, label="Q8")


def agl1(p: int) -> FiniteGroup:
    """x -> a x + b over F_p on p points."""
    if not is_prime(p):
        raise ValueError("agl1 needs a prime")
    if p == 2:
        return FiniteGroup([Permutation((1, 0))], label="AGL1(2)")
    g = _primitive_root(p)
    t = Permutation(tuple((x + 1) % p for x in range(p)))
    m = Permutation(tuple((g * x) % p for x in range(p)))
    return FiniteGroup([t, m], label=f"AGL1({p})")


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in _prime_divisors(p - 1)):
            return g
    return 1


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def psl2(p: int) -> FiniteGroup:
    """PSL_2(p) on the projective line {0..p-1, inf}, inf encoded as p."""
    if not is_prime(p):
        raise ValueError("psl2 needs a prime")
    inf = p

    def act(fn):
        return Permutation(tuple(fn(x) for x in range(p + 1)))

    def shift(x):
        return inf if x == inf else (x + 1) % p

    def invneg(x):
        if x == inf:
            return 0
        if x == 0:
            return inf
        return (-pow(x, p - 2, p)) % p

    return FiniteGroup([act(shift), act(invneg)], label=f"PSL2({p})")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """A x B acting on the disjoint union of the two point sets."""
    da, db = A.degree, B.degree
    gens = []
    for g in A.generators:
        gens.append(Permutation(g.images + tuple(range(da, da + db))))
    for g in B.generators:
        gens.append(Permutation(tuple(range(da)) + tuple(da + i for i in g.images)))
    return FiniteGroup(gens, degree=da + db, label=f"{A.label}x{B.label}")


def semidirect_product(K: FiniteGroup, H: FiniteGroup, action, label: str = "") -> FiniteGroup:
    """K x| H from automorphisms of K (one permutation of K's indices per generator of H).

    The abstract product on pairs is (k1, h1)(k2, h2) = (k1 phi_{h1}(k2), h1 h2);
    the group is realised by its regular representation on the |K||H| pairs.
    """
    phi = extend_action(K, H, action)
    nk, nh = K.order, H.order
    TK, TH = K.table, H.table

    def pair_index(k, h):
        return k * nh + h

    ks = np.repeat(np.arange(nk), nh)
    hs = np.tile(np.arange(nh), nk)
    gens = []
    # generators of K embedded as (k, e); generators of H as (e, h)
    for kgen in K.gen_ids:
        # right multiplication (k, h) * (kgen, e) = (k phi_h(kgen), h)
        newk = TK[ks, phi[hs, kgen]]
        gens.append(Permutation(tuple(pair_index(newk, hs).tolist())))
    for hgen in H.gen_ids:
        newh = TH[hs, hgen]
        gens.append(Permutation(tuple(pair_index(ks, newh).tolist())))
    G = FiniteGroup(gens, degree=nk * nh, label=label or f"{K.label}:{H.label}")
    if G.order != nk * nh:
        raise AssertionError("semidirect product has the wrong order")
    return G


def _matrix_action_on_vectors(mats, p: int, n: int) -> tuple[FiniteGroup, list[np.ndarray]]:
    """K = (F_p)^n as a permutation group and the automorphisms induced by mats."""
    K = FiniteGroup(
        [
            Permutation(tuple(_vec_index(np.add(_index_vec(x, p, n), e) % p, p) for x in range(p**n)))
            for e in np.eye(n, dtype=np.int64)
        ],
        label=f"C{p}^{n}" if n > 1 else f"C{p}",
    )
    # K's elements as vectors
    # translation by v sends 0 to v, so the vector of element i is the image of point 0
    vecs = np.array([_index_vec(int(K.perms[i][0]), p, n) for i in range(K.order)])
    lookup = {tuple(v): i for i, v in enumerate(vecs.tolist())}
    acts = []
    for M in mats:
        img = (vecs @ np.asarray(M).T) % p  # column-vector action v -> M v
        acts.append(np.array([lookup[tuple(r)] for r in img.tolist()]))
    return K, acts


def _index_vec(x: int, p: int, n: int) -> np.ndarray:
    return np.array([(x // p**i) % p for i in range(n)], dtype=np.int64)


def _vec_index(v, p: int) -> int:
    return int(sum(int(c) * p**i for i, c in enumerate(v)))


def m9() -> FiniteGroup:
    """C3^2 x| Q8 via the free two-dimensional action of Q8 over F_3."""
    Q = quaternion8()
    i_mat = [[0, 2], [1, 0]]
    j_mat = [[1, 1], [1, 2]]
    K, acts = _matrix_action_on_vectors([i_mat, j_mat], 3, 2)
    return semidirect_product(K, Q, acts, label="M9")


def frobenius_data(name: str, p: int):
    """(K, H, action) presentations used for Frobenius certificates."""
    if name == "dihedral":
        K = cyclic(p)
        H = cyclic(2)
        inv = K.inv
        return K, H, [np.asarray(inv)]
    if name == "agl1":
        K = cyclic(p)
        H = cyclic(p - 1)
        g = _primitive_root(p)
        # K element index -> exponent of the generator
        expo = np.array([_cyclic_exponent(K, i) for i in range(K.order)])
        by_exp = np.empty(K.order, dtype=np.int64)
        by_exp[expo] = np.arange(K.order)
        return K, H, [by_exp[(expo * g) % p]]
    if name == "m9":
        Q = quaternion8()
        K, acts = _matrix_action_on_vectors([[[0, 2], [1, 0]], [[1, 1], [1, 2]]], 3, 2)
        return K, Q, acts
    raise ValueError(f"no Frobenius data for {name}")


def _cyclic_exponent(K: FiniteGroup, i: int) -> int:
    # generator is element 1 in BFS order; position of point 0 gives the exponent
    return int(K.perms[i][0])


_NAMED = {
    "cyclic": (cyclic, 1),
    "dihedral": (dihedral, 1),
    "symmetric": (symmetric, 1),
    "alternating": (alternating, 1),
    "quaternion8": (lambda: quaternion8(), 0),
    "q8": (lambda: quaternion8(), 0),
    "agl1": (agl1, 1),
    "psl2": (psl2, 1),
    "m9": (lambda: m9(), 0),
}


def named_group(name: str, *params: int) -> FiniteGroup:
    key = name.lower()
    if key not in _NAMED:
        raise ValueError(f"unknown group family {name!r}")
    fn, arity = _NAMED[key]
    if len(params) != arity:
        raise ValueError(f"{name} takes {arity} parameter(s)")
    G = fn(*params)
    return G


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse ``family:param`` terms joined by ``x`` into a group."""
    spec = spec.strip()
    if not spec:
        raise ValueError("empty group spec")
    path = Path(spec)
    if spec.endswith(".json") and path.exists():
        return load_group_spec(path)
    parts = _split_product(spec)
    groups = []
    for term in parts:
        name, _, arg = term.partition(":")
        params = tuple(int(a) for a in arg.split(",") if a) if arg else ()
        g = named_group(name, *params)
        g.label = _label(name, params)
        groups.append(g)
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H)
    return G


def _split_product(spec: str) -> list[str]:
    out, cur = [], ""
    i = 0
    while i < len(spec):
        ch = spec[i]
        # an 'x' separates terms only when it follows a digit or a parameterless name
        if ch == "x" and cur and (cur[-1].isdigit() or cur.lower() in ("m9", "q8", "quaternion8")):
            out.append(cur)
            cur = ""
        else:
            cur += ch
        i += 1
    out.append(cur)
    return out


def _label(name: str, params) -> str:
    short = {
        "cyclic": "C",
        "dihedral": "D",
        "symmetric": "S",
        "alternating": "A",
    }
    key = name.lower()
    if key in short:
        return f"{short[key]}{params[0]}"
    if key in ("agl1", "psl2"):
        return f"{key.upper()}({params[0]})"
    if key in ("quaternion8", "q8"):
        return "Q8"
    return name.upper()


def load_group_spec(path) -> FiniteGroup:
    data = json.loads(Path(path).read_text())
    return group_from_json(data)


def group_from_json(data: dict) -> FiniteGroup:
    if "named" in data:
        name = data["named"]
        params = data.get("params")
        if params is None:
            params = [v for k, v in data.items() if k not in ("named", "label")]
        if isinstance(params, int):
            params = [params]
        G = named_group(name, *[int(x) for x in params])
        G.label = data.get("label", _label(name, params))
        return G
    if "generators" in data:
        deg = int(data["degree"])
        gens = [Permutation(tuple(g)) for g in data["generators"]]
        return FiniteGroup(gens, degree=deg, label=data.get("label", "custom"))
    raise ValueError("group spec needs 'named' or 'generators'")

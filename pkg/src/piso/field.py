"""Finite fields F_{p^r} and polynomials over them.

Field elements are stored as integer codes ``c = sum_k d_k p^k`` where
``d_0, ..., d_{r-1}`` are the coefficients of the element written as a
polynomial in the generator ``x`` of ``F_p[x]/(modulus)``.  Every operation is
vectorised over numpy integer arrays so matrices and polynomials share one code
path.  For prime fields the codes are just residues mod p.

Polynomials are 1-d code arrays, lowest degree first, with no trailing zeros
(the zero polynomial is the empty array).
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

__all__ = [
    "FiniteField",
    "field_make",
    "is_prime",
    "poly_trim",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_scale",
    "poly_divmod",
    "poly_mod",
    "poly_gcd",
    "poly_monic",
    "poly_powmod",
    "poly_deriv",
    "poly_from_roots",
    "poly_str",
    "is_irreducible",
    "poly_factor",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """The field with ``p**r`` elements.

    ``modulus`` is a monic irreducible polynomial of degree ``r`` over Z/p given
    as a coefficient tuple, lowest degree first.  Use :func:`field_make` to get
    the canonical field with the lexicographically least modulus.
    """

    def __init__(self, p: int, r: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if r < 1:
            raise ValueError("field degree must be positive")
        self.p = p
        self.r = r
        self.q = p**r
        if modulus is None:
            modulus = (0, 1) if r == 1 else _least_irreducible(p, r)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree r")
        self.modulus = modulus
        self._pow = p ** np.arange(r, dtype=np.int64)
        # x^s mod modulus for s < 2r-1, as digit rows
        red = np.zeros((2 * r - 1, r), dtype=np.int64)
        cur = np.zeros(r, dtype=np.int64)
        cur[0] = 1
        for s in range(2 * r - 1):
            red[s] = cur
            lead = cur[-1]
            cur = np.roll(cur, 1)
            cur[0] = 0
            cur = (cur - lead * np.array(modulus[:r], dtype=np.int64)) % p
        self._red = red
        if r > 1:
            self._build_log_tables()
        else:
            inv = np.zeros(p, dtype=np.int64)
            for a in range(1, p):
                inv[a] = pow(a, p - 2, p)
            self._inv = inv

    # ------------------------------------------------------------------ setup
    def _build_log_tables(self) -> None:
        q = self.q
        for g in range(2, q):
            exp = np.zeros(q - 1, dtype=np.int64)
            cur = 1
            seen_one = False
            for k in range(q - 1):
                exp[k] = cur
                cur = self._mul_slow(cur, g)
                if cur == 1 and k < q - 2:
                    seen_one = True
                    break
            if not seen_one:
                break
        else:
            raise AssertionError("no primitive element found")
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self._exp = np.concatenate([exp, exp])
        self._log = log
        self.primitive = g

    def _mul_slow(self, a: int, b: int) -> int:
        da = self.digits(np.array(a))
        db = self.digits(np.array(b))
        prod = np.convolve(da, db) % self.p
        out = (prod @ self._red[: len(prod)]) % self.p
        return int(self.encode(out))

    # --------------------------------------------------------------- encoding
    def digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.r == 1:
            return a[..., None]
        return (a[..., None] // self._pow) % self.p

    def encode(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64)
        if self.r == 1:
            return d[..., 0] % self.p
        return (d % self.p) @ self._pow

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.r})" if self.r > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.r, self.modulus) == (
            other.p,
            other.r,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus))

    # ------------------------------------------------------------- arithmetic
    def add(self, a, b):
        if self.r == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        return self.encode(self.digits(a) + self.digits(b))

    def sub(self, a, b):
        if self.r == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self.encode(self.digits(a) - self.digits(b))

    def neg(self, a):
        if self.r == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self.encode(-self.digits(a))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return (a * b) % self.p
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.r == 1:
            return self._inv[a]
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if self.r == 1:
            return np.vectorize(lambda x: pow(int(x), e, self.p), otypes=[np.int64])(a) if a.ndim else np.int64(pow(int(a), e, self.p))
        out = self._exp[(self._log[a] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def frobenius(self, a):
        """x -> x^p, the generator of Gal(F_q / F_p)."""
        return self.power(a, self.p)

    def dot(self, A, B):
        """Matrix product (numpy ``matmul`` semantics, batched allowed)."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        p = self.p
        if self.r == 1:
            # exact in float64 while inner_dim * (p-1)^2 < 2^53
            out = np.matmul(A.astype(np.float64), B.astype(np.float64))
            return np.fmod(out, p).astype(np.int64)
        dA = self.digits(A).astype(np.float64)
        dB = self.digits(B).astype(np.float64)
        r = self.r
        planes = None
        for k in range(r):
            for l in range(r):
                prod = np.fmod(np.matmul(dA[..., k], dB[..., l]), p)
                if planes is None:
                    planes = np.zeros((2 * r - 1,) + prod.shape)
                planes[k + l] += prod
        planes = np.fmod(planes, p).astype(np.int64)
        digits = np.tensordot(planes, self._red, axes=([0], [0])) % p
        return self.encode(digits)

    def lincomb(self, coeffs, items):
        """sum_i coeffs[i] * items[i] for a stack of arrays ``items``."""
        coeffs = np.asarray(coeffs, dtype=np.int64)
        items = np.asarray(items, dtype=np.int64)
        flat = items.reshape(items.shape[0], -1)
        return self.dot(coeffs[None, :], flat)[0].reshape(items.shape[1:])

    def sum(self, a, axis=None):
        d = self.digits(a)
        if axis is None:
            return self.encode(d.reshape(-1, self.r).sum(axis=0))
        if axis < 0:
            axis += np.ndim(a)
        return self.encode(d.sum(axis=axis))

    def segment_sum(self, values, segments, nseg: int):
        """Add rows of ``values`` into ``nseg`` buckets given by ``segments``."""
        values = np.asarray(values, dtype=np.int64)
        d = self.digits(values)
        out = np.zeros((nseg,) + d.shape[1:], dtype=np.int64)
        np.add.at(out, np.asarray(segments), d)
        return self.encode(out)

    # ---------------------------------------------------------------- helpers
    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random(self, rng: np.random.Generator, shape=None, nonzero: bool = False):
        lo = 1 if nonzero else 0
        return rng.integers(lo, self.q, size=shape, dtype=np.int64)

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def element_str(self, a: int) -> str:
        if self.r == 1:
            return str(int(a))
        d = self.digits(np.array(a))
        terms = []
        for k in range(self.r - 1, -1, -1):
            c = int(d[k])
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "z" if k == 1 else f"z^{k}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) or "0"


def field_make(p: int, r: int = 1) -> FiniteField:
    """The canonical field F_{p^r} (modulus = least monic irreducible)."""
    return _field_cache(p, r)


_FIELDS: dict[tuple[int, int], FiniteField] = {}


def _field_cache(p: int, r: int) -> FiniteField:
    key = (p, r)
    if key not in _FIELDS:
        _FIELDS[key] = FiniteField(p, r)
    return _FIELDS[key]


def _least_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree r over Z/p.

    Coefficients are compared from degree r-1 down to degree 0.
    """
    Fp = _field_cache(p, 1)
    import itertools

    for high_to_low in itertools.product(range(p), repeat=r):
        coeffs = tuple(reversed(high_to_low)) + (1,)
        if coeffs[0] == 0:
            continue
        if is_irreducible(np.array(coeffs, dtype=np.int64), Fp):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------- polynomials
def poly_trim(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.nonzero(f)[0]
    if len(nz) == 0:
        return f[:0]
    return f[: nz[-1] + 1]


def _pad(f, n):
    out = np.zeros(n, dtype=np.int64)
    out[: len(f)] = f
    return out


def poly_add(f, g, F: FiniteField) -> np.ndarray:
    n = max(len(f), len(g))
    return poly_trim(F.add(_pad(f, n), _pad(g, n)))


def poly_sub(f, g, F: FiniteField) -> np.ndarray:
    n = max(len(f), len(g))
    return poly_trim(F.sub(_pad(f, n), _pad(g, n)))


def poly_scale(f, c, F: FiniteField) -> np.ndarray:
    return poly_trim(F.mul(f, c))


def poly_mul(f, g, F: FiniteField) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    if len(f) == 0 or len(g) == 0:
        return np.zeros(0, dtype=np.int64)
    p = F.p
    if F.r == 1:
        return poly_trim(np.convolve(f, g) % p)
    df, dg = F.digits(f), F.digits(g)
    r = F.r
    planes = np.zeros((2 * r - 1, len(f) + len(g) - 1), dtype=np.int64)
    for k in range(r):
        for l in range(r):
            planes[k + l] += np.convolve(df[:, k], dg[:, l])
    planes %= p
    digits = np.tensordot(planes, F._red, axes=([0], [0])) % p
    return poly_trim(F.encode(digits))


def poly_divmod(f, g, F: FiniteField) -> tuple[np.ndarray, np.ndarray]:
    g = poly_trim(g)
    if len(g) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    f = poly_trim(f).copy()
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return np.zeros(0, dtype=np.int64), f
    inv_lead = F.inv(g[-1])
    quot = np.zeros(len(f) - dg, dtype=np.int64)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c == 0:
            continue
        c = F.mul(c, inv_lead)
        quot[i - dg] = c
        f[i - dg : i + 1] = F.sub(f[i - dg : i + 1], F.mul(c, g))
    return poly_trim(quot), poly_trim(f[:dg])


def poly_mod(f, g, F: FiniteField) -> np.ndarray:
    return poly_divmod(f, g, F)[1]


def poly_monic(f, F: FiniteField) -> np.ndarray:
    f = poly_trim(f)
    if len(f) == 0:
        return f
    return F.mul(f, F.inv(f[-1]))


def poly_gcd(f, g, F: FiniteField) -> np.ndarray:
    a, b = poly_trim(f), poly_trim(g)
    while len(b):
        a, b = b, poly_mod(a, b, F)
    return poly_monic(a, F)


def poly_powmod(f, e: int, m, F: FiniteField) -> np.ndarray:
    result = np.array([1], dtype=np.int64)
    base = poly_mod(f, m, F)
    while e > 0:
        if e & 1:
            result = poly_mod(poly_mul(result, base, F), m, F)
        e >>= 1
        if e:
            base = poly_mod(poly_mul(base, base, F), m, F)
    return result


def poly_deriv(f, F: FiniteField) -> np.ndarray:
    f = poly_trim(f)
    if len(f) <= 1:
        return np.zeros(0, dtype=np.int64)
    k = np.arange(1, len(f)) % F.p
    # multiply by the integer k, i.e. by k * 1 in F
    return poly_trim(F.mul(f[1:], k))


def poly_from_roots(roots, F: FiniteField) -> np.ndarray:
    f = np.array([1], dtype=np.int64)
    for a in roots:
        f = poly_mul(f, np.array([int(F.neg(a)), 1]), F)
    return f


def poly_str(f, F: FiniteField, var: str = "x") -> str:
    f = poly_trim(f)
    if len(f) == 0:
        return "0"
    terms = []
    for k in range(len(f) - 1, -1, -1):
        c = int(f[k])
        if c == 0:
            continue
        cs = F.element_str(c)
        if F.r > 1 and "+" in cs:
            cs = f"({cs})"
        if k == 0:
            terms.append(cs)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(terms)


def _frobenius_matrix(f, F: FiniteField) -> np.ndarray:
    """Rows are x^{q*i} mod f, so that h^q mod f = coeffs(h) @ Q."""
    n = len(f) - 1
    Q = np.zeros((n, n), dtype=np.int64)
    xq = poly_powmod(np.array([0, 1]), F.q, f, F)
    row = np.array([1], dtype=np.int64)
    for i in range(n):
        Q[i, : len(row)] = row
        row = poly_mod(poly_mul(row, xq, F), f, F)
    return Q


def _apply_frobenius(h, Q, F: FiniteField) -> np.ndarray:
    n = Q.shape[0]
    return poly_trim(F.dot(_pad(h, n)[None, :], Q)[0])


def is_irreducible(f, F: FiniteField) -> bool:
    """Rabin-style test via gcd(f, x^{q^i} - x) for i <= deg/2."""
    f = poly_monic(f, F)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    Q = _frobenius_matrix(f, F)
    x = np.array([0, 1], dtype=np.int64)
    h = x.copy()
    for _ in range(n // 2):
        h = _apply_frobenius(h, Q, F)
        g = poly_gcd(f, poly_sub(h, x, F), F)
        if len(g) > 1:
            return False
    return True


def _squarefree(f, F: FiniteField) -> list[tuple[np.ndarray, int]]:
    """Square-free decomposition: f = prod g_i^{e_i}, g_i square-free."""
    f = poly_monic(f, F)
    out: list[tuple[np.ndarray, int]] = []
    if len(f) <= 1:
        return out
    d = poly_deriv(f, F)
    if len(d) == 0:
        # f is a p-th power: take p-th roots of coefficients
        root_exp = F.q // F.p
        g = f[:: F.p]
        g = F.power(g, root_exp) if F.r > 1 else g
        return [(h, e * F.p) for h, e in _squarefree(g, F)]
    c = poly_gcd(f, d, F)
    w = poly_divmod(f, c, F)[0]
    i = 1
    while len(w) > 1:
        y = poly_gcd(w, c, F)
        z = poly_divmod(w, y, F)[0]
        if len(z) > 1:
            out.append((poly_monic(z, F), i))
        i += 1
        w = y
        c = poly_divmod(c, y, F)[0]
    if len(c) > 1:
        root_exp = F.q // F.p
        g = c[:: F.p]
        g = F.power(g, root_exp) if F.r > 1 else g
        out.extend((h, e * F.p) for h, e in _squarefree(g, F))
    return out


def _distinct_degree(f, F: FiniteField) -> list[tuple[np.ndarray, int]]:
    out = []
    x = np.array([0, 1], dtype=np.int64)
    h = x.copy()
    rest = f
    Q = _frobenius_matrix(f, F)
    i = 0
    while len(rest) - 1 >= 2 * (i + 1):
        i += 1
        h = _apply_frobenius(h, Q, F)
        g = poly_gcd(rest, poly_sub(h, x, F), F)
        if len(g) > 1:
            out.append((g, i))
            rest = poly_divmod(rest, g, F)[0]
            h = poly_mod(h, rest, F)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _equal_degree(f, d: int, F: FiniteField, rng: np.random.Generator) -> list[np.ndarray]:
    n = len(f) - 1
    if n == d:
        return [f]
    for _ in range(1000):
        h = poly_trim(F.random(rng, n))
        if len(h) <= 1:
            continue
        if F.p == 2:
            # absolute trace to F_2: h + h^2 + ... + h^{2^{rd-1}}
            t = h.copy()
            acc = h.copy()
            for _ in range(F.r * d - 1):
                t = poly_mod(poly_mul(t, t, F), f, F)
                acc = poly_add(acc, t, F)
            cand = acc
        else:
            e = (F.q**d - 1) // 2
            cand = poly_sub(poly_powmod(h, e, f, F), np.array([1]), F)
        g = poly_gcd(f, cand, F)
        if 1 < len(g) < len(f):
            other = poly_divmod(f, g, F)[0]
            return _equal_degree(g, d, F, rng) + _equal_degree(poly_monic(other, F), d, F, rng)
    raise RuntimeError("equal-degree splitting did not converge")


def poly_factor(f, F: FiniteField, seed: int = 0) -> list[tuple[np.ndarray, int]]:
    """Monic irreducible factors of f with multiplicity.

    Square-free decomposition, then distinct-degree, then Cantor-Zassenhaus
    equal-degree splitting driven by a seeded generator.  Output is sorted by
    (degree, coefficient tuple) so it is independent of the random stream.
    """
    f = poly_trim(f)
    if len(f) == 0:
        raise ValueError("cannot factor the zero polynomial")
    rng = np.random.default_rng(seed)
    counts: dict[tuple[int, ...], int] = {}
    for g, e in _squarefree(f, F):
        for h, d in _distinct_degree(g, F):
            for irr in _equal_degree(h, d, F, rng):
                key = tuple(int(c) for c in poly_monic(irr, F))
                counts[key] = counts.get(key, 0) + e
    items = sorted(counts.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))
    return [(np.array(k, dtype=np.int64), e) for k, e in items]

"""Dense exact linear algebra over F_q.

Conventions: vectors are rows and matrices act on the right, matching the
representation-theoretic convention used by the module code (``v -> v @ A``).
``nullspace(A)`` is therefore the left kernel ``{v : v A = 0}`` and ``solve``
finds ``X`` with ``X A = B``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FiniteField, poly_trim, poly_mul, poly_divmod, poly_monic, poly_gcd

__all__ = [
    "InconsistentSystem",
    "rref",
    "rank",
    "nullspace",
    "right_nullspace",
    "solve",
    "inverse",
    "Span",
    "spin",
    "spin_words",
    "char_poly",
    "min_poly",
    "poly_eval_matrix",
    "companion",
    "FqMatrix",
]


class InconsistentSystem(ValueError):
    """Raised when a linear system has no solution (as opposed to only the zero one)."""


def _eliminate(R: np.ndarray, F: FiniteField, row: int, col: int, rows: np.ndarray) -> None:
    if len(rows) == 0:
        return
    c = R[rows, col]
    if F.r == 1:
        R[rows, col:] = (R[rows, col:] - c[:, None] * R[row, col:][None, :]) % F.p
    else:
        R[rows, col:] = F.sub(R[rows, col:], F.mul(c[:, None], R[row, col:][None, :]))


def _normalize_row(R: np.ndarray, F: FiniteField, row: int, col: int) -> None:
    piv = R[row, col]
    if piv != 1:
        R[row, col:] = F.mul(R[row, col:], F.inv(piv))


def rref(A, F: FiniteField) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = R.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(R[row:, col])
        if len(nz) == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        _normalize_row(R, F, row, col)
        others = np.flatnonzero(R[:, col])
        others = others[others != row]
        _eliminate(R, F, row, col, others)
        pivots.append(col)
        row += 1
    return R[:row], pivots


def rank(A, F: FiniteField) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    # echelon form without back-substitution is enough for the rank
    R = np.array(A, dtype=np.int64, copy=True)
    nrows, ncols = R.shape
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(R[row:, col])
        if len(nz) == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        _normalize_row(R, F, row, col)
        below = row + 1 + np.flatnonzero(R[row + 1 :, col])
        _eliminate(R, F, row, col, below)
        row += 1
    return row


def right_nullspace(A, F: FiniteField) -> np.ndarray:
    """Basis (as rows) of {x : A x^T = 0}."""
    A = np.asarray(A, dtype=np.int64)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = rref(A, F)
    free = [c for c in range(ncols) if c not in set(piv)]
    N = np.zeros((len(free), ncols), dtype=np.int64)
    for k, c in enumerate(free):
        N[k, c] = 1
        if piv:
            N[k, piv] = F.neg(R[:, c])
    return N


def nullspace(A, F: FiniteField) -> np.ndarray:
    """Basis (as rows) of the left kernel {v : v A = 0}."""
    A = np.asarray(A, dtype=np.int64)
    return right_nullspace(A.T, F)


def solve(A, B, F: FiniteField) -> np.ndarray:
    """One solution X of X A = B (rows of B in the row space of A)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    vec = B.ndim == 1
    if vec:
        B = B[None, :]
    m, n = A.shape
    # [A^T | B^T] elimination: solve A^T X^T = B^T
    aug = np.concatenate([A.T, B.T], axis=1)
    R, piv = rref(aug, F)
    if any(c >= m for c in piv):
        raise InconsistentSystem("right-hand side not in the row space")
    X = np.zeros((B.shape[0], m), dtype=np.int64)
    for i, c in enumerate(piv):
        X[:, c] = R[i, m:]
    return X[0] if vec else X


def inverse(A, F: FiniteField) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1), F)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


class Span:
    """Incrementally maintained row space in reduced echelon form."""

    def __init__(self, F: FiniteField, ncols: int):
        self.F = F
        self.ncols = ncols
        self.basis = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, V) -> np.ndarray:
        """Reduce rows of V modulo the current span (result has zeros at pivots)."""
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        if not self.pivots:
            return V.copy()
        coeff = V[:, self.pivots]
        return self.F.sub(V, self.F.dot(coeff, self.basis))

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def add(self, V) -> np.ndarray:
        """Add rows of V; return the newly independent vectors (reduced)."""
        W = self.reduce(V)
        W = W[np.any(W != 0, axis=1)]
        if len(W) == 0:
            return W
        R, piv = rref(W, self.F)
        if not len(R):
            return R
        # back-substitute old basis against the new pivots
        old = self.basis
        if len(old):
            c = old[:, piv]
            old = self.F.sub(old, self.F.dot(c, R))
        allrows = np.concatenate([old, R], axis=0)
        allpiv = self.pivots + piv
        order = np.argsort(allpiv, kind="stable")
        self.basis = allrows[order]
        self.pivots = [allpiv[i] for i in order]
        return R


def spin(vectors, gens, F: FiniteField, limit: int | None = None) -> np.ndarray:
    """Smallest subspace containing ``vectors`` and closed under right action of ``gens``.

    Returns the RREF basis.  Stops early once the dimension exceeds ``limit``.
    """
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = gens[0].shape[0] if gens else np.asarray(vectors).shape[-1]
    S = Span(F, n)
    new = S.add(vectors)
    while len(new):
        if limit is not None and S.dim > limit:
            break
        images = np.concatenate([F.dot(new, g) for g in gens], axis=0) if gens else new[:0]
        new = S.add(images)
    return S.basis


def spin_words(v, gens, F: FiniteField) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Standard basis of the submodule generated by a single vector v.

    Returns (B, words) where row k of B is ``B[parent] @ gens[gen]`` for
    ``words[k] = (parent, gen)`` and row 0 is v itself (parent -1).  The rows
    are linearly independent; replaying the same words on another module
    gives the image of the standard basis under a homomorphism.
    """
    v = np.asarray(v, dtype=np.int64)
    n = len(v)
    S = Span(F, n)
    S.add(v)
    rows = [v]
    words: list[tuple[int, int]] = [(-1, -1)]
    k = 0
    while k < len(rows):
        for gi, g in enumerate(gens):
            w = F.dot(rows[k][None, :], g)[0]
            if len(S.add(w)):
                rows.append(w)
                words.append((k, gi))
        k += 1
    return np.array(rows, dtype=np.int64).reshape(len(rows), n), words


def replay_words(v, words, gens, F: FiniteField) -> np.ndarray:
    rows = []
    for parent, gi in words:
        if parent < 0:
            rows.append(np.asarray(v, dtype=np.int64))
        else:
            rows.append(F.dot(rows[parent][None, :], gens[gi])[0])
    return np.array(rows, dtype=np.int64)


def replay_words_batch(V, words, gens, F: FiniteField) -> np.ndarray:
    """Replay on a stack of start vectors at once: returns shape (len(words), m, n)."""
    V = np.asarray(V, dtype=np.int64)
    rows = []
    for parent, gi in words:
        rows.append(V if parent < 0 else F.dot(rows[parent], gens[gi]))
    return np.stack(rows)


def poly_eval_matrix(f, A, F: FiniteField) -> np.ndarray:
    """f(A) by Horner's rule."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    f = poly_trim(f)
    out = np.zeros((n, n), dtype=np.int64)
    I = np.eye(n, dtype=np.int64)
    for c in f[::-1]:
        out = F.dot(out, A)
        if c:
            out = F.add(out, F.mul(c, I))
    return out


def companion(f, F: FiniteField) -> np.ndarray:
    """Companion matrix of the monic polynomial f, rows x^i -> x^{i+1}."""
    f = poly_monic(f, F)
    n = len(f) - 1
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        C[i, i + 1] = 1
    C[n - 1] = F.neg(f[:n])
    return C


def _hessenberg(A, F: FiniteField) -> np.ndarray:
    H = np.array(A, dtype=np.int64, copy=True)
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = np.flatnonzero(H[m:, m - 1])
        if len(nz) == 0:
            continue
        i = m + nz[0]
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        piv_inv = F.inv(H[m, m - 1])
        rows = m + 1 + np.flatnonzero(H[m + 1 :, m - 1])
        if len(rows) == 0:
            continue
        u = F.mul(H[rows, m - 1], piv_inv)
        # row_i -= u_i row_m ; then col_m += sum u_i col_i (similarity)
        H[rows] = F.sub(H[rows], F.mul(u[:, None], H[m][None, :]))
        H[:, m] = F.add(H[:, m], F.dot(H[:, rows], u[:, None])[:, 0])
    return H


def char_poly(A, F: FiniteField) -> np.ndarray:
    """Characteristic polynomial det(xI - A), lowest degree first."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if n == 0:
        return np.array([1], dtype=np.int64)
    H = _hessenberg(A, F)
    # P[m] = char poly of the leading m x m block, padded to length n+1
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    for m in range(1, n + 1):
        # (x - h_mm) p_{m-1}
        prev = P[m - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = prev[:-1]
        cur = F.sub(cur, F.mul(H[m - 1, m - 1], prev))
        if m >= 2:
            # prod_{j=i+1}^{m-1} h_{j, j-1} for i = m-2 ... 0 (0-based rows)
            sub = H[np.arange(1, m), np.arange(0, m - 1)]  # h_{j,j-1}, j=1..m-1
            coeffs = np.zeros(m - 1, dtype=np.int64)
            t = 1
            for i in range(m - 2, -1, -1):
                t = int(F.mul(t, sub[i]))  # includes h_{i+1, i}
                if t == 0:
                    break
                coeffs[i] = F.mul(H[i, m - 1], t)
            if np.any(coeffs):
                corr = F.dot(coeffs[None, :], P[: m - 1])[0]
                cur = F.sub(cur, corr)
        P[m] = cur
    return poly_trim(P[n])


def min_poly(A, F: FiniteField) -> np.ndarray:
    """Minimal polynomial as the lcm of local minimal polynomials of a Krylov basis."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if n == 0:
        return np.array([1], dtype=np.int64)
    result = np.array([1], dtype=np.int64)
    covered = Span(F, n)
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        if covered.contains(e):
            continue
        # Krylov sequence of e until dependence
        seq = Span(F, n)
        vecs = [e]
        seq.add(e)
        while True:
            w = F.dot(vecs[-1][None, :], A)[0]
            if seq.contains(w):
                break
            vecs.append(w)
            seq.add(w)
        K = np.array(vecs)
        c = solve(K, w, F)  # w = sum c_j A^j e
        local = np.concatenate([F.neg(c), [1]]).astype(np.int64)
        g = poly_gcd(result, local, F)
        result = poly_monic(poly_mul(result, poly_divmod(local, g, F)[0], F), F)
        covered.add(K)
        if covered.dim == n:
            break
    return result


@dataclass(frozen=True)
class FqMatrix:
    """Thin immutable wrapper pairing an int64 code array with its field."""

    field: FiniteField
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ValueError("FqMatrix needs a 2-d array")
        if np.any((arr < 0) | (arr >= self.field.q)):
            raise ValueError("entries out of range for the field")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @classmethod
    def identity(cls, F: FiniteField, n: int) -> "FqMatrix":
        return cls(F, np.eye(n, dtype=np.int64))

    def __add__(self, other: "FqMatrix") -> "FqMatrix":
        return FqMatrix(self.field, self.field.add(self.entries, other.entries))

    def __sub__(self, other: "FqMatrix") -> "FqMatrix":
        return FqMatrix(self.field, self.field.sub(self.entries, other.entries))

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        return FqMatrix(self.field, self.field.dot(self.entries, other.entries))

    def scale(self, c: int) -> "FqMatrix":
        return FqMatrix(self.field, self.field.mul(self.entries, c))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FqMatrix)
            and self.field == other.field
            and self.entries.shape == other.entries.shape
            and bool(np.all(self.entries == other.entries))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.entries.shape, self.entries.tobytes()))

    def rank(self) -> int:
        return rank(self.entries, self.field)

    def rref(self) -> tuple["FqMatrix", list[int]]:
        R, piv = rref(self.entries, self.field)
        return FqMatrix(self.field, R.reshape(-1, self.cols)), piv

    def nullspace(self) -> "FqMatrix":
        return FqMatrix(self.field, nullspace(self.entries, self.field).reshape(-1, self.rows))

    def solve(self, B: "FqMatrix") -> "FqMatrix":
        return FqMatrix(self.field, solve(self.entries, B.entries, self.field))

    def inverse(self) -> "FqMatrix":
        return FqMatrix(self.field, inverse(self.entries, self.field))

    def char_poly(self) -> np.ndarray:
        return char_poly(self.entries, self.field)

    def min_poly(self) -> np.ndarray:
        return min_poly(self.entries, self.field)

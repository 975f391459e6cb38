"""Integer Smith normal form, cokernels and finitely generated abelian groups.

All arithmetic uses Python integers (object arrays would be slower and no
clearer), so intermediate growth never overflows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

__all__ = [
    "SmithForm",
    "smith_normal_form",
    "FgAbelianGroup",
    "cokernel",
    "cokernel_with_projection",
    "quotient_presentation",
    "Presentation",
    "induced_map",
]


def _to_lists(A) -> list[list[int]]:
    if isinstance(A, np.ndarray):
        return [[int(x) for x in row] for row in A.tolist()]
    return [[int(x) for x in row] for row in A]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V = D with D diagonal (d_1 | d_2 | ...), U and V unimodular."""

    diagonal: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    shape: tuple[int, int]

    def D(self) -> list[list[int]]:
        m, n = self.shape
        out = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.diagonal):
            out[i][i] = d
        return out


def smith_normal_form(A) -> SmithForm:
    rows = _to_lists(A)
    m = len(rows)
    n = len(rows[0]) if m else (np.asarray(A).shape[1] if isinstance(A, np.ndarray) and np.asarray(A).ndim == 2 else 0)
    M = [r[:] for r in rows]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c row_src
        if c:
            M[dst] = [a + c * b for a, b in zip(M[dst], M[src])]
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        if c:
            for row in M:
                row[dst] += c * row[src]
            for row in V:
                row[dst] += c * row[src]

    diag: list[int] = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = M[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            piv = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // piv
                    add_row(i, t, -q)
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // piv
                    add_col(j, t, -q)
                    if M[t][j]:
                        done = False
            if done:
                # divisibility of the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if M[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move a smaller remainder into the pivot position
            best = None
            for i in range(t, m):
                x = M[i][t]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, "r")
            for j in range(t, n):
                x = M[t][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), j, "c")
            if best[2] == "r":
                swap_rows(t, best[1])
            else:
                swap_cols(t, best[1])
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        diag.append(M[t][t])
        t += 1
    return SmithForm(
        diagonal=tuple(diag),
        U=tuple(tuple(r) for r in U),
        V=tuple(tuple(r) for r in V),
        shape=(m, n),
    )


@dataclass(frozen=True, order=True)
class FgAbelianGroup:
    """Z^free_rank + sum Z/d_i in invariant-factor form (d_i >= 2, d_i | d_{i+1})."""

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tors)
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for d in tors:
            if d < 2:
                raise ValueError("invariant factors must be at least 2")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def from_orders(cls, free_rank: int, orders) -> "FgAbelianGroup":
        """Canonicalise any list of cyclic orders (0 means a free summand)."""
        free = free_rank
        primes: dict[int, list[int]] = {}
        for d in orders:
            d = abs(int(d))
            if d == 0:
                free += 1
                continue
            if d == 1:
                continue
            x = d
            q = 2
            while q * q <= x:
                if x % q == 0:
                    e = 1
                    while x % q == 0:
                        x //= q
                        e *= q
                    primes.setdefault(q, []).append(e)
                q += 1
            if x > 1:
                primes.setdefault(x, []).append(x)
        length = max((len(v) for v in primes.values()), default=0)
        inv = [1] * length
        for q, powers in primes.items():
            powers = sorted(powers)
            for k, e in enumerate(powers):
                inv[length - len(powers) + k] *= e
        return cls(free, tuple(d for d in inv if d > 1))

    @classmethod
    def trivial(cls) -> "FgAbelianGroup":
        return cls(0, ())

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.from_orders(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return self.direct_sum(other)

    def power(self, k: int) -> "FgAbelianGroup":
        return FgAbelianGroup.from_orders(self.free_rank * k, self.torsion * k)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        run: list[tuple[int, int]] = []
        for d in self.torsion:
            if run and run[-1][0] == d:
                run[-1] = (d, run[-1][1] + 1)
            else:
                run.append((d, 1))
        for d, k in run:
            parts.append(f"(Z/{d})^{k}" if k > 1 else f"Z/{d}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, d: dict) -> "FgAbelianGroup":
        return cls(int(d["free_rank"]), tuple(int(x) for x in d["torsion"]))


@dataclass(frozen=True)
class Presentation:
    """Cokernel Z^n / colspan(A) with an explicit projection.

    ``project`` maps Z^n onto the canonical coordinates of ``group``: the
    first len(torsion) coordinates live in Z/d_i, the remaining ones in Z.
    ``lift`` sends canonical generators back to Z^n.
    """

    group: FgAbelianGroup
    project: tuple[tuple[int, ...], ...]
    lift: tuple[tuple[int, ...], ...]
    ngens: int

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.group.torsion + (0,) * self.group.free_rank

    def reduce(self, vec) -> tuple[int, ...]:
        """Canonical coordinates of the image of an integer vector."""
        out = []
        for row, d in zip(self.project, self.moduli):
            s = sum(a * int(b) for a, b in zip(row, vec))
            out.append(s % d if d else s)
        return tuple(out)

    def is_zero(self, vec) -> bool:
        return not any(self.reduce(vec))


def cokernel_with_projection(A, nrows: int | None = None) -> Presentation:
    """Z^m / colspan(A) for an m x k integer matrix A."""
    rows = _to_lists(A)
    m = len(rows) if nrows is None else nrows
    if not rows or not rows[0]:
        rows = [[] for _ in range(m)]
        k = 0
    else:
        k = len(rows[0])
    if k == 0:
        ident = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
        return Presentation(FgAbelianGroup(m, ()), ident, ident, m)
    sf = smith_normal_form(rows)
    diag = list(sf.diagonal) + [0] * (m - len(sf.diagonal))
    # U A V = D, so Z^m / colspan(A) ~ Z^m / colspan(D) via x -> U x
    keep_t = [i for i, d in enumerate(diag) if d > 1]
    keep_f = [i for i, d in enumerate(diag) if d == 0]
    U = [list(r) for r in sf.U]
    Uinv = _int_inverse(U)
    project = tuple(tuple(U[i]) for i in keep_t + keep_f)
    lift = tuple(tuple(Uinv[r][i] for r in range(m)) for i in keep_t + keep_f)
    grp = FgAbelianGroup(len(keep_f), tuple(diag[i] for i in keep_t))
    return Presentation(grp, project, lift, m)


def cokernel(A, nrows: int | None = None) -> FgAbelianGroup:
    return cokernel_with_projection(A, nrows).group


def quotient_presentation(ngens: int, relations) -> FgAbelianGroup:
    """Abelian group on ``ngens`` generators modulo relation columns."""
    return cokernel(relations, nrows=ngens)


def induced_map(src: Presentation, tgt: Presentation, M) -> tuple[tuple[int, ...], ...]:
    """Matrix of the map on canonical coordinates induced by Z^n -> Z^m (matrix M).

    Column j is the image of the j-th canonical generator of ``src``.
    Raises ValueError if M does not carry relations of src into those of tgt.
    """
    M = _to_lists(M)
    cols = []
    for j in range(len(src.moduli)):
        lifted = [src.lift[j][i] for i in range(src.ngens)]
        image = [sum(M[r][c] * lifted[c] for c in range(src.ngens)) for r in range(tgt.ngens)]
        red = tgt.reduce(image)
        d = src.moduli[j]
        if d and any(((d * x) % e if e else d * x) for x, e in zip(red, tgt.moduli)):
            raise ValueError("integer map does not descend to the cokernels")
        cols.append(red)
    return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(len(tgt.moduli)))


def _int_inverse(U: list[list[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix via fraction-free elimination."""
    from fractions import Fraction

    n = len(U)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    out = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return out


def det(A) -> int:
    """Integer determinant (Bareiss)."""
    M = _to_lists(A)
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def matmul(A, B) -> list[list[int]]:
    A = _to_lists(A)
    B = _to_lists(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


__all__ += ["det", "matmul", "gcd"]

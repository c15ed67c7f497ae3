"""Exact integer and rational dense linear algebra.

Everything here works with Python's arbitrary-precision ``int`` and
``fractions.Fraction``; there is no floating point and therefore no
rounding or overflow anywhere.  Matrices are small (rank at most a few
dozen in this library), so the implementations favour clarity and
exactness over asymptotics: Smith normal form by extended-gcd row and
column operations, determinants by fraction-free Bareiss elimination,
signatures by symmetric block reduction over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError("vector length mismatch")
    return sum(a * b for a, b in zip(u, v))


def sign_normalize(v: Sequence[int]) -> tuple[int, ...]:
    """Flip the sign of v, if needed, so its first nonzero entry is positive."""
    for a in v:
        if a != 0:
            return tuple(v) if a > 0 else tuple(-x for x in v)
    return tuple(v)


def coord_key(v: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Canonical ordering key for integer vectors: L1 norm, then lexicographic."""
    return (sum(abs(a) for a in v), tuple(v))


class IntMatrix:
    """Immutable dense matrix with arbitrary-precision integer entries."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols does not match row length")
            ncols = width
        elif ncols is None:
            ncols = 0
        for r in rows:
            for e in r:
                if not isinstance(e, int) or isinstance(e, bool):
                    raise TypeError(f"integer entry expected, got {e!r}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def block_diag(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[0] * m for _ in range(n)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.nrows):
                out[i0 + i][j0 : j0 + b.ncols] = list(b.rows[i])
            i0 += b.nrows
            j0 += b.ncols
        return cls(out, ncols=m)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("matrix dimension mismatch")
        bt = other.transpose().rows
        return IntMatrix(
            [[dot(r, c) for c in bt] for r in self.rows], ncols=other.ncols
        )

    def mul_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise ValueError("matrix dimension mismatch")
        return tuple(dot(r, v) for r in self.rows)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * e for e in r] for r in self.rows], ncols=self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )

    def max_abs(self) -> int:
        return max((abs(e) for r in self.rows for e in r), default=0)


class RatMatrix:
    """Immutable dense matrix with exact rational entries.

    Entries are ``fractions.Fraction`` values, which are always kept in
    lowest terms with a positive denominator.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(Fraction(e) for e in r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            ncols = width
        elif ncols is None:
            ncols = 0
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_int(cls, m: IntMatrix) -> "RatMatrix":
        return cls(m.rows, ncols=m.ncols)

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.rows[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"RatMatrix({[[str(e) for e in r] for r in self.rows]})"

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (D, U, V) with U*M*V = D.

    U and V are unimodular.  D is diagonal with nonnegative entries in a
    divisibility chain d1 | d2 | ..., zero entries trailing.  D is canonical;
    U and V are merely some valid choice (for a matrix that is already in
    Smith form they are identities).
    """
    r, c = M.nrows, M.ncols
    d = [list(row) for row in M.rows]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def row_combine(i, k, a, b, p, q):
        # rows i, k of d and u become (a*row_i + b*row_k, p*row_i + q*row_k)
        for mat in (d, u):
            ri, rk = mat[i], mat[k]
            mat[i] = [a * x + b * y for x, y in zip(ri, rk)]
            mat[k] = [p * x + q * y for x, y in zip(ri, rk)]

    def col_combine(j, k, a, b, p, q):
        for mat in (d, v):
            for row in mat:
                x, y = row[j], row[k]
                row[j] = a * x + b * y
                row[k] = p * x + q * y

    def clear_pivot(t):
        # Eliminate column and row t outside the pivot, keeping U*M*V = D.
        # When the pivot divides an entry, a plain elimination is used (it
        # leaves the pivot row and column untouched); otherwise a 2x2 gcd
        # transform strictly shrinks |pivot|, so the loop terminates.
        while True:
            for i in range(t + 1, r):
                b = d[i][t]
                if b == 0:
                    continue
                a = d[t][t]
                if b % a == 0:
                    q = b // a
                    for mat in (d, u):
                        mat[i] = [x - q * y for x, y in zip(mat[i], mat[t])]
                else:
                    g, x, y = xgcd(a, b)
                    row_combine(t, i, x, y, -(b // g), a // g)
            for j in range(t + 1, c):
                b = d[t][j]
                if b == 0:
                    continue
                a = d[t][t]
                if b % a == 0:
                    q = b // a
                    for mat in (d, v):
                        for row in mat:
                            row[j] -= q * row[t]
                else:
                    g, x, y = xgcd(a, b)
                    col_combine(t, j, x, y, -(b // g), a // g)
            if all(d[t][j] == 0 for j in range(t + 1, c)) and all(
                d[i][t] == 0 for i in range(t + 1, r)
            ):
                return

    rank = 0
    for t in range(min(r, c)):
        # pivot: smallest nonzero absolute value in the remaining block,
        # first in row-major order among ties
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            d[t], d[bi] = d[bi], d[t]
            u[t], u[bi] = u[bi], u[t]
        if bj != t:
            for mat in (d, v):
                for row in mat:
                    row[t], row[bj] = row[bj], row[t]
        clear_pivot(t)
        rank = t + 1

    # divisibility chain on the diagonal
    while True:
        bad = None
        for t in range(rank - 1):
            if d[t + 1][t + 1] % d[t][t] != 0:
                bad = t
                break
        if bad is None:
            break
        t = bad
        # pull the offending entry into column t and re-clear
        for mat in (d, v):
            for row in mat:
                row[t] += row[t + 1]
        clear_pivot(t)

    for t in range(rank):
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return (
        IntMatrix(d, ncols=c),
        IntMatrix(u, ncols=r),
        IntMatrix(v, ncols=c),
    )


def determinant(M: IntMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    if not M.is_square():
        raise ValueError("determinant requires a square matrix")
    n = M.nrows
    if n == 0:
        return 1
    a = [list(row) for row in M.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_basis(M: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the saturated integer kernel {x : M x = 0}.

    The returned vectors span the full lattice of integer solutions (the
    kernel of an integer matrix is automatically saturated).  Each basis
    vector is sign-normalized so its first nonzero entry is positive.  An
    empty list means the kernel is trivial.
    """
    D, _, V = smith_normal_form(M)
    rank = sum(
        1 for t in range(min(D.nrows, D.ncols)) if D.rows[t][t] != 0
    )
    cols = []
    for j in range(rank, M.ncols):
        cols.append(sign_normalize(tuple(V.rows[i][j] for i in range(M.ncols))))
    return cols


def saturate_rows(M: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the saturation of the row span of M inside Z^ncols.

    The saturation is the set of integer vectors lying in the rational row
    span; it is computed as the kernel of the kernel.
    """
    ker = kernel_basis(M)
    if not ker:
        return [
            tuple(1 if i == j else 0 for j in range(M.ncols))
            for i in range(M.ncols)
        ]
    return kernel_basis(IntMatrix(ker, ncols=M.ncols))


def ldlt_signature(G: RatMatrix | IntMatrix) -> tuple[int, int, int]:
    """Inertia (positives, negatives, zeros) of a symmetric matrix.

    Exact symmetric reduction: the first nonzero diagonal entry is used as
    a pivot after a symmetric swap; if the whole remaining diagonal is zero
    but the block is not, an off-diagonal entry yields a hyperbolic 2x2
    block contributing one positive and one negative count.
    """
    if isinstance(G, IntMatrix):
        G = RatMatrix.from_int(G)
    if not G.is_symmetric():
        raise ValueError("ldlt_signature requires a symmetric matrix")
    n = G.nrows
    a = [[Fraction(e) for e in row] for row in G.rows]
    pos = neg = zero = 0
    t = 0

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    while t < n:
        piv = next((k for k in range(t, n) if a[k][k] != 0), None)
        if piv is not None:
            if piv != t:
                swap(t, piv)
            p = a[t][t]
            if p > 0:
                pos += 1
            else:
                neg += 1
            for i in range(t + 1, n):
                f = a[i][t] / p
                if f == 0:
                    continue
                for j in range(t + 1, n):
                    a[i][j] -= f * a[t][j]
            for i in range(t + 1, n):
                a[i][t] = Fraction(0)
                a[t][i] = Fraction(0)
            t += 1
            continue
        off = None
        for i in range(t, n):
            for j in range(i + 1, n):
                if a[i][j] != 0:
                    off = (i, j)
                    break
            if off:
                break
        if off is None:
            zero += n - t
            break
        i, j = off
        if i != t:
            swap(t, i)
            # the nonzero entry may have moved; locate it again in row t
            j = next(k for k in range(t + 1, n) if a[t][k] != 0)
        if j != t + 1:
            swap(t + 1, j)
        b = a[t][t + 1]
        # block [[0, b], [b, 0]] contributes signature (1, 1)
        pos += 1
        neg += 1
        for i in range(t + 2, n):
            c0 = a[i][t + 1] / b
            c1 = a[i][t] / b
            if c0 == 0 and c1 == 0:
                continue
            for j in range(t + 2, n):
                a[i][j] -= c0 * a[t][j] + c1 * a[t + 1][j]
        for i in range(t + 2, n):
            a[i][t] = a[i][t + 1] = Fraction(0)
            a[t][i] = a[t + 1][i] = Fraction(0)
        t += 2
    return (pos, neg, zero)


def inverse_unimodular(M: IntMatrix) -> IntMatrix:
    """Integer inverse of a square matrix with determinant +-1 (adjugate)."""
    if not M.is_square():
        raise ValueError("inverse requires a square matrix")
    n = M.nrows
    det = determinant(M)
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")

    def minor(i, j):
        return IntMatrix(
            [
                [M.rows[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ],
            ncols=n - 1,
        )

    adj = [
        [((-1) ** (i + j)) * determinant(minor(j, i)) for j in range(n)]
        for i in range(n)
    ]
    if det == -1:
        adj = [[-e for e in row] for row in adj]
    return IntMatrix(adj, ncols=n)

"""Matrices over exact rings and the division-free kernels built on them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DomainError, RingMismatch
from .poly import Polynomial
from .rings import Ring, RingValue

PLUS, MINUS = "plus", "minus"


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix of ring payloads. Square unless built for a differential."""

    ring: Ring
    nrows: int
    ncols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError("entry count does not match the shape")

    @classmethod
    def of(cls, ring: Ring, rows, ncols=None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DomainError("ragged matrix literal")
        return cls(ring, len(rows), ncols, tuple(ring.coerce(x) for r in rows for x in r))

    @classmethod
    def from_payload_rows(cls, ring: Ring, rows, ncols=None) -> "Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls(ring, nrows, ncols, (ring.zero,) * (nrows * ncols))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        return cls.scalar(ring, n, ring.one)

    @classmethod
    def scalar(cls, ring: Ring, n: int, c) -> "Matrix":
        return cls(ring, n, n, tuple(c if i == j else ring.zero for i in range(n) for j in range(n)))

    @property
    def size(self) -> int:
        self.require_square()
        return self.nrows

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def require_square(self):
        if self.nrows != self.ncols:
            raise DomainError(f"expected a square matrix, got {self.nrows}x{self.ncols}")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.ncols + j]

    def value(self, i, j) -> RingValue:
        return RingValue(self.ring, self[i, j])

    def rows(self) -> list[list]:
        c = self.ncols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.nrows)]

    def _same_ring(self, other: "Matrix"):
        if self.ring != other.ring:
            raise RingMismatch(f"matrices over {self.ring} and {other.ring}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_ring(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DomainError("shape mismatch in matrix sum")
        add = self.ring.add
        return Matrix(self.ring, self.nrows, self.ncols, tuple(add(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix(self.ring, self.nrows, self.ncols, tuple(neg(a) for a in self.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_ring(other)
        if self.ncols != other.nrows:
            raise DomainError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        R = self.ring
        add, mul, zero = R.add, R.mul, R.zero
        a, b = self.rows(), other.rows()
        cols = list(zip(*b)) if b else [()] * other.ncols
        out = []
        for row in a:
            for col in cols:
                s = zero
                for x, y in zip(row, col):
                    s = add(s, mul(x, y))
                out.append(s)
        if not cols:
            out = []
        return Matrix(R, self.nrows, other.ncols, tuple(out))

    __mul__ = __matmul__

    def scale(self, c) -> "Matrix":
        mul = self.ring.mul
        return Matrix(self.ring, self.nrows, self.ncols, tuple(mul(c, a) for a in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix.from_payload_rows(self.ring, [list(c) for c in zip(*self.rows())], self.nrows) \
            if self.nrows else Matrix(self.ring, self.ncols, 0, ())

    def submatrix(self, rows, cols) -> "Matrix":
        return Matrix(self.ring, len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(a) for a in self.entries)

    def __str__(self):
        fmt = self.ring.fmt
        return "[" + ", ".join("[" + ", ".join(fmt(x) for x in row) + "]" for row in self.rows()) + "]"


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def direct_sum(*blocks: Matrix) -> Matrix:
    """Block-diagonal sum."""
    if not blocks:
        raise ValueError("direct_sum needs at least one block")
    R = blocks[0].ring
    for b in blocks:
        if b.ring != R:
            raise RingMismatch("direct sum of matrices over different rings")
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = [[R.zero] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows()):
            out[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix.from_payload_rows(R, out, m)


def block_matrix(blocks) -> Matrix:
    """Assemble a matrix from a 2-D grid of blocks with compatible shapes."""
    R = blocks[0][0].ring
    rows = []
    for brow in blocks:
        h = brow[0].nrows
        if any(b.nrows != h for b in brow):
            raise DomainError("block heights differ within a block row")
        parts = [b.rows() for b in brow]
        for i in range(h):
            rows.append([x for p in parts for x in p[i]])
    ncols = sum(b.ncols for b in blocks[0])
    return Matrix.from_payload_rows(R, rows, ncols)


def block_triangular(alpha: Matrix, beta: Matrix, gamma: Matrix) -> Matrix:
    """[[alpha, gamma], [0, beta]]: alpha is the sub-object, beta the quotient."""
    zero = Matrix.zeros(alpha.ring, beta.nrows, alpha.ncols)
    return block_matrix([[alpha, gamma], [zero, beta]])


def kron(M: Matrix, N: Matrix) -> Matrix:
    if M.ring != N.ring:
        raise RingMismatch("Kronecker product of matrices over different rings")
    R = M.ring
    mul = R.mul
    rows = []
    for i1 in range(M.nrows):
        for i2 in range(N.nrows):
            rows.append([mul(M[i1, j1], N[i2, j2]) for j1 in range(M.ncols) for j2 in range(N.ncols)])
    return Matrix(R, M.nrows * N.nrows, M.ncols * N.ncols, tuple(x for r in rows for x in r))


def matrix_power(M: Matrix, n: int) -> Matrix:
    M.require_square()
    if n < 0:
        raise DomainError("negative matrix power")
    result = Matrix.identity(M.ring, M.nrows)
    base = M
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


# ---------------------------------------------------------------------------
# division-free determinant forms
# ---------------------------------------------------------------------------

def berkowitz(M: Matrix) -> list:
    """Coefficients [1, c1, ..., cn] of det(x*Id - M) = x^n + c1 x^(n-1) + ... + cn.

    Uses only ring additions and multiplications, so it is valid over any
    commutative ring, zero divisors included.
    """
    M.require_square()
    R = M.ring
    add, mul, neg, zero = R.add, R.mul, R.neg, R.zero
    A = M.rows()
    vect = [R.one]
    for k in range(M.nrows):
        row = A[k][:k]
        v = [A[i][k] for i in range(k)]
        col = [R.one, neg(A[k][k])]
        for _ in range(k):
            s = zero
            for x, y in zip(row, v):
                s = add(s, mul(x, y))
            col.append(neg(s))
            nv = []
            for i in range(k):
                s = zero
                for x, y in zip(A[i][:k], v):
                    s = add(s, mul(x, y))
                nv.append(s)
            v = nv
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(max(0, i - k - 1), min(i, k) + 1):
                s = add(s, mul(col[i - j], vect[j]))
            new.append(s)
        vect = new
    return vect


def det(M: Matrix):
    """Determinant payload, division-free."""
    c = berkowitz(M)
    n = M.nrows
    return c[n] if n % 2 == 0 else M.ring.neg(c[n])


def char_det_form(M: Matrix, sign: str = PLUS) -> Polynomial:
    """det(Id + M r) for sign="plus", det(Id - M r) for sign="minus"."""
    c = berkowitz(M)
    if sign == MINUS:
        return Polynomial(M.ring, tuple(c))
    if sign != PLUS:
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    neg = M.ring.neg
    return Polynomial(M.ring, tuple(x if i % 2 == 0 else neg(x) for i, x in enumerate(c)))


def companion_of(f: Polynomial, sign: str = PLUS) -> Matrix:
    """A deg(f) x deg(f) matrix C with char_det_form(C, sign) == f.

    f must have constant term 1.  In the minus convention C is the usual
    companion matrix of the monic reversal r^d f(1/r).
    """
    R = f.ring
    if f.constant_term != R.one:
        raise DomainError(f"companion_of needs constant term 1, got {f}")
    d = f.degree
    rows = [[R.zero] * d for _ in range(d)]
    for i in range(d - 1):
        rows[i + 1][i] = R.one
    for i in range(d):
        rows[i][d - 1] = R.neg(f.coeffs[d - i])
    C = Matrix.from_payload_rows(R, rows, d)
    return C if sign == MINUS else -C


def compound(M: Matrix, k: int) -> Matrix:
    """k-th compound matrix: k x k minors on lexicographically sorted k-subsets."""
    n = M.size
    if not 0 <= k <= n:
        raise DomainError(f"compound order {k} out of range 0..{n}")
    subsets = list(combinations(range(n), k))
    entries = tuple(det(M.submatrix(I, J)) for I in subsets for J in subsets)
    return Matrix(M.ring, len(subsets), len(subsets), entries)


def trace(M: Matrix):
    R = M.ring
    s = R.zero
    for i in range(M.size):
        s = R.add(s, M[i, i])
    return s


def change_ring(M: Matrix, ring: Ring, fn) -> Matrix:
    return Matrix(ring, M.nrows, M.ncols, tuple(fn(x) for x in M.entries))

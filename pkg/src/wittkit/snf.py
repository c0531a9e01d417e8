"""Smith normal form of integer matrices, with the unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .matrix import Matrix
from .rings import Integers


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V == D, with D diagonal, d_1 | d_2 | ... and all d_i > 0."""

    diagonal: tuple
    U: tuple
    V: tuple
    D: tuple
    shape: tuple

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def factors(self) -> tuple:
        """All min(m, n) diagonal entries, zeros included."""
        return self.diagonal + (0,) * (min(self.shape) - len(self.diagonal))

    def cokernel(self) -> "AbelianGroup":
        """Z^m modulo the column span, for an m x n input."""
        return AbelianGroup(self.shape[0] - self.rank, tuple(d for d in self.diagonal if d != 1))


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B, ncols=None):
    """Plain integer matrix product; pass ncols when B has no rows."""
    if ncols is None:
        ncols = len(B[0]) if B else 0
    return [[sum(row[k] * B[k][j] for k in range(len(B))) for j in range(ncols)] for row in A]


def _integer_rows(A):
    if isinstance(A, Matrix):
        if not isinstance(A.ring, Integers):
            raise DomainError(f"Smith normal form needs an integer matrix, got one over {A.ring}")
        return A.rows(), A.ncols
    rows = [list(r) for r in A]
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise DomainError(f"Smith normal form needs integer entries, got {x!r}")
    return rows, None


def smith_normal_form(A) -> SmithForm:
    """Accepts a Matrix over Z or a list of integer rows (any shape)."""
    A, ncols = _integer_rows(A)
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for M in (A, U):
            rs, rd = M[src], M[dst]
            for k in range(len(rd)):
                rd[k] += q * rs[k]

    def add_col(dst, src, q):
        for M in (A, V):
            for row in M:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            p = A[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            for M in (A, U):
                M[t] = [-x for x in M[t]]
        t += 1
    diag = tuple(A[i][i] for i in range(t))
    return SmithForm(diag, tuple(map(tuple, U)), tuple(map(tuple, V)), tuple(map(tuple, A)), (m, n))


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank (+) sum of Z/d for d in torsion."""

    free_rank: int
    torsion: tuple

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def cokernel(relations, ngens: int) -> AbelianGroup:
    """Z^ngens modulo the row span of `relations`."""
    rows = [list(r) for r in relations if any(r)]
    if not rows:
        return AbelianGroup(ngens, ())
    diag = smith_normal_form(rows).diagonal
    return AbelianGroup(ngens - len(diag), tuple(d for d in diag if d != 1))


def integer_rank(rows) -> int:
    rows = [list(r) for r in rows if any(r)]
    return smith_normal_form(rows).rank if rows else 0

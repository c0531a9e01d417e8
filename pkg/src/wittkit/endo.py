"""Classes in K0 of endomorphisms of finite free modules.

A pair (A^n, alpha) has class (n, det(Id + alpha r)) in Z (+) W0(A).  The Witt
part of an `EndoClass` is always stored in this det(Id + alpha r) ("plus")
coordinate, so the tensor product of classes is `witt_mul_plus`.

Operations are formal differences of square matrices over Z[t]; applying one
to (A^m, alpha) substitutes t -> alpha entrywise, turning each k x k matrix
over Z[t] into a km x km matrix over A.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, RingMismatch
from .matrix import (
    PLUS,
    Matrix,
    block_matrix,
    char_det_form,
    kron,
    matrix_power,
)
from .rings import ZZ, PolyRing, Ring
from .witt import (
    WittFraction,
    frobenius_plus,
    verschiebung,
    witt_add,
    witt_eq,
    witt_mul_plus,
    witt_neg,
    witt_scale,
)

ZT = PolyRing(ZZ, "t")


@dataclass(frozen=True)
class EndoMatrix:
    """The pair (A^n, alpha) for a square matrix alpha."""

    matrix: Matrix

    def __post_init__(self):
        self.matrix.require_square()

    @classmethod
    def of(cls, ring: Ring, rows) -> "EndoMatrix":
        return cls(Matrix.of(ring, rows))

    @property
    def ring(self) -> Ring:
        return self.matrix.ring

    @property
    def size(self) -> int:
        return self.matrix.nrows

    def __str__(self):
        return str(self.matrix)


@dataclass(frozen=True, eq=False)
class EndoClass:
    rank: int
    witt: WittFraction

    @classmethod
    def zero(cls, ring: Ring) -> "EndoClass":
        return cls(0, WittFraction.zero(ring))

    @classmethod
    def unit(cls, ring: Ring) -> "EndoClass":
        """[A, id] = (1, 1 + r)."""
        return cls(1, WittFraction.make(ring, (ring.one, ring.one)))

    @property
    def ring(self) -> Ring:
        return self.witt.ring

    def __eq__(self, other):
        if not isinstance(other, EndoClass):
            return NotImplemented
        return self.rank == other.rank and witt_eq(self.witt, other.witt)

    __hash__ = None

    def __add__(self, other):
        return dsum(self, other)

    def __neg__(self):
        return class_neg(self)

    def __sub__(self, other):
        return dsum(self, class_neg(other))

    def __mul__(self, other):
        return tensor(self, other)

    def __str__(self):
        return f"rank {self.rank}, witt {self.witt}"

    def __repr__(self):
        return f"EndoClass({self})"


def _as_matrix(e) -> Matrix:
    m = e.matrix if isinstance(e, EndoMatrix) else e
    m.require_square()
    return m


def class_of(e) -> EndoClass:
    """(size, det(Id + alpha r))."""
    m = _as_matrix(e)
    return EndoClass(m.nrows, WittFraction.from_polys(char_det_form(m, PLUS)))


def dsum(x: EndoClass, y: EndoClass) -> EndoClass:
    return EndoClass(x.rank + y.rank, witt_add(x.witt, y.witt))


def class_neg(x: EndoClass) -> EndoClass:
    return EndoClass(-x.rank, witt_neg(x.witt))


def class_scale(n: int, x: EndoClass) -> EndoClass:
    return EndoClass(n * x.rank, witt_scale(n, x.witt))


def tensor(x: EndoClass, y: EndoClass) -> EndoClass:
    return EndoClass(x.rank * y.rank, witt_mul_plus(x.witt, y.witt))


def frobenius_class(n: int, e) -> EndoClass:
    """[(M, alpha)] -> [(M, alpha^n)]."""
    if n < 1:
        raise DomainError("Frobenius index must be positive")
    return class_of(matrix_power(_as_matrix(e), n))


def frobenius_on_class(n: int, x: EndoClass) -> EndoClass:
    """frobenius_class read off the class alone: (rank, det(Id + alpha^n r))."""
    return EndoClass(x.rank, frobenius_plus(n, x.witt))


def verschiebung_matrix(n: int, e) -> EndoMatrix:
    """n x n block matrix with identities below the diagonal and (-1)^(n+1) alpha top right."""
    if n < 1:
        raise DomainError("Verschiebung index must be positive")
    alpha = _as_matrix(e)
    if n == 1:
        return EndoMatrix(alpha)
    R, m = alpha.ring, alpha.nrows
    zero, ident = Matrix.zeros(R, m), Matrix.identity(R, m)
    corner = alpha if n % 2 == 1 else -alpha
    grid = [[zero] * n for _ in range(n)]
    grid[0][n - 1] = corner
    for i in range(1, n):
        grid[i][i - 1] = ident
    if m == 0:
        return EndoMatrix(Matrix.zeros(R, 0))
    return EndoMatrix(block_matrix(grid))


def verschiebung_on_class(n: int, x: EndoClass) -> EndoClass:
    """Class of verschiebung_matrix: (n rank, det(Id + alpha r^n))."""
    return EndoClass(n * x.rank, verschiebung(n, x.witt))


def split_class(x: EndoClass) -> tuple[EndoClass, EndoClass]:
    """Split off the image of [M, alpha] -> [M, 0] from the Witt part."""
    return EndoClass(x.rank, WittFraction.zero(x.ring)), EndoClass(0, x.witt)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperationElement:
    """A formal difference of endomorphisms of free Z[t]-modules."""

    pos: tuple = ()
    neg: tuple = field(default=())

    def __post_init__(self):
        pos = tuple(EndoMatrix(m) if isinstance(m, Matrix) else m for m in self.pos)
        neg = tuple(EndoMatrix(m) if isinstance(m, Matrix) else m for m in self.neg)
        for e in pos + neg:
            if e.ring != ZT:
                raise DomainError(f"operation matrices must be over Z[t], got {e.ring}")
        object.__setattr__(self, "pos", pos)
        object.__setattr__(self, "neg", neg)

    def __add__(self, other: "OperationElement") -> "OperationElement":
        return OperationElement(self.pos + other.pos, self.neg + other.neg)

    def __neg__(self) -> "OperationElement":
        return OperationElement(self.neg, self.pos)

    def __sub__(self, other):
        return self + (-other)

    def compose(self, inner: "OperationElement") -> "OperationElement":
        """self after inner: substitute inner's matrices for t in self's."""
        pos, neg = [], []
        for outer_list, sign in ((self.pos, 1), (self.neg, -1)):
            for beta in outer_list:
                for inner_list, s2 in ((inner.pos, 1), (inner.neg, -1)):
                    for gamma in inner_list:
                        (pos if sign * s2 > 0 else neg).append(EndoMatrix(substitute(beta.matrix, gamma.matrix)))
        return OperationElement(tuple(pos), tuple(neg))


def compose_ops(outer: OperationElement, inner: OperationElement) -> OperationElement:
    return outer.compose(inner)


def universal_element() -> EndoMatrix:
    """(Z[t], multiplication by t)."""
    return EndoMatrix(Matrix(ZT, 1, 1, (ZT.variable("t"),)))


def identity_op() -> OperationElement:
    return OperationElement((universal_element(),))


def frobenius_op(n: int) -> OperationElement:
    return OperationElement((EndoMatrix(matrix_power(universal_element().matrix, n)),))


def verschiebung_op(n: int) -> OperationElement:
    return OperationElement((verschiebung_matrix(n, universal_element()),))


def multiple_op(k: int) -> OperationElement:
    """k-fold sum of the identity operation."""
    one = (universal_element(),)
    return OperationElement(one * k) if k >= 0 else OperationElement((), one * -k)


def substitute(beta: Matrix, alpha: Matrix) -> Matrix:
    """Replace t by alpha in every entry of beta (a matrix over Z[t])."""
    if beta.ring != ZT:
        raise DomainError(f"operation matrices must be over Z[t], got {beta.ring}")
    alpha.require_square()
    R, m = alpha.ring, alpha.nrows
    top = max((len(c) for c in beta.entries), default=0)
    powers = [Matrix.identity(R, m)]
    for _ in range(1, top):
        powers.append(powers[-1] @ alpha)
    zero = Matrix.zeros(R, m)
    if beta.nrows == 0 or m == 0:
        return Matrix.zeros(R, beta.nrows * m)

    def entry(poly):
        acc = zero
        for k, c in enumerate(poly):
            if c:
                acc = acc + powers[k].scale(R.from_int(c))
        return acc

    grid = [[entry(beta[i, j]) for j in range(beta.ncols)] for i in range(beta.nrows)]
    return block_matrix(grid)


def apply_operation(op: OperationElement, target) -> EndoClass:
    alpha = _as_matrix(target)
    total = EndoClass.zero(alpha.ring)
    for e in op.pos:
        total = dsum(total, class_of(substitute(e.matrix, alpha)))
    for e in op.neg:
        total = dsum(total, class_neg(class_of(substitute(e.matrix, alpha))))
    return total


def apply_to_matrix(op: OperationElement, target) -> tuple[list[Matrix], list[Matrix]]:
    alpha = _as_matrix(target)
    return ([substitute(e.matrix, alpha) for e in op.pos], [substitute(e.matrix, alpha) for e in op.neg])


def operation_class(op: OperationElement) -> EndoClass:
    """The element of Z (+) W0(Z[t]) representing op: op applied to the universal element."""
    return apply_operation(op, universal_element())


def tensor_matrices(a, b) -> EndoMatrix:
    ma, mb = _as_matrix(a), _as_matrix(b)
    if ma.ring != mb.ring:
        raise RingMismatch("tensor of endomorphisms over different rings")
    return EndoMatrix(kron(ma, mb))

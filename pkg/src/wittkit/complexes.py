"""Bounded cochain complexes of finite free modules with a commuting endomorphism."""

from __future__ import annotations

from dataclasses import dataclass

from .endo import EndoClass, EndoMatrix, class_neg, class_of, dsum
from .errors import DomainError, InvalidComplex, RingMismatch
from .matrix import Matrix, direct_sum
from .rings import Ring


@dataclass(frozen=True)
class Violation:
    degree: int
    reason: str

    def __str__(self):
        return f"degree {self.degree}: {self.reason}"


@dataclass(frozen=True)
class FreeComplexEndo:
    """Levels lowest .. lowest+len(ranks)-1.

    differentials[i] maps level i to level i+1, so it has shape
    ranks[i+1] x ranks[i]; endos[i] is square of size ranks[i].
    """

    ring: Ring
    lowest: int
    ranks: tuple
    differentials: tuple
    endos: tuple

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "endos", tuple(e.matrix if isinstance(e, EndoMatrix) else e for e in self.endos))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        n = len(self.ranks)
        if len(self.endos) != n or len(self.differentials) != max(n - 1, 0):
            raise InvalidComplex("need one endomorphism per level and one differential between neighbours")
        for i, (r, e) in enumerate(zip(self.ranks, self.endos)):
            if r < 0:
                raise InvalidComplex(f"negative rank at degree {self.lowest + i}")
            if e.ring != self.ring:
                raise RingMismatch(f"endomorphism at degree {self.lowest + i} is over {e.ring}, not {self.ring}")
            if (e.nrows, e.ncols) != (r, r):
                raise InvalidComplex(f"endomorphism at degree {self.lowest + i} is not {r}x{r}")
        for i, d in enumerate(self.differentials):
            if d.ring != self.ring:
                raise RingMismatch(f"differential at degree {self.lowest + i} is over {d.ring}, not {self.ring}")
            if (d.nrows, d.ncols) != (self.ranks[i + 1], self.ranks[i]):
                raise InvalidComplex(
                    f"differential at degree {self.lowest + i} should be {self.ranks[i + 1]}x{self.ranks[i]}"
                )

    @classmethod
    def empty(cls, ring: Ring, lowest: int = 0) -> "FreeComplexEndo":
        return cls(ring, lowest, (), (), ())

    @classmethod
    def single(cls, e, degree: int = 0) -> "FreeComplexEndo":
        m = e.matrix if isinstance(e, EndoMatrix) else e
        return cls(m.ring, degree, (m.nrows,), (), (m,))

    @property
    def highest(self) -> int:
        return self.lowest + len(self.ranks) - 1

    def degrees(self) -> range:
        return range(self.lowest, self.lowest + len(self.ranks))

    def level(self, k: int) -> tuple[int, Matrix]:
        """(rank, endo) at degree k; zero outside the stored range."""
        i = k - self.lowest
        if 0 <= i < len(self.ranks):
            return self.ranks[i], self.endos[i]
        return 0, Matrix.zeros(self.ring, 0)

    def differential(self, k: int) -> Matrix:
        """d_k from degree k to k+1."""
        i = k - self.lowest
        if 0 <= i < len(self.differentials):
            return self.differentials[i]
        return Matrix.zeros(self.ring, self.level(k + 1)[0], self.level(k)[0])

    def restrict(self, lo: int, hi: int) -> "FreeComplexEndo":
        """Same complex stored on degrees lo..hi (which must cover the nonzero levels)."""
        for k in self.degrees():
            if not lo <= k <= hi and self.level(k)[0]:
                raise DomainError(f"degree {k} has nonzero rank outside {lo}..{hi}")
        ks = range(lo, hi + 1)
        return FreeComplexEndo(
            self.ring,
            lo,
            tuple(self.level(k)[0] for k in ks),
            tuple(self.differential(k) for k in ks[:-1]),
            tuple(self.level(k)[1] for k in ks),
        )


def validate(c: FreeComplexEndo) -> Violation | None:
    """None when valid, else the first failing degree."""
    for k in c.degrees():
        if k + 1 > c.highest:
            break
        d = c.differential(k)
        if k + 2 <= c.highest and not (c.differential(k + 1) @ d).is_zero():
            return Violation(k, "d_{k+1} d_k is not zero")
        if not ((d @ c.level(k)[1]) - (c.level(k + 1)[1] @ d)).is_zero():
            return Violation(k, "d_k does not commute with the endomorphisms")
    return None


def euler_class(c: FreeComplexEndo) -> EndoClass:
    """Alternating sum of the levelwise classes, sign (-1)^degree."""
    bad = validate(c)
    if bad is not None:
        raise InvalidComplex(str(bad))
    total = EndoClass.zero(c.ring)
    for k in c.degrees():
        cls = class_of(c.level(k)[1])
        total = dsum(total, cls if k % 2 == 0 else class_neg(cls))
    return total


def shift(c: FreeComplexEndo, k: int = 1) -> FreeComplexEndo:
    """c[k]: the level at degree i moves to degree i + k; differentials pick up (-1)^k."""
    diffs = c.differentials if k % 2 == 0 else tuple(-d for d in c.differentials)
    return FreeComplexEndo(c.ring, c.lowest + k, c.ranks, diffs, c.endos)


def complex_sum(c1: FreeComplexEndo, c2: FreeComplexEndo) -> FreeComplexEndo:
    """Degreewise direct sum."""
    if c1.ring != c2.ring:
        raise RingMismatch("direct sum of complexes over different rings")
    if not c1.ranks:
        return c2
    if not c2.ranks:
        return c1
    lo, hi = min(c1.lowest, c2.lowest), max(c1.highest, c2.highest)
    ks = range(lo, hi + 1)
    ranks = tuple(c1.level(k)[0] + c2.level(k)[0] for k in ks)
    endos = tuple(direct_sum(c1.level(k)[1], c2.level(k)[1]) for k in ks)
    diffs = tuple(direct_sum(c1.differential(k), c2.differential(k)) for k in ks[:-1])
    return FreeComplexEndo(c1.ring, lo, ranks, diffs, endos)


def cone_of_identity(e, k: int) -> FreeComplexEndo:
    """e at degrees k and k+1 joined by the identity."""
    m = e.matrix if isinstance(e, EndoMatrix) else e
    m.require_square()
    n = m.nrows
    return FreeComplexEndo(m.ring, k, (n, n), (Matrix.identity(m.ring, n),), (m, m))


def add_contractible(c: FreeComplexEndo, e, k: int) -> FreeComplexEndo:
    return complex_sum(c, cone_of_identity(e, k))

"""Seeded random generators for Witt vectors, matrices, complexes and expressions."""

from __future__ import annotations

import random

from .complexes import FreeComplexEndo, cone_of_identity, complex_sum
from .expr import Binary, MatrixAtom, PolyAtom, Unary
from .matrix import Matrix
from .poly import Polynomial
from .rings import Ring, p_trim
from .witt import WittFraction


def random_series_poly(R: Ring, rng: random.Random, height=5, max_degree=3, tdeg=1) -> tuple:
    """1 + c_1 r + ... + c_d r^d with d uniform in 0..max_degree."""
    d = rng.randint(0, max_degree)
    return p_trim(R, [R.one] + [R.random(rng, height, tdeg) for _ in range(d)])


def random_witt(R: Ring, rng: random.Random, height=5, max_degree=3, tdeg=1) -> WittFraction:
    num = random_series_poly(R, rng, height, max_degree, tdeg)
    den = random_series_poly(R, rng, height, max_degree, tdeg)
    return WittFraction.make(R, num, den)


def random_effective(R: Ring, rng: random.Random, height=5, max_degree=3, tdeg=1) -> WittFraction:
    return WittFraction.make(R, random_series_poly(R, rng, height, max_degree, tdeg))


def random_matrix(R: Ring, rng: random.Random, n: int, m: int | None = None, height=5) -> Matrix:
    m = n if m is None else m
    return Matrix(R, n, m, tuple(R.random(rng, height, 1) for _ in range(n * m)))


def random_unimodular(R: Ring, rng: random.Random, n: int, steps=None) -> tuple[Matrix, Matrix]:
    """(g, g^-1) built from elementary row operations, so it works over any ring."""
    g = [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]
    gi = [row[:] for row in g]
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = R.random(rng, 3, 0)
        # g <- E g with E = Id + c e_ij ; g^-1 <- g^-1 E^-1
        g[i] = [R.add(a, R.mul(c, b)) for a, b in zip(g[i], g[j])]
        for row in gi:
            row[j] = R.sub(row[j], R.mul(c, row[i]))
    if n == 1 and R.is_unit(R.from_int(-1)) and rng.random() < 0.5:
        g = [[R.from_int(-1)]]
        gi = [[R.from_int(-1)]]
    return Matrix.from_payload_rows(R, g, n), Matrix.from_payload_rows(R, gi, n)


def random_complex(R: Ring, rng: random.Random, max_pieces=3, max_size=2, height=3) -> FreeComplexEndo:
    """Degreewise sum of random pieces, then conjugated level by level.

    Pieces are single levels, cones of identities, and two-term complexes
    A --p(alpha)--> A carrying alpha at both ends (p(alpha) commutes with alpha).
    """
    c = FreeComplexEndo.empty(R)
    for _ in range(rng.randint(1, max_pieces)):
        n = rng.randint(1, max_size)
        alpha = random_matrix(R, rng, n, height=height)
        k = rng.randint(-2, 2)
        kind = rng.randrange(3)
        if kind == 0:
            piece = FreeComplexEndo.single(alpha, k)
        elif kind == 1:
            piece = cone_of_identity(alpha, k)
        else:
            coeffs = [R.random(rng, height, 0) for _ in range(rng.randint(1, 3))]
            d = Matrix.zeros(R, n)
            power = Matrix.identity(R, n)
            for cf in coeffs:
                d = d + power.scale(cf)
                power = power @ alpha
            piece = FreeComplexEndo(R, k, (n, n), (d,), (alpha, alpha))
        c = complex_sum(c, piece)
    return conjugate_levels(c, rng)


def conjugate_levels(c: FreeComplexEndo, rng: random.Random) -> FreeComplexEndo:
    R = c.ring
    gs = [random_unimodular(R, rng, n) for n in c.ranks]
    endos = tuple(g @ a @ gi for (g, gi), a in zip(gs, c.endos))
    diffs = tuple(gs[i + 1][0] @ d @ gs[i][1] for i, d in enumerate(c.differentials))
    return FreeComplexEndo(R, c.lowest, c.ranks, diffs, endos)


def random_expression(R: Ring, rng: random.Random, depth=3):
    """A random syntax tree; it need not evaluate successfully."""
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.15:
            n = rng.randint(1, 2)
            return MatrixAtom(random_matrix(R, rng, n, height=4))
        num = Polynomial(R, random_series_poly(R, rng, 6, 3))
        den = Polynomial(R, random_series_poly(R, rng, 6, 2)) if rng.random() < 0.4 else None
        return PolyAtom(num, den)
    kind = rng.randrange(3)
    if kind == 0:
        return Unary(rng.choice(("neg", "invol")), random_expression(R, rng, depth - 1))
    if kind == 1:
        op = rng.choice(("frob", "ver", "lambda", "ghost", "truncate"))
        return Unary(op, random_expression(R, rng, depth - 1), rng.randint(0, 6))
    op = rng.choice(("add", "sub", "mul", "mulplus", "eq"))
    return Binary(op, random_expression(R, rng, depth - 1), random_expression(R, rng, depth - 1))


def random_block_triangular(R: Ring, rng: random.Random, height=5):
    a, b = rng.randint(1, 2), rng.randint(1, 2)
    alpha = random_matrix(R, rng, a, height=height)
    beta = random_matrix(R, rng, b, height=height)
    gamma = random_matrix(R, rng, a, b, height=height)
    return alpha, beta, gamma


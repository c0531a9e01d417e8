import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittkit.errors import DomainError, RingMismatch
from wittkit.matrix import (
    MINUS,
    PLUS,
    Matrix,
    berkowitz,
    block_triangular,
    change_ring,
    char_det_form,
    companion_of,
    compound,
    det,
    direct_sum,
    kron,
    matrix_power,
    trace,
)
from wittkit.poly import Polynomial
from wittkit.rings import ZZ, IntegersMod, PrimeField, p_add, p_mul, p_neg, p_trim, parse_ring


def _sign(perm):
    s = 1
    for i, j in itertools.combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            s = -s
    return s


def leibniz_char(M, sign):
    """det(Id + s M r) by permutation expansion with polynomial entries in r."""
    R = M.ring
    n = M.nrows
    s = R.one if sign == PLUS else R.neg(R.one)

    def entry(i, j):
        e = [R.one if i == j else R.zero, R.mul(s, M[i, j])]
        return p_trim(R, e)

    total = ()
    for perm in itertools.permutations(range(n)):
        term = (R.one,)
        for i, j in enumerate(perm):
            term = p_mul(R, term, entry(i, j))
        total = p_add(R, total, term if _sign(perm) > 0 else p_neg(R, term))
    return Polynomial(R, total if n else (R.one,))


RINGS = ["Z", "GF(7)", "Z/6", "Z[t]", "GF(5)[t]"]


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(RINGS), st.integers(0, 4), st.randoms(use_true_random=False), st.sampled_from([PLUS, MINUS]))
def test_char_det_form_matches_leibniz(sel, n, rnd, sign):
    R = parse_ring(sel)
    M = Matrix(R, n, n, tuple(R.random(rnd, 4, 1) for _ in range(n * n)))
    assert char_det_form(M, sign) == leibniz_char(M, sign)


def test_zmod6_agrees_with_integer_reduction():
    rng = random.Random(3)
    Z6 = IntegersMod(6)
    for _ in range(100):
        n = rng.randint(1, 4)
        M = Matrix(ZZ, n, n, tuple(rng.randint(-9, 9) for _ in range(n * n)))
        reduced = change_ring(M, Z6, lambda x: x % 6)
        want = tuple(c % 6 for c in char_det_form(M).coeffs)
        assert char_det_form(reduced).coeffs == p_trim(Z6, want)


def test_plus_minus_bridge():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(1, 4)
        M = Matrix(ZZ, n, n, tuple(rng.randint(-5, 5) for _ in range(n * n)))
        assert char_det_form(M, PLUS) == char_det_form(-M, MINUS)


@pytest.mark.parametrize("sel", ["Z", "GF(7)"])
@pytest.mark.parametrize("sign", [PLUS, MINUS])
def test_companion_round_trip(sel, sign):
    R = parse_ring(sel)
    rng = random.Random(5)
    for _ in range(60):
        d = rng.randint(0, 6)
        f = Polynomial(R, p_trim(R, [R.one] + [R.from_int(rng.randint(-5, 5)) for _ in range(d)]))
        C = companion_of(f, sign)
        assert C.nrows == f.degree
        assert char_det_form(C, sign) == f


def test_companion_quadratic_examples():
    rng = random.Random(6)
    for _ in range(100):
        c1, c2 = rng.randint(-5, 5), rng.randint(-5, 5)
        f = Polynomial.of(ZZ, [1, c1, c2])
        assert char_det_form(companion_of(f, PLUS), PLUS) == f


def test_companion_line_and_constant():
    assert companion_of(Polynomial.of(ZZ, [1, -7]), MINUS) == Matrix.of(ZZ, [[7]])
    assert companion_of(Polynomial.of(ZZ, [1]), PLUS).nrows == 0
    with pytest.raises(DomainError):
        companion_of(Polynomial.of(ZZ, [2, 1]))


def test_char_det_form_examples():
    assert char_det_form(Matrix.of(ZZ, [[5]])) == Polynomial.of(ZZ, [1, 5])
    assert char_det_form(Matrix.of(ZZ, [[5]]), MINUS) == Polynomial.of(ZZ, [1, -5])
    empty = Matrix.zeros(ZZ, 0)
    assert char_det_form(empty, PLUS) == Polynomial.of(ZZ, [1])
    assert char_det_form(empty, MINUS) == Polynomial.of(ZZ, [1])
    assert char_det_form(Matrix.of(ZZ, [[0, 1], [0, 0]])) == Polynomial.of(ZZ, [1])
    assert char_det_form(Matrix.of(ZZ, [[0, -1], [1, 0]])) == Polynomial.of(ZZ, [1, 0, 1])


def test_block_forms_are_multiplicative():
    rng = random.Random(7)
    for _ in range(60):
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        A = Matrix(ZZ, a, a, tuple(rng.randint(-4, 4) for _ in range(a * a)))
        B = Matrix(ZZ, b, b, tuple(rng.randint(-4, 4) for _ in range(b * b)))
        G = Matrix(ZZ, a, b, tuple(rng.randint(-4, 4) for _ in range(a * b)))
        want = Polynomial(ZZ, p_mul(ZZ, char_det_form(A).coeffs, char_det_form(B).coeffs))
        assert char_det_form(direct_sum(A, B)) == want
        assert char_det_form(block_triangular(A, B, G)) == want


def test_det_and_trace():
    M = Matrix.of(ZZ, [[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert det(M) == 18
    assert trace(M) == 9
    assert berkowitz(M)[0] == 1
    assert det(Matrix.zeros(ZZ, 0)) == 1


def test_kron_examples():
    assert kron(Matrix.of(ZZ, [[3]]), Matrix.of(ZZ, [[4]])) == Matrix.of(ZZ, [[12]])
    assert kron(Matrix.of(ZZ, [[0, 1], [1, 0]]), Matrix.of(ZZ, [[2]])) == Matrix.of(ZZ, [[0, 2], [2, 0]])
    assert kron(Matrix.of(ZZ, [[1, 2], [3, 4]]), Matrix.zeros(ZZ, 0)).nrows == 0
    with pytest.raises(RingMismatch):
        kron(Matrix.of(ZZ, [[1]]), Matrix.of(PrimeField(5), [[1]]))


def test_compound_examples():
    D = Matrix.of(ZZ, [[2, 0], [0, 3]])
    assert compound(D, 0) == Matrix.identity(ZZ, 1)
    assert compound(D, 1) == D
    assert compound(D, 2) == Matrix.of(ZZ, [[6]])
    M = Matrix.of(ZZ, [[1, 2, 0], [3, 1, 1], [0, 2, 5]])
    assert compound(M, 3) == Matrix.of(ZZ, [[det(M)]])
    with pytest.raises(DomainError):
        compound(M, 4)


def test_matrix_power():
    S = Matrix.of(ZZ, [[0, 1], [1, 0]])
    assert matrix_power(S, 2) == Matrix.identity(ZZ, 2)
    assert matrix_power(S, 0) == Matrix.identity(ZZ, 2)
    J = Matrix.of(ZZ, [[1, 1], [0, 1]])
    assert matrix_power(J, 10) == Matrix.of(ZZ, [[1, 10], [0, 1]])
    with pytest.raises(DomainError):
        matrix_power(S, -1)


def test_ragged_literal_rejected():
    with pytest.raises(DomainError):
        Matrix.of(ZZ, [[1, 2], [3]])

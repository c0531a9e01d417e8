import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittkit.errors import DomainError, NonIntegralGhost, NotEffective, RingMismatch
from wittkit.matrix import MINUS, companion_of, matrix_power, trace
from wittkit.rings import ZZ, PrimeField, parse_ring
from wittkit.sampling import random_witt
from wittkit.witt import (
    GhostVector,
    WittFraction,
    frobenius,
    frobenius_plus,
    from_ghost,
    ghost,
    invol,
    lambda_op,
    trunc_add,
    trunc_mul,
    trunc_neg,
    truncate,
    verschiebung,
    witt_add,
    witt_eq,
    witt_mul,
    witt_mul_kronecker,
    witt_mul_plus,
    witt_neg,
    witt_scale,
    witt_sub,
)


def W(num, den=None, ring=ZZ):
    return WittFraction.of(ring, num, den)


def test_sum_examples():
    assert witt_add(W([1, 2]), W([1, 3])) == W([1, 5, 6])
    x = W([1, 1], [1, -2])
    assert witt_add(x, WittFraction.zero(ZZ)) == x
    assert witt_add(W([1, 1]), witt_neg(W([1, 1]))) == WittFraction.zero(ZZ)
    assert witt_sub(x, x) == WittFraction.zero(ZZ)
    assert witt_scale(3, W([1, 1])) == W([1, 3, 3, 1])
    assert witt_scale(-1, W([1, 1])) == W([1], [1, 1])


def test_product_examples():
    assert witt_mul(W([1, -2]), W([1, -3])) == W([1, -6])
    one = WittFraction.unit(ZZ)
    for x in (W([1, -5]), W([1, 1], [1, -2])):
        assert witt_mul(one, x) == x
        assert witt_mul(x, one) == x
    assert witt_mul(W([1, -2, 1]), W([1, -2])) == W([1, -4, 4])


def test_product_plus_examples():
    assert witt_mul_plus(W([1, 2]), W([1, 3])) == W([1, 6])
    x = W([1, 4, -1], [1, 2])
    assert witt_mul_plus(W([1, 1]), x) == x


def test_invol_examples():
    assert invol(W([1, 2])) == W([1, -2])
    rng = random.Random(1)
    for _ in range(100):
        x, y = random_witt(ZZ, rng), random_witt(ZZ, rng)
        assert invol(invol(x)) == x
        assert invol(witt_add(x, y)) == witt_add(invol(x), invol(y))


def test_line_rule_over_small_ranges():
    for a in range(-9, 10):
        for b in range(-9, 10):
            assert witt_mul(WittFraction.line(ZZ, a), WittFraction.line(ZZ, b)) == WittFraction.line(ZZ, a * b)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["Z", "GF(5)", "Z/6", "Z[t]"]), st.randoms(use_true_random=False))
def test_power_sum_product_matches_kronecker_oracle(sel, rnd):
    R = parse_ring(sel)
    x, y = random_witt(R, rnd), random_witt(R, rnd)
    assert witt_mul(x, y) == witt_mul_kronecker(x, y)


def trace_ghost(depth, x):
    """g_n = tr(C_num^n) - tr(C_den^n) for minus-convention companions."""
    R = x.ring
    cn = companion_of(x.numerator, MINUS)
    cd = companion_of(x.denominator, MINUS)
    out = []
    for n in range(1, depth + 1):
        tn = trace(matrix_power(cn, n)) if cn.nrows else R.zero
        td = trace(matrix_power(cd, n)) if cd.nrows else R.zero
        out.append(R.sub(tn, td))
    return tuple(out)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["Z", "GF(7)", "Z[t]"]), st.randoms(use_true_random=False))
def test_ghost_matches_trace_of_powers(sel, rnd):
    R = parse_ring(sel)
    x = random_witt(R, rnd)
    assert ghost(7, x).components == trace_ghost(7, x)


def test_ghost_examples():
    assert ghost(4, W([1, -2])).components == (2, 4, 8, 16)
    assert ghost(5, WittFraction.zero(ZZ)).components == (0,) * 5
    assert ghost(4, W([1, -2], [1, -3])).components == (-1, -5, -19, -65)
    assert str(ghost(4, W([1, -2]))) == "2 4 8 16"
    with pytest.raises(DomainError):
        ghost(0, W([1, -2]))


def test_ghost_is_a_homomorphism_over_gf7():
    F = PrimeField(7)
    rng = random.Random(9)
    for _ in range(100):
        x, y = random_witt(F, rng), random_witt(F, rng)
        gx, gy = ghost(10, x), ghost(10, y)
        assert ghost(10, witt_add(x, y)) == gx + gy
        assert ghost(10, witt_mul(x, y)) == gx * gy


def test_from_ghost_inverts_line():
    for a in (-3, 2, 5):
        g = GhostVector(ZZ, 4, tuple(a ** k for k in range(1, 5)))
        assert from_ghost(g) == truncate(4, WittFraction.line(ZZ, a))
    assert from_ghost(GhostVector(ZZ, 3, (0, 0, 0))).coeffs == (0, 0, 0)


def test_from_ghost_small_search_agrees():
    hits = []
    for c1 in range(-10, 11):
        for c2 in range(-10, 11):
            if ghost(2, W([1, c1, c2])).components == (1, 3):
                hits.append((c1, c2))
    assert hits == [(-1, -1)]
    assert from_ghost(GhostVector(ZZ, 2, (1, 3))).coeffs == hits[0]


def test_from_ghost_rejects_non_integral():
    with pytest.raises(NonIntegralGhost):
        from_ghost(GhostVector(ZZ, 2, (1, 2)))


def test_from_ghost_over_prime_field():
    F = PrimeField(7)
    rng = random.Random(2)
    for _ in range(50):
        x = random_witt(F, rng)
        assert from_ghost(ghost(6, x)) == truncate(6, x)
    with pytest.raises(DomainError):
        from_ghost(GhostVector(F, 7, (0,) * 7))


def test_frobenius_examples():
    assert frobenius(2, W([1, -3])) == W([1, -9])
    assert frobenius(2, W([1, 0, -1])) == W([1, -2, 1])
    rng = random.Random(3)
    for _ in range(100):
        x = random_witt(ZZ, rng)
        assert frobenius(1, x) == x
    assert frobenius_plus(2, W([1, 3])) == W([1, 9])
    with pytest.raises(DomainError):
        frobenius(0, W([1, -3]))


def test_frobenius_matches_companion_powers():
    rng = random.Random(4)
    for _ in range(60):
        x = random_witt(ZZ, rng, max_degree=3)
        n = rng.randint(1, 4)
        assert ghost(6, frobenius(n, x)).components == trace_ghost(6 * n, x)[n - 1::n]


def test_verschiebung_examples():
    assert verschiebung(2, W([1, -3])) == W([1, 0, -3])
    x = W([1, 2], [1, -1, 4])
    assert verschiebung(1, x) == x
    assert frobenius(2, verschiebung(2, W([1, -3]))) == witt_add(W([1, -3]), W([1, -3]))


def test_lambda_examples():
    f = W([1, -5, 6])
    assert lambda_op(0, f) == WittFraction.unit(ZZ)
    assert lambda_op(1, f) == f
    assert lambda_op(2, f) == W([1, -6])
    g = W([1, -2, -1, 2])   # (1 - r)(1 + r)(1 - 2r): roots 1, -1, 2
    assert lambda_op(3, g) == W([1, 2])
    with pytest.raises(NotEffective):
        lambda_op(1, W([1], [1, 1]))
    with pytest.raises(DomainError):
        lambda_op(4, g)


def test_truncation_examples():
    t = truncate(3, W([1], [1, -1]))
    assert t.coeffs == (1, 1, 1)
    assert str(t) == "1 + r + r^2 + r^3 + O(r^4)"
    lhs = trunc_mul(truncate(8, W([1, -2])), truncate(8, W([1, -3])))
    assert lhs == truncate(8, W([1, -6]))
    rng = random.Random(5)
    for _ in range(50):
        x, y = random_witt(ZZ, rng), random_witt(ZZ, rng)
        assert trunc_add(truncate(6, x), truncate(6, y)) == truncate(6, witt_add(x, y))
        assert trunc_mul(truncate(6, x), truncate(6, y)) == truncate(6, witt_mul(x, y))
        assert trunc_neg(truncate(6, x)) == truncate(6, witt_neg(x))


def test_equality_examples():
    assert witt_eq(W([1, 0, -1], [1, -1]), W([1, 1]))
    assert witt_eq(W([1, 2, 1], [1, 1]), W([1, 1]))
    assert not witt_eq(W([1, 2]), W([1, 3]))


def test_formatting():
    assert str(W([1, -6, 4])) == "1 - 6r + 4r^2"
    assert str(W([1, 2], [1, -1])) == "(1 + 2r)/(1 - r)"


def test_errors():
    with pytest.raises(DomainError):
        W([2, 1])
    with pytest.raises(DomainError):
        W([1], [0, 1])
    with pytest.raises(RingMismatch):
        witt_add(W([1, 1]), W([1, 1], ring=PrimeField(5)))
    with pytest.raises(RingMismatch):
        witt_mul(W([1, 1]), W([1, 1], ring=PrimeField(5)))


def test_canonical_form_is_reduced_over_fields_and_integers():
    x = witt_add(W([1, 1]), witt_neg(W([1, 1])))
    assert (x.num, x.den) == ((1,), (1,))
    F = PrimeField(5)
    y = W([1, 2], [1, 2], ring=F)
    assert (y.num, y.den) == ((1,), (1,))

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittkit.errors import DomainError, RingMismatch
from wittkit.poly import Polynomial, poly_eval, poly_mul, poly_substitute_r_power
from wittkit.rings import (
    ZZ,
    IntegersMod,
    PolyRing,
    PrimeField,
    is_prime,
    p_gcd,
    p_mul,
    p_trim,
    pack_int_poly,
    parse_ring,
    unpack_int_poly,
)


def sieve(n):
    flags = [True] * (n + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(n ** 0.5) + 1):
        if flags[i]:
            flags[i * i::i] = [False] * len(flags[i * i::i])
    return flags


def test_is_prime_matches_sieve():
    flags = sieve(20000)
    assert [is_prime(n) for n in range(20001)] == flags


def test_is_prime_large_known_values():
    assert is_prime(2 ** 61 - 1)
    assert not is_prime((2 ** 31 - 1) * (2 ** 13 - 1))
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    with pytest.raises(DomainError):
        is_prime(2 ** 89 - 1)


@pytest.mark.parametrize("sel, text", [
    ("Z", "Z"), ("ZZ", "Z"), ("Z/6", "Z/6"), ("GF(7)", "GF(7)"), ("F5", "GF(5)"),
    ("Z[t]", "Z[t]"), ("GF(5)[t]", "GF(5)[t]"), ("Z[t][s]", "Z[t][s]"), ("Z/6[x]", "Z/6[x]"),
])
def test_parse_ring(sel, text):
    assert str(parse_ring(sel)) == text


@pytest.mark.parametrize("sel", ["Q", "GF(4)", "Z/1", "Z/0", "Z[t][s][u]", "Z[r]", "Z[t][t]", "R"])
def test_parse_ring_rejects(sel):
    with pytest.raises(DomainError):
        parse_ring(sel)


def test_ring_equality_is_structural():
    assert parse_ring("Z[t]") == PolyRing(ZZ, "t")
    assert parse_ring("Z[t]") != parse_ring("Z[s]")
    assert PrimeField(7) != IntegersMod(7)
    assert len({parse_ring("GF(7)"), PrimeField(7)}) == 1


def test_modular_arithmetic_matches_integers():
    rng = random.Random(0)
    R = IntegersMod(6)
    for _ in range(500):
        a, b = rng.randint(-50, 50), rng.randint(-50, 50)
        assert R.add(R.from_int(a), R.from_int(b)) == (a + b) % 6
        assert R.mul(R.from_int(a), R.from_int(b)) == (a * b) % 6
        assert R.sub(R.from_int(a), R.from_int(b)) == (a - b) % 6


def test_prime_field_inverse():
    F = PrimeField(101)
    for a in range(1, 101):
        assert F.mul(a, F.inverse(a)) == 1
    with pytest.raises(DomainError):
        F.inverse(0)


def test_ring_values_and_mismatch():
    R = parse_ring("Z[t]")
    x = R(3)
    assert str(x * 2 + 1) == "7"
    assert R.coerce(ZZ(3)) == R.from_int(3)  # base values embed as constants
    with pytest.raises(RingMismatch):
        R.coerce(PrimeField(5)(3))
    with pytest.raises(RingMismatch):
        ZZ.coerce(PrimeField(5)(3))
    with pytest.raises(DomainError):
        ZZ.variable("t")


def test_polyring_payloads_are_trimmed():
    R = parse_ring("Z[t]")
    tt = R.variable("t")
    assert R.sub(tt, tt) == R.zero == ()
    assert R.mul(R.from_int(0), tt) == ()


def test_nested_formatting():
    R = parse_ring("Z[t][s]")
    t, s = R.variable("t"), R.variable("s")
    x = R.sub(R.add(s, R.mul(R.from_int(-2), R.mul(t, s))), R.add(R.from_int(2), t))
    assert R.fmt(x) == "-2 - t + s - 2ts"
    G = parse_ring("GF(5)[t]")
    assert G.fmt(G.add(G.from_int(-1), G.variable("t"))) == "4 + t"


# --- packed multiplication --------------------------------------------------

int_polys = st.lists(st.integers(-10 ** 6, 10 ** 6), max_size=12)


def schoolbook(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out


@given(int_polys)
def test_pack_unpack_round_trip(a):
    bits = max(abs(c) for c in a).bit_length() + 2 if a else 2
    assert list(unpack_int_poly(pack_int_poly(a, bits), bits, len(a))) == a


@settings(max_examples=200)
@given(st.lists(st.lists(st.integers(-30, 30), max_size=4), min_size=1, max_size=9),
       st.lists(st.lists(st.integers(-30, 30), max_size=4), min_size=1, max_size=9))
def test_packed_zt_multiplication_matches_schoolbook(a, b):
    R = parse_ring("Z[t]")
    a = p_trim(R, [tuple(schoolbook(c, [1])) for c in a])
    b = p_trim(R, [tuple(schoolbook(c, [1])) for c in b])
    want = [()] * max(len(a) + len(b) - 1, 0)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            want[i + j] = R.add(want[i + j], R.mul(x, y))
    assert p_mul(R, a, b) == p_trim(R, want)


# --- gcd ---------------------------------------------------------------------

def _divides(R, d, a):
    from wittkit.rings import p_divmod_field, p_prem
    if not a:
        return True
    if R.is_field:
        return not p_divmod_field(R, a, d)[1]
    return not p_prem(R, a, d)


@settings(max_examples=100)
@given(st.sampled_from(["Z", "GF(7)", "Z[t]"]), st.randoms(use_true_random=False))
def test_gcd_recovers_planted_factor(sel, rnd):
    R = parse_ring(sel)
    g = p_trim(R, [R.one] + [R.random(rnd, 3, 1) for _ in range(rnd.randint(0, 2))])
    a = p_trim(R, [R.one] + [R.random(rnd, 3, 1) for _ in range(rnd.randint(0, 2))])
    b = p_trim(R, [R.one] + [R.random(rnd, 3, 1) for _ in range(rnd.randint(0, 2))])
    d = p_gcd(R, p_mul(R, g, a), p_mul(R, g, b))
    assert _divides(R, d, p_mul(R, g, a)) and _divides(R, d, p_mul(R, g, b))
    assert _divides(R, g, d)


# --- Polynomial plumbing ------------------------------------------------------

def test_polynomial_examples():
    one_plus = Polynomial.of(ZZ, [1, 1])
    one_minus = Polynomial.of(ZZ, [1, -1])
    assert poly_mul(one_plus, one_minus) == Polynomial.of(ZZ, [1, 0, -1])
    assert poly_substitute_r_power(Polynomial.of(ZZ, [1, 2]), 3) == Polynomial.of(ZZ, [1, 0, 0, 2])
    assert poly_eval(Polynomial.of(ZZ, [1, 2, 3]), 2) == 17
    assert Polynomial.of(ZZ, [0, 0]).coeffs == ()
    assert str(Polynomial.of(ZZ, [1, -6, 4])) == "1 - 6r + 4r^2"


def test_polynomial_ring_mismatch():
    with pytest.raises(RingMismatch):
        Polynomial.of(ZZ, [1]) + Polynomial.of(PrimeField(5), [1])

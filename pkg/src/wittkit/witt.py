"""The rational Witt ring W0(A).

Elements are fractions num/den of polynomials in r with constant term 1.
Addition is multiplication of power series; the product `witt_mul` is the
one with (1 - a r) * (1 - b r) = 1 - ab r (the "minus" convention).  Its
conjugate under r -> -r, `witt_mul_plus`, satisfies
(1 + a r) *+ (1 + b r) = 1 + ab r and is the product matching
det(Id + alpha r).

Products and Frobenius are computed through ghost components (power sums of
the reciprocal roots), which multiply componentwise under *.  Power sums are
obtained division-free; the inverse Newton step divides by k, so it runs in
the characteristic-zero cover of the ring (Z for Z/m and GF(p), Z[t] for
GF(p)[t]) and the result is reduced afterwards.  The Kronecker-companion
route `witt_mul_kronecker` computes the same product with Berkowitz
determinants and is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DomainError, NonIntegralGhost, NotEffective, RingMismatch
from .matrix import MINUS, char_det_form, companion_of, compound, kron
from .poly import Polynomial
from .rings import (
    PolyRing,
    PrimeField,
    Ring,
    RingValue,
    ZZ,
    p_divexact,
    p_divmod_field,
    p_eval,
    p_gcd,
    p_mul,
    p_scale,
    pack_int_poly,
    unpack_int_poly,
    p_trim,
)

_CHECK_PRIME = (1 << 61) - 1
_CHECK_FIELD = PrimeField(_CHECK_PRIME)


# ---------------------------------------------------------------------------
# payload kernels
# ---------------------------------------------------------------------------

def power_sums(R: Ring, f, n: int) -> list:
    """g_1..g_n with -r f'/f = sum g_k r^k, for f with constant term 1.

    For f = prod(1 - a_i r) this gives g_k = sum a_i^k.  Only ring
    additions and multiplications are used.
    """
    add, mul, neg, from_int = R.add, R.mul, R.neg, R.from_int
    c = list(f) + [R.zero] * max(0, n + 1 - len(f))
    g = []
    for k in range(1, n + 1):
        s = mul(from_int(k), c[k]) if k < len(f) else R.zero
        for i in range(1, min(k, len(f))):
            s = add(s, mul(c[i], g[k - i - 1]))
        g.append(neg(s))
    return g


def _newton(C: Ring, g, n: int) -> list:
    """Coefficients [1, c_1..c_n] with the given power sums (characteristic 0)."""
    add, mul, neg = C.add, C.mul, C.neg
    c = [C.one]
    for k in range(1, n + 1):
        s = g[k - 1]
        for i in range(1, k):
            s = add(s, mul(c[i], g[k - i - 1]))
        c.append(C.divexact_int(neg(s), k))
    return c


def _from_cover(R: Ring, C: Ring, coeffs):
    return p_trim(R, [R.reduce(x) for x in coeffs]) if C is not R else p_trim(R, coeffs)


def _iroot_ceil(m: int, k: int) -> int:
    """Smallest a >= 0 with a**k >= m."""
    if m <= 1:
        return m
    a = int(round(m ** (1.0 / k))) if m.bit_length() < 1000 else 1 << -(-m.bit_length() // k)
    while a ** k < m:
        a += 1
    while a > 0 and (a - 1) ** k >= m:
        a -= 1
    return a


def _root_bound(C: Ring, f) -> int:
    """Bound on the reciprocal roots of f(r; t) for every complex t with |t| = 1.

    Fujiwara: |root| <= 2 max_i |c_i|^(1/i); on the unit circle |c_i(t)| is
    at most the sum of the absolute values of the integer coefficients of c_i.
    """
    if C.packing == "int":
        norms = [abs(c) for c in f]
    else:
        norms = [sum(abs(x) for x in c) for c in f]
    return max(2 * _iroot_ceil(m, i) for i, m in enumerate(norms) if i) if len(f) > 1 else 0


def _coefficient_bound(total: int, n: int, gamma: int) -> int:
    # e_k of `total` numbers of modulus <= gamma is at most comb(total, k) gamma^k;
    # an integer polynomial's coefficients are bounded by its max modulus on |t| = 1
    return max(comb(total, k) * gamma ** k for k in range(min(n, total) + 1))


def _star_cover(C: Ring, f, g, n: int, bound: int):
    """star_series in a characteristic-zero cover C.

    Over Z[t] the computation runs on the images under t -> 2**B, a ring map
    Z[t] -> Z, which is injective on polynomials whose integer coefficients
    stay below 2**(B-1) in absolute value; `bound` bounds the result's.
    """
    if C.packing == "poly":
        bits = bound.bit_length() + 2
        fz = [pack_int_poly(c, bits) for c in f]
        gz = [pack_int_poly(c, bits) for c in g]
        hz = _star_cover(ZZ, fz, gz, n, 0)
        return [tuple(unpack_int_poly(v, bits)) for v in hz]
    gf = power_sums(C, f, n)
    gg = power_sums(C, g, n)
    mul = C.mul
    return _newton(C, [mul(a, b) for a, b in zip(gf, gg)], n)


def star_series(R: Ring, f, g, n: int):
    """First n+1 coefficients of f * g (minus convention)."""
    C = cover_of(R)
    F = [R.lift(x) for x in f]
    G = [R.lift(x) for x in g]
    bound = 0
    if C.packing == "poly":
        gamma = _root_bound(C, F) * _root_bound(C, G)
        bound = _coefficient_bound((len(f) - 1) * (len(g) - 1), n, gamma)
    return _from_cover(R, C, _star_cover(C, F, G, n, bound))


def star_poly(R: Ring, f, g):
    """f * g for polynomials f, g with constant term 1."""
    d = (len(f) - 1) * (len(g) - 1)
    if d <= 0:
        return (R.one,)
    if len(f) == 2 and len(g) == 2:
        return p_trim(R, (R.one, R.neg(R.mul(f[1], g[1]))))
    return star_series(R, f, g, d)


def frobenius_poly(R: Ring, f, n: int):
    d = len(f) - 1
    if n == 1 or d <= 0:
        return f
    C = cover_of(R)
    F = [R.lift(x) for x in f]
    if C.packing == "poly":
        bits = _coefficient_bound(d, d, _root_bound(C, F) ** n).bit_length() + 2
        ps = power_sums(ZZ, [pack_int_poly(c, bits) for c in F], n * d)
        out = [tuple(unpack_int_poly(v, bits)) for v in _newton(ZZ, ps[n - 1::n], d)]
        return _from_cover(R, C, out)
    ps = power_sums(C, F, n * d)
    return _from_cover(R, C, _newton(C, ps[n - 1::n], d))


_COVERS: dict = {}


def cover_of(R: Ring) -> Ring:
    C = _COVERS.get(R.key)
    if C is None:
        C = _COVERS[R.key] = R.cover
    return C


def _series_inverse(R: Ring, f, n: int):
    e = [R.one]
    for k in range(1, n + 1):
        s = R.zero
        for i in range(1, min(k, len(f) - 1) + 1):
            s = R.add(s, R.mul(f[i], e[k - i]))
        e.append(R.neg(s))
    return e


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------

def _field_image(R: Ring):
    """A ring map from R to a prime field (payload function, field), or None."""
    if R == ZZ:
        return _CHECK_FIELD, lambda a: a % _CHECK_PRIME
    if isinstance(R, PrimeField):
        return R, lambda a: a
    if isinstance(R, PolyRing) and R.depth == 1:
        inner = _field_image(R.base)
        if inner is None:
            return None
        F, phi = inner
        point = 1_000_003 % F.m if F.m > 1_000_003 else 3 % F.m
        return F, lambda a: p_eval(F, [phi(c) for c in a], point)
    return None


def _certainly_coprime(R: Ring, a, b) -> bool:
    """Cheap sufficient test: coprime images under a degree-preserving map to a field."""
    image = _field_image(R)
    if image is None:
        return False
    F, phi = image
    fa = p_trim(F, [phi(c) for c in a])
    if len(fa) != len(a):
        return False
    fb = p_trim(F, [phi(c) for c in b])
    while fb:
        fa, fb = fb, p_divmod_field(F, fa, fb)[1]
    return len(fa) == 1


def canonical(R: Ring, num, den):
    """Reduce num/den by their gcd when the ring has one; constant terms stay 1."""
    if not R.has_gcd or len(num) == 1 or len(den) == 1:
        return num, den
    if num == den:
        return (R.one,), (R.one,)
    if _certainly_coprime(R, num, den) or _certainly_coprime(R, den, num):
        return num, den
    g = p_gcd(R, num, den)
    if len(g) <= 1:
        return num, den
    g = p_scale(R, R.inverse(g[0]), g)
    return p_divexact(R, num, g), p_divexact(R, den, g)


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WittFraction:
    """num/den in W0(A); both polynomials have constant term 1."""

    ring: Ring
    num: tuple
    den: tuple

    @classmethod
    def make(cls, ring: Ring, num, den=None, reduce=True) -> "WittFraction":
        num = p_trim(ring, num)
        den = p_trim(ring, den) if den is not None else (ring.one,)
        for part, name in ((num, "numerator"), (den, "denominator")):
            if not part or part[0] != ring.one:
                raise DomainError(f"{name} must have constant term 1")
        if reduce:
            num, den = canonical(ring, num, den)
        return cls(ring, num, den)

    @classmethod
    def of(cls, ring: Ring, num, den=None) -> "WittFraction":
        """Build from coefficient lists of ints or ring values."""
        n = [ring.coerce(c) for c in num]
        d = [ring.coerce(c) for c in den] if den is not None else None
        return cls.make(ring, n, d)

    @classmethod
    def from_polys(cls, num: Polynomial, den: Polynomial | None = None) -> "WittFraction":
        if den is not None and den.ring != num.ring:
            raise RingMismatch("numerator and denominator over different rings")
        return cls.make(num.ring, num.coeffs, den.coeffs if den is not None else None)

    @classmethod
    def zero(cls, ring: Ring) -> "WittFraction":
        return cls(ring, (ring.one,), (ring.one,))

    @classmethod
    def unit(cls, ring: Ring) -> "WittFraction":
        """1 - r, the multiplicative identity."""
        return cls.make(ring, (ring.one, ring.neg(ring.one)))

    @classmethod
    def line(cls, ring: Ring, a) -> "WittFraction":
        """1 - a r."""
        return cls.make(ring, (ring.one, ring.neg(ring.coerce(a))))

    @property
    def numerator(self) -> Polynomial:
        return Polynomial(self.ring, self.num)

    @property
    def denominator(self) -> Polynomial:
        return Polynomial(self.ring, self.den)

    @property
    def is_effective(self) -> bool:
        return len(self.den) == 1

    def __eq__(self, other):
        if not isinstance(other, WittFraction):
            return NotImplemented
        return witt_eq(self, other)

    __hash__ = None

    def __add__(self, other):
        return witt_add(self, other)

    def __sub__(self, other):
        return witt_sub(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __mul__(self, other):
        return witt_mul(self, other)

    def __str__(self):
        num = str(self.numerator)
        if self.is_effective:
            return num
        return f"({num})/({self.denominator})"

    def __repr__(self):
        return f"WittFraction({self.ring}, {self})"


@dataclass(frozen=True)
class GhostVector:
    ring: Ring
    depth: int
    components: tuple

    def values(self) -> list[RingValue]:
        return [RingValue(self.ring, c) for c in self.components]

    def __add__(self, other: "GhostVector") -> "GhostVector":
        _same(self, other)
        add = self.ring.add
        return GhostVector(self.ring, self.depth, tuple(add(a, b) for a, b in zip(self.components, other.components)))

    def __mul__(self, other: "GhostVector") -> "GhostVector":
        _same(self, other)
        mul = self.ring.mul
        return GhostVector(self.ring, self.depth, tuple(mul(a, b) for a, b in zip(self.components, other.components)))

    def scale(self, k: int) -> "GhostVector":
        c = self.ring.from_int(k)
        return GhostVector(self.ring, self.depth, tuple(self.ring.mul(c, a) for a in self.components))

    def __str__(self):
        return " ".join(self.ring.plain(c) for c in self.components)


@dataclass(frozen=True)
class TruncatedWitt:
    """1 + c_1 r + ... + c_N r^N modulo r^(N+1)."""

    ring: Ring
    depth: int
    coeffs: tuple

    @classmethod
    def from_series(cls, ring: Ring, series, depth: int) -> "TruncatedWitt":
        s = list(series) + [ring.zero] * (depth + 1)
        return cls(ring, depth, tuple(s[1:depth + 1]))

    @property
    def series(self) -> tuple:
        return p_trim(self.ring, (self.ring.one,) + self.coeffs)

    def values(self) -> list[RingValue]:
        return [RingValue(self.ring, c) for c in self.coeffs]

    def __add__(self, other):
        return trunc_add(self, other)

    def __mul__(self, other):
        return trunc_mul(self, other)

    def __str__(self):
        body = str(Polynomial(self.ring, self.series))
        exp = self.depth + 1
        return f"{body} + O(r^{exp})" if exp > 1 else f"{body} + O(r)"


def _same(x, y):
    if x.ring != y.ring:
        raise RingMismatch(f"operands over {x.ring} and {y.ring}")
    if getattr(x, "depth", None) != getattr(y, "depth", None):
        raise DomainError("operands truncated at different depths")


# ---------------------------------------------------------------------------
# ring operations
# ---------------------------------------------------------------------------

def witt_eq(x: WittFraction, y: WittFraction) -> bool:
    _same(x, y)
    R = x.ring
    return p_mul(R, x.num, y.den) == p_mul(R, y.num, x.den)


def witt_add(x: WittFraction, y: WittFraction) -> WittFraction:
    _same(x, y)
    R = x.ring
    return WittFraction.make(R, p_mul(R, x.num, y.num), p_mul(R, x.den, y.den))


def witt_neg(x: WittFraction) -> WittFraction:
    return WittFraction(x.ring, x.den, x.num)


def witt_sub(x: WittFraction, y: WittFraction) -> WittFraction:
    return witt_add(x, witt_neg(y))


def witt_scale(n: int, x: WittFraction) -> WittFraction:
    """n-fold sum of x (negative n subtracts)."""
    R = x.ring
    num, den = (R.one,), (R.one,)
    for _ in range(abs(n)):
        num, den = p_mul(R, num, x.num), p_mul(R, den, x.den)
    if n < 0:
        num, den = den, num
    return WittFraction.make(R, num, den)


def witt_mul(x: WittFraction, y: WittFraction) -> WittFraction:
    """Product with (1 - a r) * (1 - b r) = 1 - ab r, extended bilinearly."""
    _same(x, y)
    R = x.ring
    one = (R.one,)
    nn = star_poly(R, x.num, y.num)
    if x.den == one and y.den == one:
        return WittFraction.make(R, nn)
    dd = star_poly(R, x.den, y.den)
    nd = star_poly(R, x.num, y.den)
    dn = star_poly(R, x.den, y.num)
    return WittFraction.make(R, p_mul(R, nn, dd), p_mul(R, nd, dn))


def witt_mul_kronecker(x: WittFraction, y: WittFraction) -> WittFraction:
    """Same product as witt_mul, via Berkowitz on Kronecker products of companions."""
    _same(x, y)

    def sc(f, g):
        cf = companion_of(Polynomial(x.ring, f), MINUS)
        cg = companion_of(Polynomial(x.ring, g), MINUS)
        return char_det_form(kron(cf, cg), MINUS).coeffs

    R = x.ring
    num = p_mul(R, sc(x.num, y.num), sc(x.den, y.den))
    den = p_mul(R, sc(x.num, y.den), sc(x.den, y.num))
    return WittFraction.make(R, num, den)


def invol(x: WittFraction) -> WittFraction:
    """Substitute r -> -r."""
    return WittFraction(
        x.ring,
        Polynomial(x.ring, x.num).negate_variable().coeffs,
        Polynomial(x.ring, x.den).negate_variable().coeffs,
    )


def witt_mul_plus(x: WittFraction, y: WittFraction) -> WittFraction:
    """Product with (1 + a r) *+ (1 + b r) = 1 + ab r; unit 1 + r."""
    return invol(witt_mul(invol(x), invol(y)))


# ---------------------------------------------------------------------------
# ghost map and its inverse
# ---------------------------------------------------------------------------

def ghost(depth: int, x: WittFraction) -> GhostVector:
    """g_1..g_depth with g_n(1 - a r) = a^n; additive on sums, multiplicative on *."""
    if depth < 1:
        raise DomainError("ghost depth must be at least 1")
    R = x.ring
    gn = power_sums(R, x.num, depth)
    gd = power_sums(R, x.den, depth)
    return GhostVector(R, depth, tuple(R.sub(a, b) for a, b in zip(gn, gd)))


def from_ghost(g: GhostVector) -> TruncatedWitt:
    """The truncated Witt vector whose first N ghost components are g.

    Over Z (or Z[t]) every Newton step must divide exactly, otherwise
    NonIntegralGhost is raised.  Over GF(p) the division needs N < p.
    """
    R, n = g.ring, g.depth
    if R.characteristic == 0:
        try:
            c = _newton(R, list(g.components), n)
        except ArithmeticError as exc:
            raise NonIntegralGhost(f"ghost vector is not integral over {R}: {exc}") from None
    elif isinstance(R, PrimeField) and n < R.m:
        c = [R.one]
        for k in range(1, n + 1):
            s = g.components[k - 1]
            for i in range(1, k):
                s = R.add(s, R.mul(c[i], g.components[k - i - 1]))
            c.append(R.mul(R.neg(s), R.inverse(R.from_int(k))))
    else:
        raise DomainError(f"ghost inversion to depth {n} is not supported over {R}")
    return TruncatedWitt.from_series(R, c, n)


# ---------------------------------------------------------------------------
# Frobenius, Verschiebung, lambda operations
# ---------------------------------------------------------------------------

def frobenius(n: int, x: WittFraction) -> WittFraction:
    """F_n: raises every reciprocal root to the n-th power (minus convention)."""
    if n < 1:
        raise DomainError("Frobenius index must be positive")
    R = x.ring
    return WittFraction.make(R, frobenius_poly(R, x.num, n), frobenius_poly(R, x.den, n))


def frobenius_plus(n: int, x: WittFraction) -> WittFraction:
    """Frobenius read in the det(Id + alpha r) coordinate: det(Id + alpha^n r)."""
    return invol(frobenius(n, invol(x)))


def verschiebung(n: int, x: WittFraction) -> WittFraction:
    """V_n: r -> r^n."""
    if n < 1:
        raise DomainError("Verschiebung index must be positive")
    return WittFraction(
        x.ring,
        Polynomial(x.ring, x.num).substitute_r_power(n).coeffs,
        Polynomial(x.ring, x.den).substitute_r_power(n).coeffs,
    )


def lambda_op(k: int, x: WittFraction) -> WittFraction:
    """k-th exterior power of an effective element, via compound matrices."""
    if not x.is_effective:
        raise NotEffective("lambda operations are defined here only for polynomials (denominator 1)")
    f = Polynomial(x.ring, x.num)
    if not 0 <= k <= f.degree:
        raise DomainError(f"lambda order {k} out of range 0..{f.degree}")
    C = companion_of(f, MINUS)
    return WittFraction.from_polys(char_det_form(compound(C, k), MINUS))


# ---------------------------------------------------------------------------
# truncations
# ---------------------------------------------------------------------------

def truncate(depth: int, x: WittFraction) -> TruncatedWitt:
    if depth < 0:
        raise DomainError("truncation depth must be non-negative")
    R = x.ring
    inv = _series_inverse(R, x.den, depth)
    series = p_mul(R, x.num[: depth + 1], tuple(inv))
    return TruncatedWitt.from_series(R, series[: depth + 1], depth)


def trunc_add(x: TruncatedWitt, y: TruncatedWitt) -> TruncatedWitt:
    _same(x, y)
    R = x.ring
    return TruncatedWitt.from_series(R, p_mul(R, x.series, y.series)[: x.depth + 1], x.depth)


def trunc_mul(x: TruncatedWitt, y: TruncatedWitt) -> TruncatedWitt:
    _same(x, y)
    R = x.ring
    if x.depth == 0:
        return x
    return TruncatedWitt.from_series(R, star_series(R, x.series, y.series, x.depth), x.depth)


def trunc_neg(x: TruncatedWitt) -> TruncatedWitt:
    R = x.ring
    return TruncatedWitt.from_series(R, _series_inverse(R, x.series, x.depth), x.depth)

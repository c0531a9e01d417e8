"""Exact commutative rings with canonical, hashable payloads.

A ring object does arithmetic on *payloads*: Python ints for the integers
and the residue rings, trimmed tuples of base payloads for polynomial
extensions.  `RingValue` wraps a payload for interactive use; the kernels
in the rest of the package work on payloads directly.

Every ring also knows a characteristic-zero *cover* (Z for Z/m and GF(p),
Z[t] for GF(p)[t], ...) together with the lift and reduction maps.  Kernels
that need exact division by integers run in the cover and reduce at the end.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DomainError, RingMismatch

MAX_DEPTH = 2


# ---------------------------------------------------------------------------
# dense polynomial helpers over a coefficient ring R (ascending tuples)
# ---------------------------------------------------------------------------

def p_trim(R, a):
    a = tuple(a)
    n = len(a)
    while n and R.is_zero(a[n - 1]):
        n -= 1
    return a[:n]


def p_add(R, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = R.add(out[i], y)
    return p_trim(R, out)


def p_neg(R, a):
    return tuple(R.neg(x) for x in a)


def p_sub(R, a, b):
    return p_add(R, a, p_neg(R, b))


def p_scale(R, c, a):
    return p_trim(R, [R.mul(c, x) for x in a])


def _offset(bits, length):
    # sum of 2**(bits-1) * 2**(bits*i) for i < length
    return int.from_bytes((b"\x00" * (bits // 8 - 1) + b"\x80") * length, "little")


def pack_int_poly(a, bits):
    """Evaluate an integer polynomial at 2**bits (bits is rounded up to whole bytes).

    Coefficients must satisfy |c| < 2**(bits-1).
    """
    bits = -(-bits // 8) * 8
    if not a:
        return 0
    half = 1 << (bits - 1)
    width = bits // 8
    raw = b"".join((c + half).to_bytes(width, "little") for c in a)
    return int.from_bytes(raw, "little") - _offset(bits, len(a))


def unpack_int_poly(v, bits, length=None):
    """Inverse of pack_int_poly for coefficients of absolute value < 2**(bits-1)."""
    bits = -(-bits // 8) * 8
    n = abs(v).bit_length() // bits + 2
    if length is not None:
        n = max(n, length)
    width = bits // 8
    half = 1 << (bits - 1)
    raw = (v + _offset(bits, n)).to_bytes(n * width, "little")
    out = [int.from_bytes(raw[i * width:(i + 1) * width], "little") - half for i in range(n)]
    if length is not None:
        return out[:length]
    while out and out[-1] == 0:
        out.pop()
    return out


def _int_pmul(a, b):
    bound = max(1, max(map(abs, a))) * max(1, max(map(abs, b))) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    prod = pack_int_poly(a, bits) * pack_int_poly(b, bits)
    return unpack_int_poly(prod, bits, len(a) + len(b) - 1)


def _flatten(a, stride):
    flat = [0] * (len(a) * stride)
    for i, c in enumerate(a):
        flat[i * stride:i * stride + len(c)] = c
    return flat


def p_mul(R, a, b):
    if not a or not b:
        return ()
    kind = R.packing
    if kind and len(a) * len(b) > 16:
        if kind == "int":
            return p_trim(R, _int_pmul(a, b))
        if kind == "mod":
            m = R.m
            return p_trim(R, [c % m for c in _int_pmul(a, b)])
        # polynomial coefficients over Z or Z/m: t -> X, r -> X^stride
        stride = max(map(len, a)) + max(map(len, b)) - 1
        if stride <= 0:
            return ()
        flat = _int_pmul(_flatten(a, stride), _flatten(b, stride))
        base = R.base
        reduce = (lambda c: c % base.m) if base.packing == "mod" else (lambda c: c)
        out = [p_trim(base, [reduce(c) for c in flat[i * stride:(i + 1) * stride]])
               for i in range(len(a) + len(b) - 1)]
        return p_trim(R, out)
    out = [R.zero] * (len(a) + len(b) - 1)
    add, mul, is_zero = R.add, R.mul, R.is_zero
    for i, x in enumerate(a):
        if is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = add(out[i + j], mul(x, y))
    return p_trim(R, out)


def p_shift(R, a, k):
    return (R.zero,) * k + tuple(a) if a else ()


def p_eval(R, a, x):
    acc = R.zero
    for c in reversed(a):
        acc = R.add(R.mul(acc, x), c)
    return acc


def p_prem(R, a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    n = len(b) - 1
    lb = b[-1]
    r = a
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= n:
        lr = r[-1]
        r = p_sub(R, p_scale(R, lb, r), p_shift(R, p_scale(R, lr, b), len(r) - 1 - n))
        e -= 1
    if e > 0:
        r = p_scale(R, R.pow(lb, e), r)
    return r


def p_divmod_field(R, a, b):
    inv = R.inverse(b[-1])
    q = [R.zero] * max(len(a) - len(b) + 1, 0)
    r = a
    while r and len(r) >= len(b):
        k = len(r) - len(b)
        c = R.mul(r[-1], inv)
        q[k] = c
        r = p_sub(R, r, p_shift(R, p_scale(R, c, b), k))
    return p_trim(R, q), r


def p_divexact(R, a, b):
    """Exact quotient a / b over an integral domain; ArithmeticError if inexact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [R.zero] * max(len(a) - len(b) + 1, 0)
    r = a
    while r:
        k = len(r) - len(b)
        if k < 0:
            raise ArithmeticError("inexact polynomial division")
        c = R.divexact(r[-1], b[-1])
        q[k] = c
        r = p_sub(R, r, p_shift(R, p_scale(R, c, b), k))
    return p_trim(R, q)


def p_content(R, a):
    g = R.zero
    for c in a:
        g = R.gcd(g, c)
        if R.is_unit(g):
            break
    return g


def p_primitive(R, a):
    if not a:
        return a
    c = p_content(R, a)
    if R.is_unit(c):
        return a
    return tuple(R.divexact(x, c) for x in a)


def p_normalize(R, a):
    """Scale a by a unit so its leading coefficient is unit-normal."""
    if not a:
        return a
    u = R.normal_unit(a[-1])
    return a if u == R.one else p_scale(R, u, a)


def p_gcd(R, a, b):
    if not R.has_gcd:
        raise DomainError(f"no gcd algorithm over {R}")
    if R.is_field:
        while b:
            a, b = b, p_divmod_field(R, a, b)[1]
        return p_normalize(R, a)
    if not a:
        return p_normalize(R, b)
    if not b:
        return p_normalize(R, a)
    c = R.gcd(p_content(R, a), p_content(R, b))
    a, b = p_primitive(R, a), p_primitive(R, b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        rem = p_prem(R, a, b)
        a, b = b, p_primitive(R, rem)
    g = p_normalize(R, p_primitive(R, a))
    return p_scale(R, c, g)


def format_poly(fmt, coeffs, var, zero="0"):
    """Render ascending coefficients as "c0 + c1 var + c2 var^2 ..."."""
    parts = []
    for i, c in enumerate(coeffs):
        s = fmt(c)
        if s == "0":
            continue
        if i == 0:
            term = s
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if s == "1":
                term = mono
            elif s == "-1":
                term = "-" + mono
            elif " " in s:
                term = f"({s}){mono}"
            else:
                term = s + mono
        parts.append(term)
    if not parts:
        return zero
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for p in small:
        if n % p == 0:
            return n == p
    if n >= 3_317_044_064_679_887_385_961_981:
        raise DomainError("modulus too large for the deterministic primality check")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Ring:
    """Base class; subclasses define the payload arithmetic."""

    depth = 0
    is_field = False
    has_gcd = False
    characteristic = 0
    key: tuple = ()
    packing = None

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<ring {self}>"

    def __call__(self, x=0):
        return RingValue(self, self.coerce(x))

    def coerce(self, x):
        if isinstance(x, RingValue):
            if x.ring != self:
                raise RingMismatch(f"value over {x.ring} used where {self} expected")
            return x.payload
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    # shared arithmetic
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, e):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_zero(self, a):
        return a == self.zero

    def variables(self):
        return ()

    def variable(self, name):
        raise DomainError(
            f"variable {name!r} is not available over {self}; "
            f"select a polynomial-extension ring such as --ring 'Z[{name}]'"
        )

    def plain(self, a):
        """Payload rendered without spaces (ring literal for structured output)."""
        return self.fmt(a).replace(" ", "")


class Integers(Ring):
    key = ("Z",)
    zero, one = 0, 1
    has_gcd = True
    packing = "int"

    def __str__(self):
        return "Z"

    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a ** e

    def is_unit(self, a):
        return a in (1, -1)

    def inverse(self, a):
        if a not in (1, -1):
            raise DomainError(f"{a} is not a unit of Z")
        return a

    def normal_unit(self, a):
        return -1 if a < 0 else 1

    def gcd(self, a, b):
        return math.gcd(a, b)

    def divexact(self, a, b):
        if b == 0 or a % b:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return a // b

    @property
    def cover(self):
        return self

    def lift(self, a):
        return a

    def reduce(self, a):
        return a

    def divexact_int(self, a, k):
        q, r = divmod(a, k)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {k}")
        return q

    def fmt(self, a):
        return str(a)

    def random(self, rng, height=5, degree=1):
        return rng.randint(-height, height)


class IntegersMod(Ring):
    packing = "mod"

    def __init__(self, m: int):
        if m < 2:
            raise DomainError(f"modulus must be at least 2, got {m}")
        self.m = m
        self.characteristic = m
        self.key = ("Z/", m)
        self.zero, self.one = 0, 1 % m

    def __str__(self):
        return f"Z/{self.m}"

    def from_int(self, n):
        return int(n) % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def sub(self, a, b):
        return (a - b) % self.m

    def neg(self, a):
        return -a % self.m

    def mul(self, a, b):
        return a * b % self.m

    def pow(self, a, e):
        return pow(a, e, self.m)

    def is_unit(self, a):
        return math.gcd(a, self.m) == 1

    def inverse(self, a):
        if not self.is_unit(a):
            raise DomainError(f"{a} is not a unit of {self}")
        return pow(a, -1, self.m)

    def normal_unit(self, a):
        return self.one

    def gcd(self, a, b):
        raise DomainError(f"no gcd algorithm over {self}")

    def divexact(self, a, b):
        if not self.is_unit(b):
            raise DomainError(f"division by non-unit {b} in {self}")
        return a * pow(b, -1, self.m) % self.m

    @property
    def cover(self):
        return ZZ

    def lift(self, a):
        return a

    def reduce(self, a):
        return a % self.m

    def fmt(self, a):
        return str(a)

    def random(self, rng, height=5, degree=1):
        return rng.randrange(self.m)


class PrimeField(IntegersMod):
    is_field = True
    has_gcd = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise DomainError(f"GF({p}): {p} is not prime")
        super().__init__(p)
        self.key = ("GF", p)

    def __str__(self):
        return f"GF({self.m})"

    def normal_unit(self, a):
        return pow(a, -1, self.m) if a else self.one

    def gcd(self, a, b):
        return self.one if (a or b) else self.zero


class PolyRing(Ring):
    """base[var]; payloads are trimmed ascending tuples of base payloads."""

    def __init__(self, base: Ring, var: str = "t"):
        if base.depth + 1 > MAX_DEPTH:
            raise DomainError(f"polynomial-extension nesting deeper than {MAX_DEPTH} is not supported")
        if not (len(var) == 1 and var.isalpha() and var.islower()) or var == "r":
            raise DomainError(f"variable name must be a single lowercase letter other than 'r', got {var!r}")
        if var in base.variables():
            raise DomainError(f"variable {var!r} already used in {base}")
        self.base = base
        self.var = var
        self.depth = base.depth + 1
        self.characteristic = base.characteristic
        self.has_gcd = base.has_gcd
        self.key = ("poly", base.key, var)
        self.zero = ()
        self.one = p_trim(base, (base.one,))
        self.packing = "poly" if base.packing in ("int", "mod") else None

    def __str__(self):
        return f"{self.base}[{self.var}]"

    def variables(self):
        return self.base.variables() + (self.var,)

    def variable(self, name):
        if name == self.var:
            return (self.base.zero, self.base.one)
        return self.embed(self.base.variable(name))

    def embed(self, b):
        return p_trim(self.base, (b,))

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def coerce(self, x):
        if isinstance(x, RingValue) and x.ring != self:
            # values of a base ring embed as constants
            ring = self.base
            while isinstance(ring, PolyRing) and ring != x.ring:
                ring = ring.base
            if ring == x.ring:
                return self._embed_from(x.ring, x.payload)
        if isinstance(x, (list, tuple)):
            return p_trim(self.base, [self.base.coerce(c) for c in x])
        return super().coerce(x)

    def _embed_from(self, ring, payload):
        if ring == self.base:
            return self.embed(payload)
        return self.embed(self.base._embed_from(ring, payload))

    def add(self, a, b):
        return p_add(self.base, a, b)

    def sub(self, a, b):
        return p_sub(self.base, a, b)

    def neg(self, a):
        return p_neg(self.base, a)

    def mul(self, a, b):
        return p_mul(self.base, a, b)

    def is_zero(self, a):
        return not a

    def is_unit(self, a):
        return len(a) == 1 and self.base.is_unit(a[0])

    def inverse(self, a):
        if not self.is_unit(a):
            raise DomainError(f"{self.fmt(a)} is not a unit of {self}")
        return (self.base.inverse(a[0]),)

    def normal_unit(self, a):
        return self.embed(self.base.normal_unit(a[-1])) if a else self.one

    def gcd(self, a, b):
        return p_gcd(self.base, a, b)

    def divexact(self, a, b):
        return p_divexact(self.base, a, b)

    @property
    def cover(self):
        base_cover = self.base.cover
        if base_cover is self.base:
            return self
        return PolyRing(base_cover, self.var)

    def lift(self, a):
        return tuple(self.base.lift(c) for c in a)

    def reduce(self, a):
        return p_trim(self.base, [self.base.reduce(c) for c in a])

    def divexact_int(self, a, k):
        return tuple(self.base.divexact_int(c, k) for c in a)

    def terms(self, a):
        """(ground scalar payload, ((var, exp), ...)) pairs, ascending."""
        out = []
        for i, c in enumerate(a):
            inner = self.base.terms(c) if isinstance(self.base, PolyRing) else (
                [] if self.base.is_zero(c) else [(c, ())])
            for scalar, mono in inner:
                out.append((scalar, mono + (((self.var, i),) if i else ())))
        return out

    def ground(self):
        return self.base.ground() if isinstance(self.base, PolyRing) else self.base

    def fmt(self, a):
        ground = self.ground()
        parts = []
        for scalar, mono in self.terms(a):
            s = ground.fmt(scalar)
            m = "".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not m:
                parts.append(s)
            elif s == "1":
                parts.append(m)
            elif s == "-1":
                parts.append("-" + m)
            else:
                parts.append(s + m)
        if not parts:
            return "0"
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out

    def random(self, rng, height=5, degree=1):
        return p_trim(self.base, [self.base.random(rng, height, degree) for _ in range(degree + 1)])


ZZ = Integers()


@dataclass(frozen=True)
class RingValue:
    ring: Ring
    payload: object

    def _other(self, other):
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingValue(self.ring, self.ring.add(self.payload, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingValue(self.ring, self.ring.sub(self.payload, self._other(other)))

    def __rsub__(self, other):
        return RingValue(self.ring, self.ring.sub(self._other(other), self.payload))

    def __mul__(self, other):
        return RingValue(self.ring, self.ring.mul(self.payload, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingValue(self.ring, self.ring.neg(self.payload))

    def __pow__(self, e):
        return RingValue(self.ring, self.ring.pow(self.payload, e))

    def __eq__(self, other):
        if isinstance(other, RingValue):
            return self.ring == other.ring and self.payload == other.payload
        if isinstance(other, int):
            return self.payload == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.payload))

    def __str__(self):
        return self.ring.fmt(self.payload)

    def __repr__(self):
        return f"RingValue({self.ring}, {self})"


_RING_RE = re.compile(r"^(?P<base>Z|ZZ|Z/(?P<m>\d+)|GF\((?P<p>\d+)\)|F(?P<q>\d+))(?P<ext>(\[[a-z]\])*)$")


def parse_ring(selector: str) -> Ring:
    """Parse selectors like ``Z``, ``Z/6``, ``GF(7)``, ``Z[t]``, ``GF(5)[t][s]``."""
    m = _RING_RE.match(selector.replace(" ", ""))
    if not m:
        raise DomainError(f"unknown ring selector {selector!r} (try Z, Z/6, GF(7), Z[t])")
    if m["m"]:
        ring = IntegersMod(int(m["m"]))
    elif m["p"] or m["q"]:
        ring = PrimeField(int(m["p"] or m["q"]))
    else:
        ring = ZZ
    for var in re.findall(r"\[([a-z])\]", m["ext"]):
        ring = PolyRing(ring, var)
    return ring

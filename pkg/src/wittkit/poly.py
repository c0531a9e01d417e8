"""Dense univariate polynomials in the Witt variable r."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RingMismatch
from .rings import (
    Ring,
    RingValue,
    format_poly,
    p_add,
    p_eval,
    p_mul,
    p_neg,
    p_sub,
    p_trim,
)


@dataclass(frozen=True)
class Polynomial:
    """Ascending coefficients; index i holds the coefficient of r^i."""

    ring: Ring
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", p_trim(self.ring, self.coeffs))

    @classmethod
    def of(cls, ring: Ring, values) -> "Polynomial":
        return cls(ring, tuple(ring.coerce(v) for v in values))

    @classmethod
    def one(cls, ring: Ring) -> "Polynomial":
        return cls(ring, (ring.one,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def coefficients(self) -> list[RingValue]:
        return [RingValue(self.ring, c) for c in self.coeffs]

    def coefficient(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero

    @property
    def constant_term(self):
        return self.coefficient(0)

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(f"polynomials over {self.ring} and {other.ring}")
        return other

    def __add__(self, other):
        self._check(other)
        return Polynomial(self.ring, p_add(self.ring, self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return Polynomial(self.ring, p_sub(self.ring, self.coeffs, other.coeffs))

    def __neg__(self):
        return Polynomial(self.ring, p_neg(self.ring, self.coeffs))

    def __mul__(self, other):
        self._check(other)
        return Polynomial(self.ring, p_mul(self.ring, self.coeffs, other.coeffs))

    def __call__(self, x):
        return RingValue(self.ring, p_eval(self.ring, self.coeffs, self.ring.coerce(x)))

    def substitute_r_power(self, n: int) -> "Polynomial":
        R = self.ring
        out = [R.zero] * (n * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * n] = c
        return Polynomial(R, tuple(out))

    def negate_variable(self) -> "Polynomial":
        """r -> -r."""
        R = self.ring
        return Polynomial(R, tuple(c if i % 2 == 0 else R.neg(c) for i, c in enumerate(self.coeffs)))

    def truncate(self, n: int) -> "Polynomial":
        """Drop every term of degree > n."""
        return Polynomial(self.ring, self.coeffs[: n + 1])

    def __str__(self):
        return format_poly(self.ring.fmt, self.coeffs, "r")


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_eval(f: Polynomial, x) -> RingValue:
    return f(x)


def poly_substitute_r_power(f: Polynomial, n: int) -> Polynomial:
    return f.substitute_r_power(n)

"""Real quadratic fields Q(sqrt(m)) and their rings of integers Z + Z*omega."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from math import isqrt

from .exact import QuadraticReal


class NotDivisible(Exception):
    """Raised when an exact quotient does not lie in the ring of integers."""


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, f in enumerate(sieve) if f]


def kronecker_disc(disc: int, p: int) -> int:
    """Kronecker symbol (disc | p) for p prime and disc a fundamental discriminant."""
    if p == 2:
        if disc % 2 == 0:
            return 0
        return 1 if disc % 8 in (1, 7) else -1
    if disc % p == 0:
        return 0
    return 1 if pow(disc % p, (p - 1) // 2, p) == 1 else -1


class QuadField:
    """The field Q(sqrt(m)) for squarefree m >= 2, with O_F = Z + Z*omega."""

    def __init__(self, m: int):
        if m < 2 or not is_squarefree(m):
            raise ValueError(f"m must be squarefree and >= 2, got {m}")
        self.m = m
        self.half = m % 4 == 1  # omega = (1+sqrt(m))/2 vs sqrt(m)
        self.disc = m if self.half else 4 * m

    def __repr__(self):
        return f"QuadField({self.m})"

    def __eq__(self, other):
        return isinstance(other, QuadField) and other.m == self.m

    def __hash__(self):
        return hash(("QuadField", self.m))

    def omega1(self) -> QuadraticReal:
        if self.half:
            return QuadraticReal(Fraction(1, 2), Fraction(1, 2), self.m)
        return QuadraticReal(0, 1, self.m)

    def omega2(self) -> QuadraticReal:
        if self.half:
            return QuadraticReal(Fraction(1, 2), Fraction(-1, 2), self.m)
        return QuadraticReal(0, -1, self.m)

    def element(self, a, b=0) -> "FieldElement":
        return FieldElement(self, Fraction(a), Fraction(b))

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def omega(self) -> "FieldElement":
        return self.element(0, 1)

    def parse(self, text: str) -> "FieldElement":
        """Parse the `a/b,c/d` text form."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad field element literal: {text!r}")
        return self.element(Fraction(parts[0].strip()), Fraction(parts[1].strip()))

    @cached_property
    def _unit_data(self) -> tuple["FieldElement", int]:
        return _fundamental_unit_cf(self)

    @property
    def fundamental_unit(self) -> "FieldElement":
        return self._unit_data[0]

    @property
    def unit_norm(self) -> int:
        return self._unit_data[1]

    @cached_property
    def _unit_inverse(self) -> "FieldElement":
        eps, nrm = self._unit_data
        inv = eps.conj()
        return inv if nrm == 1 else -inv

    def splitting_type(self, p: int) -> str:
        """'inert', 'split' or 'ramified' for the rational prime p."""
        k = kronecker_disc(self.disc, p)
        if k == 0:
            return "ramified"
        return "split" if k == 1 else "inert"


class FieldElement:
    """The element a + b*omega of Q(sqrt(m)), with exact rational coordinates."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: QuadField, a: Fraction, b: Fraction):
        self.field = field
        self.a = a
        self.b = b

    def __repr__(self):
        return f"FieldElement({self.field.m}; {self.a},{self.b})"

    def __str__(self):
        return f"{self.a},{self.b}"

    def _check(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field.m != self.field.m:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        raise TypeError(f"cannot combine FieldElement with {other!r}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return (
            isinstance(other, FieldElement)
            and other.field.m == self.field.m
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self):
        return hash((self.field.m, self.a, self.b))

    def __add__(self, other):
        o = self._check(other)
        return FieldElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        return FieldElement(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b)

    def __mul__(self, other):
        o = self._check(other)
        a, b, c, d = self.a, self.b, o.a, o.b
        m = self.field.m
        bd = b * d
        if self.field.half:
            # omega^2 = omega + (m-1)/4
            return FieldElement(
                self.field, a * c + bd * ((m - 1) // 4), a * d + b * c + bd
            )
        return FieldElement(self.field, a * c + bd * m, a * d + b * c)

    __rmul__ = __mul__

    def conj(self) -> "FieldElement":
        if self.field.half:
            # conj(omega) = 1 - omega
            return FieldElement(self.field, self.a + self.b, -self.b)
        return FieldElement(self.field, self.a, -self.b)

    def norm(self) -> Fraction:
        a, b, m = self.a, self.b, self.field.m
        if self.field.half:
            return a * a + a * b + b * b * Fraction(1 - m, 4)
        return a * a - m * b * b

    def trace(self) -> Fraction:
        return 2 * self.a + self.b if self.field.half else 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero field element")
        c = self.conj()
        return FieldElement(self.field, c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def exact_divide(self, other: "FieldElement") -> "FieldElement":
        """x / other when the quotient is integral; raises NotDivisible otherwise."""
        q = self / other
        if not q.is_integral():
            raise NotDivisible(f"{self} not divisible by {other}")
        return q

    def v1(self) -> QuadraticReal:
        f = self.field
        if f.half:
            return QuadraticReal(self.a + self.b / 2, self.b / 2, f.m)
        return QuadraticReal(self.a, self.b, f.m)

    def v2(self) -> QuadraticReal:
        f = self.field
        if f.half:
            return QuadraticReal(self.a + self.b / 2, -self.b / 2, f.m)
        return QuadraticReal(self.a, -self.b, f.m)

    def embed(self, which: str) -> QuadraticReal:
        if which == "v1":
            return self.v1()
        if which == "v2":
            return self.v2()
        raise ValueError(f"unknown embedding {which!r}")


def _fundamental_unit_cf(field: QuadField) -> tuple[FieldElement, int]:
    """Smallest unit > 1 of O_F, from the continued fraction of (s + sqrt(D))/2.

    The periodic part yields the fundamental automorph; the unit's norm is
    (-1)^period.
    """
    D = field.disc
    sq = isqrt(D)
    P, Q = (1, 2) if D % 2 else (0, 2)
    seen: dict[tuple[int, int], int] = {}
    partials: list[int] = []
    states: list[tuple[int, int]] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(states)
        states.append((P, Q))
        u = P + sq  # floor(P + sqrt(D))
        if Q > 0:
            a = u // Q
        else:
            a = -(u // (-Q) + 1)
        partials.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    i0 = seen[(P, Q)]
    period = len(states) - i0
    # convergents of the periodic part
    p1, p0 = 1, 0
    q1, q0 = 0, 1
    for a in partials[i0:]:
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1
    P0, Q0 = states[i0]
    # eps = q1 * (P0 + sqrt(D))/Q0 + q0, with sqrt(D) = 2*omega - 1 or 2*omega
    if field.half:
        sqrt_d = field.element(-1, 2)
    else:
        sqrt_d = field.element(0, 2)
    y = (field.element(P0) + sqrt_d) * Fraction(1, Q0)
    eps = y * q1 + q0
    nrm = -1 if period % 2 else 1
    assert eps.is_integral() and eps.norm() == nrm
    assert eps.v1().cmp(1) > 0
    return eps, nrm


def canonical_associate(x: FieldElement) -> FieldElement:
    """The associate y = ±eps^k * x with v1(y) in [sqrt(n), sqrt(n)*v1(eps)), v1(y) > 0.

    Membership is decided by comparing v1(y)^2 (exactly, in Q(sqrt(m)))
    against n and n*v1(eps)^2.
    """
    if x.is_zero():
        raise ValueError("zero has no canonical associate")
    if not x.is_integral():
        raise ValueError("canonical associate is defined for integral elements")
    F = x.field
    n = abs(x.norm())
    eps = F.fundamental_unit
    eps_inv = F._unit_inverse
    e1 = eps.v1()
    upper = (e1 * e1) * n

    y = x
    # jump close with a float estimate, then fix up exactly
    try:
        t = abs(float(y.v1()))
        if t > 0:
            k = int(round((math.log(t) - 0.5 * math.log(n)) / math.log(float(e1))))
            if k > 0:
                y = y * _power(eps_inv, k)
            elif k < 0:
                y = y * _power(eps, -k)
    except (OverflowError, ValueError):
        pass
    while (y.v1() * y.v1()).cmp(n) < 0:
        y = y * eps
    while (y.v1() * y.v1()).cmp(upper) >= 0:
        y = y * eps_inv
    if y.v1().sign() < 0:
        y = -y
    return y


def _power(x: FieldElement, k: int) -> FieldElement:
    r = x.field.one
    base = x
    while k:
        if k & 1:
            r = r * base
        base = base * base
        k >>= 1
    return r

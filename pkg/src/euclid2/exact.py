"""Exact arithmetic for real numbers of the form p + q*sqrt(m).

All plane geometry in this package runs on these numbers, so every
predicate (sign, comparison, floor) is decided with integer arithmetic
only -- no square roots are ever extracted.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

Rational = Fraction

LT, EQ, GT = -1, 0, 1


def rational_from_str(s: str) -> Fraction:
    """Parse the `p/q` text form (`/1` omitted for integers)."""
    return Fraction(s.strip())


def rational_to_str(r: Fraction) -> str:
    return str(r)


class QuadraticReal:
    """The real number p + q*sqrt(m), with p, q rational and m squarefree >= 2.

    Values are immutable; arithmetic stays inside Q(sqrt(m)). Equality is
    structural, which is sound because sqrt(m) is irrational.
    """

    __slots__ = ("p", "q", "m")

    def __init__(self, p, q, m: int):
        if m < 2:
            raise ValueError(f"radicand must be >= 2, got {m}")
        object.__setattr__(self, "p", p if type(p) is Fraction else Fraction(p))
        object.__setattr__(self, "q", q if type(q) is Fraction else Fraction(q))
        object.__setattr__(self, "m", m)

    def __setattr__(self, *_):
        raise AttributeError("QuadraticReal is immutable")

    def __repr__(self):
        return f"QuadraticReal({self.p}, {self.q}, {self.m})"

    def __str__(self):
        return f"{self.p} + {self.q}*sqrt({self.m})"

    def _coerce(self, other):
        if isinstance(other, QuadraticReal):
            if other.m != self.m:
                raise ValueError(f"mismatched radicands {self.m} and {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticReal(other, 0, self.m)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticReal(self.p + o.p, self.q + o.q, self.m)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticReal(self.p - o.p, self.q - o.q, self.m)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticReal(o.p - self.p, o.q - self.q, self.m)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticReal(
            self.p * o.p + self.m * self.q * o.q,
            self.p * o.q + self.q * o.p,
            self.m,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QuadraticReal(-self.p, -self.q, self.m)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def half(self) -> "QuadraticReal":
        return QuadraticReal(self.p / 2, self.q / 2, self.m)

    def sign(self) -> int:
        """Exact sign of p + q*sqrt(m): -1, 0 or +1."""
        p, q = self.p, self.q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0:
            return sp
        if sp == 0:
            return sq
        if sp == sq:
            return sp
        # opposite signs: the side with the larger square dominates
        lhs = p.numerator * p.numerator * q.denominator * q.denominator
        rhs = self.m * q.numerator * q.numerator * p.denominator * p.denominator
        if lhs == rhs:  # would force sqrt(m) rational
            raise ArithmeticError(f"p^2 == m*q^2 with p,q nonzero: {self!r}")
        return sp if lhs > rhs else sq

    def cmp(self, other) -> int:
        """-1 / 0 / +1 for < / == / > under the real embedding."""
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadraticReal with {other!r}")
        return (self - o).sign()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        return hash((self.p, self.q, self.m))

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def is_rational(self) -> bool:
        return self.q == 0

    def floor(self) -> int:
        """Exact integer floor."""
        p, q = self.p, self.q
        if q == 0:
            return p.numerator // p.denominator
        w = p.denominator * q.denominator // gcd(p.denominator, q.denominator)
        a = p.numerator * (w // p.denominator)
        b = q.numerator * (w // q.denominator)
        # floor(b*sqrt(m)) is exact: b*sqrt(m) is irrational for b != 0
        r = isqrt(b * b * self.m)
        fb = r if b > 0 else -r - 1
        f = (a + fb) // w
        while self.cmp(f) < 0:
            f -= 1
        while self.cmp(f + 1) >= 0:
            f += 1
        return f

    def ceil(self) -> int:
        return -(-self).floor()

    def __float__(self):
        return float(self.p) + float(self.q) * self.m ** 0.5


def qr_sign(a: QuadraticReal) -> int:
    return a.sign()


def qr_cmp(a: QuadraticReal, b: QuadraticReal) -> int:
    return a.cmp(b)

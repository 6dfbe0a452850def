"""Plane geometry over Q(sqrt(m)): boxes, hyperbolic regions, exact predicates.

A region V(q) for q = [q1, q2] is the open set |Nm(x - q)| < 1/|Nm(q2)|,
bounded by two hyperbolas through the embedded center.  Containment of a
closed box follows from containment of its four corners.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import QuadraticReal
from .field import FieldElement, QuadField


@dataclass(frozen=True)
class Point2:
    x: QuadraticReal
    y: QuadraticReal

    def __post_init__(self):
        if self.x.m != self.y.m:
            raise ValueError("point coordinates with mismatched radicands")


@dataclass(frozen=True)
class Box:
    x0: QuadraticReal
    x1: QuadraticReal
    y0: QuadraticReal
    y1: QuadraticReal

    def __post_init__(self):
        if self.x0.cmp(self.x1) > 0 or self.y0.cmp(self.y1) > 0:
            raise ValueError("box with reversed bounds")

    def corners(self) -> tuple[Point2, Point2, Point2, Point2]:
        return (
            Point2(self.x0, self.y0),
            Point2(self.x1, self.y0),
            Point2(self.x0, self.y1),
            Point2(self.x1, self.y1),
        )

    def subdivide(self) -> tuple["Box", "Box", "Box", "Box"]:
        """Four congruent children: lower-left, lower-right, upper-left, upper-right."""
        mx = (self.x0 + self.x1).half()
        my = (self.y0 + self.y1).half()
        return (
            Box(self.x0, mx, self.y0, my),
            Box(mx, self.x1, self.y0, my),
            Box(self.x0, mx, my, self.y1),
            Box(mx, self.x1, my, self.y1),
        )

    def floats(self) -> tuple[float, float, float, float]:
        return float(self.x0), float(self.x1), float(self.y0), float(self.y1)


def fundamental_box(field: QuadField) -> Box:
    """R0 = [0, 1 + v1(omega)] x [v2(omega), 1], containing the closure of D."""
    one = QuadraticReal(1, 0, field.m)
    zero = QuadraticReal(0, 0, field.m)
    return Box(zero, one + field.omega1(), field.omega2(), one)


class Region:
    """The hyperbolic region V(q) with center q in F and denominator q2.

    q1_base = center - 1/q2 is integral, so the region alone reconstructs
    the length-2 continued fraction [q1_base, q2] it came from.
    """

    __slots__ = ("center", "q2", "n", "q1_base", "_v1c", "_v2c", "_radius")

    def __init__(self, center: FieldElement, q2: FieldElement):
        if q2.is_zero() or not q2.is_integral():
            raise ValueError("region denominator must be integral and nonzero")
        self.center = center
        self.q2 = q2
        self.n = int(abs(q2.norm()))
        q1 = center - q2.inverse()
        if not q1.is_integral():
            raise ValueError("center - 1/q2 is not integral")
        self.q1_base = q1
        self._v1c = center.v1()
        self._v2c = center.v2()
        self._radius = Fraction(1, self.n)

    def __repr__(self):
        return f"Region(center={self.center}, q2={self.q2}, n={self.n})"

    def key(self):
        return (self.center.a, self.center.b, self.q2.a, self.q2.b)

    def contains_point(self, p: Point2) -> bool:
        """Strict test |Nm(p - center)| < 1/n, decided by exact signs."""
        s = (p.x - self._v1c) * (p.y - self._v2c)
        r = QuadraticReal(self._radius, 0, p.x.m)
        return (r - s).sign() > 0 and (r + s).sign() > 0

    def contains_box(self, box: Box) -> bool:
        """All four corners inside implies the whole closed box is."""
        return all(self.contains_point(c) for c in box.corners())

    def contains_field_point(self, x: FieldElement) -> bool:
        """Rational containment test for a point of F (no embeddings needed)."""
        d = x - self.center
        return abs(d.norm()) < self._radius

"""2-stage division chains and continued fractions from a covering certificate."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .certificate import Certificate
from .field import FieldElement, QuadField
from .geometry import Region


class ZeroTail(Exception):
    """A continued-fraction tail evaluated to zero."""

    def __init__(self, index: int):
        super().__init__(f"zero tail at quotient index {index}")
        self.index = index


class LookupFailed(Exception):
    """No certificate region contains the reduced point: invalid certificate."""


@dataclass(frozen=True)
class DivisionStep:
    """One application of a k-stage decreasing chain, k <= 2."""

    stages: tuple[tuple[FieldElement, FieldElement], ...]  # (q_i, r_i)


@dataclass(frozen=True)
class DivisionChain:
    steps: tuple[DivisionStep, ...]

    @property
    def stages(self) -> list[tuple[FieldElement, FieldElement]]:
        return [st for step in self.steps for st in step.stages]

    @property
    def quotients(self) -> list[FieldElement]:
        return [q for q, _ in self.stages]


@dataclass(frozen=True)
class ContinuedFraction:
    quotients: tuple[FieldElement, ...]

    def __str__(self):
        return "[" + "; ".join(str(q) for q in self.quotients) + "]"

    @classmethod
    def parse(cls, field: QuadField, text: str) -> "ContinuedFraction":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"bad continued fraction literal: {text!r}")
        parts = body[1:-1].split(";")
        return cls(tuple(field.parse(p) for p in parts))


class RegionLookup:
    """Certificate regions indexed for point location, largest regions first."""

    def __init__(self, field: QuadField, cert: Certificate):
        if cert.m != field.m:
            raise ValueError(f"certificate is for m={cert.m}, field has m={field.m}")
        self.field = field
        regions = [
            Region(field.element(a, b), field.element(qa, qb))
            for a, b, qa, qb in cert.regions
        ]
        self.regions = sorted(regions, key=lambda r: r.n)
        self._cx = np.array([float(r._v1c) for r in self.regions])
        self._cy = np.array([float(r._v2c) for r in self.regions])
        self._rad = np.array([1.0 / r.n for r in self.regions])

    @classmethod
    def from_certificate(cls, cert: Certificate) -> "RegionLookup":
        return cls(QuadField(cert.m), cert)

    def find(self, x: FieldElement) -> Region | None:
        """First region (in size order) with |Nm(x - center)| < 1/n, or None."""
        fx, fy = float(x.v1()), float(x.v2())
        near = np.abs(fx - self._cx) * np.abs(fy - self._cy) <= self._rad * (1 + 1e-9)
        for i in np.flatnonzero(near):
            if self.regions[i].contains_field_point(x):
                return self.regions[i]
        return None


def reduce_mod_OF(x: FieldElement) -> tuple[FieldElement, FieldElement]:
    """(xbar, gamma) with gamma integral, xbar = x - gamma, coordinates in [0, 1)."""
    ga = x.a.numerator // x.a.denominator
    gb = x.b.numerator // x.b.denominator
    gamma = x.field.element(ga, gb)
    return x - gamma, gamma


def _round_to_zero(f: Fraction) -> int:
    """Nearest integer, ties toward 0."""
    n = f.numerator // f.denominator
    frac = f - n
    if 2 * frac > 1:
        return n + 1
    if 2 * frac < 1:
        return n
    return n if f > 0 else n + 1


def two_stage_step(
    alpha: FieldElement, beta: FieldElement, lookup: RegionLookup
) -> DivisionStep:
    """A k-stage decreasing division step for (alpha, beta), k <= 2.

    Tries the coordinate-rounding 1-stage quotient first; otherwise reduces
    alpha/beta into the fundamental domain and reads the quotient pair off a
    certificate region containing it.
    """
    if beta.is_zero():
        raise ZeroDivisionError("division step with beta = 0")
    field = alpha.field
    x = alpha / beta
    q1s = field.element(_round_to_zero(x.a), _round_to_zero(x.b))
    r1 = alpha - q1s * beta
    nb = abs(beta.norm())
    if abs(r1.norm()) < nb:
        return DivisionStep(((q1s, r1),))

    xbar, gamma = reduce_mod_OF(x)
    region = lookup.find(xbar)
    if region is None:
        # xbar can graze leaf boundaries; nudging by a unit in each coordinate
        # must land inside some open region of a valid certificate
        for da in (0, 1, -1):
            for db in (0, 1, -1):
                shift = field.element(da, db)
                region = lookup.find(xbar + shift)
                if region is not None:
                    gamma = gamma - shift
                    break
            if region is not None:
                break
    if region is None:
        raise LookupFailed(f"no region contains {xbar} (m={field.m})")
    q1 = region.q1_base + gamma
    q2 = region.q2
    r1 = alpha - q1 * beta
    r2 = beta - q2 * r1
    assert abs(r2.norm()) < nb
    return DivisionStep(((q1, r1), (q2, r2)))


def division_chain(
    alpha: FieldElement, beta: FieldElement, lookup: RegionLookup
) -> DivisionChain:
    """Full decreasing division chain ending in remainder 0."""
    if beta.is_zero():
        raise ZeroDivisionError("division chain with beta = 0")
    steps = []
    prev, cur = alpha, beta
    while not cur.is_zero():
        step = two_stage_step(prev, cur, lookup)
        steps.append(step)
        if len(step.stages) == 1:
            prev, cur = cur, step.stages[0][1]
        else:
            prev, cur = step.stages[0][1], step.stages[1][1]
    return DivisionChain(tuple(steps))


def clear_denominators(
    alpha: FieldElement, beta: FieldElement
) -> tuple[FieldElement, FieldElement]:
    """Scale a pair of F-elements to an integral pair with the same quotient."""
    scale = lcm(
        alpha.a.denominator, alpha.b.denominator, beta.a.denominator, beta.b.denominator
    )
    return alpha * scale, beta * scale


def cfrac(
    alpha: FieldElement, beta: FieldElement, lookup: RegionLookup
) -> ContinuedFraction:
    """Continued fraction of alpha/beta with quotients in O_F."""
    chain = division_chain(alpha, beta, lookup)
    return ContinuedFraction(tuple(chain.quotients))


def eval_cf(cf: ContinuedFraction) -> FieldElement:
    """Backward evaluation q_1 + 1/(q_2 + 1/(...))."""
    if not cf.quotients:
        raise ValueError("empty continued fraction")
    t = cf.quotients[-1]
    for i in range(len(cf.quotients) - 2, -1, -1):
        if t.is_zero():
            raise ZeroTail(i + 1)
        t = cf.quotients[i] + t.inverse()
    return t


def verify_chain(
    alpha: FieldElement, beta: FieldElement, chain: DivisionChain
) -> bool:
    """Exact validity check of a division chain for (alpha, beta).

    Verifies every stage identity, the decreasing condition of each k-stage
    step (the final remainder of a step beats its divisor's norm), the zero
    final remainder, and that the quotients evaluate back to alpha/beta.
    """
    if beta.is_zero() or not chain.steps:
        return False
    prev, cur = alpha, beta
    for step in chain.steps:
        if not 1 <= len(step.stages) <= 2:
            return False
        divisor_norm = abs(cur.norm())
        for q, r in step.stages:
            if not (q.is_integral() and r.is_integral()):
                return False
            if r != prev - q * cur:
                return False
            prev, cur = cur, r
        if not abs(cur.norm()) < divisor_norm:
            return False
    if not cur.is_zero():
        return False
    try:
        value = eval_cf(ContinuedFraction(tuple(chain.quotients)))
    except ZeroTail:
        return False
    return value == alpha / beta

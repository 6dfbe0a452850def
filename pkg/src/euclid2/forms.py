"""Indefinite binary quadratic forms: principality tests and generators.

A prime ideal above p corresponds to the form
    f_P(x, y) = Nm(p*x + (omega - r)*y) / p
of discriminant disc(F).  Walking the reduction cycle of f_P while tracking
the GL2(Z) transformation finds a representation of +-1 exactly when the
ideal is principal, and the transformation column then gives a generator
of norm +-p.
"""
from __future__ import annotations

from math import isqrt

from .field import FieldElement, QuadField


def _omega_poly(field: QuadField) -> tuple[int, int]:
    """(trace, norm) of omega."""
    if field.half:
        return 1, (1 - field.m) // 4
    return 0, -field.m


def omega_root_mod_p(field: QuadField, p: int) -> int | None:
    """Smallest root of the minimal polynomial of omega mod p, or None if inert."""
    tr, nm = _omega_poly(field)
    for r in range(p):
        if (r * r - tr * r + nm) % p == 0:
            return r
    return None


def _is_reduced(a: int, b: int, sq: int) -> bool:
    # |sqrt(D) - 2|a|| < b < sqrt(D), in integers (sqrt(D) irrational)
    return 1 <= b <= sq and b + 2 * abs(a) >= sq + 1 and 2 * abs(a) <= b + sq


def _rho(a: int, b: int, c: int, D: int, sq: int) -> tuple[int, int, int, int]:
    """One reduction step (a,b,c) -> (c,b',c'); returns (c, b', c', t)."""
    ac = abs(c)
    if ac > sq:
        lo = -ac + 1  # b' in (-|c|, |c|]
    else:
        lo = sq - 2 * ac + 1  # b' in (sqrt(D) - 2|c|, sqrt(D))
    b2 = lo + (-b - lo) % (2 * ac)
    t = (b + b2) // (2 * c)
    c2 = (b2 * b2 - D) // (4 * c)
    return c, b2, c2, t


def principal_generator_of_prime(field: QuadField, p: int) -> FieldElement | None:
    """A generator of norm +-p of one prime ideal above p, or None.

    Returns None when the prime ideal is not principal.  Requires p to be
    split or ramified in F.
    """
    r = omega_root_mod_p(field, p)
    if r is None:
        raise ValueError(f"{p} is inert in Q(sqrt({field.m}))")
    tr, nm = _omega_poly(field)
    D = field.disc
    sq = isqrt(D)
    a, b, c = p, tr - 2 * r, (nm - r * tr + r * r) // p
    assert b * b - 4 * a * c == D
    # transformation M with f_current = f_0 o M
    m00, m01, m10, m11 = 1, 0, 0, 1

    def gen() -> FieldElement:
        xi = field.element(p * m00 - r * m10, m10)
        assert abs(xi.norm()) == p
        return xi

    first_reduced = None
    for _ in range(8 * (sq + 2) * (len(bin(D)) + 4)):
        if abs(a) == 1:
            return gen()
        if _is_reduced(a, b, sq):
            if first_reduced is None:
                first_reduced = (a, b, c)
            elif (a, b, c) == first_reduced:
                return None  # full cycle walked, +-1 never appeared
        a, b, c, t = _rho(a, b, c, D, sq)
        m00, m01 = m01, -m00 + t * m01
        m10, m11 = m11, -m10 + t * m11
    raise AssertionError(f"form reduction did not cycle for p={p}, m={field.m}")


def class_number_is_one(field: QuadField) -> bool:
    """Rigorous class-number-1 test via the Minkowski bound sqrt(disc)/2.

    Every ideal class contains an ideal of norm <= sqrt(disc)/2; such ideals
    factor into primes of the same bound, so h = 1 iff each non-inert prime
    below the bound is principal.
    """
    from .field import primes_up_to

    D = field.disc
    for p in primes_up_to(isqrt(D // 4)):
        if 4 * p * p > D:
            break
        if field.splitting_type(p) == "inert":
            continue
        if principal_generator_of_prime(field, p) is None:
            return False
    return True

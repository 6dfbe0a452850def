"""Enumeration of ideals of bounded norm with canonical generators."""
from __future__ import annotations

from dataclasses import dataclass

from .field import FieldElement, QuadField, canonical_associate, primes_up_to
from .forms import principal_generator_of_prime


@dataclass(frozen=True)
class IdealGen:
    """A nonzero ideal of O_F, identified by the canonical associate of a generator."""

    generator: FieldElement
    norm: int


def _prime_local_factors(field: QuadField, p: int, N: int) -> list[tuple[int, FieldElement]]:
    """(norm, generator) for every power of the primes above p with norm <= N.

    Includes the trivial factor (1, 1).
    """
    out: list[tuple[int, FieldElement]] = [(1, field.one)]
    st = field.splitting_type(p)
    if st == "inert":
        nrm, g = p * p, field.element(p)
        acc_n, acc_g = nrm, g
        while acc_n <= N:
            out.append((acc_n, acc_g))
            acc_n, acc_g = acc_n * nrm, acc_g * g
        return out
    g = principal_generator_of_prime(field, p)
    if g is None:
        raise ValueError(f"prime {p} above Q(sqrt({field.m})) is not principal (h > 1)")
    if st == "ramified":
        acc_n, acc_g = p, g
        while acc_n <= N:
            out.append((acc_n, acc_g))
            acc_n, acc_g = acc_n * p, acc_g * g
        return out
    # split: both primes above p, all products g^i * conj(g)^j
    gc = g.conj()
    max_e = 0
    q = p
    while q <= N:
        max_e += 1
        q *= p
    pow_g = [field.one]
    pow_gc = [field.one]
    for _ in range(max_e):
        pow_g.append(pow_g[-1] * g)
        pow_gc.append(pow_gc[-1] * gc)
    for i in range(max_e + 1):
        for j in range(max_e + 1 - i):
            if i == j == 0:
                continue
            out.append((p ** (i + j), pow_g[i] * pow_gc[j]))
    return [x for x in out if x[0] <= N]


def ideals_up_to(field: QuadField, N: int) -> list[IdealGen]:
    """One IdealGen per nonzero ideal of norm <= N, sorted by (norm, a, b).

    Ideals are produced by unique factorization into prime ideals, which is
    provably complete; each generator is then reduced to its canonical
    associate so that equal ideals compare equal.
    """
    items: list[tuple[int, FieldElement]] = [(1, field.one)]
    for p in primes_up_to(N):
        if field.splitting_type(p) == "inert" and p * p > N:
            continue
        factors = _prime_local_factors(field, p, N)
        if len(factors) == 1:
            continue
        items = [
            (n * fn, g * fg) for n, g in items for fn, fg in factors if n * fn <= N
        ]
    result = []
    seen = set()
    for n, g in items:
        cg = canonical_associate(g)
        key = (cg.a, cg.b)
        assert key not in seen, f"duplicate ideal generator {cg} for m={field.m}"
        seen.add(key)
        result.append(IdealGen(cg, n))
    result.sort(key=lambda ig: (ig.norm, ig.generator.a, ig.generator.b))
    return result

"""Covering certificates: canonical JSON serialization, independent
verification, and smoothness metrics.

The verifier re-derives everything from m alone and trusts nothing else in
the file; acceptance proves the field 2-stage euclidean.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exact import QuadraticReal
from .field import QuadField, is_squarefree
from .geometry import Region, fundamental_box


class CertificateParseError(Exception):
    pass


@dataclass(frozen=True)
class Certificate:
    m: int
    disc: int
    T: int
    N: int
    # (center_a, center_b, q2_a, q2_b) in the basis {1, omega}
    regions: list[tuple[Fraction, Fraction, Fraction, Fraction]]
    # (quadrant path over {0,1,2,3}, index into regions)
    leaves: list[tuple[str, int]]


@dataclass(frozen=True)
class VerificationReport:
    accepted: bool
    check: int | None = None
    reason: str = ""
    locus: str = ""

    def __str__(self):
        if self.accepted:
            return "accepted"
        return f"rejected at check {self.check}: {self.reason} [{self.locus}]"


@dataclass(frozen=True)
class SmoothnessReport:
    m: int
    disc: int
    max_denominator_norm: int
    region_count: int
    max_depth: int
    ennola_floor: int

    def csv_row(self) -> str:
        return (
            f"{self.m},{self.disc},{self.max_denominator_norm},"
            f"{self.region_count},{self.max_depth},{self.ennola_floor}"
        )

    CSV_HEADER = "m,disc,max_denominator_norm,region_count,max_depth,ennola_floor"


def serialize(cert: Certificate) -> str:
    """Canonical JSON: fixed key order, no whitespace, rationals as `p/q` strings."""
    obj = {
        "m": cert.m,
        "disc": cert.disc,
        "T": cert.T,
        "N": cert.N,
        "regions": [
            {"center": [str(a), str(b)], "q2": [str(qa), str(qb)]}
            for a, b, qa, qb in cert.regions
        ],
        "leaves": [{"path": p, "region": i} for p, i in cert.leaves],
    }
    return json.dumps(obj, separators=(",", ":"))


def deserialize(text: str) -> Certificate:
    """Parse certificate JSON.  Syntax errors raise CertificateParseError;
    semantic violations are left for verify_certificate."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    try:
        regions = [
            (
                Fraction(r["center"][0]),
                Fraction(r["center"][1]),
                Fraction(r["q2"][0]),
                Fraction(r["q2"][1]),
            )
            for r in obj["regions"]
        ]
        leaves = [(str(l["path"]), int(l["region"])) for l in obj["leaves"]]
        return Certificate(
            m=int(obj["m"]),
            disc=int(obj["disc"]),
            T=int(obj["T"]),
            N=int(obj["N"]),
            regions=regions,
            leaves=leaves,
        )
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise CertificateParseError(f"malformed certificate structure: {e}") from e


def _reject(check, reason, locus=""):
    return VerificationReport(False, check, reason, locus)


def verify_certificate(cert: Certificate) -> VerificationReport:
    """Full independent check; shares only the exact-arithmetic primitives
    with the prover, none of the covering search.

    Checks, in order: (1) field data, (2) region well-formedness, (3) the
    leaf paths form a complete prefix-free dyadic partition with indices in
    range, (4) every leaf box is contained in its assigned region.
    """
    # (1) field data
    if cert.m < 2 or not is_squarefree(cert.m):
        return _reject(1, f"m = {cert.m} is not squarefree >= 2", "m")
    field = QuadField(cert.m)
    if cert.disc != field.disc:
        return _reject(1, f"disc {cert.disc} != {field.disc} derived from m", "disc")

    # (2) regions
    regions = []
    for i, (a, b, qa, qb) in enumerate(cert.regions):
        q2 = field.element(qa, qb)
        if q2.is_zero():
            return _reject(2, "q2 = 0", f"region {i}")
        if not q2.is_integral():
            return _reject(2, f"q2 = {q2} not integral", f"region {i}")
        center = field.element(a, b)
        if not (center - q2.inverse()).is_integral():
            return _reject(2, "center - 1/q2 not integral", f"region {i}")
        regions.append(Region(center, q2))

    # (3) leaf structure
    trie: dict = {}
    LEAF = "leaf"
    for p, idx in cert.leaves:
        if not (0 <= idx < len(regions)):
            return _reject(3, f"region index {idx} out of range", f"leaf {p!r}")
        node = trie
        for ch in p:
            if ch not in "0123":
                return _reject(3, f"bad path digit {ch!r}", f"leaf {p!r}")
            if LEAF in node:
                return _reject(3, "leaf is a strict prefix of another", f"leaf {p!r}")
            node = node.setdefault(ch, {})
        if node:
            return _reject(3, "duplicate leaf or prefix conflict", f"leaf {p!r}")
        node[LEAF] = idx
    if not cert.leaves:
        return _reject(3, "no leaves: empty partition", "")

    def check_complete(node, path):
        if LEAF in node:
            return None
        for ch in "0123":
            if ch not in node:
                return f"{path}{ch}"
        for ch in "0123":
            bad = check_complete(node[ch], path + ch)
            if bad is not None:
                return bad
        return None

    missing = check_complete(trie, "")
    if missing is not None:
        return _reject(3, "incomplete partition: missing subtree", f"leaf {missing!r}")

    # (4) geometric containment, in path (= DFS) order
    def walk(node, box, path):
        if LEAF in node:
            if not regions[node[LEAF]].contains_box(box):
                return path
            return None
        children = box.subdivide()
        for digit, ch in enumerate("0123"):
            bad = walk(node[ch], children[digit], path + ch)
            if bad is not None:
                return bad
        return None

    bad = walk(trie, fundamental_box(field), "")
    if bad is not None:
        return _reject(4, "leaf box not contained in its region", f"leaf {bad!r}")
    return VerificationReport(True)


def ennola_floor(disc: int) -> int:
    """Least n not excluded by the Ennola bound: the smallest n with
    disc <= (16 + 6*sqrt(6))^2 * lcm(1..n)^4, compared exactly in Q(sqrt(6))."""
    if disc < 5:
        raise ValueError(f"disc must be >= 5, got {disc}")
    n, t = 1, 1
    while True:
        t = lcm(t, n)
        t4 = t ** 4
        bound = QuadraticReal(472 * t4 - disc, 192 * t4, 6)  # (16+6*sqrt6)^2 = 472+192*sqrt6
        if bound.sign() >= 0:
            return n
        n += 1


def smoothness_report(cert: Certificate) -> SmoothnessReport:
    """Metrics of an accepted certificate; max_denominator_norm is an upper
    bound for the minimal smoothness of the field."""
    field = QuadField(cert.m)
    norms = [abs(field.element(qa, qb).norm()) for _, _, qa, qb in cert.regions]
    used = {i for _, i in cert.leaves}
    return SmoothnessReport(
        m=cert.m,
        disc=cert.disc,
        max_denominator_norm=int(max(norms)) if norms else 0,
        region_count=len(used),
        max_depth=max((len(p) for p, _ in cert.leaves), default=0),
        ennola_floor=ennola_floor(cert.disc),
    )

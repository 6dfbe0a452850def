"""Search for a finite covering of the fundamental box by hyperbolic regions.

Centers are the classes of 1/q2 modulo O_F for denominators q2 of bounded
norm, together with their small integer translates.  A recursive quadtree
subdivision assigns to every leaf box one region that provably contains it;
success yields a certificate of 2-stage euclideanity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .certificate import Certificate
from .exact import QuadraticReal
from .field import FieldElement, QuadField
from .forms import class_number_is_one
from .geometry import Box, Region, fundamental_box
from .ideals import ideals_up_to


class Inconclusive(Exception):
    """The search hit its depth budget.  Not a proof of anything."""

    def __init__(self, path: str):
        super().__init__(f"depth budget exhausted at leaf path {path!r}")
        self.path = path


class ClassNumberNotOne(Exception):
    """The field has class number > 1; the covering search would not terminate."""


@dataclass(frozen=True)
class ScheduleParams:
    """Growth schedule for the translate bound T and the norm bound N."""

    t0: int = 5
    n0: int = 40
    cn: int = 1
    max_depth: int = 64
    skip_class_check: bool = False


def schedule_step(params: ScheduleParams, depth: int) -> tuple[int, int]:
    """(T, N) at a given recursion depth; both tend to infinity when cn > 0."""
    return params.t0 + depth // 2, params.n0 * (1 + depth * params.cn)


@dataclass(frozen=True)
class CenterClass:
    """A class of 1/q2 in F/O_F, with a concrete denominator witness."""

    a: Fraction  # in [0, 1)
    b: Fraction  # in [0, 1)
    q2: FieldElement
    n: int


def _mod1(x: FieldElement) -> FieldElement:
    a = x.a - (x.a.numerator // x.a.denominator)
    b = x.b - (x.b.numerator // x.b.denominator)
    return FieldElement(x.field, a, b)


def compute_QN(field: QuadField, N: int) -> list[CenterClass]:
    """All center classes with denominator norm <= N, sorted by (n, a, b).

    For each ideal generator alpha the valid denominators are exactly the
    associates +-eps^k * alpha, so the classes form the orbit of 1/alpha
    (and of -1/alpha) under multiplication by 1/eps, which is purely
    periodic on the finite group (1/n)O_F / O_F.  Witnesses keep the
    smallest |k| encountered, searching k = 0, 1, -1, 2, -2, ...
    """
    eps = field.fundamental_unit
    eps_inv = field._unit_inverse
    out: dict[tuple[Fraction, Fraction, int], CenterClass] = {}
    for ig in ideals_up_to(field, N):
        alpha, n = ig.generator, ig.norm
        rep = _mod1(alpha.inverse())
        key0 = (rep.a, rep.b)
        orbit = {key0}
        cur = _mod1(rep * eps_inv)
        while (cur.a, cur.b) != key0:
            orbit.add((cur.a, cur.b))
            cur = _mod1(cur * eps_inv)
        period = len(orbit)
        neg = _mod1(-rep)
        target = period if (neg.a, neg.b) in orbit else 2 * period

        found: dict[tuple[Fraction, Fraction], FieldElement] = {}
        fwd_cls, fwd_wit = rep, alpha  # class eps^-k/alpha, witness eps^k*alpha
        bwd_cls, bwd_wit = rep, alpha
        k = 0
        while len(found) < target:
            if k == 0:
                pairs = [(fwd_cls, fwd_wit)]
            else:
                fwd_cls = _mod1(fwd_cls * eps_inv)
                fwd_wit = fwd_wit * eps
                bwd_cls = _mod1(bwd_cls * eps)
                bwd_wit = bwd_wit * eps_inv
                pairs = [(fwd_cls, fwd_wit), (bwd_cls, bwd_wit)]
            for cls, wit in pairs:
                for sgn in (1, -1):
                    c = cls if sgn == 1 else _mod1(-cls)
                    ckey = (c.a, c.b)
                    if ckey not in found:
                        found[ckey] = wit if sgn == 1 else -wit
            k += 1
        for (a, b), q2 in found.items():
            gkey = (a, b, n)
            if gkey not in out:
                out[gkey] = CenterClass(a, b, q2, n)
    return sorted(out.values(), key=lambda c: (c.n, c.a, c.b))


def _strip_halfwidth(n: int) -> Fraction:
    """Least multiple of 1/64 that is >= 1/sqrt(n)."""
    k = isqrt(4096 // n)
    while k * k * n < 4096:
        k += 1
    return Fraction(k, 64)


_STRIP_MARGIN = 1e-6  # float slack; only ever widens the pool, never shrinks it


def _translate_intervals(
    field: QuadField, classes: list[CenterClass], T: int, N: int, R0: Box
) -> list[tuple[int, int, int, int, int, int]]:
    """Records (n, |t|, t, d_lo, d_hi, class index) of integer-offset ranges
    for translates q = class + d + t*omega with |b+t| < T whose x- or
    y-strip (rational half-width >= n^(-1/2)) meets R0.

    The offset ranges use float bounds widened by a small margin, so a
    strip grazing the box edge may be over-included; every candidate is
    still confirmed exactly before use.
    """
    om1f, om2f = float(field.omega1()), float(field.omega2())
    bx0, bx1, by0, by1 = R0.floats()
    recs = []
    for ci, cl in enumerate(classes):
        if cl.n > N:
            continue
        uf = float(_strip_halfwidth(cl.n))
        af = float(cl.a)
        bf = float(cl.b)
        t_lo = -T - (cl.b.numerator // cl.b.denominator)  # conservative ints
        for t in range(t_lo, T + 2):
            bc = cl.b + t
            if not (-T < bc < T):
                continue
            bcf = bf + t
            x0 = om1f * bcf + af
            y0 = om2f * bcf + af
            dx_lo = math.ceil(bx0 - uf - x0 - _STRIP_MARGIN)
            dx_hi = math.floor(bx1 + uf - x0 + _STRIP_MARGIN)
            dy_lo = math.ceil(by0 - uf - y0 - _STRIP_MARGIN)
            dy_hi = math.floor(by1 + uf - y0 + _STRIP_MARGIN)
            ivs = sorted(
                iv for iv in ((dx_lo, dx_hi), (dy_lo, dy_hi)) if iv[0] <= iv[1]
            )
            at = abs(t)
            if len(ivs) == 2 and ivs[1][0] <= ivs[0][1] + 1:  # touching: merge
                ivs = [(ivs[0][0], max(ivs[0][1], ivs[1][1]))]
            for lo, hi in ivs:
                recs.append((cl.n, at, t, lo, hi, ci))
    return recs


class RegionPool:
    """Pool of candidate regions with float centers, ordered big-first by
    (n, |t|, t, d, class position); exact Region objects are built lazily
    (and cached) only for candidates that look accepting."""

    def __init__(
        self, field: QuadField, classes: list[CenterClass], T: int, N: int, R0: Box
    ):
        self.field = field
        self.classes = classes
        recs = _translate_intervals(field, classes, T, N, R0)
        if not recs:
            for name in ("n", "at", "t", "d", "ci"):
                setattr(self, "_" + name, np.empty(0, dtype=np.int64))
            self.cx = self.cy = self.rad = np.empty(0)
            self._cache: dict[int, Region] = {}
            return
        base = np.array(recs, dtype=np.int64)
        counts = base[:, 4] - base[:, 3] + 1
        idx = np.repeat(np.arange(len(base)), counts)
        starts = np.cumsum(counts) - counts
        offs = np.arange(int(counts.sum()), dtype=np.int64) - np.repeat(starts, counts)
        n_, at_, t_, ci_ = (base[idx, k] for k in (0, 1, 2, 5))
        d_ = base[idx, 3] + offs
        order = np.lexsort((ci_, d_, t_, at_, n_))
        self._n, self._at, self._t, self._d, self._ci = (
            a[order] for a in (n_, at_, t_, d_, ci_)
        )
        caf = np.array([float(c.a) for c in classes])
        cbf = np.array([float(c.b) for c in classes])
        av = caf[self._ci] + self._d
        bv = cbf[self._ci] + self._t
        om1f, om2f = float(field.omega1()), float(field.omega2())
        self.cx = av + om1f * bv
        self.cy = av + om2f * bv
        self.rad = 1.0 / self._n
        self._cache = {}

    def __len__(self):
        return len(self._n)

    def entry(self, i: int) -> tuple[int, int, int, int, int]:
        """(n, |t|, t, d, class index) of pool slot i."""
        return tuple(int(a[i]) for a in (self._n, self._at, self._t, self._d, self._ci))

    def region(self, i: int) -> Region:
        r = self._cache.get(i)
        if r is None:
            t, d, ci = int(self._t[i]), int(self._d[i]), int(self._ci[i])
            cl = self.classes[ci]
            r = Region(self.field.element(cl.a + d, cl.b + t), cl.q2)
            self._cache[i] = r
        return r


def expand_translates(
    field: QuadField,
    classes: list[CenterClass],
    T: int,
    N: int,
    R0: Box,
) -> list[Region]:
    """All pool regions, fully materialized, ordered big-first
    by (n, |t|, t, d, class position)."""
    pool = RegionPool(field, classes, T, N, R0)
    return [pool.region(i) for i in range(len(pool))]


class _Search:
    """Global state of the recursive covering search (sequential reference run)."""

    def __init__(self, field: QuadField, params: ScheduleParams):
        self.field = field
        self.params = params
        self.R0 = fundamental_box(field)
        self.T, self.N = schedule_step(params, 0)
        self.classes = compute_QN(field, self.N)
        self.generation = 0
        self._build_pool()
        self.Z: list[Region] = []
        self._zindex: dict[tuple, int] = {}
        self.leaves: list[tuple[str, int]] = []

    def _build_pool(self):
        self.pool = RegionPool(self.field, self.classes, self.T, self.N, self.R0)
        self.cx = self.pool.cx
        self.cy = self.pool.cy
        self.rad = self.pool.rad
        self.generation += 1

    def _grow(self, depth: int):
        T2, N2 = schedule_step(self.params, depth)
        if T2 <= self.T and N2 <= self.N:
            return
        if N2 > self.N:
            self.classes = compute_QN(self.field, N2)
        self.T = max(self.T, T2)
        self.N = max(self.N, N2)
        self._build_pool()

    def _candidates(self, idx: np.ndarray, box: Box) -> np.ndarray:
        """Keep regions that contain at least one point of the box (float filter,
        conservative margin: only clearly disjoint regions are dropped)."""
        bx0, bx1, by0, by1 = box.floats()
        cx, cy = self.cx[idx], self.cy[idx]
        mindx = np.maximum(0.0, np.maximum(bx0 - cx, cx - bx1))
        mindy = np.maximum(0.0, np.maximum(by0 - cy, cy - by1))
        return idx[mindx * mindy <= self.rad[idx] * (1.0 + 1e-9)]

    def _record(self, path: str, region: Region):
        key = region.key()
        i = self._zindex.get(key)
        if i is None:
            i = len(self.Z)
            self.Z.append(region)
            self._zindex[key] = i
        self.leaves.append((path, i))

    def solve(self, box: Box, path: str, cand: np.ndarray | None, gen: int):
        if gen != self.generation or cand is None:
            cand = self._candidates(np.arange(len(self.pool)), box)
            gen = self.generation
        # accept if some pooled region contains the whole box; first in pool order wins
        bx0, bx1, by0, by1 = box.floats()
        cx, cy = self.cx[cand], self.cy[cand]
        maxdx = np.maximum(np.abs(bx0 - cx), np.abs(bx1 - cx))
        maxdy = np.maximum(np.abs(by0 - cy), np.abs(by1 - cy))
        for i in cand[maxdx * maxdy <= self.rad[cand] * (1.0 + 1e-9)]:
            region = self.pool.region(i)
            if region.contains_box(box):
                self._record(path, region)
                return
        depth = len(path)
        if depth >= self.params.max_depth:
            raise Inconclusive(path)
        self._grow(depth + 1)
        for digit, child in enumerate(box.subdivide()):
            if gen != self.generation:  # pool rebuilt since cand was computed
                cand = self._candidates(np.arange(len(self.pool)), box)
                gen = self.generation
            self.solve(child, path + str(digit), self._candidates(cand, child), gen)


def prove(field: QuadField, params: ScheduleParams | None = None) -> Certificate:
    """Run the covering search; return a verifiable certificate on success.

    Raises ClassNumberNotOne when h(F) != 1 (unless the check is skipped)
    and Inconclusive when the depth budget runs out.
    """
    params = params or ScheduleParams()
    if not params.skip_class_check and not class_number_is_one(field):
        raise ClassNumberNotOne(f"Q(sqrt({field.m})) has class number > 1")
    search = _Search(field, params)
    search.solve(search.R0, "", None, -1)
    regions = [(r.center.a, r.center.b, r.q2.a, r.q2.b) for r in search.Z]
    return Certificate(
        m=field.m,
        disc=field.disc,
        T=search.T,
        N=search.N,
        regions=regions,
        leaves=list(search.leaves),
    )

"""Command-line interface: prove, verify, cfrac, survey, smoothness-bound."""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from math import lcm

from . import certificate as cert_mod
from .certificate import (
    Certificate,
    CertificateParseError,
    deserialize,
    ennola_floor,
    serialize,
    smoothness_report,
    verify_certificate,
)
from .chains import RegionLookup, cfrac, clear_denominators, division_chain, verify_chain
from .covering import ClassNumberNotOne, Inconclusive, ScheduleParams, prove
from .field import QuadField, is_squarefree, primes_up_to

SURVEY_HEADER = (
    "m,disc,status,max_denominator_norm,region_count,max_depth,"
    "wall_time_ms,inert_small_primes"
)


def _schedule_from_args(args) -> ScheduleParams:
    return ScheduleParams(
        t0=args.t0,
        n0=args.n0,
        cn=args.cn,
        max_depth=args.max_depth,
        skip_class_check=args.skip_class_check,
    )


def _add_prover_flags(p: argparse.ArgumentParser):
    p.add_argument("--t0", type=int, default=5, help="initial translate bound T")
    p.add_argument("--n0", type=int, default=40, help="initial denominator norm bound N")
    p.add_argument("--cn", type=int, default=1, help="N growth rate per depth (0 freezes N)")
    p.add_argument("--max-depth", type=int, default=64, help="recursion depth cap")
    p.add_argument("--skip-class-check", action="store_true")


def cmd_prove(args) -> int:
    if args.m < 2 or not is_squarefree(args.m):
        print(f"m = {args.m} is not squarefree >= 2", file=sys.stderr)
        return 4
    field = QuadField(args.m)
    try:
        cert = prove(field, _schedule_from_args(args))
    except ClassNumberNotOne as e:
        print(str(e), file=sys.stderr)
        return 3
    except Inconclusive as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(serialize(cert))
    print(smoothness_report(cert).csv_row())
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.path) as fh:
            cert = deserialize(fh.read())
    except (OSError, CertificateParseError) as e:
        print(f"cannot read certificate: {e}", file=sys.stderr)
        return 5
    report = verify_certificate(cert)
    print(str(report))
    return 0 if report.accepted else 1


def cmd_cfrac(args) -> int:
    try:
        with open(args.cert) as fh:
            cert = deserialize(fh.read())
    except (OSError, CertificateParseError) as e:
        print(f"cannot read certificate: {e}", file=sys.stderr)
        return 5
    if args.m is not None and args.m != cert.m:
        print(f"certificate is for m={cert.m}, requested m={args.m}", file=sys.stderr)
        return 6
    field = QuadField(cert.m)
    try:
        num = field.parse(args.num)
        den = field.parse(args.den)
    except ValueError as e:
        print(f"bad element literal: {e}", file=sys.stderr)
        return 4
    if den.is_zero():
        print("zero denominator", file=sys.stderr)
        return 4
    num, den = clear_denominators(num, den)
    lookup = RegionLookup(field, cert)
    chain = division_chain(num, den, lookup)
    from .chains import ContinuedFraction

    cf = ContinuedFraction(tuple(chain.quotients))
    print(str(cf))
    if args.verify:
        from .chains import eval_cf

        print(str(eval_cf(cf)))
        print("chain-ok" if verify_chain(num, den, chain) else "chain-INVALID")
    return 0


@dataclass
class SurveyRow:
    m: int
    disc: int
    status: str
    max_denominator_norm: int | None
    region_count: int | None
    max_depth: int | None
    wall_time_ms: int
    inert_small_primes: list[int]

    def csv_row(self) -> str:
        opt = lambda v: "" if v is None else str(v)
        inert = ";".join(str(p) for p in self.inert_small_primes)
        return (
            f"{self.m},{self.disc},{self.status},{opt(self.max_denominator_norm)},"
            f"{opt(self.region_count)},{opt(self.max_depth)},{self.wall_time_ms},{inert}"
        )


def survey_field(m: int, params: ScheduleParams) -> SurveyRow:
    field = QuadField(m)
    inert = [p for p in primes_up_to(19) if field.splitting_type(p) == "inert"]
    t0 = time.monotonic()
    try:
        cert = prove(field, params)
        report = verify_certificate(cert)
        assert report.accepted, f"prover output rejected for m={m}: {report}"
        sm = smoothness_report(cert)
        row = SurveyRow(
            m, field.disc, "proved", sm.max_denominator_norm, sm.region_count,
            sm.max_depth, 0, inert,
        )
    except ClassNumberNotOne:
        row = SurveyRow(m, field.disc, "class_number_not_one", None, None, None, 0, inert)
    except Inconclusive:
        row = SurveyRow(m, field.disc, "inconclusive", None, None, None, 0, inert)
    row.wall_time_ms = int(1000 * (time.monotonic() - t0))
    return row


def _survey_worker(job):
    m, params = job
    return survey_field(m, params)


def survey_fields(max_disc: int) -> list[int]:
    """Squarefree m with disc < max_disc, sorted by discriminant."""
    ms = []
    for m in range(2, max_disc):
        if not is_squarefree(m):
            continue
        disc = m if m % 4 == 1 else 4 * m
        if disc < max_disc:
            ms.append((disc, m))
    return [m for _, m in sorted(ms)]


def cmd_survey(args) -> int:
    params = _schedule_from_args(args)
    ms = survey_fields(args.max_disc)
    skipped = [m for m in range(2, args.max_disc) if not is_squarefree(m)]
    if skipped:
        print(f"skipping non-squarefree m: {len(skipped)} values", file=sys.stderr)
    if args.jobs > 1:
        import multiprocessing as mp

        with mp.Pool(args.jobs) as pool:
            rows = pool.map(_survey_worker, [(m, params) for m in ms])
    else:
        rows = [survey_field(m, params) for m in ms]
    lines = [SURVEY_HEADER] + [r.csv_row() for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        _write_svg(args.svg, rows)
    ok = all(r.status == "proved" for r in rows if r.status != "class_number_not_one")
    return 0 if ok else 2


def _write_svg(path: str, rows: list[SurveyRow]):
    """Fixed-layout scatter of max denominator norm against discriminant."""
    pts = [(r.disc, r.max_denominator_norm) for r in rows if r.status == "proved"]
    w, h, margin = 640, 480, 50
    if pts:
        xmax = max(p[0] for p in pts)
        ymax = max(max(p[1] for p in pts), 1)
    else:
        xmax = ymax = 1
    sx = (w - 2 * margin) / xmax
    sy = (h - 2 * margin) / ymax
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<line x1="{margin}" y1="{h - margin}" x2="{w - margin}" y2="{h - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{h - margin}" stroke="black"/>',
        f'<text x="{w // 2}" y="{h - 10}" text-anchor="middle">discriminant</text>',
        f'<text x="15" y="{h // 2}" transform="rotate(-90 15 {h // 2})" text-anchor="middle">max denominator norm</text>',
    ]
    for x, y in pts:
        px = margin + x * sx
        py = h - margin - y * sy
        parts.append(f'<circle cx="{px:.1f}" cy="{py:.1f}" r="3" fill="steelblue"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


def cmd_smoothness_bound(args) -> int:
    if args.disc < 5:
        print(f"disc must be >= 5, got {args.disc}", file=sys.stderr)
        return 4
    print(ennola_floor(args.disc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="euclid2",
        description="Prove real quadratic fields 2-stage euclidean and compute "
        "continued fractions from the resulting covering certificates.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="prove 2-stage euclideanity, emit a certificate")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", help="certificate output path (.e2cert.json)")
    _add_prover_flags(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="independently verify a certificate file")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cfrac", help="continued fraction of num/den via a certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--num", required=True, help="element literal a/b,c/d")
    p.add_argument("--den", required=True, help="element literal a/b,c/d")
    p.add_argument("--m", type=int, default=None, help="expected field (mismatch -> exit 6)")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_cfrac)

    p = sub.add_parser("survey", help="prove every field below a discriminant bound")
    p.add_argument("--max-disc", type=int, required=True)
    p.add_argument("--out", help="CSV output path (stdout when omitted)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--svg", help="also emit a scatter plot to this path")
    _add_prover_flags(p)
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("smoothness-bound", help="Ennola exclusion floor for a discriminant")
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(func=cmd_smoothness_bound)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

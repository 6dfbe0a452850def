"""Exact proofs that real quadratic fields are 2-stage euclidean.

The prover covers a bounding box of the fundamental domain with hyperbolic
regions attached to small-norm denominators; the resulting certificate is
independently verifiable and drives continued-fraction computation.
"""
from .certificate import (
    Certificate,
    CertificateParseError,
    SmoothnessReport,
    VerificationReport,
    deserialize,
    ennola_floor,
    serialize,
    smoothness_report,
    verify_certificate,
)
from .chains import (
    ContinuedFraction,
    DivisionChain,
    DivisionStep,
    RegionLookup,
    ZeroTail,
    cfrac,
    clear_denominators,
    division_chain,
    eval_cf,
    two_stage_step,
    verify_chain,
)
from .covering import (
    CenterClass,
    ClassNumberNotOne,
    Inconclusive,
    ScheduleParams,
    compute_QN,
    expand_translates,
    prove,
    schedule_step,
)
from .exact import QuadraticReal
from .field import FieldElement, NotDivisible, QuadField, canonical_associate, is_squarefree
from .forms import class_number_is_one, principal_generator_of_prime
from .geometry import Box, Point2, Region, fundamental_box
from .ideals import IdealGen, ideals_up_to

__all__ = [
    "Box",
    "CenterClass",
    "Certificate",
    "CertificateParseError",
    "ClassNumberNotOne",
    "ContinuedFraction",
    "DivisionChain",
    "DivisionStep",
    "FieldElement",
    "IdealGen",
    "Inconclusive",
    "NotDivisible",
    "Point2",
    "QuadField",
    "QuadraticReal",
    "Region",
    "RegionLookup",
    "ScheduleParams",
    "SmoothnessReport",
    "VerificationReport",
    "ZeroTail",
    "canonical_associate",
    "cfrac",
    "class_number_is_one",
    "clear_denominators",
    "compute_QN",
    "deserialize",
    "division_chain",
    "ennola_floor",
    "eval_cf",
    "expand_translates",
    "fundamental_box",
    "ideals_up_to",
    "is_squarefree",
    "principal_generator_of_prime",
    "prove",
    "schedule_step",
    "serialize",
    "smoothness_report",
    "two_stage_step",
    "verify_certificate",
    "verify_chain",
]

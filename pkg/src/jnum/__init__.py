"""Exact computation of jumping numbers from log resolution data."""
from .effectivity import (
    EFFECTIVE,
    NOT_EFFECTIVE,
    UNKNOWN,
    Decision,
    EffectivityOracle,
    Inequality,
    cone_member,
    decide_effective,
)
from .errors import *  # noqa: F401,F403
from .jumping import (
    CERTIFIED_JUMPING,
    CERTIFIED_NOT_JUMPING,
    UNDETERMINED,
    CertificationStatus,
    SupercandidateRecord,
    brute_scan,
    candidates,
    certify,
    contribution_class,
    extend_by_periodicity,
    is_candidate_for,
    lct,
    next_supercandidate,
    supercandidates,
)
from .model import (
    Divisor,
    ExceptionalGeometry,
    PrimeDivisorEntry,
    QDivisor,
    ResolutionData,
    from_intersection_matrix,
    make_example2,
    parse_resolution,
    restrict,
    twist_divisor,
    validate,
)
from .unloading import UnloadTrace, antieffective_closure, is_antieffective

__version__ = "0.1.0"

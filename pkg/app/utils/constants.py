"""Constants and enumerations shared across modules."""

from enum import Enum


class OrderTag(str, Enum):
    """Closed-form order classes of unit-norm elements."""

    SQ_ID = "sq_id"  # x^2 = e
    SQ_NEG = "sq_neg"  # x^2 = -e
    CUBE_ID = "cube_id"  # x^3 = e
    CUBE_NEG = "cube_neg"  # x^3 = -e
    OTHER = "other"


class GroupTag(str, Enum):
    """Isomorphism types recognized for small generated groups."""

    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    V4 = "V4"
    S3 = "S3"
    C6 = "C6"
    A4 = "A4"
    OTHER = "other"


class Provenance(str, Enum):
    """How an automorphism was constructed."""

    DIAG = "diag"
    PERM = "perm"
    SWITCH = "switch"
    CONJ = "conj"
    PSI = "psi"
    COMPOSITE = "composite"
    IDENTITY = "identity"


class CheckStatus(str, Enum):
    """Outcome of a verification check."""

    PASS = "pass"
    FAIL = "fail"


SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# Orders with exhaustive pair audits; larger fields are sampled.
EXHAUSTIVE_ORDERS = (2, 3)

MAIN_THEOREM_ORDER = 2

# Frozen regression constants for q = 2 (first brute-force run).
LOOP_ORDER_Q2 = 120
ORDER_CENSUS_Q2 = {1: 1, 2: 63, 3: 56}
G2_2_ORDER = 12096

MAX_WITNESSES = 10

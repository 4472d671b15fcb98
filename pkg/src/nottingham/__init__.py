"""Wild automorphisms of F_p((X)): ramification numbers of truncated power
series and the polynomial criteria for b-ramification."""

from .criterion import (
    CriterionResult,
    closed_form_Am_Bm_Cm,
    closed_form_b3,
    closed_form_D,
    coefficient_vector,
    conjecture_harness,
    recurrence_matrix,
    scalar_recurrence,
    verify_lemmas,
)
from .crtlift import LiftReport, lift_Pb
from .errors import (
    BadPrime,
    DomainMismatch,
    EmptyPrimeList,
    ExponentOverflow,
    InsufficientPrecision,
    ModulusMismatch,
    NonzeroConstantTerm,
    NotApplicable,
    NotNottingham,
    NottinghamError,
    PrecisionOverflow,
    TermCapExceeded,
    ZeroInverse,
)
from .field import FpElement, inv
from .multipoly import Domain, MultiPoly, fermat_normalize
from .ramify import (
    RamificationReport,
    check_keating,
    check_laubie_saine_divisible,
    check_sen,
    criterion_b3,
    is_b_ramified_numeric,
    ramification_report,
    required_precision,
)
from .series import (
    TruncatedZero,
    TruncSeries,
    compose,
    delta_step,
    iterate,
    ramification,
    ramification_number,
    valuation,
)

__version__ = "0.1.0"

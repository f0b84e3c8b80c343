"""Logarithmic solutions of A-hypergeometric systems with parameter 0 and
exact checks of the integrality of their exponentials."""
from .config import (
    AConfiguration,
    OrthantRelationSet,
    Relation,
    enumerate_orthant,
    kernel_basis,
    load_configuration,
    relations_in_box,
    validate_configuration,
)
from .congruence import MultiIndex, check_prop31, check_prop32, multinomial, scan_congruences
from .corpus import corpus, corpus_config
from .errors import (
    BadConfiguration,
    BudgetExceeded,
    GradingMismatch,
    InsufficientTruncation,
    NonzeroConstantTerm,
    NotPointed,
    NotPrime,
    NoUnitForm,
)
from .geometry import (
    NonPointedWitness,
    PointednessCertificate,
    common_grading,
    duplicate_vector_check,
    pointedness_certificate,
)
from .integrality import (
    IntegralityReport,
    dwork_criterion,
    exp_integrality,
    mirror_coordinate,
    mirror_map,
    verify_congruence_4_3_to_4_8,
)
from .report import Report
from .seriesring import (
    ConeSeries,
    LogSeries,
    apply_box,
    apply_derivation,
    exp_series,
    inverse,
    p_valuation,
    substitute_power,
)
from .solutions import GkSeries, build_gk, build_log_solution, check_box, check_euler, log_solution

__version__ = "0.1.0"

"""Multiplicative functions with bounded von Mangoldt coefficients.

Sieved tables of multiplicative functions, their Dirichlet series on the
line Re(s) = 1, the zeros found there, and a numerical harness for the
structure of functions whose partial sums are small.
"""

from .analytic import (
    GammaMultiset,
    LEvaluation,
    SeriesEvaluationConfig,
    ZeroScanReport,
    build_gamma_multiset,
    choose_truncation,
    eval_G,
    eval_L_derivative,
    log_density_sum,
    multiplicity_at,
    scan_zeros,
)
from .catalog import CatalogEntry, parse
from .core import (
    LambdaTable,
    Mode,
    MultFnTable,
    PrimePowerSpec,
    RealMultiset,
    check_class_membership,
    dirichlet_convolve,
    dirichlet_inverse,
    f_from_lambda,
    generalized_von_mangoldt,
    lambda_from_f,
    partial_sums,
    sieve_from_spec,
    tau_multiset,
)
from .lattice import ANQuery, a_n_value
from .perron import PerronConfig, perron_check
from .pipeline import Analysis, analyze
from .verify import (
    VerificationReport,
    brun_titchmarsh_check,
    coefficient_bound_check,
    compensated_prime_sum,
    hyperbola_f_gamma_sums,
    mean_value_G,
    multiplicity_inequality_check,
    special_case_check,
    theorem_report,
)

__version__ = "0.1.0"

"""Dyadic-grid Haar analysis toolkit.

Grid functions on [0,1]^2, their exact 2D Haar spectra, mixed-metric
Lebesgue norms, rectangle-maximal net norms and weighted level-sup
coefficient norms, plus a verification harness for the two-sided
equivalences between them.
"""

from .grid import (
    FamilySpec,
    GridFunction1,
    GridFunction2,
    SummedAreaTable,
    build_sat,
    generate,
    is_monotone_nonincreasing,
    parse_family_spec,
    random_monotone_1d,
    rect_integral,
)
from .norms import (
    ExponentPair,
    NetMaximalTable,
    NormReport,
    compute_norm_report,
    lemma1_rhs,
    lp_norm_1d,
    mixed_lp_norm,
    net_maximal,
    net_norm,
    net_norm_from_table,
    parse_exponent,
    rearrangement,
    seq_norm,
    seq_norm_1d,
)
from .transform import (
    HaarSpectrum1,
    HaarSpectrum2,
    haar_forward_1d,
    haar_forward_2d,
    partial_sum,
    spectrum_records,
    sup_per_level,
)
from .verify import (
    CheckResult,
    RatioRecord,
    SweepConfig,
    VerificationReport,
    check_counterexample_nonmonotone,
    check_endpoint_coeff_bound,
    check_endpoint_partial_sum_bound,
    check_lemma1,
    check_theorem1,
    check_theorem2,
    check_ulyanov_1d,
    parse_sweep_config,
    random_spectrum,
    run_sweep,
)

__version__ = "0.1.0"

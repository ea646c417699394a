"""Exact spectral and discrepancy analysis for substitutions on infinite alphabets."""

from .errors import ComputationError, PrecisionError, SubdiscError
from .hpreal import HPReal, decimal_str
from .polynomials import (
    ComplexEnclosure,
    IntPolynomial,
    factor_integer_poly,
    isolate_real_roots,
    refine_root,
    root_enclosures,
)
from .sequences import (
    CountVector,
    EventuallyConstantSeq,
    abelian_step,
    build_sequence,
    count_series,
    letter_histogram,
    substitute,
    supertile,
    tile_count,
)
from .spectral import (
    RootInfo,
    SpectralData,
    classify_roots,
    find_rational_left_eigenvector,
    left_eigenvector_check,
    min_poly_lambda,
    mu_polynomial,
    mu_value,
    spectral_data,
)
from .discrepancy import (
    CheckReport,
    DiscrepancySeries,
    allones_explicit_d,
    catalan,
    catalan_series,
    discrepancy_series,
    exact_pairing,
    policy_bits,
    verify_catalan_identity,
)
from .twist import (
    CatalanCombo,
    GrowthRate,
    StabilizingVector,
    TwistReport,
    catalan_combo,
    e_vector,
    find_R,
    find_g,
    growth_exponent,
    pairing_with_geometric,
    reduce_mod_E,
    row_step,
    verify_twist_recurrence,
    x_a,
)
from .experiments import (
    FitResult,
    ResidualSeries,
    approx_eigen_residual,
    bde_report,
    emit_figure_csv,
    estimate_coefficient,
    estimate_coefficient_at_two,
    figure_csv_text,
    figure_rows,
    fit_exponent,
    residual_series,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

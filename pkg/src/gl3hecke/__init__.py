"""Coefficient calculus, equidistribution measures, and sign statistics for
degree-three Hecke eigenvalue data."""

from .hecke import (
    CoefficientTable,
    ExponentPair,
    GL2FormData,
    IndexBoundsError,
    MissingPrimeError,
    NonTemperedError,
    PrimeLocalData,
    SatakeTriple,
    coeff_from_satake,
    extend_multiplicative,
    hecke_residual,
    mobius_expand,
    schur_eval,
    sym2_lift,
)
from .klpoly import (
    QPolynomial,
    Weight,
    hw_weight,
    kato_check,
    kostant_partition,
    lusztig_q_analog,
)
from .measures import (
    EnvelopeError,
    MeasureSpec,
    PoleError,
    QuadratureError,
    QuadratureGrid,
    SpectralPoint,
    TorusPoint,
    WeightParams,
    density,
    h_T_eval,
    integrate,
    sample,
    spec_density,
    weyl_poincare,
)
from .schuralg import (
    EPoly,
    WInvariantLaurent,
    bernstein_approx,
    bernstein_coeffs,
    bernstein_rate_diagnostic,
    effective_st_compare,
    expand_in_schur,
    schur_to_epoly,
)
from .signstats import (
    RealSequence,
    ShortIntervalConfig,
    SignChangeReport,
    count_sign_changes,
    interval_change_scan,
    nonvanishing_density,
    partial_sum_abs,
    short_interval_sums,
    sign_balance,
)
from .dirichlet import (
    DirichletPolynomial,
    build_MKD,
    dirichlet_eval,
    euler_factor_check,
    mvt_ratio,
)
from .tau import ramanujan_tau

__version__ = "0.1.0"

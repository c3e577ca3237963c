"""Numerical laboratory for the Selberg integral distribution, lognormal
multiplicative chaos, and mesoscopic statistics of Riemann zeros."""

from .chaos import FieldEnsemble, FieldGridSpec, build_covariance, sample_field
from .mellin import (
    BarnesBetaParams,
    DecompositionFactors,
    LevyKhinchineData,
    MellinQuery,
    asymptotic_log_M,
    barnes_beta_lk_log,
    barnes_beta_mellin,
    decomposition_factors,
    decomposition_mellin,
    default_density_grid,
    density_by_inversion,
    fit_levy_drift,
    frechet_mellin,
    functional_equation_residuals,
    levy_density,
    lk_log_mellin,
    lk_spectral,
    mellin_M,
    mellin_product,
    mellin_transform,
    sample_distribution,
)
from .selberg import (
    ChaosParams,
    IntegralSpec,
    mass_moment_neg,
    mass_moment_pos,
    multiscaling_exponent,
    selberg_closed,
    selberg_oracle,
    selberg_quadrature_2d,
)
from .specfun import (
    DoubleGammaContext,
    bernoulli_number,
    bernoulli_poly,
    digamma,
    hurwitz_zeta,
    log_double_gamma,
    log_gamma,
)
from .zeros import (
    BumpProfile,
    StatisticConfig,
    ZeroTable,
    bkr_statistic,
    empirical_field,
    exp_functional_moment,
    load_zeros,
    make_bump,
    predicted_cov,
    scalar_product,
    smoothed_indicator,
)

__version__ = "0.1.0"

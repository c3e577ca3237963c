"""The Selberg integral distribution.

Two independent evaluation routes for its Mellin transform M(q | mu, l1, l2)
(a four-ratio double-gamma form and an infinite gamma-ratio product with an
analytic tail correction), its two functional equations, the small-mu
asymptotic expansion of log M, the Barnes beta building blocks with their
Levy-Khinchine representation, the lognormal x Frechet x inverse-beta product
decomposition, a density by numerical Mellin inversion, and an exact-in-law
sampler.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.special as sc
from scipy.integrate import quad

from .selberg import ChaosParams
from .specfun import (
    LOG_2PI,
    DomainError,
    DoubleGammaContext,
    bernoulli_number,
    bernoulli_poly,
    hurwitz_zeta,
    log_double_gamma,
)

__all__ = [
    "MellinQuery",
    "BarnesBetaParams",
    "DecompositionFactors",
    "LevyKhinchineData",
    "QuadratureError",
    "InversionError",
    "mellin_M",
    "mellin_transform",
    "mellin_product",
    "functional_equation_residuals",
    "barnes_beta_mellin",
    "barnes_beta_lk_log",
    "frechet_mellin",
    "decomposition_factors",
    "decomposition_mellin",
    "asymptotic_log_M",
    "levy_density",
    "lk_spectral",
    "lk_spectral_tail_mass",
    "fit_levy_drift",
    "lk_log_mellin",
    "default_density_grid",
    "density_by_inversion",
    "sample_distribution",
]

LOG2 = float(np.log(2.0))
ASYMPTOTIC_MAX_ORDER = 12


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge."""


class InversionError(RuntimeError):
    """Mellin inversion produced an invalid density."""


@dataclass(frozen=True)
class MellinQuery:
    """A point evaluation request for the Mellin transform."""

    q: complex
    params: ChaosParams
    route: str = "double-gamma"
    product_terms: int = 64
    acceleration_order: int = 12

    def __post_init__(self):
        if self.route not in ("double-gamma", "gamma-product"):
            raise DomainError(f"unknown route {self.route!r}")
        if self.product_terms < 8:
            raise DomainError("product_terms must be at least 8")
        if self.acceleration_order < 0:
            raise DomainError("acceleration_order must be nonnegative")
        if not np.real(self.q) < self.params.tau:
            raise DomainError(
                f"Re(q) = {np.real(self.q)} outside the strip Re(q) < tau = {self.params.tau}"
            )


@dataclass(frozen=True)
class BarnesBetaParams:
    """Type (2,2) Barnes beta parameter triple on modulus tau."""

    tau: float
    b0: float
    b1: float
    b2: float

    def __post_init__(self):
        if not self.tau > 0:
            raise DomainError("tau must be positive")
        if not self.b0 > 0:
            raise DomainError("b0 must be positive")
        if self.b1 < 0 or self.b2 < 0:
            raise DomainError("b1, b2 must be nonnegative (0 degenerates to the constant 1)")

    @property
    def degenerate(self) -> bool:
        return self.b1 == 0.0 or self.b2 == 0.0


def _check_strip(q, tau: float) -> None:
    if np.any(np.real(np.asarray(q)) >= tau):
        raise DomainError(f"Re(q) must be below tau = {tau}")


# ---------------------------------------------------------------------------
# route 1: double gamma ratios
# ---------------------------------------------------------------------------

def mellin_transform(q, p: ChaosParams, ctx: DoubleGammaContext | None = None):
    """Mellin transform of the distribution at complex q, Re(q) < tau.

    Vectorized over q.  Conjugate symmetric in q for real parameters.
    """
    tau = p.tau
    _check_strip(q, tau)
    if ctx is None:
        ctx = DoubleGammaContext(tau)
    q = np.asarray(q, dtype=complex)
    g2 = lambda w: log_double_gamma(w, ctx)
    l1, l2 = p.lambda1, p.lambda2
    lg = (q / tau) * np.log(tau) + q * LOG_2PI - q * sc.gammaln(1.0 - 1.0 / tau)
    lg = lg + g2(1.0 - q + tau * (1.0 + l1)) - g2(1.0 + tau * (1.0 + l1))
    lg = lg + g2(1.0 - q + tau * (1.0 + l2)) - g2(1.0 + tau * (1.0 + l2))
    lg = lg + g2(tau - q) - g2(tau)
    lg = lg + g2(2.0 - q + tau * (2.0 + l1 + l2)) - g2(2.0 - 2.0 * q + tau * (2.0 + l1 + l2))
    out = np.exp(lg)
    return out if out.ndim else complex(out)


# ---------------------------------------------------------------------------
# route 2: infinite gamma-ratio product
# ---------------------------------------------------------------------------

def mellin_product(
    q,
    p: ChaosParams,
    product_terms: int = 64,
    acceleration_order: int = 12,
):
    """Mellin transform via the infinite product of gamma-factor ratios.

    The prefactor pair Gamma(2-2q+tau+a3)/Gamma(2-q+tau+a3) cancels the m=1
    factor's fourth ratio identically and is dropped on both sides, which
    keeps the formula finite at the points where that pair degenerates to
    0*inf.  The tail beyond `product_terms` is summed in closed form from the
    inverse-power expansion of the per-factor logarithm (Hurwitz zeta tails),
    so doubling the truncation moves the result at the 1e-8 level or below.
    """
    tau = p.tau
    _check_strip(q, tau)
    q = np.asarray(q, dtype=complex)
    scalar = q.ndim == 0
    q = np.atleast_1d(q)
    a1, a2 = tau * p.lambda1, tau * p.lambda2
    a3 = a1 + a2

    amax = max(abs(a1), abs(a2), abs(a3), float(np.max(np.abs(q))), 2.0)
    M = max(product_terms, int(np.ceil(4.0 * amax / tau)), 16)

    lg = q * np.log(tau) + sc.loggamma(1.0 - q / tau) - q * sc.gammaln(1.0 - 1.0 / tau)
    # m = 1 factor without its fourth ratio (cancelled against the prefactor)
    z = tau
    lg = lg + 2.0 * q * np.log(z) + sc.loggamma(1.0 - q + z) - sc.loggamma(1.0 + z)
    lg = lg + sc.loggamma(1.0 - q + a1 + z) - sc.loggamma(1.0 + a1 + z)
    lg = lg + sc.loggamma(1.0 - q + a2 + z) - sc.loggamma(1.0 + a2 + z)

    m = np.arange(2, M + 1)
    z = (m * tau)[:, None]
    qq = q[None, :]
    terms = 2.0 * qq * np.log(z)
    terms = terms + sc.loggamma(1.0 - qq + z) - sc.loggamma(1.0 + z)
    terms = terms + sc.loggamma(1.0 - qq + a1 + z) - sc.loggamma(1.0 + a1 + z)
    terms = terms + sc.loggamma(1.0 - qq + a2 + z) - sc.loggamma(1.0 + a2 + z)
    terms = terms + sc.loggamma(2.0 - qq + a3 + z) - sc.loggamma(2.0 - 2.0 * qq + a3 + z)
    lg = lg + terms.sum(axis=0)

    # closed-form tail: sum_{m>M} F_m, F_m = sum_n (-1)^(n+1) D_{n+1}/(n(n+1)) (m tau)^-n
    for n in range(2, acceleration_order + 2):
        D = bernoulli_poly(n + 1, 1.0 - q) - bernoulli_poly(n + 1, 1.0)
        D = D + bernoulli_poly(n + 1, 1.0 - q + a1) - bernoulli_poly(n + 1, 1.0 + a1)
        D = D + bernoulli_poly(n + 1, 1.0 - q + a2) - bernoulli_poly(n + 1, 1.0 + a2)
        D = D + bernoulli_poly(n + 1, 2.0 - q + a3) - bernoulli_poly(n + 1, 2.0 - 2.0 * q + a3)
        lg = lg + (-1.0) ** (n + 1) * D / (n * (n + 1)) * sc.zeta(n, M + 1) / tau**n

    out = np.exp(lg)
    return complex(out[0]) if scalar else out


def mellin_M(query: MellinQuery):
    """Dispatch a MellinQuery to the requested route."""
    if query.route == "double-gamma":
        return mellin_transform(query.q, query.params)
    return mellin_product(
        query.q, query.params, query.product_terms, query.acceleration_order
    )


# ---------------------------------------------------------------------------
# functional equations
# ---------------------------------------------------------------------------

def _fe_shift1_factor(q, p: ChaosParams):
    tau, l1, l2 = p.tau, p.lambda1, p.lambda2
    lg = (
        sc.loggamma(1.0 - q / tau)
        + sc.loggamma(2.0 + l1 + l2 - (q - 2.0) / tau)
        - sc.gammaln(1.0 - 1.0 / tau)
        + sc.loggamma(1.0 + l1 - (q - 1.0) / tau)
        + sc.loggamma(1.0 + l2 - (q - 1.0) / tau)
        - sc.loggamma(2.0 + l1 + l2 - (2.0 * q - 2.0) / tau)
        - sc.loggamma(2.0 + l1 + l2 - (2.0 * q - 3.0) / tau)
    )
    return np.exp(lg)


def _fe_shift_tau_factor(q, p: ChaosParams):
    tau, l1, l2 = p.tau, p.lambda1, p.lambda2
    lg = (
        np.log(tau)
        + (tau - 1.0) * LOG_2PI
        - tau * sc.gammaln(1.0 - 1.0 / tau)
        + sc.loggamma(tau - q)
        + sc.loggamma((1.0 + l1) * tau - (q - 1.0))
        + sc.loggamma((1.0 + l2) * tau - (q - 1.0))
        - sc.loggamma((2.0 + l1 + l2) * tau - (2.0 * q - 2.0))
        + sc.loggamma((2.0 + l1 + l2) * tau - (q - 2.0))
        - sc.loggamma((3.0 + l1 + l2) * tau - (2.0 * q - 2.0))
    )
    return np.exp(lg)


def functional_equation_residuals(q, p: ChaosParams) -> tuple[float, float]:
    """Relative residuals of the unit shift and the tau shift at q."""
    base = mellin_transform(q, p)
    r1 = abs(base - mellin_transform(q - 1.0, p) * _fe_shift1_factor(q, p)) / abs(base)
    r2 = abs(base - mellin_transform(q - p.tau, p) * _fe_shift_tau_factor(q, p)) / abs(base)
    return float(r1), float(r2)


# ---------------------------------------------------------------------------
# Barnes beta
# ---------------------------------------------------------------------------

def barnes_beta_mellin(q, b: BarnesBetaParams):
    """Mellin transform eta(q | tau, b) of the (0,1)-valued Barnes beta."""
    if np.any(np.real(np.asarray(q)) <= -b.b0):
        raise DomainError(f"Re(q) must exceed -b0 = {-b.b0}")
    if b.degenerate:
        q = np.asarray(q, dtype=complex)
        out = np.ones_like(q)
        return out if out.ndim else complex(out)
    ctx = DoubleGammaContext(b.tau)
    g2 = lambda w: log_double_gamma(w, ctx)
    q = np.asarray(q, dtype=complex)
    lg = g2(q + b.b0) - g2(b.b0)
    lg = lg + g2(b.b0 + b.b1) - g2(q + b.b0 + b.b1)
    lg = lg + g2(b.b0 + b.b2) - g2(q + b.b0 + b.b2)
    lg = lg + g2(q + b.b0 + b.b1 + b.b2) - g2(b.b0 + b.b1 + b.b2)
    out = np.exp(lg)
    return out if out.ndim else complex(out)


def _log_barnes_levy_density(x: np.ndarray, b: BarnesBetaParams) -> np.ndarray:
    """log of the Levy density of -log beta(tau, b), stable for large x."""
    x = np.asarray(x, dtype=float)
    return (
        -b.b0 * x
        + np.log(-np.expm1(-b.b1 * x))
        + np.log(-np.expm1(-b.b2 * x))
        - np.log(-np.expm1(-x))
        - np.log(-np.expm1(-b.tau * x))
        - np.log(x)
    )


def barnes_beta_lk_log(q, b: BarnesBetaParams) -> complex:
    """Levy-Khinchine exponent integral; equals log eta(q | tau, b)."""
    if np.real(q) <= -b.b0:
        raise DomainError(f"Re(q) must exceed -b0 = {-b.b0}")
    if b.degenerate:
        return 0.0 + 0.0j
    q = complex(q)
    xmax = 60.0 / min(b.b0, b.b0 + q.real)

    def integrand(x: float) -> complex:
        ln = _log_barnes_levy_density(x, b)
        return np.exp(-x * q + ln) - np.exp(ln)

    parts = []
    for f in (lambda x: integrand(x).real, lambda x: integrand(x).imag):
        v1, e1 = quad(f, 0.0, 1.0, limit=200)
        v2, e2 = quad(f, 1.0, xmax, limit=200)
        if max(e1, e2) > 1e-7 * (1.0 + abs(v1 + v2)):
            raise QuadratureError("Levy-Khinchine integral did not converge")
        parts.append(v1 + v2)
    return complex(parts[0], parts[1])


def frechet_mellin(q, tau: float):
    """Mellin transform Gamma(1 - q/tau) of the Frechet factor."""
    _check_strip(q, tau)
    q = np.asarray(q, dtype=complex)
    out = np.exp(sc.loggamma(1.0 - q / tau))
    return out if out.ndim else complex(out)


# ---------------------------------------------------------------------------
# product decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecompositionFactors:
    """Independent factors of the distribution: constant, lognormal variance,
    Frechet modulus, and the three inverse Barnes beta parameter triples."""

    constant: float
    lognormal_variance: float
    frechet_tau: float
    x1: BarnesBetaParams
    x2: BarnesBetaParams
    x3: BarnesBetaParams


def decomposition_factors(p: ChaosParams) -> DecompositionFactors:
    tau = p.tau
    lo, hi = sorted((p.lambda1, p.lambda2))
    const = float(
        2.0
        * np.pi
        * 2.0 ** (-(3.0 * (1.0 + tau) + 2.0 * tau * (p.lambda1 + p.lambda2)) / tau)
        / np.exp(sc.gammaln(1.0 - 1.0 / tau))
    )
    x1 = BarnesBetaParams(tau, 1.0 + tau + tau * lo, tau * (hi - lo) / 2.0, tau * (hi - lo) / 2.0)
    x2 = BarnesBetaParams(tau, 1.0 + tau + tau * (p.lambda1 + p.lambda2) / 2.0, 0.5, tau / 2.0)
    half = (1.0 + tau + tau * p.lambda1 + tau * p.lambda2) / 2.0
    x3 = BarnesBetaParams(tau, 1.0 + tau, half, half)
    return DecompositionFactors(
        constant=const,
        lognormal_variance=4.0 * LOG2 / tau,
        frechet_tau=tau,
        x1=x1,
        x2=x2,
        x3=x3,
    )


def decomposition_mellin(q, p: ChaosParams):
    """Mellin transform assembled from the independent factors.

    The inverse-beta factors contribute eta(-q); equals mellin_transform(q, p)
    on the whole strip.
    """
    _check_strip(q, p.tau)
    f = decomposition_factors(p)
    q = np.asarray(q, dtype=complex)
    out = np.exp(q * np.log(f.constant) + q * q * (2.0 * LOG2 / p.tau))
    for b in (f.x1, f.x2, f.x3):
        out = out * barnes_beta_mellin(-q, b)
    out = out * frechet_mellin(q, f.frechet_tau)
    return out if out.ndim else complex(out)


# ---------------------------------------------------------------------------
# small-mu asymptotic expansion
# ---------------------------------------------------------------------------

def asymptotic_log_M(q, p: ChaosParams, order: int = 3):
    """Truncated small-mu expansion of log M(q | mu, l1, l2).

    The order-r coefficient mixes Hurwitz zeta values at r+1 with Bernoulli
    polynomial differences of degree r+2; at r = 0 the zeta value is the
    regularized -psi finite part (the divergent constant's coefficient is
    identically zero in q).
    """
    if not 0 <= order <= ASYMPTOTIC_MAX_ORDER:
        raise DomainError(f"order must lie in [0, {ASYMPTOTIC_MAX_ORDER}]")
    l1, l2 = p.lambda1, p.lambda2
    q = np.asarray(q, dtype=complex)
    x = np.exp(sc.gammaln(1.0 + l1) + sc.gammaln(1.0 + l2) - sc.gammaln(2.0 + l1 + l2))
    out = q * np.log(x)
    for r in range(order + 1):
        s = r + 1
        z_l1 = hurwitz_zeta(s, 1.0 + l1)
        z_l2 = hurwitz_zeta(s, 1.0 + l2)
        z_1 = hurwitz_zeta(s, 1.0)
        z_sum = hurwitz_zeta(s, 2.0 + l1 + l2)
        Bq = bernoulli_poly(r + 2, q)
        B0 = float(bernoulli_number(r + 2))
        bracket = (
            -z_1 * q
            + (z_l1 + z_l2) * (Bq - B0) / (r + 2)
            + z_1 * (bernoulli_poly(r + 2, q + 1.0) - B0) / (r + 2)
            - z_sum
            * (bernoulli_poly(r + 2, 2.0 * q - 1.0) - bernoulli_poly(r + 2, q - 1.0))
            / (r + 2)
        )
        out = out + (p.mu / 2.0) ** (r + 1) / (r + 1) * bracket
    return out if out.ndim else complex(out)


# ---------------------------------------------------------------------------
# Levy-Khinchine data for the full distribution
# ---------------------------------------------------------------------------

def _log_levy_B(x: np.ndarray, p: ChaosParams) -> np.ndarray:
    """log of the spectral integrand B(x) >= 0, stable for large x."""
    tau, l1, l2 = p.tau, p.lambda1, p.lambda2
    x = np.asarray(x, dtype=float)
    e = np.exp
    # both terms scaled by e^{-x(1+tau)} for stability
    t1 = (
        e(-x * tau)
        + e(-x * (1.0 + tau) - x * tau * l1)
        + e(-x * (1.0 + tau) - x * tau * l2)
        + e(-x * (2.0 + tau * (2.0 + l1 + l2)))
    ) / ((-np.expm1(-x)) * (-np.expm1(-x * tau)))
    t2 = e(-x * (1.0 + tau * (1.0 + l1 + l2)) / 2.0 - x * (1.0 + tau) / 2.0) / (
        (-np.expm1(-x / 2.0)) * (-np.expm1(-x * tau / 2.0))
    )
    diff = t1 - t2
    with np.errstate(divide="ignore"):
        return np.where(diff > 0, np.log(np.maximum(diff, 1e-300)), -np.inf)


def levy_density(u, p: ChaosParams):
    """Levy density of log of the distribution on u > 0; nonnegative."""
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0):
        raise DomainError("Levy density is supported on u > 0")
    out = np.exp(_log_levy_B(u, p) - np.log(u))
    return out if out.ndim else float(out)


def lk_spectral(u: float, p: ChaosParams) -> float:
    """Spectral function at u > 0: minus the integrated Levy tail.

    This is the convention under which the increments dM are the nonnegative
    Levy measure; the companion lk_spectral_tail_mass gives the same quantity
    with the opposite sign (the plain tail mass).
    """
    return -lk_spectral_tail_mass(u, p)


def lk_spectral_tail_mass(u: float, p: ChaosParams) -> float:
    """Integral of the Levy density over (u, infinity)."""
    if u <= 0:
        raise DomainError("spectral function evaluated on u > 0 only")
    f = lambda x: float(np.exp(_log_levy_B(x, p) - np.log(x)))
    hi = max(u + 1.0, 80.0 / p.tau * 8.0)
    v1, e1 = quad(f, u, hi, limit=300)
    v2, e2 = quad(f, hi, np.inf, limit=300)
    if max(e1, e2) > 1e-8 * (1.0 + abs(v1 + v2)):
        raise QuadratureError("spectral tail integral did not converge")
    return v1 + v2


def _lk_exponent_integral(q: float, p: ChaosParams) -> float:
    """int_0^inf (e^{qu} - 1 - qu/(1+u^2)) d(Levy measure), Re q < tau."""
    tau = p.tau
    if q >= tau:
        raise DomainError("exponent integral requires q < tau")
    U = 80.0 / (tau - min(q, 0.0)) if q <= 0 else 80.0 / (tau - q)

    def f(u: float) -> float:
        ln = _log_levy_B(u, p) - np.log(u)
        if q * u > 40.0:
            # e^{qu} dominates; evaluate in log space
            return float(np.exp(q * u + ln) - (1.0 + q * u / (1.0 + u * u)) * np.exp(ln))
        return float((np.expm1(q * u) - q * u / (1.0 + u * u)) * np.exp(ln))

    v1, e1 = quad(f, 0.0, 1.0, limit=300)
    v2, e2 = quad(f, 1.0, U, limit=300)
    if max(e1, e2) > 1e-7 * (1.0 + abs(v1 + v2)):
        raise QuadratureError("Levy-Khinchine exponent integral did not converge")
    return v1 + v2


@dataclass(frozen=True)
class LevyKhinchineData:
    """Gaussian variance, fitted drift, and the spectral function."""

    sigma2: float
    drift_m: float
    params: ChaosParams

    def spectral_density(self, u):
        return levy_density(u, self.params)


def fit_levy_drift(p: ChaosParams, fit_q: float = 1.0) -> LevyKhinchineData:
    """Determine the drift from a single q so the representation is complete."""
    sigma2 = 4.0 * LOG2 / p.tau
    logM = float(np.log(np.real(mellin_transform(fit_q, p))))
    m = (logM - 0.5 * fit_q * fit_q * sigma2 - _lk_exponent_integral(fit_q, p)) / fit_q
    return LevyKhinchineData(sigma2=sigma2, drift_m=m, params=p)


def lk_log_mellin(q: float, data: LevyKhinchineData) -> float:
    """log M(q) reconstructed from the Levy-Khinchine triple."""
    return (
        q * data.drift_m
        + 0.5 * q * q * data.sigma2
        + _lk_exponent_integral(q, data.params)
    )


# ---------------------------------------------------------------------------
# density by Mellin inversion
# ---------------------------------------------------------------------------

def default_density_grid(p: ChaosParams, n: int = 1600) -> np.ndarray:
    """Log-spaced grid covering all but ~1e-7 of the mass."""
    x_max = max(30.0, 3.0 * 10.0 ** (7.0 / p.tau))
    return np.geomspace(1e-4, x_max, n)


def density_by_inversion(
    p: ChaosParams,
    x_grid: np.ndarray,
    contour_c: float | None = None,
    quad_points: int | None = None,
) -> np.ndarray:
    """Probability density on x_grid by contour inversion of the transform.

    The integrand inherits Gaussian decay in the imaginary direction from the
    lognormal factor, so a plain trapezoid along the contour converges; the
    transform values are shared across the whole grid.  Raises InversionError
    if the resulting density integrates away from 1 by more than 1e-3.
    """
    x = np.asarray(x_grid, dtype=float)
    if np.any(x <= 0) or np.any(np.diff(x) <= 0):
        raise DomainError("x_grid must be increasing and positive")
    tau = p.tau
    c = min(0.5, tau / 2.0) if contour_c is None else contour_c
    if not c < tau:
        raise DomainError("contour must satisfy c < tau")
    Y = 1.6 * np.sqrt(tau * 40.0 / (2.0 * LOG2))
    npts = int(quad_points) if quad_points else max(800, int(Y / 0.02))
    y = np.linspace(0.0, Y, npts)
    dy = y[1] - y[0]
    Mq = mellin_transform(c + 1j * y, p)
    w = np.ones(npts)
    w[0] = 0.5
    w[-1] = 0.5
    phases = np.exp(-1j * np.outer(np.log(x), y))
    dens = (x ** (-c - 1.0) / np.pi) * np.real(phases @ (w * Mq)) * dy
    dens = np.maximum(dens, 0.0)
    mass = float(np.trapezoid(dens, x))
    if abs(mass - 1.0) > 1e-3:
        raise InversionError(f"density normalization off: integral = {mass}")
    return dens


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

class _InverseBetaSampler:
    """Sampler for log X where X = 1/beta(tau, b).

    log X is a pure-jump positive infinitely divisible variable.  Its Levy
    density nu splits exactly as alpha e^{-beta x}/x (a Gamma subordinate,
    alpha = b1 b2 / tau, beta chosen so the remainder stays nonnegative) plus
    a finite-mass remainder sampled as a compound Poisson with a fine
    tabulated inverse CDF for the jump law.
    """

    def __init__(self, b: BarnesBetaParams):
        self.b = b
        if b.degenerate:
            self.alpha = 0.0
            return
        self.alpha = b.b1 * b.b2 / b.tau
        xs = np.geomspace(1e-7, 300.0, 4001)
        ln_h0 = np.log(self.alpha)
        ln_h = _log_barnes_levy_density(xs, b) + b.b0 * xs + np.log(xs)
        self.beta = b.b0 + max(0.0, float(((ln_h0 - ln_h) / xs).max())) * (1.0 + 1e-7) + 1e-12

        def remainder(x):
            x = np.asarray(x, dtype=float)
            nu = np.exp(_log_barnes_levy_density(x, b))
            return np.maximum(nu - self.alpha * np.exp(-self.beta * x) / x, 0.0)

        lam1, _ = quad(lambda x: float(remainder(x)), 0.0, 1.0, limit=200)
        lam2, _ = quad(lambda x: float(remainder(x)), 1.0, np.inf, limit=200)
        self.intensity = lam1 + lam2
        jmax = 80.0 / b.b0
        grid = np.linspace(0.0, jmax, 160_001)
        pdf = remainder(0.5 * (grid[1:] + grid[:-1]))
        cdf = np.concatenate([[0.0], np.cumsum(pdf) * (grid[1] - grid[0])])
        self._jump_cdf = cdf / cdf[-1]
        self._jump_x = grid

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if self.alpha == 0.0:
            return np.zeros(n)
        v = rng.gamma(self.alpha, 1.0 / self.beta, n)
        counts = rng.poisson(self.intensity, n)
        total = int(counts.sum())
        if total:
            jumps = np.interp(rng.random(total), self._jump_cdf, self._jump_x)
            v += np.bincount(np.repeat(np.arange(n), counts), weights=jumps, minlength=n)
        return v


@lru_cache(maxsize=32)
def _factor_samplers(p: ChaosParams):
    f = decomposition_factors(p)
    return f, tuple(_InverseBetaSampler(b) for b in (f.x1, f.x2, f.x3))


_SAMPLE_CHAIN = 1 << 16


def sample_distribution(p: ChaosParams, count: int, seed: int) -> np.ndarray:
    """Draw iid samples of the distribution: constant * L * X1 X2 X3 * Y.

    L is lognormal, Y Frechet by inverse CDF, and the X_i inverse Barnes
    betas via their Gamma + compound-Poisson jump structure.  Deterministic
    for fixed (count, seed): work is split into fixed-size chains with
    spawned substreams.
    """
    if count < 1:
        raise DomainError("count must be positive")
    f, samplers = _factor_samplers(p)
    sigma = float(np.sqrt(f.lognormal_variance))
    out = np.empty(count)
    ss = np.random.SeedSequence(seed)
    n_chains = (count + _SAMPLE_CHAIN - 1) // _SAMPLE_CHAIN
    children = ss.spawn(n_chains)
    for c in range(n_chains):
        lo = c * _SAMPLE_CHAIN
        hi = min(count, lo + _SAMPLE_CHAIN)
        n = hi - lo
        rng = np.random.default_rng(children[c])
        m = f.constant * np.exp(rng.normal(0.0, sigma, n))
        m *= (-np.log(rng.random(n))) ** (-1.0 / f.frechet_tau)
        for s in samplers:
            m *= np.exp(s.sample(n, rng))
        out[lo:hi] = m
    return out

"""Riemann-zero statistics on mesoscopic windows.

Loads zero-height tables, builds the smooth bump profile (normalization
constant and the log-kernel smoothing constant kappa), forms smoothed
indicator test functions, evaluates their scalar products by the log-kernel
and truncated-Fourier routes, and runs the randomized-dilation counting
statistic together with its empirical covariance and rescaled
exponential-functional moments.

Zero-table file contract: ASCII text, optional '#' comment lines, one zero
height per line as a decimal literal, strictly increasing, no blank lines
except a trailing newline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator
from numpy.polynomial.legendre import leggauss

from .specfun import DomainError

__all__ = [
    "ZeroTable",
    "BumpProfile",
    "StatisticConfig",
    "ZeroTableError",
    "CoverageError",
    "load_zeros",
    "make_bump",
    "smoothed_indicator",
    "scalar_product",
    "truncated_scalar_product",
    "predicted_cov",
    "bkr_statistic",
    "empirical_field",
    "exp_functional_moment",
    "finite_t_mean_offset",
]

FIRST_ZERO = 14.134725
N_BATCHES = 32


class ZeroTableError(ValueError):
    """Malformed zero-table file."""


class CoverageError(ValueError):
    """Requested window leaves the range of the loaded table."""


# ---------------------------------------------------------------------------
# zero table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroTable:
    heights: np.ndarray
    source_path: str

    @property
    def count(self) -> int:
        return len(self.heights)

    def count_in(self, a: float, b: float) -> int:
        """Number of zeros with height in (a, b]."""
        hi = int(np.searchsorted(self.heights, b, side="right"))
        lo = int(np.searchsorted(self.heights, a, side="right"))
        return hi - lo

    def slice(self, a: float, b: float) -> np.ndarray:
        lo, hi = np.searchsorted(self.heights, [a, b])
        return self.heights[lo:hi]

    def validate_genuine(self) -> None:
        """Sanity gate for real data: the table must start at the first zero."""
        if abs(float(self.heights[0]) - FIRST_ZERO) > 1e-3:
            raise ZeroTableError(
                f"first height {self.heights[0]} is not the first zeta zero"
            )


def load_zeros(path: str | Path) -> ZeroTable:
    """Parse a zero-height table; '#' lines are comments."""
    path = Path(path)
    heights = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s:
                if line.endswith("\n") or lineno > 1:
                    continue
                raise ZeroTableError(f"{path}:{lineno}: blank line")
            if s.startswith("#"):
                continue
            try:
                heights.append(float(s))
            except ValueError:
                raise ZeroTableError(f"{path}:{lineno}: cannot parse {s!r}") from None
    if not heights:
        raise ZeroTableError(f"{path}: no zero heights found")
    h = np.asarray(heights)
    if np.any(np.diff(h) <= 0):
        bad = int(np.argmax(np.diff(h) <= 0)) + 2
        raise ZeroTableError(f"{path}: heights not strictly increasing near line {bad}")
    if h[0] <= 0:
        raise ZeroTableError(f"{path}: nonpositive height {h[0]}")
    return ZeroTable(heights=h, source_path=str(path))


# ---------------------------------------------------------------------------
# bump profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BumpProfile:
    """Normalized mollifier on (-1/2, 1/2) and its derived constants.

    normalization is the constant making the bump integrate to one; kappa is
    minus the double log-kernel integral of the bump against itself.
    """

    shape: str
    normalization: float
    kappa: float
    quadrature_level: int
    _cdf: PchipInterpolator = field(repr=False, compare=False)
    _rho: PchipInterpolator = field(repr=False, compare=False)
    _ft: PchipInterpolator = field(repr=False, compare=False)
    _ft_max_arg: float = field(repr=False, compare=False)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        inside = np.abs(x) < 0.5
        xi = x[inside]
        out[inside] = self.normalization * np.exp(-1.0 / (1.0 - 4.0 * xi * xi))
        return out

    def cdf(self, z):
        z = np.asarray(z, dtype=float)
        return np.where(
            z <= -0.5, 0.0, np.where(z >= 0.5, 1.0, self._cdf(np.clip(z, -0.5, 0.5)))
        )

    def autocorrelation(self, h):
        """rho(h) = int density(x) density(x - h) dx, supported on |h| < 1."""
        h = np.abs(np.asarray(h, dtype=float))
        return np.where(h >= 1.0, 0.0, self._rho(np.minimum(h, 1.0)))

    def fourier(self, z):
        """Real, even Fourier transform int density(x) cos(z x) dx."""
        z = np.abs(np.asarray(z, dtype=float))
        return np.where(z >= self._ft_max_arg, 0.0, self._ft(np.minimum(z, self._ft_max_arg)))


def make_bump(shape: str = "standard-mollifier", quadrature_level: int = 1) -> BumpProfile:
    """Construct the bump profile and its constants.

    kappa comes from the diagonal-split reduction of the 2-D log-kernel
    integral to the autocorrelation: kappa = -2 int_0^1 rho(h) log h dh, with
    the endpoint log singularity removed by subtracting rho(0).
    """
    if shape != "standard-mollifier":
        raise DomainError(f"unsupported bump shape {shape!r}")
    if quadrature_level < 1:
        raise DomainError("quadrature_level must be >= 1")
    lvl = quadrature_level

    raw = lambda x: np.exp(-1.0 / (1.0 - 4.0 * x * x)) if abs(x) < 0.5 else 0.0
    total, err = quad(raw, -0.5, 0.5, limit=100 * lvl, epsabs=1e-14)
    C = 1.0 / total

    def density(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        m = np.abs(x) < 0.5
        out[m] = C * np.exp(-1.0 / (1.0 - 4.0 * x[m] * x[m]))
        return out

    # cumulative table (composite Simpson on a fine uniform grid)
    npts = 8192 * lvl + 1
    xs = np.linspace(-0.5, 0.5, npts)
    ps = density(xs)
    h = xs[1] - xs[0]
    csum = np.concatenate([[0.0], np.cumsum(0.5 * (ps[1:] + ps[:-1]) * h)])
    csum /= csum[-1]
    cdf_i = PchipInterpolator(xs, csum)

    # autocorrelation table on [0, 1]
    gx, gw = leggauss(200 * lvl)
    hs = np.linspace(0.0, 1.0, 2048 * lvl + 1)
    rho_vals = np.empty_like(hs)
    for i, hh in enumerate(hs):
        lo, hi = max(-0.5, hh - 0.5), 0.5
        if hi <= lo:
            rho_vals[i] = 0.0
            continue
        x = 0.5 * (hi - lo) * (gx + 1.0) + lo
        w = 0.5 * (hi - lo) * gw
        rho_vals[i] = float((density(x) * density(x - hh) * w).sum())
    rho_i = PchipInterpolator(hs, rho_vals)

    rho0 = float(rho_i(0.0))
    reg, _ = quad(
        lambda t: (float(rho_i(t)) - rho0) * np.log(t), 0.0, 1.0, limit=200 * lvl
    )
    kappa = -2.0 * (reg - rho0)    # int_0^1 log t dt = -1

    # Fourier table; smooth compact support gives fast decay, cut at 140
    zmax = 140.0
    zs = np.linspace(0.0, zmax, 32768 * lvl + 1)
    fx, fw = leggauss(2048)
    nodes = 0.5 * fx
    weights = 0.5 * fw
    dens = density(nodes)
    ft_vals = np.empty_like(zs)
    chunk = 4096
    for i in range(0, len(zs), chunk):
        zz = zs[i : i + chunk]
        ft_vals[i : i + chunk] = (np.cos(np.outer(zz, nodes)) * (dens * weights)).sum(axis=1)
    ft_i = PchipInterpolator(zs, ft_vals)

    return BumpProfile(
        shape=shape,
        normalization=C,
        kappa=float(kappa),
        quadrature_level=quadrature_level,
        _cdf=cdf_i,
        _rho=rho_i,
        _ft=ft_i,
        _ft_max_arg=zmax,
    )


# ---------------------------------------------------------------------------
# smoothed indicators and scalar products
# ---------------------------------------------------------------------------

def _edges(u: float, eps: float, variant: int) -> tuple[float, float]:
    """Left and right indicator edges before smoothing."""
    if variant == 1:
        return 0.0, u
    if variant == 2:
        return -1.0 / eps, u
    raise DomainError(f"variant must be 1 or 2, got {variant}")


def smoothed_indicator(x, u: float, eps: float, variant: int, bump: BumpProfile):
    """Indicator of the base interval convolved with the eps-rescaled bump.

    Equals 1 on the interior plateau, 0 outside the eps/2-fattened support,
    and its derivative is the difference of shifted rescaled bumps.
    """
    if not 0.0 < eps < u:
        raise DomainError("need 0 < eps < u")
    a, b = _edges(u, eps, variant)
    x = np.asarray(x, dtype=float)
    out = bump.cdf((x - a) / eps) - bump.cdf((x - b) / eps)
    return out if out.ndim else float(out)


def _log_kernel_J(c: float, eps: float, bump: BumpProfile, n_nodes: int = 400) -> float:
    """J(c) = int rho(z) log|eps z - c| dz over z in (-1, 1)."""
    if abs(c) < 1e-14:
        # exactly the smoothing constant: log eps - kappa
        return float(np.log(eps) - bump.kappa)
    if abs(c) > eps:
        gx, gw = leggauss(n_nodes)
        z = gx
        w = gw
        vals = bump.autocorrelation(z) * np.log(np.abs(eps * z - c))
        return float((vals * w).sum())
    # singular point inside the support: adaptive quadrature split there
    zs = c / eps
    f = lambda z: float(bump.autocorrelation(np.array([z]))[0]) * np.log(abs(eps * z - c))
    v1, _ = quad(f, -1.0, zs, limit=200)
    v2, _ = quad(f, zs, 1.0, limit=200)
    return v1 + v2


def scalar_product(
    f_spec: tuple[float, float, int],
    g_spec: tuple[float, float, int],
    bump: BumpProfile,
    method: str = "log-kernel",
    cutoff: float | None = None,
) -> float:
    """Scalar product of two smoothed indicators.

    f_spec and g_spec are (u, eps, variant) triples sharing the same eps.
    "log-kernel" evaluates -(1/2 pi^2) double-integral of f' g' log|x-y| via
    the bump autocorrelation; "fourier" the band form over |w| < cutoff.
    """
    uf, ef, vf = f_spec
    ug, eg, vg = g_spec
    if ef != eg:
        raise DomainError("scalar products require a common smoothing scale")
    eps = ef
    if method == "log-kernel":
        af, bf = _edges(uf, eps, vf)
        ag, bg = _edges(ug, eps, vg)
        total = (
            _log_kernel_J(af - ag, eps, bump)
            - _log_kernel_J(af - bg, eps, bump)
            - _log_kernel_J(bf - ag, eps, bump)
            + _log_kernel_J(bf - bg, eps, bump)
        )
        return float(-total / (2.0 * np.pi**2))
    if method == "fourier":
        if cutoff is None:
            raise DomainError("fourier method requires a cutoff")
        return truncated_scalar_product(f_spec, g_spec, bump, cutoff)
    raise DomainError(f"unknown method {method!r}")


def truncated_scalar_product(
    f_spec: tuple[float, float, int],
    g_spec: tuple[float, float, int],
    bump: BumpProfile,
    cutoff: float,
) -> float:
    """Re int_{|w| < cutoff} |w| fhat(w) conj(ghat(w)) dw.

    The bump transform kills the integrand beyond |eps w| ~ 130, so the
    effective upper limit is min(cutoff, 130/eps).
    """
    uf, ef, vf = f_spec
    ug, eg, vg = g_spec
    if ef != eg:
        raise DomainError("scalar products require a common smoothing scale")
    eps = ef
    af, bf = _edges(uf, eps, vf)
    ag, bg = _edges(ug, eps, vg)
    w_hi = min(cutoff, bump._ft_max_arg / eps)
    n = max(20_000, int(w_hi / 0.005))
    n = min(n, 2_000_000)
    w = np.linspace(1e-9, w_hi, n)
    Af = np.exp(-1j * w * af) - np.exp(-1j * w * bf)
    Ag = np.exp(-1j * w * ag) - np.exp(-1j * w * bg)
    ph = bump.fourier(eps * w)
    integrand = np.real(Af * np.conj(Ag)) * ph * ph / w
    return float((1.0 / (2.0 * np.pi**2)) * np.trapezoid(integrand, w))


def predicted_cov(
    u: float, v: float, eps: float, mu: float, kappa: float, variant: int = 1
) -> float:
    """Limiting covariance of the statistic field at (u, v), small eps."""
    if not (0.0 < u < 1.0 and 0.0 < v < 1.0):
        raise DomainError("u, v must lie in (0, 1)")
    if variant == 1:
        if u == v:
            return -2.0 * mu * (np.log(eps) - kappa - np.log(u))
        if abs(u - v) <= eps:
            raise DomainError("|u - v| <= eps is outside the asymptotic regime")
        return -mu * (np.log(eps) - kappa + np.log(abs(u - v)) - np.log(u) - np.log(v))
    if variant == 2:
        if u == v:
            return -mu * (4.0 * np.log(eps) - 2.0 * kappa)
        if abs(u - v) <= eps:
            raise DomainError("|u - v| <= eps is outside the asymptotic regime")
        return -mu * (3.0 * np.log(eps) - kappa + np.log(abs(u - v)))
    raise DomainError(f"variant must be 1 or 2, got {variant}")


# ---------------------------------------------------------------------------
# the statistic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StatisticConfig:
    """Parameters of the randomized-dilation counting statistic.

    lambda(t) = (log t)^alpha; if epsilon is None the schedule
    (lambda/log t)^beta is used.  u_grid carries the window endpoints.
    """

    mu: float
    t0: float
    variant: int = 1
    alpha: float = 0.5
    epsilon: float | None = None
    beta: float = 0.5
    u_grid: np.ndarray = field(default_factory=lambda: np.linspace(0.1, 0.9, 64))
    omega_samples: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.mu < 2.0:
            raise DomainError("mu must lie in (0, 2)")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError("alpha must lie in (0, 1)")
        if not 0.0 < self.beta < 1.0:
            raise DomainError("beta must lie in (0, 1)")
        if self.variant not in (1, 2):
            raise DomainError("variant must be 1 or 2")
        if self.t0 <= np.e:
            raise DomainError("t0 too small")
        eps = self.epsilon_t
        if not eps < float(np.min(self.u_grid)):
            raise DomainError("epsilon must stay below every u in the grid")
        if self.variant == 2 and eps * self.lambda_t <= 1.0:
            raise DomainError("variant 2 requires eps * lambda > 1")

    @property
    def log_t(self) -> float:
        return float(np.log(self.t0))

    @property
    def lambda_t(self) -> float:
        return self.log_t**self.alpha

    @property
    def epsilon_t(self) -> float:
        if self.epsilon is not None:
            return float(self.epsilon)
        return float((self.lambda_t / self.log_t) ** self.beta)

    @property
    def prefactor(self) -> float:
        return float(np.pi * np.sqrt(2.0 * self.mu))


def _support_window(cfg: StatisticConfig, u_max: float) -> tuple[float, float]:
    eps = cfg.epsilon_t
    if cfg.variant == 1:
        return -eps / 2.0, u_max + eps / 2.0
    return -1.0 / eps - eps / 2.0, u_max + eps / 2.0


def _check_coverage(table: ZeroTable, cfg: StatisticConfig, u_max: float) -> None:
    xlo, xhi = _support_window(cfg, u_max)
    lam = cfg.lambda_t
    glo = cfg.t0 + xlo / lam
    ghi = 2.0 * cfg.t0 + xhi / lam
    if glo < table.heights[0] or ghi > table.heights[-1]:
        raise CoverageError(
            f"window [{glo:.1f}, {ghi:.1f}] exceeds table range "
            f"[{table.heights[0]:.1f}, {table.heights[-1]:.1f}]"
        )


def _indicator_integral(cfg: StatisticConfig, u: float) -> float:
    # convolution preserves the integral of the base indicator
    return u if cfg.variant == 1 else u + 1.0 / cfg.epsilon_t


def bkr_statistic(
    table: ZeroTable, cfg: StatisticConfig, omega: float, u: float, bump: BumpProfile
) -> float:
    """The centered counting statistic at one dilation omega and window u."""
    if not 1.0 < omega < 2.0:
        raise DomainError("omega must lie in (1, 2)")
    _check_coverage(table, cfg, u)
    lam = cfg.lambda_t
    eps = cfg.epsilon_t
    center = omega * cfg.t0
    xlo, xhi = _support_window(cfg, u)
    g = table.slice(center + xlo / lam, center + xhi / lam)
    x = lam * (g - center)
    s = float(np.sum(smoothed_indicator(x, u, eps, cfg.variant, bump)))
    return cfg.prefactor * (s - cfg.log_t / (2.0 * np.pi * lam) * _indicator_integral(cfg, u))


def _omega_draws(cfg: StatisticConfig) -> np.ndarray:
    """Stratified uniform draws on (1, 2), deterministic in the seed."""
    n = cfg.omega_samples
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
    return 1.0 + (np.arange(n) + rng.random(n)) / n


def _statistic_matrix(
    table: ZeroTable, cfg: StatisticConfig, bump: BumpProfile, us: np.ndarray
) -> np.ndarray:
    """(omega_samples, len(us)) matrix of statistic values."""
    _check_coverage(table, cfg, float(np.max(us)))
    lam = cfg.lambda_t
    eps = cfg.epsilon_t
    pref = cfg.prefactor
    dens = cfg.log_t / (2.0 * np.pi * lam)
    ints = np.array([_indicator_integral(cfg, u) for u in us])
    a = _edges(1.0, eps, cfg.variant)[0]  # left edge, u-independent
    omegas = _omega_draws(cfg)
    out = np.empty((len(omegas), len(us)))
    xlo, xhi = _support_window(cfg, float(np.max(us)))
    for i, om in enumerate(omegas):
        center = om * cfg.t0
        g = table.slice(center + xlo / lam, center + xhi / lam)
        x = lam * (g - center)
        left = bump.cdf((x - a) / eps)
        right = bump.cdf((x[:, None] - us[None, :]) / eps)
        out[i] = pref * ((left[:, None] - right).sum(axis=0) - dens * ints)
    return out


def empirical_field(
    table: ZeroTable, cfg: StatisticConfig, bump: BumpProfile
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Monte Carlo mean vector, covariance matrix, and stderr over u_grid."""
    us = np.asarray(cfg.u_grid, dtype=float)
    S = _statistic_matrix(table, cfg, bump, us)
    mean = S.mean(axis=0)
    cov = np.cov(S.T) if len(us) > 1 else np.array([[S.var(ddof=1)]])
    nb = min(N_BATCHES, len(S))
    usable = (len(S) // nb) * nb
    bm = S[:usable].reshape(nb, -1, len(us)).mean(axis=1)
    stderr = bm.std(axis=0, ddof=1) / np.sqrt(nb)
    return mean, cov, stderr


def exp_functional_moment(
    table: ZeroTable,
    cfg: StatisticConfig,
    bump: BumpProfile,
    n: int = 1,
    rescaled: bool = True,
) -> tuple[float, float]:
    """Rescaled n-th moment of the exponential functional of the statistic.

    The u-integral runs over cfg.u_grid by the trapezoid rule with the
    u^(-mu n) weight for variant 1 (plain weight with the extra scaling
    factor for variant 2).
    """
    tau = 2.0 / cfg.mu
    if n >= tau:
        raise DomainError(f"moment order {n} requires n < {tau}")
    us = np.asarray(cfg.u_grid, dtype=float)
    S = _statistic_matrix(table, cfg, bump, us)
    eps = cfg.epsilon_t
    if cfg.variant == 1:
        w = us ** (-cfg.mu * n)
    else:
        w = np.ones_like(us)
    A = np.trapezoid(w[None, :] * np.exp(S), us, axis=1)
    vals = A**n
    if rescaled:
        factor = np.exp(cfg.mu * (np.log(eps) - bump.kappa) * n * (n + 1) / 2.0)
        if cfg.variant == 2:
            factor *= np.exp(cfg.mu * np.log(eps) * n * n)
        vals = factor * vals
    nb = min(N_BATCHES, len(vals))
    usable = (len(vals) // nb) * nb
    bm = vals[:usable].reshape(nb, -1).mean(axis=1)
    return float(vals.mean()), float(bm.std(ddof=1) / np.sqrt(nb))


def finite_t_mean_offset(table: ZeroTable, cfg: StatisticConfig, u: float) -> float:
    """Deterministic finite-height offset of the statistic's omega-mean.

    The centering term uses the density log(t)/2pi while the zeros in the
    dilation range [t, 2t] have average density [N(2t) - N(t)]/t; the
    difference decays like 1/lambda(t) and dominates the Monte Carlo error
    at accessible heights.
    """
    dens_true = table.count_in(cfg.t0, 2.0 * cfg.t0) / cfg.t0
    dens_used = cfg.log_t / (2.0 * np.pi)
    return cfg.prefactor * _indicator_integral(cfg, u) * (dens_true - dens_used) / cfg.lambda_t

"""Closed-form Selberg moment products and a brute-force integration oracle.

The closed forms are finite products of gamma factors; the oracle estimates
the same integrals over products of subintervals of [0, 1] either by
stratified Monte Carlo (any dimension up to 4) or, for the plain
two-dimensional case, by a deterministic substitution quadrature that removes
the |s - t|^(-mu) singularity analytically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln

from .specfun import DomainError

__all__ = [
    "ChaosParams",
    "IntegralSpec",
    "MomentDivergenceError",
    "selberg_closed",
    "mass_moment_pos",
    "mass_moment_neg",
    "selberg_oracle",
    "selberg_quadrature_2d",
    "multiscaling_exponent",
]

ORACLE_MAX_DIM = 4
ORACLE_BATCHES = 32


class MomentDivergenceError(DomainError):
    """Requested moment order is at or beyond the divergence threshold."""


@dataclass(frozen=True)
class ChaosParams:
    """Intermittency mu in (0, 2) and the two endpoint weight exponents."""

    mu: float
    lambda1: float = 0.0
    lambda2: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.mu < 2.0:
            raise DomainError(f"mu must lie in (0, 2), got {self.mu}")
        for name in ("lambda1", "lambda2"):
            v = getattr(self, name)
            if not v > -self.mu / 2.0:
                raise DomainError(f"{name} must exceed -mu/2 = {-self.mu / 2}, got {v}")

    @property
    def tau(self) -> float:
        return 2.0 / self.mu


@dataclass(frozen=True)
class IntegralSpec:
    """A generalized Selberg integral over a product of interval blocks.

    blocks: ((a, b), multiplicity) pairs with pairwise disjoint interiors.
    point_power: extra per-point power s^point_power (0 if absent).
    kernel_exponent: pairwise |s_i - s_j| power, normally -mu.
    """

    blocks: tuple[tuple[tuple[float, float], int], ...]
    point_power: float = 0.0
    kernel_exponent: float = 0.0

    def __post_init__(self):
        ivs = []
        for (a, b), m in self.blocks:
            if not (0.0 <= a < b <= 1.0):
                raise DomainError(f"block ({a}, {b}) is not a subinterval of [0, 1]")
            if m < 1:
                raise DomainError("block multiplicity must be positive")
            ivs.append((a, b))
        ivs.sort()
        for (a1, b1), (a2, b2) in zip(ivs, ivs[1:]):
            if b1 > a2:
                raise DomainError("blocks overlap")
        if self.dimension > ORACLE_MAX_DIM:
            raise DomainError(
                f"total dimension {self.dimension} exceeds oracle cap {ORACLE_MAX_DIM}"
            )

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.blocks)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def selberg_closed(n: int, p: ChaosParams) -> float:
    """n-point Selberg integral with weights s^lambda1 (1-s)^lambda2.

    Product over k < n of
      Gamma(1-(k+1)mu/2) Gamma(1+l1-k mu/2) Gamma(1+l2-k mu/2)
      / [Gamma(1-mu/2) Gamma(2+l1+l2-(n+k-1)mu/2)].
    """
    if n < 1:
        raise DomainError("moment order must be a positive integer")
    if n >= p.tau:
        raise MomentDivergenceError(f"moment of order {n} diverges for mu = {p.mu}")
    h = p.mu / 2.0
    k = np.arange(n)
    lg = (
        gammaln(1.0 - (k + 1) * h)
        + gammaln(1.0 + p.lambda1 - k * h)
        + gammaln(1.0 + p.lambda2 - k * h)
        - gammaln(1.0 - h)
        - gammaln(2.0 + p.lambda1 + p.lambda2 - (n + k - 1) * h)
    )
    return float(np.exp(lg.sum()))


def mass_moment_pos(n: int, p: ChaosParams, variant: str = "plain") -> float:
    """Positive integral moments of the bare total mass, order n < tau.

    These are the zero-weight objects: only p.mu enters.  "plain" is the n-th
    moment of the bare mass (identical gamma factors to selberg_closed at
    lambda = 0); "self-weighted" carries the extra s^(mu n) per-point power.
    """
    if n < 1:
        raise DomainError("moment order must be a positive integer")
    tau = p.tau
    if n >= tau:
        raise MomentDivergenceError(f"moment of order {n} diverges for mu = {p.mu}")
    k = np.arange(n)
    if variant == "plain":
        lg = (
            gammaln(1.0 - (k + 1) / tau)
            + 2.0 * gammaln(1.0 - k / tau)
            - gammaln(1.0 - 1.0 / tau)
            - gammaln(2.0 - (n + k - 1) / tau)
        )
    elif variant == "self-weighted":
        lg = (
            gammaln(1.0 - (k + 1) / tau)
            + gammaln(1.0 + 2.0 * n / tau - k / tau)
            + gammaln(1.0 - k / tau)
            - gammaln(1.0 - 1.0 / tau)
            - gammaln(2.0 + n / tau - (k - 1) / tau)
        )
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return float(np.exp(lg.sum()))


def mass_moment_neg(n: int, p: ChaosParams, variant: str = "plain") -> float:
    """Negative integral moments of the bare total mass (only p.mu enters).

    The plain variant exists for every n >= 1; the self-weighted one only for
    n < (tau + 1)/2.
    """
    if n < 1:
        raise DomainError("moment order must be a positive integer")
    tau = p.tau
    k = np.arange(n)
    if variant == "plain":
        lg = (
            gammaln(2.0 + (n + 2 + k) / tau)
            + gammaln(1.0 - 1.0 / tau)
            - 2.0 * gammaln(1.0 + (k + 1) / tau)
            - gammaln(1.0 + k / tau)
        )
    elif variant == "self-weighted":
        if not n < (tau + 1) / 2.0:
            raise MomentDivergenceError(
                f"self-weighted negative moment needs n < (tau+1)/2 = {(tau + 1) / 2}"
            )
        lg = (
            gammaln(2.0 + (-n + 2 + k) / tau)
            + gammaln(1.0 - 1.0 / tau)
            - gammaln(1.0 - 2.0 * n / tau + (k + 1) / tau)
            - gammaln(1.0 + (k + 1) / tau)
            - gammaln(1.0 + k / tau)
        )
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return float(np.exp(lg.sum()))


def multiscaling_exponent(q: float, p: ChaosParams, variant: str = "plain") -> float:
    """Window-size scaling exponent of the q-th mass moment."""
    if variant == "plain":
        return q - (p.mu / 2.0) * (q * q - q)
    if variant == "self-weighted":
        return q + (p.mu / 2.0) * (q * q + q)
    raise DomainError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# integration oracle
# ---------------------------------------------------------------------------

def _oracle_integrand(pts: np.ndarray, spec: IntegralSpec, p: ChaosParams) -> np.ndarray:
    """Integrand on a (batch, N) array of points."""
    w = np.ones(pts.shape[0])
    if p.lambda1 != 0.0:
        w = w * np.prod(pts**p.lambda1, axis=1)
    if p.lambda2 != 0.0:
        w = w * np.prod((1.0 - pts) ** p.lambda2, axis=1)
    if spec.point_power != 0.0:
        w = w * np.prod(pts**spec.point_power, axis=1)
    n = pts.shape[1]
    for i in range(n):
        for j in range(i + 1, n):
            w = w * np.abs(pts[:, i] - pts[:, j]) ** spec.kernel_exponent
    return w


def selberg_oracle(
    spec: IntegralSpec,
    p: ChaosParams,
    budget: int,
    seed: int,
) -> tuple[float, float]:
    """Stratified Monte Carlo estimate of the generalized Selberg integral.

    Returns (estimate, stderr) with the standard error taken from 32 batch
    means; each batch runs on its own deterministic substream of `seed`, so
    the result depends only on (seed, budget).
    """
    n = spec.dimension
    if -spec.kernel_exponent >= 2.0 / n:
        raise DomainError(
            f"kernel exponent {spec.kernel_exponent} is not integrable in dimension {n}"
        )
    lows, spans = [], []
    for (a, b), m in spec.blocks:
        lows += [a] * m
        spans += [b - a] * m
    lows = np.array(lows)
    spans = np.array(spans)
    volume = float(np.prod(spans))

    per_batch = max(1, budget // ORACLE_BATCHES)
    ss = np.random.SeedSequence(seed)
    means = np.empty(ORACLE_BATCHES)
    for b, child in enumerate(ss.spawn(ORACLE_BATCHES)):
        rng = np.random.default_rng(child)
        total, count = 0.0, 0
        while count < per_batch:
            take = min(200_000, per_batch - count)
            pts = lows + spans * rng.random((take, n))
            total += float(_oracle_integrand(pts, spec, p).sum())
            count += take
        means[b] = volume * total / count
    est = float(means.mean())
    stderr = float(means.std(ddof=1) / np.sqrt(ORACLE_BATCHES))
    return est, stderr


def selberg_quadrature_2d(p: ChaosParams, n_nodes: int = 200) -> float:
    """Deterministic value of the plain N=2 integral over [0, 1]^2.

    Splits along the diagonal and substitutes v = z^(1/(1-mu)) so the
    |s - t|^(-mu) factor integrates exactly; the remaining integrand is
    smooth and tensor Gauss-Legendre converges fast.
    """
    mu = p.mu
    if not mu < 1.0:
        raise DomainError("two-point kernel integrable only for mu < 1")
    x, wx = leggauss(n_nodes)
    z = 0.5 * (x + 1.0)
    wz = 0.5 * wx
    v = z ** (1.0 / (1.0 - mu))
    # int_0^1 dv v^-mu f(v) = (1/(1-mu)) int_0^1 dz f(v(z))
    s_nodes, ws = leggauss(n_nodes)
    acc = 0.0
    for vi, wi in zip(v, wz):
        s = 0.5 * (1.0 - vi) * (s_nodes + 1.0)
        w = 0.5 * (1.0 - vi) * ws
        g = s**p.lambda1 * (1.0 - s) ** p.lambda2
        g = g * (s + vi) ** p.lambda1 * (1.0 - s - vi) ** p.lambda2
        acc += wi * float((g * w).sum())
    return 2.0 * acc / (1.0 - mu)

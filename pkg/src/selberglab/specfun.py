"""Scalar special functions used by every closed-form formula in this package.

Provides the principal-branch log-gamma, the Hurwitz zeta function with a
regularized finite part at s = 1, exact Bernoulli polynomials, and the Barnes
double gamma function G2(w | tau) for real modulus tau > 0.

The double gamma is evaluated by shifting the argument into a large-Re(w)
regime with its two functional equations,

    G2(z | tau) / G2(z + 1   | tau) = tau^(z/tau - 1/2) Gamma(z/tau) / sqrt(2 pi),
    G2(z | tau) / G2(z + tau | tau) = Gamma(z) / sqrt(2 pi),

and then summing a large-argument expansion whose coefficients come from the
Bernoulli generating function of the double heat kernel
1 / ((1 - e^-t)(1 - e^-tau t)).  The normalization is the zeta-derivative one:
log G2(w) equals d/ds at s=0 of the double zeta function, which is what the
functional equations above and the test-suite lattice oracle pin down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np
import scipy.special as sc

__all__ = [
    "PoleError",
    "DomainError",
    "DoubleGammaContext",
    "log_gamma",
    "digamma",
    "hurwitz_zeta",
    "bernoulli_number",
    "bernoulli_poly",
    "log_double_gamma",
]

LOG_2PI = float(np.log(2.0 * np.pi))
_POLE_TOL = 1e-12
_BERNOULLI_MAX = 60


class PoleError(ValueError):
    """Argument at, or numerically indistinguishable from, a pole."""


class DomainError(ValueError):
    """Argument outside the function's stated domain."""


# ---------------------------------------------------------------------------
# gamma / digamma / Hurwitz zeta
# ---------------------------------------------------------------------------

def _check_gamma_poles(z: np.ndarray) -> None:
    zr, zi = np.real(z), np.imag(z)
    near_axis = np.abs(zi) < _POLE_TOL
    k = np.round(zr)
    bad = near_axis & (k <= 0) & (np.abs(zr - k) < _POLE_TOL)
    if np.any(bad):
        raise PoleError(f"log_gamma pole at z = {np.asarray(z)[bad].ravel()[0]}")


def log_gamma(z):
    """Principal branch of log Gamma(z); scalars or arrays, real or complex."""
    z = np.asarray(z)
    _check_gamma_poles(z)
    out = sc.loggamma(z)
    return out if out.ndim else out[()]


def digamma(x):
    """Logarithmic derivative of Gamma, real arguments."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) and np.any(np.abs(x - np.round(x)) < _POLE_TOL):
        raise PoleError("digamma pole at a nonpositive integer")
    out = sc.digamma(x)
    return out if out.ndim else out[()]


def hurwitz_zeta(s: float, a: float) -> float:
    """Hurwitz zeta zeta(s, a) for s >= 1, a > 0.

    At s = 1 the series diverges; the regularized finite part -psi(a) is
    returned instead.  The divergent constant never survives in any quantity
    built on top of this function (its coefficient vanishes identically),
    so any other finite-part convention would give identical results.
    """
    if a <= 0:
        raise DomainError(f"hurwitz_zeta requires a > 0, got a = {a}")
    if s < 1:
        raise DomainError(f"hurwitz_zeta requires s >= 1, got s = {s}")
    if s == 1:
        return -float(sc.digamma(a))
    return float(sc.zeta(s, a))


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials (exact rational coefficients)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _bernoulli_table() -> tuple[Fraction, ...]:
    # recurrence sum_{k<=n} C(n+1,k) B_k = 0, exact in Fraction arithmetic
    table = [Fraction(1)]
    for n in range(1, _BERNOULLI_MAX + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += comb(n + 1, k) * table[k]
        table.append(-acc / (n + 1))
    return tuple(table)


def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention), n <= 60."""
    if not 0 <= n <= _BERNOULLI_MAX:
        raise DomainError(f"Bernoulli order {n} outside [0, {_BERNOULLI_MAX}]")
    return _bernoulli_table()[n]


@lru_cache(maxsize=None)
def _bernoulli_poly_coeffs(n: int) -> tuple[Fraction, ...]:
    # B_n(x) = sum_k C(n,k) B_k x^(n-k), highest power first
    B = _bernoulli_table()
    return tuple(comb(n, k) * B[k] for k in range(n + 1))


def bernoulli_poly(n: int, x):
    """Bernoulli polynomial B_n(x).

    Coefficients are exact rationals; evaluation is Horner in the input's
    arithmetic, so Fraction input yields an exact Fraction result and
    float/complex input a floating-point one.
    """
    if not 0 <= n <= _BERNOULLI_MAX:
        raise DomainError(f"Bernoulli order {n} outside [0, {_BERNOULLI_MAX}]")
    coeffs = _bernoulli_poly_coeffs(n)
    if isinstance(x, Fraction):
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * x + c
        return acc
    x = np.asarray(x)
    acc = np.zeros_like(x, dtype=complex if np.iscomplexobj(x) else float)
    for c in coeffs:
        acc = acc * x + float(c)
    return acc if acc.ndim else acc[()]


# ---------------------------------------------------------------------------
# Barnes double gamma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DoubleGammaContext:
    """Evaluation policy for log G2(. | tau).

    shift_threshold is the minimum real part at which the large-argument
    expansion is trusted; series_order the number of inverse-power correction
    terms kept beyond the leading elementary ones.
    """

    tau: float
    shift_threshold: float = field(default=0.0)
    series_order: int = 16

    def __post_init__(self):
        if not self.tau > 0:
            raise DomainError(f"tau must be positive, got {self.tau}")
        if self.shift_threshold == 0.0:
            object.__setattr__(
                self, "shift_threshold", max(18.0, 7.0 * self.tau, 1.0 + self.tau)
            )
        if self.shift_threshold < 1.0 + self.tau:
            raise DomainError("shift_threshold must be at least 1 + tau")
        if self.series_order < 4:
            raise DomainError("series_order must be at least 4")


@lru_cache(maxsize=64)
def _asym_coeffs(tau: float, order: int) -> tuple[float, np.ndarray]:
    """(c_2, inverse-power coefficients) of the large-w expansion."""
    B = _bernoulli_table()

    def b1(j: int) -> float:
        return float(B[j]) + (1.0 if j == 1 else 0.0)  # B_j(1)

    def c(m: int) -> float:
        return sum(
            b1(m - k) * b1(k) * tau**k / (factorial(m - k) * factorial(k))
            for k in range(m + 1)
        )

    c2 = c(2)
    ms = np.arange(3, order + 3)
    coeffs = np.array([c(int(m)) * factorial(int(m) - 3) / tau for m in ms])
    return c2, coeffs


def _check_lattice_poles(w: np.ndarray, tau: float) -> None:
    wr, wi = np.real(w), np.imag(w)
    cand = (np.abs(wi) < _POLE_TOL) & (wr < _POLE_TOL)
    if not np.any(cand):
        return
    for x in np.atleast_1d(wr)[np.atleast_1d(cand)]:
        kmax = int(np.floor(-x / tau)) + 1
        for k2 in range(kmax + 1):
            rem = x + k2 * tau
            if rem < _POLE_TOL and abs(rem - round(rem)) < _POLE_TOL and round(rem) <= 0:
                raise PoleError(f"double gamma pole at w = {x} (lattice -(k1 + k2 tau))")


def log_double_gamma(w, ctx: DoubleGammaContext):
    """log G2(w | tau) in the zeta-derivative normalization.

    Vectorized over w (real or complex).  The argument is shifted upward by
    tau-steps and then unit steps until its real part clears
    ctx.shift_threshold, accumulating the exact functional-equation factors,
    after which the asymptotic expansion is summed.
    """
    tau = ctx.tau
    w_in = np.asarray(w, dtype=complex)
    scalar = w_in.ndim == 0
    w = np.atleast_1d(w_in).astype(complex)
    _check_lattice_poles(w, tau)

    acc = np.zeros_like(w)
    re_min = w.real.min()
    k = max(0, int(np.ceil((ctx.shift_threshold - re_min) / tau)))
    for i in range(k):
        acc += sc.loggamma(w + i * tau) - 0.5 * LOG_2PI
    w = w + k * tau
    j = max(0, int(np.ceil(ctx.shift_threshold - w.real.min())))
    for i in range(j):
        z = w + i
        acc += (z / tau - 0.5) * np.log(tau) + sc.loggamma(z / tau) - 0.5 * LOG_2PI
    w = w + j

    lw = np.log(w)
    c2, coeffs = _asym_coeffs(tau, ctx.series_order)
    out = (-(w * w) / 2.0 * lw + 0.75 * w * w) / tau
    out += (1.0 + tau) / (2.0 * tau) * (w * lw - w)
    out -= (c2 / tau) * lw
    p = w ** (-1.0)
    for cm in coeffs:
        out += cm * p
        p = p / w
    out = acc + out
    return complex(out[0]) if scalar else out

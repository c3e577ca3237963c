"""Independent oracles used only by the test suite.

These deliberately avoid the production code paths: the double gamma oracle
continues the double zeta function with Hurwitz sums plus an Euler-Maclaurin
tail in mpmath, the Barnes beta oracle evaluates the raw double product over
the lattice with a Richardson tail estimate, and the smoothing-constant
oracle does the bare 2-D quadrature.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np


def log_double_gamma_oracle(w: float, tau: float, K: int = 60, dps: int = 40) -> float:
    """d/ds at s=0 of the double zeta, via Hurwitz sums + Euler-Maclaurin."""
    with mp.workdps(dps):
        wm, tm = mp.mpf(w), mp.mpf(tau)
        A = wm + K * tm

        def Phi(s):
            s = mp.mpf(s)
            tot = mp.mpf(0)
            for k in range(K):
                tot += mp.zeta(s, wm + k * tm)
            tot += mp.zeta(s - 1, A) / (tm * (s - 1))
            tot += mp.zeta(s, A) / 2
            tot += (tm * s / 12) * mp.zeta(s + 1, A)
            tot -= (tm**3) * s * (s + 1) * (s + 2) / 720 * mp.zeta(s + 3, A)
            tot += (tm**5) * s * (s + 1) * (s + 2) * (s + 3) * (s + 4) / 30240 * mp.zeta(s + 5, A)
            return tot

        h = mp.mpf(10) ** (-12)
        return float((Phi(h) - Phi(-h)) / (2 * h))


def barnes_beta_product_oracle(q: float, tau: float, b0: float, b1: float, b2: float,
                               n_max: int = 2000) -> float:
    """Raw lattice double product for the Barnes beta Mellin transform.

    Truncated at n1, n2 <= n_max with a Richardson tail correction (the
    partial products approach the limit like 1/n_max).
    """

    def partial(n):
        n1 = np.arange(n + 1)
        ell = b0 + n1[:, None] + tau * n1[None, :]
        lg = (
            np.log(ell)
            - np.log(q + ell)
            + np.log(q + ell + b1)
            - np.log(ell + b1)
            + np.log(q + ell + b2)
            - np.log(ell + b2)
            + np.log(ell + b1 + b2)
            - np.log(q + ell + b1 + b2)
        )
        return lg.sum()

    s1 = partial(n_max // 2)
    s2 = partial(n_max)
    return float(np.exp(2.0 * s2 - s1))


def kappa_oracle(normalization: float, epsabs: float = 1e-10) -> float:
    """-double-integral of phi(x) phi(y) log|x-y| by direct 2-D quadrature."""
    from scipy.integrate import dblquad

    C = normalization

    def phi(x):
        return C * np.exp(-1.0 / (1.0 - 4.0 * x * x)) if abs(x) < 0.5 else 0.0

    # split at y = x to keep the integrable log singularity on the boundary
    f = lambda y, x: phi(x) * phi(y) * np.log(x - y)
    lower, _ = dblquad(f, -0.5, 0.5, -0.5, lambda x: x, epsabs=epsabs)
    upper, _ = dblquad(lambda y, x: phi(x) * phi(y) * np.log(y - x),
                       -0.5, 0.5, lambda x: x, 0.5, epsabs=epsabs)
    return -(lower + upper)

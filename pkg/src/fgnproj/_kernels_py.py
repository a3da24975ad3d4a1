"""Pure-Python/numpy implementations of the hot kernels.

Mirrors ``_kernels.pyx`` function by function. Used when the compiled
extension is unavailable or when ``FGNPROJ_PURE_PYTHON=1`` is set.
"""
import math

import numpy as np

from .exceptions import DegenerateDenominator, NotPositiveDefinite


def _pow2h(a, two_h):
    if a == 0:
        return 0.0
    return math.pow(a, two_h)


def rho_table(hurst, m):
    """Autocovariances rho_0..rho_m of unit-step fGn."""
    two_h = 2.0 * hurst
    p = [_pow2h(a, two_h) for a in range(m + 2)]
    out = np.empty(m + 1)
    out[0] = 1.0
    for k in range(1, m + 1):
        out[k] = 0.5 * (p[k + 1] - 2.0 * p[k] + p[k - 1])
    return out


def gamma_ladder(rho, nmax, threshold):
    """One-sided projection coefficients for every order 2..nmax.

    Returns
    -------
    ladder : (nmax + 1, nmax - 1) ndarray
        ``ladder[m, k - 2]`` is the coefficient of lag-position ``k`` in
        the order-``m`` projection; rows 0 and 1 are unused.
    numer, denom : (nmax + 1,) ndarray
        Numerator and denominator that produced the last coefficient of
        each row (``denom[m]`` is the innovation variance of order m - 1).
    """
    rho = np.asarray(rho, dtype=float)
    if nmax < 2:
        raise ValueError("nmax must be >= 2")
    if rho.shape[0] < nmax:
        raise ValueError("rho table too short")
    ladder = np.zeros((nmax + 1, nmax - 1))
    numer = np.zeros(nmax + 1)
    denom = np.zeros(nmax + 1)
    ladder[2, 0] = rho[1]
    numer[2] = rho[1]
    denom[2] = 1.0
    for m in range(2, nmax):
        g = ladder[m, :m - 1]
        # g[i] <-> k = i + 2; rho_{m+1-k} runs rho[m-1] .. rho[1]
        num = rho[m] - np.dot(g, rho[m - 1:0:-1])
        den = 1.0 - np.dot(g, rho[1:m])
        if not den >= threshold:
            raise DegenerateDenominator("one-sided recursion", m + 1, den)
        last = num / den
        ladder[m + 1, :m - 1] = g - last * g[::-1]
        ladder[m + 1, m - 1] = last
        numer[m + 1] = num
        denom[m + 1] = den
    return ladder, numer, denom


def bilateral_ladder(rho, ladder, jmax, threshold):
    """Bilateral projection coefficients for every window 1..jmax.

    ``rho`` needs at least ``2 * jmax + 1`` entries and ``ladder`` rows up
    to order ``2 * jmax + 1`` (ignored when ``jmax == 1``).

    Returns
    -------
    q : (jmax + 1, jmax) ndarray
        ``q[j, k - 1]`` is the coefficient at distance ``k`` for window ``j``.
    """
    rho = np.asarray(rho, dtype=float)
    if jmax < 1:
        raise ValueError("jmax must be >= 1")
    if rho.shape[0] < max(2 * jmax + 1, 3):
        raise ValueError("rho table too short")
    if jmax > 1 and ladder.shape[0] < 2 * jmax + 2:
        raise ValueError("one-sided ladder too short")
    q = np.zeros((jmax + 1, jmax))
    den = 1.0 + rho[2]
    if not den >= threshold:
        raise DegenerateDenominator("bilateral base", 1, den)
    q[1, 0] = rho[1] / den
    for n in range(3, jmax + 2):
        prev = q[n - 2]
        g2 = ladder[2 * n - 2]
        g1 = ladder[2 * n - 1]
        # dense arrays indexed by k = 0..2n-1; entry k = n stays zero and
        # is masked out of every sum
        ks = np.arange(2, 2 * n - 1)
        ks = ks[ks != n]
        dist = np.abs(n - ks)
        t = np.zeros(2 * n)
        t[ks] = g2[ks - 2] + g2[n - 2] * prev[dist - 1]
        t_mirror = t[2 * n - ks]
        num = rho[n - 1] - np.dot(t_mirror, rho[dist])
        den = 1.0 - np.dot(t_mirror, rho[np.abs(2 * n - 1 - ks)])
        if not den >= threshold:
            raise DegenerateDenominator("bilateral S", n - 1, den)
        s_last = num / den
        s = np.zeros(2 * n)
        s[ks] = prev[dist - 1] - s_last * t_mirror
        s[2 * n - 1] = s_last
        ks1 = np.append(ks, 2 * n - 1)
        g = g1[ks1 - 2] + g1[n - 2] * s[ks1]
        num = rho[n - 1] - np.dot(g, rho[np.abs(n - ks1)])
        den = 1.0 - np.dot(g, rho[ks1 - 1])
        if not den >= threshold:
            raise DegenerateDenominator("bilateral Q", n - 1, den)
        q_last = num / den
        kk = np.arange(1, n - 1)
        q[n - 1, :n - 2] = prev[:n - 2] - q_last * (t[n - kk] + t[n + kk])
        q[n - 1, n - 2] = q_last
    return q


def cholesky_lower(a):
    """Unpivoted Cholesky factor L (lower) with L @ L.T == a."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    L = np.zeros((n, n))
    for i in range(n):
        row = L[i, :i]
        d = a[i, i] - np.dot(row, row)
        if not d > 0.0:
            raise NotPositiveDefinite(i + 1, d)
        L[i, i] = math.sqrt(d)
        if i + 1 < n:
            L[i + 1:, i] = (a[i + 1:, i] - L[i + 1:, :i] @ row) / L[i, i]
    return L

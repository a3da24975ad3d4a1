# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels. Signatures and semantics match ``_kernels_py``."""
import numpy as np

from libc.math cimport pow, sqrt, fabs

from .exceptions import DegenerateDenominator, NotPositiveDefinite


cdef inline double _pow2h(Py_ssize_t a, double two_h) nogil:
    if a == 0:
        return 0.0
    return pow(<double>a, two_h)


def rho_table(double hurst, Py_ssize_t m):
    """Autocovariances rho_0..rho_m of unit-step fGn."""
    cdef double two_h = 2.0 * hurst
    cdef Py_ssize_t k
    p_arr = np.empty(m + 2)
    out = np.empty(m + 1)
    cdef double[::1] p = p_arr
    cdef double[::1] r = out
    with nogil:
        for k in range(m + 2):
            p[k] = _pow2h(k, two_h)
        r[0] = 1.0
        for k in range(1, m + 1):
            r[k] = 0.5 * (p[k + 1] - 2.0 * p[k] + p[k - 1])
    return out


def gamma_ladder(rho_in, Py_ssize_t nmax, double threshold):
    """One-sided projection coefficients for every order 2..nmax."""
    if nmax < 2:
        raise ValueError("nmax must be >= 2")
    cdef const double[::1] rho = np.ascontiguousarray(rho_in, dtype=float)
    if rho.shape[0] < nmax:
        raise ValueError("rho table too short")
    ladder_arr = np.zeros((nmax + 1, nmax - 1))
    numer_arr = np.zeros(nmax + 1)
    denom_arr = np.zeros(nmax + 1)
    cdef double[:, ::1] lad = ladder_arr
    cdef double[::1] numer = numer_arr
    cdef double[::1] denom = denom_arr
    cdef Py_ssize_t m, i
    cdef double num, den, last
    lad[2, 0] = rho[1]
    numer[2] = rho[1]
    denom[2] = 1.0
    for m in range(2, nmax):
        num = rho[m]
        den = 1.0
        for i in range(m - 1):
            # i <-> k = i + 2
            num -= lad[m, i] * rho[m - 1 - i]
            den -= lad[m, i] * rho[i + 1]
        if not den >= threshold:
            raise DegenerateDenominator("one-sided recursion", m + 1, den)
        last = num / den
        for i in range(m - 1):
            lad[m + 1, i] = lad[m, i] - last * lad[m, m - 2 - i]
        lad[m + 1, m - 1] = last
        numer[m + 1] = num
        denom[m + 1] = den
    return ladder_arr, numer_arr, denom_arr


def bilateral_ladder(rho_in, ladder_in, Py_ssize_t jmax, double threshold):
    """Bilateral projection coefficients for every window 1..jmax."""
    if jmax < 1:
        raise ValueError("jmax must be >= 1")
    cdef const double[::1] rho = np.ascontiguousarray(rho_in, dtype=float)
    if rho.shape[0] < max(2 * jmax + 1, 3):
        raise ValueError("rho table too short")
    cdef const double[:, ::1] lad = np.ascontiguousarray(ladder_in, dtype=float)
    if jmax > 1 and lad.shape[0] < 2 * jmax + 2:
        raise ValueError("one-sided ladder too short")
    q_arr = np.zeros((jmax + 1, jmax))
    t_arr = np.zeros(2 * jmax + 2)
    s_arr = np.zeros(2 * jmax + 2)
    cdef double[:, ::1] q = q_arr
    cdef double[::1] t = t_arr
    cdef double[::1] s = s_arr
    cdef Py_ssize_t n, k, d
    cdef double num, den, s_last, q_last, g, g2n, g1n
    den = 1.0 + rho[2]
    if not den >= threshold:
        raise DegenerateDenominator("bilateral base", 1, den)
    q[1, 0] = rho[1] / den
    for n in range(3, jmax + 2):
        g2n = lad[2 * n - 2, n - 2]
        g1n = lad[2 * n - 1, n - 2]
        for k in range(2, 2 * n - 1):
            if k == n:
                continue
            d = n - k if k < n else k - n
            t[k] = lad[2 * n - 2, k - 2] + g2n * q[n - 2, d - 1]
        num = rho[n - 1]
        den = 1.0
        for k in range(2, 2 * n - 1):
            if k == n:
                continue
            d = n - k if k < n else k - n
            num -= t[2 * n - k] * rho[d]
            den -= t[2 * n - k] * rho[2 * n - 1 - k]
        if not den >= threshold:
            raise DegenerateDenominator("bilateral S", n - 1, den)
        s_last = num / den
        for k in range(2, 2 * n - 1):
            if k == n:
                continue
            d = n - k if k < n else k - n
            s[k] = q[n - 2, d - 1] - s_last * t[2 * n - k]
        s[2 * n - 1] = s_last
        num = rho[n - 1]
        den = 1.0
        for k in range(2, 2 * n):
            if k == n:
                continue
            d = n - k if k < n else k - n
            g = lad[2 * n - 1, k - 2] + g1n * s[k]
            num -= g * rho[d]
            den -= g * rho[k - 1]
        if not den >= threshold:
            raise DegenerateDenominator("bilateral Q", n - 1, den)
        q_last = num / den
        for k in range(1, n - 1):
            q[n - 1, k - 1] = q[n - 2, k - 1] - q_last * (t[n - k] + t[n + k])
        q[n - 1, n - 2] = q_last
    return q_arr


cdef inline double _dot(const double* x, const double* y, Py_ssize_t m) noexcept nogil:
    # four partial sums so the loop pipelines without reassociation flags
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0
    cdef Py_ssize_t j = 0
    while j + 4 <= m:
        s0 += x[j] * y[j]
        s1 += x[j + 1] * y[j + 1]
        s2 += x[j + 2] * y[j + 2]
        s3 += x[j + 3] * y[j + 3]
        j += 4
    while j < m:
        s0 += x[j] * y[j]
        j += 1
    return (s0 + s1) + (s2 + s3)


def cholesky_lower(a_in):
    """Unpivoted Cholesky factor L (lower) with L @ L.T == a."""
    cdef const double[:, ::1] a = np.ascontiguousarray(a_in, dtype=float)
    cdef Py_ssize_t n = a.shape[0]
    L_arr = np.zeros((n, n))
    cdef double[:, ::1] L = L_arr
    cdef Py_ssize_t i, p
    cdef double d
    for i in range(n):
        d = a[i, i] - _dot(&L[i, 0], &L[i, 0], i) if i > 0 else a[i, i]
        if not d > 0.0:
            raise NotPositiveDefinite(i + 1, d)
        L[i, i] = sqrt(d)
        with nogil:
            for p in range(i + 1, n):
                if i > 0:
                    L[p, i] = (a[p, i] - _dot(&L[p, 0], &L[i, 0], i)) / L[i, i]
                else:
                    L[p, i] = a[p, i] / L[i, i]
    return L_arr

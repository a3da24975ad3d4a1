"""Two-sided projection of an fGn value onto ``j`` neighbours on each side.

``E(D_n | D_{n-j}..D_{n-1}, D_{n+1}..D_{n+j}) = sum_{k=1}^j q_j^k (D_{n-k} + D_{n+k})``.
Coefficient arrays are stored with offset 1 (index 0 holds k = 1).
"""
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .autocov import hurst_value, rho_array, rho_dH
from .exceptions import CrossCheckError, DomainError, NotPositiveDefinite
from .gramians import determinant_spd, solve_spd
from .onesided import DENOM_THRESHOLD, gamma_ladder

FD_STEP = 1e-5


def _check_window(j):
    if int(j) != j or j < 1:
        raise DomainError(f"window must be an integer >= 1, got {j!r}")
    return int(j)


@dataclass(frozen=True)
class BilateralCoefficients:
    hurst: float
    window: int
    q: np.ndarray
    method: str = "solve"
    residual: float = float("nan")
    condition: float = float("nan")
    solver: str = ""

    def __getitem__(self, k):
        if not 1 <= k <= self.window:
            raise IndexError(f"k={k} outside 1..{self.window}")
        return self.q[k - 1]

    def items(self):
        return [(k, float(self.q[k - 1])) for k in range(1, self.window + 1)]

    def reduced_residual(self):
        a, b = reduced_system(self.hurst, self.window)
        return float(np.max(np.abs(a @ self.q[::-1] - b)))

    def full_residual(self):
        """Residual of the symmetric length-2j vector in the full system."""
        a, b = full_system(self.hurst, self.window)
        v = np.concatenate([self.q[::-1], self.q])
        return float(np.max(np.abs(a @ v - b)))


@dataclass(frozen=True)
class DeterminantBundle:
    """Determinant of the reduced window-3 matrix and its three Cramer numerators."""

    hurst: float
    d3: float
    d31: float
    d32: float
    d33: float

    def coefficients(self):
        return (self.d31 / self.d3, self.d32 / self.d3, self.d33 / self.d3)


def reduced_system(h, j):
    """Reduced matrix and right-hand side for window ``j``.

    Unknowns are ordered ``q^j, ..., q^1``; with n = j + 1 the entry
    (l, m) is ``rho_|m-l| + rho_|2n-m-l|`` and the right-hand side is
    ``rho_{n-l}``, l, m = 1..j.
    """
    hv = hurst_value(h, allow_one=True)
    j = _check_window(j)
    n = j + 1
    r = rho_array(hv, 2 * n - 2)
    idx = np.arange(1, n)
    a = r[np.abs(idx[None, :] - idx[:, None])] + r[2 * n - idx[None, :] - idx[:, None]]
    b = r[n - idx]
    return a, b


def full_system(h, j):
    """Full (2j x 2j) covariance system over the neighbours of the centre."""
    hv = hurst_value(h, allow_one=True)
    j = _check_window(j)
    n = j + 1
    r = rho_array(hv, 2 * n)
    pos = np.array([k for k in range(1, 2 * n) if k != n])
    a = r[np.abs(pos[:, None] - pos[None, :])]
    b = r[np.abs(n - pos)]
    return a, b


def q_solve(h, j):
    """Coefficients from the reduced linear system.

    Tries Cholesky first and falls back to symmetric-indefinite elimination;
    ``solver`` on the result records which ran.
    """
    hv = hurst_value(h)
    a, b = reduced_system(hv, j)
    res = solve_spd(a, b, allow_indefinite=True)
    return BilateralCoefficients(hv, int(j), res.x[::-1].copy(), "solve", res.residual, res.condition, res.method)


def q_closed_small(h, j):
    """Closed-form coefficients for windows 1 and 2."""
    hv = hurst_value(h)
    r = rho_array(hv, 4)
    r1, r2, r3, r4 = r[1], r[2], r[3], r[4]
    if j == 1:
        q = np.array([r1 / (1.0 + r2)])
    elif j == 2:
        den = (1.0 + r2) * (1.0 + r4) - (r1 + r3) ** 2
        q = np.array([
            (r1 * (1.0 + r4) - r2 * (r1 + r3)) / den,
            (r2 * (1.0 + r2) - r1 * (r1 + r3)) / den,
        ])
    else:
        raise DomainError(f"closed forms exist only for windows 1 and 2, got {j!r}")
    return BilateralCoefficients(hv, int(j), q, "closed")


def q_ladder(h, jmax):
    """All windows 1..jmax by the recursion over windows.

    Each step consumes the one-sided coefficients of orders 2n-2 and 2n-1,
    which come from a single one-sided ladder of order 2*jmax + 1.

    Returns
    -------
    (jmax + 1, jmax) ndarray
        Row j holds q_j^1..q_j^j; row 0 is unused.
    """
    hv = hurst_value(h)
    jmax = _check_window(jmax)
    if jmax == 1:
        r = rho_array(hv, 2)
        table = np.zeros((3, 1))
    else:
        lad = gamma_ladder(hv, 2 * jmax + 1)
        r, table = lad.rho, lad.table
    return kernels.bilateral_ladder(r, table, jmax, DENOM_THRESHOLD)


def q_recursive(h, j):
    hv = hurst_value(h)
    j = _check_window(j)
    q = q_ladder(hv, j)[j, :j].copy()
    a, b = reduced_system(hv, j)
    resid = float(np.max(np.abs(a @ q[::-1] - b)))
    return BilateralCoefficients(hv, j, q, "recursive", resid)


def q_cramer(h, j):
    """Coefficients as ratios of determinants (column ``j + 1 - k`` replaced)."""
    a, b = reduced_system(h, j)
    d = np.linalg.det(a)
    q = np.empty(j)
    for k in range(1, j + 1):
        m = a.copy()
        m[:, j - k] = b
        q[k - 1] = np.linalg.det(m) / d
    return BilateralCoefficients(hurst_value(h), int(j), q, "cramer")


def _det3_expansions(r):
    r1, r2, r3, r4, r5, r6 = r[1:7]
    d3 = ((1 + r6) * (1 + r4) * (1 + r2) - (1 + r6) * (r1 + r3) ** 2 - (1 + r4) * (r2 + r4) ** 2
          - (1 + r2) * (r1 + r5) ** 2 + 2 * (r1 + r3) * (r2 + r4) * (r1 + r5))
    d31 = ((1 + r6) * (r1 * (1 + r4) - r2 * (r1 + r3))
           - (r1 + r5) * (r1 * (r1 + r5) - r3 * (r1 + r3))
           + (r2 + r4) * (r2 * (r1 + r5) - r3 * (1 + r4)))
    d32 = ((1 + r6) * (r2 * (1 + r2) - r1 * (r1 + r3))
           - (r1 + r5) * (r3 * (1 + r2) - r1 * (r2 + r4))
           + (r2 + r4) * (r3 * (r1 + r3) - r2 * (r2 + r4)))
    d33 = (r3 * ((1 + r4) * (1 + r2) - (r1 + r3) ** 2)
           - (r1 + r5) * (r2 * (1 + r2) - r1 * (r1 + r3))
           + (r2 + r4) * (r2 * (r1 + r3) - r1 * (1 + r4)))
    return d3, d31, d32, d33


def _close(a, b, tol=1e-10):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def bilateral_determinants(h, verify=True):
    """Window-3 determinant and Cramer numerators from their expansions.

    With ``verify`` the expansions are checked against LAPACK determinants
    of the assembled matrices (Cholesky for the SPD matrix, falling back to
    LU when it is singular at H = 1).
    """
    hv = hurst_value(h, allow_one=True)
    r = rho_array(hv, 6)
    d3, d31, d32, d33 = _det3_expansions(r)
    if verify:
        a, b = reduced_system(hv, 3)
        try:
            ref = determinant_spd(a)
        except NotPositiveDefinite:
            ref = np.linalg.det(a)
        if not _close(d3, ref):
            raise CrossCheckError(f"D3 expansion mismatch at H={hv}: {d3!r} vs {ref!r}")
        for k, val in ((1, d31), (2, d32), (3, d33)):
            m = a.copy()
            m[:, 3 - k] = b
            ref = np.linalg.det(m)
            if not _close(val, ref):
                raise CrossCheckError(f"D3,{k} expansion mismatch at H={hv}: {val!r} vs {ref!r}")
    return DeterminantBundle(hv, d3, d31, d32, d33)


def _d32_columns(r):
    # columns of the window-3 matrix with its middle column replaced by the rhs
    r1, r2, r3, r4, r5, r6 = r[1:7]
    return np.array([
        [1 + r6, r1 + r5, r2 + r4],
        [r3, r2, r1],
        [r2 + r4, r1 + r3, 1 + r2],
    ])


def _d32_column_derivs(d):
    # derivative of each column given derivatives d[k] of rho_k (d[0] = 0)
    d1, d2, d3, d4, d5, d6 = d[1:7]
    return np.array([
        [d6, d1 + d5, d2 + d4],
        [d3, d2, d1],
        [d2 + d4, d1 + d3, d2],
    ])


def d32_second_derivative(h):
    """Analytic second H-derivative of D_{3,2} by the multilinear rule.

    For a determinant of columns c1, c2, c3 the second derivative is the sum
    of the three determinants with one column differentiated twice plus twice
    the three determinants with two columns differentiated once.
    """
    hv = hurst_value(h, allow_one=True)
    r = rho_array(hv, 6)
    d1 = np.array([rho_dH(hv, k, 1) for k in range(7)])
    d2 = np.array([rho_dH(hv, k, 2) for k in range(7)])
    c0, c1, c2 = _d32_columns(r), _d32_column_derivs(d1), _d32_column_derivs(d2)

    def det(cols):
        return np.linalg.det(np.array(cols).T)

    total = 0.0
    for i in range(3):
        cols = [c0[m] for m in range(3)]
        cols[i] = c2[i]
        total += det(cols)
    for i, k in ((0, 1), (0, 2), (1, 2)):
        cols = [c0[m] for m in range(3)]
        cols[i] = c1[i]
        cols[k] = c1[k]
        total += 2.0 * det(cols)
    return float(total)


def hat_rho_prime_at_one():
    """Derivatives ``d rho_k / dH`` at H = 1 for k = 1..6 (index 0 unused)."""
    return [0.0] + [rho_dH(1.0, k, 1) for k in range(1, 7)]


def d32_second_derivative_limit():
    """Limit of the second H-derivative of D_{3,2} as H -> 1.

    Evaluates the quadratic form in the derivatives ``rho_k'`` at H = 1
    that remains once the first-order terms vanish.
    """
    p = hat_rho_prime_at_one()
    a1, a2, a3, a4, a5, a6 = p[1:7]
    return (6 * a1 * a2 - 4 * a1 * a3 + 8 * a1 * a4 + 4 * a1 * a5 - 6 * a1 * a6 - 6 * a2 ** 2
            + 2 * a2 * a3 - 12 * a2 * a4 + 6 * a2 * a6 + 4 * a3 ** 2 + 6 * a3 * a4 - 4 * a3 * a5
            - 2 * a3 * a6 - 2 * a4 ** 2 + 2 * a4 * a5)


def _d32(h):
    return bilateral_determinants(h, verify=False).d32


def d32_derivative_profile(h_grid, step=FD_STEP):
    """Rows ``(H, D32, dD32/dH, d2D32/dH2)`` by finite differences.

    Central differences with ``step``; where ``H + step`` would pass 1 the
    second-order one-sided backward formulas are used.
    """
    grid = np.asarray(h_grid, dtype=float)
    if grid.size and (grid.min() <= 0.5 or grid.max() > 1.0):
        raise DomainError("profile grid must lie in (0.5, 1]")
    rows = []
    s = step
    for hv in grid:
        f0 = _d32(hv)
        if hv + s <= 1.0:
            fp, fm = _d32(hv + s), _d32(hv - s)
            d1 = (fp - fm) / (2 * s)
            d2 = (fp - 2 * f0 + fm) / (s * s)
        else:
            f1, f2, f3 = _d32(hv - s), _d32(hv - 2 * s), _d32(hv - 3 * s)
            d1 = (3 * f0 - 4 * f1 + f2) / (2 * s)
            d2 = (2 * f0 - 5 * f1 + 4 * f2 - f3) / (s * s)
        rows.append((float(hv), f0, d1, d2))
    return np.array(rows)


def norm_bilateral(h, n, coeffs=None):
    """Squared norm ``R_2(n) = 2 sum_k q_{n-1}^k rho_k``."""
    hv = hurst_value(h)
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    if coeffs is None:
        coeffs = q_solve(hv, n - 1)
    r = rho_array(hv, n - 1)
    return float(2.0 * np.dot(coeffs.q, r[1:n]))


def norm_bilateral_quadratic(h, n, coeffs=None):
    """Same norm as ``2 sum_{k,l} q^k q^l (rho_|k-l| + rho_{k+l})``."""
    hv = hurst_value(h)
    n = int(n)
    if coeffs is None:
        coeffs = q_solve(hv, n - 1)
    r = rho_array(hv, 2 * n)
    k = np.arange(1, n)
    m = r[np.abs(k[:, None] - k[None, :])] + r[k[:, None] + k[None, :]]
    q = coeffs.q
    return float(2.0 * q @ m @ q)


__all__ = [
    "BilateralCoefficients", "DeterminantBundle", "reduced_system", "full_system", "q_solve",
    "q_closed_small", "q_ladder", "q_recursive", "q_cramer", "bilateral_determinants",
    "d32_second_derivative", "d32_second_derivative_limit", "d32_derivative_profile",
    "hat_rho_prime_at_one", "norm_bilateral", "norm_bilateral_quadratic",
]

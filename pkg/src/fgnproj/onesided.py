"""One-sided projection of an fGn value onto its successors.

``E(D_1 | D_2, ..., D_n) = sum_{k=2}^n gamma_n^k D_k``. Coefficient arrays
are stored with offset 2 (index 0 holds k = 2); the record accessors take k.
"""
from dataclasses import dataclass
import io

import numpy as np
import scipy.linalg

from ._backend import kernels
from .autocov import hurst_value, rho_array
from .exceptions import CrossCheckError, DegenerateDenominator, DomainError
from .gramians import solve_spd

DENOM_THRESHOLD = 1e-14


def _check_order(n):
    if int(n) != n or n < 2:
        raise DomainError(f"projection order n must be an integer >= 2, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class OneSidedCoefficients:
    hurst: float
    n: int
    gamma: np.ndarray
    method: str = "solve"
    residual: float = float("nan")
    condition: float = float("nan")

    def __getitem__(self, k):
        if not 2 <= k <= self.n:
            raise IndexError(f"k={k} outside 2..{self.n}")
        return self.gamma[k - 2]

    def items(self):
        return [(k, float(self.gamma[k - 2])) for k in range(2, self.n + 1)]


@dataclass(frozen=True)
class MartingaleCoefficients:
    """Coefficients of the projection in the orthogonal innovations basis.

    ``innovation[k - 2]`` is the variance of ``D_k - E(D_k | D_2..D_{k-1})``
    (1 for k = 2). ``denominator`` records the variant used for k >= 3.
    """

    hurst: float
    n: int
    r: np.ndarray
    innovation: np.ndarray
    denominator: str

    def __getitem__(self, k):
        if not 2 <= k <= self.n:
            raise IndexError(f"k={k} outside 2..{self.n}")
        return self.r[k - 2]

    def norm(self, weighted=True):
        """Squared norm of the projection rebuilt from the innovations."""
        if weighted:
            return float(np.sum(self.r ** 2 * self.innovation))
        return float(np.sum(self.r ** 2))


@dataclass(frozen=True)
class GammaLadder:
    """All one-sided coefficient vectors of orders 2..nmax from one pass."""

    hurst: float
    nmax: int
    rho: np.ndarray
    table: np.ndarray
    numer: np.ndarray
    denom: np.ndarray

    def row(self, n):
        return self.table[n, : n - 1]


def gamma_ladder(h, nmax):
    hv = hurst_value(h)
    nmax = _check_order(nmax)
    r = rho_array(hv, nmax)
    table, numer, denom = kernels.gamma_ladder(r, nmax, DENOM_THRESHOLD)
    return GammaLadder(hv, nmax, r, table, numer, denom)


def gamma_system(h, n):
    """Matrix and right-hand side of the linear system for order ``n``."""
    hv = hurst_value(h)
    n = _check_order(n)
    r = rho_array(hv, n - 1)
    return scipy.linalg.toeplitz(r[: n - 1]), r[1:n].copy()


def gamma_solve(h, n):
    """Coefficients by a direct SPD solve of the Toeplitz system."""
    hv = hurst_value(h)
    a, b = gamma_system(hv, n)
    res = solve_spd(a, b)
    return OneSidedCoefficients(hv, int(n), res.x, "solve", res.residual, res.condition)


def gamma_recursive(h, n):
    """Coefficients by the order-recursive update started from gamma_2^2 = rho_1."""
    lad = gamma_ladder(h, n)
    g = lad.row(lad.nmax).copy()
    a, b = gamma_system(lad.hurst, lad.nmax)
    resid = float(np.max(np.abs(a @ g - b)))
    return OneSidedCoefficients(lad.hurst, lad.nmax, g, "recursive", resid)


def gamma43_closed(h):
    """Middle coefficient of the order-4 projection from its rational form.

    The numerator is also evaluated in factored form
    ``(1 - rho_2) * hat_rho``; a mismatch above 1e-12 raises.
    """
    hv = hurst_value(h)
    r = rho_array(hv, 3)
    r1, r2, r3 = r[1], r[2], r[3]
    num = r1 * r1 * r2 - r2 ** 3 + r1 * r2 * r3 - r1 * r1 + r2 - r1 * r3
    factored = (1.0 - r2) * (r2 + r2 * r2 - r1 * r1 - r1 * r3)
    if abs(num - factored) > 1e-12:
        raise CrossCheckError(f"numerator factorization fails at H={hv}")
    den = 1.0 + 2.0 * r1 * r1 * r2 - r2 * r2 - 2.0 * r1 * r1
    return num / den


def delta_n(h, n, coeffs=None):
    """``rho_{n-1} - rho_n - sum_k gamma_n^k (rho_{n-k} - rho_{n+1-k})``."""
    hv = hurst_value(h)
    n = _check_order(n)
    if coeffs is None:
        coeffs = gamma_solve(hv, n)
    r = rho_array(hv, n)
    k = np.arange(2, n + 1)
    return float(r[n - 1] - r[n] - np.dot(coeffs.gamma, r[n - k] - r[n + 1 - k]))


def martingale_coeffs(h, n, denominator="innovation"):
    """Projection coefficients on the innovations ``D_k - E(D_k | D_2..D_{k-1})``.

    Parameters
    ----------
    denominator : {"innovation", "shifted"}
        ``"innovation"`` divides by the innovation variance
        ``1 - sum_i gamma_{k-1}^i rho_{i-1}``; ``"shifted"`` uses
        ``1 - sum_i gamma_{k-1}^i rho_i``. Only the former reproduces the
        projection norm (see :meth:`MartingaleCoefficients.norm`).
    """
    if denominator not in ("innovation", "shifted"):
        raise DomainError(f"unknown denominator variant {denominator!r}")
    hv = hurst_value(h)
    n = _check_order(n)
    lad = gamma_ladder(hv, max(n, 2))
    r = lad.rho
    out = np.empty(n - 1)
    innov = np.empty(n - 1)
    out[0] = r[1]
    innov[0] = 1.0
    for k in range(3, n + 1):
        g = lad.row(k - 1)
        i = np.arange(2, k)
        innov[k - 2] = lad.denom[k]
        if denominator == "innovation":
            den = lad.denom[k]
        else:
            den = 1.0 - float(np.dot(g, r[i]))
        if not den >= DENOM_THRESHOLD:
            raise DegenerateDenominator("martingale coefficients", k, den)
        out[k - 2] = lad.numer[k] / den
    return MartingaleCoefficients(hv, n, out, innov, denominator)


def martingale_identity_report(h, n):
    """Residuals of ``R_1(n) = sum R_k^2`` (plain and variance-weighted) per variant."""
    target = norm_one_sided(h, n)
    out = {}
    for variant in ("shifted", "innovation"):
        m = martingale_coeffs(h, n, variant)
        out[variant] = {
            "unweighted": m.norm(weighted=False) - target,
            "weighted": m.norm(weighted=True) - target,
        }
    return out


def norm_one_sided(h, n, coeffs=None):
    """Squared norm ``R_1(n) = sum_k gamma_n^k rho_{k-1}``."""
    hv = hurst_value(h)
    n = _check_order(n)
    if coeffs is None:
        coeffs = gamma_solve(hv, n)
    r = rho_array(hv, n - 1)
    return float(np.dot(coeffs.gamma, r[1:n]))


def norm_one_sided_quadratic(h, n, coeffs=None):
    """Same norm as the quadratic form ``sum_{k,l} gamma^k gamma^l rho_|k-l|``."""
    hv = hurst_value(h)
    if coeffs is None:
        coeffs = gamma_solve(hv, n)
    a, _ = gamma_system(hv, n)
    g = coeffs.gamma
    return float(g @ a @ g)


def predict(h, history):
    """Best linear predictor of the next value given ``history`` (oldest first)."""
    x = np.asarray(history, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise DomainError("history must be a non-empty 1-d sequence")
    n = x.size + 1
    g = gamma_solve(h, n).gamma
    # coefficient of history[k-1] is gamma_n^{n-k+1}; reversed storage
    return float(np.dot(g[::-1], x))


def gamma_table_csv(records, raw=False):
    """Long-format CSV with columns H,n,k,gamma."""
    buf = io.StringIO()
    buf.write("H,n,k,gamma\n")
    for rec in records:
        for k, v in rec.items():
            val = f"{v:.17g}" if raw else f"{v:.6f}"
            buf.write(f"{rec.hurst:g},{rec.n},{k},{val}\n")
    return buf.getvalue()

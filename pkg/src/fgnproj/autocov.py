"""Covariance of fractional Brownian motion and autocovariance of its increments.

All powers ``a**(2H)`` go through the C library ``pow`` (``math.pow`` here,
``libc`` in the compiled kernels) so that the scalar :func:`rho` and the
batched :func:`rho_prefix` agree bit for bit, and integer powers at H = 1/2
are exact.
"""
from dataclasses import dataclass
import math

import numpy as np

from ._backend import kernels
from .exceptions import CrossCheckError, DomainError


@dataclass(frozen=True)
class HurstIndex:
    """Hurst index, validated once on construction.

    ``value == 1`` is admitted only when ``allow_one`` is set; operations
    that need a limit at H = 1 (derivatives, determinants) pass it.
    """

    value: float
    allow_one: bool = False

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v) or v <= 0.0 or v > 1.0:
            raise DomainError(f"Hurst index must lie in (0, 1), got {self.value!r}")
        if v == 1.0 and not self.allow_one:
            raise DomainError("H = 1 is only admitted by limit operations")
        object.__setattr__(self, "value", v)

    def __float__(self):
        return self.value


def hurst_value(h, allow_one=False):
    """Return ``h`` as a validated float."""
    if isinstance(h, HurstIndex):
        if h.value == 1.0 and not allow_one:
            raise DomainError("H = 1 is only admitted by limit operations")
        return h.value
    return HurstIndex(h, allow_one=allow_one).value


def _check_lag(k):
    if isinstance(k, (bool, np.bool_)) or int(k) != k or k < 0:
        raise DomainError(f"lag must be a non-negative integer, got {k!r}")
    return int(k)


def _pow2h(a, two_h):
    if a == 0:
        return 0.0
    return math.pow(a, two_h)


@dataclass(frozen=True)
class AutocovTable:
    """rho_0..rho_m for a fixed Hurst index."""

    hurst: float
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class RhoDerivativeTable:
    """First and second H-derivatives of rho_0..rho_m."""

    hurst: float
    first: np.ndarray
    second: np.ndarray


def fbm_covariance(h, t, s):
    """Covariance ``E B_t B_s`` of fractional Brownian motion.

    Parameters
    ----------
    h : float or HurstIndex
    t, s : float
        Non-negative times.
    """
    two_h = 2.0 * hurst_value(h, allow_one=True)
    if t < 0 or s < 0:
        raise DomainError("times must be non-negative")
    return 0.5 * (_pow2h(t, two_h) + _pow2h(s, two_h) - _pow2h(abs(t - s), two_h))


def rho(h, k):
    """Autocovariance at lag ``k`` of unit-step fractional Gaussian noise."""
    two_h = 2.0 * hurst_value(h, allow_one=True)
    k = _check_lag(k)
    if k == 0:
        return 1.0
    return 0.5 * (_pow2h(k + 1, two_h) - 2.0 * _pow2h(k, two_h) + _pow2h(k - 1, two_h))


def rho_prefix(h, m):
    """Table of ``rho_0..rho_m``; entry k equals ``rho(h, k)`` exactly."""
    hv = hurst_value(h, allow_one=True)
    m = _check_lag(m)
    return AutocovTable(hv, kernels.rho_table(hv, m))


def rho_array(h, m):
    """Writable ndarray of ``rho_0..rho_m`` (no wrapper)."""
    return kernels.rho_table(hurst_value(h, allow_one=True), _check_lag(m))


def _dterm(a, hv, order):
    # d^order/dH^order of a^(2H), with 0^(2H) log 0 := 0
    if a == 0:
        return 0.0
    la = math.log(a)
    return math.pow(a, 2.0 * hv) * (2.0 * la) ** order


def rho_dH(h, k, order=1):
    """Analytic derivative of ``rho_k`` with respect to H.

    Parameters
    ----------
    h : float or HurstIndex
        Hurst index in (0, 1]; H = 1 is allowed.
    k : int
        Lag.
    order : {1, 2}
    """
    if order not in (1, 2):
        raise DomainError(f"unsupported derivative order {order!r}")
    hv = hurst_value(h, allow_one=True)
    k = _check_lag(k)
    if k == 0:
        return 0.0
    return 0.5 * (_dterm(k + 1, hv, order) - 2.0 * _dterm(k, hv, order) + _dterm(k - 1, hv, order))


def rho_dH_prefix(h, m):
    hv = hurst_value(h, allow_one=True)
    m = _check_lag(m)
    first = np.array([rho_dH(hv, k, 1) for k in range(m + 1)])
    second = np.array([rho_dH(hv, k, 2) for k in range(m + 1)])
    return RhoDerivativeTable(hv, first, second)


def hat_rho(h):
    """``rho_2 + rho_2**2 - rho_1**2 - rho_1*rho_3``.

    Evaluated from the autocovariances and from the expanded power sum
    ``(9^x - 8^x - 2*6^x + 4*4^x - 2*2^x - 1) / 4`` with ``x = 2H``; the two
    must agree to 1e-12 or :class:`CrossCheckError` is raised.
    """
    hv = hurst_value(h, allow_one=True)
    r1, r2, r3 = rho(hv, 1), rho(hv, 2), rho(hv, 3)
    from_rho = r2 + r2 * r2 - r1 * r1 - r1 * r3
    x = 2.0 * hv
    powers = 0.25 * (
        _pow2h(9, x) - _pow2h(8, x) - 2.0 * _pow2h(6, x) + 4.0 * _pow2h(4, x) - 2.0 * _pow2h(2, x) - 1.0
    )
    if abs(from_rho - powers) > 1e-12:
        raise CrossCheckError(f"hat_rho forms disagree at H={hv}: {from_rho!r} vs {powers!r}")
    return from_rho

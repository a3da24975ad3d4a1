import mpmath
import numpy as np
import pytest

from fgnproj import _backend, autocov, bilateral, gramians, onesided

KERNEL_USERS = (autocov, gramians, onesided, bilateral)
TABLE_HURSTS = (0.51, 0.6, 0.7, 0.8, 0.9, 0.99)


@pytest.fixture(params=sorted(_backend.available_backends()))
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    k = _backend.available_backends()[request.param]
    for mod in KERNEL_USERS:
        monkeypatch.setattr(mod, "kernels", k)
    return request.param


def _mp_rho(h, k):
    h = mpmath.mpf(h)
    if k == 0:
        return mpmath.mpf(1)
    p = lambda a: mpmath.mpf(a) ** (2 * h) if a else mpmath.mpf(0)
    return (p(k + 1) - 2 * p(k) + p(k - 1)) / 2


def mp_rho(h, k, dps=40):
    """High-precision autocovariance; ``dps=None`` keeps the caller's precision."""
    if dps is None:
        return _mp_rho(h, k)
    with mpmath.workdps(dps):
        return _mp_rho(h, k)


def mp_gamma(h, n, dps=40):
    """One-sided coefficients from a high-precision solve."""
    with mpmath.workdps(dps):
        r = [mp_rho(h, k, dps) for k in range(n)]
        a = mpmath.matrix(n - 1, n - 1)
        for i in range(n - 1):
            for j in range(n - 1):
                a[i, j] = r[abs(i - j)]
        b = mpmath.matrix([r[k] for k in range(1, n)])
        x = mpmath.lu_solve(a, b)
        return np.array([float(v) for v in x])


def mp_q(h, j, dps=40):
    """Bilateral coefficients q^1..q^j from the full 2j-dimensional system."""
    with mpmath.workdps(dps):
        n = j + 1
        r = [mp_rho(h, k, dps) for k in range(2 * n + 1)]
        pos = [k for k in range(1, 2 * n) if k != n]
        a = mpmath.matrix(2 * j, 2 * j)
        for i, p in enumerate(pos):
            for m, s in enumerate(pos):
                a[i, m] = r[abs(p - s)]
        b = mpmath.matrix([r[abs(n - p)] for p in pos])
        x = mpmath.lu_solve(a, b)
        # pos[j - k] is n - k
        return np.array([float(x[j - k]) for k in range(1, j + 1)])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

"""Covariance matrices of fBm and fGn, their Cholesky triangles, SPD solves."""
from dataclasses import dataclass, field
import enum
import io
import math
import warnings

import numpy as np
import scipy.linalg
from scipy.linalg import lapack
from scipy.special import ndtri

from ._backend import kernels
from .autocov import hurst_value, rho_array
from .exceptions import DomainError, IllConditionedWarning, NotPositiveDefinite

COND_WARN = 1e12


class GramKind(enum.Enum):
    FBM = "fbm"
    FGN = "fgn"


class TriangleKind(enum.Enum):
    FBM_D = "fbm_d"
    FGN_L = "fgn_l"


@dataclass(frozen=True)
class GramMatrix:
    kind: GramKind
    hurst: float
    entries: np.ndarray

    @property
    def size(self):
        return self.entries.shape[0]


@dataclass(frozen=True)
class CholeskyTriangle:
    """Lower Cholesky factor of a Gram matrix.

    ``factor[p - 1, j - 1]`` holds d_{j,p} (or l_{j,p}); use :meth:`entry`
    with 1-based indices to avoid offsets.
    """

    kind: TriangleKind
    hurst: float
    factor: np.ndarray

    @property
    def size(self):
        return self.factor.shape[0]

    def entry(self, j, k):
        """Entry ``(j, k)`` with ``1 <= j <= k <= size``."""
        if not 1 <= j <= k <= self.size:
            raise IndexError((j, k))
        return self.factor[k - 1, j - 1]

    def row(self, k):
        """Entries ``(1, k), ..., (k, k)``."""
        return self.factor[k - 1, :k]

    def reconstruct(self):
        return self.factor @ self.factor.T


@dataclass(frozen=True)
class SolveResult:
    """Solution of a symmetric system with diagnostics.

    ``method`` is ``"cholesky"`` or ``"symmetric-indefinite"`` (the latter
    only when the caller allowed the fallback).
    """

    x: np.ndarray
    condition: float
    residual: float
    method: str = "cholesky"
    notes: tuple = field(default=())


@dataclass(frozen=True)
class SamplePathBatch:
    hurst: float
    seed: int
    paths: np.ndarray

    @property
    def length(self):
        return self.paths.shape[1]

    @property
    def count(self):
        return self.paths.shape[0]


def build_gram(h, kind, n):
    """Covariance matrix of fBm at times 1..n or of n consecutive fGn values."""
    hv = hurst_value(h, allow_one=True)
    kind = GramKind(kind)
    if int(n) != n or n < 1:
        raise DomainError(f"matrix size must be a positive integer, got {n!r}")
    n = int(n)
    if kind is GramKind.FGN:
        entries = scipy.linalg.toeplitz(rho_array(hv, n - 1))
    else:
        t = np.arange(1, n + 1, dtype=float)
        # libm pow, as in the scalar covariance
        p = np.array([math.pow(a, 2.0 * hv) for a in range(n + 1)])
        lag = np.abs(t[:, None] - t[None, :]).astype(int)
        entries = 0.5 * (p[1:, None] + p[None, 1:] - p[lag])
    entries.setflags(write=False)
    return GramMatrix(kind, hv, entries)


def cholesky(g):
    """Unpivoted Cholesky triangle of a Gram matrix.

    Raises
    ------
    NotPositiveDefinite
        With the 1-based pivot index where the factorization broke down.
    """
    L = kernels.cholesky_lower(np.ascontiguousarray(g.entries))
    kind = TriangleKind.FBM_D if g.kind is GramKind.FBM else TriangleKind.FGN_L
    return CholeskyTriangle(kind, g.hurst, L)


def _as_matrix(a):
    if isinstance(a, GramMatrix):
        a = a.entries
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("expected a square matrix")
    return a


def _potrf(a):
    c, info = lapack.dpotrf(a, lower=1, clean=1)
    if info > 0:
        raise NotPositiveDefinite(info)
    if info < 0:
        raise ValueError(f"dpotrf: illegal argument {-info}")
    return c


def _rcond(c, anorm):
    rcond, info = lapack.dpocon(c, anorm, uplo="L")
    return rcond


def solve_spd(a, rhs, allow_indefinite=False):
    """Solve ``a @ x = rhs`` for symmetric positive definite ``a``.

    Parameters
    ----------
    a : GramMatrix or (n, n) array_like
    rhs : (n,) or (n, m) array_like
    allow_indefinite : bool
        On Cholesky breakdown, fall back to Bunch-Kaufman elimination
        instead of raising.

    Returns
    -------
    SolveResult
        ``condition`` is the LAPACK 1-norm condition estimate. An
        :class:`IllConditionedWarning` is emitted above 1e12.
    """
    a = _as_matrix(a)
    b = np.asarray(rhs, dtype=float)
    if b.shape[0] != a.shape[0]:
        raise DomainError("dimension mismatch between matrix and right-hand side")
    anorm = np.abs(a).sum(axis=0).max() if a.size else 0.0
    try:
        c = _potrf(a)
    except NotPositiveDefinite:
        if not allow_indefinite:
            raise
        x = scipy.linalg.solve(a, b, assume_a="sym")
        cond = np.linalg.cond(a, 1)
        method = "symmetric-indefinite"
    else:
        x = scipy.linalg.cho_solve((c, True), b)
        rc = _rcond(c, anorm)
        cond = np.inf if rc == 0 else 1.0 / rc
        method = "cholesky"
    resid = float(np.max(np.abs(a @ x - b))) if b.size else 0.0
    notes = ()
    if cond > COND_WARN:
        msg = f"condition estimate {cond:.3e} exceeds {COND_WARN:.0e}"
        warnings.warn(msg, IllConditionedWarning, stacklevel=2)
        notes = (msg,)
    return SolveResult(x, float(cond), resid, method, notes)


def determinant_spd(a):
    """Determinant of a symmetric positive definite matrix via Cholesky."""
    a = _as_matrix(a)
    c = _potrf(a)
    d = np.diag(c)
    return float(np.prod(d * d))


def sample_fgn(h, n, count, seed):
    """Draw ``count`` independent fGn paths of length ``n``.

    Normals come from the inverse CDF applied to a Philox (counter-based)
    stream, so batches are reproducible for a fixed seed.
    """
    hv = hurst_value(h)
    if n < 1 or count < 1:
        raise DomainError("n and count must be positive")
    L = cholesky(build_gram(hv, GramKind.FGN, n)).factor
    bg = np.random.Philox(np.uint64(seed))
    raw = bg.random_raw(count * n)
    u = ((raw >> np.uint64(11)).astype(float) + 0.5) * 2.0 ** -53
    z = ndtri(u).reshape(count, n)
    paths = z @ L.T
    paths.setflags(write=False)
    return SamplePathBatch(hv, int(seed), paths)


def matrix_to_csv(m, lower=False):
    """Row-major CSV with 17 significant digits; ``lower`` keeps j <= k only."""
    m = np.asarray(m)
    buf = io.StringIO()
    for i, row in enumerate(m):
        vals = row[: i + 1] if lower else row
        buf.write(",".join(f"{v:.17g}" for v in vals))
        buf.write("\n")
    return buf.getvalue()


def matrix_from_csv(text):
    """Inverse of :func:`matrix_to_csv`; ragged (triangular) rows are zero-padded."""
    rows = [[float(v) for v in line.split(",")] for line in text.strip().splitlines()]
    n = max(len(r) for r in rows)
    out = np.zeros((len(rows), n))
    for i, r in enumerate(rows):
        out[i, : len(r)] = r
    return out

"""Sweeps, conjecture audits, root and maximum search, limits at H = 1, tables.

Sweeps over a grid of Hurst indices run point by point in a thread pool
whose size is read from the ``FGN_THREADS`` environment variable (default
1). Results are always assembled in grid order.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
import os

import numpy as np

from . import _io
from .autocov import hat_rho, hurst_value
from .bilateral import (
    bilateral_determinants, d32_derivative_profile, norm_bilateral, q_ladder, q_solve,
)
from .exceptions import DomainError, FGNError, IllConditioned, NoSignChange
from .gramians import GramKind, build_gram, cholesky, sample_fgn
from .onesided import delta_n, gamma_ladder, gamma_solve, norm_one_sided

Q_TABLE_HURSTS = (0.51, 0.6, 0.7, 0.8, 0.9, 0.99)
NORM_HURSTS = (0.6, 0.7, 0.8, 0.9, 0.99)
NORM_SIZES = (2, 50, 100, 200, 300, 400)
ROOT_WINDOWS = tuple(range(3, 11))
TABLE_IDS = tuple(f"Q@{h:g}" for h in Q_TABLE_HURSTS) + ("NORMS", "ROOTS")
FIGURE_IDS = ("Q1", "Q2", "Q3", "Q4", "Q5", "QSECOND", "D31_D33", "D32",
              "D32_D1", "D32_D2", "NORMS_VS_N", "NORMS_VS_H")
CONJECTURE_IDS = ("A1", "A2", "A3", "Q2SIGN", "QCOLUMN", "QDOMINANT", "DELTA")

GRID_POINTS = 512
GRID_RANGE = (0.501, 0.9999)
ROOT_BRACKET = (0.9, 1.0 - 1e-6)
MAX_BRACKET = (0.5, 1.0 - 1e-6)
LIMIT_BASE = 1e-2
LIMIT_MIN_STEP = 1e-6
MAX_PROBE = 1e-5
NORMS_VS_H_SIZE = 500


def thread_count():
    try:
        return max(1, int(os.environ.get("FGN_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def default_grid(points=GRID_POINTS, lo=GRID_RANGE[0], hi=GRID_RANGE[1]):
    return np.linspace(lo, hi, int(points))


# ---------------------------------------------------------------- audits

@dataclass(frozen=True)
class Violation:
    hurst: float
    n: int
    k: int
    value: float


@dataclass(frozen=True)
class ConjectureReport:
    """Outcome of one inequality family checked over a grid.

    ``first_violation`` is the first offending point in (grid, n, k) order.
    ``failures`` lists grid points where a numerical error prevented the
    check; ``observations`` holds recorded facts that are not violations
    (negative second bilateral coefficients for Q2SIGN).
    """

    conjecture: str
    h_grid: tuple
    n_range: tuple
    status: str
    first_violation: Violation = None
    checked: int = 0
    min_margin: float = math.inf
    failures: tuple = ()
    observations: tuple = field(default=())

    @property
    def holds(self):
        return self.status == "holds-on-grid"


def _first_negative(margins, hv, index_of):
    """First entry with margin <= 0 in row-major order, or None."""
    bad = np.argwhere(margins <= 0.0)
    if bad.size == 0:
        return None
    i, j = bad[0]
    n, k = index_of(int(i), int(j))
    return Violation(hv, n, k, float(margins[i, j]))


def _audit_a1(hv, n_max):
    # d_{j,k} > d_{j+1,k} for 1 <= j < k <= n_max
    L = cholesky(build_gram(hv, GramKind.FBM, n_max)).factor
    diff = L[:, :-1] - L[:, 1:]
    p, j = np.indices(diff.shape)
    mask = j + 1 <= p
    margins = np.where(mask, diff, np.inf)
    v = _first_negative(margins, hv, lambda p_, j_: (p_ + 1, j_ + 1))
    return int(mask.sum()), float(margins.min()) if mask.any() else math.inf, v, ()


def _audit_a2(hv, n_max):
    # l_{j,k} > l_{j+1,k+1} for 1 <= j <= k < n_max
    L = cholesky(build_gram(hv, GramKind.FGN, n_max)).factor
    diff = L[:-1, :-1] - L[1:, 1:]
    p, j = np.indices(diff.shape)
    mask = j <= p
    margins = np.where(mask, diff, np.inf)
    v = _first_negative(margins, hv, lambda p_, j_: (p_ + 1, j_ + 1))
    return int(mask.sum()), float(margins.min()) if mask.any() else math.inf, v, ()


def _audit_a3(hv, n_max):
    count, low, first = 0, math.inf, None
    for n in range(2, n_max + 1):
        g = gamma_solve(hv, n).gamma
        count += g.size
        low = min(low, float(g.min()))
        if first is None and g.min() <= 0.0:
            k = int(np.argmax(g <= 0.0)) + 2
            first = Violation(hv, n, k, float(g[k - 2]))
    return count, low, first, ()


def _audit_delta(hv, n_max):
    count, low, first = 0, math.inf, None
    for n in range(2, n_max + 1):
        margin = -delta_n(hv, n)
        count += 1
        low = min(low, margin)
        if first is None and margin <= 0.0:
            first = Violation(hv, n, 0, -margin)
    return count, low, first, ()


def _q_rows(hv, n_max):
    return [q_solve(hv, j).q for j in range(1, n_max)]


def _audit_q2sign(hv, n_max):
    count, low, first, seen = 0, math.inf, None, []
    for j, q in enumerate(_q_rows(hv, n_max), start=1):
        for k, v in enumerate(q, start=1):
            if k == 2:
                if v <= 0.0:
                    seen.append(Violation(hv, j, k, float(v)))
                continue
            count += 1
            low = min(low, float(v))
            if first is None and v <= 0.0:
                first = Violation(hv, j, k, float(v))
    return count, low, first, tuple(seen)


def _audit_qcolumn(hv, n_max):
    # Q_j^k > Q_{j+1}^k
    rows = _q_rows(hv, n_max)
    count, low, first = 0, math.inf, None
    for j in range(1, len(rows)):
        a, b = rows[j - 1], rows[j]
        for k in range(1, j + 1):
            m = float(a[k - 1] - b[k - 1])
            count += 1
            low = min(low, m)
            if first is None and m <= 0.0:
                first = Violation(hv, j, k, m)
    return count, low, first, ()


def _audit_qdominant(hv, n_max):
    # Q_j^1 > Q_j^k for k >= 2
    count, low, first = 0, math.inf, None
    for j, q in enumerate(_q_rows(hv, n_max), start=1):
        for k in range(2, j + 1):
            m = float(q[0] - q[k - 1])
            count += 1
            low = min(low, m)
            if first is None and m <= 0.0:
                first = Violation(hv, j, k, m)
    return count, low, first, ()


_AUDITS = {
    "A1": _audit_a1, "A2": _audit_a2, "A3": _audit_a3, "Q2SIGN": _audit_q2sign,
    "QCOLUMN": _audit_qcolumn, "QDOMINANT": _audit_qdominant, "DELTA": _audit_delta,
}


def check_conjectures(h_grid, n_max, ids=CONJECTURE_IDS):
    """Audit the positivity and monotonicity conjectures on a grid.

    Parameters
    ----------
    h_grid : sequence of float
        Hurst indices in (0.5, 1).
    n_max : int
        Largest matrix size, projection order or window + 1 examined.
    ids : sequence of str
        Subset of :data:`CONJECTURE_IDS`.

    Returns
    -------
    list of ConjectureReport
        One per id, in the order given. A numerical failure at a grid point
        is recorded in ``failures`` and does not abort the sweep.
    """
    grid = tuple(float(h) for h in h_grid)
    for h in grid:
        if not 0.5 < h < 1.0:
            raise DomainError(f"grid point {h} outside (0.5, 1)")
    if int(n_max) != n_max or n_max < 2:
        raise DomainError("n_max must be an integer >= 2")
    n_max = int(n_max)
    unknown = [i for i in ids if i not in _AUDITS]
    if unknown:
        raise DomainError(f"unknown conjecture ids {unknown}")

    def run_point(hv):
        out = {}
        for cid in ids:
            try:
                out[cid] = _AUDITS[cid](hv, n_max)
            except (FGNError, np.linalg.LinAlgError) as exc:
                out[cid] = exc
        return out

    per_point = _pmap(run_point, grid)
    reports = []
    for cid in ids:
        count, low, first, fails, seen = 0, math.inf, None, [], []
        for hv, res in zip(grid, per_point):
            r = res[cid]
            if isinstance(r, Exception):
                fails.append((hv, f"{type(r).__name__}: {r}"))
                continue
            c, m, v, obs = r
            count += c
            low = min(low, m)
            seen.extend(obs)
            if first is None and v is not None:
                first = v
        status = "violated" if first is not None else "holds-on-grid"
        reports.append(ConjectureReport(cid, grid, (2, n_max), status, first, count, low,
                                        tuple(fails), tuple(seen)))
    return reports


def hat_rho_audit(step=1e-3):
    """Minimum of ``hat_rho`` on the interior of a uniform grid of (0.5, 1).

    Returns ``(interior_min, value_at_half, value_at_one)``.
    """
    m = int(round(0.5 / step))
    interior = [hat_rho(0.5 + i * step) for i in range(1, m)]
    return min(interior), hat_rho(0.5), hat_rho(1.0)


def shape_audit(j, grid=None):
    """Grid-level shape of the curves ``H -> Q_j^k``.

    Returns a dict ``k -> bool``: for k = 1 whether the curve is strictly
    increasing, for k >= 2 whether it rises then falls (at most one change
    of direction, from up to down).
    """
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    vals = np.array(_pmap(lambda h: q_solve(h, j).q, grid))
    out = {}
    for k in range(1, j + 1):
        d = np.diff(vals[:, k - 1])
        if k == 1:
            out[k] = bool(np.all(d > 0))
        else:
            s = np.sign(d)
            s = s[s != 0]
            changes = np.flatnonzero(s[1:] != s[:-1])
            out[k] = bool(len(changes) == 0 or (len(changes) == 1 and s[0] > 0))
    return out


# ---------------------------------------------------------------- roots and maxima

@dataclass(frozen=True)
class RootResult:
    """Zero of ``H -> Q_j^2(H)`` certified by a sign-changing bracket."""

    window: int
    root: float
    lo: float
    hi: float
    residual: float
    slope: float

    @property
    def width(self):
        return self.hi - self.lo


def _q_entry(h, j, k):
    return float(q_solve(h, j).q[k - 1])


def find_q2_root(j, tol=1e-7, bracket=ROOT_BRACKET):
    """Bisection for the sign change of the second bilateral coefficient.

    Parameters
    ----------
    j : int
        Window, at least 3.
    tol : float
        Final bracket width, at least 1e-7.
    """
    if int(j) != j or j < 3:
        raise DomainError(f"window must be an integer >= 3, got {j!r}")
    if not tol >= 1e-7:
        raise DomainError(f"tolerance must be >= 1e-7, got {tol!r}")
    j = int(j)
    lo, hi = float(bracket[0]), float(bracket[1])
    flo, fhi = _q_entry(lo, j, 2), _q_entry(hi, j, 2)
    if flo == 0.0:
        return RootResult(j, lo, lo, lo, 0.0, math.nan)
    if np.sign(flo) == np.sign(fhi):
        raise NoSignChange(f"Q_{j}^2 has the same sign at {lo} and {hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = _q_entry(mid, j, 2)
        if fm == 0.0:
            lo = hi = mid
            flo = fhi = 0.0
            break
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    root = 0.5 * (lo + hi)
    slope = (fhi - flo) / (hi - lo) if hi > lo else math.nan
    return RootResult(j, root, lo, hi, abs(_q_entry(root, j, 2)), slope)


@dataclass(frozen=True)
class MaxResult:
    """Maximum of ``H -> Q_j^k(H)`` with a local optimality check.

    ``certified`` is true when the value at ``argmax`` is at least the
    values at ``argmax +- probe`` (probes outside the search interval are
    skipped).
    """

    window: int
    k: int
    argmax: float
    value: float
    probe: float
    certified: bool


def _golden_max(f, a, b, tol):
    """Golden-section search for a maximum of ``f`` on the open interval (a, b)."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    # interior points only; the endpoints are never evaluated
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _certify(f, x, fx, probe, lo, hi, sense):
    ok = True
    for y in (x - probe, x + probe):
        if lo < y < hi:
            ok = ok and sense * fx >= sense * f(y)
    return ok


def find_max(j, k, tol=1e-9, bracket=MAX_BRACKET, probe=MAX_PROBE):
    """Golden-section search for the maximum of ``Q_j^k`` over H."""
    if int(j) != j or int(k) != k or not 1 <= k <= j:
        raise DomainError(f"need 1 <= k <= j, got j={j!r}, k={k!r}")
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    j, k = int(j), int(k)
    f = lambda h: _q_entry(h, j, k)
    x, fx = _golden_max(f, float(bracket[0]), float(bracket[1]), tol)
    return MaxResult(j, k, x, fx, probe, bool(_certify(f, x, fx, probe, *bracket, 1.0)))


@dataclass(frozen=True)
class MinResult:
    argmin: float
    value: float
    probe: float
    certified: bool


D32_MIN_BRACKET = (0.993, 1.0)


def find_d32_min(tol=1e-10, bracket=D32_MIN_BRACKET, probe=MAX_PROBE):
    """Minimum of the window-3 middle Cramer numerator ``D_{3,2}`` over H."""
    f = lambda h: float(bilateral_determinants(h, verify=False).d32)
    x, fx = _golden_max(lambda h: -f(h), float(bracket[0]), float(bracket[1]), tol)
    return MinResult(x, -fx, probe, bool(_certify(f, x, -fx, probe, *bracket, -1.0)))


# ---------------------------------------------------------------- limits at H = 1

@dataclass(frozen=True)
class LimitEstimate:
    """Extrapolated value at H = 1 and the gap between the last two extrapolants."""

    window: int
    k: int
    value: float
    uncertainty: float
    order: int
    tableau: np.ndarray = field(repr=False, default=None)


def limit_at_one(j, k=None, order=6, base=LIMIT_BASE):
    """Richardson extrapolation of ``Q_j^k`` (or of the row sum) as H -> 1.

    Samples at ``H = 1 - base * 2**-m`` for m = 0..order assuming an
    expansion in integer powers of ``1 - H``.

    Parameters
    ----------
    j : int
        Window, 1..10.
    k : int or None
        Coefficient index; None selects ``sum_k Q_j^k``.
    order : int
        Extrapolation depth.

    Raises
    ------
    IllConditioned
        If the smallest step would fall below 1e-6, where the reduced
        system becomes too ill-conditioned for the extrapolation.
    """
    if int(j) != j or not 1 <= j <= 10:
        raise DomainError(f"window must be in 1..10, got {j!r}")
    if k is not None and not 1 <= k <= j:
        raise DomainError(f"k must be in 1..{j}, got {k!r}")
    if int(order) != order or order < 1:
        raise DomainError("order must be a positive integer")
    order = int(order)
    steps = base * 2.0 ** -np.arange(order + 1)
    if steps[-1] < LIMIT_MIN_STEP:
        raise IllConditioned(f"smallest step {steps[-1]:.3g} below {LIMIT_MIN_STEP:g}")

    def sample(eps):
        q = q_solve(1.0 - eps, j).q
        return float(q.sum()) if k is None else float(q[k - 1])

    T = np.full((order + 1, order + 1), np.nan)
    T[:, 0] = [sample(e) for e in steps]
    for i in range(1, order + 1):
        f = 2.0 ** i
        T[i:, i] = (f * T[i:, i - 1] - T[i - 1:-1, i - 1]) / (f - 1.0)
    value = T[order, order]
    unc = abs(value - T[order - 1, order - 1])
    return LimitEstimate(int(j), 0 if k is None else int(k), float(value), float(unc), order, T)


# ---------------------------------------------------------------- tables

def _q_table_rows(hv, jmax=10):
    rows = []
    for j in range(1, jmax + 1):
        rows.append(q_solve(hv, j).q.tolist())
    return rows


def _norm_rows():
    def one(hv):
        r1 = [norm_one_sided(hv, n) for n in NORM_SIZES]
        r2 = [norm_bilateral(hv, n) for n in NORM_SIZES]
        return (hv, r1, r2)
    return _pmap(one, NORM_HURSTS)


def table_data(table_id):
    """Full-precision content of a table as ``(header, rows, meta)``.

    Rows hold floats (or None for absent cells) plus leading label cells.
    """
    if table_id not in TABLE_IDS:
        raise DomainError(f"unknown table id {table_id!r}; expected one of {TABLE_IDS}")
    if table_id.startswith("Q@"):
        hv = float(table_id[2:])
        header = ["n"] + [str(k) for k in range(1, 11)]
        rows = []
        for j, q in enumerate(_q_table_rows(hv), start=1):
            rows.append([j] + q + [None] * (10 - len(q)))
        return header, rows, {"table": table_id, "H": hv}
    if table_id == "NORMS":
        header = ["H", "quantity"] + [str(n) for n in NORM_SIZES]
        rows = []
        for hv, r1, r2 in _norm_rows():
            rows.append([hv, "R1"] + r1)
            rows.append([hv, "R2"] + r2)
        return header, rows, {"table": table_id, "n": list(NORM_SIZES)}
    results = _pmap(lambda j: find_q2_root(j), ROOT_WINDOWS)
    rows = [[r.window, r.root] for r in results]
    return ["n", "root"], rows, {"table": table_id, "tol": 1e-7}


_TABLE_DECIMALS = {"ROOTS": 5}


def _format_cell(v, decimals, raw):
    if v is None:
        return None
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(v)
    return _io.fmt_raw(v) if raw else _io.fmt_fixed(v, decimals)


def emit_tables(table_id, fmt="csv", raw=False):
    """Serialize a table.

    ``fmt="csv"`` rounds to the reference precision (6 decimals, 5 for the
    roots) unless ``raw`` is set; ``fmt="json"`` always carries full
    precision.
    """
    header, rows, meta = table_data(table_id)
    if fmt == "json":
        return _io.format_json(meta, [dict(zip(header, r)) for r in rows])
    if fmt != "csv":
        raise DomainError(f"unknown format {fmt!r}")
    dec = _TABLE_DECIMALS.get(table_id, 6)
    cells = []
    for r in rows:
        out = []
        for i, v in enumerate(r):
            if table_id == "NORMS" and i == 0:
                out.append(f"{v:g}")
            else:
                out.append(_format_cell(v, dec, raw))
        cells.append(out)
    return _io.format_csv(header, cells)


def golden_name(table_id):
    if table_id.startswith("Q@"):
        return f"q_H{table_id[2:]}.csv"
    return {"NORMS": "norms.csv", "ROOTS": "roots.csv"}[table_id]


@dataclass(frozen=True)
class Mismatch:
    table: str
    row: int
    column: str
    golden: str
    computed: float


def verify_golden(table_id, slack=1e-6):
    """Compare a computed table with its bundled transcription.

    Each computed value is rounded to the number of decimals printed in the
    golden cell and must differ by at most one unit in that place plus
    ``slack``. Returns the list of mismatching cells.
    """
    header_g, rows_g = _io.parse_csv(_io.golden_text(golden_name(table_id)))
    header, rows, _ = table_data(table_id)
    if header_g != header or len(rows_g) != len(rows):
        return [Mismatch(table_id, -1, "shape", ",".join(header_g), math.nan)]
    bad = []
    for i, (rg, rc) in enumerate(zip(rows_g, rows)):
        for col, g, c in zip(header, rg, rc):
            if g is None and c is None:
                continue
            if g is None or c is None:
                bad.append(Mismatch(table_id, i, col, str(g), math.nan if c is None else c))
                continue
            if isinstance(c, str):
                if g != c:
                    bad.append(Mismatch(table_id, i, col, g, math.nan))
                continue
            d = _io.decimals_of(g)
            ulp = 10.0 ** -d
            if abs(round(float(c), d) - float(g)) > ulp + slack:
                bad.append(Mismatch(table_id, i, col, g, float(c)))
    return bad


# ---------------------------------------------------------------- figure data

def _norms_vs_n(points):
    nmax = int(points) + 1
    cols = []
    for hv in (0.6, 0.7, 0.8, 0.9):
        lad = gamma_ladder(hv, nmax)
        r = lad.rho
        r1 = [float(np.dot(lad.row(n), r[1:n])) for n in range(2, nmax + 1)]
        q = q_ladder(hv, nmax - 1)
        r2 = [float(2.0 * np.dot(q[n - 1, : n - 1], r[1:n])) for n in range(2, nmax + 1)]
        cols += [r1, r2]
    header = ["n"] + [f"{name}@{hv:g}" for hv in (0.6, 0.7, 0.8, 0.9) for name in ("R1", "R2")]
    rows = [[n] + [c[i] for c in cols] for i, n in enumerate(range(2, nmax + 1))]
    return header, rows


def figure_data(fig_id, points=GRID_POINTS, h_range=GRID_RANGE):
    """Series behind a figure as ``(header, rows)`` at full precision."""
    if fig_id not in FIGURE_IDS:
        raise DomainError(f"unknown figure id {fig_id!r}; expected one of {FIGURE_IDS}")
    if int(points) != points or points < 2:
        raise DomainError("points must be an integer >= 2")
    if fig_id == "NORMS_VS_N":
        return _norms_vs_n(points)
    grid = default_grid(points, *h_range)
    if fig_id[0] == "Q" and fig_id[1:].isdigit():
        j = int(fig_id[1:])
        vals = _pmap(lambda h: q_solve(h, j).q.tolist(), grid)
        header = ["H"] + [f"Q{j}^{k}" for k in range(1, j + 1)]
        return header, [[h] + v for h, v in zip(grid, vals)]
    if fig_id == "QSECOND":
        vals = _pmap(lambda h: [float(q_solve(h, j).q[1]) for j in range(2, 7)], grid)
        header = ["H"] + [f"Q{j}^2" for j in range(2, 7)]
        return header, [[h] + v for h, v in zip(grid, vals)]
    if fig_id in ("D31_D33", "D32"):
        dets = _pmap(bilateral_determinants, grid)
        if fig_id == "D32":
            return ["H", "D32"], [[h, d.d32] for h, d in zip(grid, dets)]
        return ["H", "D31", "D33"], [[h, d.d31, d.d33] for h, d in zip(grid, dets)]
    if fig_id in ("D32_D1", "D32_D2"):
        prof = d32_derivative_profile(grid)
        col = 2 if fig_id == "D32_D1" else 3
        return ["H", fig_id], [[float(p[0]), float(p[col])] for p in prof]
    # NORMS_VS_H
    n = NORMS_VS_H_SIZE
    vals = _pmap(lambda h: [norm_one_sided(h, n), norm_bilateral(h, n)], grid)
    return ["H", f"R1@{n}", f"R2@{n}"], [[h] + v for h, v in zip(grid, vals)]


def emit_figure_data(fig_id, fmt="csv", points=GRID_POINTS, h_range=GRID_RANGE):
    header, rows = figure_data(fig_id, points, h_range)
    if fmt == "json":
        return _io.format_json({"figure": fig_id, "points": int(points)},
                               [dict(zip(header, [float(x) for x in r])) for r in rows])
    if fmt != "csv":
        raise DomainError(f"unknown format {fmt!r}")
    cells = [[str(int(x)) if i == 0 and header[0] == "n" else _io.fmt_raw(float(x))
              for i, x in enumerate(r)] for r in rows]
    return _io.format_csv(header, cells)


# ---------------------------------------------------------------- Monte Carlo

@dataclass(frozen=True)
class MonteCarloResult:
    hurst: float
    n: int
    count: int
    seed: int
    mean: float
    expected: float
    stderr: float

    @property
    def z(self):
        return (self.mean - self.expected) / self.stderr

    @property
    def passed(self):
        return abs(self.z) <= 3.0


def mc_bilateral_check(h=0.7, n=5, count=200_000, seed=20240611):
    """Empirical residual variance of the bilateral projection.

    Samples fGn windows of length ``2n - 1``, subtracts the projection of the
    centre value on its ``n - 1`` neighbours on each side, and compares the
    mean squared residual with ``1 - R_2(n)``.
    """
    hv = hurst_value(h)
    if int(n) != n or n < 2:
        raise DomainError("n must be an integer >= 2")
    n = int(n)
    j = n - 1
    q = q_solve(hv, j).q
    x = sample_fgn(hv, 2 * j + 1, int(count), int(seed)).paths
    centre = x[:, j]
    left = x[:, j - 1::-1] if j > 0 else x[:, :0]
    right = x[:, j + 1:]
    resid = centre - (left + right) @ q
    sq = resid * resid
    mean = float(sq.mean())
    se = float(sq.std(ddof=1) / math.sqrt(sq.size))
    return MonteCarloResult(hv, n, int(count), int(seed), mean, 1.0 - norm_bilateral(hv, n, None), se)


__all__ = [
    "CONJECTURE_IDS", "FIGURE_IDS", "TABLE_IDS", "ConjectureReport", "LimitEstimate",
    "MaxResult", "MinResult", "Mismatch", "MonteCarloResult", "RootResult", "Violation",
    "check_conjectures", "default_grid", "emit_figure_data", "emit_tables", "figure_data",
    "find_d32_min", "find_max", "find_q2_root", "golden_name", "hat_rho_audit", "limit_at_one",
    "mc_bilateral_check", "shape_audit", "table_data", "thread_count", "verify_golden",
]

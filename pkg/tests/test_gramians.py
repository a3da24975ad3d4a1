import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fgnproj import (
    DomainError, GramKind, IllConditionedWarning, NotPositiveDefinite, TriangleKind, build_gram,
    cholesky, determinant_spd, fbm_covariance, rho, sample_fgn, solve_spd,
)
from fgnproj.gramians import matrix_from_csv, matrix_to_csv


@pytest.mark.parametrize("h", [0.3, 0.5, 0.7, 0.95])
def test_fbm_gram_entries(h):
    g = build_gram(h, GramKind.FBM, 12)
    for t in range(1, 13):
        for s in range(1, 13):
            assert g.entries[t - 1, s - 1] == pytest.approx(fbm_covariance(h, t, s), rel=1e-14, abs=1e-14)


def test_fgn_gram_is_toeplitz():
    g = build_gram(0.8, "fgn", 9)
    for i in range(9):
        for j in range(9):
            assert g.entries[i, j] == rho(0.8, abs(i - j))


def test_gram_read_only_and_sized():
    g = build_gram(0.6, "fgn", 4)
    assert g.size == 4
    with pytest.raises(ValueError):
        g.entries[0, 0] = 0.0
    with pytest.raises(DomainError):
        build_gram(0.6, "fgn", 0)
    with pytest.raises(ValueError):
        build_gram(0.6, "other", 3)


@pytest.mark.parametrize("kind", ["fbm", "fgn"])
@pytest.mark.parametrize("h", [0.2, 0.51, 0.75, 0.99])
def test_cholesky_reconstructs(backend, kind, h):
    g = build_gram(h, kind, 60)
    tri = cholesky(g)
    assert tri.kind is (TriangleKind.FBM_D if kind == "fbm" else TriangleKind.FGN_L)
    assert np.allclose(tri.reconstruct(), g.entries, atol=1e-12 * np.abs(g.entries).max())
    assert np.all(np.diag(tri.factor) > 0)
    assert np.all(np.triu(tri.factor, 1) == 0)


def test_cholesky_matches_numpy(backend):
    g = build_gram(0.85, "fgn", 80)
    assert np.allclose(cholesky(g).factor, np.linalg.cholesky(g.entries), atol=1e-13)


def test_triangle_accessors():
    tri = cholesky(build_gram(0.7, "fbm", 5))
    assert tri.entry(1, 1) == pytest.approx(1.0)
    assert tri.entry(2, 4) == tri.factor[3, 1]
    assert list(tri.row(3)) == list(tri.factor[2, :3])
    with pytest.raises(IndexError):
        tri.entry(3, 2)


def test_not_positive_definite_reports_pivot(backend):
    from fgnproj.gramians import GramMatrix
    a = np.eye(4)
    a[2, 2] = -1.0
    with pytest.raises(NotPositiveDefinite) as info:
        cholesky(GramMatrix(GramKind.FGN, 0.6, a))
    assert info.value.pivot == 3


@settings(max_examples=40, deadline=None)
@given(h=st.floats(0.05, 0.98), n=st.integers(1, 40), seed=st.integers(0, 2**32 - 1))
def test_solve_spd_residual(h, n, seed):
    g = build_gram(h, "fgn", n)
    b = np.random.default_rng(seed).standard_normal(n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IllConditionedWarning)
        res = solve_spd(g, b)
    assert res.method == "cholesky"
    assert res.residual <= 1e-10 * max(1.0, np.abs(b).max())
    assert res.condition >= 1.0


def test_solve_spd_condition_estimate_close_to_exact():
    g = build_gram(0.9, "fgn", 30)
    res = solve_spd(g, np.ones(30))
    exact = np.linalg.cond(g.entries, 1)
    assert exact / 10 <= res.condition <= exact * 10


def test_solve_spd_warns_on_ill_conditioning():
    a = np.diag([1.0, 1e-14])
    with pytest.warns(IllConditionedWarning):
        res = solve_spd(a, [1.0, 1.0])
    assert res.notes


def test_solve_spd_indefinite_fallback():
    a = np.array([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(NotPositiveDefinite):
        solve_spd(a, [1.0, 0.0])
    res = solve_spd(a, [1.0, 0.0], allow_indefinite=True)
    assert res.method == "symmetric-indefinite"
    assert np.allclose(a @ res.x, [1.0, 0.0])


def test_solve_dimension_mismatch():
    with pytest.raises(DomainError):
        solve_spd(np.eye(3), np.ones(2))


def test_determinant():
    g = build_gram(0.7, "fgn", 15)
    assert determinant_spd(g) == pytest.approx(np.linalg.det(g.entries), rel=1e-12)


def test_sampling_deterministic_and_covariance():
    a = sample_fgn(0.7, 6, 50_000, seed=11)
    b = sample_fgn(0.7, 6, 50_000, seed=11)
    c = sample_fgn(0.7, 6, 50_000, seed=12)
    assert np.array_equal(a.paths, b.paths)
    assert not np.array_equal(a.paths, c.paths)
    assert a.count == 50_000 and a.length == 6
    emp = a.paths.T @ a.paths / a.count
    # entries of a sample covariance have standard error about sqrt(2/N)
    assert np.max(np.abs(emp - build_gram(0.7, "fgn", 6).entries)) < 5 * np.sqrt(2 / a.count)


@pytest.mark.parametrize("lower", [False, True])
def test_matrix_csv_round_trip(lower):
    L = cholesky(build_gram(0.77, "fbm", 7)).factor
    back = matrix_from_csv(matrix_to_csv(L, lower=lower))
    assert np.array_equal(back, L)

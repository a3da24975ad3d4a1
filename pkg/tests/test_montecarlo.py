import numpy as np
import pytest

from fgnproj import analysis, norm_bilateral


@pytest.mark.parametrize("seed", [20240611, 7])
def test_residual_variance_matches_bilateral_norm(seed):
    res = analysis.mc_bilateral_check(0.7, 5, 200_000, seed)
    assert res.expected == pytest.approx(1 - norm_bilateral(0.7, 5), abs=1e-15)
    assert res.passed, res


def test_deterministic_for_fixed_seed():
    a = analysis.mc_bilateral_check(0.8, 3, 5_000, 3)
    b = analysis.mc_bilateral_check(0.8, 3, 5_000, 3)
    assert a == b


def test_detects_wrong_coefficients(monkeypatch):
    # zeroing the projection leaves unit residual variance, far from 1 - R2
    from fgnproj import q_solve
    real = q_solve

    class Zero:
        def __init__(self, c):
            self.q = np.zeros_like(c.q)

    monkeypatch.setattr(analysis, "q_solve", lambda h, j: Zero(real(h, j)))
    res = analysis.mc_bilateral_check(0.9, 5, 50_000, 1)
    assert not res.passed

import os
import subprocess
import sys

import numpy as np
import pytest

from fgnproj import _backend, build_gram
from fgnproj.exceptions import DegenerateDenominator, NotPositiveDefinite

compiled = _backend.compiled_kernels
python = _backend.python_kernels
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def test_default_backend_is_compiled_when_built():
    if compiled is not None and os.environ.get("FGNPROJ_PURE_PYTHON", "") == "":
        assert _backend.BACKEND == "cython"


def test_pure_python_switch():
    env = dict(os.environ, FGNPROJ_PURE_PYTHON="1")
    res = subprocess.run([sys.executable, "-c", "from fgnproj import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "python"


@needs_ext
@pytest.mark.parametrize("h", [0.05, 0.3, 0.5, 0.51, 0.77, 0.99, 1.0])
def test_rho_table_bitwise(h):
    assert np.array_equal(compiled.rho_table(h, 3000), python.rho_table(h, 3000))


@needs_ext
@pytest.mark.parametrize("h", [0.3, 0.51, 0.77, 0.99])
def test_ladders_agree(h):
    r = python.rho_table(h, 301)
    a = python.gamma_ladder(r, 301, 1e-14)
    b = compiled.gamma_ladder(r, 301, 1e-14)
    for x, y in zip(a, b):
        assert np.allclose(x, y, rtol=0, atol=1e-12)
    qa = python.bilateral_ladder(r, a[0], 150, 1e-14)
    qb = compiled.bilateral_ladder(r, b[0], 150, 1e-14)
    assert np.allclose(qa, qb, rtol=0, atol=1e-12)


@needs_ext
@pytest.mark.parametrize("n", [1, 2, 5, 64, 257])
def test_cholesky_agree(n):
    a = build_gram(0.8, "fgn", n).entries
    assert np.allclose(compiled.cholesky_lower(a), python.cholesky_lower(a), rtol=0, atol=1e-13)


@pytest.mark.parametrize("name", sorted(_backend.available_backends()))
def test_error_contracts(name):
    k = _backend.available_backends()[name]
    with pytest.raises(NotPositiveDefinite) as info:
        k.cholesky_lower(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert info.value.pivot == 2
    with pytest.raises(DegenerateDenominator):
        k.gamma_ladder(k.rho_table(0.7, 10), 10, 2.0)
    with pytest.raises(ValueError):
        k.gamma_ladder(k.rho_table(0.7, 3), 10, 1e-14)

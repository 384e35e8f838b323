"""Backend parity and selection tests for the sweep kernels."""

import os
import subprocess
import sys

import numpy as np
import pytest

from chiraltmm import get_preset, solve_stack
from chiraltmm._kernels import (
    NUMBA_AVAILABLE,
    STATUS_OK,
    stack_arrays,
    sweep_cascade,
)
from helpers import F0, random_stack, response_array

needs_numba = pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba unavailable")


def test_stack_arrays_flattening():
    stack = get_preset("fig2").config.build_stack()
    eps, mu, kap, d = stack_arrays(stack)
    assert eps.shape == (5,)
    assert eps[0] == 1.6e-4 and eps[1] == 4.84
    assert kap[0] == 0.167 and kap[1] == 0.0
    assert d[0] == pytest.approx(74.948e-6, rel=1e-4)


@needs_numba
def test_backends_agree_on_preset_grid():
    config = get_preset("fig2").config
    stack = config.build_stack()
    freqs, thetas_deg = config.grid.flat()
    thetas = np.deg2rad(thetas_deg)
    c_nb, s_nb, _ = sweep_cascade(stack, freqs, thetas, 1.0, 0.0, backend="numba")
    c_np, s_np, _ = sweep_cascade(stack, freqs, thetas, 1.0, 0.0, backend="numpy")
    assert (s_nb == STATUS_OK).all() and (s_np == STATUS_OK).all()
    np.testing.assert_allclose(c_nb, c_np, atol=1e-12)


@needs_numba
def test_backends_agree_on_random_stacks():
    rng = np.random.default_rng(17)
    for _ in range(20):
        stack = random_stack(rng, max_slabs=6)
        freqs = rng.uniform(0.1e12, 4e12, size=16)
        thetas = np.deg2rad(rng.uniform(0.0, 85.0, size=16))
        c_nb, s_nb, _ = sweep_cascade(stack, freqs, thetas, 1.0, 0.2j, backend="numba")
        c_np, s_np, _ = sweep_cascade(stack, freqs, thetas, 1.0, 0.2j, backend="numpy")
        assert (s_nb == s_np).all()
        ok = s_nb == STATUS_OK
        np.testing.assert_allclose(c_nb[ok], c_np[ok], atol=1e-10)


@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_kernel_matches_public_per_point_path(backend):
    if backend == "numba" and not NUMBA_AVAILABLE:
        pytest.skip("numba unavailable")
    rng = np.random.default_rng(23)
    stack = random_stack(rng, max_slabs=5)
    freqs = rng.uniform(0.2e12, 3e12, size=8)
    thetas = np.deg2rad(rng.uniform(0.0, 80.0, size=8))
    coeffs, status, _ = sweep_cascade(stack, freqs, thetas, 1.0, 0.0, backend=backend)
    assert (status == STATUS_OK).all()
    for i in range(freqs.size):
        ref = response_array(solve_stack(stack, freqs[i], thetas[i]))
        np.testing.assert_allclose(coeffs[i], ref, atol=1e-10)


def test_status_codes_surface_per_point():
    from chiraltmm import Layer, MaterialParams, Stack

    mat = MaterialParams(1e-4, 1e-4, 0.0)
    stack = Stack((Layer(mat, 0.12),))
    freqs = np.array([F0, F0])
    thetas = np.deg2rad(np.array([0.0, 70.0]))
    for backend in ("numpy", "numba") if NUMBA_AVAILABLE else ("numpy",):
        coeffs, status, diag = sweep_cascade(stack, freqs, thetas, 1.0, 0.0, backend=backend)
        assert status[0] == STATUS_OK
        assert status[1] != STATUS_OK
        assert np.all(coeffs[1] == 0.0)
        assert diag[1] > 0


def test_env_flag_selects_numpy_fallback():
    code = (
        "from chiraltmm._kernels import default_backend, NUMBA_AVAILABLE;"
        "print(default_backend(), NUMBA_AVAILABLE)"
    )
    env = dict(os.environ, CHIRAL_TMM_NUMBA="0")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.split() == ["numpy", "False"]


def test_unknown_backend_rejected():
    stack = get_preset("fig2").config.build_stack()
    with pytest.raises(ValueError):
        sweep_cascade(stack, np.array([F0]), np.array([0.0]), 1.0, 0.0, backend="gpu")

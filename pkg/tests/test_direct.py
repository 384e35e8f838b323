"""Direct boundary-condition oracle tests."""

from dataclasses import replace

import numpy as np
import pytest

from chiraltmm import (
    Layer,
    MaterialParams,
    Stack,
    field_residual,
    solve_direct,
    solve_stack,
)
from helpers import F0, LAM0, airy_slab, random_stack, response_array

DIEL = MaterialParams(4.84, 1.0, 0.0)


def test_air_only_passthrough():
    sol = solve_direct(Stack(), F0, np.deg2rad(15.0), (0.7 + 0.1j, 0.2))
    assert abs(sol.response.t_co - np.sqrt(abs(0.7 + 0.1j) ** 2 + 0.04)) < 1e-13
    assert abs(sol.response.r_co) < 1e-13 and abs(sol.response.r_cross) < 1e-13


@pytest.mark.parametrize("theta_deg,pol", [(0.0, "p"), (35.0, "p"), (35.0, "s")])
def test_single_slab_matches_airy(theta_deg, pol):
    th = np.deg2rad(theta_deg)
    d = LAM0 / 5
    incident = (1.0, 0.0) if pol == "p" else (0.0, 1.0)
    sol = solve_direct(Stack((Layer(DIEL, d),)), F0, th, incident)
    r_ref, t_ref = airy_slab(2.2, d, F0, th, pol)
    assert abs(sol.response.r_co - r_ref) < 1e-12
    assert abs(sol.response.t_co - t_ref) < 1e-12


def test_agrees_with_cascade_on_random_chiral_stacks():
    rng = np.random.default_rng(11)
    for _ in range(100):
        stack = random_stack(rng)
        f = rng.uniform(0.1e12, 4e12)
        th = np.deg2rad(rng.uniform(0.0, 85.0))
        a = response_array(solve_stack(stack, f, th))
        b = response_array(solve_direct(stack, f, th).response)
        assert np.abs(a - b).max() < 1e-10


def test_field_residual_small_for_solutions():
    rng = np.random.default_rng(5)
    for _ in range(30):
        stack = random_stack(rng, max_slabs=5)
        f = rng.uniform(0.2e12, 3e12)
        th = np.deg2rad(rng.uniform(0.0, 80.0))
        sol = solve_direct(stack, f, th)
        assert field_residual(stack, f, th, sol) < 1e-10


def test_field_residual_detects_perturbation():
    stack = Stack.periodic(MaterialParams(1.6e-4, 1e-5, 0.1), DIEL, 5, LAM0 / 4, LAM0 / 8.8)
    sol = solve_direct(stack, F0, 0.0)
    amps = sol.slab_amplitudes.copy()
    amps[2, 0] += 1e-3
    bad = replace(sol, slab_amplitudes=amps)
    assert field_residual(stack, F0, 0.0, bad) > 1e-4


def test_cn_cn_scenario_residual():
    # five-slab chiral-nihility pair at the transparent operating point
    cn_h = MaterialParams(1.6e-4, 1e-5, 0.1)
    cn_l = MaterialParams(2.5e-5, 1e-5, 0.1)
    stack = Stack.periodic(cn_h, cn_l, 5, LAM0 / 4, LAM0 / 4)
    sol = solve_direct(stack, 2.0e12, 0.0)
    assert field_residual(stack, 2.0e12, 0.0, sol) < 1e-10
    t_total = abs(sol.response.t_co) ** 2 + abs(sol.response.t_cross) ** 2
    assert t_total > 0.99


def test_zero_incident_rejected():
    with pytest.raises(ValueError):
        solve_direct(Stack(), F0, 0.0, (0.0, 0.0))


def test_solve_stack_direct_engine():
    stack = Stack((Layer(DIEL, LAM0 / 7),))
    a = response_array(solve_stack(stack, F0, 0.3, engine="direct"))
    b = response_array(solve_direct(stack, F0, 0.3).response)
    np.testing.assert_allclose(a, b, atol=1e-15)

"""Observable and sweep-engine tests."""

import numpy as np
import pytest

from chiraltmm import (
    C0,
    Layer,
    MaterialParams,
    NegligibleTransmissionError,
    Response,
    Stack,
    SweepGrid,
    powers,
    rotation_angle,
    run_sweep,
    solve_stack,
)
from helpers import F0, LAM0, TWO_PI, response_array

K0 = TWO_PI * F0 / C0
CN_H = MaterialParams(1.6e-4, 1.0e-5, 0.167)
DIEL = MaterialParams(4.84, 1.0, 0.0)


def _fig2_stack():
    return Stack.periodic(CN_H, DIEL, 5, LAM0 / 4, LAM0 / (4 * 2.2))


# --- powers -----------------------------------------------------------------


def test_powers_trivial():
    resp = Response(0.0, 0.0, 1.0, 0.0, 1.0, 0.0)
    pb = powers(resp)
    assert pb.t_co == 1.0 and pb.r_total == 0.0
    assert pb.conservation_residual == 0.0


def test_powers_rejects_zero_incident():
    with pytest.raises(ValueError):
        powers(Response(0.0, 0.0, 1.0, 0.0, 0.0, 0.0))


def test_powers_normalization():
    resp = Response(0.5, 0.0, 1.0, 0.5, 2.0, 0.0)
    pb = powers(resp)
    assert pb.r_co == pytest.approx(0.0625)
    assert pb.t_co == pytest.approx(0.25)
    assert pb.t_cross == pytest.approx(0.0625)


# --- rotation ---------------------------------------------------------------


def test_rotation_trivial():
    assert rotation_angle(Response(0.0, 0.0, 1.0, 0.0, 1.0, 0.0)) == 0.0
    assert rotation_angle(Response(0.0, 0.0, 0.0, 1.0, 1.0, 0.0)) == 90.0


@pytest.mark.parametrize(
    "mat", [MaterialParams(1.0, 1.0, 0.1), MaterialParams(1.6e-4, 1.0e-5, 0.1)]
)
def test_single_chiral_slab_rotation_identity(mat):
    # lossless chiral slab at normal incidence rotates by exactly k0*kappa*d
    d = LAM0 / 4
    resp = solve_stack(Stack((Layer(mat, d),)), F0, 0.0)
    measured = np.arctan2(abs(resp.t_cross), abs(resp.t_co))
    assert abs(measured - K0 * 0.1 * d) < 1e-12


def test_rotation_undefined_below_threshold():
    resp = Response(1.0, 0.0, 1e-8, 0.0, 1.0, 0.0)
    with pytest.raises(NegligibleTransmissionError):
        rotation_angle(resp)


# --- grids ------------------------------------------------------------------


def test_grid_validation():
    with pytest.raises(ValueError):
        SweepGrid(np.array([1e12]), np.array([90.0]))
    with pytest.raises(ValueError):
        SweepGrid(np.array([-1e12]), np.array([0.0]))
    with pytest.raises(ValueError):
        SweepGrid.frequency_sweep(1e12, 2e12, 1, 0.0)
    grid = SweepGrid.single(F0, 10.0)
    assert grid.n_points == 1


def test_grid_row_order_frequency_major():
    grid = SweepGrid(np.array([1e12, 2e12]), np.array([0.0, 10.0]))
    f, t = grid.flat()
    np.testing.assert_allclose(f, [1e12, 1e12, 2e12, 2e12])
    np.testing.assert_allclose(t, [0.0, 10.0, 0.0, 10.0])


# --- sweeps -----------------------------------------------------------------


def test_single_point_sweep_matches_solve_stack():
    stack = _fig2_stack()
    grid = SweepGrid.single(1.3e12, 12.0)
    res = run_sweep(stack, grid)
    assert len(res.rows) == 1
    row = res.rows[0]
    resp = solve_stack(stack, 1.3e12, np.deg2rad(12.0))
    coeffs = response_array(resp)
    assert row.r_co == pytest.approx(abs(coeffs[0]) ** 2, abs=1e-12)
    assert row.t_total == pytest.approx(abs(coeffs[2]) ** 2 + abs(coeffs[3]) ** 2, abs=1e-12)


def test_achiral_sweep_has_no_cross_and_no_rotation():
    stack = Stack.periodic(
        MaterialParams(1.6e-4, 1.0e-5, 0.0), DIEL, 5, LAM0 / 4, LAM0 / (4 * 2.2)
    )
    res = run_sweep(stack, SweepGrid.frequency_sweep(0.1e12, 4e12, 101, 0.0))
    assert res.n_failures == 0
    assert res.column("r_cross").max() < 1e-12
    assert res.column("t_cross").max() < 1e-12
    assert res.column("rotation_deg").max() < 1e-5


def test_normal_incidence_polarization_isotropy():
    stack = _fig2_stack()
    grid = SweepGrid.frequency_sweep(0.3e12, 3.7e12, 41, 0.0)
    res_par = run_sweep(stack, grid, incident=(1.0, 0.0))
    res_perp = run_sweep(stack, grid, incident=(0.0, 1.0))
    for name in ("r_co", "r_cross", "t_co", "t_cross"):
        np.testing.assert_allclose(
            res_par.column(name), res_perp.column(name), atol=1e-12
        )


def test_fig2_anti_resonance_power_level():
    # reflected power a quarter period away from a transparent harmonic
    pb = powers(solve_stack(_fig2_stack(), 0.5e12, 0.0))
    assert abs(pb.r_total - 0.4) < 0.05


def test_kinematics_impedance_value():
    from chiraltmm import ETA0, kinematics

    kin = kinematics(CN_H, F0, 0.0)
    assert abs(kin.eta - 0.25 * ETA0) < 1e-12 * ETA0


def test_sweep_conservation():
    res = run_sweep(_fig2_stack(), SweepGrid.frequency_sweep(0.05e12, 4e12, 801, 0.0))
    assert res.n_failures == 0
    assert res.column("conservation_residual").max() < 1e-9


def test_sweep_continuity_on_fine_grid():
    res = run_sweep(_fig2_stack(), SweepGrid.frequency_sweep(0.1e12, 4e12, 2001, 0.0))
    assert res.n_failures == 0
    r_total = res.column("r_total")
    assert np.abs(np.diff(r_total)).max() < 0.05


def test_sweep_records_numerical_failures():
    # thick evanescent layer overflows at oblique incidence but not at normal
    mat = MaterialParams(1e-4, 1e-4, 0.0)
    stack = Stack((Layer(mat, 0.12),))
    grid = SweepGrid(np.array([F0]), np.array([0.0, 70.0]))
    res = run_sweep(stack, grid)
    assert res.n_failures == 1
    assert res.failures[0].kind in ("evanescent-overflow", "resonance-singularity")
    assert res.failures[0].theta_deg == 70.0
    assert res.n_numerical_failures == 1
    assert len(res.rows) == 1


def test_sweep_negligible_transmission_is_domain_failure():
    # deep total-reflection region: rotation undefined, row excluded with cause
    cn = MaterialParams(1.6e-4, 1.0e-5, 0.1)
    stack = Stack.periodic(cn, DIEL, 5, LAM0 / 4, LAM0 / (4 * 2.2))
    grid = SweepGrid(np.array([4.0e12]), np.array([70.0]))
    res = run_sweep(stack, grid)
    assert res.n_failures == 1
    assert res.failures[0].kind == "negligible-transmission"
    assert res.n_numerical_failures == 0


def test_direct_engine_reports_failure_kinds():
    # kappa = sqrt(eps*mu): the left eigenwave vanishes and the basis degenerates
    mat = MaterialParams(1.0, 1.0, 1.0)
    stack = Stack((Layer(mat, 1e-5),))
    grid = SweepGrid(np.array([F0]), np.array([17.0]))
    res = run_sweep(stack, grid, engine="direct")
    assert res.n_failures == 1
    assert res.failures[0].kind == "degenerate-eigenwave"
    assert res.n_numerical_failures == 1


def test_direct_engine_handles_cascade_guarded_case():
    # a deep mixed-evanescence slab trips the cascade's conditioning guard
    # but stays solvable as a global boundary system
    mat = MaterialParams(0.01, 1.0, 0.3)
    stack = Stack((Layer(mat, 25 * LAM0),))
    grid = SweepGrid(np.array([F0]), np.array([17.0]))
    cascade = run_sweep(stack, grid, engine="cascade")
    direct = run_sweep(stack, grid, engine="direct")
    assert cascade.n_failures == 1
    assert direct.n_failures == 0
    assert direct.rows[0].conservation_residual < 1e-9


def test_direct_engine_sweep_matches_cascade():
    stack = _fig2_stack()
    grid = SweepGrid.frequency_sweep(0.05e12, 4e12, 801, 0.0)
    a = run_sweep(stack, grid, engine="cascade")
    b = run_sweep(stack, grid, engine="direct")
    assert a.n_failures == b.n_failures == 0
    for name in ("r_co", "r_cross", "t_co", "t_cross", "r_total", "t_total", "rotation_deg"):
        np.testing.assert_allclose(a.column(name), b.column(name), atol=1e-9)


def test_sweep_rows_are_finite():
    res = run_sweep(_fig2_stack(), SweepGrid.angle_sweep(0.0, 90.0, 91, F0, endpoint=False))
    for name in ("r_co", "r_cross", "t_co", "t_cross", "rotation_deg", "conservation_residual"):
        assert np.isfinite(res.column(name)).all()

"""Independent boundary-condition oracle.

Instead of cascading interface matrices, this module writes the tangential
continuity of (E_x, E_y, H_x, H_y) at every interface of the stack as one
dense linear system over all unknown amplitudes and solves it in a single
pivoted elimination.  It shares only the eigenwave templates with the
cascade engine, so agreement between the two is a meaningful check.

Amplitudes are phase-referenced at each wave's own entry face (forward
waves at the slab's left face, backward waves at its right face), keeping
every propagation factor bounded by one even for strongly evanescent
chiral-nihility layers at oblique incidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ResonanceSingularityError
from .media import ETA0, eigenwave_templates, kinematics
from .structure import Stack
from .tmm import Response, co_cross

_RESIDUAL_LIMIT = 1.0e-6


@dataclass(frozen=True)
class DirectSolution:
    """Solved response plus the internal amplitudes of every slab.

    ``slab_amplitudes[m]`` holds (L+, R+, L-, R-) of slab m, forward waves
    referenced at the slab's left face and backward waves at its right face.
    """

    response: Response
    reflected: np.ndarray
    slab_amplitudes: np.ndarray
    transmitted: np.ndarray
    residual: float


def _air_columns(theta_i: float) -> np.ndarray:
    """Tangential columns (p+, s+, p-, s-) of the air half-spaces,
    rows (E_x, E_y, eta0*H_x, eta0*H_y)."""
    ci = math.cos(theta_i)
    return np.array(
        [
            [ci, 0.0, ci, 0.0],
            [0.0, 1.0, 0.0, 1.0],
            [0.0, -ci, 0.0, ci],
            [1.0, 0.0, -1.0, 0.0],
        ],
        dtype=complex,
    )


def _slab_basis(stack: Stack, freq: float, theta_i: float):
    """Per slab: tangential column matrix of (L+, R+, L-, R-) and the decay
    factors exp(-j k_z d) of the L and R waves across the slab."""
    basis = []
    for layer in stack.layers:
        kin = kinematics(layer.material, freq, theta_i)
        c = np.empty((4, 4), dtype=complex)
        for col, wave in enumerate(eigenwave_templates(layer.material, kin).waves()):
            c[0, col] = wave.e[0]
            c[1, col] = wave.e[1]
            c[2, col] = ETA0 * wave.h[0]
            c[3, col] = ETA0 * wave.h[1]
        f_l = np.exp(-1j * kin.k_zL * layer.thickness)
        f_r = np.exp(-1j * kin.k_zR * layer.thickness)
        basis.append((c, f_l, f_r))
    return basis


def _interface_sides(stack, freq, theta_i, reflected, slab_amps, transmitted, incident):
    """Tangential field 4-vectors on the left and right of every interface."""
    n = len(stack.layers)
    air = _air_columns(theta_i)
    basis = _slab_basis(stack, freq, theta_i)
    left = np.zeros((n + 1, 4), dtype=complex)
    right = np.zeros((n + 1, 4), dtype=complex)
    e = np.asarray(incident, dtype=complex)

    for i in range(n + 1):
        if i == 0:
            left[0] = air[:, :2] @ e + air[:, 2:] @ reflected
        else:
            c, f_l, f_r = basis[i - 1]
            decay = np.array([f_l, f_r, 1.0, 1.0], dtype=complex)
            left[i] = c @ (decay * slab_amps[i - 1])
        if i == n:
            right[n] = air[:, :2] @ transmitted
        else:
            c, f_l, f_r = basis[i]
            decay = np.array([1.0, 1.0, f_l, f_r], dtype=complex)
            right[i] = c @ (decay * slab_amps[i])
    return left, right


def solve_direct(
    stack: Stack,
    freq: float,
    theta_i: float,
    incident: tuple[complex, complex] = (1.0, 0.0),
) -> DirectSolution:
    """Solve the full boundary-condition system of the stack at once.

    Unknowns are the reflected pair, four amplitudes per slab and the
    transmitted pair; equations are the four tangential continuity
    conditions at each of the N+1 interfaces.
    """
    e = np.array([complex(incident[0]), complex(incident[1])])
    if e[0] == 0 and e[1] == 0:
        raise ValueError("incident amplitude is zero")
    n = len(stack.layers)
    air = _air_columns(theta_i)
    basis = _slab_basis(stack, freq, theta_i)

    size = 4 * n + 4
    a = np.zeros((size, size), dtype=complex)
    b = np.zeros(size, dtype=complex)

    def slab_cols(m: int, at_left_face: bool) -> np.ndarray:
        c, f_l, f_r = basis[m]
        if at_left_face:
            decay = np.array([1.0, 1.0, f_l, f_r], dtype=complex)
        else:
            decay = np.array([f_l, f_r, 1.0, 1.0], dtype=complex)
        return c * decay[None, :]

    for i in range(n + 1):
        rows = slice(4 * i, 4 * i + 4)
        # left side of interface i
        if i == 0:
            a[rows, 0:2] = air[:, 2:]
            b[4 * i : 4 * i + 4] = -(air[:, :2] @ e)
        else:
            cols = slice(2 + 4 * (i - 1), 2 + 4 * i)
            a[rows, cols] = slab_cols(i - 1, at_left_face=False)
        # right side of interface i (negated)
        if i == n:
            a[rows, size - 2 : size] = -air[:, :2]
        else:
            cols = slice(2 + 4 * i, 2 + 4 * (i + 1))
            a[rows, cols] -= slab_cols(i, at_left_face=True)

    try:
        u = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise ResonanceSingularityError(float("inf"), f"global system singular: {exc}") from exc

    reflected = u[0:2]
    slab_amps = u[2 : size - 2].reshape(n, 4) if n else np.zeros((0, 4), dtype=complex)
    transmitted = u[size - 2 : size]

    r_c, r_x = co_cross(reflected[0], reflected[1], e[0], e[1])
    t_c, t_x = co_cross(transmitted[0], transmitted[1], e[0], e[1])
    resp = Response(r_co=r_c, r_cross=r_x, t_co=t_c, t_cross=t_x, e_par=e[0], e_perp=e[1])
    sol = DirectSolution(
        response=resp,
        reflected=reflected,
        slab_amplitudes=slab_amps,
        transmitted=transmitted,
        residual=0.0,
    )
    res = field_residual(stack, freq, theta_i, sol)
    if not math.isfinite(res) or res > _RESIDUAL_LIMIT:
        raise ResonanceSingularityError(
            float(np.linalg.cond(a)), f"boundary residual {res:.3e} after solve"
        )
    return replace(sol, residual=res)


def field_residual(stack: Stack, freq: float, theta_i: float, solution: DirectSolution) -> float:
    """Maximum relative tangential-field discontinuity over all interfaces.

    Both sides of every interface are reconstructed from the solution
    amplitudes; the worst component mismatch is normalized by the largest
    tangential field magnitude in the structure.
    """
    left, right = _interface_sides(
        stack,
        freq,
        theta_i,
        solution.reflected,
        solution.slab_amplitudes,
        solution.transmitted,
        (solution.response.e_par, solution.response.e_perp),
    )
    scale = max(np.max(np.abs(left)), np.max(np.abs(right)), 1e-300)
    return float(np.max(np.abs(left - right)) / scale)

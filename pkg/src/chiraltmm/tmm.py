"""Transfer-matrix cascade for periodic chiral multilayers.

The stack state is a 4-vector of eigenwave amplitudes.  Inside a slab the
ordering is (L+, R+, L-, R-); on the incidence-side air it is
(E_i_par, E_i_perp, E_r_par, E_r_perp) in the linear p/s basis.  Matching
matrices map right-side amplitudes to left-side amplitudes at an interface
plane; the assembled 4x2 transfer matrix maps the two transmitted exit
amplitudes to the four entrance-side amplitudes, which a 2x2 solve then
inverts for the reflection/transmission coefficients.

All tangential-field matrices carry rows (E_x, E_y, eta0*H_x, eta0*H_y);
scaling H by the free-space impedance equilibrates the continuity equations
without changing their solution.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    EvanescentOverflowError,
    ResonanceSingularityError,
    SingularInterfaceError,
)
from .media import ETA0, MaterialParams, eigenwave_templates, kinematics
from .structure import Layer, Stack

# Medium descriptor: a material, or the string "air" for a half-space in the
# linear p/s basis of the incident/reflected/transmitted fields.
MediumDescriptor = Union[MaterialParams, str]

COND_LIMIT = 1.0e12
OVERFLOW_LIMIT = 700.0


@dataclass(frozen=True)
class Response:
    """Complex reflection/transmission coefficients relative to the incident
    polarization, together with the incident amplitudes they refer to."""

    r_co: complex
    r_cross: complex
    t_co: complex
    t_cross: complex
    e_par: complex
    e_perp: complex


def co_cross(v_par: complex, v_perp: complex, e_par: complex, e_perp: complex) -> tuple[complex, complex]:
    """Project a (par, perp) field pair onto the incident polarization (co)
    and its orthogonal complement (cross)."""
    norm = math.sqrt(abs(e_par) ** 2 + abs(e_perp) ** 2)
    if norm == 0.0:
        raise ValueError("incident amplitude is zero")
    p = e_par / norm
    q = e_perp / norm
    return p.conjugate() * v_par + q.conjugate() * v_perp, -q * v_par + p * v_perp


def _field_matrix(medium: MediumDescriptor, freq: float, theta_i: float) -> np.ndarray:
    """4x4 tangential-field matrix whose columns are the eigenwave templates
    of one interface side, rows (E_x, E_y, eta0*H_x, eta0*H_y).

    For the "air" descriptor the columns are the linear-basis half-space
    waves (p+, s+, p-, s-); for a material they are the circular eigenwaves
    (L+, R+, L-, R-).
    """
    if isinstance(medium, str):
        if medium != "air":
            raise ValueError(f"unknown medium descriptor {medium!r}")
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
    kin = kinematics(medium, freq, theta_i)
    c = np.empty((4, 4), dtype=complex)
    for col, wave in enumerate(eigenwave_templates(medium, kin).waves()):
        c[0, col] = wave.e[0]
        c[1, col] = wave.e[1]
        c[2, col] = ETA0 * wave.h[0]
        c[3, col] = ETA0 * wave.h[1]
    return c


def matching_matrix(
    left: MediumDescriptor, right: MediumDescriptor, freq: float, theta_i: float
) -> np.ndarray:
    """Interface matching matrix M with v_left = M @ v_right.

    Built from tangential continuity: M = C_left^-1 @ C_right, where the C
    matrices stack the tangential components of the four unit eigenwave
    templates of each side.  Raises SingularInterfaceError instead of
    pseudo-inverting a degenerate basis.
    """
    c_left = _field_matrix(left, freq, theta_i)
    c_right = _field_matrix(right, freq, theta_i)
    cond = float(np.linalg.cond(c_left))
    if not math.isfinite(cond) or cond > COND_LIMIT:
        raise SingularInterfaceError(cond)
    return np.linalg.solve(c_left, c_right)


def _phase_exponents(layer: Layer, freq: float, theta_i: float) -> tuple[complex, complex]:
    """(k_zL * d, k_zR * d) for a layer, with the evanescent overflow guard."""
    kin = kinematics(layer.material, freq, theta_i)
    pl = kin.k_zL * layer.thickness
    pr = kin.k_zR * layer.thickness
    worst = max(abs(pl.imag), abs(pr.imag))
    if worst > OVERFLOW_LIMIT:
        raise EvanescentOverflowError(worst)
    return pl, pr


def propagation_matrix(layer: Layer, freq: float, theta_i: float) -> np.ndarray:
    """Diagonal matrix advancing slab amplitudes across the thickness d,
    left face to right face:

        diag(e^{-j k_zL d}, e^{-j k_zR d}, e^{+j k_zL d}, e^{+j k_zR d})

    in the (L+, R+, L-, R-) ordering: forward waves accumulate e^{-j k_z d},
    backward waves the conjugate-sign phase.
    """
    pl, pr = _phase_exponents(layer, freq, theta_i)
    return np.diag(
        [
            cmath.exp(-1j * pl),
            cmath.exp(-1j * pr),
            cmath.exp(1j * pl),
            cmath.exp(1j * pr),
        ]
    )


def _reverse_phase_diag(layer: Layer, freq: float, theta_i: float) -> np.ndarray:
    """Diagonal phase factors used in the exit-to-entrance cascade.

    The assembled transfer matrix maps transmitted amplitudes back to the
    entrance side, i.e. it walks the stack right to left, so each slab
    contributes the inverse of the left-to-right advance returned by
    propagation_matrix.
    """
    pl, pr = _phase_exponents(layer, freq, theta_i)
    return np.array(
        [
            cmath.exp(1j * pl),
            cmath.exp(1j * pr),
            cmath.exp(-1j * pl),
            cmath.exp(-1j * pr),
        ],
        dtype=complex,
    )


def assemble_transfer(stack: Stack, freq: float, theta_i: float, form: str = "auto") -> np.ndarray:
    """Assemble the 4x2 transfer matrix T relating the transmitted amplitude
    pair to the entrance-side amplitude 4-vector.

    ``form`` selects the assembly path: "periodic" uses the grouped product
    M1.P_A.(M_AB.P_B.M_BA.P_A)^m.M2 valid for alternating odd stacks,
    "general" the plain left-to-right product of matching and propagation
    factors, and "auto" picks the periodic path whenever the stack detects
    as periodic.  Both paths agree to rounding for periodic stacks.
    """
    if form not in ("auto", "periodic", "general"):
        raise ValueError(f"unknown assembly form {form!r}")
    info = stack.period_info() if form in ("auto", "periodic") else None
    if form == "periodic" and info is None:
        raise ValueError("stack is not periodic; use form='general'")

    if info is not None:
        a, b, m = info
        m1 = matching_matrix("air", a.material, freq, theta_i)
        m2 = matching_matrix(a.material, "air", freq, theta_i)[:, :2]
        pa = _reverse_phase_diag(a, freq, theta_i)
        if m == 0:
            t = m1 @ (pa[:, None] * m2)
        else:
            mab = matching_matrix(a.material, b.material, freq, theta_i)
            mba = matching_matrix(b.material, a.material, freq, theta_i)
            pb = _reverse_phase_diag(b, freq, theta_i)
            t1 = mab @ (pb[:, None] * mba) @ np.diag(pa)
            t = m1 @ np.diag(pa) @ np.linalg.matrix_power(t1, m) @ m2
    else:
        seq: list[MediumDescriptor] = ["air"] + [ly.material for ly in stack.layers] + ["air"]
        t = np.eye(4, dtype=complex)
        for i, layer in enumerate(stack.layers):
            t = t @ matching_matrix(seq[i], layer.material, freq, theta_i)
            t = t * _reverse_phase_diag(layer, freq, theta_i)[None, :]
        t = t @ matching_matrix(seq[-2], "air", freq, theta_i)
        t = t[:, :2]

    if not np.all(np.isfinite(t)):
        raise EvanescentOverflowError(float("inf"), "cumulative evanescent growth overflowed")
    return t


def solve_coefficients(t: np.ndarray, incident: tuple[complex, complex]) -> Response:
    """Solve the transfer relation for the reflection/transmission response.

    The top 2x2 block of ``t`` maps transmitted amplitudes to the incident
    pair and is inverted; the bottom block then yields the reflected pair.
    Co/cross components are taken relative to the incident polarization.
    """
    t = np.asarray(t, dtype=complex)
    if t.shape != (4, 2):
        raise ValueError(f"transfer matrix must be 4x2, got {t.shape}")
    e_par, e_perp = complex(incident[0]), complex(incident[1])
    top = t[:2, :]
    cond = float(np.linalg.cond(top))
    if not math.isfinite(cond) or cond > COND_LIMIT:
        raise ResonanceSingularityError(cond)
    trans = np.linalg.solve(top, np.array([e_par, e_perp], dtype=complex))
    refl = t[2:, :] @ trans
    r_c, r_x = co_cross(refl[0], refl[1], e_par, e_perp)
    t_c, t_x = co_cross(trans[0], trans[1], e_par, e_perp)
    return Response(r_co=r_c, r_cross=r_x, t_co=t_c, t_cross=t_x, e_par=e_par, e_perp=e_perp)


def solve_stack(
    stack: Stack,
    freq: float,
    theta_i: float,
    incident: tuple[complex, complex] = (1.0, 0.0),
    engine: str = "cascade",
) -> Response:
    """Evaluate one (stack, frequency, angle) point with either engine."""
    if engine == "cascade":
        return solve_coefficients(assemble_transfer(stack, freq, theta_i), incident)
    if engine == "direct":
        from .direct import solve_direct

        return solve_direct(stack, freq, theta_i, incident).response
    raise ValueError(f"unknown engine {engine!r}")

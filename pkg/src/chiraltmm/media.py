"""Materials and per-medium circular eigenwave kinematics.

A chiral medium couples the electric and magnetic responses through a real
chirality parameter ``kappa``, splitting plane waves into left- and
right-circular eigenwaves with distinct wavenumbers.  All angle-dependent
quantities are carried as longitudinal/tangential wavevector components
``(k_z, k_x)`` rather than complex angles, so backward (negative-wavenumber)
eigenwaves and evanescent branches need no special casing downstream.

Conventions: time factor ``exp(+j w t)``, spatial factor ``exp(-j k.r)``.
Forward waves therefore satisfy ``Im(k_z) <= 0`` (decay toward +z).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEigenwaveError

C0 = 299_792_458.0
MU0 = 4.0e-7 * math.pi
EPS0 = 1.0 / (MU0 * C0 * C0)
ETA0 = MU0 * C0

TWO_PI = 2.0 * math.pi


def principal_sqrt(z: complex) -> complex:
    """Complex square root with Re >= 0; on the branch cut (Re == 0) the
    root with Im <= 0 is chosen, consistent with the exp(+j w t) convention."""
    w = cmath.sqrt(z)
    if w.real < 0.0 or (w.real == 0.0 and w.imag > 0.0):
        w = -w
    return w


def forward_kz(k: complex, k_x: complex) -> complex:
    """Longitudinal wavevector component of the forward branch.

    Returns sqrt(k^2 - k_x^2) with Im(k_z) <= 0, and Re(k_z) >= 0 whenever
    the result is purely real.
    """
    kz = principal_sqrt(k * k - k_x * k_x)
    if kz.imag > 0.0:
        kz = -kz
    return kz


@dataclass(frozen=True)
class MaterialParams:
    """Constitutive parameters of one isotropic (possibly chiral) medium.

    Parameters
    ----------
    eps_r : complex
        Relative permittivity.  Must be nonzero; chiral nihility is modeled
        by small finite values (e.g. 1.6e-4), never by an exact zero.
    mu_r : complex
        Relative permeability.  Must be nonzero.
    kappa : float
        Real (lossless) chirality parameter.  Zero for achiral media.
    """

    eps_r: complex
    mu_r: complex
    kappa: float = 0.0

    def __post_init__(self):
        eps = complex(self.eps_r)
        mu = complex(self.mu_r)
        if isinstance(self.kappa, complex) and self.kappa.imag != 0.0:
            raise ValueError("kappa must be real (complex chirality unsupported)")
        kap = float(self.kappa.real if isinstance(self.kappa, complex) else self.kappa)
        if not (cmath.isfinite(eps) and cmath.isfinite(mu) and math.isfinite(kap)):
            raise ValueError("material parameters must be finite")
        if eps == 0:
            raise ValueError("eps_r must be nonzero (model nihility by a small finite value)")
        if mu == 0:
            raise ValueError("mu_r must be nonzero (model nihility by a small finite value)")
        object.__setattr__(self, "eps_r", eps)
        object.__setattr__(self, "mu_r", mu)
        object.__setattr__(self, "kappa", kap)

    @property
    def is_lossless(self) -> bool:
        return self.eps_r.imag == 0.0 and self.mu_r.imag == 0.0

    @property
    def n_bar(self) -> complex:
        """Mean refractive index sqrt(eps_r * mu_r) on the principal branch."""
        return principal_sqrt(self.eps_r * self.mu_r)

    @property
    def eta_rel(self) -> complex:
        """Wave impedance relative to free space, sqrt(mu_r / eps_r)."""
        return principal_sqrt(self.mu_r / self.eps_r)


AIR = MaterialParams(1.0, 1.0, 0.0)


@dataclass(frozen=True)
class EigenwaveKinematics:
    """Wavevector data of the four circular eigenwaves of one medium.

    ``k_L``/``k_R`` are the total wavenumbers of the left/right circular
    eigenwaves (rad/m); ``k_x`` is the tangential component shared by every
    wave in the stack; ``k_zL``/``k_zR`` are the forward-branch longitudinal
    components; ``eta`` is the absolute wave impedance sqrt(mu/eps) in ohms.
    """

    k_L: complex
    k_R: complex
    k_x: complex
    k_zL: complex
    k_zR: complex
    eta: complex


def circular_wavenumbers(mat: MaterialParams, freq: float) -> tuple[complex, complex]:
    """Wavenumbers of the left and right circular eigenwaves.

    k_L = w (-kappa sqrt(eps0 mu0) + sqrt(eps mu))
    k_R = w (+kappa sqrt(eps0 mu0) + sqrt(eps mu))

    In chiral nihility (sqrt(eps_r mu_r) < kappa) the left wavenumber is
    negative: the forward-power left wave is a backward-phase wave.
    """
    if not (freq > 0.0 and math.isfinite(freq)):
        raise ValueError(f"frequency must be positive and finite, got {freq!r}")
    k0 = TWO_PI * freq / C0
    nbar = mat.n_bar
    return k0 * (-mat.kappa + nbar), k0 * (mat.kappa + nbar)


def kinematics(mat: MaterialParams, freq: float, theta_i: float) -> EigenwaveKinematics:
    """Eigenwave kinematics of ``mat`` for a plane wave incident from air.

    Parameters
    ----------
    mat : MaterialParams
    freq : float
        Frequency in Hz (> 0).
    theta_i : float
        Angle of incidence in air, radians, in [0, pi/2).

    The tangential component ``k_x = k0 sin(theta_i)`` is fixed by phase
    matching across all interfaces; each ``k_z`` is the forward branch of
    sqrt(k^2 - k_x^2) (``Im(k_z) <= 0``, ``Re(k_z) >= 0`` if real).
    """
    if not (0.0 <= theta_i < math.pi / 2.0):
        raise ValueError(f"theta_i must lie in [0, pi/2), got {theta_i!r}")
    k_L, k_R = circular_wavenumbers(mat, freq)
    k0 = TWO_PI * freq / C0
    k_x = complex(k0 * math.sin(theta_i))
    return EigenwaveKinematics(
        k_L=k_L,
        k_R=k_R,
        k_x=k_x,
        k_zL=forward_kz(k_L, k_x),
        k_zR=forward_kz(k_R, k_x),
        eta=ETA0 * mat.eta_rel,
    )


@dataclass(frozen=True)
class PlaneWave:
    """One eigenwave: unit-amplitude electric polarization ``e`` (3-vector),
    matching magnetic polarization ``h`` (3-vector, 1/ohm), and wavevector
    ``k`` (3-vector, rad/m)."""

    e: np.ndarray
    h: np.ndarray
    k: np.ndarray


@dataclass(frozen=True)
class EigenwaveTemplates:
    """Field templates of the four eigenwaves {L+, R+, L-, R-} of a medium."""

    l_fwd: PlaneWave
    r_fwd: PlaneWave
    l_bwd: PlaneWave
    r_bwd: PlaneWave

    def waves(self) -> tuple[PlaneWave, PlaneWave, PlaneWave, PlaneWave]:
        """Waves in the global amplitude ordering (L+, R+, L-, R-)."""
        return (self.l_fwd, self.r_fwd, self.l_bwd, self.r_bwd)


def eigenwave_templates(mat: MaterialParams, kin: EigenwaveKinematics) -> EigenwaveTemplates:
    """Unit-amplitude field templates of the four circular eigenwaves.

    Left waves carry ``+j y_hat``, right waves ``-j y_hat``; the in-plane
    components are expressed through ``cos = k_z/k`` and ``sin = k_x/k`` per
    eigenwave.  The magnetic template is ``h = -(j/eta) e`` for left waves
    and ``+(j/eta) e`` for right waves, the unique choice satisfying both
    Maxwell curl equations together with the chiral constitutive relations.
    """
    if kin.k_L == 0 or kin.k_R == 0:
        raise DegenerateEigenwaveError(
            "circular eigenwave wavenumber is exactly zero (kappa equals sqrt(eps_r*mu_r))"
        )
    c_L = kin.k_zL / kin.k_L
    s_L = kin.k_x / kin.k_L
    c_R = kin.k_zR / kin.k_R
    s_R = kin.k_x / kin.k_R
    eta = kin.eta

    def wave(c, s, jy, kz_sign, k_z, h_sign):
        e = np.array([kz_sign * c, jy, s], dtype=complex)
        h = (h_sign * 1j / eta) * e
        k = np.array([-kin.k_x, 0.0, kz_sign * k_z], dtype=complex)
        return PlaneWave(e=e, h=h, k=k)

    return EigenwaveTemplates(
        l_fwd=wave(c_L, s_L, +1j, +1, kin.k_zL, -1),
        r_fwd=wave(c_R, s_R, -1j, +1, kin.k_zR, +1),
        l_bwd=wave(c_L, s_L, +1j, -1, kin.k_zL, -1),
        r_bwd=wave(c_R, s_R, -1j, -1, kin.k_zR, +1),
    )

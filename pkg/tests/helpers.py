"""Shared test oracles and scenario generators.

The Airy formulas here are derived independently from scalar interface
algebra (per-polarization 2x2 continuity), so they validate the 4x4
machinery rather than restating it.
"""

import numpy as np

from chiraltmm import Layer, MaterialParams, Stack

C0 = 299_792_458.0
F0 = 1.0e12
LAM0 = C0 / F0
TWO_PI = 2.0 * np.pi


def slab_kz(n, freq, theta_i):
    """Forward-branch longitudinal wavenumber in a medium of index n."""
    k0 = TWO_PI * freq / C0
    kx = k0 * np.sin(theta_i)
    kz = np.emath.sqrt((n * k0) ** 2 - kx**2)
    if kz.imag > 0:
        kz = -kz
    return complex(kz)


def fresnel_amplitudes(n, freq, theta_i, pol):
    """Air -> medium interface coefficients in the solver's amplitude basis
    (reflected p along (cos, 0, -sin)).  Non-magnetic medium."""
    k0 = TWO_PI * freq / C0
    c0 = np.cos(theta_i)
    cs = slab_kz(n, freq, theta_i) / (n * k0)
    if pol == "p":
        # columns (E_x, eta0*H_y) with amplitudes on unit polarization vectors
        r = (cs * 1.0 - c0 * n) / (cs * 1.0 + c0 * n)
        t = c0 * (1 + r) / cs
    else:
        r = (c0 - cs * n) / (c0 + cs * n)
        t = 1 + r
    return complex(r), complex(t)


def airy_slab(n, d, freq, theta_i, pol):
    """Single slab of index n in air: total (r, t) amplitudes."""
    k0 = TWO_PI * freq / C0
    c0 = np.cos(theta_i)
    kz = slab_kz(n, freq, theta_i)
    cs = kz / (n * k0)
    if pol == "p":
        r12 = (cs - c0 * n) / (cs + c0 * n)
        t12 = c0 * (1 + r12) / cs
        r21 = -r12
        t21 = cs * (1 + r21) / c0
    else:
        r12 = (c0 - cs * n) / (c0 + cs * n)
        t12 = 1 + r12
        r21 = -r12
        t21 = 1 + r21
    ph = np.exp(-1j * kz * d)
    den = 1 - r21 * r21 * ph * ph
    r = r12 + t12 * r21 * t21 * ph * ph / den
    t = t12 * t21 * ph / den
    return complex(r), complex(t)


def random_lossless_material(rng, nihility=True):
    """Material draw covering dielectric, chiral and near-nihility regimes."""
    lo = -5.0 if nihility else -2.0
    eps = 10.0 ** rng.uniform(lo, 1.0)
    mu = 10.0 ** rng.uniform(lo, np.log10(5.0))
    kappa = rng.uniform(-0.5, 0.5)
    return MaterialParams(eps, mu, kappa)


def random_stack(rng, max_slabs=7, d_range=(1e-6, 10e-6)):
    n = int(rng.integers(1, max_slabs + 1))
    return Stack(
        tuple(
            Layer(random_lossless_material(rng), rng.uniform(*d_range)) for _ in range(n)
        )
    )


def response_array(resp):
    return np.array([resp.r_co, resp.r_cross, resp.t_co, resp.t_cross])

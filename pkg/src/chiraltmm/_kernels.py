"""Batched sweep evaluation of the transfer-matrix cascade.

Two interchangeable backends compute reflection/transmission coefficients
for whole (frequency, angle) grids at once:

* ``numba``: a JIT-compiled per-point loop (parallel across grid points).
* ``numpy``: a vectorized fallback using stacked 4x4 linear algebra.

The default backend is numba when importable; setting the environment
variable ``CHIRAL_TMM_NUMBA`` to ``0``/``false``/``off``/``numpy`` forces
the pure-numpy path.  Both backends implement the identical algorithm
(partial-pivoted elimination of the tangential-field matrices, right-to-left
phase accumulation) and agree to rounding; ``benchmarks/bench_backends.py``
times one against the other.

Per-point failures are reported through status codes instead of exceptions
so one bad grid point cannot abort a sweep.
"""

from __future__ import annotations

import os

import numpy as np

from .media import C0
from .structure import Stack
from .tmm import COND_LIMIT, OVERFLOW_LIMIT

STATUS_OK = 0
STATUS_SINGULAR_INTERFACE = 1
STATUS_EVANESCENT_OVERFLOW = 2
STATUS_RESONANCE_SINGULARITY = 3
STATUS_DEGENERATE_EIGENWAVE = 4
STATUS_NONFINITE = 5

STATUS_LABELS = {
    STATUS_SINGULAR_INTERFACE: "singular-interface",
    STATUS_EVANESCENT_OVERFLOW: "evanescent-overflow",
    STATUS_RESONANCE_SINGULARITY: "resonance-singularity",
    STATUS_DEGENERATE_EIGENWAVE: "degenerate-eigenwave",
    STATUS_NONFINITE: "nonfinite-result",
}

_TWO_PI = 2.0 * np.pi

_env = os.environ.get("CHIRAL_TMM_NUMBA", "auto").strip().lower()
_NUMBA_DISABLED = _env in {"0", "false", "off", "no", "numpy"}

try:
    if _NUMBA_DISABLED:
        raise ImportError("numba disabled via CHIRAL_TMM_NUMBA")
    from numba import njit, prange

    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False


def default_backend() -> str:
    return "numba" if NUMBA_AVAILABLE else "numpy"


def stack_arrays(stack: Stack):
    """Flatten a stack into per-layer parameter arrays for the kernels."""
    n = len(stack.layers)
    eps = np.empty(n, dtype=np.complex128)
    mu = np.empty(n, dtype=np.complex128)
    kap = np.empty(n, dtype=np.float64)
    d = np.empty(n, dtype=np.float64)
    for i, layer in enumerate(stack.layers):
        eps[i] = layer.material.eps_r
        mu[i] = layer.material.mu_r
        kap[i] = layer.material.kappa
        d[i] = layer.thickness
    return eps, mu, kap, d


def sweep_cascade(
    stack: Stack,
    freqs: np.ndarray,
    thetas: np.ndarray,
    e_par: complex,
    e_perp: complex,
    backend: str | None = None,
):
    """Evaluate the cascade on flat per-point (freq, theta) arrays.

    Returns ``(coeffs, status, diag)`` where ``coeffs[i]`` holds
    (r_co, r_cross, t_co, t_cross), ``status[i]`` a STATUS_* code and
    ``diag[i]`` the guard value (condition number or exponent) at failure.
    """
    name = backend or default_backend()
    freqs = np.ascontiguousarray(freqs, dtype=np.float64)
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    if freqs.shape != thetas.shape or freqs.ndim != 1:
        raise ValueError("freqs and thetas must be equal-length 1-D arrays")
    eps, mu, kap, d = stack_arrays(stack)
    if name == "numba":
        if not NUMBA_AVAILABLE:
            raise RuntimeError(
                "numba backend unavailable (not installed or disabled via CHIRAL_TMM_NUMBA)"
            )
        return _sweep_numba(eps, mu, kap, d, freqs, thetas, complex(e_par), complex(e_perp))
    if name == "numpy":
        return sweep_cascade_numpy(eps, mu, kap, d, freqs, thetas, complex(e_par), complex(e_perp))
    raise ValueError(f"unknown backend {name!r}")


# ---------------------------------------------------------------------------
# vectorized numpy backend


def _psqrt(z):
    """Principal-branch sqrt, Re >= 0 and Im <= 0 on the negative real axis."""
    w = np.sqrt(np.asarray(z, dtype=np.complex128))
    flip = (w.real < 0.0) | ((w.real == 0.0) & (w.imag > 0.0))
    return np.where(flip, -w, w)


def _kz_forward(k, kx):
    kz = _psqrt(k * k - kx * kx)
    return np.where(kz.imag > 0.0, -kz, kz)


def _norm1(m):
    """1-norm (max column abs sum) of stacked square matrices."""
    return np.abs(m).sum(axis=-2).max(axis=-1)


def _set_status(status, diag, mask, code, value):
    fresh = mask & (status == STATUS_OK)
    status[fresh] = code
    diag[fresh] = np.broadcast_to(value, status.shape)[fresh]


def _air_matrix(ci, n):
    c = np.zeros((n, 4, 4), dtype=np.complex128)
    c[:, 0, 0] = ci
    c[:, 0, 2] = ci
    c[:, 1, 1] = 1.0
    c[:, 1, 3] = 1.0
    c[:, 2, 1] = -ci
    c[:, 2, 3] = ci
    c[:, 3, 0] = 1.0
    c[:, 3, 2] = -1.0
    return c


def _slab_matrix(c_l, c_r, inv_eta, n):
    c = np.empty((n, 4, 4), dtype=np.complex128)
    c[:, 0, 0] = c_l
    c[:, 0, 1] = c_r
    c[:, 0, 2] = -c_l
    c[:, 0, 3] = -c_r
    c[:, 1, 0] = 1j
    c[:, 1, 1] = -1j
    c[:, 1, 2] = 1j
    c[:, 1, 3] = -1j
    c[:, 2, 0] = -1j * c_l * inv_eta
    c[:, 2, 1] = 1j * c_r * inv_eta
    c[:, 2, 2] = 1j * c_l * inv_eta
    c[:, 2, 3] = -1j * c_r * inv_eta
    c[:, 3, 0] = inv_eta
    c[:, 3, 1] = inv_eta
    c[:, 3, 2] = inv_eta
    c[:, 3, 3] = inv_eta
    return c


def _guarded_inv(c, status, diag):
    """Batched inverse with singularity masking and a 1-norm condition guard."""
    det = np.linalg.det(c)
    bad = ~np.isfinite(det) | (det == 0)
    if bad.any():
        c = c.copy()
        c[bad] = np.eye(4)
        _set_status(status, diag, bad, STATUS_SINGULAR_INTERFACE, np.inf)
    inv = np.linalg.inv(c)
    cond = _norm1(c) * _norm1(inv)
    _set_status(status, diag, ~np.isfinite(cond) | (cond > COND_LIMIT), STATUS_SINGULAR_INTERFACE, cond)
    return inv


def sweep_cascade_numpy(eps, mu, kap, d, freqs, thetas, e_par, e_perp):
    """Pure-numpy backend: stacked linear algebra over all grid points."""
    n = freqs.size
    status = np.zeros(n, dtype=np.int8)
    diag = np.zeros(n, dtype=np.float64)
    coeffs = np.zeros((n, 4), dtype=np.complex128)

    with np.errstate(all="ignore"):
        k0 = _TWO_PI * freqs / C0
        kx = k0 * np.sin(thetas)
        ci = np.cos(thetas)

        c_air = _air_matrix(ci, n)
        air_inv = _guarded_inv(c_air, status, diag)

        x = np.broadcast_to(np.eye(4, dtype=np.complex128), (n, 4, 4)).copy()
        for m in range(eps.size):
            nbar = _psqrt(eps[m] * mu[m])[()]
            inv_eta = 1.0 / _psqrt(mu[m] / eps[m])[()]
            k_l = k0 * (-kap[m] + nbar)
            k_r = k0 * (kap[m] + nbar)
            _set_status(status, diag, (k_l == 0) | (k_r == 0), STATUS_DEGENERATE_EIGENWAVE, 0.0)
            k_l = np.where(k_l == 0, 1.0, k_l)
            k_r = np.where(k_r == 0, 1.0, k_r)
            kz_l = _kz_forward(k_l, kx)
            kz_r = _kz_forward(k_r, kx)
            grow = np.maximum(np.abs(kz_l.imag), np.abs(kz_r.imag)) * d[m]
            _set_status(status, diag, grow > OVERFLOW_LIMIT, STATUS_EVANESCENT_OVERFLOW, grow)

            c = _slab_matrix(kz_l / k_l, kz_r / k_r, inv_eta, n)
            inv = _guarded_inv(c, status, diag)
            # right-to-left phases: forward entries grow across the slab
            arg_l = np.clip((1j * kz_l * d[m]).real, None, OVERFLOW_LIMIT) + 1j * (1j * kz_l * d[m]).imag
            arg_r = np.clip((1j * kz_r * d[m]).real, None, OVERFLOW_LIMIT) + 1j * (1j * kz_r * d[m]).imag
            ph = np.empty((n, 4), dtype=np.complex128)
            ph[:, 0] = np.exp(arg_l)
            ph[:, 1] = np.exp(arg_r)
            ph[:, 2] = np.exp(-arg_l)
            ph[:, 3] = np.exp(-arg_r)
            x = x @ (c * ph[:, None, :]) @ inv

        t_full = air_inv @ x @ c_air[:, :, :2]

        top = t_full[:, :2, :]
        det = top[:, 0, 0] * top[:, 1, 1] - top[:, 0, 1] * top[:, 1, 0]
        sing = ~np.isfinite(det) | (det == 0)
        _set_status(status, diag, sing, STATUS_RESONANCE_SINGULARITY, np.inf)
        det = np.where(sing, 1.0, det)
        inv_top = np.empty_like(top)
        inv_top[:, 0, 0] = top[:, 1, 1] / det
        inv_top[:, 0, 1] = -top[:, 0, 1] / det
        inv_top[:, 1, 0] = -top[:, 1, 0] / det
        inv_top[:, 1, 1] = top[:, 0, 0] / det
        cond = (np.abs(top).sum(axis=1).max(axis=1)) * (np.abs(inv_top).sum(axis=1).max(axis=1))
        _set_status(status, diag, ~np.isfinite(cond) | (cond > COND_LIMIT), STATUS_RESONANCE_SINGULARITY, cond)

        e = np.array([e_par, e_perp], dtype=np.complex128)
        trans = inv_top @ e
        refl = t_full[:, 2:, :] @ trans[:, :, None]
        refl = refl[:, :, 0]

        norm = np.sqrt(abs(e_par) ** 2 + abs(e_perp) ** 2)
        p = e_par / norm
        q = e_perp / norm
        coeffs[:, 0] = np.conj(p) * refl[:, 0] + np.conj(q) * refl[:, 1]
        coeffs[:, 1] = -q * refl[:, 0] + p * refl[:, 1]
        coeffs[:, 2] = np.conj(p) * trans[:, 0] + np.conj(q) * trans[:, 1]
        coeffs[:, 3] = -q * trans[:, 0] + p * trans[:, 1]

        fine = np.isfinite(coeffs).all(axis=1)
        _set_status(status, diag, ~fine, STATUS_NONFINITE, np.inf)
        coeffs[status != STATUS_OK] = 0.0
    return coeffs, status, diag


# ---------------------------------------------------------------------------
# numba backend

if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _inv_guarded_jit(a, inv):
        """Gauss-Jordan inverse with partial pivoting.

        Returns the 1-norm condition estimate, or -1.0 if a pivot vanishes.
        """
        n = a.shape[0]
        work = a.copy()
        inv[:, :] = 0.0
        for i in range(n):
            inv[i, i] = 1.0
        norm_a = 0.0
        for j in range(n):
            s = 0.0
            for i in range(n):
                s += abs(a[i, j])
            if s > norm_a:
                norm_a = s
        for col in range(n):
            piv = col
            best = abs(work[col, col])
            for r in range(col + 1, n):
                v = abs(work[r, col])
                if v > best:
                    best = v
                    piv = r
            if best == 0.0:
                return -1.0
            if piv != col:
                for j in range(n):
                    work[col, j], work[piv, j] = work[piv, j], work[col, j]
                    inv[col, j], inv[piv, j] = inv[piv, j], inv[col, j]
            scale = 1.0 / work[col, col]
            for j in range(n):
                work[col, j] *= scale
                inv[col, j] *= scale
            for r in range(n):
                if r == col:
                    continue
                f = work[r, col]
                if f != 0.0:
                    for j in range(n):
                        work[r, j] -= f * work[col, j]
                        inv[r, j] -= f * inv[col, j]
        norm_inv = 0.0
        for j in range(n):
            s = 0.0
            for i in range(n):
                s += abs(inv[i, j])
            if s > norm_inv:
                norm_inv = s
        return norm_a * norm_inv

    @njit(cache=True)
    def _psqrt_jit(z):
        w = np.sqrt(z)
        if w.real < 0.0 or (w.real == 0.0 and w.imag > 0.0):
            w = -w
        return w

    @njit(cache=True, inline="always")
    def _mm44_jit(a, b, out):
        """4x4 complex matmul with fixed-size loops (no BLAS dispatch)."""
        for i in range(4):
            for j in range(4):
                out[i, j] = (
                    a[i, 0] * b[0, j]
                    + a[i, 1] * b[1, j]
                    + a[i, 2] * b[2, j]
                    + a[i, 3] * b[3, j]
                )

    @njit(cache=True)
    def _point_cascade_jit(eps, mu, kap, d, f, theta, e_par, e_perp, out):
        """One grid point; writes (r_co, r_cross, t_co, t_cross) into out.

        Returns (status, diag).
        """
        k0 = _TWO_PI * f / C0
        kx = k0 * np.sin(theta)
        ci = np.cos(theta)

        c_air = np.zeros((4, 4), dtype=np.complex128)
        c_air[0, 0] = ci
        c_air[0, 2] = ci
        c_air[1, 1] = 1.0
        c_air[1, 3] = 1.0
        c_air[2, 1] = -ci
        c_air[2, 3] = ci
        c_air[3, 0] = 1.0
        c_air[3, 2] = -1.0
        air_inv = np.empty((4, 4), dtype=np.complex128)
        cond = _inv_guarded_jit(c_air, air_inv)
        if cond < 0.0 or cond > COND_LIMIT:
            return STATUS_SINGULAR_INTERFACE, cond

        x = np.eye(4, dtype=np.complex128)
        c = np.empty((4, 4), dtype=np.complex128)
        c_inv = np.empty((4, 4), dtype=np.complex128)
        scaled = np.empty((4, 4), dtype=np.complex128)
        tmp = np.empty((4, 4), dtype=np.complex128)
        for m in range(eps.size):
            nbar = _psqrt_jit(eps[m] * mu[m])
            inv_eta = 1.0 / _psqrt_jit(mu[m] / eps[m])
            k_l = k0 * (-kap[m] + nbar)
            k_r = k0 * (kap[m] + nbar)
            if k_l == 0 or k_r == 0:
                return STATUS_DEGENERATE_EIGENWAVE, 0.0
            kz_l = _psqrt_jit(k_l * k_l - kx * kx)
            if kz_l.imag > 0.0:
                kz_l = -kz_l
            kz_r = _psqrt_jit(k_r * k_r - kx * kx)
            if kz_r.imag > 0.0:
                kz_r = -kz_r
            grow = max(abs(kz_l.imag), abs(kz_r.imag)) * d[m]
            if grow > OVERFLOW_LIMIT:
                return STATUS_EVANESCENT_OVERFLOW, grow

            c_l = kz_l / k_l
            c_r = kz_r / k_r
            c[0, 0] = c_l
            c[0, 1] = c_r
            c[0, 2] = -c_l
            c[0, 3] = -c_r
            c[1, 0] = 1j
            c[1, 1] = -1j
            c[1, 2] = 1j
            c[1, 3] = -1j
            c[2, 0] = -1j * c_l * inv_eta
            c[2, 1] = 1j * c_r * inv_eta
            c[2, 2] = 1j * c_l * inv_eta
            c[2, 3] = -1j * c_r * inv_eta
            c[3, 0] = inv_eta
            c[3, 1] = inv_eta
            c[3, 2] = inv_eta
            c[3, 3] = inv_eta

            cond = _inv_guarded_jit(c, c_inv)
            if cond < 0.0 or cond > COND_LIMIT:
                return STATUS_SINGULAR_INTERFACE, cond

            ph0 = np.exp(1j * kz_l * d[m])
            ph1 = np.exp(1j * kz_r * d[m])
            for i in range(4):
                scaled[i, 0] = c[i, 0] * ph0
                scaled[i, 1] = c[i, 1] * ph1
                scaled[i, 2] = c[i, 2] / ph0
                scaled[i, 3] = c[i, 3] / ph1
            _mm44_jit(scaled, c_inv, tmp)
            _mm44_jit(x, tmp, scaled)
            x[:, :] = scaled

        _mm44_jit(air_inv, x, tmp)
        t_full = np.empty((4, 2), dtype=np.complex128)
        for i in range(4):
            for j in range(2):
                t_full[i, j] = (
                    tmp[i, 0] * c_air[0, j]
                    + tmp[i, 1] * c_air[1, j]
                    + tmp[i, 2] * c_air[2, j]
                    + tmp[i, 3] * c_air[3, j]
                )

        a00 = t_full[0, 0]
        a01 = t_full[0, 1]
        a10 = t_full[1, 0]
        a11 = t_full[1, 1]
        det = a00 * a11 - a01 * a10
        if det == 0:
            return STATUS_RESONANCE_SINGULARITY, np.inf
        i00 = a11 / det
        i01 = -a01 / det
        i10 = -a10 / det
        i11 = a00 / det
        n_top = max(abs(a00) + abs(a10), abs(a01) + abs(a11))
        n_inv = max(abs(i00) + abs(i10), abs(i01) + abs(i11))
        cond = n_top * n_inv
        if not np.isfinite(cond) or cond > COND_LIMIT:
            return STATUS_RESONANCE_SINGULARITY, cond

        t0 = i00 * e_par + i01 * e_perp
        t1 = i10 * e_par + i11 * e_perp
        r0 = t_full[2, 0] * t0 + t_full[2, 1] * t1
        r1 = t_full[3, 0] * t0 + t_full[3, 1] * t1

        norm = np.sqrt(abs(e_par) ** 2 + abs(e_perp) ** 2)
        p = e_par / norm
        q = e_perp / norm
        out[0] = np.conj(p) * r0 + np.conj(q) * r1
        out[1] = -q * r0 + p * r1
        out[2] = np.conj(p) * t0 + np.conj(q) * t1
        out[3] = -q * t0 + p * t1
        for i in range(4):
            if not (np.isfinite(out[i].real) and np.isfinite(out[i].imag)):
                return STATUS_NONFINITE, np.inf
        return STATUS_OK, 0.0

    @njit(cache=True, parallel=True)
    def _sweep_numba_jit(eps, mu, kap, d, freqs, thetas, e_par, e_perp):
        n = freqs.size
        coeffs = np.zeros((n, 4), dtype=np.complex128)
        status = np.zeros(n, dtype=np.int8)
        diag = np.zeros(n, dtype=np.float64)
        for i in prange(n):
            st, dg = _point_cascade_jit(
                eps, mu, kap, d, freqs[i], thetas[i], e_par, e_perp, coeffs[i]
            )
            status[i] = st
            diag[i] = dg
            if st != STATUS_OK:
                for j in range(4):
                    coeffs[i, j] = 0.0
        return coeffs, status, diag

    def _sweep_numba(eps, mu, kap, d, freqs, thetas, e_par, e_perp):
        return _sweep_numba_jit(eps, mu, kap, d, freqs, thetas, e_par, e_perp)

"""Observables and sweep evaluation.

Converts complex coefficients into the reported quantities (co/cross
reflected and transmitted power fractions, polarization rotation,
conservation residual) and runs frequency/angle sweeps with per-point
failure accounting: a point that cannot be evaluated is excluded from the
rows and reported with its cause instead of aborting the sweep or emitting
NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ChiralTmmError, NegligibleTransmissionError
from .structure import Stack
from .tmm import Response

ROTATION_T_THRESHOLD = 1.0e-12


@dataclass(frozen=True)
class PowerBreakdown:
    """Power fractions of one evaluation, normalized to the incident power."""

    r_co: float
    r_cross: float
    t_co: float
    t_cross: float
    r_total: float
    t_total: float
    conservation_residual: float


def powers(resp: Response) -> PowerBreakdown:
    """Co/cross reflected and transmitted power fractions.

    Both half-spaces are air and the transmitted angle equals the incident
    angle, so powers are plain squared magnitudes over the incident power.
    """
    p_inc = abs(resp.e_par) ** 2 + abs(resp.e_perp) ** 2
    if p_inc == 0.0:
        raise ValueError("incident amplitude is zero")
    r_co = abs(resp.r_co) ** 2 / p_inc
    r_cross = abs(resp.r_cross) ** 2 / p_inc
    t_co = abs(resp.t_co) ** 2 / p_inc
    t_cross = abs(resp.t_cross) ** 2 / p_inc
    r_total = r_co + r_cross
    t_total = t_co + t_cross
    return PowerBreakdown(
        r_co=r_co,
        r_cross=r_cross,
        t_co=t_co,
        t_cross=t_cross,
        r_total=r_total,
        t_total=t_total,
        conservation_residual=abs(r_total + t_total - 1.0),
    )


def rotation_angle(resp: Response) -> float:
    """Polarization rotation of the transmitted field, degrees in [0, 90].

    Defined as atan2(|t_cross|, |t_co|); 90 degrees means fully
    cross-polarized transmission.  Undefined (raises) when essentially all
    power is reflected, rather than returning a misleading zero.
    """
    pb = powers(resp)
    if pb.t_total <= ROTATION_T_THRESHOLD:
        raise NegligibleTransmissionError(pb.t_total)
    return math.degrees(math.atan2(abs(resp.t_cross), abs(resp.t_co)))


@dataclass(frozen=True)
class SweepGrid:
    """Evaluation grid: a frequency axis and an angle axis, either of which
    may be a single fixed value.  Rows run frequency-major."""

    frequencies_hz: np.ndarray
    thetas_deg: np.ndarray

    def __post_init__(self):
        f = np.atleast_1d(np.asarray(self.frequencies_hz, dtype=float))
        t = np.atleast_1d(np.asarray(self.thetas_deg, dtype=float))
        if f.size == 0 or t.size == 0:
            raise ValueError("sweep axes must be non-empty")
        if not np.all(f > 0.0) or not np.all(np.isfinite(f)):
            raise ValueError("frequencies must be positive and finite")
        if not np.all((t >= 0.0) & (t < 90.0)):
            raise ValueError("incidence angles must lie in [0, 90) degrees")
        object.__setattr__(self, "frequencies_hz", f)
        object.__setattr__(self, "thetas_deg", t)

    @classmethod
    def single(cls, freq_hz: float, theta_deg: float) -> "SweepGrid":
        return cls(np.array([freq_hz]), np.array([theta_deg]))

    @classmethod
    def frequency_sweep(
        cls, start_hz: float, stop_hz: float, count: int, theta_deg: float
    ) -> "SweepGrid":
        if count < 2:
            raise ValueError("swept axis needs count >= 2")
        return cls(np.linspace(start_hz, stop_hz, count), np.array([theta_deg]))

    @classmethod
    def angle_sweep(
        cls,
        start_deg: float,
        stop_deg: float,
        count: int,
        freq_hz: float,
        endpoint: bool = True,
    ) -> "SweepGrid":
        if count < 2:
            raise ValueError("swept axis needs count >= 2")
        return cls(np.array([freq_hz]), np.linspace(start_deg, stop_deg, count, endpoint=endpoint))

    @property
    def n_points(self) -> int:
        return self.frequencies_hz.size * self.thetas_deg.size

    def flat(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-point (frequency, angle) arrays in row order."""
        f = np.repeat(self.frequencies_hz, self.thetas_deg.size)
        t = np.tile(self.thetas_deg, self.frequencies_hz.size)
        return f, t


def default_frequency_grid(theta_deg: float, count: int = 801) -> SweepGrid:
    return SweepGrid.frequency_sweep(0.05e12, 4.0e12, count, theta_deg)


def default_angle_grid(freq_hz: float, count: int = 901) -> SweepGrid:
    return SweepGrid.angle_sweep(0.0, 90.0, count, freq_hz, endpoint=False)


@dataclass(frozen=True)
class SweepRow:
    frequency_hz: float
    theta_deg: float
    r_co: float
    r_cross: float
    t_co: float
    t_cross: float
    r_total: float
    t_total: float
    rotation_deg: float
    conservation_residual: float


@dataclass(frozen=True)
class SweepFailure:
    index: int
    frequency_hz: float
    theta_deg: float
    kind: str
    detail: str


_NUMERICAL_KINDS = frozenset(_kernels.STATUS_LABELS.values())


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    failures: tuple[SweepFailure, ...] = field(default=())

    @property
    def n_failures(self) -> int:
        return len(self.failures)

    @property
    def n_numerical_failures(self) -> int:
        """Failures other than the negligible-transmission domain condition."""
        return sum(1 for f in self.failures if f.kind in _NUMERICAL_KINDS)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])


def run_sweep(
    stack: Stack,
    grid: SweepGrid,
    incident: tuple[complex, complex] = (1.0, 0.0),
    engine: str = "cascade",
    backend: str | None = None,
) -> SweepResult:
    """Evaluate the stack on every grid point.

    Points are independent; the cascade engine evaluates them in one batched
    kernel call (numba or numpy backend), the direct engine solves the full
    boundary system per point.  Rows come back in grid order; failed points
    are excluded and reported in ``failures`` with their cause.
    """
    e_par, e_perp = complex(incident[0]), complex(incident[1])
    if e_par == 0 and e_perp == 0:
        raise ValueError("incident amplitude is zero")
    freqs, thetas = grid.flat()

    if engine == "cascade":
        coeffs, status, diag = _kernels.sweep_cascade(
            stack, freqs, np.deg2rad(thetas), e_par, e_perp, backend=backend
        )
        failures = [
            (i, _kernels.STATUS_LABELS[int(s)], f"guard value {diag[i]:.6g}")
            for i, s in enumerate(status)
            if s != _kernels.STATUS_OK
        ]
    elif engine == "direct":
        from .direct import solve_direct
        from .errors import (
            DegenerateEigenwaveError,
            EvanescentOverflowError,
            ResonanceSingularityError,
            SingularInterfaceError,
        )

        kind_of = {
            SingularInterfaceError: "singular-interface",
            EvanescentOverflowError: "evanescent-overflow",
            ResonanceSingularityError: "resonance-singularity",
            DegenerateEigenwaveError: "degenerate-eigenwave",
        }
        coeffs = np.zeros((freqs.size, 4), dtype=complex)
        failures = []
        for i in range(freqs.size):
            try:
                resp = solve_direct(
                    stack, float(freqs[i]), math.radians(float(thetas[i])), (e_par, e_perp)
                ).response
            except ChiralTmmError as exc:
                failures.append((i, kind_of.get(type(exc), "nonfinite-result"), str(exc)))
                continue
            coeffs[i] = (resp.r_co, resp.r_cross, resp.t_co, resp.t_cross)
    else:
        raise ValueError(f"unknown engine {engine!r}")

    rows: list[SweepRow] = []
    fail_records = [
        SweepFailure(i, float(freqs[i]), float(thetas[i]), kind, detail)
        for i, kind, detail in failures
    ]
    failed = {f.index for f in fail_records}
    p_inc = abs(e_par) ** 2 + abs(e_perp) ** 2
    for i in range(freqs.size):
        if i in failed:
            continue
        r_co = abs(coeffs[i, 0]) ** 2 / p_inc
        r_x = abs(coeffs[i, 1]) ** 2 / p_inc
        t_co = abs(coeffs[i, 2]) ** 2 / p_inc
        t_x = abs(coeffs[i, 3]) ** 2 / p_inc
        t_total = t_co + t_x
        if t_total <= ROTATION_T_THRESHOLD:
            fail_records.append(
                SweepFailure(
                    i,
                    float(freqs[i]),
                    float(thetas[i]),
                    "negligible-transmission",
                    f"T_total = {t_total:.3e}, rotation undefined",
                )
            )
            continue
        rows.append(
            SweepRow(
                frequency_hz=float(freqs[i]),
                theta_deg=float(thetas[i]),
                r_co=r_co,
                r_cross=r_x,
                t_co=t_co,
                t_cross=t_x,
                r_total=r_co + r_x,
                t_total=t_total,
                rotation_deg=math.degrees(
                    math.atan2(abs(coeffs[i, 3]), abs(coeffs[i, 2]))
                ),
                conservation_residual=abs(r_co + r_x + t_total - 1.0),
            )
        )
    fail_records.sort(key=lambda f: f.index)
    return SweepResult(rows=tuple(rows), failures=tuple(fail_records))

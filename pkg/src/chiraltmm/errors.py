"""Exception types raised by the solver."""


class ChiralTmmError(Exception):
    """Base class for all solver errors."""


class ConfigError(ChiralTmmError):
    """Scenario configuration is malformed or inconsistent."""


class DegenerateEigenwaveError(ChiralTmmError):
    """A circular eigenwave has exactly zero wavenumber (kappa equals the
    refractive index), so its polarization template is undefined."""


class SingularInterfaceError(ChiralTmmError):
    """The tangential-field matrix of an interface side is singular or too
    ill-conditioned to invert reliably."""

    def __init__(self, cond: float, detail: str = ""):
        self.cond = cond
        msg = f"singular eigenwave basis at interface (condition number {cond:.3e})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class EvanescentOverflowError(ChiralTmmError):
    """An evanescent phase factor would overflow double precision."""

    def __init__(self, magnitude: float, detail: str = ""):
        self.magnitude = magnitude
        msg = f"evanescent phase exponent |Im(kz)*d| = {magnitude:.1f} exceeds overflow guard"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ResonanceSingularityError(ChiralTmmError):
    """The transfer relation cannot be solved for the transmitted amplitudes
    (near-singular system, typically at a structural resonance)."""

    def __init__(self, cond: float, detail: str = ""):
        self.cond = cond
        msg = f"transfer system is near-singular (condition number {cond:.3e})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NegligibleTransmissionError(ChiralTmmError):
    """Polarization rotation is undefined because essentially no power is
    transmitted."""

    def __init__(self, t_total: float):
        self.t_total = t_total
        super().__init__(
            f"rotation undefined: transmitted power {t_total:.3e} below threshold"
        )

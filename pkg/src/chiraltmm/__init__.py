"""Transfer-matrix solver for plane waves on periodic chiral multilayers.

Computes co- and cross-polarized reflected and transmitted powers and the
polarization rotation of a monochromatic plane wave obliquely incident on a
planar periodic stack of chiral / chiral-nihility / dielectric slabs between
air half-spaces.
"""

__version__ = "0.1.0"

from .direct import DirectSolution, field_residual, solve_direct
from .errors import (
    ChiralTmmError,
    ConfigError,
    DegenerateEigenwaveError,
    EvanescentOverflowError,
    NegligibleTransmissionError,
    ResonanceSingularityError,
    SingularInterfaceError,
)
from .media import (
    AIR,
    C0,
    EPS0,
    ETA0,
    MU0,
    EigenwaveKinematics,
    EigenwaveTemplates,
    MaterialParams,
    PlaneWave,
    circular_wavenumbers,
    eigenwave_templates,
    kinematics,
    principal_sqrt,
)
from .config import ScenarioConfig, load_config, parse_config
from .presets import PRESETS, Preset, get_preset, list_presets
from .spectra import (
    PowerBreakdown,
    SweepFailure,
    SweepGrid,
    SweepResult,
    SweepRow,
    default_angle_grid,
    default_frequency_grid,
    powers,
    rotation_angle,
    run_sweep,
)
from .structure import Layer, Stack
from .tmm import (
    Response,
    assemble_transfer,
    matching_matrix,
    propagation_matrix,
    solve_coefficients,
    solve_stack,
)

__all__ = [
    "AIR",
    "C0",
    "EPS0",
    "ETA0",
    "MU0",
    "ChiralTmmError",
    "ConfigError",
    "DegenerateEigenwaveError",
    "DirectSolution",
    "EigenwaveKinematics",
    "EigenwaveTemplates",
    "EvanescentOverflowError",
    "Layer",
    "MaterialParams",
    "NegligibleTransmissionError",
    "PRESETS",
    "PlaneWave",
    "PowerBreakdown",
    "Preset",
    "ResonanceSingularityError",
    "Response",
    "ScenarioConfig",
    "SingularInterfaceError",
    "Stack",
    "SweepFailure",
    "SweepGrid",
    "SweepResult",
    "SweepRow",
    "assemble_transfer",
    "circular_wavenumbers",
    "default_angle_grid",
    "default_frequency_grid",
    "eigenwave_templates",
    "field_residual",
    "get_preset",
    "kinematics",
    "list_presets",
    "load_config",
    "matching_matrix",
    "parse_config",
    "powers",
    "principal_sqrt",
    "propagation_matrix",
    "rotation_angle",
    "run_sweep",
    "solve_coefficients",
    "solve_direct",
    "solve_stack",
]

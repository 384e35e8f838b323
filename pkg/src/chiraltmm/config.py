"""Scenario configuration: parsing, validation and resolution.

Scenarios are TOML documents with a named materials table, a layer sequence
(explicit or periodic), per-material thickness rules, a sweep grid and the
incident polarization.  Quarter-wave thickness rules are resolved against
the reference frequency ``f0_hz`` at parse time, so a parsed ScenarioConfig
is fully numeric.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from .errors import ConfigError
from .media import C0, MaterialParams
from .spectra import SweepGrid
from .structure import Stack

_ENGINES = ("cascade", "direct")
_THICKNESS_RULES = ("lambda0/4", "lambda0/(4n)")


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved scenario: materials, layer sequence with thicknesses
    in meters, reference frequency, sweep grid, incident polarization and
    engine selection."""

    materials: dict[str, MaterialParams]
    layer_names: tuple[str, ...]
    thicknesses_m: dict[str, float]
    f0_hz: float
    grid: SweepGrid
    e_par: complex
    e_perp: complex
    engine: str = "cascade"
    name: str = "scenario"

    def build_stack(self) -> Stack:
        from .structure import Layer

        return Stack(
            tuple(
                Layer(self.materials[n], self.thicknesses_m[n]) for n in self.layer_names
            )
        )

    def canonical_dict(self) -> dict:
        """Deterministic plain-data form, used for the config hash."""

        def cplx(z: complex):
            return [z.real, z.imag]

        return {
            "materials": {
                n: {
                    "eps_r": cplx(m.eps_r),
                    "mu_r": cplx(m.mu_r),
                    "kappa": m.kappa,
                }
                for n, m in sorted(self.materials.items())
            },
            "layers": list(self.layer_names),
            "thicknesses_m": {n: self.thicknesses_m[n] for n in sorted(self.thicknesses_m)},
            "f0_hz": self.f0_hz,
            "frequencies_hz": [float(v) for v in self.grid.frequencies_hz],
            "thetas_deg": [float(v) for v in self.grid.thetas_deg],
            "incident": [cplx(self.e_par), cplx(self.e_perp)],
            "engine": self.engine,
        }

    def config_hash(self) -> str:
        import hashlib

        payload = json.dumps(self.canonical_dict(), sort_keys=True).encode()
        return hashlib.sha256(payload).hexdigest()

    def with_engine(self, engine: str) -> "ScenarioConfig":
        from dataclasses import replace

        if engine not in _ENGINES:
            raise ConfigError(f"engine: must be one of {_ENGINES}, got {engine!r}")
        return replace(self, engine=engine)

    def with_points(self, count: int) -> "ScenarioConfig":
        """Re-sample every swept axis (size >= 2) to ``count`` points over
        the same closed range."""
        from dataclasses import replace

        if count < 2:
            raise ConfigError(f"--points must be >= 2, got {count}")
        f = self.grid.frequencies_hz
        t = self.grid.thetas_deg
        if f.size >= 2:
            f = np.linspace(f[0], f[-1], count)
        if t.size >= 2:
            t = np.linspace(t[0], t[-1], count)
        return replace(self, grid=SweepGrid(f, t))


def _require_table(doc: dict, key: str) -> dict:
    val = doc.get(key)
    if not isinstance(val, dict):
        raise ConfigError(f"[{key}]: required table is missing")
    return val


def _reject_unknown(table: dict, allowed: set[str], where: str):
    unknown = set(table) - allowed
    if unknown:
        raise ConfigError(f"[{where}]: unknown key(s) {sorted(unknown)}")


def _as_complex(value, where: str) -> complex:
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a number or [re, im] pair")
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise ConfigError(f"{where}: expected a number or [re, im] pair, got {value!r}")


def _as_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _parse_materials(doc: dict) -> dict[str, MaterialParams]:
    table = doc.get("materials", {})
    if not isinstance(table, dict):
        raise ConfigError("[materials]: expected a table of named materials")
    materials = {}
    for name, fields in table.items():
        if not isinstance(fields, dict):
            raise ConfigError(f"[materials.{name}]: expected a table")
        _reject_unknown(fields, {"eps_r", "mu_r", "kappa"}, f"materials.{name}")
        for req in ("eps_r", "mu_r"):
            if req not in fields:
                raise ConfigError(f"[materials.{name}]: missing required key {req!r}")
        try:
            materials[name] = MaterialParams(
                eps_r=_as_complex(fields["eps_r"], f"materials.{name}.eps_r"),
                mu_r=_as_complex(fields["mu_r"], f"materials.{name}.mu_r"),
                kappa=_as_number(fields.get("kappa", 0.0), f"materials.{name}.kappa"),
            )
        except ValueError as exc:
            raise ConfigError(f"[materials.{name}]: {exc}") from exc
    return materials


def _parse_layers(doc: dict, materials: dict[str, MaterialParams]) -> tuple[str, ...]:
    table = _require_table(doc, "stack")
    has_periodic = any(k in table for k in ("material_a", "material_b", "slab_count"))
    has_explicit = "layers" in table
    if has_periodic and has_explicit:
        raise ConfigError("[stack]: give either a periodic spec or explicit layers, not both")
    if has_explicit:
        _reject_unknown(table, {"layers"}, "stack")
        layers = table["layers"]
        if not isinstance(layers, list) or not all(isinstance(x, str) for x in layers):
            raise ConfigError("[stack].layers: expected a list of material names")
        names = tuple(layers)
    elif has_periodic:
        _reject_unknown(table, {"material_a", "material_b", "slab_count"}, "stack")
        for req in ("material_a", "material_b", "slab_count"):
            if req not in table:
                raise ConfigError(f"[stack]: missing required key {req!r}")
        count = table["slab_count"]
        if not isinstance(count, int) or isinstance(count, bool):
            raise ConfigError("[stack].slab_count: expected an integer")
        if count < 1 or count % 2 == 0:
            raise ConfigError(
                f"[stack].slab_count: periodic stack must have odd slab count, got {count}"
            )
        a, b = table["material_a"], table["material_b"]
        if not isinstance(a, str) or not isinstance(b, str):
            raise ConfigError("[stack]: material_a and material_b must be material names")
        names = tuple(a if i % 2 == 0 else b for i in range(count))
    else:
        raise ConfigError("[stack]: expected 'layers' or a periodic material_a/material_b spec")
    for n in names:
        if n not in materials:
            raise ConfigError(f"[stack]: unresolved material name {n!r}")
    return names


def _resolve_thickness(value, mat: MaterialParams, f0_hz: float, where: str) -> float:
    lam0 = C0 / f0_hz
    if isinstance(value, str):
        rule = value.replace(" ", "")
        if rule == "lambda0/4":
            return lam0 / 4.0
        if rule == "lambda0/(4n)":
            n_abs = abs(mat.n_bar)
            if n_abs == 0.0:
                raise ConfigError(f"{where}: |n| is zero, quarter-wave rule undefined")
            return lam0 / (4.0 * n_abs)
        raise ConfigError(f"{where}: unknown thickness rule {value!r}; use {_THICKNESS_RULES}")
    d = _as_number(value, where)
    if not (d > 0.0 and math.isfinite(d)):
        raise ConfigError(f"{where}: thickness must resolve to a positive length, got {d!r}")
    return d


def _parse_axis(value, where: str, *, is_angle: bool) -> np.ndarray:
    if isinstance(value, dict):
        _reject_unknown(value, {"start", "stop", "count"}, where)
        for req in ("start", "stop", "count"):
            if req not in value:
                raise ConfigError(f"[{where}]: missing key {req!r}")
        count = value["count"]
        if not isinstance(count, int) or isinstance(count, bool) or count < 2:
            raise ConfigError(f"[{where}].count: swept axis needs an integer count >= 2")
        start = _as_number(value["start"], f"{where}.start")
        stop = _as_number(value["stop"], f"{where}.stop")
        return np.linspace(start, stop, count)
    return np.array([_as_number(value, where)])


def _parse_sweep(doc: dict) -> SweepGrid:
    table = _require_table(doc, "sweep")
    _reject_unknown(table, {"frequency_hz", "theta_deg"}, "sweep")
    for req in ("frequency_hz", "theta_deg"):
        if req not in table:
            raise ConfigError(f"[sweep]: missing key {req!r}")
    f = _parse_axis(table["frequency_hz"], "sweep.frequency_hz", is_angle=False)
    t = _parse_axis(table["theta_deg"], "sweep.theta_deg", is_angle=True)
    try:
        return SweepGrid(f, t)
    except ValueError as exc:
        raise ConfigError(f"[sweep]: {exc}") from exc


def parse_config(text: str, name: str = "scenario") -> ScenarioConfig:
    """Parse and fully resolve a TOML scenario document.

    Raises ConfigError with the offending key path (syntax errors carry the
    TOML parser's line/column information).
    """
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML syntax error: {exc}") from exc

    _reject_unknown(
        doc, {"materials", "stack", "thickness", "sweep", "incident", "f0_hz", "engine"}, "root"
    )
    f0 = _as_number(doc.get("f0_hz", 1.0e12), "f0_hz")
    if f0 <= 0:
        raise ConfigError(f"f0_hz: must be positive, got {f0!r}")

    materials = _parse_materials(doc)
    layer_names = _parse_layers(doc, materials)

    thick_table = doc.get("thickness", {})
    if not isinstance(thick_table, dict):
        raise ConfigError("[thickness]: expected a table of material -> thickness")
    _reject_unknown(thick_table, set(materials), "thickness")
    thicknesses = {}
    for n in sorted(set(layer_names)):
        if n not in thick_table:
            raise ConfigError(f"[thickness]: missing thickness for material {n!r}")
        thicknesses[n] = _resolve_thickness(thick_table[n], materials[n], f0, f"thickness.{n}")

    grid = _parse_sweep(doc)

    inc = doc.get("incident", {"e_par": 1.0, "e_perp": 0.0})
    if not isinstance(inc, dict):
        raise ConfigError("[incident]: expected a table")
    _reject_unknown(inc, {"e_par", "e_perp"}, "incident")
    e_par = _as_complex(inc.get("e_par", 0.0), "incident.e_par")
    e_perp = _as_complex(inc.get("e_perp", 0.0), "incident.e_perp")
    if e_par == 0 and e_perp == 0:
        raise ConfigError("[incident]: incident amplitude must be nonzero")

    engine = doc.get("engine", "cascade")
    if engine not in _ENGINES:
        raise ConfigError(f"engine: must be one of {_ENGINES}, got {engine!r}")

    return ScenarioConfig(
        materials=materials,
        layer_names=layer_names,
        thicknesses_m=thicknesses,
        f0_hz=f0,
        grid=grid,
        e_par=e_par,
        e_perp=e_perp,
        engine=engine,
        name=name,
    )


def load_config(path) -> ScenarioConfig:
    from pathlib import Path

    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {p}: {exc}") from exc
    return parse_config(text, name=p.stem)

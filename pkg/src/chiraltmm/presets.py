"""Built-in scenario presets.

One preset per published figure of the three structure families
(chiral-nihility/dielectric, CN/CN, CN/chiral).  Parameters are transcribed
verbatim from each figure's caption, including the places where captions
disagree with the surrounding text (those discrepancies are preserved, not
reinterpreted).  All structures have five slabs between air half-spaces and
a reference frequency f0 = 1 THz; CN slabs are a physical quarter-wave
thick, dielectric slabs an optical quarter-wave.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import ScenarioConfig
from .media import MaterialParams
from .spectra import default_angle_grid, default_frequency_grid

F0_HZ = 1.0e12

_CN_H_167 = MaterialParams(1.6e-4, 1.0e-5, 0.167)
_CN_H_01 = MaterialParams(1.6e-4, 1.0e-5, 0.1)
_CN_L_01 = MaterialParams(2.5e-5, 1.0e-5, 0.1)
_DIEL = MaterialParams(4.84, 1.0, 0.0)  # n = 2.2
_DIEL_CHIRAL = MaterialParams(4.84, 1.0, 0.1)  # n = 2.2 with the caption's kappa_L


@dataclass(frozen=True)
class Preset:
    name: str
    figure: int
    summary: str
    config: ScenarioConfig


def _periodic_config(name, mat_a, mat_b, d_a, d_b, grid, label_a="a", label_b="b"):
    return ScenarioConfig(
        materials={label_a: mat_a, label_b: mat_b},
        layer_names=tuple(label_a if i % 2 == 0 else label_b for i in range(5)),
        thicknesses_m={label_a: d_a, label_b: d_b},
        f0_hz=F0_HZ,
        grid=grid,
        e_par=1.0 + 0.0j,
        e_perp=0.0 + 0.0j,
        engine="cascade",
        name=name,
    )


def _build_presets() -> dict[str, Preset]:
    from .media import C0

    lam0 = C0 / F0_HZ
    d_cn = lam0 / 4.0
    d_diel = lam0 / (4.0 * 2.2)

    presets: dict[str, Preset] = {}

    def add(name, figure, summary, mat_a, mat_b, d_a, d_b, grid):
        presets[name] = Preset(
            name=name,
            figure=figure,
            summary=summary,
            config=_periodic_config(name, mat_a, mat_b, d_a, d_b, grid),
        )

    # CN-dielectric family
    add(
        "fig2",
        2,
        "CN-dielectric, reflected vs frequency; eps_H=1.6e-4, mu_H=1e-5, "
        "kappa_H=0.167, n_L=2.2, d_H=lam0/4, d_L=lam0/(4*2.2), theta_i=0",
        _CN_H_167,
        _DIEL,
        d_cn,
        d_diel,
        default_frequency_grid(theta_deg=0.0),
    )
    add(
        "fig3",
        3,
        "CN-dielectric, transmitted vs frequency; eps_H=1.6e-4, mu_H=1e-5, "
        "kappa_H=0.167, n_L=2.2, theta_i=0",
        _CN_H_167,
        _DIEL,
        d_cn,
        d_diel,
        default_frequency_grid(theta_deg=0.0),
    )
    add(
        "fig4",
        4,
        "CN-dielectric, reflected vs frequency, oblique; eps_H=1.6e-4, mu_H=1e-5, "
        "n_L=2.2, kappa_H=kappa_L=0.1 (caption), theta_i=70",
        _CN_H_01,
        _DIEL_CHIRAL,
        d_cn,
        d_diel,
        default_frequency_grid(theta_deg=70.0),
    )
    add(
        "fig5",
        5,
        "CN-dielectric, transmitted vs frequency, oblique; kappa_H=kappa_L=0.1 "
        "(caption), theta_i=70",
        _CN_H_01,
        _DIEL_CHIRAL,
        d_cn,
        d_diel,
        default_frequency_grid(theta_deg=70.0),
    )
    add(
        "fig6",
        6,
        "CN-dielectric, reflected vs angle; eps_H=1.6e-4, mu_H=1e-5, n_L=2.2, "
        "kappa_H=0.1, f/f0=1",
        _CN_H_01,
        _DIEL,
        d_cn,
        d_diel,
        default_angle_grid(freq_hz=F0_HZ),
    )
    add(
        "fig7",
        7,
        "CN-dielectric, transmitted vs angle; kappa_H=0.1, f/f0=1",
        _CN_H_01,
        _DIEL,
        d_cn,
        d_diel,
        default_angle_grid(freq_hz=F0_HZ),
    )

    # CN-CN family
    add(
        "fig8",
        8,
        "CN-CN, reflected vs frequency; eps_H=1.6e-4, eps_L=2.5e-5, mu=1e-5, "
        "kappa_H=kappa_L=0.1, d_H=d_L=lam0/4, theta_i=0",
        _CN_H_01,
        _CN_L_01,
        d_cn,
        d_cn,
        default_frequency_grid(theta_deg=0.0),
    )
    add(
        "fig9",
        9,
        "CN-CN, transmitted vs frequency; kappa_H=kappa_L=0.1, theta_i=0",
        _CN_H_01,
        _CN_L_01,
        d_cn,
        d_cn,
        default_frequency_grid(theta_deg=0.0),
    )
    add(
        "fig10",
        10,
        "CN-CN, reflected vs frequency, oblique; eps_H=1.6e-4, eps_L=2.5e-5, "
        "mu_H=mu_L=1e-5, kappa_H=kappa_L=0.1, theta_i=45",
        _CN_H_01,
        _CN_L_01,
        d_cn,
        d_cn,
        default_frequency_grid(theta_deg=45.0),
    )
    add(
        "fig11",
        11,
        "CN-CN, transmitted vs frequency, oblique; kappa_H=kappa_L=0.1, "
        "theta_i=15 (caption; the text discusses 45)",
        _CN_H_01,
        _CN_L_01,
        d_cn,
        d_cn,
        default_frequency_grid(theta_deg=15.0),
    )
    add(
        "fig12",
        12,
        "CN-CN, reflected vs angle; eps_H=1.6e-4, eps_L=2.5e-5, mu_H=mu_L=1e-5, "
        "kappa_H=kappa_L=0.1, f/f0=1",
        _CN_H_01,
        _CN_L_01,
        d_cn,
        d_cn,
        default_angle_grid(freq_hz=F0_HZ),
    )
    add(
        "fig13",
        13,
        "CN-CN, transmitted vs angle; kappa_H=kappa_L=0.1, f/f0=1",
        _CN_H_01,
        _CN_L_01,
        d_cn,
        d_cn,
        default_angle_grid(freq_hz=F0_HZ),
    )

    # CN-chiral family; the printed captions repeat the CN-CN parameter set
    # and are transcribed as printed.
    add(
        "fig14",
        14,
        "CN-chiral, reflected vs angle; caption parameters as printed: "
        "eps_H=1.6e-4, eps_L=2.5e-5, mu_H=mu_L=1e-5, kappa_H=kappa_L=0.1, f/f0=1",
        _CN_H_01,
        _CN_L_01,
        d_cn,
        d_cn,
        default_angle_grid(freq_hz=F0_HZ),
    )
    add(
        "fig15",
        15,
        "CN-chiral, transmitted vs angle; caption parameters as printed: "
        "kappa_H=kappa_L=0.1, f/f0=1",
        _CN_H_01,
        _CN_L_01,
        d_cn,
        d_cn,
        default_angle_grid(freq_hz=F0_HZ),
    )
    return presets


PRESETS: dict[str, Preset] = _build_presets()


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None


def list_presets() -> list[tuple[str, int, str]]:
    """(name, figure number, parameter summary) rows in figure order."""
    return [(p.name, p.figure, p.summary) for p in sorted(PRESETS.values(), key=lambda p: p.figure)]

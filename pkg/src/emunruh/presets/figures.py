"""Figure presets.

Each preset expands into the scenarios behind one panel: the three
trajectory families at each listed acceleration, or one sweep per family.
Time axes are in units of ``1 / Gamma0``; the reproduction targets are panel
shapes, orderings and event counts rather than absolute times.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..config import ScenarioConfig, SweepAxis
from ..errors import ConfigError

FAMILIES = ("circular", "uniform", "thermal")


@dataclass(frozen=True)
class FigurePreset:
    """Parameter set of one figure panel.

    Parameters
    ----------
    name : str
        Registry key, e.g. ``"fig1-left"``.
    description : str
        One-line summary shown by ``--list-presets``.
    initial : str
        Initial state.
    pols : tuple of str
        Polarizations of atoms 1 and 2 in comoving names.
    L : float
        Separation (start value for L-sweeps).
    accelerations : tuple of float
        Accelerations run for every family (start value for a-sweeps).
    p : float, optional
        ``Psi`` weight.
    sweep : tuple, optional
        ``(axis, start, stop, count)`` for maximum-concurrence scans.
    """

    name: str
    description: str
    initial: str
    pols: Tuple[str, str]
    L: float
    accelerations: Tuple[float, ...]
    p: Optional[float] = None
    sweep: Optional[Tuple[str, float, float, int]] = None
    families: Tuple[str, ...] = field(default=FAMILIES)

    def scenarios(self, out_dir: str = "results") -> List[ScenarioConfig]:
        configs = []
        for family in self.families:
            for a in self.accelerations:
                sweep = SweepAxis(*self.sweep) if self.sweep is not None else None
                configs.append(
                    ScenarioConfig(
                        family=family,
                        a=a,
                        L=self.L,
                        pol1=self.pols[0],
                        pol2=self.pols[1],
                        initial=self.initial,
                        p=self.p,
                        sweep=sweep,
                        out_dir=out_dir,
                    )
                )
        return configs


L_SWEEP = ("L", 0.05, 3.0, 60)
A_SWEEP = ("a", 0.05, 2.0, 40)

_PANELS = [
    FigurePreset("fig1-left", "|S>, zz, L=1, a in {1/4, 1, 2}", "S", ("z", "z"), 1.0, (0.25, 1.0, 2.0)),
    FigurePreset("fig1-right", "|A>, zz, L=1, a in {1/4, 1, 2}", "A", ("z", "z"), 1.0, (0.25, 1.0, 2.0)),
    FigurePreset("fig2-left", "|S>, phi-phi, L=1, a in {1/4, 1, 2}", "S", ("phi", "phi"), 1.0, (0.25, 1.0, 2.0)),
    FigurePreset("fig2-right", "|A>, phi-phi, L=1, a in {1/4, 1, 2}", "A", ("phi", "phi"), 1.0, (0.25, 1.0, 2.0)),
    FigurePreset("fig3-left", "|E>, zz, L=1/2, a in {1/5, 1/2, 6/5}", "E", ("z", "z"), 0.5, (0.2, 0.5, 1.2)),
    FigurePreset("fig3-right", "|E>, phi-phi, L=1/2, a in {1/5, 1/2, 6/5}", "E", ("phi", "phi"), 0.5, (0.2, 0.5, 1.2)),
    FigurePreset("fig4-left", "max concurrence vs L, |E>, zz, a=2/3", "E", ("z", "z"), 0.05, (2.0 / 3.0,), sweep=L_SWEEP),
    FigurePreset("fig4-middle", "max concurrence vs L, |E>, phi-phi, a=2/3", "E", ("phi", "phi"), 0.05, (2.0 / 3.0,), sweep=L_SWEEP),
    FigurePreset("fig4-right", "max concurrence vs L, |E>, rho-z, a=2/3", "E", ("rho", "z"), 0.05, (2.0 / 3.0,), sweep=L_SWEEP),
    FigurePreset("fig5-left", "max concurrence vs a, |E>, zz, L=1/2", "E", ("z", "z"), 0.5, (0.05,), sweep=A_SWEEP),
    FigurePreset("fig5-middle", "max concurrence vs a, |E>, phi-phi, L=1/2", "E", ("phi", "phi"), 0.5, (0.05,), sweep=A_SWEEP),
    FigurePreset("fig5-right", "max concurrence vs a, |E>, rho-z, L=1/2", "E", ("rho", "z"), 0.5, (0.05,), sweep=A_SWEEP),
    FigurePreset("fig6-left", "Psi(1/4), zz, a=1/2, L=1", "Psi", ("z", "z"), 1.0, (0.5,), p=0.25),
    FigurePreset("fig6-right", "Psi(3/4), zz, a=1/2, L=1", "Psi", ("z", "z"), 1.0, (0.5,), p=0.75),
    FigurePreset("fig7-left", "Psi(1/4), phi-phi, a=1/2, L=1", "Psi", ("phi", "phi"), 1.0, (0.5,), p=0.25),
    FigurePreset("fig7-right", "Psi(3/4), phi-phi, a=1/2, L=1", "Psi", ("phi", "phi"), 1.0, (0.5,), p=0.75),
]

PRESETS: Dict[str, FigurePreset] = {panel.name: panel for panel in _PANELS}


def list_presets() -> List[Tuple[str, str]]:
    return [(name, preset.description) for name, preset in PRESETS.items()]


def get_preset(name: str) -> FigurePreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; see --list-presets")

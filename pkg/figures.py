# figures.py
"""Energy tables and wavefunction curves behind the published figures, plus table writers."""
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from angular import AngularMode, phi_eigenfunction
from dunkl_core import DunklParams
from errors import InputError
from spectrum import axial_energy_table, radial_energy_table
from states import AxialState, CylinderGeometry, RadialState, axial_even, axial_odd, radial_state_from_indices

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
DEFAULT_POINTS = 500


@dataclass(frozen=True)
class RadialEnergyPanel:
    name: str
    r_c: float
    N_values: Tuple[int, ...]
    max_n: int


@dataclass(frozen=True)
class AxialEnergyPanel:
    name: str
    h_half: float
    m_values: Tuple[int, ...]
    max_n_prime: int
    parity: int


@dataclass(frozen=True)
class RadialCurvePanel:
    name: str
    r_c: float
    curves: Tuple[Tuple[int, int, int], ...]  # (N, M, n)


@dataclass(frozen=True)
class AxialCurvePanel:
    name: str
    h_half: float
    parity: int
    curves: Tuple[Tuple[int, int], ...]  # (m, n_prime)


RADIAL_ENERGIES = RadialEnergyPanel("radial_energies", r_c=10.0, N_values=(1, 3, 5), max_n=5)

AXIAL_ODD_ENERGIES = AxialEnergyPanel("axial_odd_energies", h_half=15.0, m_values=(1, 3, 5),
                                      max_n_prime=5, parity=-1)

# same quantum numbers on the even branch
AXIAL_EVEN_ENERGIES = AxialEnergyPanel("axial_even_energies", h_half=15.0, m_values=(1, 3, 5),
                                       max_n_prime=5, parity=1)

RADIAL_EVEN_CURVES = RadialCurvePanel("radial_even_curves", r_c=10.0, curves=((2, 0, 5), (4, 2, 4), (6, 2, 3)))

RADIAL_ODD_CURVES = RadialCurvePanel("radial_odd_curves", r_c=10.0, curves=((1, 0, 1), (3, 2, 3), (5, 4, 5)))

AXIAL_EVEN_CURVES = AxialCurvePanel("axial_even_curves", h_half=15.0, parity=1, curves=((2, 2), (3, 3), (4, 4)))

AXIAL_ODD_CURVES = AxialCurvePanel("axial_odd_curves", h_half=15.0, parity=-1, curves=((1, 3), (2, 4), (4, 5)))

ENERGY_PANELS = (RADIAL_ENERGIES, AXIAL_ODD_ENERGIES, AXIAL_EVEN_ENERGIES)
CURVE_PANELS = (RADIAL_EVEN_CURVES, RADIAL_ODD_CURVES, AXIAL_EVEN_CURVES, AXIAL_ODD_CURVES)


def radial_curve(state: RadialState, points: int = DEFAULT_POINTS) -> pd.DataFrame:
    """R(ρ) on [0, R_c], endpoints included."""
    rho = np.linspace(0.0, state.r_c, points)
    return pd.DataFrame({"rho": rho, "value": state(rho)})


def axial_curve(state: AxialState, points: int = DEFAULT_POINTS, extent: Optional[float] = None) -> pd.DataFrame:
    """ψ(z) on [−H, H]; free states need an explicit extent."""
    half = state.h_half if extent is None else extent
    if half is None:
        raise InputError("free axial states need an explicit sampling extent")
    z = np.linspace(-half, half, points)
    return pd.DataFrame({"z": z, "value": state(z)})


def angular_curve(params: DunklParams, mode: AngularMode, points: int = DEFAULT_POINTS) -> pd.DataFrame:
    """Φ(φ) on [0, 2π)."""
    phi = np.linspace(0.0, 2.0 * math.pi, points, endpoint=False)
    return pd.DataFrame({"phi": phi, "value": phi_eigenfunction(params, mode, phi)})


def energy_panel(panel) -> pd.DataFrame:
    if isinstance(panel, RadialEnergyPanel):
        return radial_energy_table(panel.r_c, panel.N_values, panel.max_n)
    return axial_energy_table(panel.h_half, panel.m_values, panel.max_n_prime, panel.parity)


def curve_panel(panel, points: int = DEFAULT_POINTS) -> pd.DataFrame:
    frames = []
    if isinstance(panel, RadialCurvePanel):
        geom = CylinderGeometry(r_c=panel.r_c, h_half=1.0)
        for N, M, n in panel.curves:
            frame = radial_curve(radial_state_from_indices(geom, N, M, n), points)
            frames.append(frame.assign(N=N, M=M, n=n)[["N", "M", "n", "rho", "value"]])
    else:
        geom = CylinderGeometry(r_c=1.0, h_half=panel.h_half)
        builder = axial_even if panel.parity == 1 else axial_odd
        for m, n_prime in panel.curves:
            frame = axial_curve(builder(geom, m, n_prime), points)
            frames.append(frame.assign(m=m, n_prime=n_prime)[["m", "n_prime", "z", "value"]])
    return pd.concat(frames, ignore_index=True)


def write_table(frame: pd.DataFrame, path: Optional[Path], fmt: str = "csv", kind: str = "table") -> str:
    """Serialize a table as CSV (17 significant digits, LF) or one JSON document.

    Returns the text; writes it to `path` when one is given.
    """
    if fmt == "csv":
        text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    elif fmt == "json":
        document = {"kind": kind, "columns": list(frame.columns),
                    "rows": frame.astype(object).where(frame.notna(), None).to_dict(orient="records")}
        text = json.dumps(document, indent=2, default=lambda value: value.item()) + "\n"
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info("Wrote %s (%d rows)", path, len(frame))
    return text


def export_figures(out_dir: Path, points: int = DEFAULT_POINTS, fmt: str = "csv") -> Dict[str, Path]:
    """Write every energy table and curve panel, one file per panel."""
    out_dir = Path(out_dir)
    written: Dict[str, Path] = {}
    for panel in ENERGY_PANELS:
        path = out_dir / f"{panel.name}.{fmt}"
        write_table(energy_panel(panel), path, fmt, kind=panel.name)
        written[panel.name] = path
    for panel in CURVE_PANELS:
        path = out_dir / f"{panel.name}.{fmt}"
        write_table(curve_panel(panel, points), path, fmt, kind=panel.name)
        written[panel.name] = path
    return written


def is_increasing(values: Sequence[float]) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))

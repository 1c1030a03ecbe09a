# spectrum.py
"""Parity ledger, total energies, full wavefunctions and level enumeration."""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from angular import AngularMode, AngularSector, make_mode, phi_eigenfunction
from config import get_tolerances
from dunkl_core import CartPoint, CylPoint, DunklParams, apply_arho, apply_bphi, apply_cz, dunkl_laplacian
from errors import AdmissibilityError, ClassificationError, InputError
from specfun import bessel_zero
from states import (AxialState, CylinderGeometry, RadialState, axial_even, axial_free, axial_odd,
                    radial_state_from_indices)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class ParityTriple:
    """Eigenvalues (r₁, r₂, r₃) of the reflections R₁, R₂, R₃."""

    r1: int
    r2: int
    r3: int

    def __post_init__(self):
        if any(r not in (1, -1) for r in (self.r1, self.r2, self.r3)):
            raise ClassificationError(f"parity eigenvalues must be +1/-1, got {tuple(self)}")

    def __iter__(self):
        return iter((self.r1, self.r2, self.r3))

    @property
    def sector(self) -> AngularSector:
        return AngularSector.from_parities(self.r1, self.r2)

    @property
    def partner(self) -> "ParityTriple":
        """The class sharing this one's row of the ledger."""
        return ParityTriple(-self.r1, -self.r2, self.r3)


@dataclass(frozen=True)
class ParityRow:
    """One row of the parity ledger: parities of N, 2ℓ and M, and the axial branch."""

    classes: Tuple[ParityTriple, ParityTriple]
    N_odd: bool
    half_integer_ell: bool
    M_odd: bool
    axial_parity: int


# rows pair (r₁, r₂, r₃) with (−r₁, −r₂, r₃)
PARITY_LEDGER: Tuple[ParityRow, ...] = (
    ParityRow((ParityTriple(1, 1, 1), ParityTriple(-1, -1, 1)), False, False, False, 1),
    ParityRow((ParityTriple(1, 1, -1), ParityTriple(-1, -1, -1)), True, False, True, -1),
    ParityRow((ParityTriple(1, -1, 1), ParityTriple(-1, 1, 1)), False, True, True, 1),
    ParityRow((ParityTriple(1, -1, -1), ParityTriple(-1, 1, -1)), True, True, False, -1),
)

ALL_PARITY_TRIPLES: Tuple[ParityTriple, ...] = tuple(cls for row in PARITY_LEDGER for cls in row.classes)

SPECTRUM_COLUMNS = ["r1", "r2", "r3", "twoell", "N", "M", "m", "n", "n_prime", "e_radial", "e_axial", "e_total"]


def parity_row(parity: ParityTriple) -> ParityRow:
    for row in PARITY_LEDGER:
        if parity in row.classes:
            return row
    raise ClassificationError(f"no ledger row for {tuple(parity)}")


@dataclass(frozen=True)
class StateLabel:
    parity: ParityTriple
    twoell: int
    N: int
    M: int
    m: int
    n: int
    geometry: CylinderGeometry
    n_prime: Optional[int] = None
    k: Optional[float] = None

    def sort_key(self) -> tuple:
        return (tuple(self.parity), self.twoell, self.N, self.M, self.m, self.n,
                self.n_prime or 0, self.k or 0.0)

    def dunkl_params(self, mu1: Optional[float] = None) -> DunklParams:
        """Quantized parameters μ₁ + μ₂ = M, μ₃ = m + 1/2 (μ₁ = M/2 unless given)."""
        return DunklParams.from_quantum_numbers(self.M, self.m, mu1)


@dataclass(frozen=True)
class AdmissibilityReport:
    label: StateLabel
    violations: Tuple[str, ...] = ()

    @property
    def admissible(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.admissible


@dataclass(frozen=True)
class EnergyLevel:
    label: StateLabel
    e_radial: float
    e_axial: float
    e_total: float

    @property
    def radial_factor(self) -> float:
        """√(2(ε − ε_z)), the wavenumber in the radial Bessel argument."""
        return math.sqrt(2.0 * (self.e_total - self.e_axial))

    def as_row(self) -> Dict[str, object]:
        label = self.label
        r1, r2, r3 = label.parity
        axial_index = label.k if label.k is not None else label.n_prime
        return {"r1": r1, "r2": r2, "r3": r3, "twoell": label.twoell, "N": label.N, "M": label.M,
                "m": label.m, "n": label.n, "k" if label.k is not None else "n_prime": axial_index,
                "e_radial": self.e_radial, "e_axial": self.e_axial, "e_total": self.e_total}


def _is_int(value) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


def admissible(label: StateLabel) -> AdmissibilityReport:
    """Check a label against its parity row; every violated constraint is reported."""
    violations: List[str] = []
    try:
        row = parity_row(label.parity)
    except ClassificationError as exc:
        return AdmissibilityReport(label, (str(exc),))
    for name in ("twoell", "N", "M", "m", "n"):
        if not _is_int(getattr(label, name)):
            violations.append(f"{name} must be an integer, got {getattr(label, name)!r}")
    if violations:
        return AdmissibilityReport(label, tuple(violations))
    if label.N < label.M:
        violations.append(f"N={label.N} < M={label.M}")
    if label.N - label.M != label.twoell:
        violations.append(f"N - M = {label.N - label.M} differs from 2l = {label.twoell}")
    if label.M < 0 or label.m < 0:
        violations.append("M and m must be nonnegative")
    if (label.N % 2 == 1) != row.N_odd:
        violations.append(f"N={label.N} must be {'odd' if row.N_odd else 'even'} for r3={label.parity.r3}")
    if (label.twoell % 2 == 1) != row.half_integer_ell:
        kind = "half-integer" if row.half_integer_ell else "integer"
        violations.append(f"l={label.twoell}/2 must be {kind} for r1*r2={label.parity.r1 * label.parity.r2}")
    if (label.M % 2 == 1) != row.M_odd:
        violations.append(f"M={label.M} must be {'odd' if row.M_odd else 'even'}")
    if label.n < 1:
        violations.append(f"n={label.n} must be positive")
    if label.geometry.finite:
        if label.k is not None:
            violations.append("k is only defined for the infinite well")
        if not (_is_int(label.n_prime) and label.n_prime >= 1):
            violations.append(f"n_prime must be a positive integer, got {label.n_prime!r}")
    else:
        if label.n_prime is not None:
            violations.append("n_prime is only defined for the finite well")
        if label.k is None or not label.k > 0:
            violations.append(f"k must be positive, got {label.k!r}")
    return AdmissibilityReport(label, tuple(violations))


def _require_admissible(label: StateLabel) -> ParityRow:
    report = admissible(label)
    if not report:
        raise AdmissibilityError(list(report.violations))
    return parity_row(label.parity)


def _factors(label: StateLabel) -> Tuple[RadialState, AxialState]:
    row = _require_admissible(label)
    radial = radial_state_from_indices(label.geometry, label.N, label.M, label.n)
    if label.geometry.finite:
        builder = axial_even if row.axial_parity == 1 else axial_odd
        axial = builder(label.geometry, label.m, label.n_prime)
    else:
        axial = axial_free(label.m, row.axial_parity, label.k, label.geometry)
    return radial, axial


def total_energy(label: StateLabel) -> EnergyLevel:
    """ε = Ω²_{N,n}/(2R_c²) + ε_z with ε_z from the axial branch of the label's row."""
    radial, axial = _factors(label)
    return EnergyLevel(label, radial.energy, axial.energy, radial.energy + axial.energy)


@dataclass(frozen=True)
class FullWavefunction:
    label: StateLabel
    radial: RadialState
    axial: AxialState
    params: DunklParams
    convention: str = "jacobi"
    mode: Optional[AngularMode] = field(default=None)

    def theta(self, rho, z):
        """Θ(ρ, z) = R(ρ)ψ(z), the product listed in the parity ledger."""
        return self.radial(rho) * self.axial(z)

    def angular_mode(self) -> AngularMode:
        if self.mode is None:
            raise ClassificationError(
                f"sector {tuple(self.label.parity)[:2]} has no angular mode with 2l={self.label.twoell}")
        return self.mode

    def psi(self, rho, phi, z):
        """Ψ(ρ, φ, z) = R(ρ)Φ(φ)ψ(z)."""
        return self.theta(rho, z) * phi_eigenfunction(self.params, self.angular_mode(), phi)

    def cartesian(self, x: float, y: float, z: float) -> float:
        p = CartPoint(x, y, z).to_cyl()
        return self.psi(p.rho, p.phi, p.z)


def full_wavefunction(label: StateLabel, mu1: Optional[float] = None,
                      convention: str = "jacobi") -> FullWavefunction:
    """Θ(ρ, z) for an admissible label, with the angular factor attached when the sector allows it."""
    radial, axial = _factors(label)
    params = label.dunkl_params(mu1)
    sector = label.parity.sector
    mode = None
    if label.twoell >= sector.lowest_twoell:
        mode = make_mode(params, sector, label.twoell, convention)
    else:
        logger.debug("no angular factor for %s with 2l=%d", sector, label.twoell)
    return FullWavefunction(label, radial, axial, params, convention, mode)


def hamiltonian_residual(label: StateLabel, point: CylPoint, mu1: Optional[float] = None,
                         h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """|(A_ρ + B_φ/ρ² + C_z)Ψ − εΨ| at a cylindrical point."""
    wave = full_wavefunction(label, mu1)
    wave.angular_mode()
    level = total_energy(label)
    rho, phi, z = point
    params = wave.params
    a = apply_arho(params, lambda t: wave.psi(t, phi, z), rho, h, stencil)
    b = apply_bphi(params, lambda t: wave.psi(rho, t, z), phi, h, stencil)
    c = apply_cz(params, lambda t: wave.psi(rho, phi, t), z, h, stencil)
    return abs(a + b / (rho * rho) + c - level.e_total * wave.psi(rho, phi, z))


def cartesian_hamiltonian_residual(label: StateLabel, point: CartPoint, mu1: Optional[float] = None,
                                   h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """|−½∇²_D Ψ − εΨ| at a Cartesian point."""
    wave = full_wavefunction(label, mu1)
    wave.angular_mode()
    level = total_energy(label)
    laplacian = dunkl_laplacian(wave.params, wave.cartesian, point, h, stencil)
    return abs(-0.5 * laplacian - level.e_total * wave.cartesian(*point))


def _candidate_labels(geometry: CylinderGeometry, parities: Sequence[ParityTriple], max_N: int, max_m: int,
                      max_n: int, max_n_prime: int, k_grid: Sequence[float],
                      dunkl_sum: Optional[int], dunkl_m: Optional[int]) -> Iterable[StateLabel]:
    m_values = [dunkl_m] if dunkl_m is not None else range(max_m + 1)
    if geometry.finite:
        axial_indices = [(n_prime, None) for n_prime in range(1, max_n_prime + 1)]
    else:
        axial_indices = [(None, float(k)) for k in k_grid]
    for parity in parities:
        for N in range(max_N + 1):
            M_values = [dunkl_sum] if dunkl_sum is not None else range(N + 1)
            for M in M_values:
                if M > N:
                    continue
                for m, n, (n_prime, k) in product(m_values, range(1, max_n + 1), axial_indices):
                    label = StateLabel(parity, N - M, N, M, m, n, geometry, n_prime, k)
                    if admissible(label):
                        yield label


def enumerate_levels(geometry: CylinderGeometry, parity_filter: Optional[Iterable[ParityTriple]] = None,
                     max_N: int = 5, max_m: int = 5, max_n: int = 3, max_n_prime: int = 3,
                     k_grid: Optional[Sequence[float]] = None, dunkl_sum: Optional[int] = None,
                     dunkl_m: Optional[int] = None, workers: int = 1) -> List[EnergyLevel]:
    """All admissible levels within the bounds, ascending in energy, ties broken by label.

    `dunkl_sum` and `dunkl_m` pin M and m, i.e. restrict to one Hamiltonian.
    """
    if max_N < 0 or max_m < 0:
        raise InputError("max_N and max_m must be nonnegative")
    if max_n < 1 or max_n_prime < 1:
        raise InputError("max_n and max_n_prime must be at least 1")
    k_grid = list(k_grid or [])
    if not geometry.finite and not k_grid:
        raise InputError("the infinite well needs a non-empty k grid")
    if any(k <= 0 for k in k_grid):
        raise InputError("k grid values must be positive")
    parities = list(parity_filter) if parity_filter is not None else list(ALL_PARITY_TRIPLES)
    labels = list(_candidate_labels(geometry, parities, max_N, max_m, max_n, max_n_prime,
                                    k_grid, dunkl_sum, dunkl_m))
    logger.info("Evaluating %d admissible labels with %d worker(s)", len(labels), workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            levels = list(pool.map(total_energy, labels))
    else:
        levels = [total_energy(label) for label in labels]
    return sorted(levels, key=lambda level: (level.e_total, level.label.sort_key()))


def group_degenerate(levels: Sequence[EnergyLevel], rel: Optional[float] = None) -> List[List[EnergyLevel]]:
    """Consecutive runs of levels with |Δε| < rel·max(1, ε); input must be sorted."""
    rel = get_tolerances().degeneracy_rel if rel is None else rel
    groups: List[List[EnergyLevel]] = []
    for level in levels:
        if groups:
            anchor = groups[-1][0].e_total
            if abs(level.e_total - anchor) < rel * max(1.0, abs(anchor)):
                groups[-1].append(level)
                continue
        groups.append([level])
    return groups


def levels_frame(levels: Sequence[EnergyLevel]) -> pd.DataFrame:
    rows = [level.as_row() for level in levels]
    columns = list(SPECTRUM_COLUMNS)
    if rows and "k" in rows[0]:
        columns[columns.index("n_prime")] = "k"
    return pd.DataFrame(rows, columns=columns)


def radial_energy_table(r_c: float, N_values: Sequence[int], max_n: int) -> pd.DataFrame:
    """ε_{ρNn} = Ω²_{N,n}/(2R_c²) for each N and n = 1..max_n."""
    rows = []
    for N in N_values:
        for n in range(1, max_n + 1):
            omega = bessel_zero(N, n).value
            rows.append({"N": int(N), "n": n, "zero": omega, "e_radial": 0.5 * (omega / r_c) ** 2})
    return pd.DataFrame(rows, columns=["N", "n", "zero", "e_radial"])


def axial_energy_table(h_half: float, m_values: Sequence[int], max_n_prime: int, parity: int) -> pd.DataFrame:
    """ε±_{zmn′}: the order is m for the even branch and m + 1 for the odd one."""
    if parity not in (1, -1):
        raise ClassificationError(f"axial parity must be +1 or -1, got {parity}")
    rows = []
    for m in m_values:
        order = m if parity == 1 else m + 1
        for n_prime in range(1, max_n_prime + 1):
            omega = bessel_zero(order, n_prime).value
            rows.append({"m": int(m), "n_prime": n_prime, "zero": omega, "e_axial": 0.5 * (omega / h_half) ** 2})
    return pd.DataFrame(rows, columns=["m", "n_prime", "zero", "e_axial"])

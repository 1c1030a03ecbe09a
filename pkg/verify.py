# verify.py
"""Named numerical checks for every module invariant, grouped into suites.

Each check draws its sample points from a generator seeded with the run seed
and the check id, so reports are reproducible regardless of scheduling.
"""
import functools
import logging
import math
import threading
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, TextIO, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field
from scipy import special

import figures
from angular import (AngularSector, angular_overlap, bphi_residual, classify_sectors, lz_identity_residual,
                     make_mode, numerical_eta, orthonormality_matrix, phi_eigenfunction, s_squared)
from config import Tolerances, get_tolerances
from dunkl_core import (BATTERY_VERSION, CylPoint, DunklParams, algebra_residuals, angle_clearance,
                        function_battery, interior_points)
from errors import ConfigError, DunklError
from specfun import (LommelParams, bessel_j, bessel_zero, bessel_zeros, jacobi_p, jacobi_reference, jacobi_scale,
                     lommel_residual, scaled_bessel)
from spectrum import (ALL_PARITY_TRIPLES, ParityTriple, StateLabel, admissible, cartesian_hamiltonian_residual,
                      enumerate_levels, full_wavefunction, hamiltonian_residual, total_energy)
from states import (CylinderGeometry, WellKind, axial_even, axial_free, axial_odd, axial_residual,
                    radial_residual, radial_state_from_indices)

logger = logging.getLogger(__name__)

SUITE_NAMES = ("specfun", "algebra", "angular", "axial", "radial", "full", "figures")

# full-precision tabulated zeros j_{ν,n}
TABULATED_ZEROS = {
    (0.0, 1): 2.404825557695773,
    (1.0, 1): 3.831705970207512,
    (0.0, 2): 5.520078110286311,
}
# third zero of J_{−0.3}, known to ten significant digits
NEGATIVE_ORDER_ZERO = (-0.3, 3, 8.177851519)
NEGATIVE_ORDER_ZERO_TOL = 1e-8
WORKED_EXAMPLE_REL_TOL = 1e-12
RADIAL_FACTOR_REL_TOL = 1e-12
JACOBI_MAX_DEGREE = 20


class CheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    check_id: str
    suite: str
    name: str
    parameters: Dict[str, object] = Field(default_factory=dict)
    max_residual: float
    tolerance: float
    passed: bool
    points: int
    seed: int
    error: Optional[str] = None


class VerifyConfig(BaseModel):
    """Grid, geometry and tolerances of one verification run."""

    model_config = ConfigDict(extra="forbid")

    r_c: float = Field(10.0, gt=0)
    h_half: float = Field(15.0, gt=0)
    seed: int = 1729
    points: int = Field(20, ge=1)
    workers: int = Field(1, ge=1)
    max_N: int = Field(5, ge=0)
    max_m: int = Field(5, ge=0)
    max_n: int = Field(3, ge=1)
    max_n_prime: int = Field(3, ge=1)
    max_twoell: int = Field(12, ge=0)
    ledger_max: int = Field(6, ge=0)
    battery_points: int = Field(25, ge=1)
    tolerances: Tolerances = Field(default_factory=get_tolerances)

    @property
    def geometry(self) -> CylinderGeometry:
        return CylinderGeometry(r_c=self.r_c, h_half=self.h_half)


@dataclass
class CheckContext:
    config: VerifyConfig
    rng: np.random.Generator

    @property
    def tol(self) -> Tolerances:
        return self.config.tolerances

    @property
    def h(self) -> float:
        return self.config.tolerances.fd_step

    @property
    def stencil(self) -> int:
        return self.config.tolerances.fd_stencil


class Outcome(NamedTuple):
    max_residual: float
    tolerance: float
    points: int
    parameters: Dict[str, object] = {}


class Check(NamedTuple):
    check_id: str
    suite: str
    name: str
    run: Callable[[CheckContext], Outcome]


_REGISTRY: Dict[str, List[Check]] = {name: [] for name in SUITE_NAMES}


def check(suite: str, key: str, name: str):
    """Register a check under `suite.key`."""
    def register(func: Callable[[CheckContext], Outcome]):
        _REGISTRY[suite].append(Check(f"{suite}.{key}", suite, name, func))
        return func
    return register


def check_seed(seed: int, check_id: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(check_id.encode("utf-8"))])


def _angles(rng: np.random.Generator, count: int, clearance: float = 0.1) -> List[float]:
    out = []
    while len(out) < count:
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        if angle_clearance(phi) >= clearance:
            out.append(phi)
    return out


def _signed_uniform(rng: np.random.Generator, low: float, high: float) -> float:
    value = float(rng.uniform(low, high))
    return value if rng.random() < 0.5 else -value


def _relative(a: float, b: float, floor: float = 1.0) -> float:
    return abs(a - b) / max(abs(a), abs(b), floor)


def _sectors() -> List[AngularSector]:
    return [info.sector for info in classify_sectors()]


# ---------------------------------------------------------------- specfun

@check("specfun", "zero_oracles", "tabulated Bessel zeros")
def _zero_oracles(ctx: CheckContext) -> Outcome:
    worst = max(abs(bessel_zero(nu, n).value - value) for (nu, n), value in TABULATED_ZEROS.items())
    return Outcome(worst, ctx.tol.bessel_zero_abs, len(TABULATED_ZEROS),
                   {"zeros": [[nu, n] for nu, n in TABULATED_ZEROS]})


@check("specfun", "zero_negative_order", "third zero of J_-0.3")
def _zero_negative_order(ctx: CheckContext) -> Outcome:
    nu, index, value = NEGATIVE_ORDER_ZERO
    return Outcome(abs(bessel_zero(nu, index).value - value), NEGATIVE_ORDER_ZERO_TOL, 1, {"nu": nu, "index": index})


@check("specfun", "zero_residual", "J_nu vanishes at computed zeros")
def _zero_residual(ctx: CheckContext) -> Outcome:
    orders = [0.0, 0.5, 1.0, 2.5, 5.0, 6.0] + [float(v) for v in ctx.rng.uniform(-0.9, 6.0, size=4)]
    worst, count = 0.0, 0
    for nu in orders:
        for zero in bessel_zeros(nu, 5):
            x = zero.value
            slope = 0.5 * (special.jv(nu - 1.0, x) - special.jv(nu + 1.0, x))
            worst = max(worst, abs(special.jv(nu, x)) / max(1.0, abs(slope) * x))
            count += 1
    return Outcome(worst, ctx.tol.zero_residual, count, {"orders": orders})


@check("specfun", "zero_brackets", "each zero lies inside a sign-changing bracket")
def _zero_brackets(ctx: CheckContext) -> Outcome:
    failures, count = 0, 0
    for nu in (-1.0 + 1e-9, -0.5, 0.0, 1.0, 3.5, 6.0):
        for zero in bessel_zeros(nu, 6):
            lo, hi = zero.bracket
            inside = lo <= zero.value <= hi
            changes = special.jv(nu, lo) * special.jv(nu, hi) <= 0.0
            failures += not (inside and changes)
            count += 1
    return Outcome(float(failures), 0.0, count)


@check("specfun", "zero_interlacing", "j_{nu,n} < j_{nu+1,n} < j_{nu,n+1}")
def _zero_interlacing(ctx: CheckContext) -> Outcome:
    failures, count = 0, 0
    for nu in range(6):
        low = bessel_zeros(nu, 6)
        high = bessel_zeros(nu + 1, 5)
        for n in range(5):
            failures += not (low[n].value < high[n].value < low[n + 1].value)
            count += 1
    return Outcome(float(failures), 0.0, count)


@check("specfun", "parity_law", "x^p J_nu(x) picks up (-1)^(p+nu) under x -> -x")
def _parity_law(ctx: CheckContext) -> Outcome:
    worst, count = 0.0, 0
    for _ in range(ctx.config.points):
        nu = float(ctx.rng.uniform(-0.9, 6.0))
        s = int(ctx.rng.integers(0, 4))
        x = float(ctx.rng.uniform(0.01, 20.0))
        plus = scaled_bessel(nu, s - nu, x)
        minus = scaled_bessel(nu, s - nu, -x)
        worst = max(worst, _relative(minus, (-1) ** s * plus, 1e-300))
        count += 1
    return Outcome(worst, ctx.tol.parity_law_rel, count)


@check("specfun", "recurrence", "J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu")
def _recurrence(ctx: CheckContext) -> Outcome:
    worst = 0.0
    for _ in range(ctx.config.points):
        nu = float(ctx.rng.uniform(0.0, 6.0))
        x = float(ctx.rng.uniform(0.5, 25.0))
        # J_{ν−1} leaves the ν > −1 domain of bessel_j for ν ≤ 0
        below = bessel_j(nu - 1.0, x) if nu > 0.0 else special.jv(nu - 1.0, x)
        here = bessel_j(nu, x)
        above = bessel_j(nu + 1.0, x)
        rhs = 2.0 * nu / x * here
        scale = abs(below) + abs(above) + abs(rhs)
        worst = max(worst, abs(below + above - rhs) / scale)
    return Outcome(worst, ctx.tol.recurrence_rel, ctx.config.points)


@check("specfun", "series_continuity", "factored series agrees with x^p J_nu(x) near the cutoff")
def _series_continuity(ctx: CheckContext) -> Outcome:
    worst = 0.0
    for _ in range(ctx.config.points):
        nu = float(ctx.rng.uniform(0.0, 6.0))
        power = -nu + float(ctx.rng.integers(0, 3))
        x = float(ctx.rng.uniform(0.5, 2.0))
        reference = x ** power * special.jv(nu, x)
        worst = max(worst, _relative(scaled_bessel(nu, power, x), reference, 1e-300))
    return Outcome(worst, ctx.tol.recurrence_rel, ctx.config.points)


@check("specfun", "jacobi_oracle", "three-term recurrence matches a 40-digit oracle for k <= 20")
def _jacobi_oracle(ctx: CheckContext) -> Outcome:
    worst, count = 0.0, 0
    for k in range(JACOBI_MAX_DEGREE + 1):
        for _ in range(ctx.config.points):
            alpha, beta = (float(v) for v in ctx.rng.uniform(-0.9, 3.0, size=2))
            x = float(ctx.rng.uniform(-1.0, 1.0))
            error = abs(jacobi_p(k, alpha, beta, x) - jacobi_reference(k, alpha, beta, x))
            worst = max(worst, error / jacobi_scale(k, alpha, beta))
            count += 1
    return Outcome(worst, ctx.tol.jacobi_rel, count, {"max_degree": JACOBI_MAX_DEGREE})


@check("specfun", "lommel", "canonical solution solves the Lommel equation")
def _lommel(ctx: CheckContext) -> Outcome:
    worst = 0.0
    for _ in range(ctx.config.points):
        gamma = float(ctx.rng.uniform(0.5, 2.0))
        nu = float(ctx.rng.uniform(0.0, 3.0))
        alpha = float(ctx.rng.uniform(-gamma * nu, 1.0))
        params = LommelParams(alpha, float(ctx.rng.uniform(0.5, 2.0)), gamma, nu)
        xi = float(ctx.rng.uniform(0.5, 3.0))
        worst = max(worst, lommel_residual(params, params.canonical_solution(), xi, ctx.h, ctx.stencil))
    return Outcome(worst, ctx.tol.second_order_identity, ctx.config.points)


# ---------------------------------------------------------------- algebra

@functools.lru_cache(maxsize=8)
def _algebra_sweep(seed: int, h: float, stencil: int, points: int) -> Tuple[Dict[str, float], int]:
    rng = check_seed(seed, "algebra")
    worst: Dict[str, float] = {}
    count = 0
    for _ in range(2):
        mu = rng.uniform(0.1, 1.5, size=3)
        params = DunklParams(*(float(v) for v in mu))
        sample = interior_points(rng, points)
        for f in function_battery().values():
            for p in sample:
                for key, value in algebra_residuals(params, f, p, h, stencil).items():
                    worst[key] = max(worst.get(key, 0.0), value)
                count += 1
    return worst, count


def _algebra_check(key: str, second_order: bool = False):
    def run(ctx: CheckContext) -> Outcome:
        worst, count = _algebra_sweep(ctx.config.seed, ctx.h, ctx.stencil, ctx.config.battery_points)
        tolerance = ctx.tol.second_order_identity if second_order else ctx.tol.derivative_identity
        return Outcome(worst[key], tolerance, count, {"battery_version": BATTERY_VERSION})
    return run


for _key, _name, _second in (
        ("reflection_involution", "R_i^2 = 1", False),
        ("derivative_anticommutation", "d_i R_i = -R_i d_i", False),
        ("dunkl_anticommutation", "D_i R_i = -R_i D_i", False),
        ("cross_commutation", "R_j commutes with R_i, d_i and D_i for i != j", False),
        ("xd_commutator", "[x_i, D_i] = -(1 + 2 mu_i R_i)", False),
        ("dunkl_commutator", "[D_i, D_j] = 0", True)):
    check("algebra", _key, _name)(_algebra_check(_key, _second))


# ---------------------------------------------------------------- angular

def _random_params(rng: np.random.Generator) -> DunklParams:
    mu1, mu2 = (float(v) for v in rng.uniform(0.0, 2.0, size=2))
    return DunklParams(mu1, mu2, 0.5)


@check("angular", "sector_table", "sector parities and allowed l")
def _sector_table(ctx: CheckContext) -> Outcome:
    expected = {(0, 0): (1, 1), (1, 1): (-1, -1), (0, 1): (1, -1), (1, 0): (-1, 1)}
    failures = 0
    for info in classify_sectors():
        failures += expected[(info.sector.e1, info.sector.e2)] != (info.r1, info.r2)
        failures += info.ell_values.startswith("1/2") != (info.product == -1)
    return Outcome(float(failures), 0.0, 4)


@check("angular", "bphi_eigen", "B_phi Phi = (s^2/2) Phi")
def _bphi_eigen(ctx: CheckContext) -> Outcome:
    params = _random_params(ctx.rng)
    angles = _angles(ctx.rng, ctx.config.points, clearance=0.2)
    worst, count = 0.0, 0
    for sector in _sectors():
        for twoell in range(sector.lowest_twoell, ctx.config.max_twoell + 1, 2):
            mode = make_mode(params, sector, twoell)
            for phi in angles:
                # high modes peak near the axes; measure against the local amplitude
                scale = max(1.0, abs(phi_eigenfunction(params, mode, phi)))
                worst = max(worst, bphi_residual(params, mode, phi, ctx.h, ctx.stencil) / scale)
                count += 1
    return Outcome(worst, ctx.tol.eigen_residual, count, {"mu1": params.mu1, "mu2": params.mu2})


@check("angular", "reflection_parity", "Phi(pi - phi) = r1 Phi(phi), Phi(-phi) = r2 Phi(phi)")
def _reflection_parity(ctx: CheckContext) -> Outcome:
    params = _random_params(ctx.rng)
    angles = [float(v) for v in ctx.rng.uniform(0.0, 2.0 * math.pi, size=ctx.config.points)]
    worst, count = 0.0, 0
    for sector in _sectors():
        for twoell in range(sector.lowest_twoell, ctx.config.max_twoell + 1, 2):
            mode = make_mode(params, sector, twoell)
            for phi in angles:
                value = phi_eigenfunction(params, mode, phi)
                worst = max(worst,
                            _relative(phi_eigenfunction(params, mode, math.pi - phi), sector.r1 * value),
                            _relative(phi_eigenfunction(params, mode, -phi), sector.r2 * value))
                count += 1
    return Outcome(worst, ctx.tol.parity_rel, count, {"mu1": params.mu1, "mu2": params.mu2})


@check("angular", "orthonormality", "overlap matrix of the first 8 modes is the identity")
def _orthonormality(ctx: CheckContext) -> Outcome:
    params = _random_params(ctx.rng)
    worst = 0.0
    for sector in _sectors():
        matrix = orthonormality_matrix(params, sector, 8)
        worst = max(worst, float(np.max(np.abs(matrix - np.eye(8)))))
    # distinct sectors are orthogonal too
    sectors = _sectors()
    for i, a in enumerate(sectors):
        for b in sectors[i + 1:]:
            overlap = angular_overlap(params, make_mode(params, a, a.lowest_twoell + 2),
                                      make_mode(params, b, b.lowest_twoell + 2))
            worst = max(worst, abs(overlap))
    return Outcome(worst, ctx.tol.orthonormality, 4 * 64 + 6, {"mu1": params.mu1, "mu2": params.mu2})


@check("angular", "eta_consistency", "closed-form eta matches quadrature normalization")
def _eta_consistency(ctx: CheckContext) -> Outcome:
    params = _random_params(ctx.rng)
    worst, count = 0.0, 0
    for sector in _sectors():
        for twoell in range(sector.lowest_twoell, ctx.config.max_twoell + 1, 2):
            closed = make_mode(params, sector, twoell).eta
            worst = max(worst, _relative(closed, numerical_eta(params, sector, twoell)))
            count += 1
    return Outcome(worst, ctx.tol.normalization, count, {"mu1": params.mu1, "mu2": params.mu2})


@check("angular", "s2_exchange", "s^2 is symmetric under mu1 <-> mu2")
def _s2_exchange(ctx: CheckContext) -> Outcome:
    worst = 0.0
    for _ in range(ctx.config.points):
        params = _random_params(ctx.rng)
        swapped = DunklParams(params.mu2, params.mu1, params.mu3)
        twoell = int(ctx.rng.integers(0, 2 * ctx.config.max_twoell + 1))
        worst = max(worst, _relative(s_squared(params, twoell), s_squared(swapped, twoell), 1e-300))
    return Outcome(worst, ctx.tol.energy_identity_rel, ctx.config.points)


@check("angular", "lz_identity", "L_z^2 = 2 B_phi + 2 mu1 mu2 (1 - R1 R2)")
def _lz_identity(ctx: CheckContext) -> Outcome:
    params = _random_params(ctx.rng)
    angles = _angles(ctx.rng, 4, clearance=0.2)
    worst, count = 0.0, 0
    for sector in _sectors():
        for twoell in range(sector.lowest_twoell, min(ctx.config.max_twoell, 6) + 1, 2):
            mode = make_mode(params, sector, twoell)
            for phi in angles:
                worst = max(worst, lz_identity_residual(params, mode, phi, ctx.h, ctx.stencil))
                count += 1
    return Outcome(worst, ctx.tol.second_order_identity, count, {"mu1": params.mu1, "mu2": params.mu2})


# ---------------------------------------------------------------- axial

def _axial_states(ctx: CheckContext):
    geom = ctx.config.geometry
    for m in range(ctx.config.max_m + 1):
        for n_prime in range(1, ctx.config.max_n_prime + 1):
            yield axial_even(geom, m, n_prime)
            yield axial_odd(geom, m, n_prime)


@check("axial", "boundary", "psi(+-H) = 0")
def _axial_boundary(ctx: CheckContext) -> Outcome:
    h_half = ctx.config.h_half
    states = list(_axial_states(ctx))
    worst = max(max(abs(state(h_half)), abs(state(-h_half))) for state in states)
    return Outcome(worst, ctx.tol.boundary, 2 * len(states), {"h_half": h_half})


@check("axial", "eigen_residual", "C_z psi = eps_z psi")
def _axial_eigen(ctx: CheckContext) -> Outcome:
    h_half = ctx.config.h_half
    worst, count = 0.0, 0
    for state in _axial_states(ctx):
        for _ in range(ctx.config.points):
            z = _signed_uniform(ctx.rng, 0.1, h_half - 0.1)
            worst = max(worst, axial_residual(state, z, ctx.h, ctx.stencil))
            count += 1
    return Outcome(worst, ctx.tol.eigen_residual, count, {"h_half": h_half})


@check("axial", "parity", "psi(-z) = r3 psi(z)")
def _axial_parity(ctx: CheckContext) -> Outcome:
    worst, count = 0.0, 0
    for state in _axial_states(ctx):
        for z in ctx.rng.uniform(0.0, ctx.config.h_half, size=ctx.config.points):
            worst = max(worst, _relative(state(-z), state.parity * state(z), 1e-300))
            count += 1
    return Outcome(worst, ctx.tol.parity_rel, count)


@check("axial", "monotonic", "axial energies increase with n'")
def _axial_monotonic(ctx: CheckContext) -> Outcome:
    geom = ctx.config.geometry
    failures = 0
    for m in range(ctx.config.max_m + 1):
        for builder in (axial_even, axial_odd):
            energies = [builder(geom, m, n).energy for n in range(1, ctx.config.max_n_prime + 2)]
            failures += not figures.is_increasing(energies)
    return Outcome(float(failures), 0.0, 2 * (ctx.config.max_m + 1))


@check("axial", "interlacing", "eps+_{m,n'} < eps-_{m,n'} < eps+_{m,n'+1}")
def _axial_interlacing(ctx: CheckContext) -> Outcome:
    geom = ctx.config.geometry
    failures, count = 0, 0
    for m in range(6):
        for n_prime in range(1, 6):
            even = axial_even(geom, m, n_prime).energy
            odd = axial_odd(geom, m, n_prime).energy
            failures += not (even < odd < axial_even(geom, m, n_prime + 1).energy)
            count += 1
    return Outcome(float(failures), 0.0, count)


@check("axial", "infinite_limit", "free state with k = omega/H reproduces the confined even state")
def _axial_infinite_limit(ctx: CheckContext) -> Outcome:
    h_half = ctx.config.h_half
    free_geom = CylinderGeometry(r_c=ctx.config.r_c, kind=WellKind.INFINITE)
    worst, count = 0.0, 0
    z = np.linspace(-h_half, h_half, ctx.config.points)
    for state in _axial_states(ctx):
        if state.parity != 1:
            continue
        free = axial_free(state.m, 1, state.kappa, free_geom)
        worst = max(worst, float(np.max(np.abs(free(z) - state(z)))), abs(free.energy - state.energy))
        count += len(z)
    return Outcome(worst, ctx.tol.parity_rel, count)


# ---------------------------------------------------------------- radial

def _radial_states(ctx: CheckContext):
    geom = ctx.config.geometry
    for N in range(ctx.config.max_N + 1):
        for M in range(N + 1):
            for n in range(1, ctx.config.max_n + 1):
                yield radial_state_from_indices(geom, N, M, n)


@check("radial", "boundary", "R(R_c) = 0")
def _radial_boundary(ctx: CheckContext) -> Outcome:
    states = list(_radial_states(ctx))
    worst = max(abs(state(ctx.config.r_c)) for state in states)
    return Outcome(worst, ctx.tol.boundary, len(states), {"r_c": ctx.config.r_c})


@check("radial", "eigen_residual", "(A_rho + s^2 / 2 rho^2) R = eps_rho R")
def _radial_eigen(ctx: CheckContext) -> Outcome:
    worst, count = 0.0, 0
    for state in _radial_states(ctx):
        for rho in ctx.rng.uniform(0.1, ctx.config.r_c, size=ctx.config.points):
            worst = max(worst, radial_residual(state, float(rho), ctx.h, ctx.stencil))
            count += 1
    return Outcome(worst, ctx.tol.eigen_residual, count, {"r_c": ctx.config.r_c})


@check("radial", "parity", "R(-rho) = (-1)^(N-M) R(rho)")
def _radial_parity(ctx: CheckContext) -> Outcome:
    worst, count = 0.0, 0
    for state in _radial_states(ctx):
        for rho in ctx.rng.uniform(0.0, ctx.config.r_c, size=ctx.config.points):
            worst = max(worst, _relative(state(-rho), state.parity * state(rho), 1e-300))
            count += 1
    return Outcome(worst, ctx.tol.parity_rel, count)


@check("radial", "monotonic", "radial energies increase with n")
def _radial_monotonic(ctx: CheckContext) -> Outcome:
    geom = ctx.config.geometry
    failures = 0
    for N in range(ctx.config.max_N + 1):
        energies = [radial_state_from_indices(geom, N, 0, n).energy for n in range(1, ctx.config.max_n + 2)]
        failures += not figures.is_increasing(energies)
    return Outcome(float(failures), 0.0, ctx.config.max_N + 1)


# ---------------------------------------------------------------- full

def _ledger_expectation(parity: ParityTriple, twoell: int, N: int, M: int) -> bool:
    """Parity ledger rows written out independently of spectrum.PARITY_LEDGER."""
    rows = {
        (1, 1, 1): ("even", "integer", "even"), (-1, -1, 1): ("even", "integer", "even"),
        (1, 1, -1): ("odd", "integer", "odd"), (-1, -1, -1): ("odd", "integer", "odd"),
        (1, -1, 1): ("even", "half", "odd"), (-1, 1, 1): ("even", "half", "odd"),
        (1, -1, -1): ("odd", "half", "even"), (-1, 1, -1): ("odd", "half", "even"),
    }
    n_kind, ell_kind, m_kind = rows[tuple(parity)]
    parity_name = lambda value: "odd" if value % 2 else "even"
    ell_name = "half" if twoell % 2 else "integer"
    return (N >= M and N - M == twoell and parity_name(N) == n_kind
            and ell_name == ell_kind and parity_name(M) == m_kind)


@check("full", "ledger", "admissibility matches the parity ledger for all eight classes")
def _ledger(ctx: CheckContext) -> Outcome:
    geom = ctx.config.geometry
    limit = ctx.config.ledger_max
    failures, count = 0, 0
    for parity in ALL_PARITY_TRIPLES:
        for N in range(limit + 1):
            for M in range(limit + 1):
                for twoell in {abs(N - M), N - M + 1}:
                    for m in range(limit + 1):
                        label = StateLabel(parity, twoell, N, M, m, 1, geom, n_prime=1)
                        failures += bool(admissible(label)) != _ledger_expectation(parity, twoell, N, M)
                        count += 1
    return Outcome(float(failures), 0.0, count, {"ledger_max": limit})


@check("full", "pairing_symmetry", "(r1, r2, r3) and (-r1, -r2, r3) share constraints and spectra")
def _pairing(ctx: CheckContext) -> Outcome:
    geom = ctx.config.geometry
    failures, count = 0, 0
    for parity in ALL_PARITY_TRIPLES:
        partner = parity.partner
        for N in range(ctx.config.ledger_max + 1):
            for M in range(N + 1):
                label = StateLabel(parity, N - M, N, M, 0, 1, geom, n_prime=1)
                twin = StateLabel(partner, N - M, N, M, 0, 1, geom, n_prime=1)
                ok = bool(admissible(label))
                failures += ok != bool(admissible(twin))
                if ok:
                    failures += total_energy(label).e_total != total_energy(twin).e_total
                count += 1
    return Outcome(float(failures), 0.0, count)


def _enumerate(ctx: CheckContext, workers: int):
    c = ctx.config
    return enumerate_levels(c.geometry, None, c.max_N, c.max_m, c.max_n, c.max_n_prime, workers=workers)


@check("full", "enumeration", "enumerated levels are admissible, sorted and schedule independent")
def _enumeration(ctx: CheckContext) -> Outcome:
    serial = _enumerate(ctx, 1)
    parallel = _enumerate(ctx, max(2, ctx.config.workers))
    failures = sum(not admissible(level.label) for level in serial)
    failures += [level.label for level in serial] != [level.label for level in parallel]
    keys = [(level.e_total, level.label.sort_key()) for level in serial]
    failures += keys != sorted(keys)
    return Outcome(float(failures), 0.0, len(serial))


@check("full", "energy_identity", "e_total = e_radial + e_axial")
def _energy_identity(ctx: CheckContext) -> Outcome:
    levels = _enumerate(ctx, 1)
    worst = max(_relative(level.e_total, level.e_radial + level.e_axial, 1e-300) for level in levels)
    return Outcome(worst, ctx.tol.energy_identity_rel, len(levels))


@check("full", "radial_factor", "sqrt(2 (eps - eps_z)) = Omega_{N,n} / R_c")
def _radial_factor(ctx: CheckContext) -> Outcome:
    levels = _enumerate(ctx, 1)
    worst = max(_relative(level.radial_factor,
                          bessel_zero(level.label.N, level.label.n).value / ctx.config.r_c, 1e-300)
                for level in levels)
    return Outcome(worst, RADIAL_FACTOR_REL_TOL, len(levels))


def worked_example(geometry: CylinderGeometry) -> StateLabel:
    """Odd radial, odd axial: (1, -1, -1) with N = 1, M = 0, l = 1/2, m = 0, n = n' = 1."""
    return StateLabel(ParityTriple(1, -1, -1), 1, 1, 0, 0, 1, geometry, n_prime=1)


@check("full", "worked_example", "(1,-1,-1) ground level equals j11^2 (1/2R_c^2 + 1/2H^2)")
def _worked_example(ctx: CheckContext) -> Outcome:
    c = ctx.config
    level = total_energy(worked_example(c.geometry))
    j11 = TABULATED_ZEROS[(1.0, 1)]
    expected = j11 ** 2 / (2.0 * c.r_c ** 2) + j11 ** 2 / (2.0 * c.h_half ** 2)
    return Outcome(_relative(level.e_total, expected, 1e-300), WORKED_EXAMPLE_REL_TOL, 1,
                   {"e_total": level.e_total})


def _residual_labels(geometry: CylinderGeometry) -> List[StateLabel]:
    """One label per ledger row with an angular factor, including the worked example."""
    return [
        StateLabel(ParityTriple(1, 1, 1), 2, 2, 0, 0, 1, geometry, n_prime=1),
        StateLabel(ParityTriple(-1, -1, -1), 2, 3, 1, 1, 2, geometry, n_prime=1),
        StateLabel(ParityTriple(-1, 1, 1), 1, 2, 1, 0, 1, geometry, n_prime=2),
        worked_example(geometry),
    ]


def _cyl_points(ctx: CheckContext, count: int) -> List[CylPoint]:
    c = ctx.config
    angles = _angles(ctx.rng, count)
    return [CylPoint(float(ctx.rng.uniform(0.5, c.r_c - 0.5)), phi, _signed_uniform(ctx.rng, 0.5, c.h_half - 0.5))
            for phi in angles]


@check("full", "hamiltonian_residual", "(A_rho + B_phi / rho^2 + C_z) Psi = eps Psi")
def _hamiltonian(ctx: CheckContext) -> Outcome:
    worst, count = 0.0, 0
    for label in _residual_labels(ctx.config.geometry):
        for point in _cyl_points(ctx, ctx.config.points):
            worst = max(worst, hamiltonian_residual(label, point, h=ctx.h, stencil=ctx.stencil))
            count += 1
    return Outcome(worst, ctx.tol.eigen_residual, count)


@check("full", "cartesian_residual", "-1/2 Dunkl Laplacian of Psi = eps Psi in (x, y, z)")
def _cartesian(ctx: CheckContext) -> Outcome:
    worst, count = 0.0, 0
    for label in _residual_labels(ctx.config.geometry):
        for point in _cyl_points(ctx, 3):
            cart = point.to_cart()
            if min(abs(cart.x), abs(cart.y)) < 0.05:
                continue
            worst = max(worst, cartesian_hamiltonian_residual(label, cart, h=ctx.h, stencil=ctx.stencil))
            count += 1
    return Outcome(worst, ctx.tol.eigen_residual, count)


@check("full", "wavefunction_parity", "Theta(rho, -z) = r3 Theta and the angular factor carries r1, r2")
def _wave_parity(ctx: CheckContext) -> Outcome:
    worst, count = 0.0, 0
    for label in _residual_labels(ctx.config.geometry):
        wave = full_wavefunction(label)
        r1, r2, r3 = label.parity
        for rho, phi, z in _cyl_points(ctx, ctx.config.points):
            value = wave.psi(rho, phi, z)
            worst = max(worst,
                        _relative(wave.theta(rho, -z), r3 * wave.theta(rho, z)),
                        _relative(wave.psi(rho, math.pi - phi, z), r1 * value),
                        _relative(wave.psi(rho, -phi, z), r2 * value))
            count += 1
    return Outcome(worst, ctx.tol.parity_rel, count)


@check("full", "wavefunction_boundary", "Theta(R_c, z) = 0 and Theta(rho, +-H) = 0")
def _wave_boundary(ctx: CheckContext) -> Outcome:
    c = ctx.config
    worst, count = 0.0, 0
    for label in _residual_labels(c.geometry):
        wave = full_wavefunction(label)
        for z in ctx.rng.uniform(-c.h_half, c.h_half, size=ctx.config.points):
            worst = max(worst, abs(wave.theta(c.r_c, float(z))))
            count += 1
        for rho in ctx.rng.uniform(0.0, c.r_c, size=ctx.config.points):
            worst = max(worst, abs(wave.theta(float(rho), c.h_half)), abs(wave.theta(float(rho), -c.h_half)))
            count += 2
    return Outcome(worst, ctx.tol.boundary, count)


# ---------------------------------------------------------------- figures

@check("figures", "radial_energies", "radial energies: 15 rows, increasing in n for N = 1, 3, 5")
def _radial_energies_panel(ctx: CheckContext) -> Outcome:
    frame = figures.energy_panel(figures.RADIAL_ENERGIES)
    failures = int(len(frame) != 15)
    for _, group in frame.groupby("N"):
        failures += not figures.is_increasing(group["e_radial"].tolist())
    return Outcome(float(failures), 0.0, len(frame))


@check("figures", "axial_energies", "axial energies on both branches: increasing and interlaced")
def _axial_energies_panel(ctx: CheckContext) -> Outcome:
    odd = figures.energy_panel(figures.AXIAL_ODD_ENERGIES)
    even = figures.energy_panel(figures.AXIAL_EVEN_ENERGIES)
    failures = int(len(odd) != 15) + int(len(even) != 15)
    for frame in (odd, even):
        for _, group in frame.groupby("m"):
            failures += not figures.is_increasing(group["e_axial"].tolist())
    merged = even.merge(odd, on=["m", "n_prime"], suffixes=("_even", "_odd"))
    for m, group in merged.groupby("m"):
        e_even = group["e_axial_even"].tolist()
        e_odd = group["e_axial_odd"].tolist()
        for i in range(len(e_odd)):
            failures += not e_even[i] < e_odd[i]
            if i + 1 < len(e_even):
                failures += not e_odd[i] < e_even[i + 1]
    return Outcome(float(failures), 0.0, len(odd) + len(even))


@check("figures", "curve_boundaries", "curve samples vanish at rho = R_c and z = +-H")
def _curve_boundaries(ctx: CheckContext) -> Outcome:
    worst, count = 0.0, 0
    for panel in figures.CURVE_PANELS:
        frame = figures.curve_panel(panel, ctx.config.points + 2)
        keys = ["N", "M", "n"] if "rho" in frame else ["m", "n_prime"]
        for _, group in frame.groupby(keys):
            values = group["value"].tolist()
            edges = [values[-1]] if "rho" in frame else [values[0], values[-1]]
            worst = max([worst] + [abs(v) for v in edges])
            count += len(edges)
    return Outcome(worst, ctx.tol.boundary, count)


# ---------------------------------------------------------------- harness

def _run_check(item: Check, config: VerifyConfig) -> CheckReport:
    ctx = CheckContext(config, check_seed(config.seed, item.check_id))
    try:
        outcome = item.run(ctx)
    except Exception as exc:
        if isinstance(exc, (DunklError, ArithmeticError, ValueError)):
            logger.debug("%s raised %s", item.check_id, exc)
        else:
            logger.exception(f"Unexpected failure in {item.check_id}: {str(exc)}")
        return CheckReport(check_id=item.check_id, suite=item.suite, name=item.name, max_residual=math.inf,
                           tolerance=math.nan, passed=False, points=0, seed=config.seed,
                           error=f"{type(exc).__name__}: {exc}")
    residual = float(outcome.max_residual)
    report = CheckReport(check_id=item.check_id, suite=item.suite, name=item.name,
                         parameters=dict(outcome.parameters), max_residual=residual,
                         tolerance=float(outcome.tolerance), passed=bool(residual <= outcome.tolerance),
                         points=int(outcome.points), seed=config.seed)
    logger.debug("%s: residual %.3e (tol %.1e) %s", report.check_id, residual, report.tolerance,
                 "pass" if report.passed else "FAIL")
    return report


class VerificationHarness:
    """Runs registered checks for one configuration."""

    def __init__(self, config: Optional[VerifyConfig] = None):
        self.config = config or VerifyConfig()
        self._lock = threading.Lock()
        self.reports: List[CheckReport] = []

    def checks(self, suite: str) -> List[Check]:
        if suite == "all":
            return [item for name in SUITE_NAMES for item in _REGISTRY[name]]
        if suite not in _REGISTRY:
            raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)} or all")
        return list(_REGISTRY[suite])

    def run(self, suite: str) -> List[CheckReport]:
        items = self.checks(suite)
        logger.info("Running %d check(s) in suite %s", len(items), suite)
        if self.config.workers > 1:
            with ThreadPoolExecutor(max_workers=self.config.workers) as pool:
                reports = list(pool.map(lambda item: _run_check(item, self.config), items))
        else:
            reports = [_run_check(item, self.config) for item in items]
        reports.sort(key=lambda report: report.check_id)
        with self._lock:
            self.reports.extend(reports)
        failed = sum(not report.passed for report in reports)
        logger.info("Suite %s: %d passed, %d failed", suite, len(reports) - failed, failed)
        return reports


def run_suite(suite: str, config: Optional[VerifyConfig] = None) -> List[CheckReport]:
    return VerificationHarness(config).run(suite)


def write_reports_jsonl(reports: Iterable[CheckReport], target: Union[Path, TextIO]) -> None:
    """One JSON object per line."""
    lines = "".join(report.model_dump_json() + "\n" for report in reports)
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as handle:
            handle.write(lines)
    else:
        target.write(lines)


def summary_table(reports: Iterable[CheckReport]) -> str:
    frame = pd.DataFrame([{"check": r.check_id, "status": "pass" if r.passed else "FAIL",
                           "max_residual": r.max_residual, "tolerance": r.tolerance, "points": r.points}
                          for r in reports], columns=["check", "status", "max_residual", "tolerance", "points"])
    return frame.to_string(index=False, float_format=lambda value: f"{value:.3e}")

# states.py
"""Axial and radial wavefunction factories for the finite and infinite cylindrical wells.

Samplers evaluate through ``scaled_bessel`` so that z = 0 and ρ = 0 are
ordinary points and negative arguments follow the parity extension:

    ψ(z) = z^{−m} J_ν(κz) = κ^{m} · scaled_bessel(ν, −m, κz)
    R(ρ) = ρ^{−M} J_N(κρ) = κ^{M} · scaled_bessel(N, −M, κρ)
"""
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Union

import numpy as np
from scipy.integrate import quad

from config import get_tolerances
from dunkl_core import DunklParams, apply_arho, apply_cz
from errors import AccuracyError, ClassificationError, DomainError, InputError, RegularityError
from specfun import ArrayLike, bessel_zero, is_integer, scaled_bessel

logger = logging.getLogger(__name__)


class WellKind(str, Enum):
    FINITE = "finite"
    INFINITE = "infinite"


@dataclass(frozen=True)
class CylinderGeometry:
    """Radius R_c and half-height H (the cylinder spans −H ≤ z ≤ H)."""

    r_c: float
    h_half: Optional[float] = None
    kind: WellKind = WellKind.FINITE

    def __post_init__(self):
        object.__setattr__(self, "kind", WellKind(self.kind))
        if not (math.isfinite(self.r_c) and self.r_c > 0):
            raise InputError(f"cylinder radius must be positive, got {self.r_c}")
        if self.kind is WellKind.FINITE:
            if self.h_half is None or not (math.isfinite(self.h_half) and self.h_half > 0):
                raise InputError(f"finite well needs a positive half-height, got {self.h_half}")

    @property
    def finite(self) -> bool:
        return self.kind is WellKind.FINITE


@dataclass(frozen=True)
class AxialState:
    """ψ±(z) = C z^{1/2−μ₃} J_ν(κz) with ν = μ₃ ∓ 1/2 and energy κ²/2."""

    parity: int
    m: float
    order: float
    kappa: float
    energy: float
    n_prime: Optional[int] = None
    k: Optional[float] = None
    h_half: Optional[float] = None
    normalization: float = 1.0

    @property
    def mu3(self) -> float:
        return self.m + 0.5

    @property
    def power(self) -> float:
        return -self.m

    def __call__(self, z: ArrayLike) -> ArrayLike:
        scale = self.normalization * self.kappa ** self.m
        values = scaled_bessel(self.order, self.power, self.kappa * np.asarray(z, dtype=float))
        if np.ndim(z) == 0:
            return scale * float(values)
        return scale * values


@dataclass(frozen=True)
class RadialState:
    """R(ρ) = C ρ^{−M} J_N(κρ) with κ = Ω_{N,n}/R_c."""

    twoell: int
    n_cap: float
    m_cap: float
    n: int
    kappa: float
    energy: float
    r_c: float
    normalization: float = 1.0

    @property
    def ell(self) -> float:
        return self.twoell / 2.0

    @property
    def parity(self) -> int:
        return -1 if self.twoell % 2 else 1

    @property
    def s_squared(self) -> float:
        return float(self.twoell * (self.twoell + 2.0 * self.m_cap))

    def __call__(self, rho: ArrayLike) -> ArrayLike:
        scale = self.normalization * self.kappa ** self.m_cap
        values = scaled_bessel(self.n_cap, -self.m_cap, self.kappa * np.asarray(rho, dtype=float))
        if np.ndim(rho) == 0:
            return scale * float(values)
        return scale * values


def _check_index(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise InputError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def _check_m(m: Union[int, float], unquantized: bool) -> float:
    if not math.isfinite(m):
        raise InputError(f"m must be finite, got {m}")
    if unquantized:
        if m <= -1.0:
            raise DomainError(f"mu3 = m + 1/2 must exceed -1/2, got m = {m}")
        return float(m)
    if not (is_integer(m) and round(m) >= 0):
        raise ClassificationError(f"parity quantization needs m = mu3 - 1/2 in 0, 1, 2, ..., got {m}")
    return float(round(m))


def _finite_axial(geom: CylinderGeometry, m: float, n_prime: int, parity: int) -> AxialState:
    if not geom.finite:
        raise DomainError("confined axial states need a finite well; use axial_free for infinite height")
    n_prime = _check_index("n_prime", n_prime)
    order = m if parity == 1 else m + 1.0
    omega = bessel_zero(order, n_prime).value
    kappa = omega / geom.h_half
    return AxialState(parity=parity, m=m, order=order, kappa=kappa, energy=0.5 * kappa * kappa,
                      n_prime=n_prime, h_half=geom.h_half)


def axial_even(geom: CylinderGeometry, m: Union[int, float], n_prime: int,
               unquantized: bool = False) -> AxialState:
    """ψ⁺(z) = z^{−m} J_m(ω_{m,n′} z/H), energy ω²_{m,n′}/(2H²)."""
    return _finite_axial(geom, _check_m(m, unquantized), n_prime, 1)


def axial_odd(geom: CylinderGeometry, m: Union[int, float], n_prime: int,
              unquantized: bool = False) -> AxialState:
    """ψ⁻(z) = z^{−m} J_{m+1}(ω_{m+1,n′} z/H), energy ω²_{m+1,n′}/(2H²)."""
    return _finite_axial(geom, _check_m(m, unquantized), n_prime, -1)


def axial_general(geom: CylinderGeometry, mu3: float, parity: int, n_prime: int) -> AxialState:
    """Confined axial state for an arbitrary μ₃ > −1/2, outside parity quantization."""
    if parity not in (1, -1):
        raise ClassificationError(f"axial parity must be +1 or -1, got {parity}")
    return _finite_axial(geom, _check_m(mu3 - 0.5, True), n_prime, parity)


def axial_free(m: Union[int, float], parity: int, k: float, geom: Optional[CylinderGeometry] = None,
               unquantized: bool = False) -> AxialState:
    """Free axial motion in the infinite-height well, energy k²/2."""
    if geom is not None and geom.finite:
        raise DomainError("axial_free describes the infinite-height well")
    if parity not in (1, -1):
        raise ClassificationError(f"axial parity must be +1 or -1, got {parity}")
    if not math.isfinite(k):
        raise InputError(f"k must be finite, got {k}")
    if k <= 0:
        raise DomainError(f"k must be positive (negative k repeats the k > 0 states), got {k}")
    m = _check_m(m, unquantized)
    order = m if parity == 1 else m + 1.0
    return AxialState(parity=parity, m=m, order=order, kappa=float(k), energy=0.5 * k * k, k=float(k))


def radial_state(geom: CylinderGeometry, r1r2: int, twoell: int, params: DunklParams, n: int,
                 require_quantized: bool = True) -> RadialState:
    """R(ρ) = ρ^{−M} J_N(Ω_{N,n} ρ/R_c) with N = 2ℓ + M, M = μ₁ + μ₂."""
    if r1r2 not in (1, -1):
        raise ClassificationError(f"r1*r2 must be +1 or -1, got {r1r2}")
    if isinstance(twoell, bool) or int(twoell) != twoell:
        raise ClassificationError(f"twoell must be an integer, got {twoell!r}")
    twoell = int(twoell)
    if twoell < 0:
        raise RegularityError(f"N < M (2l = {twoell}) has no solution regular at the origin")
    if (twoell % 2 == 0) != (r1r2 == 1):
        raise ClassificationError(f"2l={twoell} is inconsistent with r1*r2={r1r2}")
    M = params.M
    if require_quantized:
        if not (is_integer(M) and round(M) >= 0):
            raise ClassificationError(f"parity quantization needs M = mu1 + mu2 in 0, 1, 2, ..., got {M}")
        M = float(round(M))
    n = _check_index("n", n)
    N = twoell + M
    omega = bessel_zero(N, n).value
    kappa = omega / geom.r_c
    return RadialState(twoell=twoell, n_cap=N, m_cap=M, n=n, kappa=kappa,
                       energy=0.5 * kappa * kappa, r_c=geom.r_c)


def radial_state_from_indices(geom: CylinderGeometry, N: int, M: int, n: int) -> RadialState:
    """Radial state addressed by the composite indices (N, M) of the parity ledger."""
    for name, value in (("N", N), ("M", M)):
        if isinstance(value, bool) or int(value) != value or value < 0:
            raise ClassificationError(f"{name} must be a nonnegative integer, got {value!r}")
    if N < M:
        raise RegularityError(f"N={N} < M={M}: no solution regular at the origin")
    twoell = int(N) - int(M)
    params = DunklParams.from_quantum_numbers(int(M), 0)
    return radial_state(geom, 1 if twoell % 2 == 0 else -1, twoell, params, n)


def _weighted_norm(f, upper: float, exponent: float) -> float:
    """∫₀^upper f(t)² t^exponent dt with the algebraic weight handled by QUADPACK."""
    tolerances = get_tolerances()
    value, error = quad(lambda t: f(t) ** 2, 0.0, upper, weight="alg", wvar=(exponent, 0.0),
                        epsabs=tolerances.quad_abs, epsrel=1e-12, limit=tolerances.quad_limit)
    if error > tolerances.normalization * max(1.0, value):
        raise AccuracyError("normalization quadrature did not converge", error)
    return value


def normalized(state: Union[AxialState, RadialState]) -> Union[AxialState, RadialState]:
    """Copy of the state with unit norm.

    Axial norm: ∫_{−H}^{H} |ψ|² |z|^{2μ₃} dz. Radial norm: ∫₀^{R_c} |R|² ρ^{1+2M} dρ.
    """
    bare = replace(state, normalization=1.0)
    if isinstance(state, AxialState):
        if state.h_half is None:
            raise DomainError("free axial states are not normalizable")
        norm = 2.0 * _weighted_norm(bare, state.h_half, 2.0 * state.mu3)
    else:
        norm = _weighted_norm(bare, state.r_c, 1.0 + 2.0 * state.m_cap)
    logger.debug("norm of %s = %.17g", type(state).__name__, norm)
    return replace(state, normalization=1.0 / math.sqrt(norm))


def axial_residual(state: AxialState, z: float, h: Optional[float] = None,
                   stencil: Optional[int] = None) -> float:
    """|C_zψ − εψ| at z."""
    params = DunklParams(0.0, 0.0, state.mu3)
    return abs(apply_cz(params, state, z, h, stencil) - state.energy * state(z))


def radial_residual(state: RadialState, rho: float, h: Optional[float] = None,
                    stencil: Optional[int] = None) -> float:
    """|(A_ρ + s²/(2ρ²))R − ε_ρR| at rho."""
    params = DunklParams(state.m_cap / 2.0, state.m_cap / 2.0, 0.5)
    value = state(rho)
    lhs = apply_arho(params, state, rho, h, stencil) + state.s_squared / (2.0 * rho * rho) * value
    return abs(lhs - state.energy * value)

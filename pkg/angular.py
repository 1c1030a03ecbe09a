# angular.py
"""Angular eigenfunctions Φ_ℓ^{(e₁,e₂)} of B_φ, their normalization and identities.

ℓ is carried as the integer 2ℓ (``twoell``) so sector logic never touches
half-integers in floating point.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, List, NamedTuple, Optional

import numpy as np
from scipy.integrate import quad

from config import get_tolerances
from dunkl_core import Axis, CartPoint, DunklParams, apply_bphi, dunkl_derivative
from errors import AccuracyError, ClassificationError, DomainError, NormalizationUndefinedError, SingularPointError
from numdiff import STENCILS, resolve_step
from specfun import jacobi_p, log_gamma

logger = logging.getLogger(__name__)

# (sign of cos φ, sign of sin φ) in the four quadrants
QUADRANT_SIGNS = ((1, 1), (-1, 1), (-1, -1), (1, -1))


@dataclass(frozen=True)
class AngularSector:
    """Reflection sector (e₁, e₂) with eigenvalues (r₁, r₂) = (1−2e₁, 1−2e₂)."""

    e1: int
    e2: int

    def __post_init__(self):
        if self.e1 not in (0, 1) or self.e2 not in (0, 1):
            raise ClassificationError(f"sector indices must be 0 or 1, got ({self.e1}, {self.e2})")

    @property
    def r1(self) -> int:
        return 1 - 2 * self.e1

    @property
    def r2(self) -> int:
        return 1 - 2 * self.e2

    @property
    def product(self) -> int:
        return self.r1 * self.r2

    @property
    def half_integer(self) -> bool:
        return self.product == -1

    @property
    def lowest_twoell(self) -> int:
        return self.e1 + self.e2

    @classmethod
    def from_parities(cls, r1: int, r2: int) -> "AngularSector":
        if r1 not in (1, -1) or r2 not in (1, -1):
            raise ClassificationError(f"reflection eigenvalues must be +1/-1, got ({r1}, {r2})")
        return cls((1 - r1) // 2, (1 - r2) // 2)


class SectorInfo(NamedTuple):
    sector: AngularSector
    r1: int
    r2: int
    product: int
    ell_values: str


@dataclass(frozen=True)
class AngularMode:
    sector: AngularSector
    twoell: int
    s_squared: float
    eta: float
    eta_source: str = "closed_form"

    @property
    def ell(self) -> float:
        return self.twoell / 2.0

    @property
    def degree(self) -> int:
        return (self.twoell - self.sector.e1 - self.sector.e2) // 2


def classify_sectors() -> List[SectorInfo]:
    """The four sectors with their reflection eigenvalues and allowed ℓ."""
    rows = []
    for e1, e2 in ((0, 0), (1, 1), (0, 1), (1, 0)):
        sector = AngularSector(e1, e2)
        ell_values = "1/2, 3/2, 5/2, ..." if sector.half_integer else "0, 1, 2, ..."
        rows.append(SectorInfo(sector, sector.r1, sector.r2, sector.product, ell_values))
    return rows


def effective_degree(sector: AngularSector, twoell: int) -> int:
    """Jacobi degree ℓ − e₁/2 − e₂/2; must be a nonnegative integer."""
    if isinstance(twoell, bool) or int(twoell) != twoell or twoell < 0:
        raise ClassificationError(f"twoell must be a nonnegative integer, got {twoell!r}")
    twoell = int(twoell)
    if (twoell % 2 == 1) != sector.half_integer:
        raise ClassificationError(
            f"2l={twoell} does not match sector ({sector.e1}, {sector.e2}) with r1*r2={sector.product}")
    shifted = twoell - sector.e1 - sector.e2
    if shifted < 0:
        raise ClassificationError(f"2l={twoell} is below the lowest mode of sector ({sector.e1}, {sector.e2})")
    return shifted // 2


def s_squared(params: DunklParams, twoell: int) -> float:
    """s² = 4ℓ(ℓ+μ₁+μ₂)."""
    if params.M <= -1.0:
        raise DomainError(f"mu1 + mu2 must exceed -1, got {params.M}")
    return float(twoell * (twoell + 2.0 * params.M))


def _jacobi_parameters(params: DunklParams, sector: AngularSector):
    return params.mu1 - 0.5 + sector.e1, params.mu2 - 0.5 + sector.e2


def _log_eta_squared(params: DunklParams, sector: AngularSector, twoell: int, convention: str) -> float:
    k = effective_degree(sector, twoell)
    ell = twoell / 2.0
    M = params.M
    esum = sector.e1 + sector.e2
    denominator = (log_gamma(ell + params.mu1 + (1 + sector.e1 - sector.e2) / 2.0)
                   + log_gamma(ell + params.mu2 + (1 + sector.e2 - sector.e1) / 2.0))
    if convention == "printed":
        radicand = (2.0 * ell + M) / 2.0 * (ell - esum / 2.0)
        if radicand <= 0:
            raise NormalizationUndefinedError(
                f"printed normalization radicand {radicand} <= 0 for sector ({sector.e1}, {sector.e2}), 2l={twoell}")
        return math.log(radicand) + log_gamma(ell + M + esum / 2.0) - denominator
    if convention != "jacobi":
        raise ValueError(f"unknown normalization convention {convention!r}")
    if twoell == 0:
        # (M/2)·Γ(M) → Γ(M+1)/2, finite also at M = 0
        front = log_gamma(M + 1.0) - math.log(2.0)
    else:
        front = math.log((2.0 * ell + M) / 2.0) + log_gamma(ell + M + esum / 2.0)
    return front + log_gamma(k + 1.0) - denominator


def _jacobi_part(params: DunklParams, sector: AngularSector, degree: int, u):
    alpha, beta = _jacobi_parameters(params, sector)
    return jacobi_p(degree, alpha, beta, u)


def _unnormalized(params: DunklParams, sector: AngularSector, twoell: int) -> AngularMode:
    return AngularMode(sector, int(twoell), s_squared(params, twoell), 1.0, "unnormalized")


def make_mode(params: DunklParams, sector: AngularSector, twoell: int, convention: str = "jacobi") -> AngularMode:
    """Build a normalized mode; the printed convention falls back to quadrature when undefined."""
    max_twoell = get_tolerances().max_twoell
    effective_degree(sector, twoell)
    if twoell > max_twoell:
        raise DomainError(f"2l={twoell} exceeds the configured cap {max_twoell}")
    try:
        log_eta_sq = _log_eta_squared(params, sector, twoell, convention)
    except NormalizationUndefinedError as exc:
        logger.warning("%s; normalizing numerically", exc)
        return replace(_unnormalized(params, sector, twoell),
                       eta=numerical_eta(params, sector, twoell), eta_source="numerical")
    return AngularMode(sector, int(twoell), s_squared(params, twoell), math.exp(0.5 * log_eta_sq))


def eta(params: DunklParams, mode: AngularMode, convention: str = "jacobi") -> float:
    """Closed-form normalization constant, computed in log space."""
    return math.exp(0.5 * _log_eta_squared(params, mode.sector, mode.twoell, convention))


def numerical_eta(params: DunklParams, sector: AngularSector, twoell: int) -> float:
    bare = _unnormalized(params, sector, twoell)
    return 1.0 / math.sqrt(angular_overlap(params, bare, bare))


def phi_eigenfunction(params: DunklParams, mode: AngularMode, phi):
    """Φ_ℓ^{(e₁,e₂)}(φ) = η cos^{e₁}φ sin^{e₂}φ P_k^{(μ₁−½+e₁, μ₂−½+e₂)}(−cos 2φ)."""
    angles = np.asarray(phi, dtype=float)
    sector = mode.sector
    value = (mode.eta * np.cos(angles) ** sector.e1 * np.sin(angles) ** sector.e2
             * _jacobi_part(params, sector, mode.degree, -np.cos(2.0 * angles)))
    if np.ndim(phi) == 0:
        return float(value)
    return value


def angular_overlap(params: DunklParams, a: AngularMode, b: AngularMode) -> float:
    """∫₀^{2π} Φ_a Φ_b |cos φ|^{2μ₁} |sin φ|^{2μ₂} dφ.

    Each quadrant maps onto u = −cos 2φ ∈ [−1, 1]; the weight and the cos/sin
    prefactors become algebraic endpoint factors handled by QUADPACK's QAWS.
    """
    tolerances = get_tolerances()
    k1 = a.sector.e1 + b.sector.e1
    k2 = a.sector.e2 + b.sector.e2
    sign_sum = sum(sc ** k1 * ss ** k2 for sc, ss in QUADRANT_SIGNS)
    if sign_sum == 0:
        return 0.0
    exp_minus = params.mu1 - 0.5 + k1 / 2.0
    exp_plus = params.mu2 - 0.5 + k2 / 2.0

    def integrand(u: float) -> float:
        return float(_jacobi_part(params, a.sector, a.degree, u) * _jacobi_part(params, b.sector, b.degree, u))

    value, error = quad(integrand, -1.0, 1.0, weight="alg", wvar=(exp_plus, exp_minus),
                        epsabs=tolerances.quad_abs, epsrel=1e-13, limit=tolerances.quad_limit)
    if error > 100.0 * tolerances.quad_abs * max(1.0, abs(value)):
        raise AccuracyError("angular overlap quadrature did not converge", error)
    scale = 2.0 ** (-(params.M + (k1 + k2) / 2.0) - 1.0)
    return a.eta * b.eta * sign_sum * scale * value


def orthonormality_matrix(params: DunklParams, sector: AngularSector, count: int,
                          convention: str = "jacobi") -> np.ndarray:
    """Overlap matrix of the first `count` modes of one sector."""
    first = sector.lowest_twoell
    modes = [make_mode(params, sector, first + 2 * i, convention) for i in range(count)]
    matrix = np.empty((count, count))
    for i, a in enumerate(modes):
        for j in range(i, count):
            matrix[i, j] = matrix[j, i] = angular_overlap(params, a, modes[j])
    return matrix


def bphi_residual(params: DunklParams, mode: AngularMode, phi: float,
                  h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """|B_φΦ − (s²/2)Φ| at phi."""
    f = lambda t: phi_eigenfunction(params, mode, t)
    return abs(apply_bphi(params, f, phi, h, stencil) - 0.5 * mode.s_squared * f(phi))


def lz_identity_residual(params: DunklParams, mode: AngularMode, phi: float,
                         h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """|L_z²Φ − (2B_φΦ + 2μ₁μ₂(Φ − R₁R₂Φ))| with L_z = −i(xD₂ − yD₁) on the unit circle."""
    h, stencil = resolve_step(h, stencil)
    # the inner D_i run at outer stencil points, up to `reach` steps off the circle
    reach = max(abs(offset) for offset, _ in STENCILS[stencil][1])
    if min(abs(math.cos(phi)), abs(math.sin(phi))) < (10.0 + reach) * h:
        raise SingularPointError(f"phi={phi} puts a nested stencil within 10h of an axis")
    angular_part = lambda t: phi_eigenfunction(params, mode, t)
    lifted = lambda x, y, z: angular_part(math.atan2(y, x))

    def rotate(f: Callable) -> Callable:
        return lambda x, y, z: (x * dunkl_derivative(Axis.Y, params, f, (x, y, z), h, stencil)
                                - y * dunkl_derivative(Axis.X, params, f, (x, y, z), h, stencil))

    p = CartPoint(math.cos(phi), math.sin(phi), 0.0)
    lz_squared = -rotate(rotate(lifted))(*p)
    value = angular_part(phi)
    rotated_by_pi = angular_part(phi + math.pi)
    rhs = (2.0 * apply_bphi(params, angular_part, phi, h, stencil)
           + 2.0 * params.mu1 * params.mu2 * (value - rotated_by_pi))
    return abs(lz_squared - rhs)

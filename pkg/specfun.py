# specfun.py
"""Real-order Bessel functions, their zeros, Jacobi polynomials and log-gamma.

Everything downstream (axial and radial states, angular eigenfunctions,
energies) is built on these few routines.
"""
import logging
import math
import threading
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

import mpmath
import numpy as np
from scipy import special
from scipy.optimize import brentq

from config import get_tolerances
from errors import ClassificationError, DomainError, InputError, RegularityError, SingularPointError
from numdiff import derivative, resolve_step

logger = logging.getLogger(__name__)

INTEGER_TOL = 1e-12
SERIES_CUTOFF = 2.0
SCAN_STEP = math.pi / 4.0
SCAN_START = 1e-6
MAX_SERIES_TERMS = 300

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class BesselOrder:
    """Order ν of J_ν, restricted to ν > −1."""

    nu: float

    def __post_init__(self):
        if not math.isfinite(self.nu):
            raise InputError(f"Bessel order must be finite, got {self.nu}")
        if self.nu <= -1.0:
            raise DomainError(f"Bessel order must exceed -1, got {self.nu}")


@dataclass(frozen=True)
class BesselZero:
    """The index-th positive zero of J_ν with the interval that certifies it."""

    order: BesselOrder
    index: int
    value: float
    bracket: Tuple[float, float]


@dataclass(frozen=True)
class LommelParams:
    """Coefficients of v'' + ((1−2α)/ξ)v' + ((βγξ^{γ−1})² + (α²−ν²γ²)/ξ²)v = 0."""

    alpha: float
    beta: float
    gamma: float
    nu: float

    @property
    def is_regular(self) -> bool:
        return self.alpha + self.gamma * self.nu >= 0.0

    def canonical_solution(self) -> Callable[[float], float]:
        """ξ^α J_ν(βξ^γ), the solution regular at the origin."""
        alpha, beta, gamma, nu = self.alpha, self.beta, self.gamma, self.nu
        return lambda xi: xi ** alpha * special.jv(nu, beta * xi ** gamma)


def as_order(order: Union[BesselOrder, float, int]) -> BesselOrder:
    if isinstance(order, BesselOrder):
        return order
    return BesselOrder(float(order))


def is_integer(value: float, tol: float = INTEGER_TOL) -> bool:
    return abs(value - round(value)) <= tol


def _check_finite(x: np.ndarray) -> None:
    if not np.all(np.isfinite(x)):
        raise InputError("argument must be finite")


def _scalar_or_array(result: np.ndarray, like) -> ArrayLike:
    if np.ndim(like) == 0:
        return float(result)
    return result


def bessel_j(order: Union[BesselOrder, float], x: ArrayLike) -> ArrayLike:
    """J_ν(x) for x ≥ 0."""
    order = as_order(order)
    values = np.asarray(x, dtype=float)
    _check_finite(values)
    if np.any(values < 0):
        raise DomainError("bessel_j needs x >= 0; use scaled_bessel for the parity extension")
    if order.nu < 0 and not is_integer(order.nu) and np.any(values == 0):
        raise RegularityError(f"J_{order.nu} is singular at the origin")
    return _scalar_or_array(special.jv(order.nu, values), x)


def _factored_series(nu: float, s: float, t: np.ndarray) -> np.ndarray:
    """t^s · 2^{−ν} Σ_k (−t²/4)^k / (k! Γ(k+ν+1)), i.e. t^{s−ν} J_ν(t)."""
    term = np.full_like(t, math.exp(-nu * math.log(2.0) - special.gammaln(nu + 1.0)))
    total = term.copy()
    scale = np.abs(term)
    quarter_sq = -0.25 * t * t
    for k in range(MAX_SERIES_TERMS):
        term = term * quarter_sq / ((k + 1.0) * (k + nu + 1.0))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * (np.abs(total) + scale)):
            break
    return np.power(t, s) * total


def scaled_bessel(order: Union[BesselOrder, float], power: float, x: ArrayLike) -> ArrayLike:
    """x^power · J_ν(x), finite at the origin and extended to x < 0 by parity.

    The product is regular only when power + ν ≥ 0. Negative arguments are
    accepted when power + ν is an integer s, in which case the value picks up
    the factor (−1)^s.
    """
    order = as_order(order)
    nu = order.nu
    s = power + nu
    if s < -INTEGER_TOL:
        raise RegularityError(f"x^{power} J_{nu}(x) is not regular at the origin (power + nu = {s})")
    integral = is_integer(s)
    if integral:
        s = float(round(s))
    values = np.asarray(x, dtype=float)
    _check_finite(values)
    negative = values < 0
    if np.any(negative) and not integral:
        raise DomainError(f"negative arguments need an integer power + nu, got {s}")
    t = np.abs(values)
    out = np.empty_like(t)
    near = t <= SERIES_CUTOFF
    if np.any(near):
        out[near] = _factored_series(nu, s, t[near])
    far = ~near
    if np.any(far):
        out[far] = np.power(t[far], power) * special.jv(nu, t[far])
    if integral and int(s) % 2 == 1:
        out = np.where(negative, -out, out)
    return _scalar_or_array(out, x)


_ZERO_CACHE: Dict[float, List[BesselZero]] = {}
_ZERO_LOCK = threading.Lock()


def _scan_limit(nu: float, start: float) -> float:
    return start + math.pi * (1.0 + max(nu, 0.0) ** (1.0 / 3.0)) + 5.0


def _refine(nu: float, lo: float, hi: float) -> float:
    root = brentq(lambda t: special.jv(nu, t), lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    # Newton polish with J'_ν = (J_{ν−1} − J_{ν+1})/2, kept only inside the bracket
    slope = 0.5 * (special.jv(nu - 1.0, root) - special.jv(nu + 1.0, root))
    if slope != 0.0:
        candidate = root - special.jv(nu, root) / slope
        if lo < candidate < hi and abs(special.jv(nu, candidate)) <= abs(special.jv(nu, root)):
            root = candidate
        else:
            logger.debug("Newton polish rejected for nu=%s near %s", nu, root)
    return float(root)


def _first_scan_start(nu: float) -> float:
    """A point below the first zero, where J_ν is still positive."""
    if nu >= 0.0:
        return max(SCAN_START, nu)
    # for ν → −1 the first zero sits near 2√(ν+1), possibly below SCAN_START
    start = min(SCAN_START, 0.5 * math.sqrt(nu + 1.0))
    for _ in range(200):
        if special.jv(nu, start) > 0.0:
            return start
        start *= 0.5
    raise ArithmeticError(f"J_{nu} has no positive value near the origin")


def _next_zero(order: BesselOrder, index: int, previous: Optional[float]) -> BesselZero:
    nu = order.nu
    start = _first_scan_start(nu) if previous is None else previous + 1.0
    limit = _scan_limit(nu, nu if previous is None else previous)
    lo, f_lo = start, special.jv(nu, start)
    while lo < limit:
        hi = lo + SCAN_STEP
        f_hi = special.jv(nu, hi)
        if f_hi == 0.0:
            hi += 0.5 * SCAN_STEP
            f_hi = special.jv(nu, hi)
        if f_lo * f_hi < 0.0:
            value = _refine(nu, lo, hi)
            logger.debug("J_%s zero #%d in (%.6f, %.6f): %.15f", nu, index, lo, hi, value)
            return BesselZero(order=order, index=index, value=value, bracket=(lo, hi))
        lo, f_lo = hi, f_hi
    raise ArithmeticError(f"no sign change of J_{nu} found in ({start}, {limit})")


def bessel_zero(order: Union[BesselOrder, float], index: int) -> BesselZero:
    """The index-th positive zero of J_ν (index ≥ 1); cached per order."""
    order = as_order(order)
    if isinstance(index, bool) or not isinstance(index, (int, np.integer)) or index < 1:
        raise InputError(f"zero index must be a positive integer, got {index!r}")
    index = int(index)
    with _ZERO_LOCK:
        known = list(_ZERO_CACHE.get(order.nu, ()))
    if len(known) >= index:
        return known[index - 1]
    while len(known) < index:
        previous = known[-1].value if known else None
        known.append(_next_zero(order, len(known) + 1, previous))
    with _ZERO_LOCK:
        cached = _ZERO_CACHE.get(order.nu)
        if cached is None or len(cached) < len(known):
            _ZERO_CACHE[order.nu] = known
    zero = known[index - 1]
    slope = 0.5 * (special.jv(order.nu - 1.0, zero.value) - special.jv(order.nu + 1.0, zero.value))
    bound = get_tolerances().zero_residual * max(1.0, abs(slope) * zero.value)
    if abs(special.jv(order.nu, zero.value)) > bound:
        logger.warning("J_%s zero #%d residual above %.1e", order.nu, index, bound)
    return zero


def bessel_zeros(order: Union[BesselOrder, float], count: int) -> List[BesselZero]:
    """The first `count` positive zeros of J_ν."""
    if count < 1:
        raise InputError(f"count must be positive, got {count}")
    return [bessel_zero(order, n) for n in range(1, count + 1)]


def jacobi_p(degree: Union[int, float], alpha: float, beta: float, x: ArrayLike) -> ArrayLike:
    """P_k^{(α,β)}(x) by the three-term recurrence."""
    if isinstance(degree, float):
        if not is_integer(degree):
            raise ClassificationError(f"Jacobi degree must be an integer, got {degree}")
        degree = int(round(degree))
    if degree < 0:
        raise ClassificationError(f"Jacobi degree must be nonnegative, got {degree}")
    if alpha <= -1.0 or beta <= -1.0:
        raise DomainError(f"Jacobi parameters must exceed -1, got ({alpha}, {beta})")
    values = np.asarray(x, dtype=float)
    _check_finite(values)
    if np.any(np.abs(values) > 1.0 + 1e-12):
        raise DomainError("Jacobi argument must lie in [-1, 1]")
    previous = np.ones_like(values)
    if degree == 0:
        return _scalar_or_array(previous, x)
    current = (alpha + 1.0) + (alpha + beta + 2.0) * (values - 1.0) / 2.0
    ab = alpha + beta
    a2b2 = alpha * alpha - beta * beta
    for n in range(1, degree):
        c = 2.0 * n + ab
        lead = 2.0 * (n + 1) * (n + ab + 1.0) * c
        middle = (c + 1.0) * ((c + 2.0) * c * values + a2b2)
        back = 2.0 * (n + alpha) * (n + beta) * (c + 2.0)
        previous, current = current, (middle * current - back * previous) / lead
    return _scalar_or_array(current, x)


_MP_LOCAL = threading.local()


def jacobi_reference(degree: int, alpha: float, beta: float, x: float, dps: int = 40) -> float:
    """P_k^{(α,β)}(x) in extended precision through mpmath; an oracle for `jacobi_p`."""
    ctx = getattr(_MP_LOCAL, "ctx", None)
    if ctx is None:
        ctx = _MP_LOCAL.ctx = mpmath.MPContext()
    ctx.dps = dps
    return float(ctx.jacobi(int(degree), ctx.mpf(alpha), ctx.mpf(beta), ctx.mpf(x)))


def jacobi_scale(degree: int, alpha: float, beta: float) -> float:
    """Bound on max |P_k^{(α,β)}| over [−1, 1]: the larger endpoint value, at least 1."""
    return max(1.0, abs(special.binom(degree + alpha, degree)), abs(special.binom(degree + beta, degree)))


def log_gamma(x: float) -> float:
    """ln Γ(x) for x > 0."""
    if not math.isfinite(x):
        raise InputError(f"log_gamma needs a finite argument, got {x}")
    if x <= 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return float(special.gammaln(x))


def lommel_residual(p: LommelParams, solution: Callable[[float], float], xi: float,
                    h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """|v'' + ((1−2α)/ξ)v' + ((βγξ^{γ−1})² + (α²−ν²γ²)/ξ²)v| by central differences."""
    h, stencil = resolve_step(h, stencil)
    if xi < 10.0 * h:
        raise SingularPointError(f"xi={xi} is within 10h of the origin")
    v = float(solution(xi))
    dv = derivative(solution, xi, 1, h, stencil)
    d2v = derivative(solution, xi, 2, h, stencil)
    alpha, beta, gamma, nu = p.alpha, p.beta, p.gamma, p.nu
    coefficient = (beta * gamma * xi ** (gamma - 1.0)) ** 2 + (alpha ** 2 - nu ** 2 * gamma ** 2) / xi ** 2
    return abs(d2v + (1.0 - 2.0 * alpha) / xi * dv + coefficient * v)

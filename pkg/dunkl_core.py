# dunkl_core.py
"""Dunkl parameters, reflections, the Dunkl derivative and the cylindrical operators.

Operators act numerically on plain Python callables: f(x, y, z) for Cartesian
functions, f(t) for the one-variable slices used by A_ρ, B_φ and C_z.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, NamedTuple, Optional, Tuple

import numpy as np

from errors import ClassificationError, DomainError, InputError, SingularPointError
from numdiff import derivative, partial, resolve_step
from specfun import is_integer

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
BATTERY_VERSION = "1"

CartFunction = Callable[[float, float, float], float]


@dataclass(frozen=True)
class DunklParams:
    """The Dunkl parameters (μ₁, μ₂, μ₃), each above −1/2.

    In parity-quantized mode μ₁+μ₂ must be a nonnegative integer M and μ₃ − 1/2
    a nonnegative integer m.
    """

    mu1: float
    mu2: float
    mu3: float
    quantized: bool = False

    def __post_init__(self):
        for name in ("mu1", "mu2", "mu3"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InputError(f"{name} must be finite, got {value}")
            if value <= -0.5:
                raise DomainError(f"{name} must exceed -1/2, got {value}")
        if self.quantized:
            if not (is_integer(self.M) and round(self.M) >= 0):
                raise ClassificationError(f"mu1 + mu2 = {self.M} is not a nonnegative integer")
            if not (is_integer(self.m) and round(self.m) >= 0):
                raise ClassificationError(f"mu3 - 1/2 = {self.m} is not a nonnegative integer")

    @property
    def M(self) -> float:
        return self.mu1 + self.mu2

    @property
    def m(self) -> float:
        return self.mu3 - 0.5

    @classmethod
    def from_quantum_numbers(cls, M: int, m: int, mu1: Optional[float] = None) -> "DunklParams":
        """Quantized parameters with μ₁+μ₂ = M, μ₃ = m + 1/2; μ₁ defaults to M/2."""
        mu1 = M / 2.0 if mu1 is None else float(mu1)
        return cls(mu1, M - mu1, m + 0.5, quantized=True)


class CartPoint(NamedTuple):
    x: float
    y: float
    z: float

    def to_cyl(self) -> "CylPoint":
        phi = math.atan2(self.y, self.x) % TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        return CylPoint(math.hypot(self.x, self.y), phi, self.z)


class CylPoint(NamedTuple):
    rho: float
    phi: float
    z: float

    def to_cart(self) -> CartPoint:
        return CartPoint(self.rho * math.cos(self.phi), self.rho * math.sin(self.phi), self.z)


class Axis(Enum):
    X = 0
    Y = 1
    Z = 2

    def mu(self, params: DunklParams) -> float:
        return (params.mu1, params.mu2, params.mu3)[self.value]

    def reflect_point(self, p: CartPoint) -> CartPoint:
        coords = list(p)
        coords[self.value] = -coords[self.value]
        return CartPoint(*coords)

    def reflect_cyl(self, p: CylPoint) -> CylPoint:
        if self is Axis.X:
            return CylPoint(p.rho, (math.pi - p.phi) % TWO_PI, p.z)
        if self is Axis.Y:
            return CylPoint(p.rho, (-p.phi) % TWO_PI, p.z)
        return CylPoint(p.rho, p.phi, -p.z)


def _point(p) -> CartPoint:
    return p if isinstance(p, CartPoint) else CartPoint(*(float(c) for c in p))


def reflect(axis: Axis, f: CartFunction, p) -> float:
    """R_i f evaluated at p, i.e. f at the axis-reflected point."""
    return f(*axis.reflect_point(_point(p)))


def reflected(axis: Axis, f: CartFunction) -> CartFunction:
    """The function R_i f."""
    return lambda x, y, z: reflect(axis, f, (x, y, z))


def _refuse_near(value: float, h: float, what: str) -> None:
    if abs(value) < 10.0 * h:
        raise SingularPointError(f"{what}={value} is within 10h={10.0 * h:g} of a singular locus")


def partial_derivative(axis: Axis, f: CartFunction, p, h: Optional[float] = None,
                       stencil: Optional[int] = None) -> float:
    return partial(f, _point(p), axis.value, 1, h, stencil)


def dunkl_derivative(axis: Axis, params: DunklParams, f: CartFunction, p,
                     h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """D_i f = ∂_i f + (μ_i/x_i)(f − R_i f) at p."""
    h, stencil = resolve_step(h, stencil)
    p = _point(p)
    coordinate = p[axis.value]
    _refuse_near(coordinate, h, f"{axis.name.lower()} coordinate")
    difference = f(*p) - reflect(axis, f, p)
    return partial_derivative(axis, f, p, h, stencil) + axis.mu(params) / coordinate * difference


def dunkl_operator(axis: Axis, params: DunklParams, f: CartFunction,
                   h: Optional[float] = None, stencil: Optional[int] = None) -> CartFunction:
    """The function D_i f, for composing operators."""
    return lambda x, y, z: dunkl_derivative(axis, params, f, (x, y, z), h, stencil)


def dunkl_laplacian(params: DunklParams, f: CartFunction, p,
                    h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """∇²_D f = D₁²f + D₂²f + D₃²f at p."""
    total = 0.0
    for axis in Axis:
        inner = dunkl_operator(axis, params, f, h, stencil)
        total += dunkl_derivative(axis, params, inner, p, h, stencil)
    return total


def apply_cz(params: DunklParams, f: Callable[[float], float], z: float,
             h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """C_z f = −½(f'' + (2μ₃/z)f' − (μ₃/z²)(f(z) − f(−z)))."""
    h, stencil = resolve_step(h, stencil)
    _refuse_near(z, h, "z")
    mu3 = params.mu3
    d1 = derivative(f, z, 1, h, stencil)
    d2 = derivative(f, z, 2, h, stencil)
    odd_part = float(f(z)) - float(f(-z))
    return -0.5 * (d2 + 2.0 * mu3 / z * d1 - mu3 / z ** 2 * odd_part)


def apply_arho(params: DunklParams, f: Callable[[float], float], rho: float,
               h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """A_ρ f = −½(f'' + ((1+2μ₁+2μ₂)/ρ)f')."""
    h, stencil = resolve_step(h, stencil)
    if rho <= 0:
        raise SingularPointError(f"rho must be positive, got {rho}")
    _refuse_near(rho, h, "rho")
    d1 = derivative(f, rho, 1, h, stencil)
    d2 = derivative(f, rho, 2, h, stencil)
    return -0.5 * (d2 + (1.0 + 2.0 * params.M) / rho * d1)


def angle_clearance(phi: float) -> float:
    """Distance from phi to the nearest multiple of π/2."""
    quarter = math.pi / 2.0
    return abs((phi + quarter / 2.0) % quarter - quarter / 2.0)


def apply_bphi(params: DunklParams, f: Callable[[float], float], phi: float,
               h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """B_φ f with the reflections φ → π−φ (R₁) and φ → −φ (R₂)."""
    h, stencil = resolve_step(h, stencil)
    _refuse_near(angle_clearance(phi), h, "angle to a multiple of pi/2")
    mu1, mu2 = params.mu1, params.mu2
    c, s = math.cos(phi), math.sin(phi)
    value = float(f(phi))
    d1 = derivative(f, phi, 1, h, stencil)
    d2 = derivative(f, phi, 2, h, stencil)
    return (-0.5 * d2
            + (mu1 * s / c - mu2 * c / s) * d1
            + mu1 * (value - float(f(math.pi - phi))) / (2.0 * c * c)
            + mu2 * (value - float(f(-phi))) / (2.0 * s * s))


def commutator_check(params: DunklParams, f: CartFunction, p, axes: Tuple[Axis, Axis],
                     h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """Residual of [x_i, D_i] = −(1 + 2μ_i R_i) (same axis) or [D_i, D_j] = 0.

    On functions even in x_i the first identity reads −(1+2μ_i)R_i.
    """
    p = _point(p)
    first, second = axes
    if first is second:
        xi = p[first.value]
        times_x = lambda x, y, z: (x, y, z)[first.value] * f(x, y, z)
        commutator = xi * dunkl_derivative(first, params, f, p, h, stencil) \
            - dunkl_derivative(first, params, times_x, p, h, stencil)
        return abs(commutator + f(*p) + 2.0 * first.mu(params) * reflect(first, f, p))
    d_second = dunkl_operator(second, params, f, h, stencil)
    d_first = dunkl_operator(first, params, f, h, stencil)
    return abs(dunkl_derivative(first, params, d_second, p, h, stencil)
               - dunkl_derivative(second, params, d_first, p, h, stencil))


def algebra_residuals(params: DunklParams, f: CartFunction, p,
                      h: Optional[float] = None, stencil: Optional[int] = None) -> Dict[str, float]:
    """Residuals of the reflection/Dunkl identities at one point, worst over axes."""
    p = _point(p)
    out = {
        "reflection_involution": 0.0,
        "derivative_anticommutation": 0.0,
        "dunkl_anticommutation": 0.0,
        "cross_commutation": 0.0,
        "xd_commutator": 0.0,
        "dunkl_commutator": 0.0,
    }

    def worst(key: str, value: float) -> None:
        out[key] = max(out[key], value)

    for axis in Axis:
        twice = reflected(axis, reflected(axis, f))
        worst("reflection_involution", abs(twice(*p) - f(*p)))
        # ∂_i R_i = −R_i ∂_i
        d_of_reflected = partial_derivative(axis, reflected(axis, f), p, h, stencil)
        reflected_d = partial_derivative(axis, f, axis.reflect_point(p), h, stencil)
        worst("derivative_anticommutation", abs(d_of_reflected + reflected_d))
        # R_i D_i = −D_i R_i
        r_d = dunkl_derivative(axis, params, f, axis.reflect_point(p), h, stencil)
        d_r = dunkl_derivative(axis, params, reflected(axis, f), p, h, stencil)
        worst("dunkl_anticommutation", abs(r_d + d_r))
        worst("xd_commutator", commutator_check(params, f, p, (axis, axis), h, stencil))
        for other in Axis:
            if other is axis:
                continue
            ij = reflect(axis, reflected(other, f), p)
            ji = reflect(other, reflected(axis, f), p)
            r_then_d = dunkl_derivative(other, params, f, axis.reflect_point(p), h, stencil)
            d_then_r = dunkl_derivative(other, params, reflected(axis, f), p, h, stencil)
            dr = partial_derivative(other, reflected(axis, f), p, h, stencil)
            rd = partial_derivative(other, f, axis.reflect_point(p), h, stencil)
            worst("cross_commutation", max(abs(ij - ji), abs(r_then_d - d_then_r), abs(dr - rd)))
            if other.value > axis.value:
                worst("dunkl_commutator", commutator_check(params, f, p, (axis, other), h, stencil))
    return out


def _monomial(a: int, b: int, c: int) -> CartFunction:
    return lambda x, y, z: x ** a * y ** b * z ** c


def function_battery() -> Dict[str, CartFunction]:
    """Fixed set of test functions: monomials to degree 4 and two Gaussians."""
    battery: Dict[str, CartFunction] = {}
    for degree in range(5):
        for a in range(degree + 1):
            for b in range(degree - a + 1):
                c = degree - a - b
                battery[f"x^{a} y^{b} z^{c}"] = _monomial(a, b, c)
    battery["gauss"] = lambda x, y, z: math.exp(-(x * x + y * y + z * z))
    battery["gauss_shifted"] = lambda x, y, z: math.exp(-((x - 0.3) ** 2 + (y + 0.2) ** 2 + (z - 0.1) ** 2))
    return battery


def interior_points(rng: np.random.Generator, count: int, half_width: float = 1.5,
                    clearance: float = 0.1) -> list:
    """Random Cartesian points with every coordinate at least `clearance` from 0."""
    points = []
    while len(points) < count:
        candidate = rng.uniform(-half_width, half_width, size=3)
        if np.all(np.abs(candidate) >= clearance):
            points.append(CartPoint(*(float(c) for c in candidate)))
    return points

# numdiff.py
"""Central finite-difference stencils shared by the operator and residual code."""
from typing import Callable, Optional, Sequence, Tuple

from config import get_tolerances

# offset -> weight, derivative divided by h**order afterwards
STENCILS = {
    3: {
        1: ((-1, -0.5), (1, 0.5)),
        2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    },
    5: {
        1: ((-2, 1.0 / 12.0), (-1, -8.0 / 12.0), (1, 8.0 / 12.0), (2, -1.0 / 12.0)),
        2: ((-2, -1.0 / 12.0), (-1, 16.0 / 12.0), (0, -30.0 / 12.0), (1, 16.0 / 12.0), (2, -1.0 / 12.0)),
    },
}

# truncation order of each stencil, used by Richardson extrapolation
STENCIL_ORDER = {3: 2, 5: 4}

MIN_STEP = 1e-7
MAX_STEP = 1e-3


def resolve_step(h: Optional[float] = None, stencil: Optional[int] = None) -> Tuple[float, int]:
    """Fill in the configured step and stencil where the caller left them out."""
    tolerances = get_tolerances()
    h = tolerances.fd_step if h is None else float(h)
    stencil = tolerances.fd_stencil if stencil is None else int(stencil)
    if stencil not in STENCILS:
        raise ValueError(f"unsupported stencil {stencil}; use 3 or 5")
    if not MIN_STEP <= h <= MAX_STEP:
        raise ValueError(f"finite-difference step {h} outside [{MIN_STEP:g}, {MAX_STEP:g}]")
    return h, stencil


def derivative(f: Callable[[float], float], x: float, order: int = 1,
               h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """First or second derivative of a scalar function by a central stencil."""
    h, stencil = resolve_step(h, stencil)
    weights = STENCILS[stencil][order]
    total = 0.0
    for offset, weight in weights:
        total += weight * float(f(x + offset * h))
    return total / h ** order


def richardson(f: Callable[[float], float], x: float, order: int = 1,
               h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """Richardson-extrapolated derivative from steps h and h/2."""
    h, stencil = resolve_step(h, stencil)
    p = STENCIL_ORDER[stencil]
    coarse = derivative(f, x, order, h, stencil)
    fine = derivative(f, x, order, h / 2.0, stencil)
    return (2 ** p * fine - coarse) / (2 ** p - 1)


def partial(f: Callable[..., float], point: Sequence[float], axis: int, order: int = 1,
            h: Optional[float] = None, stencil: Optional[int] = None) -> float:
    """Partial derivative of f(x, y, z) along one Cartesian axis."""
    coords = [float(c) for c in point]

    def along(t: float) -> float:
        shifted = list(coords)
        shifted[axis] = t
        return f(*shifted)

    return derivative(along, coords[axis], order, h, stencil)

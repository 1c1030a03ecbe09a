import math

import pytest

from numdiff import derivative, partial, resolve_step, richardson


def test_five_point_stencil_accuracy():
    assert derivative(math.sin, 0.3) == pytest.approx(math.cos(0.3), abs=1e-10)
    assert derivative(math.sin, 0.3, order=2) == pytest.approx(-math.sin(0.3), abs=1e-8)


def test_three_point_stencil_is_coarser_but_close():
    approx = derivative(math.exp, 0.5, h=1e-4, stencil=3)
    assert approx == pytest.approx(math.exp(0.5), abs=1e-7)


def test_richardson_improves_three_point():
    exact = math.cos(1.1)
    plain = abs(derivative(math.sin, 1.1, h=1e-3, stencil=3) - exact)
    extrapolated = abs(richardson(math.sin, 1.1, h=1e-3, stencil=3) - exact)
    assert extrapolated < plain / 100.0


def test_partial_derivative_along_axis():
    f = lambda x, y, z: x * y * z + y ** 2
    assert partial(f, (1.0, 2.0, 3.0), axis=1) == pytest.approx(1.0 * 3.0 + 4.0, abs=1e-9)


@pytest.mark.parametrize("h, stencil", [(1.0, 5), (2e-3, 5), (1e-2, 3), (1e-9, 5), (1e-3, 7)])
def test_resolve_step_rejects(h, stencil):
    with pytest.raises(ValueError):
        resolve_step(h, stencil)


def test_step_bounds_are_inclusive():
    assert resolve_step(1e-3, 5) == (1e-3, 5)
    assert resolve_step(1e-7, 3) == (1e-7, 3)

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from errors import ClassificationError, DomainError, InputError, RegularityError, SingularPointError
from specfun import (BesselOrder, LommelParams, bessel_j, bessel_zero, bessel_zeros, jacobi_p, jacobi_reference,
                     jacobi_scale, log_gamma, lommel_residual, scaled_bessel)


@pytest.mark.parametrize("nu, index, expected", [
    (0.0, 1, 2.404825557695773),
    (1.0, 1, 3.831705970207512),
    (0.0, 2, 5.520078110286311),
])
def test_tabulated_zeros(nu, index, expected):
    assert bessel_zero(nu, index).value == pytest.approx(expected, abs=1e-12)


def test_third_zero_of_negative_order():
    assert bessel_zero(-0.3, 3).value == pytest.approx(8.177851519, abs=1e-8)


@pytest.mark.parametrize("eps", [1e-13, 1e-9, 1e-3])
def test_first_zero_for_order_just_above_minus_one(eps):
    nu = -1.0 + eps
    first, second = bessel_zeros(nu, 2)
    # 1 − (x/2)²/(ν+1) + ... = 0 puts the first zero near 2√(ν+1)
    assert first.value == pytest.approx(2.0 * math.sqrt(eps), rel=1e-2)
    assert abs(bessel_j(nu, first.value)) <= 1e-10
    lo, hi = first.bracket
    assert 0.0 < lo < first.value < hi
    # the next zero approaches j_{1,1}
    assert second.value == pytest.approx(3.831705970207512, abs=5e-3)


def test_zero_carries_certifying_bracket():
    zero = bessel_zero(2.5, 4)
    lo, hi = zero.bracket
    assert lo <= zero.value <= hi
    assert special.jv(2.5, lo) * special.jv(2.5, hi) <= 0.0
    assert zero.order == BesselOrder(2.5)
    assert zero.index == 4


@pytest.mark.parametrize("nu", [0, 1, 2, 3])
def test_zeros_interlace(nu):
    low = [z.value for z in bessel_zeros(nu, 5)]
    high = [z.value for z in bessel_zeros(nu + 1, 4)]
    for n in range(4):
        assert low[n] < high[n] < low[n + 1]


def test_zeros_increase_and_are_cached_consistently():
    values = [z.value for z in bessel_zeros(4.2, 6)]
    assert values == sorted(values)
    assert bessel_zero(4.2, 3).value == values[2]


def test_concurrent_zero_requests_agree():
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda _: bessel_zero(3.7, 5).value, range(8)))
    assert len(set(results)) == 1


@pytest.mark.parametrize("nu, index, error", [
    (-1.5, 1, DomainError),
    (-1.0, 1, DomainError),
    (0.0, 0, InputError),
    (float("nan"), 1, InputError),
])
def test_zero_input_errors(nu, index, error):
    with pytest.raises(error):
        bessel_zero(nu, index)


def test_bessel_j_values_and_domain():
    assert bessel_j(0, 0.0) == 1.0
    x = 1.7
    assert bessel_j(0.5, x) == pytest.approx(math.sqrt(2 / (math.pi * x)) * math.sin(x), rel=1e-14)
    with pytest.raises(RegularityError):
        bessel_j(-0.5, 0.0)
    with pytest.raises(DomainError):
        bessel_j(1, -1.0)
    with pytest.raises(InputError):
        bessel_j(1, float("inf"))


def test_scaled_bessel_is_finite_at_origin():
    assert scaled_bessel(0, 0, 0.0) == 1.0
    assert scaled_bessel(1, -1, 0.0) == pytest.approx(0.5, rel=1e-15)
    assert scaled_bessel(3, -3, 0.0) == pytest.approx(1.0 / (8 * 6), rel=1e-14)


def test_scaled_bessel_matches_direct_product():
    for x in (0.3, 1.5, 1.99, 2.01, 7.0):
        assert scaled_bessel(2.5, 0, x) == pytest.approx(special.jv(2.5, x), rel=1e-13)
        assert scaled_bessel(2.0, -2.0, x) == pytest.approx(x ** -2 * special.jv(2.0, x), rel=1e-13)


def test_scaled_bessel_array_input():
    x = np.array([-1.0, 0.0, 1.0, 3.0])
    values = scaled_bessel(1, 0, x)
    assert values.shape == (4,)
    assert values[0] == -values[2]
    assert values[1] == 0.0


def test_scaled_bessel_refusals():
    with pytest.raises(RegularityError):
        scaled_bessel(2, -3, 1.0)
    with pytest.raises(DomainError):
        scaled_bessel(0.5, 0, -1.0)


@settings(max_examples=60, deadline=None)
@given(nu=st.floats(-0.9, 6.0), s=st.integers(0, 3), x=st.floats(0.01, 20.0))
def test_parity_law(nu, s, x):
    plus = scaled_bessel(nu, s - nu, x)
    minus = scaled_bessel(nu, s - nu, -x)
    assert minus == pytest.approx((-1) ** s * plus, rel=1e-13, abs=1e-300)


@settings(max_examples=60, deadline=None)
@given(nu=st.floats(0.1, 6.0), x=st.floats(0.5, 25.0))
def test_three_term_recurrence(nu, x):
    below, here, above = bessel_j(nu - 1.0, x), bessel_j(nu, x), bessel_j(nu + 1.0, x)
    rhs = 2.0 * nu / x * here
    assert abs(below + above - rhs) <= 1e-11 * (abs(below) + abs(above) + abs(rhs))


def test_jacobi_known_values():
    assert jacobi_p(1, 0.2, 0.3, 0.5) == pytest.approx(0.575, rel=1e-14)
    # Legendre P5(0.3)
    assert jacobi_p(5, 0.0, 0.0, 0.3) == pytest.approx(0.34538625, rel=1e-12)
    assert jacobi_p(0, 1.3, -0.4, 0.1) == 1.0


@settings(max_examples=60, deadline=None)
@given(k=st.integers(0, 10), alpha=st.floats(-0.9, 4.0), beta=st.floats(-0.9, 4.0), x=st.floats(-1.0, 1.0))
def test_jacobi_against_scipy(k, alpha, beta, x):
    expected = special.eval_jacobi(k, alpha, beta, x)
    assert jacobi_p(k, alpha, beta, x) == pytest.approx(expected, rel=1e-10, abs=1e-10)


@settings(max_examples=80, deadline=None)
@given(k=st.integers(0, 20), alpha=st.floats(-0.9, 4.0), beta=st.floats(-0.9, 4.0), x=st.floats(-1.0, 1.0))
def test_jacobi_recurrence_matches_extended_precision(k, alpha, beta, x):
    error = abs(jacobi_p(k, alpha, beta, x) - jacobi_reference(k, alpha, beta, x))
    assert error <= 1e-11 * jacobi_scale(k, alpha, beta)


def test_jacobi_reference_at_degree_twenty():
    # P_k^{(α,β)}(1) = C(k+α, k)
    assert jacobi_reference(20, 0.5, 1.5, 1.0) == pytest.approx(special.binom(20.5, 20), rel=1e-12)
    assert jacobi_p(20, 0.5, 1.5, 1.0) == pytest.approx(special.binom(20.5, 20), rel=1e-12)
    assert jacobi_scale(20, 0.5, 1.5) == pytest.approx(special.binom(21.5, 20), rel=1e-12)


@pytest.mark.parametrize("args, error", [
    ((1.5, 0.0, 0.0, 0.2), ClassificationError),
    ((-1, 0.0, 0.0, 0.2), ClassificationError),
    ((2, -1.0, 0.0, 0.2), DomainError),
    ((2, 0.0, 0.0, 1.5), DomainError),
])
def test_jacobi_errors(args, error):
    with pytest.raises(error):
        jacobi_p(*args)


def test_log_gamma():
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-15)
    with pytest.raises(DomainError):
        log_gamma(0.0)


def test_lommel_reduction_of_axial_solution():
    # ξ^{1/2−μ₃} J_{μ₃−1/2}(ξ) with μ₃ = 1.5
    params = LommelParams(alpha=-1.0, beta=1.0, gamma=1.0, nu=1.0)
    assert params.is_regular
    assert lommel_residual(params, params.canonical_solution(), 2.3) < 1e-6
    with pytest.raises(SingularPointError):
        lommel_residual(params, params.canonical_solution(), 1e-3)


def test_irregular_lommel_parameters():
    assert not LommelParams(alpha=-2.0, beta=1.0, gamma=1.0, nu=1.0).is_regular

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special
from scipy.integrate import quad

from dunkl_core import DunklParams
from errors import ClassificationError, DomainError, InputError, RegularityError
from states import (CylinderGeometry, WellKind, axial_even, axial_free, axial_general, axial_odd, axial_residual,
                    normalized, radial_residual, radial_state, radial_state_from_indices)

J01 = 2.404825557695773
J11 = 3.831705970207512
GEOM = CylinderGeometry(r_c=10.0, h_half=15.0)
INFINITE = CylinderGeometry(r_c=10.0, kind=WellKind.INFINITE)


def test_geometry_validation():
    with pytest.raises(InputError):
        CylinderGeometry(r_c=0.0, h_half=1.0)
    with pytest.raises(InputError):
        CylinderGeometry(r_c=1.0)
    assert not INFINITE.finite
    assert CylinderGeometry(r_c=1.0, kind="infinite").kind is WellKind.INFINITE


def test_axial_ground_energies():
    assert axial_even(GEOM, 0, 1).energy == pytest.approx(J01 ** 2 / 450.0, rel=1e-12)
    assert axial_even(GEOM, 0, 1).energy == pytest.approx(0.012851524, abs=1e-9)
    assert axial_odd(GEOM, 0, 1).energy == pytest.approx(J11 ** 2 / 450.0, rel=1e-12)


def test_axial_states_vanish_at_the_walls():
    for m in range(4):
        for n_prime in range(1, 4):
            for state in (axial_even(GEOM, m, n_prime), axial_odd(GEOM, m, n_prime)):
                assert abs(state(15.0)) <= 1e-10
                assert abs(state(-15.0)) <= 1e-10


def test_axial_parity_at_origin():
    assert axial_odd(GEOM, 1, 2)(0.0) == 0.0
    assert axial_even(GEOM, 0, 1)(0.0) == 1.0


@settings(max_examples=50, deadline=None)
@given(m=st.integers(0, 5), n_prime=st.integers(1, 4), z=st.floats(0.0, 15.0))
def test_axial_parity(m, n_prime, z):
    for state in (axial_even(GEOM, m, n_prime), axial_odd(GEOM, m, n_prime)):
        assert state(-z) == pytest.approx(state.parity * state(z), rel=1e-12, abs=1e-300)


def test_axial_energies_increase_and_interlace():
    for m in range(6):
        even = [axial_even(GEOM, m, n).energy for n in range(1, 6)]
        odd = [axial_odd(GEOM, m, n).energy for n in range(1, 6)]
        assert even == sorted(even)
        for n in range(4):
            assert even[n] < odd[n] < even[n + 1]


def test_half_height_doubling_quarters_the_energy():
    tall = CylinderGeometry(r_c=10.0, h_half=30.0)
    assert axial_even(tall, 2, 3).energy == pytest.approx(axial_even(GEOM, 2, 3).energy / 4.0, rel=1e-12)


def test_axial_eigen_residual():
    for state in (axial_even(GEOM, 0, 1), axial_even(GEOM, 3, 2), axial_odd(GEOM, 1, 3), axial_odd(GEOM, 4, 1)):
        for z in (0.7, 3.3, -5.0, 11.9):
            assert axial_residual(state, z) <= 1e-6


def test_quantization_of_m():
    with pytest.raises(ClassificationError):
        axial_even(GEOM, 0.5, 1)
    state = axial_even(GEOM, 0.5, 1, unquantized=True)
    assert state.order == 0.5
    with pytest.raises(DomainError):
        axial_even(GEOM, -1.0, 1, unquantized=True)
    with pytest.raises(InputError):
        axial_odd(GEOM, 1, 0)


def test_general_mu3():
    state = axial_general(GEOM, 0.8, 1, 1)
    omega = special.jn_zeros(0, 1)[0]
    assert state.order == pytest.approx(0.3)
    assert state.energy > 0.0
    assert state.energy != pytest.approx(omega ** 2 / 450.0)
    assert axial_residual(state, 4.1) <= 1e-6
    with pytest.raises(ClassificationError):
        axial_general(GEOM, 0.8, 0, 1)


def test_confined_states_need_finite_height():
    with pytest.raises(DomainError):
        axial_even(INFINITE, 0, 1)


def test_free_axial_states():
    state = axial_free(0, 1, 1.0)
    assert state.energy == 0.5
    assert abs(state(2.404825558)) <= 1e-9
    assert axial_free(2, -1, 0.3).energy == pytest.approx(0.045)
    confined = axial_even(GEOM, 1, 2)
    free = axial_free(1, 1, confined.kappa, INFINITE)
    for z in (0.5, 4.0, -7.5):
        assert free(z) == pytest.approx(confined(z), rel=1e-14)


@pytest.mark.parametrize("k", [0.0, -1.0])
def test_free_axial_needs_positive_k(k):
    with pytest.raises(DomainError):
        axial_free(0, 1, k)


def test_free_axial_rejects_finite_geometry():
    with pytest.raises(DomainError):
        axial_free(0, 1, 1.0, GEOM)


def test_radial_ground_energy_and_origin():
    state = radial_state_from_indices(GEOM, 1, 0, 1)
    assert state.energy == pytest.approx(J11 ** 2 / 200.0, rel=1e-12)
    assert radial_state_from_indices(GEOM, 0, 0, 1)(0.0) == 1.0
    assert radial_state_from_indices(GEOM, 3, 1, 2)(0.0) == 0.0


def test_radial_boundary_and_residual():
    for N, M, n in ((0, 0, 1), (2, 0, 5), (4, 2, 4), (6, 2, 3), (5, 4, 5), (3, 3, 2)):
        state = radial_state_from_indices(GEOM, N, M, n)
        assert abs(state(10.0)) <= 1e-10
        for rho in (0.3, 2.5, 7.1, 9.8):
            assert radial_residual(state, rho) <= 1e-6


def test_radial_parity():
    odd = radial_state_from_indices(GEOM, 3, 2, 1)
    even = radial_state_from_indices(GEOM, 4, 2, 1)
    assert odd.parity == -1 and even.parity == 1
    assert odd(-2.0) == -odd(2.0)
    assert even(-2.0) == even(2.0)


def test_radial_classification_errors():
    params = DunklParams.from_quantum_numbers(1, 0)
    with pytest.raises(ClassificationError):
        radial_state(GEOM, 1, 1, params, 1)
    with pytest.raises(RegularityError):
        radial_state(GEOM, 1, -2, params, 1)
    with pytest.raises(RegularityError):
        radial_state_from_indices(GEOM, 1, 2, 1)
    with pytest.raises(ClassificationError):
        radial_state(GEOM, 1, 2, DunklParams(0.2, 0.5, 0.5), 1)


def test_radial_state_outside_quantization():
    params = DunklParams(0.2, 0.5, 0.5)
    state = radial_state(GEOM, 1, 2, params, 1, require_quantized=False)
    assert state.n_cap == pytest.approx(2.7)
    assert abs(state(10.0)) <= 1e-10


def test_normalized_axial_state():
    state = normalized(axial_even(GEOM, 0, 1))
    # weight |z|^{2 mu3} with mu3 = 1/2
    norm, _ = quad(lambda z: state(z) ** 2 * z, 0.0, 15.0, epsabs=1e-13, epsrel=1e-12, limit=200)
    assert 2.0 * norm == pytest.approx(1.0, abs=1e-8)


def test_normalized_radial_state():
    state = normalized(radial_state_from_indices(GEOM, 2, 1, 2))
    norm, _ = quad(lambda r: state(r) ** 2 * r ** 3, 0.0, 10.0, epsabs=1e-13, epsrel=1e-12, limit=200)
    assert norm == pytest.approx(1.0, abs=1e-8)


def test_free_states_are_not_normalizable():
    with pytest.raises(DomainError):
        normalized(axial_free(0, 1, 1.0))

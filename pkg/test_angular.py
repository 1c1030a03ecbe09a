import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from angular import (AngularSector, angular_overlap, bphi_residual, classify_sectors, effective_degree, eta,
                     lz_identity_residual, make_mode, numerical_eta, orthonormality_matrix, phi_eigenfunction,
                     s_squared)
from dunkl_core import DunklParams
from errors import ClassificationError, DomainError, NormalizationUndefinedError, SingularPointError

PARAMS = DunklParams(0.3, 0.7, 0.5)
SECTORS = [info.sector for info in classify_sectors()]


def test_sector_table():
    rows = [(info.sector.e1, info.sector.e2, info.r1, info.r2, info.product, info.ell_values)
            for info in classify_sectors()]
    assert rows == [
        (0, 0, 1, 1, 1, "0, 1, 2, ..."),
        (1, 1, -1, -1, 1, "0, 1, 2, ..."),
        (0, 1, 1, -1, -1, "1/2, 3/2, 5/2, ..."),
        (1, 0, -1, 1, -1, "1/2, 3/2, 5/2, ..."),
    ]
    assert AngularSector.from_parities(-1, 1) == AngularSector(1, 0)
    with pytest.raises(ClassificationError):
        AngularSector(2, 0)


def test_s_squared_examples():
    assert s_squared(DunklParams(1.0, 1.0, 0.5), 2) == 12.0
    assert s_squared(PARAMS, 1) == pytest.approx(3.0)
    assert s_squared(PARAMS, 0) == 0.0


@pytest.mark.parametrize("sector, twoell", [
    (AngularSector(0, 0), 1),
    (AngularSector(0, 1), 2),
    (AngularSector(1, 1), 0),
])
def test_mismatched_twoell_is_rejected(sector, twoell):
    with pytest.raises(ClassificationError):
        make_mode(PARAMS, sector, twoell)


def test_effective_degree():
    assert effective_degree(AngularSector(0, 0), 4) == 2
    assert effective_degree(AngularSector(1, 1), 4) == 1
    assert effective_degree(AngularSector(1, 0), 5) == 2


def test_twoell_cap():
    with pytest.raises(DomainError):
        make_mode(PARAMS, AngularSector(0, 0), 42)


def test_free_case_normalization():
    free = DunklParams(0.0, 0.0, 0.5)
    mode = make_mode(free, AngularSector(0, 0), 2)
    assert mode.eta == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-14)
    ground = make_mode(free, AngularSector(0, 0), 0)
    assert phi_eigenfunction(free, ground, 1.234) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-14)


@pytest.mark.parametrize("sector", SECTORS)
def test_orthonormality(sector):
    matrix = orthonormality_matrix(PARAMS, sector, 4)
    assert np.max(np.abs(matrix - np.eye(4))) <= 1e-8


def test_cross_sector_overlaps_vanish():
    modes = [make_mode(PARAMS, sector, sector.lowest_twoell + 2) for sector in SECTORS]
    for i, a in enumerate(modes):
        for b in modes[i + 1:]:
            assert angular_overlap(PARAMS, a, b) == 0.0


@pytest.mark.parametrize("sector", SECTORS)
def test_closed_form_matches_quadrature(sector):
    for twoell in range(sector.lowest_twoell, sector.lowest_twoell + 8, 2):
        mode = make_mode(PARAMS, sector, twoell)
        assert mode.eta == pytest.approx(numerical_eta(PARAMS, sector, twoell), rel=1e-8)


def test_printed_convention_falls_back_with_warning(caplog):
    sector = AngularSector(1, 1)
    with caplog.at_level(logging.WARNING):
        mode = make_mode(PARAMS, sector, 2, convention="printed")
    assert mode.eta_source == "numerical"
    assert "normalizing numerically" in caplog.text
    assert mode.eta == pytest.approx(make_mode(PARAMS, sector, 2).eta, rel=1e-8)
    with pytest.raises(NormalizationUndefinedError):
        eta(PARAMS, mode, convention="printed")


def test_printed_convention_agrees_for_low_degrees():
    sector = AngularSector(0, 0)
    for twoell in (2, 4):
        printed = make_mode(PARAMS, sector, twoell, convention="printed")
        assert printed.eta_source == "closed_form"
        assert printed.eta == pytest.approx(make_mode(PARAMS, sector, twoell).eta, rel=1e-13)


def test_unknown_convention():
    with pytest.raises(ValueError):
        make_mode(PARAMS, AngularSector(0, 0), 2, convention="bogus")


@settings(max_examples=40, deadline=None)
@given(phi=st.floats(0.0, 2 * math.pi), index=st.integers(0, 3), step=st.integers(0, 4))
def test_reflection_parity(phi, index, step):
    sector = SECTORS[index]
    twoell = sector.lowest_twoell + 2 * step
    mode = make_mode(PARAMS, sector, twoell)
    value = phi_eigenfunction(PARAMS, mode, phi)
    scale = max(1.0, abs(value))
    assert phi_eigenfunction(PARAMS, mode, math.pi - phi) == pytest.approx(sector.r1 * value, abs=1e-12 * scale)
    assert phi_eigenfunction(PARAMS, mode, -phi) == pytest.approx(sector.r2 * value, abs=1e-12 * scale)


@pytest.mark.parametrize("sector", SECTORS)
def test_bphi_eigenvalue(sector):
    start = sector.lowest_twoell
    for twoell in range(start, start + 8, 2):
        mode = make_mode(PARAMS, sector, twoell)
        for phi in (0.4, 1.1, 2.0, 4.0, 5.5):
            assert bphi_residual(PARAMS, mode, phi) <= 1e-5


@pytest.mark.parametrize("sector", SECTORS)
def test_lz_identity(sector):
    mode = make_mode(PARAMS, sector, sector.lowest_twoell + 2)
    for phi in (0.5, 2.3, 3.9):
        assert lz_identity_residual(PARAMS, mode, phi) <= 1e-5


def test_lz_identity_refuses_axes():
    mode = make_mode(PARAMS, AngularSector(0, 0), 2)
    with pytest.raises(SingularPointError):
        lz_identity_residual(PARAMS, mode, math.pi / 2)


@pytest.mark.parametrize("phi, stencil", [
    (0.0125, 5),
    (math.pi / 2 - 0.0125, 5),
    (0.0112, 3),
])
def test_lz_identity_evaluates_every_angle_it_accepts(phi, stencil):
    mode = make_mode(PARAMS, AngularSector(0, 0), 2)
    assert math.isfinite(lz_identity_residual(PARAMS, mode, phi, h=1e-3, stencil=stencil))


@pytest.mark.parametrize("phi, stencil", [(0.0115, 5), (0.0105, 3)])
def test_lz_identity_refuses_nested_stencils_near_axes(phi, stencil):
    mode = make_mode(PARAMS, AngularSector(0, 0), 2)
    with pytest.raises(SingularPointError):
        lz_identity_residual(PARAMS, mode, phi, h=1e-3, stencil=stencil)


def test_eigenfunction_accepts_arrays():
    mode = make_mode(PARAMS, AngularSector(0, 1), 3)
    grid = np.linspace(0.0, 2 * math.pi, 9)
    values = phi_eigenfunction(PARAMS, mode, grid)
    assert values.shape == (9,)
    assert values[0] == pytest.approx(0.0, abs=1e-15)

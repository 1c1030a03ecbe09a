import json
import math

import pandas as pd
import pytest

import figures
from angular import AngularSector, make_mode
from dunkl_core import DunklParams
from spectrum import enumerate_levels, levels_frame
from states import CylinderGeometry, axial_free, radial_state_from_indices

GEOM = CylinderGeometry(r_c=10.0, h_half=15.0)


@pytest.fixture(scope="module")
def levels():
    return enumerate_levels(GEOM, max_N=3, max_m=1, max_n=2, max_n_prime=2)


def test_csv_round_trip_preserves_energies(levels, tmp_path):
    path = tmp_path / "levels.csv"
    text = figures.write_table(levels_frame(levels), path, "csv", "spectrum")
    assert "\r" not in text
    assert path.read_text() == text
    frame = pd.read_csv(path, float_precision="round_trip")
    assert (frame["e_radial"] + frame["e_axial"] == frame["e_total"]).all()
    assert list(frame["e_total"]) == [level.e_total for level in levels]


def test_json_document(levels, tmp_path):
    path = tmp_path / "nested" / "levels.json"
    figures.write_table(levels_frame(levels), path, "json", "spectrum")
    document = json.loads(path.read_text())
    assert document["kind"] == "spectrum"
    assert document["columns"][-1] == "e_total"
    assert len(document["rows"]) == len(levels)
    for row, level in zip(document["rows"], levels):
        assert row["e_total"] == level.e_total
        assert row["e_radial"] + row["e_axial"] == row["e_total"]


def test_unknown_format():
    with pytest.raises(ValueError):
        figures.write_table(pd.DataFrame({"a": [1]}), None, "xml")


def test_energy_panels():
    radial = figures.energy_panel(figures.RADIAL_ENERGIES)
    assert len(radial) == 15
    for _, rows in radial.groupby("N"):
        assert figures.is_increasing(list(rows["e_radial"]))
    odd = figures.energy_panel(figures.AXIAL_ODD_ENERGIES)
    even = figures.energy_panel(figures.AXIAL_EVEN_ENERGIES)
    assert len(odd) == len(even) == 15
    assert (odd["e_axial"] > even["e_axial"]).all()


def test_curve_panels_shape_and_boundaries():
    radial = figures.curve_panel(figures.RADIAL_ODD_CURVES, points=41)
    assert list(radial.columns) == ["N", "M", "n", "rho", "value"]
    assert len(radial) == 3 * 41
    for _, rows in radial.groupby(["N", "M", "n"]):
        assert rows["rho"].iloc[0] == 0.0
        assert rows["rho"].iloc[-1] == 10.0
        assert abs(rows["value"].iloc[-1]) <= 1e-10
    axial = figures.curve_panel(figures.AXIAL_EVEN_CURVES, points=41)
    assert list(axial.columns) == ["m", "n_prime", "z", "value"]
    for _, rows in axial.groupby(["m", "n_prime"]):
        assert abs(rows["value"].iloc[0]) <= 1e-10
        assert abs(rows["value"].iloc[-1]) <= 1e-10


def test_curve_samplers():
    state = radial_state_from_indices(GEOM, 2, 0, 1)
    frame = figures.radial_curve(state, 11)
    assert frame["value"].iloc[0] == state(0.0)
    with pytest.raises(ValueError):
        figures.axial_curve(axial_free(0, 1, 1.0), 11)
    free = figures.axial_curve(axial_free(0, 1, 1.0), 11, extent=5.0)
    assert free["z"].iloc[0] == -5.0
    params = DunklParams(0.3, 0.7, 0.5)
    angular = figures.angular_curve(params, make_mode(params, AngularSector(0, 0), 2), 8)
    assert angular["phi"].iloc[-1] == pytest.approx(2 * math.pi * 7 / 8)


def test_export_figures_is_deterministic(tmp_path):
    first = figures.export_figures(tmp_path / "a", points=25)
    second = figures.export_figures(tmp_path / "b", points=25)
    assert set(first) == {"radial_energies", "axial_odd_energies", "axial_even_energies",
                          "radial_even_curves", "radial_odd_curves", "axial_even_curves", "axial_odd_curves"}
    for name, path in first.items():
        assert path.read_bytes() == second[name].read_bytes()

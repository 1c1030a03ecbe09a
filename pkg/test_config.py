import pytest
from pydantic import ValidationError

from config import RunConfig, Tolerances, load_run_config, load_tolerances
from errors import ConfigError


def test_defaults_match_module_contracts():
    table = Tolerances()
    assert table.derivative_identity == 1e-7
    assert table.second_order_identity == 1e-5
    assert table.orthonormality == 1e-8
    assert table.boundary == 1e-10
    assert table.fd_stencil == 5


def test_overrides_and_unknown_names():
    assert load_tolerances({"fd_step": 1e-4}).fd_step == 1e-4
    with pytest.raises(ConfigError):
        load_tolerances({"no_such_tolerance": 1.0})


def test_environment_override(monkeypatch):
    monkeypatch.setenv("DUNKL_TOL_ORTHONORMALITY", "1e-6")
    assert load_tolerances().orthonormality == 1e-6
    # explicit overrides win over the environment
    assert load_tolerances({"orthonormality": 1e-9}).orthonormality == 1e-9


@pytest.mark.parametrize("field, value", [("fd_stencil", 4), ("fd_step", 1.0), ("fd_step", 5e-3), ("boundary", 0.0)])
def test_invalid_tolerances_rejected(field, value):
    with pytest.raises(ValidationError):
        Tolerances(**{field: value})


def test_parity_and_grid_parsing():
    config = RunConfig(parity="1,-1,-1; 1,1,1", k_grid="0.5, 1.0", orders="1,3,5",
                       tolerances="boundary=1e-9,fd_step=1e-4")
    assert config.parity == [(1, -1, -1), (1, 1, 1)]
    assert config.k_grid == [0.5, 1.0]
    assert config.orders == [1, 3, 5]
    assert config.tolerance_table().boundary == 1e-9


@pytest.mark.parametrize("values", [
    {"parity": "1,2,1"},
    {"r_c": 0},
    {"h_half": -1.0},
    {"geometry": "infinite"},
    {"geometry": "infinite", "k_grid": "-1.0"},
    {"format": "xml"},
    {"tolerances": "bogus=1"},
])
def test_invalid_run_config(values):
    with pytest.raises(ValidationError):
        RunConfig(**values)


def test_config_file_with_flag_precedence(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("R_C=12\nH_HALF=20\nFORMAT=json\nSEED=7\n")
    config = load_run_config(path, {"format": "csv", "seed": None})
    assert config.r_c == 12.0
    assert config.h_half == 20.0
    assert config.format == "csv"
    assert config.seed == 7


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_run_config(tmp_path / "absent.env", {})

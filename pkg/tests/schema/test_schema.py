import pytest
from pydantic import ValidationError

from dsc.core.enums import ExperimentKind, SymbolClass
from dsc.core.errors import ConfigError
from dsc.schema import DirichletPolynomialModel, ExperimentConfig, RunManifest
from dsc.series import DirichletPolynomial, Symbol
from dsc.zeros import AffineMap, MobiusMap, PeriodicSymbol


def test_periodic_symbol_spec():
    config = ExperimentConfig.model_validate(
        {
            "experiment": "count",
            "symbol": {"kind": "periodic", "map": {"type": "mobius", "nu": [1.0, 0.5]}},
            "targets": [2, [1.0, -1.0]],
        }
    )
    symbol = config.build_symbol()
    assert isinstance(symbol, PeriodicSymbol)
    assert isinstance(symbol.disk_map, MobiusMap)
    assert symbol.at_infinity == pytest.approx(1.0 + 0.5j)
    assert config.target_points() == [2 + 0j, 1 - 1j]
    assert config.experiment == ExperimentKind.COUNT


def test_affine_map_accepts_bare_numbers():
    config = ExperimentConfig.model_validate(
        {"symbol": {"kind": "periodic", "map": {"type": "affine", "c": 1.5, "d": 0.5}, "base": 3}}
    )
    symbol = config.build_symbol()
    assert isinstance(symbol.disk_map, AffineMap)
    assert symbol.base == 3


def test_dirichlet_symbol_spec_with_class_alias():
    config = ExperimentConfig.model_validate(
        {
            "symbol": {
                "kind": "dirichlet",
                "phi": {"coeffs": [[1, 1.5, 0.0], [2, 0.5, 0.0]]},
                "class": "G0",
            },
            "function": {"coeffs": [[2, 1.0, 0.0]]},
        }
    )
    symbol = config.build_symbol()
    assert isinstance(symbol, Symbol)
    assert symbol.class_tag == SymbolClass.G0
    assert config.build_function() == DirichletPolynomial.monomial(2)
    dumped = config.model_dump(mode="json", by_alias=True)
    assert dumped["symbol"]["class"] == "G0"


def test_polynomial_model_round_trip():
    f = DirichletPolynomial.from_terms({1: 1.0, 6: 0.5j})
    assert DirichletPolynomialModel.of(f).build() == f
    with pytest.raises(ValidationError):
        DirichletPolynomialModel(coeffs=[(0, 1.0, 0.0)])


def test_config_rejects_unknown_fields_and_missing_parts():
    with pytest.raises(ValidationError):
        ExperimentConfig.model_validate({"experiment": "count", "iterations": 3})
    with pytest.raises(ValidationError):
        ExperimentConfig.model_validate({"experiment": "nonsense"})
    config = ExperimentConfig()
    with pytest.raises(ConfigError):
        config.build_symbol()
    with pytest.raises(ConfigError):
        config.build_function()
    assert config.build_schedule() is None


def test_schedule_model():
    config = ExperimentConfig.model_validate(
        {"schedule": {"T_values": [10, 20, 40], "sigma_values": [0.5, 0.25]}}
    )
    schedule = config.build_schedule()
    assert schedule.T_max == 40
    assert schedule.sigma_min == 0.25


def test_run_manifest():
    manifest = RunManifest(version="0.1.0", experiment="count", seed=1, jobs=2, config={})
    assert manifest.experiment == ExperimentKind.COUNT
    assert manifest.flags == {}

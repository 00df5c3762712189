from dsc.schema.schema import (
    AffineMapModel,
    ComplexPair,
    DirichletPolynomialModel,
    DirichletSymbolSpec,
    ExperimentConfig,
    ExperimentInfo,
    ExponentialMapModel,
    LimitScheduleModel,
    MobiusMapModel,
    PeriodicSymbolSpec,
    PolynomialMapModel,
    RunManifest,
    SymbolSpec,
    as_complex,
    as_pair,
)

__all__ = [
    "AffineMapModel",
    "ComplexPair",
    "DirichletPolynomialModel",
    "DirichletSymbolSpec",
    "ExperimentConfig",
    "ExperimentInfo",
    "ExponentialMapModel",
    "LimitScheduleModel",
    "MobiusMapModel",
    "PeriodicSymbolSpec",
    "PolynomialMapModel",
    "RunManifest",
    "SymbolSpec",
    "as_complex",
    "as_pair",
]

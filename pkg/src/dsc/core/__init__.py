from dsc.core.errors import (
    ConfigError,
    ContourUnresolvedError,
    DscError,
    ExcludedPointError,
    NoZeroFreeEdgeError,
    NumericalError,
    RhsDivergentError,
    SymbolClassError,
)
from dsc.core.pool import parallel_map
from dsc.core.settings import settings

__all__ = [
    "settings",
    "parallel_map",
    "DscError",
    "ConfigError",
    "ExcludedPointError",
    "SymbolClassError",
    "NumericalError",
    "ContourUnresolvedError",
    "NoZeroFreeEdgeError",
    "RhsDivergentError",
]

from dsc.zeros.contour import AnalyticTarget, locate_zeros, safe_rectangle, winding_number
from dsc.zeros.periodic import (
    AffineMap,
    DiskMap,
    ExponentialMap,
    LatticeRows,
    MobiusMap,
    PeriodicSymbol,
    PolynomialMap,
    lattice_rows,
    zeros_periodic_symbol,
)
from dsc.zeros.rectangle import Rectangle, Zero, ZeroSet

__all__ = [
    "AffineMap",
    "AnalyticTarget",
    "DiskMap",
    "ExponentialMap",
    "LatticeRows",
    "MobiusMap",
    "PeriodicSymbol",
    "PolynomialMap",
    "Rectangle",
    "Zero",
    "ZeroSet",
    "lattice_rows",
    "locate_zeros",
    "safe_rectangle",
    "winding_number",
    "zeros_periodic_symbol",
]

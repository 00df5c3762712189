"""
Zero tables behind every counting quantity.

A table holds the solutions of phi(s) = w with Re s above a floor and answers window sums
sum_{sigma < Re s, |Im s| < T} weight(Re s) for many (sigma, T) at once. Periodic symbols (and
single-base polynomials, which are periodic) use their preimage lattice; other polynomials use the
argument principle on a capped rectangle.
"""

import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from dsc.core.enums import SymbolClass
from dsc.core.errors import ConfigError, ExcludedPointError, SymbolClassError
from dsc.series import (
    Character,
    DirichletPolynomial,
    Symbol,
    check_half_plane_mapping,
    twist,
    vertical_period,
)
from dsc.zeros import LatticeRows, PeriodicSymbol, Rectangle, ZeroSet, locate_zeros, safe_rectangle

logger = logging.getLogger(__name__)

CountingSymbol = DirichletPolynomial | Symbol | PeriodicSymbol
Weight = Callable[[np.ndarray], np.ndarray]

_LEFT_EDGE_MARGIN = 1e-7
_DEFAULT_REACH = 2 * math.pi / math.log(2)


def power_weight(a: float) -> Weight:
    return lambda re: np.power(re, a)


def resolve_symbol(phi: CountingSymbol) -> PeriodicSymbol | DirichletPolynomial:
    """Reduce a counting input to a periodic symbol when possible, else to its Dirichlet part."""
    if isinstance(phi, Symbol):
        if phi.c0 != 0:
            raise ConfigError("Counting functions are defined for symbols with c0 = 0")
        phi = phi.phi
    if isinstance(phi, PeriodicSymbol):
        return phi
    if isinstance(phi, DirichletPolynomial):
        return PeriodicSymbol.from_dirichlet(phi) or phi
    raise ConfigError(f"Unsupported symbol type {type(phi).__name__}")


def at_infinity(phi: CountingSymbol) -> complex:
    return complex(resolve_symbol(phi).at_infinity)


def period_of(phi: CountingSymbol) -> float | None:
    symbol = resolve_symbol(phi)
    if isinstance(symbol, PeriodicSymbol):
        return symbol.period
    return vertical_period(symbol)


def twist_symbol(phi: CountingSymbol, chi: Character) -> PeriodicSymbol | DirichletPolynomial:
    symbol = resolve_symbol(phi)
    return symbol.twist(chi) if isinstance(symbol, PeriodicSymbol) else twist(symbol, chi)


def require_g0(phi: CountingSymbol) -> PeriodicSymbol | DirichletPolynomial:
    """Resolve ``phi`` and check that it maps C_0 into C_{1/2}."""
    symbol = resolve_symbol(phi)
    if isinstance(symbol, PeriodicSymbol):
        if symbol.class_tag != SymbolClass.G0:
            raise SymbolClassError(f"Symbol {symbol.disk_map!r} does not map C_0 into C_1/2")
    else:
        check_half_plane_mapping(symbol)
    return symbol


def check_target(phi: CountingSymbol, w: complex) -> None:
    limit = at_infinity(phi)
    if abs(complex(w) - limit) <= 1e-12 * max(1.0, abs(w)):
        raise ExcludedPointError(f"w = {complex(w)} equals phi(+inf) and is excluded from counting")


def zero_free_abscissa(phi: CountingSymbol, w: complex) -> float:
    """
    An abscissa beyond which phi - w has no zeros.

    For polynomials it is the smallest sigma >= 0 with
    sum_{n>=2} |a_n| n^{-sigma} < |w - phi(+inf)| / 2.
    """
    symbol = resolve_symbol(phi)
    if isinstance(symbol, PeriodicSymbol):
        return symbol.zero_free_abscissa(w)
    target = abs(complex(w) - symbol.at_infinity) / 2
    if symbol.abs_tail(0.0) < target:
        return 0.0
    upper = 1.0
    while symbol.abs_tail(upper) >= target:
        upper *= 2
    return float(optimize.brentq(lambda x: symbol.abs_tail(x) - target, 0.0, upper)) + 1e-9


class CountingTable(ABC):
    @abstractmethod
    def window_sums(self, weight: Weight, sigma: float, T_values: Sequence[float]) -> np.ndarray:
        """sum weight(Re s) * multiplicity over solutions with Re s > sigma, |Im s| < T."""

    @abstractmethod
    def real_parts(self, sigma: float) -> np.ndarray:
        """Sorted distinct real parts above sigma."""


@dataclass(frozen=True)
class LatticeTable(CountingTable):
    rows: LatticeRows

    def window_sums(self, weight: Weight, sigma: float, T_values: Sequence[float]) -> np.ndarray:
        mask = self.rows.re > sigma
        if not np.any(mask):
            return np.zeros(len(T_values))
        mass = self.rows.multiplicity[mask] * weight(self.rows.re[mask])
        offset = self.rows.offset[mask]
        p = self.rows.period
        T = np.asarray(T_values, dtype=float)[:, None]
        counts = np.ceil((T - offset) / p) - np.floor((-T - offset) / p) - 1
        return np.maximum(counts, 0) @ mass

    def real_parts(self, sigma: float) -> np.ndarray:
        return np.unique(self.rows.re[self.rows.re > sigma])


@dataclass(frozen=True)
class ZeroTable(CountingTable):
    re: np.ndarray
    im: np.ndarray
    multiplicity: np.ndarray
    T_max: float

    @classmethod
    def from_zero_set(cls, zero_set: ZeroSet, T_max: float) -> "ZeroTable":
        locations = np.array(zero_set.locations, dtype=complex)
        return cls(
            locations.real, locations.imag, np.array(zero_set.multiplicities, dtype=int), T_max
        )

    @classmethod
    def empty(cls, T_max: float) -> "ZeroTable":
        return cls(np.empty(0), np.empty(0), np.empty(0, dtype=int), T_max)

    def window_sums(self, weight: Weight, sigma: float, T_values: Sequence[float]) -> np.ndarray:
        if max(T_values) > self.T_max:
            raise ConfigError(f"Table covers |Im s| < {self.T_max}, asked for {max(T_values)}")
        mask = self.re > sigma
        mass = self.multiplicity[mask] * weight(self.re[mask])
        height = np.abs(self.im[mask])
        return np.array([float(np.sum(mass[height < T])) for T in T_values])

    def real_parts(self, sigma: float) -> np.ndarray:
        return np.unique(self.re[self.re > sigma])


def counting_table(phi: CountingSymbol, w: complex, sigma: float, T_max: float) -> CountingTable:
    symbol = resolve_symbol(phi)
    w = complex(w)
    check_target(symbol, w)
    if T_max <= 0:
        raise ConfigError(f"Window height must be positive, got {T_max}")
    if isinstance(symbol, PeriodicSymbol):
        return LatticeTable(symbol.lattice(w, sigma))
    cap = zero_free_abscissa(symbol, w)
    if cap <= sigma:
        return ZeroTable.empty(T_max)
    reach = vertical_period(symbol) or _DEFAULT_REACH
    margin = _LEFT_EDGE_MARGIN * max(1.0, abs(sigma))
    rect = safe_rectangle(symbol, w, Rectangle(sigma - margin, cap, -T_max - reach, T_max))
    zero_set = locate_zeros(symbol, w, rect)
    logger.debug(f"Counting table from {len(zero_set)} located zeros in {rect}")
    return ZeroTable.from_zero_set(zero_set, T_max)

"""Hyperbolic distance, Schwarz-lemma constants and the half-strip map."""

import cmath
import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize

from dsc.core.errors import ConfigError, ExcludedPointError, SymbolClassError
from dsc.counting import CountingSymbol, at_infinity, resolve_symbol
from dsc.series import vertical_period
from dsc.zeros import PeriodicSymbol

logger = logging.getLogger(__name__)

_FALLBACK_WINDOW = 8 * 2 * math.pi / math.log(2)
_NEAR_BOUNDARY = 1e-2
_SINH_HALF_PI = math.sinh(math.pi / 2)


@dataclass(frozen=True)
class SchwarzGrid:
    """Points of C_0: geometric in Re s, uniform in Im s over one vertical window."""

    re_min: float = 1e-4
    re_max: float = 1e2
    n_re: int = 61
    n_im: int = 128
    window: float | None = None

    def __post_init__(self) -> None:
        if not 0 < self.re_min < self.re_max:
            raise ConfigError(f"Need 0 < re_min < re_max, got {self.re_min}, {self.re_max}")
        if self.n_re < 2 or self.n_im < 1:
            raise ConfigError("Grid needs at least two abscissae and one ordinate")

    def refined(self, factor: int = 2) -> "SchwarzGrid":
        return replace(self, n_re=factor * (self.n_re - 1) + 1, n_im=factor * self.n_im)

    def points(self, phi: CountingSymbol) -> np.ndarray:
        window = self.window or _window(phi)
        re = np.geomspace(self.re_min, self.re_max, self.n_re)
        im = np.linspace(0.0, window, self.n_im, endpoint=False)
        return np.add.outer(re, 1j * im)


def _window(phi: CountingSymbol) -> float:
    symbol = resolve_symbol(phi)
    if isinstance(symbol, PeriodicSymbol):
        return symbol.period
    return vertical_period(symbol) or _FALLBACK_WINDOW


def _margins(phi: CountingSymbol, points: np.ndarray) -> np.ndarray:
    symbol = resolve_symbol(phi)
    margins = np.real(symbol(points)) - 0.5
    if np.any(margins <= 0):
        worst = points.ravel()[np.argmin(margins)]
        raise SymbolClassError(f"Re phi(s) <= 1/2 at s = {complex(worst)}; the symbol is not in G0")
    return margins


def hyperbolic_distance_halfplane(z: complex, w: complex) -> float:
    z, w = complex(z), complex(w)
    if z.real <= 0 or w.real <= 0:
        raise ConfigError(f"Both points must lie in Re s > 0, got {z}, {w}")
    numerator = (abs(z + w.conjugate()) + abs(z - w)) ** 2
    return math.log(numerator / (4 * z.real * w.real))


def schwarz_constant(phi: CountingSymbol, grid: SchwarzGrid | None = None) -> float:
    """Smallest C with Re s <= C((Re s)^2 + 1)(Re phi(s) - 1/2) on the grid."""
    points = (grid or SchwarzGrid()).points(phi)
    margins = _margins(phi, points)
    re = points.real
    return float(np.max(re / ((re**2 + 1) * margins)))


def schwarz_validate(phi: CountingSymbol, C: float, grid: SchwarzGrid | None = None) -> int:
    """Number of grid points violating Re s <= C((Re s)^2 + 1)(Re phi(s) - 1/2)."""
    points = (grid or SchwarzGrid()).points(phi)
    margins = _margins(phi, points)
    re = points.real
    violations = int(np.count_nonzero(re > C * (re**2 + 1) * margins * (1 + 1e-12)))
    if violations:
        logger.info(f"{violations} grid points violate the Schwarz inequality with C = {C:.6g}")
    return violations


def boundary_ratio_proxy(phi: CountingSymbol, grid: SchwarzGrid | None = None) -> float:
    """min of (Re phi(s) - 1/2) / Re s over grid points with Re s < 10^-2."""
    grid = grid or SchwarzGrid()
    if grid.re_min >= _NEAR_BOUNDARY:
        raise ConfigError(f"Grid must reach below Re s = {_NEAR_BOUNDARY}")
    points = grid.points(phi)
    points = points[points.real < _NEAR_BOUNDARY]
    return float(np.min(_margins(phi, points) / points.real))


def disk_abscissa(phi: CountingSymbol, delta: float) -> float:
    """A sigma with phi(s) in D(phi(+inf), delta) whenever Re s > sigma."""
    if delta <= 0:
        raise ConfigError(f"delta must be positive, got {delta}")
    symbol = resolve_symbol(phi)
    if isinstance(symbol, PeriodicSymbol):

        def excess(sigma: float) -> float:
            # |g(z) - g(0)| <= |z| * max_{|z| <= r} |g'|
            r = symbol.base ** (-sigma)
            if r >= 1:
                return math.inf
            return r * symbol.disk_map.derivative_bound(r) - delta

    else:

        def excess(sigma: float) -> float:
            return symbol.abs_tail(sigma) - delta

    lower = 0.0 if math.isfinite(excess(0.0)) else 1e-12
    if excess(lower) < 0:
        return lower
    upper = 1.0
    while excess(upper) >= 0:
        lower, upper = upper, 2 * upper
    return float(optimize.brentq(excess, lower, upper)) + 1e-9


def halfstrip_inverse(s: complex, sigma: float, T: float) -> complex:
    """
    The conformal map of the half-strip Re s > sigma, |Im s| < 2T onto D sending sigma + 2T to 0.

    With zeta = (s - sigma) / 2T and u = sinh(pi zeta / 2) it is
    (u - sinh(pi/2)) / (u + sinh(pi/2)).
    """
    if T <= 0:
        raise ConfigError(f"T must be positive, got {T}")
    s = complex(s)
    if not (s.real > sigma and abs(s.imag) < 2 * T):
        raise ConfigError(f"{s} lies outside the half-strip Re s > {sigma}, |Im s| < {2 * T}")
    u = cmath.sinh(math.pi * (s - sigma) / (4 * T))
    return (u - _SINH_HALF_PI) / (u + _SINH_HALF_PI)


def check_inside(phi: CountingSymbol, w: complex) -> complex:
    w = complex(w)
    if w.real <= 0.5:
        raise ConfigError(f"w must lie in Re w > 1/2, got {w}")
    if w == at_infinity(phi):
        raise ExcludedPointError(f"w = {w} equals phi(+inf)")
    return w

"""
Both sides of the Stanton-type formula

    ||f o phi||_a^2 = |f(phi(+inf))|^2
        + 2^{1-a}/(Gamma(2-a) pi) int_{C_1/2} |f'(w)|^2 M_{phi,1-a}(w) dA(w).
"""

import logging
import math
from dataclasses import asdict, dataclass, replace
from functools import partial

import numpy as np

from dsc.core import parallel_map
from dsc.core.errors import ConfigError, RhsDivergentError
from dsc.core.settings import settings
from dsc.counting import CountingSymbol, mean_counting_value, require_g0, resolve_symbol
from dsc.series import (
    DirichletPolynomial,
    Symbol,
    compose_truncated,
    derivative,
)
from dsc.spaces.norms import SpaceWeight, norm_Da
from dsc.zeros import PeriodicSymbol

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StantonGrid:
    """
    Tensor Gauss-Legendre grid over C_{1/2}.

    Re w - 1/2 runs over geometric panels from ``x_min`` to ``x_cap``; Im w = tau * tan(theta)
    with uniform panels in theta. Both directions get ``cluster`` levels of geometric panels
    around phi(+inf), where the counting function has a logarithmic singularity.
    """

    x_min: float = 1e-6
    x_cap: float = 20.0
    x_panels: int = 40
    theta_panels: int = 32
    order: int = 10
    tau: float = 2.0
    cluster: int = 12

    def refined(self) -> "StantonGrid":
        return replace(self, x_panels=2 * self.x_panels, theta_panels=2 * self.theta_panels)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class StantonCheck:
    lhs: float
    rhs: float
    rel_err: float
    truncation_bound: float | None
    grid: StantonGrid

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "rel_err": self.rel_err,
            "grid_spec": self.grid.to_dict(),
            "truncation_bounds": {"lhs": self.truncation_bound},
        }


def _composite_nodes(knots: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    x, weights = np.polynomial.legendre.leggauss(order)
    half = np.diff(knots) / 2
    middle = knots[:-1] + half
    return (middle[:, None] + half[:, None] * x).ravel(), (half[:, None] * weights).ravel()


def _clustered(knots: np.ndarray, center: float, scale: float, levels: int) -> np.ndarray:
    lo, hi = knots[0], knots[-1]
    offsets = [sign * scale * 2.0**-j for j in range(1, levels + 1) for sign in (-1, 1)]
    extra = [center] + [center + d for d in offsets]
    inside = [k for k in extra if lo < k < hi]
    return np.unique(np.concatenate([knots, inside]))


def _is_real(f: DirichletPolynomial, symbol: PeriodicSymbol | DirichletPolynomial) -> bool:
    real_f = all(c.imag == 0 for _, c in f.terms)
    if isinstance(symbol, PeriodicSymbol):
        return real_f and symbol.is_real
    return real_f and all(c.imag == 0 for _, c in symbol.terms)


def _counting_grid(symbol, b: float, w: np.ndarray) -> np.ndarray:
    if isinstance(symbol, PeriodicSymbol) and symbol.disk_map.finite_preimages:
        return symbol.counting_density(b, w)
    logger.info(f"Evaluating M_(phi,{b}) node by node on {w.size} nodes")
    estimates = parallel_map(partial(mean_counting_value, symbol, b), w.ravel())
    if any(e.diverged for e in estimates):
        raise RhsDivergentError(f"M_(phi,{b}) diverges at a grid node")
    return np.array([e.value for e in estimates]).reshape(w.shape)


def stanton_rhs(
    f: DirichletPolynomial, phi: CountingSymbol, a: float, quad_grid: StantonGrid | None = None
) -> float:
    weight = SpaceWeight(a)
    grid = quad_grid or StantonGrid()
    symbol = require_g0(phi)
    limit = complex(symbol.at_infinity)
    head = abs(f(limit)) ** 2
    slope = derivative(f)
    if slope.is_zero:
        return head

    x_knots = np.geomspace(grid.x_min, grid.x_cap, grid.x_panels + 1)
    x0 = limit.real - 0.5
    x_knots = _clustered(x_knots, x0, min(x0, 1.0), grid.cluster)
    symmetric = _is_real(f, symbol)
    lower = 0.0 if symmetric else -math.pi / 2
    theta_knots = np.linspace(lower, math.pi / 2, grid.theta_panels + 1)
    theta0 = math.atan(limit.imag / grid.tau)
    theta_knots = _clustered(theta_knots, theta0, 0.5, grid.cluster)

    x, x_weights = _composite_nodes(x_knots, grid.order)
    theta, theta_weights = _composite_nodes(theta_knots, grid.order)
    t = grid.tau * np.tan(theta)
    jacobian = theta_weights * grid.tau / np.cos(theta) ** 2
    w = 0.5 + x[:, None] + 1j * t[None, :]

    counting = _counting_grid(symbol, 1 - a, w)
    if not np.all(np.isfinite(counting)):
        raise RhsDivergentError("Counting function is not finite on the grid")
    density = np.abs(slope(w)) ** 2 * counting
    area = float(x_weights @ density @ jacobian)
    if symmetric:
        area *= 2
    return head + weight.area_constant / math.pi * area


def stanton_lhs(
    f: DirichletPolynomial, phi: CountingSymbol, a: float, N: int | None = None
) -> tuple[float, float | None]:
    """
    ||f o phi||_a^2 and a bound on the part lost to truncation (None when unknown).

    For periodic symbols the composed series is F(u b^{-s}) with F = f o g, so the norm comes from
    the Taylor coefficients of F; for a = 0 it is the boundary energy of F.
    """
    SpaceWeight(a)
    symbol = resolve_symbol(phi)
    if isinstance(symbol, PeriodicSymbol):
        disk_map = symbol.disk_map
        energy = disk_map.boundary_energy(f)
        if a == 0:
            return energy, 0.0
        order = disk_map.taylor_order
        coefficients = np.abs(disk_map.composed_taylor(f, order)) ** 2
        k = np.arange(1, order + 1)
        value = float(coefficients[0] + np.sum(coefficients[1:] * (k * symbol.log_base) ** a))
        remainder = max(energy - float(np.sum(coefficients)), 0.0)
        bound = remainder * ((order + 1) * symbol.log_base) ** a if a <= 0 else math.inf
        return value, bound
    N = settings.DSC_TRUNCATION if N is None else N
    composed = compose_truncated(f, Symbol(symbol), N)
    return norm_Da(composed, a) ** 2, None


def stanton_verify(
    f: DirichletPolynomial,
    phi: CountingSymbol,
    a: float,
    quad_grid: StantonGrid | None = None,
    N: int | None = None,
) -> StantonCheck:
    grid = quad_grid or StantonGrid()
    lhs, bound = stanton_lhs(f, phi, a, N)
    rhs = stanton_rhs(f, phi, a, grid)
    if lhs < 0:
        raise ConfigError("Composed norm is negative")
    rel_err = abs(lhs - rhs) / lhs if lhs > 0 else abs(rhs)
    logger.info(f"Stanton check a={a}: lhs={lhs:.8g} rhs={rhs:.8g} rel_err={rel_err:.3g}")
    return StantonCheck(lhs, rhs, rel_err, bound, grid)

"""Littlewood-type upper bounds for M_{phi,1+a} and disk Nevanlinna sums."""

import logging
import math
from typing import NamedTuple

import numpy as np

from dsc.core.enums import NevanlinnaKind
from dsc.core.errors import ConfigError
from dsc.counting import CountingSymbol, LimitSchedule, at_infinity, mean_counting_value
from dsc.operators.geometry import SchwarzGrid, check_inside, disk_abscissa, schwarz_constant
from dsc.zeros import DiskMap, ExponentialMap

logger = logging.getLogger(__name__)

BOUND_TOL = 1e-6

_INFINITE_RADIUS = 1 - 1e-8


class BoundCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool
    inconclusive: bool = False


class NevanlinnaSum(NamedTuple):
    value: float
    tail_bound: float


def littlewood_bound_check(
    phi: CountingSymbol, w: complex, schedule: LimitSchedule | None = None
) -> BoundCheck:
    """M_{phi,1}(w) against log|(conj(w) + phi(+inf) - 1) / (w - phi(+inf))|."""
    w = check_inside(phi, w)
    limit = at_infinity(phi)
    rhs = math.log(abs((w.conjugate() + limit - 1) / (w - limit)))
    estimate = mean_counting_value(phi, 1.0, w, schedule)
    if estimate.diverged:
        logger.info(f"M_(phi,1)({w}) diverged; Littlewood check inconclusive")
        return BoundCheck(estimate.value, rhs, False, inconclusive=True)
    return BoundCheck(estimate.value, rhs, estimate.value <= rhs + BOUND_TOL)


def prop53_constant(
    phi: CountingSymbol, a: float, delta: float, grid: SchwarzGrid | None = None
) -> float:
    """
    2 (C (1 + sigma^2))^a with C the Schwarz constant and sigma the abscissa beyond which phi
    stays in D(phi(+inf), delta).
    """
    if a < 0:
        raise ConfigError(f"The bound is stated for a >= 0, got {a}")
    if a == 0:
        return 2.0
    sigma = disk_abscissa(phi, delta)
    return 2 * (schwarz_constant(phi, grid) * (1 + sigma**2)) ** a


def prop53_bound_check(
    phi: CountingSymbol,
    a: float,
    w: complex,
    delta: float,
    schedule: LimitSchedule | None = None,
    grid: SchwarzGrid | None = None,
) -> BoundCheck:
    """
    M_{phi,1+a}(w) against C (Re w - 1/2)^{1+a} (Re phi(+inf) - 1/2) / |w - phi(+inf)|^2 for w
    outside D(phi(+inf), delta).
    """
    w = check_inside(phi, w)
    limit = at_infinity(phi)
    if abs(w - limit) < delta:
        raise ConfigError(f"w = {w} lies inside D(phi(+inf), {delta})")
    constant = prop53_constant(phi, a, delta, grid)
    rhs = constant * (w.real - 0.5) ** (1 + a) * (limit.real - 0.5) / abs(w - limit) ** 2
    estimate = mean_counting_value(phi, 1 + a, w, schedule)
    if estimate.diverged:
        return BoundCheck(estimate.value, rhs, False, inconclusive=True)
    return BoundCheck(estimate.value, rhs, estimate.value <= rhs + BOUND_TOL)


def nevanlinna_disk(
    g: DiskMap,
    alpha: float,
    w: complex,
    kind: NevanlinnaKind = NevanlinnaKind.GENERALIZED,
    radius: float | None = None,
) -> NevanlinnaSum:
    """
    sum (1 - |z|^2)^alpha, or sum log(1/|z|) for the classical kind, over g(z) = w in D.

    Maps with infinitely many preimages are summed inside ``radius`` and the rest is bounded.
    """
    if alpha <= 0:
        raise ConfigError(f"alpha must be positive, got {alpha}")
    classical = kind == NevanlinnaKind.CLASSICAL
    if classical and alpha != 1:
        raise ConfigError("The classical counting function has alpha = 1")
    w = complex(w)
    if classical and w == g.at_zero:
        raise ConfigError(f"w = {w} equals g(0)")

    if isinstance(g, ExponentialMap):
        radius = _INFINITE_RADIUS if radius is None else radius
        gaps = g.preimage_moduli(w, radius)
        terms = -0.5 * np.log1p(-gaps) if classical else gaps**alpha
        tail = g.preimage_tail(w, radius, alpha, classical)
        logger.debug(f"Summed {gaps.size} preimages inside |z| < {radius}, tail <= {tail:.3g}")
        return NevanlinnaSum(float(np.sum(terms)), tail)

    moduli = np.array([abs(z) for z, m in g.preimages(w, 1.0) for _ in range(m)])
    if classical:
        return NevanlinnaSum(float(np.sum(-np.log(moduli))), 0.0)
    return NevanlinnaSum(float(np.sum((1 - moduli**2) ** alpha)), 0.0)

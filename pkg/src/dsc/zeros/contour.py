"""
Argument-principle localization of the solutions of phi(s) = w in rectangles.

Every routine accepts a Dirichlet polynomial, a symbol with c0 = 0 or a periodic symbol; they are
all reduced to an ``AnalyticTarget`` holding vectorized value and slope callables plus a bound on
|phi'| over half-planes.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from dsc.core.errors import ConfigError, ContourUnresolvedError, NoZeroFreeEdgeError
from dsc.core.settings import settings
from dsc.series import DirichletPolynomial, Symbol, derivative, vertical_period
from dsc.zeros.periodic import PeriodicSymbol
from dsc.zeros.rectangle import Rectangle, Zero, ZeroSet

logger = logging.getLogger(__name__)

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(16)
_MAX_REFINEMENTS = 10
_AGREEMENT = 0.05
_INTEGER_SLACK = 0.25
_NEWTON_STEPS = 50
_NEWTON_RESIDUAL = 1e-9
# Newton iterates farther from the center than this many cell widths (or heights) are abandoned
_NEWTON_REACH = 2.0
_SPLIT_FRACTIONS = (0.5, 0.47, 0.53, 0.41, 0.59, 0.35, 0.65)
_MAX_EDGE_SAMPLES = 200_000
_DEFAULT_PERIOD = 2 * math.pi / math.log(2)


@dataclass(frozen=True)
class AnalyticTarget:
    value: Callable
    slope: Callable
    slope_bound: Callable[[float], float]
    period: float | None
    oscillation: float

    @classmethod
    def of(cls, phi: "DirichletPolynomial | Symbol | PeriodicSymbol") -> "AnalyticTarget":
        if isinstance(phi, AnalyticTarget):
            return phi
        if isinstance(phi, Symbol):
            if phi.c0 != 0:
                raise ConfigError("Zero localization needs a symbol with characteristic c0 = 0")
            phi = phi.phi
        if isinstance(phi, PeriodicSymbol):
            return cls(phi, phi.derivative, phi.derivative_bound, phi.period, phi.log_base)
        if isinstance(phi, DirichletPolynomial):
            slope = derivative(phi)
            return cls(
                phi,
                slope,
                phi.derivative_bound,
                vertical_period(phi),
                math.log(phi.max_frequency) if phi.max_frequency > 1 else 0.0,
            )
        raise ConfigError(f"Cannot localize zeros of {type(phi).__name__}")


def _edges(rect: Rectangle) -> list[tuple[complex, complex]]:
    corners = [
        complex(rect.sigma_min, rect.t_min),
        complex(rect.sigma_max, rect.t_min),
        complex(rect.sigma_max, rect.t_max),
        complex(rect.sigma_min, rect.t_max),
    ]
    return [(corners[k], corners[(k + 1) % 4]) for k in range(4)]


def _contour_integral(
    target: AnalyticTarget, w: complex, rect: Rectangle, density: float
) -> tuple[float, float]:
    """Composite Gauss-Legendre value of (1/2 pi i) * contour integral of phi'/(phi - w)."""
    total = 0j
    smallest = math.inf
    for start, end in _edges(rect):
        panels = max(2, math.ceil(abs(end - start) * density))
        knots = start + (end - start) * np.linspace(0.0, 1.0, panels + 1)
        half = (knots[1:] - knots[:-1]) / 2
        nodes = (knots[:-1] + half)[:, None] + half[:, None] * _NODES[None, :]
        gap = target.value(nodes) - w
        smallest = min(smallest, float(np.min(np.abs(gap))))
        total += np.sum(_WEIGHTS[None, :] * half[:, None] * target.slope(nodes) / gap)
    return float((total / (2j * math.pi)).real), smallest


def _winding(target: AnalyticTarget, w: complex, rect: Rectangle) -> tuple[int, float]:
    density = max(1.0, target.oscillation) * 2.0
    previous, smallest = _contour_integral(target, w, rect, density)
    for _ in range(_MAX_REFINEMENTS):
        if smallest == 0:
            break
        density *= 2
        current, smallest = _contour_integral(target, w, rect, density)
        nearest = round(current)
        if abs(current - previous) < _AGREEMENT and abs(current - nearest) < _INTEGER_SLACK:
            return int(nearest), smallest
        previous = current
    raise ContourUnresolvedError(
        f"Winding number on {rect} did not settle (last value {previous:.4f}, "
        f"min |phi - w| on the contour {smallest:.3g})"
    )


def winding_number(phi, w: complex, rect: Rectangle) -> int:
    """Number of solutions of phi(s) = w inside ``rect``, with multiplicity."""
    count, _ = _winding(AnalyticTarget.of(phi), complex(w), rect)
    return count


def _edge_clearance(target: AnalyticTarget, w: complex, sigmas: np.ndarray, t: float) -> float:
    return float(np.min(np.abs(target.value(sigmas + 1j * t) - w)))


def safe_rectangle(
    phi, w: complex, rect: Rectangle, delta: float | None = None, budget: int | None = None
) -> Rectangle:
    """
    Nudge the horizontal edges of ``rect`` upward until |phi - w| >= delta on both of them.

    Edges are sampled at spacing delta/(2L) with L a bound on |phi'| over Re s >= sigma_min, so a
    sample at distance >= delta + L*h/2 certifies the whole edge segment around it.
    """
    target = AnalyticTarget.of(phi)
    w = complex(w)
    delta = settings.DSC_SAFE_DELTA * (1 + abs(w)) if delta is None else delta
    budget = settings.DSC_NUDGE_BUDGET if budget is None else budget
    if delta <= 0:
        raise ConfigError(f"Edge clearance must be positive, got {delta}")
    slope = max(target.slope_bound(rect.sigma_min), 1e-12)
    spacing = delta / (2 * slope)
    samples = min(_MAX_EDGE_SAMPLES, math.ceil(rect.width / spacing) + 1)
    sigmas = np.linspace(rect.sigma_min, rect.sigma_max, max(samples, 2))
    required = delta + slope * (rect.width / (sigmas.size - 1)) / 2
    step = delta / (4 * slope)
    reach = target.period or _DEFAULT_PERIOD

    def nudge(t: float) -> float:
        for k in range(budget):
            offset = k * step
            if offset > reach:
                break
            if _edge_clearance(target, w, sigmas, t + offset) >= required:
                if k:
                    logger.info(f"Edge at t = {t:.6g} nudged by {offset:.3g}")
                return t + offset
        raise NoZeroFreeEdgeError(
            f"No edge near t = {t:.6g} keeps |phi - w| >= {delta:.3g}; choose a smaller delta"
        )

    return Rectangle(rect.sigma_min, rect.sigma_max, nudge(rect.t_min), nudge(rect.t_max))


def _newton(target: AnalyticTarget, w: complex, cell: Rectangle, scale: float) -> complex | None:
    s = cell.center
    reach_re, reach_im = _NEWTON_REACH * cell.width, _NEWTON_REACH * cell.height
    for _ in range(_NEWTON_STEPS):
        slope = target.slope(s)
        if slope == 0:
            return None
        step = (target.value(s) - w) / slope
        s -= step
        offset = s - cell.center
        if not (abs(offset.real) <= reach_re and abs(offset.imag) <= reach_im):
            return None
        if abs(step) <= 1e-15 * max(1.0, abs(s)):
            break
    if abs(target.value(s) - w) > _NEWTON_RESIDUAL * scale or not cell.contains(s):
        return None
    return complex(s)


def _split(
    target: AnalyticTarget, w: complex, cell: Rectangle, count: int
) -> list[tuple[Rectangle, int]]:
    """Bisect along the longer side and certify the halves by winding additivity."""
    failure: Exception | None = None
    for fraction in _SPLIT_FRACTIONS:
        if cell.width >= cell.height:
            halves = cell.split_vertical(cell.sigma_min + fraction * cell.width)
        else:
            halves = cell.split_horizontal(cell.t_min + fraction * cell.height)
        try:
            counts = [_winding(target, w, half)[0] for half in halves]
        except ContourUnresolvedError as e:
            failure = e
            continue
        if sum(counts) == count:
            return list(zip(halves, counts))
        failure = ContourUnresolvedError(f"Winding {count} on {cell} splits as {counts}")
    raise failure or ContourUnresolvedError(f"Could not subdivide {cell}")


def locate_zeros(phi, w: complex, rect: Rectangle, tol: float = 1e-6) -> ZeroSet:
    """Recursive bisection with winding-number certificates and Newton refinement."""
    target = AnalyticTarget.of(phi)
    w = complex(w)
    scale = max(1.0, abs(w))
    total, smallest = _winding(target, w, rect)
    zeros: list[Zero] = []
    stack = [(rect, total)]
    while stack:
        cell, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            root = _newton(target, w, cell, scale)
            if root is not None:
                zeros.append(Zero(root))
                continue
        if cell.diameter < tol:
            if count == 1:
                logger.warning(f"Newton did not converge in {cell}; reporting the cell center")
            zeros.append(Zero(cell.center, count, refined=False))
            continue
        stack.extend(_split(target, w, cell, count))
    logger.debug(f"Located {len(zeros)} zeros in {rect}, winding total {total}")
    return ZeroSet(
        zeros=tuple(zeros), winding_total=total, rect=rect, min_boundary_modulus=smallest
    )

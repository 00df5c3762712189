"""
Ratio profiles M_{phi,b}(w) / (Re w - 1/2)^b as Re w decreases to 1/2.

The verdicts are discrete readings of the limit conditions for compactness (b = 1 + a on the
Bergman side) and boundedness (b = 1 - a on the Dirichlet side).
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np
import pandas as pd

from dsc.core import parallel_map
from dsc.core.enums import Verdict
from dsc.core.errors import ConfigError
from dsc.counting import (
    CountingSymbol,
    LimitSchedule,
    at_infinity,
    mean_counting_value,
    require_g0,
)

logger = logging.getLogger(__name__)

BOUNDARY_FLOOR = 1e-3
VANISHING_SHARE = 0.05
GROWTH_FACTOR = 2.0


@dataclass(frozen=True)
class RatioProfile:
    a: float
    exponent: float
    boundary_points: tuple[complex, ...]
    ratios: tuple[float, ...]
    verdict: Verdict
    lines: int = 1

    def __post_init__(self) -> None:
        if len(self.boundary_points) != len(self.ratios):
            raise ValueError("boundary_points and ratios must have equal length")
        if any(r < 0 for r in self.ratios if not math.isnan(r)):
            raise ValueError("Ratios are non-negative")

    @property
    def sup(self) -> float:
        return float(np.nanmax(self.ratios)) if self.ratios else 0.0

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "a": self.a,
                "exponent": self.exponent,
                "w_re": w.real,
                "w_im": w.imag,
                "ratio": ratio,
                "verdict": "",
            }
            for w, ratio in zip(self.boundary_points, self.ratios)
        ]
        rows.append(
            {
                "a": self.a,
                "exponent": self.exponent,
                "w_re": math.nan,
                "w_im": math.nan,
                "ratio": self.sup,
                "verdict": str(self.verdict),
            }
        )
        return pd.DataFrame(rows, columns=["a", "exponent", "w_re", "w_im", "ratio", "verdict"])


@dataclass(frozen=True)
class RegionGrid:
    """
    Points of C_{1/2} outside D(phi(+inf), delta).

    Re w - 1/2 is geometric from ``x_max`` down to ``x_min``; Im w runs uniformly over
    Im phi(+inf) +- ``half_height``.
    """

    x_min: float = BOUNDARY_FLOOR
    x_max: float = 2.0
    n_x: int = 12
    half_height: float = 4.0
    n_im: int = 9
    extra_im: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if not 0 < self.x_min < self.x_max:
            raise ConfigError(f"Need 0 < x_min < x_max, got {self.x_min}, {self.x_max}")
        if self.x_min < BOUNDARY_FLOOR:
            raise ConfigError(f"Boundary schedules stop at Re w - 1/2 = {BOUNDARY_FLOOR}")
        if self.n_x < 2 or self.n_im < 1:
            raise ConfigError("Region grid needs at least two abscissae and one ordinate")

    def refined(self) -> "RegionGrid":
        return replace(self, n_x=2 * self.n_x - 1, n_im=2 * self.n_im - 1)

    def lines(self, center: complex) -> tuple[np.ndarray, np.ndarray]:
        x = np.geomspace(self.x_max, self.x_min, self.n_x)
        if self.n_im == 1:
            im = np.array([center.imag])
        else:
            im = center.imag + np.linspace(-self.half_height, self.half_height, self.n_im)
        return x, np.concatenate([im, np.asarray(self.extra_im, dtype=float)])


def line_verdict(ratios: Sequence[float]) -> Verdict:
    """
    Verdict for ratios ordered towards the boundary: vanishing if the last is below 5% of the
    maximum, growing if it exceeds twice the maximum over the first half, bounded otherwise.
    """
    values = np.asarray(ratios, dtype=float)
    if values.size < 2 or np.any(np.isnan(values)):
        return Verdict.INCONCLUSIVE
    peak = float(np.max(values))
    if peak == 0 or values[-1] < VANISHING_SHARE * peak:
        return Verdict.VANISHING
    if values[-1] > GROWTH_FACTOR * float(np.max(values[: values.size // 2])):
        return Verdict.GROWING
    return Verdict.BOUNDED


def combine_verdicts(verdicts: Sequence[Verdict]) -> Verdict:
    for verdict in (Verdict.INCONCLUSIVE, Verdict.GROWING, Verdict.BOUNDED):
        if verdict in verdicts:
            return verdict
    return Verdict.VANISHING


def _ratio(
    phi: CountingSymbol, exponent: float, schedule: LimitSchedule | None, w: complex
) -> float:
    estimate = mean_counting_value(phi, exponent, w, schedule)
    if estimate.diverged:
        return math.nan
    return estimate.value / (w.real - 0.5) ** exponent


def _profile(
    phi: CountingSymbol,
    a: float,
    exponent: float,
    x: np.ndarray,
    im: np.ndarray,
    schedule: LimitSchedule | None,
    excluded: float = 0.0,
) -> RatioProfile:
    limit = at_infinity(phi)
    lines = [
        [complex(0.5 + xk, t) for xk in x if abs(complex(0.5 + xk, t) - limit) > excluded]
        for t in im
    ]
    lines = [line for line in lines if line]
    points = [w for line in lines for w in line]
    logger.info(f"Ratio profile with exponent {exponent} over {len(points)} points")
    ratios = parallel_map(partial(_ratio, phi, exponent, schedule), points)
    verdicts, start = [], 0
    for line in lines:
        verdicts.append(line_verdict(ratios[start : start + len(line)]))
        start += len(line)
    return RatioProfile(
        a=a,
        exponent=exponent,
        boundary_points=tuple(points),
        ratios=tuple(float(r) for r in ratios),
        verdict=combine_verdicts(verdicts),
        lines=len(lines),
    )


def default_boundary_schedule(phi: CountingSymbol, levels: int = 12) -> tuple[float, ...]:
    """Re w - 1/2 from half the distance of phi(+inf) to the boundary down to 10^-3."""
    start = min(0.25, 0.5 * (at_infinity(phi).real - 0.5))
    return tuple(np.geomspace(max(start, 2 * BOUNDARY_FLOOR), BOUNDARY_FLOOR, levels))


def compactness_ratio(
    phi: CountingSymbol,
    a: float,
    boundary_schedule: Sequence[float] | None = None,
    imag_offsets: Sequence[float] = (-1.0, 0.0, 1.0),
    schedule: LimitSchedule | None = None,
) -> RatioProfile:
    """
    M_{phi,1+a}(w) / (Re w - 1/2)^{1+a} along lines Im w = Im phi(+inf) + offset.

    ``boundary_schedule`` lists the values of Re w - 1/2, decreasing.
    """
    if a < 0:
        raise ConfigError(f"The compactness ratio needs a >= 0, got {a}")
    require_g0(phi)
    x = np.asarray(boundary_schedule or default_boundary_schedule(phi), dtype=float)
    if np.any(x < BOUNDARY_FLOOR) or np.any(np.diff(x) >= 0):
        raise ConfigError(f"Boundary schedule must decrease and stay >= {BOUNDARY_FLOOR}")
    im = at_infinity(phi).imag + np.asarray(imag_offsets, dtype=float)
    return _profile(phi, a, 1 + a, x, im, schedule)


def boundedness_profile(
    phi: CountingSymbol,
    a: float,
    delta: float,
    region_grid: RegionGrid | None = None,
    schedule: LimitSchedule | None = None,
) -> RatioProfile:
    """
    M_{phi,1-a}(w) / (Re w - 1/2)^{1-a} over C_{1/2} outside D(phi(+inf), delta).

    ``sup`` of the result estimates the constant C(delta); the verdict reads the boundary limit.
    """
    if not 0 < a < 1:
        raise ConfigError(f"The boundedness profile needs 0 < a < 1, got {a}")
    if delta <= 0:
        raise ConfigError(f"delta must be positive, got {delta}")
    require_g0(phi)
    grid = region_grid or RegionGrid()
    x, im = grid.lines(at_infinity(phi))
    return _profile(phi, a, 1 - a, x, im, schedule, excluded=delta)

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from dsc.core.errors import ConfigError

_LOG2_PERIOD = 2 * math.pi / math.log(2)

# sigma -> 0 extrapolation: compare the last three increments with the three before them
_RATIO_WINDOW = 3
_DIVERGENCE_RATIO = 0.9


@dataclass(frozen=True)
class LimitSchedule:
    """
    Discretization of the iterated limits T -> infinity and sigma -> 0+.

    The default T values sit at (2^k - 1/2) periods of 2^{-s}, so every preimage lattice of a
    base-2 periodic symbol contributes exactly 2T/period solutions to each window.
    """

    T_values: tuple[float, ...]
    sigma_values: tuple[float, ...]
    rel_tol: float = 1e-2
    abs_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not self.T_values or not self.sigma_values:
            raise ConfigError("A limit schedule needs at least one T value and one sigma value")
        if self.T_values[0] <= 0 or any(b <= a for a, b in zip(self.T_values, self.T_values[1:])):
            raise ConfigError("T values must be positive and strictly increasing")
        if self.sigma_values[-1] <= 0 or any(
            b >= a for a, b in zip(self.sigma_values, self.sigma_values[1:])
        ):
            raise ConfigError("sigma values must be positive and strictly decreasing")
        if self.rel_tol < 0 or self.abs_tol < 0:
            raise ConfigError("Tolerances must be non-negative")

    @classmethod
    def default(cls, period: float = _LOG2_PERIOD, levels: int = 8) -> "LimitSchedule":
        return cls(
            T_values=tuple((2**k - 0.5) * period for k in range(1, levels + 1)),
            sigma_values=tuple(2.0 ** (-k - 1) for k in range(30)),
        )

    @classmethod
    def geometric(
        cls,
        T0: float,
        levels: int,
        sigma0: float = 0.5,
        sigma_levels: int = 30,
        rel_tol: float = 1e-2,
        abs_tol: float = 1e-10,
    ) -> "LimitSchedule":
        """T_0 * 2^k for k = 0..levels and sigma_0 * 2^-k for k = 0..sigma_levels-1."""
        return cls(
            T_values=tuple(T0 * 2.0**k for k in range(levels + 1)),
            sigma_values=tuple(sigma0 * 2.0**-k for k in range(sigma_levels)),
            rel_tol=rel_tol,
            abs_tol=abs_tol,
        )

    @property
    def T_max(self) -> float:
        return self.T_values[-1]

    @property
    def sigma_min(self) -> float:
        return self.sigma_values[-1]

    def is_settled(self, previous: float, current: float) -> bool:
        return abs(current - previous) < max(self.abs_tol, self.rel_tol * abs(current))


@dataclass(frozen=True)
class CountingEstimate:
    value: float
    a: float
    w: complex
    sigma: float
    T_schedule: tuple[float, ...]
    per_T_values: tuple[float, ...]
    converged: bool
    error_estimate: float
    diverged: bool = False
    sigma_schedule: tuple[float, ...] = field(default=())
    per_sigma_values: tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.T_schedule) != len(self.per_T_values):
            raise ValueError("per_T_values must match T_schedule")
        if len(self.sigma_schedule) != len(self.per_sigma_values):
            raise ValueError("per_sigma_values must match sigma_schedule")
        if self.value < 0:
            raise ValueError(f"Counting values are non-negative, got {self.value}")

    def to_row(self, seed: int | None = None) -> dict:
        return {
            "a": self.a,
            "w_re": self.w.real,
            "w_im": self.w.imag,
            "sigma": self.sigma,
            "T": self.T_schedule[-1] if self.T_schedule else math.nan,
            "value": self.value,
            "converged": self.converged,
            "diverged": self.diverged,
            "error_estimate": self.error_estimate,
            "seed": seed,
        }


def extrapolate_monotone(
    values: Sequence[float], schedule: LimitSchedule
) -> tuple[float, float, bool, bool]:
    """
    Geometric-tail extrapolation of a non-decreasing sequence.

    Returns (value, error_estimate, converged, diverged). The per-step ratio q of the increments is
    taken over windows of three steps; q >= 0.9 is reported as divergence.
    """
    v = np.asarray(values, dtype=float)
    if v.size == 1:
        return float(v[-1]), math.inf, False, False
    steps = np.maximum(np.diff(v), 0.0)
    if v.size < 2 * _RATIO_WINDOW + 1:
        settled = schedule.is_settled(float(v[-2]), float(v[-1]))
        return float(v[-1]), float(steps[-1]), settled, False
    recent = float(np.sum(steps[-_RATIO_WINDOW:]))
    earlier = float(np.sum(steps[-2 * _RATIO_WINDOW : -_RATIO_WINDOW]))
    if recent <= schedule.abs_tol:
        return float(v[-1]), recent, True, False
    if earlier == 0:
        # a single jump late in the schedule
        return float(v[-1]), recent, False, False
    q = (recent / earlier) ** (1 / _RATIO_WINDOW)
    if q >= _DIVERGENCE_RATIO:
        return float(v[-1]), math.inf, False, True
    tail = float(steps[-1]) * q / (1 - q)
    value = float(v[-1]) + tail
    return value, tail, tail <= max(schedule.abs_tol, schedule.rel_tol * value), False

import logging
import math
from functools import partial
from typing import NamedTuple

import numpy as np

from dsc.core import parallel_map
from dsc.core.errors import ConfigError, NumericalError
from dsc.counting.schedule import CountingEstimate, LimitSchedule, extrapolate_monotone
from dsc.counting.tables import (
    CountingSymbol,
    CountingTable,
    Weight,
    at_infinity,
    check_target,
    counting_table,
    period_of,
    power_weight,
    resolve_symbol,
    twist_symbol,
)
from dsc.series import Character, DirichletPolynomial, factorize, twist
from dsc.zeros import PeriodicSymbol

logger = logging.getLogger(__name__)

_RESAMPLE_SHARE = 0.01
# relative differences at or below this level are floating-point noise
_ROUNDOFF = 1e-12


class MonteCarloEstimate(NamedTuple):
    estimate: float
    stderr: float


class SubmeanCheck(NamedTuple):
    lhs: float
    rhs: float
    ratio: float
    inconclusive: bool = False


def default_schedule(phi: CountingSymbol) -> LimitSchedule:
    period = period_of(phi)
    return LimitSchedule.default(period) if period else LimitSchedule.default()


def _check_window(sigma: float, T: float) -> None:
    if sigma <= 0:
        raise ConfigError(f"sigma must be positive, got {sigma}")
    if T <= 0:
        raise ConfigError(f"T must be positive, got {T}")


def weighted_count_general(
    phi: CountingSymbol, weight: Weight, w: complex, sigma: float, T: float
) -> float:
    """(pi/T) * sum of weight(Re s) over solutions of phi(s) = w with sigma < Re s, |Im s| < T."""
    _check_window(sigma, T)
    table = counting_table(phi, w, sigma, T)
    return float(math.pi / T * table.window_sums(weight, sigma, [T])[0])


def weighted_count_finite(
    phi: CountingSymbol, a: float, w: complex, sigma: float, T: float
) -> float:
    return weighted_count_general(phi, power_weight(a), w, sigma, T)


def _estimate_over_T(
    table: CountingTable, a: float, w: complex, sigma: float, schedule: LimitSchedule
) -> CountingEstimate:
    T = np.asarray(schedule.T_values, dtype=float)
    values = math.pi / T * table.window_sums(power_weight(a), sigma, schedule.T_values)
    if values.size > 1:
        converged = schedule.is_settled(float(values[-2]), float(values[-1]))
        error = float(abs(values[-1] - values[-2]))
        if error <= _ROUNDOFF * abs(float(values[-1])):
            error = 0.0
    else:
        converged, error = False, math.inf
    return CountingEstimate(
        value=float(values[-1]),
        a=a,
        w=complex(w),
        sigma=sigma,
        T_schedule=schedule.T_values,
        per_T_values=tuple(float(v) for v in values),
        converged=converged,
        error_estimate=error,
    )


def mean_count(
    phi: CountingSymbol, a: float, w: complex, sigma: float, schedule: LimitSchedule | None = None
) -> CountingEstimate:
    """The T-limit M_{phi,a}(w, sigma) along the schedule's T values."""
    schedule = schedule or default_schedule(phi)
    _check_window(sigma, schedule.T_max)
    table = counting_table(phi, w, sigma, schedule.T_max)
    return _estimate_over_T(table, a, w, sigma, schedule)


def mean_count_limit(
    phi: CountingSymbol, a: float, w: complex, schedule: LimitSchedule | None = None
) -> CountingEstimate:
    """
    The iterated limit M_{phi,a}(w): T -> infinity first, then sigma -> 0+.

    Values along the sigma schedule are non-decreasing; the tail is extrapolated geometrically and
    a ratio of increments that does not fall below 1 is reported as divergence.
    """
    schedule = schedule or default_schedule(phi)
    table = counting_table(phi, w, schedule.sigma_min, schedule.T_max)
    per_sigma = [_estimate_over_T(table, a, w, s, schedule) for s in schedule.sigma_values]
    values = [e.value for e in per_sigma]
    drops = [k for k in range(1, len(values)) if values[k] < values[k - 1] * (1 - _ROUNDOFF)]
    if drops:
        logger.warning(f"Counting values decreased as sigma decreased at steps {drops}")
    value, error, converged, diverged = extrapolate_monotone(values, schedule)
    if diverged:
        logger.info(f"M_(phi,{a})({complex(w)}) diverges along the sigma schedule")
    last = per_sigma[-1]
    return CountingEstimate(
        value=value,
        a=a,
        w=complex(w),
        sigma=0.0,
        T_schedule=last.T_schedule,
        per_T_values=last.per_T_values,
        converged=converged and last.converged,
        error_estimate=max(error, last.error_estimate),
        diverged=diverged,
        sigma_schedule=schedule.sigma_values,
        per_sigma_values=tuple(values),
    )


def mean_counting_value(
    phi: CountingSymbol, a: float, w: complex, schedule: LimitSchedule | None = None
) -> CountingEstimate:
    """
    M_{phi,a}(w) for use by other modules.

    Periodic symbols with finitely many disk preimages have the exact value
    log(b) * sum (Re s)^a; everything else goes through ``mean_count_limit``.
    """
    symbol = resolve_symbol(phi)
    w = complex(w)
    check_target(symbol, w)
    if isinstance(symbol, PeriodicSymbol) and symbol.disk_map.finite_preimages:
        value = symbol.lattice_density(a, w, 0.0)
        return CountingEstimate(value, a, w, 0.0, (), (), True, 0.0)
    return mean_count_limit(symbol, a, w, schedule)


def direct_T_limit(
    phi: CountingSymbol,
    a: float,
    w: complex,
    chi: Character,
    schedule: LimitSchedule | None = None,
) -> CountingEstimate:
    """lim_T of the counting sum of the twisted symbol taken directly at sigma = 0."""
    if a < 1:
        raise ConfigError(f"The direct T-limit needs a >= 1, got {a}")
    schedule = schedule or default_schedule(phi)
    twisted = twist_symbol(phi, chi)
    table = counting_table(twisted, w, 0.0, schedule.T_max)
    return _estimate_over_T(table, a, w, 0.0, schedule)


def _unit_window_count(f: DirichletPolynomial, a: float, w: complex) -> float:
    try:
        table = counting_table(f, w, 0.0, 1.0)
    except NumericalError as e:
        logger.info(f"Resampling a character: {e}")
        return math.nan
    return float(math.pi * table.window_sums(power_weight(a), 0.0, [1.0])[0])


def polytorus_average(
    phi: CountingSymbol, a: float, w: complex, n_samples: int, seed: int | None = None
) -> MonteCarloEstimate:
    """
    Haar average over characters chi of M_{phi_chi,a}(w, 0, 1).

    For periodic symbols a character only rotates u, i.e. shifts each preimage lattice vertically.
    """
    if n_samples < 2:
        raise ConfigError(f"Need at least two samples, got {n_samples}")
    symbol = resolve_symbol(phi)
    w = complex(w)
    check_target(symbol, w)
    rng = np.random.default_rng(seed)

    if isinstance(symbol, PeriodicSymbol):
        rows = symbol.lattice(w, 0.0)
        if rows.re.size == 0:
            return MonteCarloEstimate(0.0, 0.0)
        shifts = rng.uniform(0.0, 2 * math.pi, n_samples) / symbol.log_base
        offsets = (rows.offset[None, :] + shifts[:, None]) % rows.period
        counts = np.ceil((1 - offsets) / rows.period) - np.floor((-1 - offsets) / rows.period) - 1
        values = math.pi * (np.maximum(counts, 0) @ (rows.multiplicity * rows.re**a))
    else:
        primes = sorted({p for n in symbol.support for p, _ in factorize(n)})
        count = partial(_unit_window_count, a=a, w=w)
        characters = [Character.sample(primes, rng) for _ in range(n_samples)]
        values = np.array(parallel_map(count, [twist(symbol, chi) for chi in characters]))
        resampled = 0
        for k in np.flatnonzero(np.isnan(values)):
            while math.isnan(values[k]):
                resampled += 1
                if resampled > _RESAMPLE_SHARE * n_samples:
                    raise NumericalError(
                        f"More than {_RESAMPLE_SHARE:.0%} of sampled characters failed to localize"
                    )
                values[k] = count(twist(symbol, Character.sample(primes, rng)))
        if resampled:
            logger.info(f"Resampled {resampled} characters out of {n_samples}")
    return MonteCarloEstimate(
        float(np.mean(values)), float(np.std(values, ddof=1) / math.sqrt(n_samples))
    )


def submean_check(
    phi: CountingSymbol,
    a: float,
    w: complex,
    r: float,
    n_grid: int = 16,
    schedule: LimitSchedule | None = None,
) -> SubmeanCheck:
    """
    Compare M_{phi,a}(w) with its area mean over the disk D(w, r).

    The disk mean uses Gauss-Legendre nodes in the radius and equispaced angles.
    """
    w = complex(w)
    if a <= 0:
        raise ConfigError(f"The submean check needs a > 0, got {a}")
    if r <= 0 or w.real - r < 0.5:
        raise ConfigError(f"D({w}, {r}) must lie in Re w > 1/2")
    if abs(w - at_infinity(phi)) <= r:
        raise ConfigError(f"D({w}, {r}) contains phi(+inf)")
    symbol = resolve_symbol(phi)
    lhs = mean_counting_value(symbol, a, w, schedule)

    x, weights = np.polynomial.legendre.leggauss(n_grid)
    radii = 0.5 * r * (x + 1)
    radial_weights = 0.5 * r * weights * radii
    angles = 2 * math.pi * np.arange(n_grid) / n_grid
    nodes = (w + np.multiply.outer(radii, np.exp(1j * angles))).ravel()
    estimates = parallel_map(partial(mean_counting_value, symbol, a, schedule=schedule), nodes)
    if lhs.diverged or any(e.diverged for e in estimates):
        return SubmeanCheck(lhs.value, math.nan, math.nan, inconclusive=True)
    grid = np.array([e.value for e in estimates]).reshape(n_grid, n_grid)
    rhs = float(np.sum(radial_weights[:, None] * grid) * (2 * math.pi / n_grid) / (math.pi * r**2))
    if rhs == 0:
        ratio = 0.0 if lhs.value == 0 else math.inf
    else:
        ratio = lhs.value / rhs
    return SubmeanCheck(lhs.value, rhs, ratio)

"""Jessen functions, their right-derivatives and the two integral identities linking them to M."""

import logging
import math
from collections.abc import Callable, Sequence

import numpy as np
from scipy import integrate

from dsc.core.enums import JessenMode
from dsc.core.errors import ConfigError
from dsc.counting.mean import MonteCarloEstimate, default_schedule
from dsc.counting.schedule import LimitSchedule
from dsc.counting.tables import (
    CountingSymbol,
    CountingTable,
    at_infinity,
    check_target,
    counting_table,
    power_weight,
    resolve_symbol,
    zero_free_abscissa,
)
from dsc.series import factorize
from dsc.zeros import PeriodicSymbol, lattice_rows

logger = logging.getLogger(__name__)

DEFAULT_JESSEN_T = 100.0

_ON_LINE = 1e-12
_LINE_NUDGE = 1e-9
_NEAR_LINE = 0.05
_QUAD_TOL = 1e-11
_RICHARDSON_TOL = 1e-6
_RICHARDSON_ATTEMPTS = 6


def _near_ordinates(symbol: PeriodicSymbol, w: complex, sigma: float) -> tuple[np.ndarray, bool]:
    """Lattice offsets of zeros close to the line Re s = sigma, and whether one sits on it."""
    floor = max(sigma - _NEAR_LINE, 0.5 * sigma)
    rows = lattice_rows(symbol.disk_map.preimages, w, floor, symbol.base, symbol.rotation)
    close = np.abs(rows.re - sigma) < _NEAR_LINE
    on_line = bool(np.any(np.abs(rows.re - sigma) <= _ON_LINE))
    return np.unique(rows.offset[close]), on_line


def jessen(
    phi: CountingSymbol,
    w: complex,
    sigma: float,
    T: float | None = None,
    mode: JessenMode = JessenMode.VERTICAL,
    n_samples: int = 4096,
    seed: int | None = None,
) -> float:
    """
    The Jessen function of phi - w at sigma.

    Vertical mode averages log|phi(sigma + it) - w| over one exact period when the symbol is
    periodic and over [-T, T] otherwise; montecarlo mode averages over sampled characters.
    """
    if sigma <= 0:
        raise ConfigError(f"sigma must be positive, got {sigma}")
    w = complex(w)
    symbol = resolve_symbol(phi)
    if mode == JessenMode.MONTECARLO:
        return jessen_montecarlo(symbol, w, sigma, n_samples, seed).estimate

    if isinstance(symbol, PeriodicSymbol):
        ordinates, on_line = _near_ordinates(symbol, w, sigma)
        lower, upper = 0.0, symbol.period
        points = [float(t) for t in ordinates if 0 < t < upper] or None
    else:
        T = DEFAULT_JESSEN_T if T is None else T
        lower, upper = -T, T
        grid = np.linspace(lower, upper, 16 * math.ceil(2 * T) + 1)
        on_line = bool(np.min(np.abs(symbol(sigma + 1j * grid) - w)) <= _ON_LINE)
        points = list(np.arange(math.ceil(lower) + 1, math.floor(upper)).astype(float)) or None
    if on_line:
        logger.info(f"A zero of phi - w lies on Re s = {sigma}; nudging the line")
        sigma += sigma * _LINE_NUDGE

    def integrand(t: float) -> float:
        return math.log(abs(symbol(complex(sigma, t)) - w))

    limit = 50 + 4 * (len(points) if points else 0)
    value, _ = integrate.quad(
        integrand, lower, upper, points=points, limit=limit, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL
    )
    return value / (upper - lower)


def jessen_montecarlo(
    phi: CountingSymbol, w: complex, sigma: float, n_samples: int, seed: int | None = None
) -> MonteCarloEstimate:
    """Mean of log|phi_chi(sigma) - w| over Haar-random characters chi."""
    if n_samples < 2:
        raise ConfigError(f"Need at least two samples, got {n_samples}")
    symbol = resolve_symbol(phi)
    w = complex(w)
    rng = np.random.default_rng(seed)
    if isinstance(symbol, PeriodicSymbol):
        phases = rng.uniform(0.0, 2 * math.pi, n_samples)
        radius = symbol.base ** (-sigma)
        values = symbol.disk_map(symbol.rotation * radius * np.exp(1j * phases))
    else:
        primes = sorted({p for n in symbol.support for p, _ in factorize(n)})
        exponents = np.array(
            [[dict(factorize(n)).get(p, 0) for n, _ in symbol.terms] for p in primes], dtype=float
        ).reshape(len(primes), len(symbol.terms))
        phases = rng.uniform(0.0, 2 * math.pi, (n_samples, len(primes)))
        scaled = np.array([c * n ** (-sigma) for n, c in symbol.terms], dtype=complex)
        values = np.exp(1j * phases @ exponents) @ scaled
    samples = np.log(np.abs(values - w))
    return MonteCarloEstimate(
        float(np.mean(samples)), float(np.std(samples, ddof=1) / math.sqrt(n_samples))
    )


def count_from_jessen(
    phi: CountingSymbol, w: complex, sigma: float, h: float = 0.05, T: float | None = None
) -> float:
    """
    M_{phi,0}(w, sigma) as the negated right-derivative of the Jessen function.

    One-sided differences are Richardson-extrapolated; disagreement between two step sizes means
    a kink lies within h of sigma, and h shrinks.
    """
    if sigma <= 0 or h <= 0:
        raise ConfigError(f"Need sigma > 0 and h > 0, got sigma={sigma}, h={h}")
    base = jessen(phi, w, sigma, T)

    def slope(step: float) -> float:
        return -(jessen(phi, w, sigma + step, T) - base) / step

    for _ in range(_RICHARDSON_ATTEMPTS):
        coarse, middle, fine = slope(h), slope(h / 2), slope(h / 4)
        first, second = 2 * middle - coarse, 2 * fine - middle
        if abs(first - second) <= _RICHARDSON_TOL * max(1.0, abs(second)):
            return second
        logger.info(f"Step-halving disagreement at sigma = {sigma}, h = {h:.3g}; shrinking h")
        h /= 4
    logger.warning(f"Right-derivative at sigma = {sigma} did not settle down to h = {h:.3g}")
    return second


def jessen_convexity(
    phi: CountingSymbol, w: complex, sigmas: Sequence[float], T: float | None = None
) -> float:
    """Smallest change of consecutive chord slopes of J on the grid; >= 0 up to noise if convex."""
    grid = np.asarray(sigmas, dtype=float)
    if grid.size < 3 or np.any(np.diff(grid) <= 0):
        raise ConfigError("Need at least three strictly increasing sigma values")
    values = np.array([jessen(phi, w, s, T) for s in grid])
    slopes = np.diff(values) / np.diff(grid)
    return float(np.min(np.diff(slopes)))


def _finite_counts(
    phi: CountingSymbol, w: complex, sigma: float, schedule: LimitSchedule | None
) -> tuple[CountingTable, Callable[[float, float], float]]:
    schedule = schedule or default_schedule(phi)
    T = schedule.T_max
    table = counting_table(phi, w, sigma, T)

    def count(a: float, s: float) -> float:
        return float(math.pi / T * table.window_sums(power_weight(a), s, [T])[0])

    return table, count


def verify_weight_identity(
    phi: CountingSymbol, a: float, w: complex, sigma: float, schedule: LimitSchedule | None = None
) -> float:
    """
    |M_a(sigma) - M_0(sigma) sigma^a - a * int_sigma^cap t^{a-1} M_0(t) dt| at the schedule's T_max.

    M_0 is constant between consecutive zero real parts, so each piece integrates in closed form.
    """
    if sigma <= 0:
        raise ConfigError(f"sigma must be positive, got {sigma}")
    symbol = resolve_symbol(phi)
    w = complex(w)
    table, count = _finite_counts(symbol, w, sigma, schedule)
    lhs = count(a, sigma)
    cap = max(zero_free_abscissa(symbol, w), sigma)
    knots = [sigma, *[float(x) for x in table.real_parts(sigma) if x < cap], cap]
    integral = 0.0
    for lo, hi in zip(knots, knots[1:]):
        if hi <= lo:
            continue
        level = count(0.0, 0.5 * (lo + hi))
        piece = math.log(hi / lo) if a == 0 else (hi**a - lo**a) / a
        integral += level * piece
    rhs = count(0.0, sigma) * sigma**a + a * integral
    return abs(lhs - rhs)


def verify_jessen_identity(
    phi: CountingSymbol,
    a: float,
    w: complex,
    sigma: float,
    schedule: LimitSchedule | None = None,
    T: float | None = None,
) -> float:
    """
    Residual of M_a(sigma) - M_0(sigma) sigma^a against
    a sigma^{a-1} J(sigma) - a cap^{a-1} log|phi(+inf) - w| - a(1-a) int_sigma^cap t^{a-2} J(t) dt.
    """
    if sigma <= 0:
        raise ConfigError(f"sigma must be positive, got {sigma}")
    symbol = resolve_symbol(phi)
    w = complex(w)
    check_target(symbol, w)
    table, count = _finite_counts(symbol, w, sigma, schedule)
    lhs = count(a, sigma) - count(0.0, sigma) * sigma**a
    if a == 0:
        return abs(lhs)
    cap = zero_free_abscissa(symbol, w)
    if cap <= sigma:
        cap = sigma + 1.0
    kinks = [float(x) for x in table.real_parts(sigma) if x < cap] or None
    integral = 0.0
    if a != 1:
        integral, _ = integrate.quad(
            lambda t: t ** (a - 2) * jessen(symbol, w, t, T),
            sigma,
            cap,
            points=kinks,
            epsabs=1e-10,
            epsrel=1e-10,
            limit=200,
        )
    rhs = (
        a * sigma ** (a - 1) * jessen(symbol, w, sigma, T)
        - a * cap ** (a - 1) * math.log(abs(at_infinity(symbol) - w))
        - a * (1 - a) * integral
    )
    return abs(lhs - rhs)

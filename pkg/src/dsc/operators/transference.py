import logging
import math
from typing import NamedTuple

import numpy as np

from dsc.core.errors import ConfigError
from dsc.counting import CountingSymbol, resolve_symbol, weighted_count_finite
from dsc.operators.geometry import halfstrip_inverse
from dsc.zeros import PeriodicSymbol, Rectangle

logger = logging.getLogger(__name__)

COMPARABILITY_RANGE = (0.1, 10.0)


class TransferenceCheck(NamedTuple):
    """M_{phi,a}(w, 2 sigma, T) <~ T^{a-1} N_{phi o Theta, a}(w) <~ M_{phi,a}(w, sigma, 2T)."""

    lower: float
    mid: float
    upper: float

    @property
    def ratios(self) -> tuple[float, float]:
        if self.mid == 0:
            return (1.0, 1.0) if self.lower == self.upper == 0 else (math.inf, math.inf)
        return self.lower / self.mid, self.upper / self.mid

    @property
    def comparable(self) -> bool:
        lo, hi = COMPARABILITY_RANGE
        return all(lo <= r <= hi for r in self.ratios)


def transference_check(
    phi: CountingSymbol, a: float, w: complex, sigma: float, T: float
) -> TransferenceCheck:
    """
    Compare the half-strip counting sums with the Nevanlinna sum of phi composed with the conformal
    map of the half-strip Re s > sigma, |Im s| < 2T onto the disk.
    """
    if not 0 < a <= 1:
        raise ConfigError(f"Transference needs 0 < a <= 1, got {a}")
    if sigma <= 0 or T <= 0:
        raise ConfigError(f"Need sigma > 0 and T > 0, got sigma={sigma}, T={T}")
    symbol = resolve_symbol(phi)
    if not isinstance(symbol, PeriodicSymbol):
        raise ConfigError("Transference checks need a symbol with closed-form zeros")
    w = complex(w)
    lower = weighted_count_finite(symbol, a, w, 2 * sigma, T)
    upper = weighted_count_finite(symbol, a, w, sigma, 2 * T)

    cap = symbol.zero_free_abscissa(w)
    if cap <= sigma:
        return TransferenceCheck(lower, 0.0, upper)
    zeros = symbol.zeros(w, Rectangle(sigma, cap, -2 * T, 2 * T))
    disk_points = np.array([halfstrip_inverse(s, sigma, T) for s in zeros.locations])
    weights = np.asarray(zeros.multiplicities, dtype=float)
    nevanlinna = float(np.sum(weights * (1 - np.abs(disk_points) ** 2) ** a))
    mid = T ** (a - 1) * nevanlinna
    logger.info(f"Transference at T = {T}: lower={lower:.6g} mid={mid:.6g} upper={upper:.6g}")
    return TransferenceCheck(lower, mid, upper)

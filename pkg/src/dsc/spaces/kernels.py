"""
Reproducing kernels of D_a and the series J_a(w) = sum (log n)^{1-a} n^{-w}.

Partial sums run to N; the remainder sum_{n > N} F(n) is replaced by the midpoint integral
int_{N+1/2}^inf F(x) dx, which for F(x) = (log x)^{q-1} x^{-z} is k^{-q} Gamma(q, k L) with
k = z - 1 and L = log(N + 1/2). The reported tail bound is the same integral from N with
|x^{-z}| in place of x^{-z}.
"""

import logging
import math
from typing import NamedTuple

import mpmath
import numpy as np
from scipy import special

from dsc.core.errors import ConfigError
from dsc.core.settings import settings
from dsc.series import DirichletPolynomial
from dsc.spaces.norms import SpaceWeight

logger = logging.getLogger(__name__)

_MAX_TERMS = 2**22


class JaValue(NamedTuple):
    value: complex
    main_term: complex
    Ea_estimate: complex


def _upper_gamma_real(q: float, x: float) -> float:
    if q == 0:
        return float(special.exp1(x))
    if q > 0:
        return float(special.gammaincc(q, x) * special.gamma(q))
    return float(mpmath.gammainc(q, x))


def log_power_tail(q: float, z: complex, start: float) -> complex:
    """int_start^inf (log x)^{q-1} x^{-z} dx for Re z > 1 and start > 1."""
    k = complex(z) - 1
    if k.real <= 0:
        raise ConfigError(f"The tail integral needs Re z > 1, got {z}")
    L = math.log(start)
    if k.imag == 0:
        return complex(k.real ** (-q) * _upper_gamma_real(q, k.real * L))
    return complex(mpmath.power(k, -q) * mpmath.gammainc(q, k * L))


def _log_power_sum(q: float, z: complex, N: int, include_one: bool) -> tuple[complex, float]:
    """sum_{n <= N} (log n)^{q-1} n^{-z} plus the midpoint tail, and a bound on the remainder."""
    if N < 2:
        raise ConfigError(f"Truncation order must be >= 2, got {N}")
    n = np.arange(2, N + 1, dtype=float)
    logs = np.log(n)
    head = complex(np.sum(np.power(logs, q - 1) * np.exp(-complex(z) * logs)))
    if include_one:
        head += 1.0
    tail = log_power_tail(q, z, N + 0.5)
    bound = abs(log_power_tail(q, complex(z).real, float(N)))
    return head + tail, bound


def kernel_polynomial(s: complex, a: float, N: int) -> DirichletPolynomial:
    """Truncated kernel 1 + sum_{2 <= n <= N} (log n)^{-a} n^{-conj(s)} n^{-w} as a polynomial."""
    SpaceWeight(a)
    s = complex(s)
    return DirichletPolynomial.from_terms(
        [(1, 1.0)]
        + [(n, math.log(n) ** (-a) * np.exp(-s.conjugate() * math.log(n))) for n in range(2, N + 1)]
    )


def kernel_eval(
    s: complex, a: float, w: complex, N: int | None = None, tol: float | None = None
) -> complex:
    """
    k_{s,a}(w) = 1 + sum_{n >= 2} (log n)^{-a} n^{-conj(s) - w}.

    With ``tol`` the truncation doubles until the tail bound falls below it.
    """
    SpaceWeight(a)
    s, w = complex(s), complex(w)
    if s.real <= 0.5 or w.real <= 0.5:
        raise ConfigError(f"Kernel evaluation needs Re s, Re w > 1/2, got {s}, {w}")
    N = settings.DSC_TRUNCATION if N is None else N
    z = s.conjugate() + w
    value, bound = _log_power_sum(1 - a, z, N, include_one=True)
    while tol is not None and bound > tol and N < _MAX_TERMS:
        N *= 2
        value, bound = _log_power_sum(1 - a, z, N, include_one=True)
    if tol is not None and bound > tol:
        logger.warning(f"Kernel tail bound {bound:.3g} exceeds {tol:.3g} at N = {N}")
    return value


def kernel_norm(s: complex, a: float, N: int | None = None) -> float:
    return math.sqrt(kernel_eval(s, a, s, N).real)


def Ja_eval(w: complex, a: float, N: int | None = None) -> JaValue:
    """
    J_a(w) = sum_{n >= 1} (log n)^{1-a} n^{-w} with its main term Gamma(2-a) / (w-1)^{2-a}.

    The n = 1 term is 1 for a = 1 and 0 otherwise.
    """
    SpaceWeight(a)
    w = complex(w)
    if w.real <= 1:
        raise ConfigError(f"J_a needs Re w > 1, got {w}")
    N = settings.DSC_TRUNCATION if N is None else N
    value, bound = _log_power_sum(2 - a, w, N, include_one=(a == 1))
    logger.debug(f"J_{a}({w}) tail bound {bound:.3g} at N = {N}")
    main = float(special.gamma(2 - a)) / (w - 1) ** (2 - a)
    return JaValue(value, main, value - main)

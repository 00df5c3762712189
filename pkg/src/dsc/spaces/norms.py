import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from dsc.core.enums import SpaceKind
from dsc.core.errors import ConfigError
from dsc.series import DirichletPolynomial, derivative

_QUAD_TOL = 1e-13


@dataclass(frozen=True)
class SpaceWeight:
    """The weight exponent a of D_a, with the norm weight log(n)^a."""

    a: float

    def __post_init__(self) -> None:
        if self.a > 1:
            raise ConfigError(f"D_a is defined for a <= 1, got a = {self.a}")

    @property
    def kind(self) -> SpaceKind:
        return space_kind(self.a)

    @property
    def area_constant(self) -> float:
        """2^{1-a} / Gamma(2-a), the constant in front of the area integrals."""
        return 2 ** (1 - self.a) / float(special.gamma(2 - self.a))

    def weights(self, frequencies: Sequence[int]) -> np.ndarray:
        n = np.asarray(frequencies, dtype=float)
        logs = np.log(n)
        return np.where(n == 1, 1.0, np.power(np.where(n == 1, 1.0, logs), self.a))


def space_kind(a: float) -> SpaceKind:
    if a > 1:
        raise ConfigError(f"D_a is defined for a <= 1, got a = {a}")
    if a < 0:
        return SpaceKind.BERGMAN
    return SpaceKind.HARDY if a == 0 else SpaceKind.DIRICHLET


def inner_product(f: DirichletPolynomial, g: DirichletPolynomial, a: float) -> complex:
    weight = SpaceWeight(a)
    common = sorted(set(f.support) & set(g.support))
    if not common:
        return 0j
    weights = weight.weights(common)
    return complex(
        sum(w * f.coefficient(n) * g.coefficient(n).conjugate() for n, w in zip(common, weights))
    )


def norm_Da(f: DirichletPolynomial, a: float) -> float:
    """||f||_a with ||f||_a^2 = |a_1|^2 + sum_{n >= 2} |a_n|^2 log(n)^a."""
    weights = SpaceWeight(a).weights(f.support)
    values = np.array([c for _, c in f.terms], dtype=complex)
    return math.sqrt(float(np.sum(weights * np.abs(values) ** 2)))


def vertical_mean_square(f: DirichletPolynomial, sigma: float, T: float | None = None) -> float:
    """
    (1/2T) * integral_{-T}^{T} |f(sigma + it)|^2 dt, or its T -> infinity limit when T is None.

    The finite-T mean pairs every two frequencies through sin(T l) / (T l) with l = log(n/m).
    """
    if not f.terms:
        return 0.0
    logs = np.array([math.log(n) for n in f.support])
    scaled = np.array([c for _, c in f.terms], dtype=complex) * np.exp(-sigma * logs)
    if T is None:
        return float(np.sum(np.abs(scaled) ** 2))
    if T <= 0:
        raise ConfigError(f"T must be positive, got {T}")
    gaps = np.subtract.outer(logs, logs)
    kernel = np.sinc(T * gaps / math.pi)
    return float(np.real(scaled @ kernel @ scaled.conj()))


def littlewood_paley_norm(
    f: DirichletPolynomial,
    a: float,
    sigma_schedule: Sequence[float] | None = None,
    T_schedule: Sequence[float] | None = None,
) -> float:
    """
    Area form of ||f||_a: |f(+inf)|^2 + 2^{1-a}/Gamma(2-a) * int_0^inf sigma^{1-a} m(sigma) d sigma,
    where m(sigma) is (1/T) int_{-T}^{T} |f'(sigma + it)|^2 dt.

    Without a T schedule m uses the exact vertical mean of f'; otherwise the finite mean at the
    largest T. ``sigma_schedule`` adds breakpoints to the sigma quadrature.
    """
    weight = SpaceWeight(a)
    slope = derivative(f)
    T = T_schedule[-1] if T_schedule else None

    def mean(sigma: float) -> float:
        return 2 * vertical_mean_square(slope, sigma, T)

    # the sigma^{1-a} factor on [0, 1] is handled as an algebraic end-point weight
    near, _ = integrate.quad(
        mean, 0.0, 1.0, weight="alg", wvar=(1 - a, 0.0), epsabs=_QUAD_TOL, epsrel=_QUAD_TOL
    )
    far = 0.0
    knots = [1.0, *sorted(s for s in (sigma_schedule or ()) if s > 1.0), math.inf]
    for lo, hi in zip(knots, knots[1:]):
        piece, _ = integrate.quad(
            lambda s: s ** (1 - a) * mean(s), lo, hi, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=200
        )
        far += piece
    value = abs(f.at_infinity) ** 2 + weight.area_constant * (near + far)
    return math.sqrt(value)


def bergman_measure_norm(f: DirichletPolynomial, a: float) -> float:
    """
    Measure form of a Bergman-type norm: int_0^inf ||f_sigma||_0^2 d mu(sigma) with
    d mu = 2^{-a}/Gamma(-a) * sigma^{-a-1} e^{-2 sigma} d sigma, for a < 0.

    Per frequency this is |a_n|^2 (1 + log n)^a, comparable to the D_a weight log(n)^a.
    """
    if a >= 0:
        raise ConfigError(f"The measure form needs a < 0, got a = {a}")
    scale = 2 ** (-a) / float(special.gamma(-a))

    def hardy(sigma: float) -> float:
        return vertical_mean_square(f, sigma) * math.exp(-2 * sigma)

    near, _ = integrate.quad(
        hardy, 0.0, 1.0, weight="alg", wvar=(-a - 1, 0.0), epsabs=_QUAD_TOL, epsrel=_QUAD_TOL
    )
    far, _ = integrate.quad(
        lambda s: s ** (-a - 1) * hardy(s), 1.0, math.inf, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL
    )
    return math.sqrt(scale * (near + far))

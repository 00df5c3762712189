"""
Periodic symbols phi(s) = g(u * b^{-s}) built from explicit self-maps g of the unit disk.

Solutions of phi(s) = w are the disk preimages z of w lifted to the vertical lattice
s = -log(z / u) / log b + i k 2 pi / log b, so every counting quantity has a closed form.
"""

import cmath
import logging
import math
from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace

import numpy as np
from scipy import special

from dsc.core.enums import SymbolClass
from dsc.core.errors import ConfigError
from dsc.series import Character, DirichletPolynomial, single_base
from dsc.zeros.rectangle import Rectangle, Zero, ZeroSet

logger = logging.getLogger(__name__)

Preimages = list[tuple[complex, int]]

_BOUNDARY_NODES = 4096
_ROOT_MERGE_TOL = 1e-7
_MAX_PREIMAGES = 10_000_000


class DiskMap(ABC):
    """A holomorphic map g on the unit disk with explicitly computable preimages."""

    name: str = "disk-map"
    finite_preimages: bool = True
    taylor_order: int = 64

    @abstractmethod
    def __call__(self, z): ...

    @abstractmethod
    def derivative(self, z): ...

    @abstractmethod
    def preimages(self, w: complex, radius: float) -> Preimages:
        """Solutions z of g(z) = w with |z| < radius, with multiplicities."""

    @abstractmethod
    def derivative_bound(self, r: float) -> float:
        """Upper bound for |g'| on the closed disk |z| <= r."""

    @abstractmethod
    def taylor(self, order: int) -> np.ndarray:
        """Taylor coefficients c_0..c_order at the origin."""

    @property
    def at_zero(self) -> complex:
        return complex(self(0j))

    def maps_into_half_plane(self) -> bool:
        """Whether g(D) lies in Re w > 1/2."""
        theta = np.linspace(0.0, 2 * np.pi, _BOUNDARY_NODES, endpoint=False)
        return bool(np.min(np.real(self(np.exp(1j * theta)))) > 0.5)

    def innermost_modulus(self, w: complex) -> float | None:
        points = [abs(z) for z, _ in self.preimages(w, 1.0)]
        return min(points) if points else None

    def preimage_tail(self, w: complex, radius: float, alpha: float, classical: bool) -> float:
        """Bound on the Nevanlinna-type sum over preimages with |z| >= radius."""
        return 0.0

    def boundary_energy(self, f: DirichletPolynomial) -> float:
        """(1/2pi) * integral of |f(g(e^{i theta}))|^2 over the circle."""
        theta = np.linspace(0.0, 2 * np.pi, _BOUNDARY_NODES, endpoint=False)
        return float(np.mean(np.abs(f(self(np.exp(1j * theta)))) ** 2))

    @property
    def is_real(self) -> bool:
        """Whether g has real Taylor coefficients, i.e. commutes with conjugation."""
        return bool(np.allclose(self.taylor(8).imag, 0.0))

    def composed_taylor(self, f: DirichletPolynomial, order: int) -> np.ndarray:
        """Taylor coefficients of f(g(z)) up to ``order``, by FFT on the unit circle."""
        size = max(_BOUNDARY_NODES, 2 * (order + 1))
        theta = 2 * np.pi * np.arange(size) / size
        return np.fft.fft(f(self(np.exp(1j * theta))))[: order + 1] / size

    def preimage_power_sum(self, w, b: float) -> np.ndarray:
        """sum of multiplicity * log(1/|z|)^b over the preimages z != 0 in D, for each target."""
        targets = np.asarray(w, dtype=complex)
        sums = [
            sum(m * (-math.log(abs(z))) ** b for z, m in self.preimages(complex(v), 1.0) if z != 0)
            for v in targets.ravel()
        ]
        return np.asarray(sums, dtype=float).reshape(targets.shape)


def _univalent_power_sum(z: np.ndarray, b: float) -> np.ndarray:
    modulus = np.abs(z)
    inside = (modulus < 1) & (modulus > 0)
    sums = np.zeros(modulus.shape)
    sums[inside] = (-np.log(modulus[inside])) ** b
    return sums


class AffineMap(DiskMap):
    """g(z) = c + d z; g(z) = z gives phi = 2^{-s}."""

    name = "affine"

    def __init__(self, c: complex = 0.0, d: complex = 1.0) -> None:
        if d == 0:
            raise ConfigError("Affine disk map needs d != 0")
        self.c = complex(c)
        self.d = complex(d)

    def __call__(self, z):
        return self.c + self.d * np.asarray(z, dtype=complex) if np.ndim(z) else self.c + self.d * z

    def derivative(self, z):
        return np.full(np.shape(z), self.d) if np.ndim(z) else self.d

    def inverse(self, w):
        return (np.asarray(w, dtype=complex) - self.c) / self.d

    def preimage_power_sum(self, w, b: float) -> np.ndarray:
        return _univalent_power_sum(self.inverse(w), b)

    def preimages(self, w: complex, radius: float) -> Preimages:
        z = (complex(w) - self.c) / self.d
        return [(z, 1)] if abs(z) < radius else []

    def derivative_bound(self, r: float) -> float:
        return abs(self.d)

    def taylor(self, order: int) -> np.ndarray:
        coefficients = np.zeros(order + 1, dtype=complex)
        coefficients[0] = self.c
        if order >= 1:
            coefficients[1] = self.d
        return coefficients

    def maps_into_half_plane(self) -> bool:
        return self.c.real - abs(self.d) >= 0.5

    def __repr__(self) -> str:
        return f"AffineMap(c={self.c}, d={self.d})"


class MobiusMap(DiskMap):
    """g(z) = ((conj(nu) - 1) z + nu) / (1 - z), mapping D onto Re w > 1/2 with g(0) = nu."""

    name = "mobius"
    taylor_order = 2**16

    def __init__(self, nu: complex = 1.0) -> None:
        nu = complex(nu)
        if nu.real <= 0.5:
            raise ConfigError(f"Mobius disk map needs Re nu > 1/2, got {nu}")
        self.nu = nu

    def __call__(self, z):
        z = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
        return ((self.nu.conjugate() - 1) * z + self.nu) / (1 - z)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
        return (2 * self.nu.real - 1) / (1 - z) ** 2

    def inverse(self, w):
        w = np.asarray(w, dtype=complex) if np.ndim(w) else complex(w)
        return (w - self.nu) / (w + self.nu.conjugate() - 1)

    def preimage_power_sum(self, w, b: float) -> np.ndarray:
        return _univalent_power_sum(np.asarray(self.inverse(w)), b)

    def preimages(self, w: complex, radius: float) -> Preimages:
        w = complex(w)
        denominator = w + self.nu.conjugate() - 1
        if denominator == 0:
            return []
        z = (w - self.nu) / denominator
        return [(z, 1)] if abs(z) < radius else []

    def derivative_bound(self, r: float) -> float:
        return (2 * self.nu.real - 1) / (1 - r) ** 2

    def taylor(self, order: int) -> np.ndarray:
        coefficients = np.full(order + 1, 2 * self.nu.real - 1, dtype=complex)
        coefficients[0] = self.nu
        return coefficients

    def maps_into_half_plane(self) -> bool:
        return True

    def boundary_energy(self, f: DirichletPolynomial) -> float:
        # boundary of D goes to Re w = 1/2; the arc-length measure becomes the Poisson
        # measure of C_{1/2} at nu, whose Fourier transform is exp(i y0 l - x0 |l|)
        x0 = self.nu.real - 0.5
        y0 = self.nu.imag
        logs = np.array([math.log(n) for n in f.support])
        values = np.array([c for _, c in f.terms], dtype=complex) * np.exp(-0.5 * logs)
        gaps = np.subtract.outer(logs, logs)  # log(n/m)
        kernel = np.exp(-1j * y0 * gaps - x0 * np.abs(gaps))
        return float(np.real(values @ kernel @ values.conj()))

    def composed_taylor(self, f: DirichletPolynomial, order: int) -> np.ndarray:
        # n^{-g(z)} = n^{-nu} exp(-l z/(1-z)) with l = (2 Re nu - 1) log n; Laguerre series in z
        k = np.arange(1, order + 1)
        coefficients = np.zeros(order + 1, dtype=complex)
        for n, a in f.terms:
            head = a * cmath.exp(-self.nu * math.log(n))
            coefficients[0] += head
            if n > 1:
                lam = (2 * self.nu.real - 1) * math.log(n)
                coefficients[1:] += head * (-(lam / k) * special.eval_genlaguerre(k - 1, 1, lam))
        return coefficients

    def __repr__(self) -> str:
        return f"MobiusMap(nu={self.nu})"


class ExponentialMap(DiskMap):
    """g(z) = exp(-(1 + z) / (1 - z)), an inner function with infinitely many preimages."""

    name = "exponential"
    finite_preimages = False

    def __call__(self, z):
        z = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
        return np.exp(-(1 + z) / (1 - z)) if np.ndim(z) else cmath.exp(-(1 + z) / (1 - z))

    def derivative(self, z):
        z = np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)
        return self(z) * (-2 / (1 - z) ** 2)

    @staticmethod
    def _polar(w: complex) -> tuple[float, float]:
        w = complex(w)
        if w == 0 or abs(w) >= 1:
            raise ConfigError(f"Exponential disk map attains only 0 < |w| < 1, got {w}")
        return -math.log(abs(w)), cmath.phase(w)

    def _angles(self, w: complex, radius: float) -> tuple[float, np.ndarray]:
        b, theta = self._polar(w)
        if radius >= 1:
            raise ConfigError("Exponential disk map has infinitely many preimages in D")
        bound = (radius**2 * (1 + b) ** 2 - (1 - b) ** 2) / (1 - radius**2)
        if bound <= 0:
            return b, np.empty(0)
        limit = math.sqrt(bound)
        n_low = math.floor((-limit - theta) / (2 * math.pi)) + 1
        n_high = math.ceil((limit - theta) / (2 * math.pi)) - 1
        if n_high - n_low + 1 > _MAX_PREIMAGES:
            raise ConfigError(f"Radius {radius} admits more than {_MAX_PREIMAGES} preimages")
        return b, theta + 2 * np.pi * np.arange(n_low, n_high + 1)

    def preimages(self, w: complex, radius: float) -> Preimages:
        b, angles = self._angles(w, radius)
        points = (1 - b + 1j * angles) / (1j * angles - b - 1)
        return [(complex(z), 1) for z in points]

    def preimage_moduli(self, w: complex, radius: float) -> np.ndarray:
        """1 - |z_n|^2 for the preimages inside ``radius``; vectorized form of ``preimages``."""
        b, angles = self._angles(w, radius)
        return 4 * b / ((1 + b) ** 2 + angles**2)

    def innermost_modulus(self, w: complex) -> float | None:
        b, theta = self._polar(w)
        nearest = theta - 2 * math.pi * round(theta / (2 * math.pi))
        return math.sqrt(((1 - b) ** 2 + nearest**2) / ((1 + b) ** 2 + nearest**2))

    def preimage_tail(self, w: complex, radius: float, alpha: float, classical: bool) -> float:
        b, _ = self._polar(w)
        if alpha <= 0.5:
            return math.inf
        limit = math.sqrt(max((radius**2 * (1 + b) ** 2 - (1 - b) ** 2) / (1 - radius**2), 0.0))
        first = (4 * b / ((1 + b) ** 2 + limit**2)) ** alpha
        integral = (4 * b) ** alpha * max(limit, 1e-300) ** (1 - 2 * alpha) / (
            2 * math.pi * (2 * alpha - 1)
        )
        tail = 2 * (first + integral)
        return tail / (2 * radius**2) if classical else tail

    def derivative_bound(self, r: float) -> float:
        return 2 / (1 - r) ** 2

    def taylor(self, order: int) -> np.ndarray:
        # exp(-2z/(1-z)) = sum L_m^{(-1)}(2) z^m and L_m^{(-1)}(x) = -(x/m) L_{m-1}^{(1)}(x)
        m = np.arange(1, order + 1)
        coefficients = np.ones(order + 1, dtype=complex)
        coefficients[1:] = -(2.0 / m) * special.eval_genlaguerre(m - 1, 1, 2.0)
        return coefficients * math.exp(-1)

    def maps_into_half_plane(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "ExponentialMap()"


class PolynomialMap(DiskMap):
    """g(z) = sum_k c_k z^k; any single-base Dirichlet polynomial is phi = g(b^{-s})."""

    name = "polynomial"

    def __init__(self, coefficients: Sequence[complex]) -> None:
        coefficients = np.trim_zeros(np.asarray(coefficients, dtype=complex), "b")
        if coefficients.size < 2:
            raise ConfigError("Polynomial disk map needs degree >= 1")
        self.coefficients = coefficients
        self._poly = np.polynomial.Polynomial(coefficients)
        self._slope = self._poly.deriv()

    def __call__(self, z):
        value = self._poly(np.asarray(z, dtype=complex))
        return value if np.ndim(z) else complex(value)

    def derivative(self, z):
        value = self._slope(np.asarray(z, dtype=complex))
        return value if np.ndim(z) else complex(value)

    def preimages(self, w: complex, radius: float) -> Preimages:
        shifted = self.coefficients.copy()
        shifted[0] -= w
        roots = np.polynomial.polynomial.polyroots(shifted)
        clusters: list[list[complex]] = []
        for root in sorted(roots, key=lambda r: (r.real, r.imag)):
            for cluster in clusters:
                if abs(cluster[0] - root) < _ROOT_MERGE_TOL:
                    cluster.append(root)
                    break
            else:
                clusters.append([root])
        points = [(complex(np.mean(c)), len(c)) for c in clusters]
        return [(z, m) for z, m in points if abs(z) < radius]

    def derivative_bound(self, r: float) -> float:
        k = np.arange(1, self.coefficients.size)
        return float(np.sum(k * np.abs(self.coefficients[1:]) * r ** (k - 1)))

    def taylor(self, order: int) -> np.ndarray:
        coefficients = np.zeros(order + 1, dtype=complex)
        size = min(order + 1, self.coefficients.size)
        coefficients[:size] = self.coefficients[:size]
        return coefficients

    def __repr__(self) -> str:
        return f"PolynomialMap({self.coefficients.tolist()})"


@dataclass(frozen=True)
class LatticeRows:
    """Preimage rows of a periodic symbol: Re s, Im offset in [0, period), multiplicity."""

    re: np.ndarray
    offset: np.ndarray
    multiplicity: np.ndarray
    period: float
    excluded: tuple[complex, ...] = ()


@dataclass(frozen=True)
class PeriodicSymbol:
    disk_map: DiskMap
    base: int = 2
    rotation: complex = 1.0 + 0j

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ConfigError(f"Base must be >= 2, got {self.base}")
        if abs(abs(self.rotation) - 1) > 1e-12:
            raise ConfigError(f"Rotation must be unimodular, got {self.rotation}")

    @classmethod
    def from_dirichlet(cls, f: DirichletPolynomial) -> "PeriodicSymbol | None":
        base = single_base(f)
        if base is None:
            return None
        log_base = math.log(base)
        powers = {n: round(math.log(n) / log_base) for n in f.support}
        coefficients = np.zeros(max(powers.values()) + 1, dtype=complex)
        for n, c in f.terms:
            coefficients[powers[n]] += c
        if coefficients.size == 2:
            return cls(AffineMap(coefficients[0], coefficients[1]), base)
        return cls(PolynomialMap(coefficients), base)

    @property
    def log_base(self) -> float:
        return math.log(self.base)

    @property
    def period(self) -> float:
        return 2 * math.pi / self.log_base

    @property
    def at_infinity(self) -> complex:
        return self.disk_map.at_zero

    @property
    def class_tag(self) -> SymbolClass:
        return SymbolClass.G0 if self.disk_map.maps_into_half_plane() else SymbolClass.UNTAGGED

    def _z(self, s):
        return self.rotation * np.exp(-np.asarray(s, dtype=complex) * self.log_base)

    def __call__(self, s):
        value = self.disk_map(self._z(s))
        return value if np.ndim(s) else complex(value)

    def derivative(self, s):
        z = self._z(s)
        value = self.disk_map.derivative(z) * z * (-self.log_base)
        return value if np.ndim(s) else complex(value)

    def derivative_bound(self, sigma: float) -> float:
        r = self.base ** (-sigma)
        return self.disk_map.derivative_bound(r) * self.log_base * r

    def twist(self, chi: Character) -> "PeriodicSymbol":
        return replace(self, rotation=self.rotation * chi(self.base))

    def as_dirichlet(self, N: int) -> DirichletPolynomial:
        order = int(math.floor(math.log(N) / self.log_base + 1e-12)) if N > 1 else 0
        coefficients = self.disk_map.taylor(order)
        return DirichletPolynomial.from_terms(
            (self.base**k, coefficients[k] * self.rotation**k) for k in range(order + 1)
        )

    def preimages(self, w: complex, sigma: float) -> Preimages:
        """Disk preimages belonging to solutions with Re s > sigma."""
        return self.disk_map.preimages(w, self.base ** (-sigma))

    def lattice(self, w: complex, sigma: float) -> LatticeRows:
        return lattice_rows(self.disk_map.preimages, w, sigma, self.base, self.rotation)

    def lattice_density(self, a: float, w: complex, sigma: float = 0.0) -> float:
        """The iterated limit of (pi/T) * sum (Re s)^a over solutions with Re s > sigma."""
        rows = self.lattice(w, sigma)
        return float(self.log_base * np.sum(rows.multiplicity * rows.re**a))

    def counting_density(self, a: float, w) -> np.ndarray:
        """Vectorized form of ``lattice_density(a, w, 0)`` over an array of targets."""
        return self.log_base ** (1 - a) * self.disk_map.preimage_power_sum(w, a)

    @property
    def is_real(self) -> bool:
        return self.disk_map.is_real and self.rotation == 1

    def zero_free_abscissa(self, w: complex) -> float:
        """An abscissa beyond which phi - w has no zeros."""
        innermost = self.disk_map.innermost_modulus(w)
        if innermost is None or innermost == 0:
            return 1.0
        return -math.log(innermost) / self.log_base + 1.0

    def zeros(self, w: complex, rect: Rectangle) -> ZeroSet:
        return zeros_periodic_symbol(
            self.disk_map.preimages, w, rect, base=self.base, rotation=self.rotation
        )


def lattice_rows(
    preimages: Callable[[complex, float], Preimages],
    w: complex,
    sigma: float,
    base: int = 2,
    rotation: complex = 1.0,
) -> LatticeRows:
    log_base = math.log(base)
    period = 2 * math.pi / log_base
    kept: list[tuple[float, float, int]] = []
    excluded: list[complex] = []
    for z, multiplicity in preimages(w, base ** (-sigma)):
        if z == 0 or abs(z) >= 1:
            excluded.append(z)
            continue
        re = -math.log(abs(z)) / log_base
        if re <= sigma:
            continue
        offset = (-cmath.phase(z / rotation) / log_base) % period
        kept.append((re, offset, multiplicity))
    if excluded:
        logger.info(f"Excluded {len(excluded)} preimages at z = 0 or on the unit circle")
    columns = np.array(kept, dtype=float).reshape(-1, 3)
    return LatticeRows(
        re=columns[:, 0],
        offset=columns[:, 1],
        multiplicity=columns[:, 2].astype(int),
        period=period,
        excluded=tuple(excluded),
    )


def zeros_periodic_symbol(
    g_inverse_preimages: Callable[[complex, float], Preimages],
    w: complex,
    rect: Rectangle,
    *,
    base: int = 2,
    rotation: complex = 1.0,
) -> ZeroSet:
    """
    Solutions of g(u b^{-s}) = w inside ``rect`` from the disk preimages of w.

    Preimages at z = 0 or on the unit circle have no lattice and are reported in ``excluded``.
    """
    rows = lattice_rows(g_inverse_preimages, w, rect.sigma_min, base, rotation)
    zeros: list[Zero] = []
    for re, offset, multiplicity in zip(rows.re, rows.offset, rows.multiplicity):
        if not re < rect.sigma_max:
            continue
        k_low = math.floor((rect.t_min - offset) / rows.period) + 1
        k_high = math.ceil((rect.t_max - offset) / rows.period) - 1
        for k in range(k_low, k_high + 1):
            zeros.append(Zero(complex(re, offset + k * rows.period), int(multiplicity)))
    return ZeroSet(
        zeros=tuple(zeros),
        winding_total=sum(z.multiplicity for z in zeros),
        rect=rect,
        excluded=rows.excluded,
    )

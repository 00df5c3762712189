import cmath
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cache, cached_property
from typing import overload

import numpy as np
import sympy

from dsc.core.enums import SymbolClass
from dsc.core.errors import ConfigError, SymbolClassError

UNIMODULAR_TOL = 1e-12

# sample grid for the C_0 -> C_{1/2} mapping check
_CLASS_CHECK_RE = np.geomspace(1e-6, 10.0, 40)
_CLASS_CHECK_IM_POINTS = 256


@cache
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as sorted (prime, exponent) pairs."""
    return tuple(sorted(sympy.factorint(n).items()))


@dataclass(frozen=True)
class DirichletPolynomial:
    """
    A finite Dirichlet series ``sum a_n n^{-s}``.

    Terms are stored sparsely as sorted ``(n, a_n)`` pairs with nonzero coefficients.
    """

    terms: tuple[tuple[int, complex], ...] = ()

    def __post_init__(self) -> None:
        previous = 0
        for n, _ in self.terms:
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise ConfigError(f"Frequencies must be integers >= 1, got {n!r}")
            if n <= previous:
                raise ConfigError("Frequencies must be strictly increasing")
            previous = n

    @classmethod
    def from_terms(
        cls, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]]
    ) -> "DirichletPolynomial":
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        merged: dict[int, complex] = {}
        for n, c in items:
            if isinstance(n, float) and n.is_integer():
                n = int(n)
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise ConfigError(f"Frequencies must be integers >= 1, got {n!r}")
            merged[n] = merged.get(n, 0j) + complex(c)
        return cls(tuple((n, c) for n, c in sorted(merged.items()) if c != 0))

    @classmethod
    def zero(cls) -> "DirichletPolynomial":
        return cls(())

    @classmethod
    def constant(cls, c: complex) -> "DirichletPolynomial":
        return cls.from_terms({1: c})

    @classmethod
    def monomial(cls, n: int, c: complex = 1.0) -> "DirichletPolynomial":
        return cls.from_terms({n: c})

    @property
    def coeffs(self) -> dict[int, complex]:
        return dict(self.terms)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def max_frequency(self) -> int:
        return self.terms[-1][0] if self.terms else 1

    @property
    def at_infinity(self) -> complex:
        """f(+inf), the coefficient at frequency 1."""
        return self.coefficient(1)

    def coefficient(self, n: int) -> complex:
        return self.coeffs.get(n, 0j)

    @cached_property
    def _logs(self) -> np.ndarray:
        return np.array([math.log(n) for n, _ in self.terms], dtype=float)

    @cached_property
    def _values(self) -> np.ndarray:
        return np.array([c for _, c in self.terms], dtype=complex)

    @overload
    def __call__(self, s: complex) -> complex: ...

    @overload
    def __call__(self, s: np.ndarray) -> np.ndarray: ...

    def __call__(self, s):
        points = np.asarray(s, dtype=complex)
        if not self.terms:
            result = np.zeros(points.shape, dtype=complex)
        else:
            result = np.exp(-np.multiply.outer(points, self._logs)) @ self._values
        return complex(result) if points.ndim == 0 else result

    def abs_tail(self, sigma: float) -> float:
        """sum_{n >= 2} |a_n| n^{-sigma}."""
        mask = self._logs > 0
        return float(np.sum(np.abs(self._values[mask]) * np.exp(-sigma * self._logs[mask])))

    def derivative_bound(self, sigma: float) -> float:
        """Upper bound for |f'(s)| on the closed half-plane Re s >= sigma."""
        return float(np.sum(np.abs(self._values) * self._logs * np.exp(-sigma * self._logs)))

    def __add__(self, other: "DirichletPolynomial") -> "DirichletPolynomial":
        if not isinstance(other, DirichletPolynomial):
            return NotImplemented
        return DirichletPolynomial.from_terms(self.terms + other.terms)

    def __neg__(self) -> "DirichletPolynomial":
        return DirichletPolynomial(tuple((n, -c) for n, c in self.terms))

    def __sub__(self, other: "DirichletPolynomial") -> "DirichletPolynomial":
        if not isinstance(other, DirichletPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: complex) -> "DirichletPolynomial":
        if isinstance(scalar, DirichletPolynomial):
            raise TypeError("Use multiply_truncated for Dirichlet products")
        return DirichletPolynomial.from_terms((n, c * scalar) for n, c in self.terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "DirichletPolynomial":
        return self * (1 / scalar)

    def __repr__(self) -> str:
        body = " + ".join(f"({c:.6g})*{n}^-s" for n, c in self.terms) or "0"
        return f"DirichletPolynomial({body})"


@dataclass(frozen=True)
class Character:
    """
    A finitely supported point of the infinite polytorus.

    ``values`` holds chi(p) for finitely many primes; chi(p) = 1 elsewhere. The extension to all
    integers is completely multiplicative.
    """

    values: tuple[tuple[int, complex], ...] = ()

    def __post_init__(self) -> None:
        for p, v in self.values:
            if not sympy.isprime(p):
                raise ConfigError(f"Character values must sit on primes, got {p}")
            if abs(abs(v) - 1.0) > UNIMODULAR_TOL:
                raise ConfigError(f"chi({p}) = {v} is not unimodular")

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, complex]) -> "Character":
        return cls(tuple(sorted((int(p), complex(v)) for p, v in mapping.items())))

    @classmethod
    def identity(cls) -> "Character":
        return cls(())

    @classmethod
    def vertical(cls, tau: float, primes: Iterable[int]) -> "Character":
        """The character p -> p^{-i tau}, i.e. the vertical translation by tau."""
        return cls.from_mapping({p: cmath.exp(-1j * tau * math.log(p)) for p in primes})

    @classmethod
    def sample(cls, primes: Iterable[int], rng: np.random.Generator) -> "Character":
        """Haar-uniform character on the finite subtorus spanned by ``primes``."""
        chosen = sorted(set(primes))
        phases = rng.uniform(0.0, 2 * math.pi, size=len(chosen))
        return cls.from_mapping({p: cmath.exp(1j * t) for p, t in zip(chosen, phases)})

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.values)

    def value(self, p: int) -> complex:
        return dict(self.values).get(p, 1.0 + 0j)

    def __call__(self, n: int) -> complex:
        result = 1.0 + 0j
        table = dict(self.values)
        for p, e in factorize(n):
            if p in table:
                result *= table[p] ** e
        return result

    def power(self, k: int) -> "Character":
        return Character(tuple((p, v**k) for p, v in self.values))


@dataclass(frozen=True)
class Symbol:
    """A symbol psi(s) = c0*s + phi(s) with its class tag."""

    phi: DirichletPolynomial
    c0: int = 0
    class_tag: SymbolClass = SymbolClass.UNTAGGED

    def __post_init__(self) -> None:
        if not isinstance(self.c0, int) or self.c0 < 0:
            raise ConfigError(f"Characteristic c0 must be a non-negative integer, got {self.c0!r}")
        if self.class_tag == SymbolClass.G0:
            if self.c0 != 0:
                raise SymbolClassError("A G0 symbol has characteristic c0 = 0")
            check_half_plane_mapping(self.phi)
        elif self.class_tag == SymbolClass.G_GE1 and self.c0 < 1:
            raise SymbolClassError("A Gge1 symbol has characteristic c0 >= 1")

    @property
    def at_infinity(self) -> complex:
        return self.phi.at_infinity

    def __call__(self, s):
        return self.c0 * s + self.phi(s)

    def twist(self, chi: Character) -> "Symbol":
        return Symbol(twist(self.phi, chi), self.c0, self.class_tag)


def check_half_plane_mapping(phi: DirichletPolynomial) -> float:
    """
    Sample C_0 and verify Re phi(s) > 1/2; returns the smallest sampled Re phi(s) - 1/2.
    """
    window = vertical_period(phi) or 8 * 2 * math.pi / math.log(2)
    im = np.linspace(0.0, window, _CLASS_CHECK_IM_POINTS, endpoint=False)
    grid = np.add.outer(_CLASS_CHECK_RE, 1j * im)
    margin = float(np.min(phi(grid).real)) - 0.5
    if margin <= 0:
        raise SymbolClassError(
            f"Symbol is not in G0: Re phi(s) - 1/2 reaches {margin:.3g} on the sample grid"
        )
    return margin


def single_base(f: DirichletPolynomial) -> int | None:
    """
    The integer b such that every frequency of ``f`` other than 1 is a power of b, if any.
    """
    bases = set()
    for n in f.support:
        if n == 1:
            continue
        decomposition = sympy.perfect_power(n)
        bases.add(int(decomposition[0]) if decomposition else n)
    if len(bases) != 1:
        return None
    return bases.pop()


def vertical_period(f: DirichletPolynomial) -> float | None:
    """Exact period in Im s of a single-base polynomial, None otherwise."""
    base = single_base(f)
    return None if base is None else 2 * math.pi / math.log(base)


def evaluate(f: DirichletPolynomial, s: complex) -> complex:
    return f(s)


def derivative(f: DirichletPolynomial) -> DirichletPolynomial:
    return DirichletPolynomial.from_terms((n, -c * math.log(n)) for n, c in f.terms)


def shift(f: DirichletPolynomial, sigma: float) -> DirichletPolynomial:
    return DirichletPolynomial.from_terms(
        (n, c * math.exp(-sigma * math.log(n))) for n, c in f.terms
    )


def twist(f: DirichletPolynomial, chi: Character) -> DirichletPolynomial:
    return DirichletPolynomial.from_terms((n, c * chi(n)) for n, c in f.terms)


def multiply_truncated(
    f: DirichletPolynomial, g: DirichletPolynomial, N: int
) -> DirichletPolynomial:
    if N < 1:
        raise ConfigError(f"Truncation order must be >= 1, got {N}")
    product: dict[int, complex] = {}
    right = g.terms
    for n, a in f.terms:
        if n > N:
            break
        limit = N // n
        for m, b in right:
            if m > limit:
                break
            product[n * m] = product.get(n * m, 0j) + a * b
    return DirichletPolynomial.from_terms(product)


def exp_truncated(g: DirichletPolynomial, N: int) -> DirichletPolynomial:
    """
    exp(g) truncated at frequency N.

    g must vanish at +inf; the k-th power has minimal frequency >= 2^k, so the series stops by
    itself once that exceeds N.
    """
    if g.at_infinity != 0:
        raise ConfigError("exp_truncated needs g(+inf) = 0; factor the constant term out first")
    result = DirichletPolynomial.constant(1.0)
    term = DirichletPolynomial.constant(1.0)
    k = 0
    while True:
        k += 1
        term = multiply_truncated(term, g, N) / k
        if term.is_zero:
            return result
        result = result + term


def compose_truncated(f: DirichletPolynomial, psi: Symbol, N: int) -> DirichletPolynomial:
    """
    Coefficients of f(psi(s)) up to frequency N.

    Each term uses n^{-psi(s)} = n^{-a_1} * n^{-c0 s} * exp(-log n * sum_{k>=2} c_k k^{-s}); the
    middle factor multiplies every frequency by n^{c0}.
    """
    if N < 1:
        raise ConfigError(f"Truncation order must be >= 1, got {N}")
    a1 = psi.phi.at_infinity
    tail = DirichletPolynomial(tuple((k, c) for k, c in psi.phi.terms if k != 1))
    composed = DirichletPolynomial.zero()
    for n, coefficient in f.terms:
        if n == 1:
            composed = composed + DirichletPolynomial.constant(coefficient)
            continue
        multiplier = n**psi.c0
        if multiplier > N:
            continue
        factor = coefficient * cmath.exp(-a1 * math.log(n))
        series = exp_truncated(tail * (-math.log(n)), N // multiplier)
        composed = composed + DirichletPolynomial.from_terms(
            (k * multiplier, c * factor) for k, c in series.terms
        )
    return composed


def gh_test_series(a: float, J: int) -> DirichletPolynomial:
    """Sum over the first J primes of p^{-s} / (sqrt(p) * log(p)^{1 + a/2})."""
    if a > 1:
        raise ConfigError(f"Weight exponent must satisfy a <= 1, got {a}")
    if J < 0:
        raise ConfigError(f"Number of primes must be >= 0, got {J}")
    primes = [int(sympy.prime(j)) for j in range(1, J + 1)]
    return DirichletPolynomial.from_terms(
        (p, 1.0 / (math.sqrt(p) * math.log(p) ** (1 + a / 2))) for p in primes
    )

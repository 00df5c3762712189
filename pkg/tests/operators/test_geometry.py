import math

import pytest

from dsc.core.errors import ConfigError, ExcludedPointError, SymbolClassError
from dsc.operators import (
    SchwarzGrid,
    boundary_ratio_proxy,
    disk_abscissa,
    halfstrip_inverse,
    hyperbolic_distance_halfplane,
    schwarz_constant,
    schwarz_validate,
)
from dsc.operators.geometry import check_inside
from dsc.series import DirichletPolynomial
from dsc.zeros import AffineMap, MobiusMap, PeriodicSymbol

AFFINE = PeriodicSymbol(AffineMap(1.5, 0.5))
MOBIUS = PeriodicSymbol(MobiusMap(1.0))


def test_hyperbolic_distance():
    assert hyperbolic_distance_halfplane(1.0, 2.0) == pytest.approx(math.log(2))
    assert hyperbolic_distance_halfplane(1 + 1j, 1 + 1j) == pytest.approx(0.0)
    d = hyperbolic_distance_halfplane(0.3 + 2j, 1.7 - 1j)
    assert d == pytest.approx(hyperbolic_distance_halfplane(1.7 - 1j, 0.3 + 2j))
    with pytest.raises(ConfigError):
        hyperbolic_distance_halfplane(-1.0, 1.0)


def test_schwarz_constant_is_tight_on_its_grid():
    grid = SchwarzGrid(n_re=41, n_im=64)
    C = schwarz_constant(AFFINE, grid)
    assert schwarz_validate(AFFINE, C, grid) == 0
    assert schwarz_validate(AFFINE, 0.9 * C, grid) > 0


def test_schwarz_constant_of_mobius_symbol():
    # Re phi - 1/2 = (1 - r)/(2(1 + r)) at the worst angle, with r = 2^{-Re s}
    assert schwarz_constant(MOBIUS) == pytest.approx(4 / math.log(2), rel=1e-2)
    assert boundary_ratio_proxy(MOBIUS) == pytest.approx(math.log(2) / 4, rel=1e-2)


def test_schwarz_needs_g0():
    with pytest.raises(SymbolClassError):
        schwarz_constant(PeriodicSymbol(AffineMap(0.0, 1.0)))
    with pytest.raises(ConfigError):
        boundary_ratio_proxy(MOBIUS, SchwarzGrid(re_min=0.1))


def test_refined_grid():
    grid = SchwarzGrid(n_re=11, n_im=8).refined(10)
    assert grid.n_re == 101
    assert grid.n_im == 80


def test_disk_abscissa():
    # |phi(s) - 3/2| <= 2^{-Re s - 1}
    assert disk_abscissa(AFFINE, 0.25) == pytest.approx(1.0, abs=1e-6)
    assert disk_abscissa(AFFINE, 1.0) == pytest.approx(0.0, abs=1e-9)
    polynomial = DirichletPolynomial.from_terms({1: 1.5, 2: 0.25, 3: 0.25})
    sigma = disk_abscissa(polynomial, 0.25)
    assert polynomial.abs_tail(sigma) < 0.25
    with pytest.raises(ConfigError):
        disk_abscissa(AFFINE, 0.0)


def test_halfstrip_inverse():
    sigma, T = 0.5, 10.0
    assert halfstrip_inverse(sigma + 2 * T, sigma, T) == pytest.approx(0j, abs=1e-14)
    s = 3.0 + 7.0j
    assert halfstrip_inverse(s.conjugate(), sigma, T) == pytest.approx(
        halfstrip_inverse(s, sigma, T).conjugate()
    )
    assert abs(halfstrip_inverse(s, sigma, T)) < 1
    assert abs(halfstrip_inverse(sigma + 1e-6, sigma, T)) == pytest.approx(1.0, abs=1e-5)
    with pytest.raises(ConfigError):
        halfstrip_inverse(1.0 + 25j, sigma, T)


def test_check_inside():
    with pytest.raises(ConfigError):
        check_inside(AFFINE, 0.5 + 1j)
    with pytest.raises(ExcludedPointError):
        check_inside(AFFINE, 1.5)
    assert check_inside(AFFINE, 2) == 2 + 0j

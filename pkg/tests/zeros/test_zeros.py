import math

import numpy as np
import pytest

from dsc.core.errors import ConfigError, ContourUnresolvedError
from dsc.series import Character, DirichletPolynomial, twist
from dsc.zeros import (
    AffineMap,
    ExponentialMap,
    MobiusMap,
    PeriodicSymbol,
    PolynomialMap,
    Rectangle,
    Zero,
    ZeroSet,
    locate_zeros,
    safe_rectangle,
    winding_number,
)

PERIOD = 2 * math.pi / math.log(2)


def test_rectangle_validation_and_splits():
    with pytest.raises(ConfigError):
        Rectangle(1.0, 1.0, 0.0, 1.0)
    rect = Rectangle.window(0.5, 2.5, 3.0)
    assert rect.center == complex(1.5, 0.0)
    left, right = rect.split_vertical(1.0)
    assert left.sigma_max == right.sigma_min == 1.0
    assert rect.contains(1 + 1j)
    assert not rect.contains(3 + 0j)


def test_zero_set_checks_certificate():
    rect = Rectangle(0.0, 1.0, 0.0, 1.0)
    with pytest.raises(ContourUnresolvedError):
        ZeroSet(zeros=(Zero(0.5 + 0.5j),), winding_total=2, rect=rect)
    zeros = ZeroSet(zeros=(Zero(0.7 + 0.1j), Zero(0.2 + 0.5j)), winding_total=2, rect=rect)
    assert zeros.locations == [0.2 + 0.5j, 0.7 + 0.1j]
    assert list(zeros.to_frame().columns) == ["re", "im", "multiplicity"]


def test_periodic_zeros_lie_on_lattice():
    symbol = PeriodicSymbol(AffineMap(0.0, 1.0))
    zeros = symbol.zeros(0.25, Rectangle(1.0, 3.0, -10.0, 10.0))
    assert len(zeros) == 3
    for s in zeros.locations:
        assert s.real == pytest.approx(2.0)
        assert symbol(s) == pytest.approx(0.25)
    assert sorted(z.imag for z in zeros.locations) == pytest.approx([-PERIOD, 0.0, PERIOD])


def test_locate_zeros_agrees_with_lattice():
    f = DirichletPolynomial.monomial(2)
    rect = Rectangle(1.0, 3.0, -5.0, 5.0)
    assert winding_number(f, 0.25, rect) == 1
    zeros = locate_zeros(f, 0.25, rect)
    assert len(zeros) == 1
    assert zeros.locations[0] == pytest.approx(2.0 + 0j, abs=1e-8)
    assert zeros.zeros[0].refined


def test_locate_zeros_for_two_frequency_polynomial():
    # 1/2 + 2^{-s} + 4^{-s} / 4 = w has the periodic solutions of a quadratic disk map
    f = DirichletPolynomial.from_terms({1: 0.5, 2: 1.0, 4: 0.25})
    symbol = PeriodicSymbol.from_dirichlet(f)
    assert isinstance(symbol.disk_map, PolynomialMap)
    w = 0.9
    rect = Rectangle(0.2, 4.0, -4.0, 4.0)
    expected = symbol.zeros(w, rect)
    located = locate_zeros(f, w, safe_rectangle(f, w, rect))
    assert len(located) == len(expected)
    for s in located.locations:
        assert abs(f(s) - w) < 1e-8


def test_safe_rectangle_moves_edge_off_a_solution():
    f = DirichletPolynomial.monomial(2)
    rect = Rectangle(0.5, 1.5, 0.0, 3.0)
    safe = safe_rectangle(f, 0.5, rect)
    assert safe.t_min > 0.0
    assert safe.t_max == pytest.approx(3.0)


def test_from_dirichlet_detects_single_base():
    affine = PeriodicSymbol.from_dirichlet(DirichletPolynomial.from_terms({1: 1.5, 2: 0.5}))
    assert isinstance(affine.disk_map, AffineMap)
    assert affine.at_infinity == pytest.approx(1.5)
    assert affine.class_tag == "G0"
    squares = PeriodicSymbol.from_dirichlet(DirichletPolynomial.from_terms({1: 1.0, 4: 1.0}))
    assert squares.base == 2
    assert squares.disk_map.taylor(2) == pytest.approx([1.0, 0.0, 1.0])
    assert PeriodicSymbol.from_dirichlet(DirichletPolynomial.from_terms({2: 1, 3: 1})) is None


def test_twist_rotates_the_disk_variable():
    symbol = PeriodicSymbol(AffineMap(1.5, 0.5))
    chi = Character.from_mapping({2: 1j})
    twisted = symbol.twist(chi)
    assert twisted.rotation == pytest.approx(1j)
    s = 0.3 + 0.2j
    assert twisted(s) == pytest.approx(1.5 + 0.5j * 2 ** (-s))


def test_mobius_map_and_inverse():
    g = MobiusMap(1.0)
    assert g.at_zero == pytest.approx(1.0)
    assert np.real(g(np.exp(1j * np.linspace(0.1, 6.0, 7)))) == pytest.approx(0.5)
    assert g(g.inverse(2.0 + 1j)) == pytest.approx(2.0 + 1j)
    with pytest.raises(ConfigError):
        MobiusMap(0.5)
    as_poly = PeriodicSymbol(g).as_dirichlet(8)
    assert as_poly.coeffs == {1: 1.0, 2: 1.0, 4: 1.0, 8: 1.0}


def test_polynomial_map_merges_double_roots():
    g = PolynomialMap([1.0, 0.0, 1.0])
    assert g.preimages(1.0, 1.0) == [(0j, 2)]


def test_exponential_map_preimages():
    g = ExponentialMap()
    w = math.exp(-1)
    points = g.preimages(w, 0.99)
    assert points[len(points) // 2][0] == pytest.approx(0j, abs=1e-12)
    for z, _ in points:
        assert g(z) == pytest.approx(w)
    moduli = g.preimage_moduli(w, 0.99)
    assert moduli == pytest.approx([1 - abs(z) ** 2 for z, _ in points])
    with pytest.raises(ConfigError):
        g.preimages(w, 1.0)
    with pytest.raises(ConfigError):
        g.preimages(1.5, 0.5)


def test_lattice_density_of_identity_map():
    symbol = PeriodicSymbol(AffineMap(0.0, 1.0))
    assert symbol.lattice_density(0.0, 0.25) == pytest.approx(math.log(2))
    assert symbol.lattice_density(1.0, 0.25) == pytest.approx(2 * math.log(2))
    assert symbol.counting_density(1.0, np.array([0.25])) == pytest.approx([math.log(4)])


def test_lattice_excludes_origin_preimage():
    symbol = PeriodicSymbol(AffineMap(0.5, 1.0))
    rows = symbol.lattice(0.5, 0.0)
    assert rows.re.size == 0
    assert rows.excluded == (0j,)


@pytest.mark.slow
@pytest.mark.parametrize(
    ("terms", "w", "re_zero"),
    [({2: 1.0}, 0.25, 2.0), ({1: 1.5, 2: 0.5}, 1.75, 1.0)],
)
def test_winding_matches_lattice_on_random_rectangles(terms, w, re_zero):
    f = DirichletPolynomial.from_terms(terms)
    rng = np.random.default_rng(11)
    for _ in range(50):
        sigma_min = re_zero - rng.uniform(0.2, 0.8)
        sigma_max = re_zero + rng.uniform(0.2, 2.0)
        rect = Rectangle(sigma_min, sigma_max, rng.uniform(-40.0, 0.0), rng.uniform(1.0, 40.0))
        rect = safe_rectangle(f, w, rect)
        k = np.arange(-10, 11)
        expected = int(np.count_nonzero((rect.t_min < k * PERIOD) & (k * PERIOD < rect.t_max)))
        assert winding_number(f, w, rect) == expected


def test_vertical_twist_counts_like_a_translated_rectangle():
    f = DirichletPolynomial.from_terms({2: 1.0, 3: 0.1})
    tau = 0.9
    chi = Character.vertical(tau, [2, 3])
    rect = Rectangle(1.0, 3.0, -4.0, 14.0)
    assert winding_number(twist(f, chi), 0.25, rect) == 2
    assert winding_number(f, 0.25, rect.translated(tau)) == 2

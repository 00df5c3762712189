import math

import numpy as np
import pytest

from dsc.core.enums import JessenMode
from dsc.core.errors import ConfigError, ExcludedPointError, SymbolClassError
from dsc.counting import (
    CountingEstimate,
    LimitSchedule,
    count_from_jessen,
    direct_T_limit,
    extrapolate_monotone,
    jessen,
    jessen_convexity,
    jessen_montecarlo,
    mean_count,
    mean_count_limit,
    mean_counting_value,
    polytorus_average,
    require_g0,
    submean_check,
    verify_jessen_identity,
    verify_weight_identity,
    weighted_count_finite,
    zero_free_abscissa,
)
from dsc.series import Character, DirichletPolynomial
from dsc.zeros import AffineMap, ExponentialMap, PeriodicSymbol

LOG2 = math.log(2)


@pytest.fixture
def power_of_two():
    """phi(s) = 2^{-s}; phi(s) = 1/4 exactly on the line Re s = 2."""
    return DirichletPolynomial.monomial(2)


@pytest.fixture
def affine_g0():
    return PeriodicSymbol(AffineMap(1.5, 0.5))


def test_schedule_validation():
    with pytest.raises(ConfigError):
        LimitSchedule((2.0, 1.0), (0.5,))
    with pytest.raises(ConfigError):
        LimitSchedule((1.0,), (0.5, 0.5))
    schedule = LimitSchedule.geometric(10.0, 3, sigma0=0.25, sigma_levels=4)
    assert schedule.T_values == (10.0, 20.0, 40.0, 80.0)
    assert schedule.sigma_min == pytest.approx(0.25 / 8)


def test_extrapolate_geometric_tail():
    schedule = LimitSchedule.default()
    values = [1 - 0.5**k for k in range(10)]
    value, error, converged, diverged = extrapolate_monotone(values, schedule)
    assert value == pytest.approx(1.0)
    assert converged
    assert not diverged
    assert error == pytest.approx(0.5**9)


def test_extrapolate_flags_divergence():
    value, error, converged, diverged = extrapolate_monotone(
        [float(k) for k in range(10)], LimitSchedule.default()
    )
    assert diverged
    assert not converged
    assert math.isinf(error)


def test_counting_estimate_rejects_negative_values():
    with pytest.raises(ValueError):
        CountingEstimate(-1.0, 0.0, 0.25, 0.1, (1.0,), (-1.0,), False, 0.0)


def test_weighted_count_on_lattice(power_of_two):
    T = 1.5 * 2 * math.pi / LOG2
    # solutions 2 + i k 2pi/log 2 with |k| <= 1
    assert weighted_count_finite(power_of_two, 0.0, 0.25, 1.0, T) == pytest.approx(3 * math.pi / T)
    assert weighted_count_finite(power_of_two, 1.0, 0.25, 1.0, T) == pytest.approx(6 * math.pi / T)
    assert weighted_count_finite(power_of_two, 0.0, 0.25, 2.5, T) == 0.0
    with pytest.raises(ConfigError):
        weighted_count_finite(power_of_two, 0.0, 0.25, 0.0, T)


def test_mean_count_limit_of_power_of_two(power_of_two):
    estimate = mean_count_limit(power_of_two, 0.0, 0.25)
    assert estimate.value == pytest.approx(LOG2)
    assert estimate.converged
    assert not estimate.diverged
    weighted = mean_count_limit(power_of_two, 1.0, 0.25)
    assert weighted.value == pytest.approx(2 * LOG2)


def test_mean_count_at_fixed_sigma(power_of_two):
    assert mean_count(power_of_two, 0.0, 0.25, 1.0).value == pytest.approx(LOG2)
    assert mean_count(power_of_two, 0.0, 0.25, 3.0).value == 0.0


def test_mean_counting_value_is_exact_for_lattices(affine_g0):
    w = 1.2
    re = -math.log(0.6) / LOG2
    estimate = mean_counting_value(affine_g0, 0.5, w)
    assert estimate.value == pytest.approx(LOG2 * math.sqrt(re))
    assert estimate.converged
    assert mean_counting_value(affine_g0, 0.5, 3.0).value == 0.0


def test_phi_at_infinity_is_excluded(power_of_two):
    with pytest.raises(ExcludedPointError):
        mean_counting_value(power_of_two, 0.0, 0.0)


def test_require_g0(power_of_two, affine_g0):
    assert require_g0(affine_g0) is affine_g0
    with pytest.raises(SymbolClassError):
        require_g0(power_of_two)
    require_g0(DirichletPolynomial.from_terms({1: 1.5, 2: 0.25, 3: 0.25}))


def test_zero_free_abscissa_for_polynomials():
    f = DirichletPolynomial.from_terms({1: 1.0, 2: 0.5, 3: 0.5})
    cap = zero_free_abscissa(f, 2.0)
    assert f.abs_tail(cap) < 0.5
    assert zero_free_abscissa(f, 10.0) == 0.0


def test_jessen_follows_jensen_formula(power_of_two):
    assert jessen(power_of_two, 0.25, 1.0) == pytest.approx(-LOG2, abs=1e-9)
    assert jessen(power_of_two, 0.25, 3.0) == pytest.approx(math.log(0.25), abs=1e-9)


def test_jessen_montecarlo_is_seeded(power_of_two):
    first = jessen_montecarlo(power_of_two, 0.25, 1.0, 20_000, seed=3)
    second = jessen_montecarlo(power_of_two, 0.25, 1.0, 20_000, seed=3)
    assert first == second
    assert first.estimate == pytest.approx(-LOG2, abs=5 * first.stderr + 1e-3)
    assert jessen(
        power_of_two, 0.25, 1.0, mode=JessenMode.MONTECARLO, n_samples=20_000, seed=3
    ) == pytest.approx(first.estimate)


def test_count_from_jessen_matches_count(power_of_two):
    assert count_from_jessen(power_of_two, 0.25, 1.0) == pytest.approx(LOG2, abs=1e-5)
    assert count_from_jessen(power_of_two, 0.25, 3.0) == pytest.approx(0.0, abs=1e-5)


def test_jessen_is_convex(power_of_two):
    assert jessen_convexity(power_of_two, 0.25, [1.0, 1.5, 2.0, 2.5, 3.0]) >= -1e-8
    with pytest.raises(ConfigError):
        jessen_convexity(power_of_two, 0.25, [1.0, 2.0])


def test_weight_identity(power_of_two, affine_g0):
    assert verify_weight_identity(power_of_two, 0.5, 0.25, 0.5) == pytest.approx(0.0, abs=1e-9)
    assert verify_weight_identity(affine_g0, 2.0, 1.2, 0.1) == pytest.approx(0.0, abs=1e-9)


def test_jessen_identity(power_of_two):
    assert verify_jessen_identity(power_of_two, 0.5, 0.25, 0.5) == pytest.approx(0.0, abs=1e-6)
    assert verify_jessen_identity(power_of_two, 1.0, 0.25, 0.5) == pytest.approx(0.0, abs=1e-6)


def test_polytorus_average(power_of_two):
    estimate = polytorus_average(power_of_two, 0.0, 0.25, 4000, seed=11)
    assert estimate == polytorus_average(power_of_two, 0.0, 0.25, 4000, seed=11)
    assert estimate.estimate == pytest.approx(LOG2, abs=4 * estimate.stderr + 1e-3)
    with pytest.raises(ConfigError):
        polytorus_average(power_of_two, 0.0, 0.25, 1)


def test_direct_limit_needs_a_at_least_one(power_of_two):
    with pytest.raises(ConfigError):
        direct_T_limit(power_of_two, 0.5, 0.25, Character.identity())
    estimate = direct_T_limit(power_of_two, 1.0, 0.25, Character.from_mapping({2: 1j}))
    assert estimate.value == pytest.approx(2 * LOG2)


def test_submean_over_small_disk(affine_g0):
    check = submean_check(affine_g0, 0.5, 1.2, 0.05)
    assert not check.inconclusive
    assert check.ratio == pytest.approx(1.0, rel=1e-2)
    with pytest.raises(ConfigError):
        submean_check(affine_g0, 0.5, 1.45, 0.1)
    with pytest.raises(ConfigError):
        submean_check(affine_g0, 0.0, 1.2, 0.05)


def test_lattice_density_matches_mean_count(affine_g0):
    schedule = LimitSchedule.default()
    for w in (1.6, 1.75, 1.9):
        exact = mean_counting_value(affine_g0, 0.0, w).value
        assert mean_count_limit(affine_g0, 0.0, w, schedule).value == pytest.approx(exact)


@pytest.fixture
def exponential():
    """phi(s) = g(2^{-s}) with the singular inner function g(z) = exp(-(1 + z) / (1 - z))."""
    return PeriodicSymbol(ExponentialMap())


@pytest.mark.parametrize("a, diverges", [(0.25, True), (0.5, True), (0.75, False), (1.0, False)])
def test_exponential_map_counting_dichotomy(exponential, a, diverges):
    # phi(+inf) = 1/e is excluded, so the target sits on the other side of the origin
    estimate = mean_count_limit(exponential, a, -math.exp(-1))
    assert estimate.diverged is diverges
    if a == 1.0:
        assert estimate.converged


def test_exponential_map_unit_weight_value(exponential):
    # preimages solve (1 + z) / (1 - z) = 1 + i pi (2k + 1), so Re s = log(1 + 4 / y^2) / (2 log 2)
    k = np.arange(-100_000, 100_000)
    y = math.pi * (2 * k + 1)
    brute_force = float(np.sum(0.5 * np.log1p(4 / y**2)))
    value = mean_count_limit(exponential, 1.0, -math.exp(-1)).value
    assert value == pytest.approx(brute_force, rel=1e-2)
    assert value == pytest.approx(math.log(math.cosh(1)), rel=1e-2)


@pytest.fixture
def three_terms():
    """phi(s) = 3/2 + 2^{-s}/4 + 3^{-s}/4, not periodic in Im s."""
    return DirichletPolynomial.from_terms({1: 1.5, 2: 0.25, 3: 0.25})


def test_polytorus_average_over_two_primes(three_terms):
    with np.errstate(over="raise"):
        estimate = polytorus_average(three_terms, 1.0, 1.6, 16, seed=5)
    assert estimate == polytorus_average(three_terms, 1.0, 1.6, 16, seed=5)
    assert math.isfinite(estimate.estimate)
    assert estimate.estimate > 0
    assert estimate.stderr >= 0


@pytest.mark.slow
def test_polytorus_average_matches_mean_count(three_terms):
    estimate = polytorus_average(three_terms, 1.0, 1.6, 400, seed=3)
    limit = mean_count_limit(three_terms, 1.0, 1.6).value
    assert estimate.estimate == pytest.approx(limit, abs=4 * estimate.stderr + 1e-2)


@pytest.mark.parametrize(
    "symbol, a, w, expected",
    [("affine_g0", 1.0, 1.75, LOG2), ("power_of_two", 1.0, 0.25, 2 * LOG2)],
)
def test_direct_limit_is_character_independent(request, symbol, a, w, expected):
    phi = request.getfixturevalue(symbol)
    rng = np.random.default_rng(21)
    for _ in range(10):
        chi = Character.sample([2, 3], rng)
        assert direct_T_limit(phi, a, w, chi).value == pytest.approx(expected, rel=1e-2)

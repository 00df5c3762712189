import math

import pytest
from scipy import special

from dsc.core.errors import SymbolClassError
from dsc.series import DirichletPolynomial
from dsc.spaces import StantonGrid, stanton_lhs, stanton_rhs, stanton_verify
from dsc.zeros import AffineMap, MobiusMap, PeriodicSymbol

F = DirichletPolynomial.monomial(2)
AFFINE = PeriodicSymbol(AffineMap(1.5, 0.5))
MOBIUS = PeriodicSymbol(MobiusMap(1.0))


def test_affine_symbol_hardy_norm():
    # mean of 2^{-3 - cos theta} over the circle
    exact = 0.125 * special.i0(math.log(2))
    lhs, bound = stanton_lhs(F, AFFINE, 0.0)
    assert lhs == pytest.approx(exact, rel=1e-10)
    assert lhs == pytest.approx(0.140472, abs=1e-6)
    assert bound == 0.0
    assert stanton_rhs(F, AFFINE, 0.0) == pytest.approx(exact, rel=1e-3)


def test_affine_symbol_weighted_norm():
    check = stanton_verify(F, AFFINE, 0.5)
    assert check.rel_err < 5e-3
    assert math.isinf(check.truncation_bound)


def test_truncated_composition_for_two_prime_symbol():
    # Bohr lift: |2^{-phi}|^2 = 2^{-3} * 2^{-cos t1 / 2} * 2^{-cos t2 / 2} on the polytorus
    phi = DirichletPolynomial.from_terms({1: 1.5, 2: 0.25, 3: 0.25})
    lhs, bound = stanton_lhs(F, phi, 0.0, N=2**12)
    assert bound is None
    assert lhs == pytest.approx(0.125 * special.i0(0.5 * math.log(2)) ** 2, rel=1e-8)


def test_mobius_symbol():
    lhs, _ = stanton_lhs(F, MOBIUS, 0.0)
    assert lhs == pytest.approx(0.5, rel=1e-12)
    assert stanton_rhs(F, MOBIUS, 0.0) == pytest.approx(0.5, rel=1e-2)


def test_constant_function_has_only_the_head_term():
    f = DirichletPolynomial.constant(2.0)
    assert stanton_rhs(f, AFFINE, 0.3) == pytest.approx(4.0)


def test_rhs_needs_g0_symbol():
    with pytest.raises(SymbolClassError):
        stanton_rhs(F, PeriodicSymbol(AffineMap(0.0, 1.0)), 0.0)


def test_check_serializes_grid():
    grid = StantonGrid(x_panels=20, theta_panels=16)
    assert grid.refined().x_panels == 40
    payload = stanton_verify(F, AFFINE, 0.0, quad_grid=grid).to_dict()
    assert set(payload) == {"lhs", "rhs", "rel_err", "grid_spec", "truncation_bounds"}
    assert payload["grid_spec"]["theta_panels"] == 16


@pytest.mark.parametrize(
    "f",
    [DirichletPolynomial.monomial(2), DirichletPolynomial.from_terms({2: 1.0, 3: 1.0})],
    ids=["monomial", "two_terms"],
)
@pytest.mark.parametrize(
    "symbol, a",
    [
        (AFFINE, -1.0),
        (AFFINE, 0.0),
        pytest.param(MOBIUS, -1.0, marks=pytest.mark.slow),
        (MOBIUS, 0.0),
    ],
    ids=["affine-bergman", "affine-hardy", "mobius-bergman", "mobius-hardy"],
)
def test_stanton_formula_holds_across_symbols_and_weights(f, symbol, a):
    assert stanton_verify(f, symbol, a).rel_err < 1e-2

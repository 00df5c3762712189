from dsc.series.dirichlet import (
    Character,
    DirichletPolynomial,
    Symbol,
    check_half_plane_mapping,
    compose_truncated,
    derivative,
    evaluate,
    exp_truncated,
    factorize,
    gh_test_series,
    multiply_truncated,
    shift,
    single_base,
    twist,
    vertical_period,
)

__all__ = [
    "DirichletPolynomial",
    "Character",
    "Symbol",
    "evaluate",
    "derivative",
    "shift",
    "twist",
    "multiply_truncated",
    "exp_truncated",
    "compose_truncated",
    "gh_test_series",
    "factorize",
    "single_base",
    "vertical_period",
    "check_half_plane_mapping",
]

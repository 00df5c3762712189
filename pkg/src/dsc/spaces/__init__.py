from dsc.spaces.kernels import JaValue, Ja_eval, kernel_eval, kernel_norm, kernel_polynomial
from dsc.spaces.norms import (
    SpaceWeight,
    bergman_measure_norm,
    inner_product,
    littlewood_paley_norm,
    norm_Da,
    space_kind,
    vertical_mean_square,
)
from dsc.spaces.stanton import (
    StantonCheck,
    StantonGrid,
    stanton_lhs,
    stanton_rhs,
    stanton_verify,
)

__all__ = [
    "JaValue",
    "Ja_eval",
    "SpaceWeight",
    "StantonCheck",
    "StantonGrid",
    "bergman_measure_norm",
    "inner_product",
    "kernel_eval",
    "kernel_norm",
    "kernel_polynomial",
    "littlewood_paley_norm",
    "norm_Da",
    "space_kind",
    "stanton_lhs",
    "stanton_rhs",
    "stanton_verify",
    "vertical_mean_square",
]

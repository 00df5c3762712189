from dsc.operators.bounds import (
    BoundCheck,
    NevanlinnaSum,
    littlewood_bound_check,
    nevanlinna_disk,
    prop53_bound_check,
    prop53_constant,
)
from dsc.operators.geometry import (
    SchwarzGrid,
    boundary_ratio_proxy,
    disk_abscissa,
    halfstrip_inverse,
    hyperbolic_distance_halfplane,
    schwarz_constant,
    schwarz_validate,
)
from dsc.operators.profiles import (
    RatioProfile,
    RegionGrid,
    boundedness_profile,
    combine_verdicts,
    compactness_ratio,
    default_boundary_schedule,
    line_verdict,
)
from dsc.operators.transference import TransferenceCheck, transference_check

__all__ = [
    "BoundCheck",
    "NevanlinnaSum",
    "RatioProfile",
    "RegionGrid",
    "SchwarzGrid",
    "TransferenceCheck",
    "boundary_ratio_proxy",
    "boundedness_profile",
    "combine_verdicts",
    "compactness_ratio",
    "default_boundary_schedule",
    "disk_abscissa",
    "halfstrip_inverse",
    "hyperbolic_distance_halfplane",
    "line_verdict",
    "littlewood_bound_check",
    "nevanlinna_disk",
    "prop53_bound_check",
    "prop53_constant",
    "schwarz_constant",
    "schwarz_validate",
    "transference_check",
]

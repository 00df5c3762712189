from dsc.counting.jessen import (
    count_from_jessen,
    jessen,
    jessen_convexity,
    jessen_montecarlo,
    verify_jessen_identity,
    verify_weight_identity,
)
from dsc.counting.mean import (
    MonteCarloEstimate,
    SubmeanCheck,
    default_schedule,
    direct_T_limit,
    mean_count,
    mean_count_limit,
    mean_counting_value,
    polytorus_average,
    submean_check,
    weighted_count_finite,
    weighted_count_general,
)
from dsc.counting.schedule import CountingEstimate, LimitSchedule, extrapolate_monotone
from dsc.counting.tables import (
    CountingSymbol,
    at_infinity,
    counting_table,
    require_g0,
    resolve_symbol,
    twist_symbol,
    zero_free_abscissa,
)

__all__ = [
    "CountingEstimate",
    "CountingSymbol",
    "LimitSchedule",
    "MonteCarloEstimate",
    "SubmeanCheck",
    "at_infinity",
    "count_from_jessen",
    "counting_table",
    "default_schedule",
    "direct_T_limit",
    "extrapolate_monotone",
    "jessen",
    "jessen_convexity",
    "jessen_montecarlo",
    "mean_count",
    "mean_count_limit",
    "mean_counting_value",
    "polytorus_average",
    "require_g0",
    "resolve_symbol",
    "submean_check",
    "twist_symbol",
    "verify_jessen_identity",
    "verify_weight_identity",
    "weighted_count_finite",
    "weighted_count_general",
    "zero_free_abscissa",
]

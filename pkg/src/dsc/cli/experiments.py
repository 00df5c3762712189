"""
Experiment runners behind the CLI subcommands.

Every runner turns a resolved config into one table plus result flags; flags such as
``diverged`` or ``inconclusive`` mark results that are reported rather than failed.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import pandas as pd

from dsc.core.enums import ExperimentKind, JessenMode, Verdict
from dsc.core.errors import ConfigError, RhsDivergentError
from dsc.counting import (
    at_infinity,
    count_from_jessen,
    jessen,
    jessen_convexity,
    mean_count_limit,
    mean_counting_value,
    polytorus_average,
    submean_check,
    verify_jessen_identity,
    verify_weight_identity,
)
from dsc.operators import (
    SchwarzGrid,
    boundary_ratio_proxy,
    boundedness_profile,
    compactness_ratio,
    littlewood_bound_check,
    prop53_bound_check,
    schwarz_constant,
    schwarz_validate,
    transference_check,
)
from dsc.schema import ExperimentConfig, ExperimentInfo
from dsc.spaces import Ja_eval, kernel_norm, stanton_verify

logger = logging.getLogger(__name__)

_CONVEXITY_TOL = 1e-9
_VALIDATION_REFINEMENT = 10
_STANTON_HEADER = (
    "Stanton formula: ||f o phi||_a^2 = |f(phi(+inf))|^2 "
    "+ 2^(1-a) / (Gamma(2-a) pi) int_C_1/2 |f'(w)|^2 M_(phi,1-a)(w) dA(w) "
    "[units: lhs and rhs squared D_a norms; rel_err dimensionless]"
)


@dataclass
class ExperimentResult:
    frame: pd.DataFrame
    header: str
    flags: dict[str, bool] = field(default_factory=dict)
    extras: dict | None = None


Runner = Callable[[ExperimentConfig, int], ExperimentResult]


@dataclass
class Experiment:
    description: str
    runner: Runner


def _header(relation: str, formula: str, units: str) -> str:
    """One-line CSV header: the relation a table instantiates, its formula and the units."""
    return f"{relation}: {formula} [units: {units}]"


def _weights(config: ExperimentConfig) -> list[float]:
    return [config.a, *(a for a in config.weights if a != config.a)]


def _targets(config: ExperimentConfig) -> list[complex]:
    targets = config.target_points()
    if not targets:
        raise ConfigError(f"Experiment {config.experiment} needs at least one target")
    return targets


def _sigmas(config: ExperimentConfig) -> list[float]:
    if not config.sigmas:
        raise ConfigError(f"Experiment {config.experiment} needs a list of sigmas")
    return list(config.sigmas)


def run_count(config: ExperimentConfig, seed: int) -> ExperimentResult:
    symbol = config.build_symbol()
    schedule = config.build_schedule()
    rows = [
        mean_count_limit(symbol, a, w, schedule).to_row(seed)
        for w in _targets(config)
        for a in _weights(config)
    ]
    frame = pd.DataFrame(rows)
    return ExperimentResult(
        frame,
        _header(
            "weighted mean counting function",
            "M_(phi,a)(w) = lim_(sigma->0+) lim_(T->inf) (pi/T) "
            "sum_(phi(s)=w, Re s>sigma, |Im s|<T) (Re s)^a",
            "value dimensionless; sigma in Re s; T in Im s",
        ),
        {"diverged": bool(frame["diverged"].any()), "converged": bool(frame["converged"].all())},
    )


def run_jessen(config: ExperimentConfig, seed: int) -> ExperimentResult:
    symbol = config.build_symbol()
    sigmas = _sigmas(config)
    rows, convex = [], True
    for w in _targets(config):
        for sigma in sigmas:
            rows.append(
                {
                    "w_re": w.real,
                    "w_im": w.imag,
                    "sigma": sigma,
                    "jessen": jessen(symbol, w, sigma),
                    "jessen_montecarlo": jessen(
                        symbol,
                        w,
                        sigma,
                        mode=JessenMode.MONTECARLO,
                        n_samples=config.n_samples,
                        seed=seed,
                    ),
                    "count_right_derivative": count_from_jessen(symbol, w, sigma),
                }
            )
        if len(sigmas) >= 3:
            convex &= jessen_convexity(symbol, w, sorted(sigmas)) >= -_CONVEXITY_TOL
    return ExperimentResult(
        pd.DataFrame(rows),
        _header(
            "Jessen function",
            "J(sigma) = lim_(T->inf) (1/2T) int_(-T)^T log|phi(sigma+it) - w| dt; "
            "count_right_derivative = M_(phi,0)(w, sigma) = -dJ/dsigma+",
            "jessen in nepers; sigma in Re s",
        ),
        {"convex": convex},
    )


def _identity_runner(kind: ExperimentKind) -> Runner:
    verify = verify_weight_identity if kind == ExperimentKind.IDENTITY3 else verify_jessen_identity

    def run(config: ExperimentConfig, seed: int) -> ExperimentResult:
        symbol = config.build_symbol()
        schedule = config.build_schedule()
        rows = [
            {
                "identity": str(kind),
                "a": a,
                "w_re": w.real,
                "w_im": w.imag,
                "sigma": sigma,
                "residual": verify(symbol, a, w, sigma, schedule),
            }
            for w in _targets(config)
            for a in _weights(config)
            for sigma in _sigmas(config)
        ]
        if kind == ExperimentKind.IDENTITY3:
            header = _header(
                "weight identity",
                "M_a(sigma) = M_0(sigma) sigma^a + a int_sigma^inf t^(a-1) M_0(t) dt",
                "absolute residual; sigma in Re s",
            )
        else:
            header = _header(
                "Jessen identity",
                "M_a(sigma) - M_0(sigma) sigma^a = a sigma^(a-1) J(sigma) "
                "- a c^(a-1) log|phi(+inf) - w| - a(1-a) int_sigma^c t^(a-2) J(t) dt",
                "absolute residual; sigma and c in Re s",
            )
        return ExperimentResult(pd.DataFrame(rows), header)

    return run


def run_polytorus(config: ExperimentConfig, seed: int) -> ExperimentResult:
    symbol = config.build_symbol()
    schedule = config.build_schedule()
    rows = []
    for w in _targets(config):
        for a in _weights(config):
            sample = polytorus_average(symbol, a, w, config.n_samples, seed)
            limit = mean_counting_value(symbol, a, w, schedule)
            rows.append(
                {
                    "a": a,
                    "w_re": w.real,
                    "w_im": w.imag,
                    "n_samples": config.n_samples,
                    "estimate": sample.estimate,
                    "stderr": sample.stderr,
                    "limit": limit.value,
                    "within_3_stderr": abs(sample.estimate - limit.value) <= 3 * sample.stderr,
                    "seed": seed,
                }
            )
    frame = pd.DataFrame(rows)
    return ExperimentResult(
        frame,
        _header(
            "polytorus average",
            "int over chi of M_(phi_chi,a)(w, 0, 1) dm(chi) = M_(phi,a)(w)",
            "estimate, stderr and limit dimensionless; seed as given",
        ),
        {"agrees": bool(frame["within_3_stderr"].all())},
    )


def run_stanton(config: ExperimentConfig, seed: int) -> ExperimentResult:
    f = config.build_function()
    symbol = config.build_symbol()
    try:
        check = stanton_verify(f, symbol, config.a, N=config.truncation)
    except RhsDivergentError as e:
        logger.warning(f"Stanton right-hand side diverged: {e}")
        row = {"a": config.a, "lhs": math.nan, "rhs": math.inf, "rel_err": math.nan}
        return ExperimentResult(
            pd.DataFrame([row]), _STANTON_HEADER, {"diverged": True}
        )
    row = {
        "a": config.a,
        "lhs": check.lhs,
        "rhs": check.rhs,
        "rel_err": check.rel_err,
        "lhs_truncation_bound": check.truncation_bound,
    }
    return ExperimentResult(
        pd.DataFrame([row]),
        _STANTON_HEADER,
        {"diverged": False},
        extras=check.to_dict(),
    )


def run_kernel(config: ExperimentConfig, seed: int) -> ExperimentResult:
    rows = []
    for s in _targets(config):
        for a in _weights(config):
            norm_sq = kernel_norm(s, a, config.truncation) ** 2
            row = {
                "s_re": s.real,
                "s_im": s.imag,
                "a": a,
                "kernel_norm_sq": norm_sq,
                "scaled_norm_sq": norm_sq * (2 * s.real - 1) ** (1 - a),
                "Ja_re": math.nan,
                "Ja_im": math.nan,
                "Ea_abs": math.nan,
            }
            if s.real > 1:
                value = Ja_eval(s, a, config.truncation)
                row |= {
                    "Ja_re": value.value.real,
                    "Ja_im": value.value.imag,
                    "Ea_abs": abs(value.Ea_estimate),
                }
            rows.append(row)
    return ExperimentResult(
        pd.DataFrame(rows),
        _header(
            "reproducing kernel",
            "||k_(s,a)||^2 = 1 + sum_(n>=2) (log n)^(-a) n^(-2 Re s), "
            "scaled by (2 Re s - 1)^(1-a); "
            "J_a(w) = Gamma(2-a) (w-1)^(a-2) + E_a(w)",
            "norms squared in D_a; s and w in the half-plane",
        ),
    )


def run_schwarz(config: ExperimentConfig, seed: int) -> ExperimentResult:
    symbol = config.build_symbol()
    grid = SchwarzGrid()
    constant = schwarz_constant(symbol, grid)
    violations = schwarz_validate(symbol, constant, grid.refined(_VALIDATION_REFINEMENT))
    row = {
        "constant": constant,
        "violations_on_refined_grid": violations,
        "boundary_ratio_proxy": boundary_ratio_proxy(symbol, grid),
    }
    return ExperimentResult(
        pd.DataFrame([row]),
        _header(
            "Schwarz-lemma inequality",
            "Re s <= C ((Re s)^2 + 1) (Re phi(s) - 1/2) on C_0",
            "C dimensionless; violations as grid-point counts",
        ),
        {"valid": violations == 0},
    )


def run_littlewood(config: ExperimentConfig, seed: int) -> ExperimentResult:
    symbol = config.build_symbol()
    schedule = config.build_schedule()
    limit = at_infinity(symbol)
    rows = []
    for w in _targets(config):
        checks = [("littlewood", littlewood_bound_check(symbol, w, schedule))]
        if abs(w - limit) >= config.delta and config.a >= 0:
            prop53 = prop53_bound_check(symbol, config.a, w, config.delta, schedule)
            checks.append(("prop53", prop53))
        for name, check in checks:
            rows.append(
                {
                    "bound": name,
                    "w_re": w.real,
                    "w_im": w.imag,
                    "lhs": check.lhs,
                    "rhs": check.rhs,
                    "holds": check.holds,
                    "inconclusive": check.inconclusive,
                }
            )
    frame = pd.DataFrame(rows)
    return ExperimentResult(
        frame,
        _header(
            "Littlewood inequality",
            "M_(phi,1)(w) <= log|(conj(w) + phi(+inf) - 1) / (w - phi(+inf))|; prop53 rows: "
            "M_(phi,1+a)(w) <= K (Re w - 1/2)^(1+a) (Re phi(+inf) - 1/2) / |w - phi(+inf)|^2",
            "lhs and rhs dimensionless; w in C_1/2",
        ),
        {"holds": bool(frame["holds"].all()), "inconclusive": bool(frame["inconclusive"].any())},
    )


def run_ratio(config: ExperimentConfig, seed: int) -> ExperimentResult:
    symbol = config.build_symbol()
    schedule = config.build_schedule()
    if config.profile == "compactness":
        profile = compactness_ratio(symbol, config.a, schedule=schedule)
    else:
        profile = boundedness_profile(symbol, config.a, config.delta, schedule=schedule)
    return ExperimentResult(
        profile.to_frame(),
        _header(
            f"{config.profile} ratio",
            f"M_(phi,b)(w) / (Re w - 1/2)^b with b = {profile.exponent}",
            "ratio dimensionless; last row carries the sup and the verdict",
        ),
        {"inconclusive": profile.verdict == Verdict.INCONCLUSIVE},
    )


def run_submean(config: ExperimentConfig, seed: int) -> ExperimentResult:
    symbol = config.build_symbol()
    schedule = config.build_schedule()
    rows = []
    for w in _targets(config):
        for a in _weights(config):
            check = submean_check(symbol, a, w, config.radius, schedule=schedule)
            rows.append(
                {
                    "a": a,
                    "w_re": w.real,
                    "w_im": w.imag,
                    "r": config.radius,
                    "center_value": check.lhs,
                    "disk_mean": check.rhs,
                    "ratio": check.ratio,
                    "inconclusive": check.inconclusive,
                }
            )
    frame = pd.DataFrame(rows)
    return ExperimentResult(
        frame,
        _header(
            "submean value property",
            "M_(phi,a)(w) <= C (1/(pi r^2)) int_D(w,r) M_(phi,a)(z) dA(z)",
            "values dimensionless; r in the w-plane",
        ),
        {"inconclusive": bool(frame["inconclusive"].any())},
    )


def run_transfer(config: ExperimentConfig, seed: int) -> ExperimentResult:
    symbol = config.build_symbol()
    rows = []
    for w in _targets(config):
        check = transference_check(symbol, config.a, w, config.sigma, config.T)
        rows.append(
            {
                "a": config.a,
                "w_re": w.real,
                "w_im": w.imag,
                "sigma": config.sigma,
                "T": config.T,
                "lower": check.lower,
                "mid": check.mid,
                "upper": check.upper,
                "comparable": check.comparable,
            }
        )
    frame = pd.DataFrame(rows)
    return ExperimentResult(
        frame,
        _header(
            "half-strip transference",
            "M_(phi,a)(w, 2 sigma, T) <~ T^(a-1) N_(phi o Theta,a)(w) <~ M_(phi,a)(w, sigma, 2T)",
            "lower, mid, upper dimensionless; sigma in Re s; T in Im s",
        ),
        {"comparable": bool(frame["comparable"].all())},
    )


experiments: dict[ExperimentKind, Experiment] = {
    ExperimentKind.COUNT: Experiment(
        "Iterated limits of weighted mean counting functions.", run_count
    ),
    ExperimentKind.JESSEN: Experiment(
        "Jessen functions and the counting function from their right-derivative.", run_jessen
    ),
    ExperimentKind.IDENTITY3: Experiment(
        "Residuals of the weight identity relating M_a to M_0.",
        _identity_runner(ExperimentKind.IDENTITY3),
    ),
    ExperimentKind.IDENTITY24: Experiment(
        "Residuals of the identity relating M_a to the Jessen function.",
        _identity_runner(ExperimentKind.IDENTITY24),
    ),
    ExperimentKind.POLYTORUS: Experiment(
        "Monte Carlo averages over the infinite polytorus.", run_polytorus
    ),
    ExperimentKind.STANTON: Experiment("Both sides of the Stanton-type formula.", run_stanton),
    ExperimentKind.KERNEL: Experiment("Reproducing kernel norms and J_a values.", run_kernel),
    ExperimentKind.SCHWARZ: Experiment("Schwarz-lemma constant of a G0 symbol.", run_schwarz),
    ExperimentKind.LITTLEWOOD: Experiment("Littlewood-type upper bounds.", run_littlewood),
    ExperimentKind.RATIO: Experiment(
        "Boundary ratio profiles for compactness and boundedness.", run_ratio
    ),
    ExperimentKind.SUBMEAN: Experiment("Submean value checks over disks.", run_submean),
    ExperimentKind.TRANSFER: Experiment(
        "Half-strip to disk transference sandwich.", run_transfer
    ),
}


def get_experiment(key: str) -> Experiment:
    try:
        return experiments[ExperimentKind(key)]
    except ValueError:
        raise ConfigError(f"Unknown experiment {key!r}") from None


def get_all_experiment_info() -> list[ExperimentInfo]:
    return [
        ExperimentInfo(key=str(key), description=experiment.description)
        for key, experiment in experiments.items()
    ]

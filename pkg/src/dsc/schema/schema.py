from typing import Annotated, Any, Literal

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator

from dsc.core.enums import ExperimentKind, SymbolClass
from dsc.core.errors import ConfigError
from dsc.counting import LimitSchedule
from dsc.series import DirichletPolynomial, Symbol
from dsc.zeros import AffineMap, DiskMap, ExponentialMap, MobiusMap, PeriodicSymbol, PolynomialMap


def _pair(value: object) -> object:
    """Accept a bare real number where a [re, im] pair is expected."""
    if isinstance(value, int | float) and not isinstance(value, bool):
        return (float(value), 0.0)
    return value


ComplexPair = Annotated[tuple[float, float], BeforeValidator(_pair)]
Coefficient = tuple[int, float, float]


def as_complex(pair: tuple[float, float]) -> complex:
    return complex(pair[0], pair[1])


def as_pair(z: complex) -> tuple[float, float]:
    return (float(z.real), float(z.imag))


class DirichletPolynomialModel(BaseModel):
    """Sparse coefficients of a Dirichlet polynomial."""

    coeffs: list[Coefficient] = Field(
        description="Triples [n, Re a_n, Im a_n].",
        examples=[[[1, 1.5, 0.0], [2, 0.5, 0.0]]],
    )

    @field_validator("coeffs")
    @classmethod
    def check_frequencies(cls, coeffs: list[Coefficient]) -> list[Coefficient]:
        if any(n < 1 for n, _, _ in coeffs):
            raise ValueError("Frequencies must be integers >= 1")
        return coeffs

    def build(self) -> DirichletPolynomial:
        return DirichletPolynomial.from_terms((n, complex(re, im)) for n, re, im in self.coeffs)

    @classmethod
    def of(cls, f: DirichletPolynomial) -> "DirichletPolynomialModel":
        return cls(coeffs=[(n, c.real, c.imag) for n, c in f.terms])


class DirichletSymbolSpec(BaseModel):
    """A symbol psi(s) = c0 s + phi(s) given by its Dirichlet coefficients."""

    model_config = ConfigDict(populate_by_name=True)

    kind: Literal["dirichlet"] = "dirichlet"
    c0: int = Field(description="Characteristic.", default=0, ge=0)
    phi: DirichletPolynomialModel = Field(description="Dirichlet part of the symbol.")
    class_tag: SymbolClass = Field(
        alias="class",
        description="Declared symbol class; G0 is checked on construction.",
        default=SymbolClass.UNTAGGED,
    )

    def build(self) -> Symbol:
        return Symbol(self.phi.build(), self.c0, self.class_tag)


class AffineMapModel(BaseModel):
    type: Literal["affine"] = "affine"
    c: ComplexPair = Field(description="Constant term.", default=(0.0, 0.0), examples=[[1.5, 0.0]])
    d: ComplexPair = Field(description="Linear coefficient.", default=(1.0, 0.0))

    def build(self) -> DiskMap:
        return AffineMap(as_complex(self.c), as_complex(self.d))


class MobiusMapModel(BaseModel):
    type: Literal["mobius"] = "mobius"
    nu: ComplexPair = Field(description="Value at the origin, Re nu > 1/2.", default=(1.0, 0.0))

    def build(self) -> DiskMap:
        return MobiusMap(as_complex(self.nu))


class ExponentialMapModel(BaseModel):
    type: Literal["exponential"] = "exponential"

    def build(self) -> DiskMap:
        return ExponentialMap()


class PolynomialMapModel(BaseModel):
    type: Literal["polynomial"] = "polynomial"
    coefficients: list[ComplexPair] = Field(
        description="Taylor coefficients c_0, c_1, ... of the disk map.",
        examples=[[[1.5, 0.0], [0.25, 0.0], [0.125, 0.0]]],
    )

    def build(self) -> DiskMap:
        return PolynomialMap([as_complex(c) for c in self.coefficients])


DiskMapModel = Annotated[
    AffineMapModel | MobiusMapModel | ExponentialMapModel | PolynomialMapModel,
    Field(discriminator="type"),
]


class PeriodicSymbolSpec(BaseModel):
    """A symbol phi(s) = g(u b^{-s}) with an explicit disk map g."""

    kind: Literal["periodic"] = "periodic"
    map: DiskMapModel = Field(description="The disk map g.")
    base: int = Field(description="Base b of the vertical lattice.", default=2, ge=2)
    rotation: ComplexPair = Field(description="Unimodular rotation u.", default=(1.0, 0.0))

    def build(self) -> PeriodicSymbol:
        return PeriodicSymbol(self.map.build(), self.base, as_complex(self.rotation))


SymbolSpec = Annotated[DirichletSymbolSpec | PeriodicSymbolSpec, Field(discriminator="kind")]


class LimitScheduleModel(BaseModel):
    T_values: list[float] = Field(description="Increasing heights T.", min_length=1)
    sigma_values: list[float] = Field(description="Decreasing abscissae sigma.", min_length=1)
    rel_tol: float = Field(default=1e-2, gt=0)
    abs_tol: float = Field(default=1e-10, gt=0)

    def build(self) -> LimitSchedule:
        return LimitSchedule(
            tuple(self.T_values), tuple(self.sigma_values), self.rel_tol, self.abs_tol
        )


class ExperimentConfig(BaseModel):
    """One experiment run, read from a JSON file."""

    model_config = ConfigDict(extra="forbid")

    experiment: ExperimentKind | None = Field(
        description="Experiment to run; the subcommand fills it in when omitted.",
        default=None,
        examples=[ExperimentKind.COUNT],
    )
    symbol: SymbolSpec | None = Field(
        description="The symbol phi; kernel runs do without one.", default=None
    )
    function: DirichletPolynomialModel | None = Field(
        description="The function f for norm and Stanton experiments.", default=None
    )
    a: float = Field(description="Weight exponent.", default=0.0, examples=[0.0, 0.5, 1.0])
    weights: list[float] = Field(
        description="Extra weight exponents swept by identity and polytorus runs.", default=[]
    )
    targets: list[ComplexPair] = Field(
        description="Target points w (kernel runs: evaluation points s).",
        default=[],
        examples=[[[0.25, 0.0]]],
    )
    schedule: LimitScheduleModel | None = Field(
        description="Limit schedule; the symbol's default when omitted.", default=None
    )
    seed: int | None = Field(description="RNG seed; DSC_SEED when omitted.", default=None)
    output_path: str | None = Field(
        description="CSV output file; <out>/<experiment>.csv when omitted.", default=None
    )
    sigmas: list[float] = Field(
        description="Abscissae for Jessen and identity runs.", default=[], examples=[[0.5, 1.0]]
    )
    sigma: float = Field(
        description="Half-strip abscissa for transference runs.", default=0.5, gt=0
    )
    T: float = Field(description="Half-strip height for transference runs.", default=50.0, gt=0)
    n_samples: int = Field(description="Monte Carlo sample count.", default=10_000, ge=2)
    radius: float = Field(description="Disk radius for submean runs.", default=0.05, gt=0)
    delta: float = Field(description="Excluded radius around phi(+inf).", default=0.25, gt=0)
    profile: Literal["compactness", "boundedness"] = Field(
        description="Which ratio profile a ratio run computes.", default="compactness"
    )
    truncation: int | None = Field(
        description="Truncation order N; DSC_TRUNCATION when omitted.", default=None, ge=2
    )

    def target_points(self) -> list[complex]:
        return [as_complex(t) for t in self.targets]

    def build_symbol(self) -> Symbol | PeriodicSymbol:
        if self.symbol is None:
            raise ConfigError(f"Experiment {self.experiment} needs a symbol")
        return self.symbol.build()

    def build_function(self) -> DirichletPolynomial:
        if self.function is None:
            raise ConfigError(f"Experiment {self.experiment} needs a function f")
        return self.function.build()

    def build_schedule(self) -> LimitSchedule | None:
        return self.schedule.build() if self.schedule else None


class ExperimentInfo(BaseModel):
    """Info about an available experiment."""

    key: str = Field(description="Experiment key.", examples=["count"])
    description: str = Field(
        description="Description of the experiment.",
        examples=["Mean counting function limits along a schedule."],
    )


class RunManifest(BaseModel):
    """Everything needed to reproduce a run."""

    version: str = Field(description="Package version string.", examples=["0.1.0"])
    experiment: ExperimentKind
    seed: int
    jobs: int
    config: dict[str, Any] = Field(description="The fully resolved experiment config.")
    outputs: list[str] = Field(description="Files written by the run.", default=[])
    flags: dict[str, bool] = Field(
        description="Result flags such as diverged or inconclusive.", default={}
    )
    timings: dict[str, float] = Field(description="Wall-clock seconds per stage.", default={})

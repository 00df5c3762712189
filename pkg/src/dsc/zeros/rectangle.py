import math
from dataclasses import dataclass, field

import pandas as pd

from dsc.core.errors import ConfigError, ContourUnresolvedError


@dataclass(frozen=True)
class Rectangle:
    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float

    def __post_init__(self) -> None:
        if not self.sigma_min < self.sigma_max:
            raise ConfigError(f"Need sigma_min < sigma_max, got {self.sigma_min}, {self.sigma_max}")
        if not self.t_min < self.t_max:
            raise ConfigError(f"Need t_min < t_max, got {self.t_min}, {self.t_max}")

    @classmethod
    def window(cls, sigma: float, sigma_max: float, T: float) -> "Rectangle":
        """The half-strip window sigma < Re s < sigma_max, |Im s| < T."""
        return cls(sigma, sigma_max, -T, T)

    @property
    def width(self) -> float:
        return self.sigma_max - self.sigma_min

    @property
    def height(self) -> float:
        return self.t_max - self.t_min

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.sigma_min + self.sigma_max), 0.5 * (self.t_min + self.t_max))

    @property
    def diameter(self) -> float:
        return math.hypot(self.width, self.height)

    def contains(self, s: complex) -> bool:
        return self.sigma_min < s.real < self.sigma_max and self.t_min < s.imag < self.t_max

    def translated(self, tau: float) -> "Rectangle":
        return Rectangle(self.sigma_min, self.sigma_max, self.t_min + tau, self.t_max + tau)

    def split_vertical(self, sigma: float) -> tuple["Rectangle", "Rectangle"]:
        return (
            Rectangle(self.sigma_min, sigma, self.t_min, self.t_max),
            Rectangle(sigma, self.sigma_max, self.t_min, self.t_max),
        )

    def split_horizontal(self, t: float) -> tuple["Rectangle", "Rectangle"]:
        return (
            Rectangle(self.sigma_min, self.sigma_max, self.t_min, t),
            Rectangle(self.sigma_min, self.sigma_max, t, self.t_max),
        )


@dataclass(frozen=True)
class Zero:
    location: complex
    multiplicity: int = 1
    refined: bool = True


@dataclass(frozen=True)
class ZeroSet:
    """
    Solutions of phi(s) = w inside ``rect`` together with the winding certificate.

    ``min_boundary_modulus`` is the smallest |phi - w| seen on the contour; it is NaN when the
    zeros come from a closed-form lattice. ``excluded`` lists disk preimages dropped because
    they sit at z = 0 or on the unit circle.
    """

    zeros: tuple[Zero, ...]
    winding_total: int
    rect: Rectangle
    min_boundary_modulus: float = math.nan
    excluded: tuple[complex, ...] = field(default=())

    def __post_init__(self) -> None:
        total = sum(z.multiplicity for z in self.zeros)
        if total != self.winding_total:
            raise ContourUnresolvedError(
                f"Multiplicities sum to {total} but the winding certificate is {self.winding_total}"
            )
        ordered = tuple(sorted(self.zeros, key=lambda z: (z.location.real, z.location.imag)))
        object.__setattr__(self, "zeros", ordered)

    @property
    def locations(self) -> list[complex]:
        return [z.location for z in self.zeros]

    @property
    def multiplicities(self) -> list[int]:
        return [z.multiplicity for z in self.zeros]

    def __len__(self) -> int:
        return len(self.zeros)

    def header(self) -> dict:
        return {
            "winding_total": self.winding_total,
            "rect": [self.rect.sigma_min, self.rect.sigma_max, self.rect.t_min, self.rect.t_max],
            "min_boundary_modulus": (
                None if math.isnan(self.min_boundary_modulus) else self.min_boundary_modulus
            ),
            "unrefined": sum(not z.refined for z in self.zeros),
            "excluded": len(self.excluded),
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "re": [z.location.real for z in self.zeros],
                "im": [z.location.imag for z in self.zeros],
                "multiplicity": self.multiplicities,
            }
        )

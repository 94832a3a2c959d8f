from pathlib import Path
from typing import Annotated, Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    PositiveFloat,
    field_validator,
    model_validator,
)

from dyad.physics.emission import EmissionMode
from dyad.physics.observables import OBSERVABLES, Observable
from dyad.physics.quantities import (
    CONSTANTS,
    LI7_MASS_U,
    DyadConfig,
    decay_rate,
    rydberg_pair,
)

Vector = tuple[float, float, float]


class RydbergSystem(BaseModel):
    """Circular Rydberg pair on levels n and n - 1."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["rydberg"]
    n: int = Field(ge=2, description="Principal quantum number")
    isotope_mass_u: PositiveFloat = Field(
        LI7_MASS_U, description="Single-atom mass in unified atomic mass units"
    )
    lambda0_um: PositiveFloat | None = Field(
        None, description="Pins the transition wavelength, micrometres"
    )

    def build(self, axis: Vector) -> DyadConfig:
        lambda0 = None if self.lambda0_um is None else self.lambda0_um * 1e-6
        pair = rydberg_pair(
            self.n, self.isotope_mass_u * CONSTANTS.amu, lambda0_override=lambda0
        )
        return pair.with_separation(pair.separation, axis=axis)


class ExplicitSystem(BaseModel):
    """Pair given by its SI dipoles, frequency, decay rate and mass."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["explicit"]
    mu_A_Cm: Vector = Field(description="Transition dipole of A, C m")
    mu_B_Cm: Vector = Field(description="Transition dipole of B, C m")
    omega0: PositiveFloat = Field(description="Angular frequency, rad/s")
    gamma0: PositiveFloat | None = Field(
        None, description="Decay rate, 1/s; free-space value when omitted"
    )
    mass_kg: PositiveFloat

    @model_validator(mode="after")
    def check_identical_atoms(self) -> "ExplicitSystem":
        norm_a = float(np.linalg.norm(self.mu_A_Cm))
        norm_b = float(np.linalg.norm(self.mu_B_Cm))
        if norm_a <= 0 or not np.isclose(norm_a, norm_b, rtol=1e-12, atol=0):
            raise ValueError(
                "dipoles must be nonzero with equal magnitudes, got "
                f"{norm_a:.6e} and {norm_b:.6e} C m"
            )
        return self

    def build(self, axis: Vector) -> DyadConfig:
        gamma0 = self.gamma0 or decay_rate(
            self.omega0, float(np.linalg.norm(self.mu_A_Cm))
        )
        return DyadConfig(
            mu_A=np.array(self.mu_A_Cm),
            mu_B=np.array(self.mu_B_Cm),
            omega0=self.omega0,
            gamma0=gamma0,
            mass=self.mass_kg,
            R_vec=np.array(axis, dtype=np.float64) * CONSTANTS.c / self.omega0,
        )


class Sweep(BaseModel):
    model_config = ConfigDict(extra="forbid")

    start: NonNegativeFloat
    stop: PositiveFloat
    count: int = Field(ge=1)
    spacing: Literal["linear", "log"] = "linear"

    @model_validator(mode="after")
    def check_range(self) -> "Sweep":
        if not self.start < self.stop:
            raise ValueError(
                f"sweep start {self.start} must be below stop {self.stop}"
            )
        if self.spacing == "log" and self.start <= 0:
            raise ValueError("log spacing needs a positive start")
        return self

    def values(self) -> NDArray[np.float64]:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


class Geometry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k0R: PositiveFloat | list[PositiveFloat] | Sweep = Field(
        description="Dimensionless separation, a list of them, or a sweep"
    )
    axis: Vector = Field(
        (1.0, 0.0, 0.0), description="Direction from atom A to atom B"
    )

    @field_validator("axis")
    @classmethod
    def check_axis(cls, axis: Vector) -> Vector:
        norm = float(np.linalg.norm(axis))
        if norm <= 0:
            raise ValueError("axis must be nonzero")
        return (axis[0] / norm, axis[1] / norm, axis[2] / norm)

    @field_validator("k0R")
    @classmethod
    def check_sweep_positive(
        cls, value: float | list[float] | Sweep
    ) -> float | list[float] | Sweep:
        if isinstance(value, Sweep) and value.start <= 0:
            raise ValueError("k0R sweep must start above zero")
        if isinstance(value, list) and not value:
            raise ValueError("k0R list must not be empty")
        return value

    def values(self) -> NDArray[np.float64]:
        return _axis_values(self.k0R)


class QuadratureSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    order: int | None = Field(
        None, ge=4, description="Angular grid order; 2*ceil(k0R) + 24 if unset"
    )
    rtol: PositiveFloat = Field(
        1e-10, description="Relative tolerance of the off-resonant integral"
    )


class OutputSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    path: Path | None = None
    format: Literal["csv", "json"] | None = None


class RunConfig(BaseModel):
    """Everything ``dyad run`` needs; physics lives only here."""

    model_config = ConfigDict(extra="forbid")

    system: Annotated[
        RydbergSystem | ExplicitSystem, Field(discriminator="kind")
    ]
    geometry: Geometry
    times: list[NonNegativeFloat] | Sweep = Field(
        default_factory=lambda: [1.0], description="Γ₀T values"
    )
    observables: list[Observable] = Field(min_length=1)
    emission_mode: EmissionMode = "consistent"
    quadrature: QuadratureSettings = Field(default_factory=QuadratureSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    @field_validator("observables")
    @classmethod
    def canonical_order(cls, observables: list[Observable]) -> list[Observable]:
        return [name for name in OBSERVABLES if name in observables]

    @field_validator("times")
    @classmethod
    def check_times(
        cls, value: list[float] | Sweep
    ) -> list[float] | Sweep:
        if isinstance(value, list) and not value:
            raise ValueError("times must not be empty")
        return value

    @model_validator(mode="after")
    def check_rydberg_axis(self) -> "RunConfig":
        if isinstance(self.system, RydbergSystem):
            z_part = abs(self.geometry.axis[2])
            if z_part > 1e-12:
                raise ValueError(
                    "circular Rydberg dipoles point along z; geometry.axis "
                    f"must be perpendicular to z, got z component {z_part:.3g}"
                )
        return self

    def time_values(self) -> NDArray[np.float64]:
        return _axis_values(self.times)

    def build_pair(self) -> DyadConfig:
        return self.system.build(self.geometry.axis)


def _axis_values(axis: float | list[float] | Sweep) -> NDArray[np.float64]:
    if isinstance(axis, Sweep):
        values = axis.values()
    else:
        values = np.atleast_1d(np.asarray(axis, dtype=np.float64))
    return np.unique(values)

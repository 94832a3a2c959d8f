"""Bundle every observable of one (k₀R, T) grid point."""

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Literal, get_args

import numpy as np
from numpy.typing import NDArray

from dyad.physics.coupling import CouplingRates, coupling_rates
from dyad.physics.dynamics import PopulationSample, populations
from dyad.physics.emission import (
    AngularGrid,
    AngularRateSample,
    EmissionMode,
    angular_rate_sample,
    default_grid,
    photon_momentum_rate,
)
from dyad.physics.forces import (
    ForceSample,
    OffResonantIntegral,
    OffResonantQuadrature,
    cm_displacement,
    force_sample,
    offresonant_integral,
)
from dyad.physics.quantities import DyadParameters

__all__ = ["Observable", "OBSERVABLES", "PointContext", "TimeSample"]

Observable = Literal["populations", "forces", "emission", "displacement"]
OBSERVABLES: tuple[Observable, ...] = get_args(Observable)


@dataclass(frozen=True)
class TimeSample:
    """All requested observables at one time, in internal units.

    Blocks that were not requested are None.
    """

    k0r: float
    T: float
    populations: PopulationSample | None = None
    forces: ForceSample | None = None
    emission: AngularRateSample | None = None
    photon_momentum: NDArray[np.float64] | None = None
    displacement: float | None = None


@dataclass(frozen=True)
class PointContext:
    """Time-independent work for one separation, shared by all its times."""

    params: DyadParameters
    rates: CouplingRates
    observables: frozenset[Observable]
    emission_mode: EmissionMode = "consistent"
    grid: AngularGrid | None = None
    integral: OffResonantIntegral | None = None

    @classmethod
    def build(
        cls,
        params: DyadParameters,
        observables: Iterable[Observable],
        emission_mode: EmissionMode = "consistent",
        order: int | None = None,
        quad: OffResonantQuadrature | None = None,
    ) -> "PointContext":
        wanted = frozenset(observables)
        return cls(
            params=params,
            rates=coupling_rates(params),
            observables=wanted,
            emission_mode=emission_mode,
            grid=default_grid(params, order) if "emission" in wanted else None,
            integral=(
                offresonant_integral(params, quad)
                if "forces" in wanted
                else None
            ),
        )

    def sample(self, T: float) -> TimeSample:
        wanted = self.observables
        emission = momentum = None
        if "emission" in wanted:
            emission = angular_rate_sample(
                self.rates, self.params, T, self.grid, self.emission_mode
            )
            momentum = photon_momentum_rate(
                self.rates, self.params, T, self.grid
            )
        return TimeSample(
            k0r=self.params.x,
            T=float(T),
            populations=(
                populations(self.rates, T) if "populations" in wanted else None
            ),
            forces=(
                force_sample(self.params, self.rates, T, self.integral)
                if "forces" in wanted
                else None
            ),
            emission=emission,
            photon_momentum=momentum,
            displacement=(
                float(cm_displacement(self.params, self.rates, T))
                if "displacement" in wanted
                else None
            ),
        )

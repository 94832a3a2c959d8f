from dyad.physics.coupling import (
    CouplingRates,
    complex_coupling,
    coupling_rates,
    gamma0_rate,
)
from dyad.physics.dynamics import (
    AmplitudePair,
    PopulationSample,
    amplitudes,
    emission_rate,
    populations,
    rabi_propagator,
)
from dyad.physics.emission import (
    AngularGrid,
    AngularRateSample,
    angular_rate,
    forward_backward_asymmetry,
    photon_momentum_rate,
)
from dyad.physics.forces import (
    DisplacementCurve,
    ForceSample,
    OffResonantQuadrature,
    cm_displacement,
    conservative_forces,
    nonconservative_forces,
    offresonant_force,
    rydberg_scaling_audit,
)
from dyad.physics.greens import (
    GreenEval,
    ProjectorPair,
    green,
    green_curl,
    green_gradient,
    green_imag_freq,
)
from dyad.physics.observables import PointContext, TimeSample
from dyad.physics.quantities import (
    CONSTANTS,
    Constants,
    DyadConfig,
    DyadParameters,
    UnitSystem,
    rydberg_pair,
    to_internal,
)

__all__ = [
    # Units and configuration
    "CONSTANTS",
    "Constants",
    "DyadConfig",
    "DyadParameters",
    "UnitSystem",
    "rydberg_pair",
    "to_internal",
    # Green tensor
    "GreenEval",
    "ProjectorPair",
    "green",
    "green_curl",
    "green_gradient",
    "green_imag_freq",
    # Coupling
    "CouplingRates",
    "complex_coupling",
    "coupling_rates",
    "gamma0_rate",
    # Dynamics
    "AmplitudePair",
    "PopulationSample",
    "amplitudes",
    "emission_rate",
    "populations",
    "rabi_propagator",
    # Forces
    "DisplacementCurve",
    "ForceSample",
    "OffResonantQuadrature",
    "cm_displacement",
    "conservative_forces",
    "nonconservative_forces",
    "offresonant_force",
    "rydberg_scaling_audit",
    # Emission
    "AngularGrid",
    "AngularRateSample",
    "angular_rate",
    "forward_backward_asymmetry",
    "photon_momentum_rate",
    # Grid points
    "PointContext",
    "TimeSample",
]

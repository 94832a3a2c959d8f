from .config import (
    ExplicitSystem,
    Geometry,
    OutputSettings,
    QuadratureSettings,
    RunConfig,
    RydbergSystem,
    Sweep,
)

__all__ = [
    "ExplicitSystem",
    "Geometry",
    "OutputSettings",
    "QuadratureSettings",
    "RunConfig",
    "RydbergSystem",
    "Sweep",
]

import json
from typing import Any

import numpy as np
from pydantic import ValidationError

from dyad.errors import DyadError, QuadratureError
from dyad.physics.observables import Observable, TimeSample
from dyad.physics.quantities import UnitSystem

AXES = ("x", "y", "z")

COLUMN_BLOCKS: dict[Observable, tuple[str, ...]] = {
    "populations": ("P_A", "P_B", "P_gamma", "unitarity_defect"),
    "forces": (
        "Fc_A_R",
        "Fc_B_R",
        "Fc_net_R",
        *(f"Fnc_A_{axis}" for axis in AXES),
        *(f"Fnc_B_{axis}" for axis in AXES),
        *(f"Fnc_net_{axis}" for axis in AXES),
        "Foff_A_R",
    ),
    "emission": ("Gamma_emit_per_s", "Pdot_gamma_R"),
    "displacement": ("S_CM_m",),
}

COLUMN_UNITS: dict[str, str] = {
    "k0R": "1",
    "T_s": "s",
    "P_A": "1",
    "P_B": "1",
    "P_gamma": "1",
    "unitarity_defect": "1",
    **{name: "N" for name in COLUMN_BLOCKS["forces"]},
    "Gamma_emit_per_s": "1/s",
    "Pdot_gamma_R": "N",
    "S_CM_m": "m",
}


def table_columns(observables: list[Observable]) -> list[str]:
    """Header for the requested observables, in the fixed block order."""
    columns = ["k0R", "T_s"]
    for name, block in COLUMN_BLOCKS.items():
        if name in observables:
            columns.extend(block)
    return columns


def column_units(columns: list[str]) -> list[str]:
    """SI unit of each column, "1" for dimensionless ones."""
    return [COLUMN_UNITS[column] for column in columns]


def sample_row(
    sample: TimeSample, units: UnitSystem, rhat: np.ndarray
) -> list[float]:
    """One table row in SI units, matching :func:`table_columns`."""

    def force(vector: np.ndarray) -> np.ndarray:
        return np.asarray(units.to_si(vector, "force"))

    row = [sample.k0r, float(units.to_si(sample.T, "time"))]
    if sample.populations is not None:
        p = sample.populations
        row += [p.p_a, p.p_b, p.p_gamma, p.unitarity_defect]
    if sample.forces is not None:
        f = sample.forces
        row += [
            float(force(f.f_a_cons) @ rhat),
            float(force(f.f_b_cons) @ rhat),
            float(force(f.f_net_cons) @ rhat),
            *force(f.f_a_noncons),
            *force(f.f_b_noncons),
            *force(f.f_net_noncons),
            float(force(f.f_offres_a) @ rhat),
        ]
    if sample.emission is not None and sample.photon_momentum is not None:
        row += [
            float(units.to_si(sample.emission.total_rate, "frequency")),
            float(force(sample.photon_momentum) @ rhat),
        ]
    if sample.displacement is not None:
        row.append(float(units.to_si(sample.displacement, "displacement")))
    return [float(value) for value in row]


def emit_event(event_type: str, data: dict[str, Any] | None = None) -> str:
    """Create a typed JSON event for standard error."""
    event: dict[str, Any] = {"type": event_type}
    if data:
        event["data"] = data
    return json.dumps(event)


def emit_validation_error(error: ValidationError | DyadError | OSError) -> str:
    if isinstance(error, ValidationError):
        errors = [
            {
                "loc": [str(part) for part in item["loc"]],
                "msg": item["msg"],
                "type": item["type"],
            }
            for item in error.errors(include_url=False)
        ]
    else:
        errors = [{"loc": [], "msg": str(error), "type": type(error).__name__}]
    return emit_event("validation_error", {"errors": errors})


def emit_numerical_error(error: DyadError) -> str:
    data: dict[str, Any] = {"message": str(error), "kind": type(error).__name__}
    if isinstance(error, QuadratureError):
        data["context"] = {key: str(value) for key, value in error.context.items()}
        data["achieved"] = error.achieved
        data["tolerance"] = error.tolerance
    return emit_event("numerical_error", data)

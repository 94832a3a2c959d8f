from dyad.verification.descriptions import (
    list_available_descriptions,
    load_description,
)
from dyad.verification.oracle import (
    Derivative,
    OdeResult,
    SmallArgumentSeries,
    effective_2level_closed_form,
    finite_difference,
    integrate_effective_2level,
    plane_wave_curl_sum,
    plane_wave_mode_sum,
    series_small_x,
)
from dyad.verification.state import (
    CheckRecord,
    VerificationReport,
    apply_update,
    merge_checks,
    report_passed,
)
from dyad.verification.suite import run_suite

__all__ = [
    # Oracles
    "Derivative",
    "OdeResult",
    "SmallArgumentSeries",
    "effective_2level_closed_form",
    "finite_difference",
    "integrate_effective_2level",
    "plane_wave_curl_sum",
    "plane_wave_mode_sum",
    "series_small_x",
    # Acceptance suite
    "CheckRecord",
    "VerificationReport",
    "apply_update",
    "merge_checks",
    "report_passed",
    "run_suite",
    # Descriptions
    "list_available_descriptions",
    "load_description",
]

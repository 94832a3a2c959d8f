"""Acceptance suite behind ``dyad verify``.

Every check returns one or more :class:`CheckRecord` entries comparing the
worst deviation it measured against a fixed tolerance. The quick level runs
reduced sample counts; the full level runs the complete sweeps and adds the
Rydberg scaling audit and the displacement scan of the 448 μm lithium pair.
"""

import logging
import math
import time
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from dyad.errors import DyadError
from dyad.physics import greens
from dyad.physics.coupling import (
    CouplingRates,
    complex_coupling,
    coupling_rates,
)
from dyad.physics.dynamics import amplitudes, populations
from dyad.physics.emission import (
    AngularGrid,
    photon_momentum_rate,
    quadrature_order,
)
from dyad.physics.forces import (
    cm_displacement,
    conservative_forces,
    displacement_curve,
    force_sample,
    offresonant_integral,
    offresonant_integral_fixed,
    rydberg_scaling_audit,
)
from dyad.physics.quantities import (
    CONSTANTS,
    LI7_MASS_U,
    DyadConfig,
    DyadParameters,
    rydberg_pair,
    to_internal,
)
from dyad.verification.descriptions import summary_line
from dyad.verification.oracle import (
    finite_difference,
    integrate_effective_2level,
    plane_wave_curl_sum,
    plane_wave_mode_sum,
)
from dyad.verification.state import (
    CheckRecord,
    VerificationReport,
    apply_update,
)

__all__ = [
    "CHECKS",
    "SIZES",
    "Level",
    "SuiteSize",
    "reference_pair",
    "run_suite",
]

logger = logging.getLogger(__name__)

Level = Literal["quick", "full"]

DEFAULT_SEED = 20240917
FIGURE_WAVELENGTH = 448e-6
SCALING_LEVELS = [40, 50, 60, 70, 80]


@dataclass(frozen=True)
class SuiteSize:
    """Sample counts for one suite level."""

    momentum_points: int
    oracle_couplings: int
    gradient_points: int
    grid_points: int


SIZES: dict[Level, SuiteSize] = {
    "quick": SuiteSize(
        momentum_points=10, oracle_couplings=5, gradient_points=20, grid_points=40
    ),
    "full": SuiteSize(
        momentum_points=100,
        oracle_couplings=20,
        gradient_points=200,
        grid_points=100,
    ),
}


@lru_cache(maxsize=1)
def reference_pair() -> DyadConfig:
    """Li-7 pair on n = 70/69 circular levels with λ₀ pinned at 448 μm."""
    return rydberg_pair(
        70, LI7_MASS_U * CONSTANTS.amu, lambda0_override=FIGURE_WAVELENGTH
    )


def _reference_parameters() -> DyadParameters:
    return to_internal(reference_pair())[1]


def _record(
    name: str, measured: float, tolerance: float, detail: str = ""
) -> CheckRecord:
    passed = math.isfinite(measured) and measured <= tolerance
    record = CheckRecord(
        name=name,
        status="passed" if passed else "failed",
        measured=float(measured),
        tolerance=float(tolerance),
        description=summary_line(name),
    )
    if detail:
        record["detail"] = detail
    return record


def _relative(estimate: NDArray, exact: NDArray) -> float:
    scale = float(np.max(np.abs(exact)))
    error = float(np.max(np.abs(np.asarray(estimate) - exact)))
    return error / scale if scale > 0 else error


def _random_unit(rng: np.random.Generator) -> NDArray[np.float64]:
    vector = rng.normal(size=3)
    return vector / np.linalg.norm(vector)


def check_unitarity(size: SuiteSize, rng: np.random.Generator) -> list[CheckRecord]:
    params = _reference_parameters()
    times = np.linspace(0.0, 10.0, size.grid_points)
    identity = defect = 0.0
    for x in np.linspace(0.1, 20.0, size.grid_points):
        rates = coupling_rates(params.with_separation(x))
        sample = populations(rates, times)
        ceiling = math.cosh(2 * rates.domega_domega)
        identity = max(
            identity, float(np.max(np.abs(sample.unitarity_sum - ceiling)))
        )
        if x >= 0.3:
            defect = max(defect, float(np.max(np.abs(sample.unitarity_defect))))
    return [
        _record("unitarity_identity", identity, 1e-12),
        _record("unitarity_defect", defect, 1e-4),
    ]


def check_momentum_balance(
    size: SuiteSize, rng: np.random.Generator
) -> list[CheckRecord]:
    params = _reference_parameters()
    worst = 0.0
    for _ in range(size.momentum_points):
        x = float(rng.uniform(0.1, 20.0))
        T = float(rng.uniform(0.0, 10.0))
        local = params.with_separation(x)
        rates = coupling_rates(local)
        photons = photon_momentum_rate(rates, local, T)
        _, _, f_net = conservative_forces(rates, T)
        scale = 2 * math.exp(-T) * float(np.linalg.norm(rates.grad_gamma))
        worst = max(worst, float(np.linalg.norm(photons + f_net)) / scale)
    return [
        _record(
            "momentum_balance",
            worst,
            1e-6,
            f"{size.momentum_points} random (k0R, T) points",
        )
    ]


def check_oracle_equivalence(
    size: SuiteSize, rng: np.random.Generator
) -> list[CheckRecord]:
    times = np.linspace(0.0, 10.0, 101)
    zero = np.zeros(3)
    worst = 0.0
    for _ in range(size.oracle_couplings):
        omega = float(rng.uniform(-2.0, 2.0))
        gamma = float(rng.uniform(-0.5, 0.5))
        rates = CouplingRates(omega, gamma, 0.0, 0.0, zero, zero, zero, zero)
        closed = amplitudes(rates, times, frame="rotating")
        stacked = np.stack([closed.a_plus, closed.b_plus], axis=-1)
        ode = integrate_effective_2level(
            complex(omega, -gamma), 1.0, 10.0, 1e-11, times
        )
        worst = max(worst, float(np.max(np.abs(stacked - ode.amplitudes))))
    return [
        _record(
            "oracle_equivalence",
            worst,
            1e-8,
            f"{size.oracle_couplings} random couplings",
        )
    ]


def check_near_field(size: SuiteSize, rng: np.random.Generator) -> list[CheckRecord]:
    params = _reference_parameters()
    rates = coupling_rates(params.with_separation(1e-3))
    times = np.array([0.5, 1.0, 3.0])
    expected = 0.5 * (1 - np.exp(-2 * times)) * math.exp(2 * rates.domega_domega)
    emitted = np.asarray(populations(rates, times).p_gamma)
    inhibition = float(np.max(np.abs(emitted - expected) / expected))

    xs = np.geomspace(1e-3, 10.0, size.grid_points)
    couplings = [coupling_rates(params.with_separation(x)) for x in xs]
    overshoot = max(0.0, max(c.gamma_kr for c in couplings) - 0.5)
    near = xs < 1e-2
    slope = np.polyfit(
        np.log(xs[near]),
        np.log(np.abs([c.omega_kr for c in couplings]))[near],
        1,
    )[0]
    return [
        _record("near_field_inhibition", inhibition, 1e-3),
        _record(
            "near_field_bounds",
            max(overshoot / 1e-6, abs(slope + 3) / 0.05),
            1.0,
            f"Omega exponent {slope:.4f}, Gamma overshoot {overshoot:.2e}",
        ),
    ]


def _random_parameters(rng: np.random.Generator) -> DyadParameters:
    return DyadParameters(
        x=float(rng.uniform(0.3, 20.0)),
        rhat=_random_unit(rng),
        mu_a=_random_unit(rng),
        mu_b=_random_unit(rng),
        coupling_strength=0.75,
        retardation=1e-3,
        recoil=1.0,
    )


def check_gradients(size: SuiteSize, rng: np.random.Generator) -> list[CheckRecord]:
    tensor = curl = spatial = spectral = 0.0
    for _ in range(size.gradient_points):
        params = _random_parameters(rng)
        x, rhat = params.x, params.rhat
        point = params.separation_vector
        step = 1e-3 * x

        def field(at: NDArray) -> NDArray:
            distance = float(np.linalg.norm(at))
            return greens.green(distance, at / distance).G

        numeric = finite_difference(field, point, step).value
        tensor = max(tensor, _relative(numeric, greens.green_gradient(x, rhat)))
        numeric_curl = np.einsum("ilm,lmj->ij", greens.LEVI_CIVITA, numeric)
        curl = max(curl, _relative(numeric_curl, greens.green_curl(x, rhat)))

        rates = coupling_rates(params)
        moved = finite_difference(
            lambda at, p=params: complex_coupling(p, separation=at), point, step
        ).value
        # derivative along R_vec is minus the gradient at atom A
        spatial = max(
            spatial,
            _relative(moved, -(rates.grad_omega - 1j * rates.grad_gamma)),
        )

        detuned = finite_difference(
            lambda nu, p=params: complex_coupling(
                p, frequency_ratio=float(nu)
            ),
            1.0,
            1e-3,
        ).value
        analytic = complex(rates.domega_domega, -rates.dgamma_domega)
        # floor keeps accidental zeros of the contraction from dominating
        floor = 1e-3 * params.retardation * abs(rates.complex_coupling)
        spectral = max(
            spectral,
            abs(params.retardation * detuned - analytic)
            / max(abs(analytic), floor),
        )
    detail = f"{size.gradient_points} random points per derivative"
    return [
        _record("green_gradient", tensor, 1e-6, detail),
        _record("green_curl", curl, 1e-6, detail),
        _record("coupling_gradient", spatial, 1e-6, detail),
        _record("frequency_derivative", spectral, 1e-6, detail),
    ]


def check_displacement_force(
    size: SuiteSize, rng: np.random.Generator
) -> list[CheckRecord]:
    params = _reference_parameters().with_separation(0.77)
    rates = coupling_rates(params).without_retardation()
    times = np.linspace(0.2, 5.0, 25)
    curvature = np.array(
        [
            finite_difference(
                lambda t: cm_displacement(params, rates, float(t)),
                T,
                1e-2,
                derivative=2,
            ).value
            for T in times
        ]
    )
    _, _, f_net = conservative_forces(rates, times)
    # pair mass 2M, so S'' = η·F_net·R̂/2
    expected = 0.5 * params.recoil * (f_net @ params.rhat)
    return [_record("displacement_force", _relative(curvature, expected), 1e-6)]


def check_offresonant(size: SuiteSize, rng: np.random.Generator) -> list[CheckRecord]:
    params = _reference_parameters()
    worst = reciprocity = 0.0
    for x in (0.5, 1.0, 5.0):
        local = params.with_separation(x)
        integral = offresonant_integral(local)
        doubled = offresonant_integral_fixed(local, 2 * integral.panels)
        change = float(np.linalg.norm(doubled - integral.value)) / float(
            np.linalg.norm(integral.value)
        )
        worst = max(worst, change)
        sample = force_sample(local, coupling_rates(local), 1.0, integral)
        reciprocity = max(
            reciprocity,
            float(np.max(np.abs(sample.f_offres_a + sample.f_offres_b))),
        )
    if reciprocity != 0.0:
        worst = math.inf
    return [_record("offresonant_convergence", worst, 1e-10)]


def check_vacuum_identity(
    size: SuiteSize, rng: np.random.Generator
) -> list[CheckRecord]:
    rhat = np.array([1.0, 0.0, 0.0])
    worst = 0.0
    for x in (0.5, 3.0, 12.0):
        grid = AngularGrid.gauss_product(quadrature_order(x) + 16, rhat)
        evaluated = greens.evaluate(x, rhat)
        assert evaluated.curlG is not None
        worst = max(
            worst,
            float(np.max(np.abs(plane_wave_mode_sum(x, rhat, grid) - evaluated.G.imag))),
            float(
                np.max(np.abs(plane_wave_curl_sum(x, rhat, grid) - evaluated.curlG.imag))
            ),
        )
    return [_record("vacuum_identity", worst, 1e-8)]


def check_scaling(size: SuiteSize, rng: np.random.Generator) -> list[CheckRecord]:
    audit = rydberg_scaling_audit(SCALING_LEVELS)
    return [
        _record(
            "scaling_force",
            abs(audit.force_exponent + 8),
            0.3,
            f"fitted exponent {audit.force_exponent:.4f}",
        ),
        _record(
            "scaling_displacement",
            abs(audit.displacement_exponent - 2),
            0.2,
            f"fitted exponent {audit.displacement_exponent:.4f}",
        ),
    ]


def check_displacement_peak(
    size: SuiteSize, rng: np.random.Generator
) -> list[CheckRecord]:
    curve = displacement_curve(reference_pair(), np.geomspace(0.3, 3.0, 200))
    location, magnitude = curve.peak
    second = [
        peak for peak in curve.local_peaks() if 1.6 <= peak[0] <= 2.4
    ]
    if second:
        second_location, second_magnitude = max(second, key=lambda p: p[1])
        second_distance = abs(second_location - 2.0)
        found = f"{second_magnitude * 1e9:.4g} nm at k0R = {second_location:.3f}"
    else:
        second_distance = math.inf
        found = "no local maximum in [1.6, 2.4]"
    detail = (
        f"|S_CM| peaks at {magnitude * 1e9:.4g} nm, k0R = {location:.3f}; "
        f"second peak {found}"
    )
    return [
        _record("displacement_peak", abs(location - 0.77), 0.12, detail),
        _record("displacement_second_peak", second_distance, 0.3, detail),
    ]


Check = Callable[[SuiteSize, np.random.Generator], list[CheckRecord]]

CHECKS: dict[str, tuple[Check, tuple[Level, ...]]] = {
    "unitarity": (check_unitarity, ("quick", "full")),
    "momentum_balance": (check_momentum_balance, ("quick", "full")),
    "oracle_equivalence": (check_oracle_equivalence, ("quick", "full")),
    "near_field": (check_near_field, ("quick", "full")),
    "gradients": (check_gradients, ("quick", "full")),
    "displacement_force": (check_displacement_force, ("quick", "full")),
    "offresonant": (check_offresonant, ("quick", "full")),
    "vacuum_identity": (check_vacuum_identity, ("quick", "full")),
    "scaling": (check_scaling, ("full",)),
    "displacement_peak": (check_displacement_peak, ("full",)),
}


def run_suite(level: Level = "quick", seed: int = DEFAULT_SEED) -> VerificationReport:
    """Run every check registered for ``level``.

    A check that raises a :class:`DyadError` is recorded with status error
    and the message as detail; the remaining checks still run.

    Args:
        level: quick or full
        seed: Seed of the per-check random streams

    Returns:
        Report with one record per measured quantity.
    """
    if level not in SIZES:
        raise ValueError(f"unknown verification level {level!r}")
    size = SIZES[level]
    report = VerificationReport(level=level, checks={})
    started = time.perf_counter()
    for index, (group, (check, levels)) in enumerate(CHECKS.items()):
        if level not in levels:
            continue
        rng = np.random.default_rng([seed, index])
        logger.debug("running check group %s", group)
        try:
            records = check(size, rng)
        except DyadError as err:
            logger.warning("check group %s raised: %s", group, err)
            records = [
                CheckRecord(
                    name=group,
                    status="error",
                    measured=math.nan,
                    tolerance=math.nan,
                    description=f"{group} checks did not complete",
                    detail=str(err),
                )
            ]
        report = apply_update(
            report, {"checks": {record["name"]: record for record in records}}
        )
    report["elapsed"] = time.perf_counter() - started
    return report

import math

import numpy as np
import pytest
from conftest import X_HAT, Z_HAT, flat_rates, parallel_pair

from dyad.errors import DomainError, QuadratureError
from dyad.physics.coupling import coupling_rates
from dyad.physics.dynamics import emission_rate
from dyad.physics.emission import (
    AngularGrid,
    angular_rate,
    angular_rate_sample,
    default_grid,
    forward_backward_asymmetry,
    photon_momentum_rate,
    quadrature_order,
)
from dyad.physics.forces import conservative_forces


def test_grid_integrates_solid_angle() -> None:
    grid = AngularGrid.gauss_product(12, axis=[1.0, 1.0, 0.0])
    assert grid.integrate(np.ones(len(grid.nodes))) == pytest.approx(4 * math.pi)
    np.testing.assert_allclose(np.linalg.norm(grid.nodes, axis=1), 1.0)
    for hemisphere in ("upper", "lower"):
        half = AngularGrid.gauss_product(12, X_HAT, hemisphere)
        assert half.integrate(np.ones(len(half.nodes))) == pytest.approx(
            2 * math.pi
        )
        sign = 1.0 if hemisphere == "upper" else -1.0
        assert np.all(sign * (half.nodes @ X_HAT) > 0)


def test_grid_is_exact_for_low_degree_polynomials() -> None:
    grid = AngularGrid.gauss_product(8, Z_HAT)
    # ∫ k_z² dΘ = 4π/3, ∫ k_x²k_y² dΘ = 4π/15
    assert grid.integrate(grid.nodes[:, 2] ** 2) == pytest.approx(4 * math.pi / 3)
    assert grid.integrate(
        grid.nodes[:, 0] ** 2 * grid.nodes[:, 1] ** 2
    ) == pytest.approx(4 * math.pi / 15)


def test_refined_grid_raises_order() -> None:
    grid = default_grid(parallel_pair(3.0))
    assert grid.order == quadrature_order(3.0) == 30
    assert grid.refined().order == 46


@pytest.mark.parametrize(("x", "T"), [(0.3, 0.4), (0.77, 1.0), (6.5, 2.5)])
def test_consistent_pattern_integrates_to_emission_rate(x: float, T: float) -> None:
    params = parallel_pair(x, retardation=1e-2)
    rates = coupling_rates(params)
    sample = angular_rate_sample(rates, params, T)
    assert sample.total_rate == pytest.approx(emission_rate(rates, T), rel=1e-10)
    assert sample.mode == "consistent"


def test_as_printed_pattern_carries_only_interference() -> None:
    params = parallel_pair(1.2)
    rates = coupling_rates(params)
    sample = angular_rate_sample(rates, params, 0.8, mode="as_printed")
    # collective part of the emission rate: -2Γ·e^{-T}·sinh(w)
    w = 2 * (rates.gamma_kr * 0.8 - rates.domega_domega)
    expected = -2 * rates.gamma_kr * math.exp(-0.8) * math.sinh(w)
    assert sample.total_rate == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize(("x", "T"), [(0.5, 0.3), (1.3, 1.1), (9.0, 4.0)])
def test_photon_momentum_balances_net_force(x: float, T: float) -> None:
    params = parallel_pair(x, retardation=1e-2)
    rates = coupling_rates(params)
    _, _, f_net = conservative_forces(rates, T)
    photons = photon_momentum_rate(rates, params, T)
    np.testing.assert_allclose(photons, -f_net, atol=1e-10 * np.abs(f_net).max())


def test_printed_phase_breaks_momentum_balance() -> None:
    params = parallel_pair(1.3, retardation=1e-2)
    rates = coupling_rates(params)
    _, _, f_net = conservative_forces(rates, 0.6)
    photons = photon_momentum_rate(rates, params, 0.6, phase="printed")
    mismatch = np.linalg.norm(photons + f_net) / np.linalg.norm(f_net)
    assert mismatch > 1e-4


def test_sample_momentum_matches_photon_momentum_rate() -> None:
    params = parallel_pair(2.2)
    rates = coupling_rates(params)
    sample = angular_rate_sample(rates, params, 1.5, mode="as_printed")
    np.testing.assert_allclose(
        sample.momentum_rate,
        photon_momentum_rate(rates, params, 1.5),
        atol=1e-12,
    )


def test_emission_leans_towards_atom_a_at_early_times() -> None:
    params = parallel_pair(0.77)
    rates = coupling_rates(params).without_retardation()
    assert forward_backward_asymmetry(rates, params, 0.1) < 0


def test_under_resolved_grid_is_reported() -> None:
    params = parallel_pair(15.0)
    rates = coupling_rates(params)
    grid = AngularGrid.gauss_product(2, params.rhat)
    with pytest.raises(QuadratureError) as info:
        photon_momentum_rate(rates, params, 0.5, grid=grid)
    assert info.value.context == {"k0R": 15.0, "T": 0.5, "order": 2}
    assert info.value.achieved > info.value.tolerance


def test_angular_rate_rejects_bad_input() -> None:
    params = parallel_pair(1.0)
    rates = coupling_rates(params)
    with pytest.raises(DomainError, match="unit vectors"):
        angular_rate(rates, params, 1.0, [1.0, 1.0, 0.0])
    with pytest.raises(DomainError):
        angular_rate(rates, params, -1.0, Z_HAT)
    with pytest.raises(DomainError, match="emission mode"):
        angular_rate(rates, params, 1.0, Z_HAT, mode="total")  # type: ignore[arg-type]


def test_no_emission_along_parallel_dipoles() -> None:
    params = parallel_pair(0.9)
    rates = coupling_rates(params)
    assert angular_rate(rates, params, 1.0, Z_HAT) == pytest.approx(0.0, abs=1e-16)


@pytest.mark.parametrize("x", [0.3, 0.77, 2.0, 7.5])
@pytest.mark.parametrize("T", [0.0, 0.5, 2.0, 6.0])
def test_consistent_pattern_is_never_negative(x: float, T: float) -> None:
    params = parallel_pair(x, retardation=1e-2)
    rates = coupling_rates(params)
    rate = angular_rate_sample(rates, params, T).rate
    assert rate.min() >= -1e-12 * rate.max()


def test_odd_retardation_term_carries_no_total_rate() -> None:
    # w = 0 leaves only the sin(k0R cos θ) part of the interference pattern
    params = parallel_pair(1.7)
    rates = flat_rates(omega=0.9, gamma=0.0)
    sample = angular_rate_sample(rates, params, 0.6, mode="as_printed")
    assert np.abs(sample.rate).max() > 1e-3
    assert sample.total_rate == pytest.approx(0.0, abs=1e-14)
    assert np.linalg.norm(sample.momentum_rate) > 1e-3


@pytest.mark.parametrize("phase", ["propagated", "printed"])
def test_asymmetry_follows_the_interference_phase(phase: str) -> None:
    params = parallel_pair(0.77, retardation=1e-2)
    rates = coupling_rates(params)
    sign = 1.0 if phase == "propagated" else -1.0
    times = np.linspace(0.05, 6.0, 1191)
    step = times[1] - times[0]
    asymmetry = np.array(
        [
            forward_backward_asymmetry(rates, params, T, phase=phase)  # type: ignore[arg-type]
            for T in times
        ]
    )
    oscillatory = 2 * (rates.omega_kr * times + sign * rates.dgamma_domega)
    carrier = np.exp(-times) * np.sin(oscillatory)

    strong = np.abs(np.sin(oscillatory)) > 0.2
    ratio = asymmetry[strong] / carrier[strong]
    assert np.ptp(ratio) <= 1e-9 * np.abs(ratio).mean()

    crossings = times[1:][np.diff(np.sign(asymmetry)) != 0]
    first, last = np.ceil(oscillatory[0] / np.pi), np.floor(oscillatory[-1] / np.pi)
    zeros = (
        np.arange(first, last + 1) * np.pi - 2 * sign * rates.dgamma_domega
    ) / (2 * rates.omega_kr)
    assert len(crossings) == len(zeros) > 3
    np.testing.assert_allclose(crossings, zeros, atol=step)


@pytest.mark.parametrize("x", [0.5, 5.0, 20.0])
def test_total_rate_is_stable_when_grid_order_doubles(x: float) -> None:
    params = parallel_pair(x, retardation=1e-2)
    rates = coupling_rates(params)
    grid = default_grid(params)
    coarse = angular_rate_sample(rates, params, 1.2, grid=grid)
    fine = angular_rate_sample(
        rates,
        params,
        1.2,
        grid=AngularGrid.gauss_product(2 * grid.order, params.rhat),
    )
    assert fine.total_rate == pytest.approx(coarse.total_rate, rel=1e-9)

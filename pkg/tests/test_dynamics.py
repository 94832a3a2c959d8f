import logging
import math

import numpy as np
import pytest
from conftest import flat_rates, parallel_pair

from dyad.errors import DomainError
from dyad.physics.coupling import coupling_rates
from dyad.physics.dynamics import (
    amplitudes,
    emission_rate,
    pi_pulse_transfer,
    populations,
    rabi_propagator,
)
from dyad.physics.quantities import DyadParameters
from dyad.verification.oracle import (
    effective_2level_closed_form,
    finite_difference,
)

TIMES = np.linspace(0.0, 8.0, 41)


def test_initial_state_without_retardation() -> None:
    rates = coupling_rates(parallel_pair(0.7)).without_retardation()
    sample = populations(rates, 0.0)
    assert sample.p_a == pytest.approx(1.0, abs=1e-15)
    assert sample.p_b == pytest.approx(0.0, abs=1e-15)
    assert sample.p_gamma == pytest.approx(0.0, abs=1e-15)


def test_unitarity_sum_equals_frequency_ceiling() -> None:
    rates = coupling_rates(parallel_pair(0.4, retardation=1e-2))
    sample = populations(rates, TIMES)
    ceiling = math.cosh(2 * rates.domega_domega)
    np.testing.assert_allclose(sample.unitarity_sum, ceiling, atol=1e-14)
    np.testing.assert_allclose(
        sample.unitarity_defect, ceiling - 1.0, atol=1e-14
    )


def test_real_coupling_gives_full_contrast_rabi_flopping() -> None:
    rates = flat_rates(omega=1.5, gamma=0.0)
    sample = populations(rates, TIMES)
    envelope = np.exp(-TIMES)
    np.testing.assert_allclose(
        sample.p_a, envelope * np.cos(1.5 * TIMES) ** 2, atol=1e-15
    )
    np.testing.assert_allclose(
        sample.p_b, envelope * np.sin(1.5 * TIMES) ** 2, atol=1e-15
    )


def test_emission_probability_approaches_one() -> None:
    rates = coupling_rates(parallel_pair(3.0)).without_retardation()
    assert populations(rates, 60.0).p_gamma == pytest.approx(1.0, abs=1e-8)


def test_amplitudes_square_to_populations() -> None:
    rates = coupling_rates(parallel_pair(0.9, retardation=1e-2))
    pair = amplitudes(rates, TIMES)
    sample = populations(rates, TIMES)
    np.testing.assert_allclose(np.abs(pair.a_plus) ** 2, sample.p_a, atol=1e-14)
    np.testing.assert_allclose(np.abs(pair.b_plus) ** 2, sample.p_b, atol=1e-14)


def test_rotating_frame_matches_two_level_closed_form() -> None:
    rates = flat_rates(omega=0.8, gamma=0.3)
    pair = amplitudes(rates, TIMES, frame="rotating")
    expected = effective_2level_closed_form(complex(0.8, -0.3), 1.0, TIMES)
    np.testing.assert_allclose(pair.a_plus, expected[:, 0], atol=1e-15)
    np.testing.assert_allclose(pair.b_plus, expected[:, 1], atol=1e-15)


def test_lab_frame_carries_carrier_phase() -> None:
    rates = coupling_rates(parallel_pair(1.1)).without_retardation()
    lab = amplitudes(rates, 2.0)
    rotating = amplitudes(rates, 2.0, frame="rotating")
    carrier = -1j * np.exp(-1j * rates.omega0 * 2.0)
    assert lab.a_plus == pytest.approx(carrier * rotating.a_plus, rel=1e-9)
    assert lab.b_plus == pytest.approx(carrier * rotating.b_plus, rel=1e-9)


def test_unknown_frame_is_rejected() -> None:
    with pytest.raises(DomainError, match="unknown frame"):
        amplitudes(flat_rates(1.0, 0.1), 1.0, frame="dressed")  # type: ignore[arg-type]


def test_emission_rate_is_time_derivative_of_emission_probability() -> None:
    rates = coupling_rates(parallel_pair(0.6, retardation=1e-2))
    for T in (0.3, 1.0, 4.0):
        numeric = finite_difference(
            lambda t: populations(rates, float(t)).p_gamma, T, 1e-2
        ).value
        assert emission_rate(rates, T) == pytest.approx(numeric, rel=1e-9)


def test_negative_time_is_rejected() -> None:
    with pytest.raises(DomainError):
        populations(flat_rates(1.0, 0.1), -0.5)


def test_pi_pulse_leaves_atom_excited() -> None:
    omega_l = 1e4
    transfer = pi_pulse_transfer(omega_l, omega0=0.0, gamma0=1.0)
    assert transfer == pytest.approx(math.exp(-math.pi / omega_l), rel=1e-12)


def test_rabi_propagator_accepts_time_arrays() -> None:
    times = np.linspace(0.0, 1e-3, 5)
    matrices = rabi_propagator(1e4, times, omega0=50.0, gamma0=1.0)
    assert matrices.shape == (5, 2, 2)
    np.testing.assert_allclose(matrices[0], np.eye(2), atol=1e-15)


def test_weak_drive_logs_warning(caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.WARNING, logger="dyad.physics.dynamics"):
        rabi_propagator(10.0, 0.1, omega0=0.0, gamma0=1.0)
    assert "sudden" in caplog.text


def test_rabi_frequency_must_be_positive() -> None:
    with pytest.raises(DomainError):
        rabi_propagator(0.0, 1.0, omega0=0.0, gamma0=1.0)


@pytest.mark.parametrize("x", [0.3, 0.77, 2.0, 10.0])
def test_emission_probability_never_decreases(x: float) -> None:
    rates = coupling_rates(parallel_pair(x, retardation=1e-2))
    times = np.linspace(0.0, 20.0, 4001)
    p_gamma = populations(rates, times).p_gamma
    assert np.all(np.diff(p_gamma) >= -1e-15)
    assert np.all(emission_rate(rates, times) >= 0)


def test_excitation_oscillates_at_twice_the_shift() -> None:
    # dipoles along the separation at tan x = x: Γ_kR vanishes
    params = DyadParameters(
        x=4.493409457909064,
        rhat=np.array([1.0, 0.0, 0.0]),
        mu_a=np.array([1.0, 0.0, 0.0]),
        mu_b=np.array([1.0, 0.0, 0.0]),
        coupling_strength=0.75,
        retardation=1e-3,
        recoil=1.0,
    )
    rates = coupling_rates(params).without_retardation()
    times = np.arange(4096) * (400.0 / 4096)
    signal = populations(rates, times).p_a * np.exp(times)
    spectrum = np.abs(np.fft.rfft(signal - signal.mean()))
    frequencies = np.fft.rfftfreq(len(times), d=times[1] - times[0])
    peak = frequencies[np.argmax(spectrum)]
    expected = 2 * abs(rates.omega_kr) / (2 * np.pi)
    assert abs(peak - expected) <= frequencies[1]


def test_amplitudes_agree_with_populations_on_random_grid(
    rng: np.random.Generator,
) -> None:
    for _ in range(1000):
        directions = rng.normal(size=(3, 3))
        rhat, mu_a, mu_b = directions / np.linalg.norm(
            directions, axis=1, keepdims=True
        )
        params = DyadParameters(
            x=float(rng.uniform(0.1, 20.0)),
            rhat=rhat,
            mu_a=mu_a,
            mu_b=mu_b,
            coupling_strength=0.75,
            retardation=1e-3,
            recoil=1.0,
        )
        rates = coupling_rates(params)
        T = float(rng.uniform(0.0, 10.0))
        pair = amplitudes(rates, T)
        sample = populations(rates, T)
        assert abs(pair.a_plus) ** 2 == pytest.approx(sample.p_a, abs=1e-12)
        assert abs(pair.b_plus) ** 2 == pytest.approx(sample.p_b, abs=1e-12)


def test_rabi_propagator_starts_at_identity_and_only_attenuates() -> None:
    times = np.linspace(0.0, 0.1, 501)
    matrices = rabi_propagator(1e3, times, omega0=50.0, gamma0=1.0)
    np.testing.assert_allclose(matrices[0], np.eye(2), atol=0)
    column_norms = np.linalg.norm(matrices, axis=-2)
    assert np.all(column_norms <= 1.0 + 1e-15)
    assert column_norms[-1, 1] < 1.0

import math

import numpy as np
import pytest

from dyad.errors import DomainError
from dyad.physics.quantities import (
    CODATA_2018,
    CONSTANTS,
    LI7_MASS_U,
    DyadConfig,
    UnitSystem,
    decay_rate,
    rydberg_pair,
    to_internal,
)


def test_constants_follow_codata_table() -> None:
    assert CONSTANTS.hbar == CODATA_2018["reduced Planck constant"][0]
    assert CONSTANTS.c == 299792458.0
    assert CONSTANTS.a0 == pytest.approx(5.29177210903e-11, rel=1e-15)


def test_decay_rate_matches_free_space_formula() -> None:
    omega0 = 2 * math.pi * 1e9
    dipole = 1e-28
    k0 = omega0 / CONSTANTS.c
    expected = k0**3 * dipole**2 / (3 * math.pi * CONSTANTS.eps0 * CONSTANTS.hbar)
    assert decay_rate(omega0, dipole) == pytest.approx(expected, rel=1e-14)


def test_rydberg_pair_pins_wavelength_and_geometry(li70_pair: DyadConfig) -> None:
    assert li70_pair.wavelength == pytest.approx(448e-6, rel=1e-12)
    assert li70_pair.dipole_norm == pytest.approx(
        CONSTANTS.e_charge * CONSTANTS.a0 * 70**2, rel=1e-14
    )
    np.testing.assert_allclose(li70_pair.mu_A / li70_pair.dipole_norm, [0, 0, 1])
    np.testing.assert_allclose(li70_pair.rhat, [1, 0, 0])
    assert li70_pair.separation == pytest.approx(1.0, rel=1e-12)
    assert li70_pair.mass == pytest.approx(LI7_MASS_U * CONSTANTS.amu)


def test_li70_decay_rate_is_microsecond_scale(li70_pair: DyadConfig) -> None:
    # |mu| = e a0 n^2 at 448 um gives a lifetime close to 1.85 us
    assert li70_pair.gamma0 == pytest.approx(5.41e5, rel=1e-2)


def test_rydberg_pair_without_override_uses_rydberg_formula() -> None:
    pair = rydberg_pair(70, LI7_MASS_U * CONSTANTS.amu)
    omega0 = 2 * CONSTANTS.E0 / (CONSTANTS.hbar * 70**3)
    assert pair.omega0 == pytest.approx(omega0, rel=1e-14)
    assert pair.wavelength == pytest.approx(1.56e-2, rel=1e-2)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n": 1, "isotope_mass": 1e-26},
        {"n": 70, "isotope_mass": -1.0},
        {"n": 70, "isotope_mass": 1e-26, "lambda0_override": 0.0},
    ],
)
def test_rydberg_pair_rejects_bad_input(kwargs: dict) -> None:
    with pytest.raises(DomainError):
        rydberg_pair(**kwargs)


def test_internal_parameters_of_self_consistent_pair(
    li70_pair: DyadConfig,
) -> None:
    units, params = to_internal(li70_pair)
    assert params.coupling_strength == pytest.approx(0.75, rel=1e-12)
    assert params.retardation == pytest.approx(
        li70_pair.gamma0 / li70_pair.omega0
    )
    assert params.recoil == pytest.approx(
        CONSTANTS.hbar * li70_pair.k0**2 / (li70_pair.mass * li70_pair.gamma0)
    )
    np.testing.assert_allclose(params.mu_a, [0, 0, 1])
    assert units.to_si(1.0, "time") == pytest.approx(1 / li70_pair.gamma0)


def test_unit_system_round_trip_and_scales() -> None:
    units = UnitSystem(gamma0_SI=2.0e5, k0_SI=1.0e4)
    assert units.to_si(1.0, "force") == pytest.approx(
        CONSTANTS.hbar * 1.0e4 * 2.0e5
    )
    assert units.to_si(3.0, "displacement") == pytest.approx(3.0e-4)
    values = np.array([0.5, 2.0])
    np.testing.assert_allclose(
        units.to_internal(units.to_si(values, "momentum"), "momentum"), values
    )
    with pytest.raises(DomainError, match="unknown quantity kind"):
        units.to_si(1.0, "energy")  # type: ignore[arg-type]


def test_config_requires_identical_dipoles() -> None:
    with pytest.raises(DomainError, match="identical atoms"):
        DyadConfig(
            mu_A=[0, 0, 1e-26],
            mu_B=[0, 0, 2e-26],
            omega0=1e10,
            gamma0=1.0,
            mass=1e-26,
            R_vec=[1e-3, 0, 0],
        )


def test_config_rejects_complex_dipoles() -> None:
    with pytest.raises(DomainError, match="real vector"):
        DyadConfig(
            mu_A=np.array([0, 1j, 1.0]) * 1e-26,
            mu_B=np.array([0, 0, 1.0]) * 1e-26,
            omega0=1e10,
            gamma0=1.0,
            mass=1e-26,
            R_vec=[1e-3, 0, 0],
        )


def test_with_separation_moves_along_requested_axis(
    li70_pair: DyadConfig,
) -> None:
    moved = li70_pair.with_separation(2.5, axis=[0.0, 3.0, 0.0])
    assert moved.separation == pytest.approx(2.5, rel=1e-12)
    np.testing.assert_allclose(moved.rhat, [0, 1, 0])
    with pytest.raises(DomainError):
        li70_pair.with_separation(0.0)


def test_parameters_with_separation(li70_params) -> None:
    moved = li70_params.with_separation(3.0)
    assert moved.x == 3.0
    np.testing.assert_allclose(moved.separation_vector, [3.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        li70_params.with_separation(-1.0)

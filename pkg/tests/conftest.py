import numpy as np
import pytest

from dyad.physics.coupling import CouplingRates
from dyad.physics.quantities import (
    CONSTANTS,
    LI7_MASS_U,
    DyadConfig,
    DyadParameters,
    rydberg_pair,
    to_internal,
)
from dyad.services.cli.dependencies import get_settings

X_HAT = np.array([1.0, 0.0, 0.0])
Z_HAT = np.array([0.0, 0.0, 1.0])


def parallel_pair(
    x: float, retardation: float = 1e-3, recoil: float = 1e-6
) -> DyadParameters:
    """Dipoles along ẑ, separation along x̂, self-consistent coupling."""
    return DyadParameters(
        x=x,
        rhat=X_HAT,
        mu_a=Z_HAT,
        mu_b=Z_HAT,
        coupling_strength=0.75,
        retardation=retardation,
        recoil=recoil,
    )


def flat_rates(omega: float, gamma: float) -> CouplingRates:
    """Rates with the given complex coupling and nothing else."""
    zero = np.zeros(3)
    return CouplingRates(omega, gamma, 0.0, 0.0, zero, zero, zero, zero)


@pytest.fixture(scope="session")
def li70_pair() -> DyadConfig:
    return rydberg_pair(
        70, LI7_MASS_U * CONSTANTS.amu, lambda0_override=448e-6
    )


@pytest.fixture(scope="session")
def li70_params(li70_pair: DyadConfig) -> DyadParameters:
    return to_internal(li70_pair)[1]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def clean_settings(monkeypatch: pytest.MonkeyPatch):
    for name in ("DYAD_THREADS", "DYAD_LOG_LEVEL", "DYAD_OUTPUT_FORMAT"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()

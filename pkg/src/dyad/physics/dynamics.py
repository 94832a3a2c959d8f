"""Closed-form time evolution after a sudden excitation of atom A.

Times are Γ₀T. With u = Ω_kR·T + ∂_ωΓ and v = ∂_ωΩ - Γ_kR·T the resummed
amplitudes are cos(u + iv) and sin(u + iv) under an e^{-iω₀T - T/2}
envelope. Every function accepts scalar or array times.
"""

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyad.errors import DomainError
from dyad.physics.coupling import CouplingRates

__all__ = [
    "AmplitudePair",
    "Frame",
    "PopulationSample",
    "amplitudes",
    "emission_rate",
    "pi_pulse_transfer",
    "populations",
    "rabi_propagator",
]

logger = logging.getLogger(__name__)

Frame = Literal["lab", "rotating"]

WEAK_DRIVE_RATIO = 100.0


@dataclass(frozen=True)
class AmplitudePair:
    """Amplitudes of |A₊,B₋⟩ (a_plus) and |A₋,B₊⟩ (b_plus) at time T."""

    a_plus: complex | NDArray[np.complex128]
    b_plus: complex | NDArray[np.complex128]
    T: float | NDArray[np.float64]


@dataclass(frozen=True)
class PopulationSample:
    """Excitation and emission probabilities at time T."""

    T: float | NDArray[np.float64]
    p_a: float | NDArray[np.float64]
    p_b: float | NDArray[np.float64]
    p_gamma: float | NDArray[np.float64]
    unitarity_sum: float | NDArray[np.float64]

    @property
    def unitarity_defect(self) -> float | NDArray[np.float64]:
        return self.unitarity_sum - 1.0


def _times(T: ArrayLike) -> NDArray[np.float64]:
    times = np.asarray(T, dtype=np.float64)
    if np.any(times < 0):
        raise DomainError("times must be nonnegative")
    return times


def _scalar_or_array(value: NDArray) -> float | complex | NDArray:
    return value.item() if value.ndim == 0 else value


def _phase_arguments(
    rates: CouplingRates, times: NDArray[np.float64]
) -> tuple[NDArray, NDArray]:
    """Oscillatory 2u = 2(ΩT + ∂_ωΓ) and hyperbolic w = 2(ΓT - ∂_ωΩ)."""
    oscillatory = 2 * (rates.omega_kr * times + rates.dgamma_domega)
    hyperbolic = 2 * (rates.gamma_kr * times - rates.domega_domega)
    return oscillatory, hyperbolic


def rabi_propagator(
    omega_L: float, t: ArrayLike, omega0: float, gamma0: float
) -> NDArray[np.complex128]:
    """Laser-stage propagator of atom A in the basis (|A₋⟩, |A₊⟩).

    Entry [i, j] is ⟨i|Ũ_A|j⟩. The |A₊⟩ row carries the free evolution
    e^{-iω₀t - Γ₀t/2} of the excited state. Any consistent unit system works.

    Args:
        omega_L: Laser Rabi frequency
        t: Time or array of times
        omega0: Transition frequency
        gamma0: Single-atom decay rate

    Returns:
        Array of shape (2, 2) or (len(t), 2, 2).
    """
    if omega_L <= 0:
        raise DomainError(f"Rabi frequency must be positive, got {omega_L}")
    if omega_L < WEAK_DRIVE_RATIO * gamma0:
        logger.warning(
            "Rabi frequency %.3g is below %g x gamma0; the sudden "
            "excitation picture is not accurate",
            omega_L,
            WEAK_DRIVE_RATIO,
        )
    times = _times(t)
    cos = np.cos(omega_L * times / 2)
    sin = np.sin(omega_L * times / 2)
    excited = np.exp(-1j * omega0 * times - gamma0 * times / 2)
    matrix = np.empty(times.shape + (2, 2), dtype=np.complex128)
    matrix[..., 0, 0] = cos
    matrix[..., 0, 1] = -1j * sin
    matrix[..., 1, 0] = -1j * excited * sin
    matrix[..., 1, 1] = excited * cos
    return matrix


def pi_pulse_transfer(omega_L: float, omega0: float, gamma0: float) -> float:
    """Probability that a π-pulse leaves atom A in |A₊⟩."""
    matrix = rabi_propagator(omega_L, np.pi / omega_L, omega0, gamma0)
    return float(abs(matrix[1, 0]) ** 2)


def amplitudes(
    rates: CouplingRates, T: ArrayLike, frame: Frame = "lab"
) -> AmplitudePair:
    """Resummed amplitudes of the two singly excited states.

    In the lab frame a₊ = -i·e^{-iω₀T-T/2}·cos z and b₊ = -e^{-iω₀T-T/2}·sin z
    with z = u + iv. The rotating frame divides out -i·e^{-iω₀T}, which is the
    frame of :func:`dyad.verification.oracle.integrate_effective_2level`.
    """
    times = _times(T)
    z = (rates.omega_kr * times + rates.dgamma_domega) + 1j * (
        rates.domega_domega - rates.gamma_kr * times
    )
    decay = np.exp(-rates.gamma0 * times / 2)
    if frame == "rotating":
        a_plus = decay * np.cos(z)
        b_plus = -1j * decay * np.sin(z)
    elif frame == "lab":
        envelope = np.exp(-1j * rates.omega0 * times) * decay
        a_plus = -1j * envelope * np.cos(z)
        b_plus = -envelope * np.sin(z)
    else:
        raise DomainError(f"unknown frame {frame!r}")
    return AmplitudePair(
        a_plus=_scalar_or_array(a_plus),
        b_plus=_scalar_or_array(b_plus),
        T=_scalar_or_array(times),
    )


def populations(rates: CouplingRates, T: ArrayLike) -> PopulationSample:
    """P_A₊, P_B₊ and the emission probability P_γ.

    P_γ is cosh(2∂_ωΩ) - e^{-T}cosh(w), so the three probabilities sum to
    cosh(2∂_ωΩ) rather than exactly one.
    """
    times = _times(T)
    oscillatory, hyperbolic = _phase_arguments(rates, times)
    envelope = np.exp(-rates.gamma0 * times)
    excited = envelope * np.cosh(hyperbolic)
    p_a = 0.5 * (excited + envelope * np.cos(oscillatory))
    p_b = 0.5 * (excited - envelope * np.cos(oscillatory))
    ceiling = np.cosh(2 * rates.domega_domega)
    p_gamma = ceiling - excited
    return PopulationSample(
        T=_scalar_or_array(times),
        p_a=_scalar_or_array(p_a),
        p_b=_scalar_or_array(p_b),
        p_gamma=_scalar_or_array(p_gamma),
        unitarity_sum=_scalar_or_array(p_a + p_b + p_gamma),
    )


def emission_rate(
    rates: CouplingRates, T: ArrayLike
) -> float | NDArray[np.float64]:
    """dP_γ/dT = e^{-T}[cosh(w) - 2Γ_kR·sinh(w)]."""
    times = _times(T)
    _, hyperbolic = _phase_arguments(rates, times)
    envelope = np.exp(-rates.gamma0 * times)
    rate = envelope * (
        rates.gamma0 * np.cosh(hyperbolic)
        - 2 * rates.gamma_kr * np.sinh(hyperbolic)
    )
    return _scalar_or_array(rate)

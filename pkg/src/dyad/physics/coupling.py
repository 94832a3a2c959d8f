"""Coupling coefficients entering every closed form.

All rates are in units of Γ₀. The complex coupling is::

    Ω̃ = Ω_kR - iΓ_kR = κ·μ̂_A·G̃(k₀R)·μ̂_B

with κ = k₀³|μ_A||μ_B|/(4πε₀ħΓ₀). Spatial derivatives act on the position of
atom A, i.e. they are minus the derivatives along R_vec = R_B - R_A.
"""

import logging
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyad.physics import greens
from dyad.physics.quantities import DyadConfig, DyadParameters, decay_rate

__all__ = [
    "CouplingRates",
    "complex_coupling",
    "coupling_rates",
    "gamma0_rate",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CouplingRates:
    """Coefficients of the closed forms, in internal units.

    Attributes:
        omega_kr: Ω_kR / Γ₀
        gamma_kr: Γ_kR / Γ₀
        domega_domega: ∂_ω Ω_kR at ω₀ (dimensionless)
        dgamma_domega: ∂_ω Γ_kR at ω₀ (dimensionless)
        grad_omega: ∇_A Ω_kR in units of Γ₀k₀
        grad_gamma: ∇_A Γ_kR in units of Γ₀k₀
        lambda_ab: Λ_AB·k₀/(ε₀c) in units of ħk₀
        sigma_ab: Σ_AB·k₀/(ε₀c) in units of ħk₀
        gamma0: Single-atom rate, 1 in internal units
        omega0: Carrier frequency ω₀/Γ₀; 0 leaves the lab frame unrotated
    """

    omega_kr: float
    gamma_kr: float
    domega_domega: float
    dgamma_domega: float
    grad_omega: NDArray[np.float64]
    grad_gamma: NDArray[np.float64]
    lambda_ab: NDArray[np.float64]
    sigma_ab: NDArray[np.float64]
    gamma0: float = 1.0
    omega0: float = 0.0

    @property
    def complex_coupling(self) -> complex:
        return complex(self.omega_kr, -self.gamma_kr)

    @property
    def ratio(self) -> float:
        """𝓡 = 2Ω_kR/Γ₀."""
        return 2 * self.omega_kr / self.gamma0

    def without_retardation(self) -> "CouplingRates":
        """Copy with the ∂_ω corrections switched off."""
        return replace(self, domega_domega=0.0, dgamma_domega=0.0)


def gamma0_rate(cfg: DyadConfig) -> float:
    """Single-atom decay rate k₀³|μ|²/(3πε₀ħ) in 1/s."""
    return decay_rate(cfg.omega0, cfg.dipole_norm, cfg.constants)


def complex_coupling(
    params: DyadParameters,
    separation: ArrayLike | None = None,
    frequency_ratio: float = 1.0,
) -> complex:
    """Ω̃/Γ₀ at a displaced separation or a detuned frequency.

    The dipoles, Γ₀ and the physical separation are held fixed while the
    frequency moves to ω = ν·ω₀, so Ω̃(ν) = κ·ν³·μ̂_A·G̃(ν·x)·μ̂_B.

    Args:
        params: Internal description of the pair
        separation: Dimensionless separation vector k₀R_vec; defaults to the
            configured one
        frequency_ratio: ν = ω/ω₀
    """
    vector = (
        params.separation_vector
        if separation is None
        else np.asarray(separation, dtype=np.float64)
    )
    distance = float(np.linalg.norm(vector))
    x = frequency_ratio * distance
    g = greens.green(x, vector / distance).G
    return complex(
        params.coupling_strength
        * frequency_ratio**3
        * (params.mu_a @ g @ params.mu_b)
    )


def coupling_rates(params: DyadParameters) -> CouplingRates:
    """Evaluate every coefficient at the configured separation.

    The ω-derivative applies (1/c)∂_k to k³·G̃(kR)/(4π), which in internal
    units is κε·μ̂_A·(3G̃ + x·dG̃/dx)·μ̂_B.

    Raises:
        DomainError: Propagated from :mod:`dyad.physics.greens` when x <= 0.
    """
    kappa = params.coupling_strength
    epsilon = params.retardation
    mu_a, mu_b = params.mu_a, params.mu_b
    x, rhat = params.x, params.rhat

    field = greens.evaluate(x, rhat)
    assert field.gradG is not None and field.curlG is not None
    radial = greens.green_radial_derivative(x, rhat)

    coupling = kappa * (mu_a @ field.G @ mu_b)
    frequency_derivative = (
        kappa * epsilon * (mu_a @ (3 * field.G + x * radial) @ mu_b)
    )
    # R_vec points A -> B, so ∇_A = -∇_R
    gradient = -kappa * np.einsum("lmj,m,j->l", field.gradG, mu_a, mu_b)
    curl_b = -field.curlG @ mu_b
    longitudinal = kappa * epsilon

    rates = CouplingRates(
        omega_kr=float(coupling.real),
        gamma_kr=float(-coupling.imag),
        domega_domega=float(frequency_derivative.real),
        dgamma_domega=float(-frequency_derivative.imag),
        grad_omega=gradient.real.copy(),
        grad_gamma=-gradient.imag,
        lambda_ab=-longitudinal * np.cross(mu_a, curl_b.imag),
        sigma_ab=longitudinal * np.cross(mu_a, curl_b.real),
        gamma0=1.0,
        omega0=1.0 / epsilon,
    )
    logger.debug(
        "coupling at x=%.6g: Omega=%.6e Gamma=%.6e", x, rates.omega_kr,
        rates.gamma_kr,
    )
    return rates

"""Internal forces on the pair and the centre-of-mass displacement.

Forces are in units of ħk₀Γ₀ and act along the gradients stored in
:class:`~dyad.physics.coupling.CouplingRates`, which differentiate with
respect to the position of atom A. Each closed form accepts scalar or array
times; vectors come back with shape (3,) or (len(T), 3).
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyad.errors import DomainError, QuadratureError
from dyad.physics import greens
from dyad.physics.coupling import CouplingRates, coupling_rates
from dyad.physics.quantities import (
    CONSTANTS,
    LI7_MASS_U,
    DyadConfig,
    DyadParameters,
    rydberg_pair,
    to_internal,
)

__all__ = [
    "DisplacementCurve",
    "ForceSample",
    "OffResonantIntegral",
    "OffResonantQuadrature",
    "ScalingAudit",
    "ScalingRow",
    "cm_displacement",
    "conservative_forces",
    "displacement_curve",
    "force_sample",
    "longitudinal_momenta",
    "net_nonconservative_force",
    "nonconservative_forces",
    "offresonant_bracket",
    "offresonant_force",
    "offresonant_integral",
    "offresonant_integral_fixed",
    "rydberg_scaling_audit",
]

logger = logging.getLogger(__name__)

Vector = NDArray[np.float64]


@dataclass(frozen=True)
class ForceSample:
    """Every force component at time T, in units of ħk₀Γ₀."""

    T: float
    f_a_cons: Vector
    f_b_cons: Vector
    f_net_cons: Vector
    f_a_noncons: Vector
    f_b_noncons: Vector
    f_net_noncons: Vector
    f_offres_a: Vector

    @property
    def f_offres_b(self) -> Vector:
        return -self.f_offres_a


@dataclass(frozen=True)
class DisplacementCurve:
    """Signed S_CM along R̂ (positive towards B) over a separation grid.

    Attributes:
        k0r: Dimensionless separations
        s_cm: Displacement in metres at each separation
        T_final: Evaluation time, s
        mass: Single-atom mass, kg
    """

    k0r: NDArray[np.float64]
    s_cm: NDArray[np.float64]
    T_final: float
    mass: float

    @property
    def peak(self) -> tuple[float, float]:
        """(k₀R, |S_CM|) at the largest displacement magnitude."""
        index = int(np.argmax(np.abs(self.s_cm)))
        return float(self.k0r[index]), float(abs(self.s_cm[index]))

    def local_peaks(self) -> list[tuple[float, float]]:
        """(k₀R, |S_CM|) at every interior local maximum of |S_CM|."""
        size = np.abs(self.s_cm)
        inner = (size[1:-1] > size[:-2]) & (size[1:-1] >= size[2:])
        return [
            (float(self.k0r[i + 1]), float(size[i + 1]))
            for i in np.flatnonzero(inner)
        ]



@dataclass(frozen=True)
class OffResonantQuadrature:
    """Composite Gauss-Legendre rule on u ∈ [0, π/2] with q = k₀·tan(u).

    The panel count doubles from ``initial_panels`` until two successive
    results agree to ``rtol``.
    """

    rtol: float = 1e-10
    nodes_per_panel: int = 16
    initial_panels: int = 4
    max_panels: int = 4096

    def __post_init__(self) -> None:
        if not self.rtol > 0:
            raise DomainError(f"quadrature tolerance must be positive, got {self.rtol}")
        if self.nodes_per_panel < 2 or self.initial_panels < 1:
            raise DomainError("quadrature needs >= 2 nodes and >= 1 panel")


@dataclass(frozen=True)
class OffResonantIntegral:
    """T-independent part of the off-resonant force on A (units ħk₀Γ₀)."""

    value: Vector
    panels: int
    achieved: float


@dataclass(frozen=True)
class ScalingRow:
    n: int
    force_scale: float
    displacement_scale: float


@dataclass(frozen=True)
class ScalingAudit:
    """Peak |F_net| (N) and peak |S_CM| (m) per n with log-log slopes."""

    k0r: float
    rows: list[ScalingRow] = field(default_factory=list)
    force_exponent: float = math.nan
    displacement_exponent: float = math.nan


def _times(T: ArrayLike) -> NDArray[np.float64]:
    times = np.asarray(T, dtype=np.float64)
    if np.any(times < 0):
        raise DomainError("times must be nonnegative")
    return times


def _phases(
    rates: CouplingRates, T: ArrayLike
) -> tuple[NDArray, NDArray, NDArray]:
    """Envelope e^{-Γ₀T}, 2u = 2(ΩT + ∂_ωΓ) and w = 2(ΓT - ∂_ωΩ)."""
    times = _times(T)
    envelope = np.exp(-rates.gamma0 * times)
    oscillatory = 2 * (rates.omega_kr * times + rates.dgamma_domega)
    hyperbolic = 2 * (rates.gamma_kr * times - rates.domega_domega)
    return envelope, oscillatory, hyperbolic


def _along(coefficient: NDArray, vector: Vector) -> Vector:
    return np.asarray(coefficient)[..., None] * vector


def conservative_forces(
    rates: CouplingRates, T: ArrayLike
) -> tuple[Vector, Vector, Vector]:
    """Resonant conservative forces on A and B and their sum.

    f_A = e^{-T}[sin(2u)·∇Γ + sinh(w)·∇Ω], f_B flips the sinh term, so the
    net force 2e^{-T}sin(2u)·∇Γ is carried only by the collective decay.
    """
    envelope, oscillatory, hyperbolic = _phases(rates, T)
    nonreciprocal = _along(envelope * np.sin(oscillatory), rates.grad_gamma)
    reciprocal = _along(envelope * np.sinh(hyperbolic), rates.grad_omega)
    f_a = nonreciprocal + reciprocal
    f_b = nonreciprocal - reciprocal
    return f_a, f_b, f_a + f_b


def nonconservative_forces(
    rates: CouplingRates, T: ArrayLike
) -> tuple[Vector, Vector, Vector]:
    """Röntgen forces from the time variation of the longitudinal momenta.

    Λ and Σ are stored pre-multiplied by k₀/(ε₀c); in SI the leading terms
    read 2k₀e^{-Γ₀T}/(ε₀c)·Λ_AB·Ω_kR.
    """
    envelope, oscillatory, hyperbolic = _phases(rates, T)
    cos, sin = np.cos(oscillatory), np.sin(oscillatory)
    cosh, sinh = np.cosh(hyperbolic), np.sinh(hyperbolic)
    lam, sig = rates.lambda_ab, rates.sigma_ab
    omega, gamma = rates.omega_kr, rates.gamma_kr
    f_a = 2 * (
        _along(envelope * cos * omega, lam) - _along(envelope * cosh * gamma, sig)
    ) - rates.gamma0 * (_along(envelope * sin, lam) - _along(envelope * sinh, sig))
    f_b = -2 * (
        _along(envelope * cos * omega, lam) + _along(envelope * cosh * gamma, sig)
    ) + rates.gamma0 * (_along(envelope * sin, lam) + _along(envelope * sinh, sig))
    return f_a, f_b, f_a + f_b


def net_nonconservative_force(rates: CouplingRates, T: ArrayLike) -> Vector:
    """-4e^{-Γ₀T}[Γ_kR·cosh(w) - (Γ₀/2)·sinh(w)]·Σ_AB."""
    envelope, _, hyperbolic = _phases(rates, T)
    weight = -4 * envelope * (
        rates.gamma_kr * np.cosh(hyperbolic)
        - 0.5 * rates.gamma0 * np.sinh(hyperbolic)
    )
    return _along(weight, rates.sigma_ab)


def longitudinal_momenta(
    rates: CouplingRates, T: ArrayLike
) -> tuple[Vector, Vector]:
    """Longitudinal momenta p_A, p_B whose rates give the Röntgen forces.

    The nonconservative force on each atom is -dp/dT.
    """
    envelope, oscillatory, hyperbolic = _phases(rates, T)
    sin, sinh = np.sin(oscillatory), np.sinh(hyperbolic)
    p_a = _along(envelope * sinh, rates.sigma_ab) - _along(
        envelope * sin, rates.lambda_ab
    )
    p_b = _along(envelope * sin, rates.lambda_ab) + _along(
        envelope * sinh, rates.sigma_ab
    )
    return p_a, p_b


@lru_cache(maxsize=16)
def _legendre_rule(nodes: int) -> tuple[NDArray, NDArray]:
    return np.polynomial.legendre.leggauss(nodes)


def offresonant_integral_fixed(
    params: DyadParameters, panels: int, nodes_per_panel: int = 16
) -> Vector:
    """Off-resonant integral on a fixed composite rule.

    Evaluates (4κ²ε/π)∫ ds s⁴/(1+s²)² g(s)·∇_A g(s) with s = tan(u), where
    g(s) = μ̂_A·(4π/k₀)G(isk₀R)·μ̂_B.
    """
    abscissae, weights = _legendre_rule(nodes_per_panel)
    edges = np.linspace(0.0, np.pi / 2, panels + 1)
    half = 0.5 * np.diff(edges)
    centre = 0.5 * (edges[1:] + edges[:-1])
    u = (centre[:, None] + half[:, None] * abscissae).ravel()
    w = (half[:, None] * weights).ravel()

    s = np.tan(u)
    value, gradient = greens.imag_freq_contraction(
        s, params.x, params.rhat, params.mu_a, params.mu_b
    )
    # ds·s⁴/(1+s²)² = du·sin⁴u/cos²u
    jacobian = np.sin(u) ** 4 / np.cos(u) ** 2
    # ∇_A = -∇ along k₀R_vec
    integrand = -(w * jacobian * value)[:, None] * gradient
    kappa = params.coupling_strength
    prefactor = 4 * kappa**2 * params.retardation / np.pi
    return prefactor * integrand.sum(axis=0)


def offresonant_integral(
    params: DyadParameters, quad: OffResonantQuadrature | None = None
) -> OffResonantIntegral:
    """Adaptive evaluation of the T-independent off-resonant integral.

    Raises:
        QuadratureError: If doubling the panel count up to ``max_panels``
            never brings the relative change below ``quad.rtol``.
    """
    quad = quad or OffResonantQuadrature()
    panels = quad.initial_panels
    previous = offresonant_integral_fixed(params, panels, quad.nodes_per_panel)
    change = math.inf
    while panels < quad.max_panels:
        panels *= 2
        current = offresonant_integral_fixed(
            params, panels, quad.nodes_per_panel
        )
        scale = float(np.linalg.norm(current))
        difference = float(np.linalg.norm(current - previous))
        change = difference / scale if scale > 0 else difference
        logger.debug(
            "off-resonant quadrature x=%.6g panels=%d change=%.3e",
            params.x,
            panels,
            change,
        )
        if not np.all(np.isfinite(current)):
            break
        if difference <= quad.rtol * scale or difference == 0.0:
            return OffResonantIntegral(
                value=current, panels=panels, achieved=change
            )
        previous = current
    raise QuadratureError(
        f"off-resonant quadrature did not converge at k0R={params.x:.6g} "
        f"after {panels} panels (relative change {change:.3e}, "
        f"tolerance {quad.rtol:.1e})",
        achieved=change,
        tolerance=quad.rtol,
        context={"k0R": params.x, "panels": panels},
    )


def offresonant_bracket(
    rates: CouplingRates, T: ArrayLike
) -> float | NDArray[np.float64]:
    """cosh(2∂_ωΩ) - 2e^{-Γ₀T}cosh(w); changes sign near Γ₀T = ln 2."""
    envelope, _, hyperbolic = _phases(rates, T)
    bracket = np.cosh(2 * rates.domega_domega) - 2 * envelope * np.cosh(
        hyperbolic
    )
    return bracket.item() if bracket.ndim == 0 else bracket


def offresonant_force(
    params: DyadParameters,
    rates: CouplingRates,
    T: ArrayLike,
    quad: OffResonantQuadrature | None = None,
    integral: OffResonantIntegral | None = None,
) -> Vector:
    """Off-resonant (van der Waals) force on atom A; B feels the opposite.

    Args:
        params: Internal description of the pair
        rates: Coupling coefficients at the same separation
        T: Time Γ₀T, scalar or array
        quad: Quadrature settings used when ``integral`` is not supplied
        integral: Precomputed T-independent integral for the same pair
    """
    if integral is None:
        integral = offresonant_integral(params, quad)
    return _along(np.asarray(offresonant_bracket(rates, T)), integral.value)


def force_sample(
    params: DyadParameters,
    rates: CouplingRates,
    T: float,
    integral: OffResonantIntegral | None = None,
) -> ForceSample:
    f_a, f_b, f_net = conservative_forces(rates, T)
    n_a, n_b, n_net = nonconservative_forces(rates, T)
    return ForceSample(
        T=float(T),
        f_a_cons=f_a,
        f_b_cons=f_b,
        f_net_cons=f_net,
        f_a_noncons=n_a,
        f_b_noncons=n_b,
        f_net_noncons=n_net,
        f_offres_a=offresonant_force(params, rates, T, integral=integral),
    )


def cm_displacement(
    params: DyadParameters, rates: CouplingRates, T: ArrayLike
) -> float | NDArray[np.float64]:
    """Centre-of-mass displacement along R̂ in units of 1/k₀.

    Closed-form double time integral of the net conservative force over the
    pair mass 2M, starting at rest. Positive values point from A to B. The
    ∂_ω corrections are not part of this closed form.
    """
    times = _times(T)
    omega = rates.omega_kr
    ratio = rates.ratio
    gamma0 = rates.gamma0
    envelope = np.exp(-gamma0 * times)
    phase = 2 * omega * times
    bracket = (
        (1 + ratio**2) * phase
        - 2 * ratio * (1 - envelope * np.cos(phase))
        + (1 - ratio**2) * envelope * np.sin(phase)
    )
    projection = float(rates.grad_gamma @ params.rhat)
    displacement = (
        params.recoil * projection * bracket / ((1 + ratio**2) ** 2 * gamma0**2)
    )
    return displacement.item() if displacement.ndim == 0 else displacement


def displacement_curve(
    cfg: DyadConfig, k0r_values: ArrayLike, gamma0_t: float = 1.0
) -> DisplacementCurve:
    """S_CM in metres at time ``gamma0_t``/Γ₀ for each separation."""
    units, params = to_internal(cfg)
    grid = np.asarray(k0r_values, dtype=np.float64)
    displacement = np.empty_like(grid)
    for index, x in enumerate(grid):
        local = params.with_separation(x)
        internal = cm_displacement(local, coupling_rates(local), gamma0_t)
        displacement[index] = units.to_si(internal, "displacement")
    return DisplacementCurve(
        k0r=grid,
        s_cm=displacement,
        T_final=float(units.to_si(gamma0_t, "time")),
        mass=cfg.mass,
    )


def rydberg_scaling_audit(
    n_list: list[int],
    k0r: float = 0.77,
    times: ArrayLike | None = None,
    isotope_mass: float | None = None,
) -> ScalingAudit:
    """Fit how the peak net force and displacement scale with n.

    Every pair takes its wavelength from ħω₀ = 2E₀/n³ and sits at the same
    k₀R; peaks are taken over the Γ₀T grid ``times``.
    """
    if len(n_list) < 2:
        raise DomainError("scaling audit needs at least two values of n")
    grid = np.linspace(0.0, 5.0, 201) if times is None else _times(times)
    mass = LI7_MASS_U * CONSTANTS.amu if isotope_mass is None else isotope_mass

    rows = []
    for n in n_list:
        units, params = to_internal(rydberg_pair(n, mass, k0r=k0r))
        rates = coupling_rates(params)
        _, _, f_net = conservative_forces(rates, grid)
        peak_force = float(np.max(np.linalg.norm(f_net, axis=-1)))
        peak_shift = float(np.max(np.abs(cm_displacement(params, rates, grid))))
        rows.append(
            ScalingRow(
                n=int(n),
                force_scale=float(units.to_si(peak_force, "force")),
                displacement_scale=float(
                    units.to_si(peak_shift, "displacement")
                ),
            )
        )

    log_n = np.log([row.n for row in rows])
    force_slope = np.polyfit(log_n, np.log([r.force_scale for r in rows]), 1)[0]
    shift_slope = np.polyfit(
        log_n, np.log([r.displacement_scale for r in rows]), 1
    )[0]
    return ScalingAudit(
        k0r=k0r,
        rows=rows,
        force_exponent=float(force_slope),
        displacement_exponent=float(shift_slope),
    )

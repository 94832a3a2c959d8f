"""Independent checks for the closed forms.

Nothing in :mod:`dyad.physics` imports this module. The ODE integrator
certifies the resummed resonant dynamics only; the ∂_ω retardation terms lie
outside its two-level reduction.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import solve_ivp

from dyad.errors import DomainError, OracleError
from dyad.physics.emission import AngularGrid
from dyad.physics.greens import LEVI_CIVITA, projectors

__all__ = [
    "Derivative",
    "OdeResult",
    "SmallArgumentSeries",
    "effective_2level_closed_form",
    "finite_difference",
    "integrate_effective_2level",
    "plane_wave_curl_sum",
    "plane_wave_mode_sum",
    "series_small_x",
]

logger = logging.getLogger(__name__)

# scipy floors rtol at 100 machine epsilons
_SMALLEST_RTOL = 2.3e-14


@dataclass(frozen=True)
class OdeResult:
    """Trajectory of (c_A, c_B) in the rotating frame.

    Attributes:
        times: Sample times
        amplitudes: Complex array of shape (len(times), 2)
        steps: Accepted integrator steps
        nfev: Right-hand-side evaluations
        max_error_estimate: Largest deviation from a run at tol/10
    """

    times: NDArray[np.float64]
    amplitudes: NDArray[np.complex128]
    steps: int
    nfev: int
    max_error_estimate: float

    @property
    def norm(self) -> NDArray[np.float64]:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)


def _solve(
    omega_tilde: complex,
    gamma0: float,
    t_max: float,
    tol: float,
    times: NDArray[np.float64],
):
    def rhs(_t: float, c: NDArray[np.complex128]) -> NDArray[np.complex128]:
        # i dc_A/dt = -(iΓ₀/2)c_A + Ω̃c_B and the same with A <-> B
        return np.array(
            [
                -0.5 * gamma0 * c[0] - 1j * omega_tilde * c[1],
                -0.5 * gamma0 * c[1] - 1j * omega_tilde * c[0],
            ]
        )

    solution = solve_ivp(
        rhs,
        (0.0, t_max),
        np.array([1.0 + 0.0j, 0.0j]),
        method="DOP853",
        rtol=tol,
        atol=tol * 1e-2,
        dense_output=True,
    )
    if solution.status != 0:
        raise OracleError(
            f"two-level integration failed at t={solution.t[-1]:.6g} "
            f"(omega_tilde={omega_tilde}, tol={tol:.1e}): {solution.message}"
        )
    return solution, solution.sol(times).T


def integrate_effective_2level(
    omega_tilde: complex,
    gamma0: float,
    t_max: float,
    tol: float,
    times: ArrayLike | None = None,
) -> OdeResult:
    """Integrate the non-Hermitian two-level model from (c_A, c_B) = (1, 0).

    Args:
        omega_tilde: Complex coupling Ω - iΓ
        gamma0: Single-atom decay rate, same units as ``omega_tilde``
        t_max: Final time
        tol: Relative tolerance of the embedded Runge-Kutta stepper
        times: Output times in [0, t_max]; 201 evenly spaced by default

    Raises:
        DomainError: If tol is outside (1e-13, 1e-6) or t_max <= 0.
        OracleError: If the stepper fails, e.g. on step-size underflow.
    """
    if not 1e-13 < tol < 1e-6:
        raise DomainError(f"tolerance must lie in (1e-13, 1e-6), got {tol}")
    if t_max <= 0:
        raise DomainError(f"t_max must be positive, got {t_max}")
    grid = (
        np.linspace(0.0, t_max, 201)
        if times is None
        else np.asarray(times, dtype=np.float64)
    )
    solution, trajectory = _solve(omega_tilde, gamma0, t_max, tol, grid)
    _, reference = _solve(
        omega_tilde, gamma0, t_max, max(tol / 10, _SMALLEST_RTOL), grid
    )
    estimate = float(np.max(np.abs(trajectory - reference)))
    logger.debug(
        "two-level oracle: %d steps, %d evaluations, error estimate %.2e",
        len(solution.t) - 1,
        solution.nfev,
        estimate,
    )
    return OdeResult(
        times=grid,
        amplitudes=trajectory,
        steps=len(solution.t) - 1,
        nfev=int(solution.nfev),
        max_error_estimate=estimate,
    )


def effective_2level_closed_form(
    omega_tilde: complex, gamma0: float, times: ArrayLike
) -> NDArray[np.complex128]:
    """(cos(Ω̃t), -i·sin(Ω̃t))·e^{-Γ₀t/2} with shape (len(times), 2)."""
    t = np.asarray(times, dtype=np.float64)
    decay = np.exp(-0.5 * gamma0 * t)
    return np.stack(
        [decay * np.cos(omega_tilde * t), -1j * decay * np.sin(omega_tilde * t)],
        axis=-1,
    )


@dataclass(frozen=True)
class Derivative:
    """Extrapolated derivative with an error estimate of the same shape."""

    value: NDArray | float | complex
    error: NDArray | float


def _difference(
    func: Callable[[NDArray], ArrayLike],
    point: NDArray,
    direction: NDArray,
    h: float,
    derivative: int,
) -> NDArray:
    def sample(at: NDArray) -> NDArray:
        value = np.asarray(func(at))
        if not np.all(np.isfinite(value)):
            raise OracleError(f"non-finite function value at {at!r}")
        return value

    forward = sample(point + h * direction)
    backward = sample(point - h * direction)
    if derivative == 1:
        return (forward - backward) / (2 * h)
    return (forward - 2 * sample(point) + backward) / h**2


def finite_difference(
    func: Callable[[NDArray], ArrayLike],
    point: ArrayLike,
    step: float,
    *,
    derivative: int = 1,
    levels: int = 3,
) -> Derivative:
    """Central difference with Richardson extrapolation.

    The step is halved ``levels - 1`` times and the h² error series is
    eliminated term by term. For a vector ``point`` the partial derivatives
    are stacked along axis 0.

    Args:
        func: Scalar, vector or complex valued function
        point: Scalar or 1-D evaluation point
        step: Initial step h > 0
        derivative: 1 for the first derivative, 2 for the second
        levels: Number of step sizes in the Richardson table

    Raises:
        DomainError: If step <= 0, levels < 2 or derivative is not 1 or 2.
        OracleError: If ``func`` returns a non-finite value.

    Examples:
        >>> finite_difference(np.sin, 0.0, 0.1).value
    """
    if not step > 0:
        raise DomainError(f"finite-difference step must be positive, got {step}")
    if levels < 2 or derivative not in (1, 2):
        raise DomainError("need levels >= 2 and derivative in (1, 2)")

    origin = np.asarray(point, dtype=np.float64)
    scalar = origin.ndim == 0
    flat = origin.reshape(-1)
    values, errors = [], []
    for axis in range(flat.size):
        direction = np.zeros_like(flat)
        direction[axis] = 1.0

        def along(at: NDArray) -> ArrayLike:
            return func(at.reshape(origin.shape))

        table = [
            _difference(along, flat, direction, step / 2**k, derivative)
            for k in range(levels)
        ]
        previous = table[0]
        for order in range(1, levels):
            factor = 4.0**order
            # finest estimate of the previous column is the error reference
            previous = table[-1]
            table = [
                table[k] + (table[k] - table[k - 1]) / (factor - 1)
                for k in range(1, len(table))
            ]
        values.append(table[-1])
        errors.append(np.abs(table[-1] - previous))

    if scalar:
        return Derivative(value=values[0], error=errors[0])
    return Derivative(value=np.stack(values), error=np.stack(errors))


@dataclass(frozen=True)
class SmallArgumentSeries:
    """Expansion of G̃ = A·I + B·R̂R̂ about x = 0 on the basis (α, β).

    Im G̃ = Σ_j x^{imag_powers[j]}·(imag_alpha[j]·α + imag_beta[j]·β) and the
    real part follows the same pattern with odd powers starting at x^{-3}.
    """

    imag_powers: NDArray[np.int64]
    imag_alpha: NDArray[np.float64]
    imag_beta: NDArray[np.float64]
    real_powers: NDArray[np.int64]
    real_alpha: NDArray[np.float64]
    real_beta: NDArray[np.float64]

    def imag(self, x: float, rhat: ArrayLike) -> NDArray[np.float64]:
        pair = projectors(rhat)
        weights = float(x) ** self.imag_powers
        return float(weights @ self.imag_alpha) * pair.alpha + float(
            weights @ self.imag_beta
        ) * pair.beta

    def real(self, x: float, rhat: ArrayLike) -> NDArray[np.float64]:
        pair = projectors(rhat)
        weights = float(x) ** self.real_powers.astype(np.float64)
        return float(weights @ self.real_alpha) * pair.alpha + float(
            weights @ self.real_beta
        ) * pair.beta


def series_small_x(term_count: int) -> SmallArgumentSeries:
    """Coefficients of -e^{ix}(α/x + iβ/x² - β/x³) about x = 0.

    The imaginary part is regular, -(2/3)I + x²(α/6 - β/30) + ...; the real
    part starts with +β/x³, the static term of the bracket under the overall
    minus sign.

    Raises:
        DomainError: If term_count < 3.
    """
    if term_count < 3:
        raise DomainError(f"need at least three terms, got {term_count}")
    fact = math.factorial
    j = range(term_count)
    imag_alpha = [-((-1) ** k) / fact(2 * k + 1) for k in j]
    imag_beta = [
        (-1) ** k * (1 / fact(2 * k + 2) - 1 / fact(2 * k + 3)) for k in j
    ]
    real_alpha = [0.0] + [
        -((-1) ** (m - 1)) / fact(2 * m - 2) for m in range(1, term_count)
    ]
    real_beta = [1.0] + [
        (-1) ** (m - 1) * (1 / fact(2 * m - 1) - 1 / fact(2 * m))
        for m in range(1, term_count)
    ]
    return SmallArgumentSeries(
        imag_powers=np.array([2 * k for k in j]),
        imag_alpha=np.array(imag_alpha),
        imag_beta=np.array(imag_beta),
        real_powers=np.array([2 * m - 3 for m in j]),
        real_alpha=np.array(real_alpha),
        real_beta=np.array(real_beta),
    )


def plane_wave_mode_sum(
    x: float, rhat: ArrayLike, grid: AngularGrid
) -> NDArray[np.float64]:
    """-(1/4π)∫dΘ (I - k̂k̂)·cos(x·k̂·R̂), which equals Im G̃(x)."""
    unit = np.asarray(rhat, dtype=np.float64)
    k = grid.nodes
    transverse = np.eye(3) - np.einsum("ni,nj->nij", k, k)
    weight = np.cos(x * (k @ unit))
    return -np.asarray(
        grid.integrate(weight[:, None, None] * transverse)
    ) / (4 * np.pi)


def plane_wave_curl_sum(
    x: float, rhat: ArrayLike, grid: AngularGrid
) -> NDArray[np.float64]:
    """(1/4π)∫dΘ sin(x·k̂·R̂)·ε_ilj k̂_l, which equals ∇×Im G̃(x)."""
    unit = np.asarray(rhat, dtype=np.float64)
    k = grid.nodes
    skew = np.einsum("ilj,nl->nij", LEVI_CIVITA, k)
    weight = np.sin(x * (k @ unit))
    return np.asarray(grid.integrate(weight[:, None, None] * skew)) / (
        4 * np.pi
    )

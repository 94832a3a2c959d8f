"""Free-space dyadic Green tensor in the dimensionless convention G̃ = (4π/k)G.

With x = k|R| and R̂ = R/|R|::

    G̃(x) = -e^{ix} [α/x + iβ/x² - β/x³] = A(x)·I + B(x)·R̂R̂

where α = I - R̂R̂ and β = I - 3R̂R̂. The SI tensor is G = (k/4π)·G̃; with this
sign the coupling of two dipoles is Ω̃ = (k²/ε₀ħ)·μ_A·G·μ_B and
Im G(0⁺) = -(k/6π)·I. Gradients are taken with respect to the dimensionless
coordinates k·R_vec.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyad.errors import DomainError

__all__ = [
    "LEVI_CIVITA",
    "GreenEval",
    "ProjectorPair",
    "evaluate",
    "green",
    "green_continued",
    "green_curl",
    "green_gradient",
    "green_imag_freq",
    "green_radial_derivative",
    "imag_freq_contraction",
    "projectors",
]

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0

_IDENTITY = np.eye(3)


@dataclass(frozen=True)
class ProjectorPair:
    """Transverse and static projectors α = I - R̂R̂ and β = I - 3R̂R̂."""

    alpha: NDArray[np.float64]
    beta: NDArray[np.float64]


@dataclass(frozen=True)
class GreenEval:
    """Green tensor at one separation, optionally with gradient and curl.

    Attributes:
        x: Dimensionless distance k|R|
        rhat: Unit separation vector
        G: Complex 3x3 tensor G̃
        gradG: gradG[l, m, j] = ∂G̃_mj/∂(kR_l)
        curlG: curlG[i, j] = ε_ilm ∂_l G̃_mj
    """

    x: float
    rhat: NDArray[np.float64]
    G: NDArray[np.complex128]
    gradG: NDArray[np.complex128] | None = None
    curlG: NDArray[np.complex128] | None = None


def _unit(rhat: ArrayLike) -> NDArray[np.float64]:
    vector = np.asarray(rhat, dtype=np.float64)
    if vector.shape != (3,) or abs(np.linalg.norm(vector) - 1.0) > 1e-12:
        raise DomainError(f"rhat must be a unit 3-vector, got {vector!r}")
    return vector


def _positive(x: float, name: str = "x") -> float:
    if not np.isfinite(x) or x <= 0:
        raise DomainError(
            f"{name} must be positive and finite, got {x}; small-argument "
            "limits live in dyad.verification.oracle"
        )
    return float(x)


def _retarded_coefficients(
    x: complex,
) -> tuple[complex, complex, complex, complex]:
    """A, dA/dx, B, dB/dx of G̃ = A·I + B·R̂R̂ at (possibly complex) x."""
    phase = np.exp(1j * x)
    inv = 1.0 / x
    a = -phase * (inv + 1j * inv**2 - inv**3)
    da = -phase * (1j * inv - 2 * inv**2 - 3j * inv**3 + 3 * inv**4)
    b = phase * (inv + 3j * inv**2 - 3 * inv**3)
    db = phase * (1j * inv - 4 * inv**2 - 9j * inv**3 + 9 * inv**4)
    return a, da, b, db


def _evanescent_coefficients(y: NDArray | float) -> tuple[NDArray, ...]:
    """A, dA/dy, B, dB/dy of the imaginary-frequency tensor i·G̃(iy)."""
    decay = np.exp(-y)
    inv = 1.0 / y
    a = -decay * (inv + inv**2 + inv**3)
    da = decay * (inv + 2 * inv**2 + 3 * inv**3 + 3 * inv**4)
    b = decay * (inv + 3 * inv**2 + 3 * inv**3)
    db = -decay * (inv + 4 * inv**2 + 9 * inv**3 + 9 * inv**4)
    return a, da, b, db


def _assemble(a, b, rhat: NDArray) -> NDArray:
    return a * _IDENTITY + b * np.outer(rhat, rhat)


def _assemble_gradient(a_prime, b, b_prime, x, rhat: NDArray) -> NDArray:
    """∂_l of a(x)I + b(x)R̂R̂ with respect to the components of x·R̂."""
    rrr = np.einsum("l,m,j->lmj", rhat, rhat, rhat)
    cross = np.einsum("lm,j->lmj", _IDENTITY, rhat) + np.einsum(
        "lj,m->lmj", _IDENTITY, rhat
    )
    radial = np.einsum("l,mj->lmj", rhat, _IDENTITY)
    return a_prime * radial + (b_prime - 2 * b / x) * rrr + (b / x) * cross


def projectors(rhat: ArrayLike) -> ProjectorPair:
    unit = _unit(rhat)
    rr = np.outer(unit, unit)
    return ProjectorPair(alpha=_IDENTITY - rr, beta=_IDENTITY - 3 * rr)


def green(x: float, rhat: ArrayLike) -> GreenEval:
    """Evaluate G̃ at dimensionless distance ``x`` along ``rhat``.

    Raises:
        DomainError: If x <= 0 or rhat is not a unit vector.
    """
    x = _positive(x)
    unit = _unit(rhat)
    a, _, b, _ = _retarded_coefficients(x)
    return GreenEval(x=x, rhat=unit, G=_assemble(a, b, unit))


def green_gradient(x: float, rhat: ArrayLike) -> NDArray[np.complex128]:
    x = _positive(x)
    unit = _unit(rhat)
    _, da, b, db = _retarded_coefficients(x)
    return _assemble_gradient(da, b, db, x, unit)


def green_curl(x: float, rhat: ArrayLike) -> NDArray[np.complex128]:
    """Curl acting on the first index, (∇×G̃)_ij = ε_ilm ∂_l G̃_mj."""
    return np.einsum("ilm,lmj->ij", LEVI_CIVITA, green_gradient(x, rhat))


def green_radial_derivative(x: float, rhat: ArrayLike) -> NDArray[np.complex128]:
    """dG̃/dx with R̂ held fixed."""
    x = _positive(x)
    unit = _unit(rhat)
    _, da, _, db = _retarded_coefficients(x)
    return _assemble(da, db, unit)


def evaluate(x: float, rhat: ArrayLike) -> GreenEval:
    """Tensor, gradient and curl in one pass."""
    x = _positive(x)
    unit = _unit(rhat)
    a, da, b, db = _retarded_coefficients(x)
    grad = _assemble_gradient(da, b, db, x, unit)
    return GreenEval(
        x=x,
        rhat=unit,
        G=_assemble(a, b, unit),
        gradG=grad,
        curlG=np.einsum("ilm,lmj->ij", LEVI_CIVITA, grad),
    )


def green_continued(z: complex, rhat: ArrayLike) -> NDArray[np.complex128]:
    """G̃ at a complex argument z; the closed form is entire away from 0."""
    if z == 0:
        raise DomainError("complex argument must be nonzero")
    a, _, b, _ = _retarded_coefficients(complex(z))
    return _assemble(a, b, _unit(rhat))


def green_imag_freq(
    q_over_k0: float, x0: float, rhat: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Imaginary-frequency tensor (4π/k₀)·G(iqR) and its gradient.

    With s = q/k₀ and y = s·x0 the tensor is s·i·G̃(iy), which is real. The
    gradient is taken with respect to k₀·R_vec.

    Args:
        q_over_k0: Imaginary wavenumber in units of k₀
        x0: k₀|R|
        rhat: Unit separation vector

    Returns:
        Tuple of the 3x3 tensor and the 3x3x3 gradient.

    Raises:
        DomainError: If q_over_k0 <= 0 or x0 <= 0.
    """
    s = _positive(q_over_k0, "q_over_k0")
    x0 = _positive(x0, "x0")
    unit = _unit(rhat)
    y = s * x0
    a, da, b, db = _evanescent_coefficients(y)
    tensor = s * _assemble(a, b, unit)
    gradient = s**2 * _assemble_gradient(da, b, db, y, unit)
    return tensor, gradient


def imag_freq_contraction(
    q_over_k0: NDArray[np.float64],
    x0: float,
    rhat: NDArray[np.float64],
    mu_a: NDArray[np.float64],
    mu_b: NDArray[np.float64],
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """μ_A·(4π/k₀)G(iqR)·μ_B and its gradient for an array of q/k₀.

    Returns:
        Arrays of shape (N,) and (N, 3).
    """
    s = np.asarray(q_over_k0, dtype=np.float64)
    y = s * x0
    a, da, b, db = _evanescent_coefficients(y)
    aligned = float(mu_a @ mu_b)
    ra = float(rhat @ mu_a)
    rb = float(rhat @ mu_b)
    value = s * (a * aligned + b * ra * rb)
    radial = da * aligned + (db - 2 * b / y) * ra * rb
    gradient = (s**2)[:, None] * (
        radial[:, None] * rhat
        + (b / y)[:, None] * (mu_a * rb + mu_b * ra)
    )
    return value, gradient

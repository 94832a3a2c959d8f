"""Physical constants, the internal unit system and the atom-pair builder.

Every closed form in :mod:`dyad.physics` is evaluated in internal units where
ħ = Γ₀ = k₀ = 1. SI values enter through :class:`DyadConfig` and leave through
:class:`UnitSystem`; nothing in between carries a dimension.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dyad.errors import DomainError

__all__ = [
    "CODATA_2018",
    "CONSTANTS",
    "LI7_MASS_U",
    "Constants",
    "DyadConfig",
    "DyadParameters",
    "QuantityKind",
    "UnitSystem",
    "decay_rate",
    "rydberg_pair",
    "to_internal",
]

logger = logging.getLogger(__name__)

# name -> (value, unit, relative standard uncertainty)
CODATA_2018: dict[str, tuple[float, str, float]] = {
    "reduced Planck constant": (1.054571817e-34, "J s", 0.0),
    "speed of light in vacuum": (299792458.0, "m s^-1", 0.0),
    "vacuum electric permittivity": (8.8541878128e-12, "F m^-1", 1.5e-10),
    "elementary charge": (1.602176634e-19, "C", 0.0),
    "Bohr radius": (5.29177210903e-11, "m", 1.5e-10),
    "Rydberg constant times hc in J": (2.1798723611035e-18, "J", 1.9e-12),
    "atomic mass constant": (1.66053906660e-27, "kg", 3.0e-10),
}

LI7_MASS_U = 7.0160034366

QuantityKind = Literal[
    "time", "length", "frequency", "force", "displacement", "momentum"
]


@dataclass(frozen=True)
class Constants:
    """SI constants used by the pair model.

    Attributes:
        hbar: Reduced Planck constant, J s
        c: Speed of light, m/s
        eps0: Vacuum permittivity, F/m
        e_charge: Elementary charge, C
        a0: Bohr radius, m
        E0: Hydrogen ground-state binding energy (13.605693 eV), J
        amu: Atomic mass constant, kg
    """

    hbar: float
    c: float
    eps0: float
    e_charge: float
    a0: float
    E0: float
    amu: float

    @classmethod
    def codata2018(cls) -> "Constants":
        def value(name: str) -> float:
            return CODATA_2018[name][0]

        return cls(
            hbar=value("reduced Planck constant"),
            c=value("speed of light in vacuum"),
            eps0=value("vacuum electric permittivity"),
            e_charge=value("elementary charge"),
            a0=value("Bohr radius"),
            E0=value("Rydberg constant times hc in J"),
            amu=value("atomic mass constant"),
        )

    def __post_init__(self) -> None:
        for name, number in vars(self).items():
            if not number > 0:
                raise DomainError(f"constant {name} must be positive")


CONSTANTS = Constants.codata2018()


def _as_vector(value: ArrayLike, name: str) -> NDArray[np.float64]:
    array = np.asarray(value)
    if np.iscomplexobj(array):
        raise DomainError(f"{name} must be a real vector, got {array!r}")
    array = array.astype(np.float64)
    if array.shape != (3,) or not np.all(np.isfinite(array)):
        raise DomainError(f"{name} must be a finite 3-vector, got {array!r}")
    return array


def decay_rate(
    omega0: float, dipole_norm: float, constants: Constants = CONSTANTS
) -> float:
    """Free-space spontaneous decay rate k₀³|μ|²/(3πε₀ħ) in 1/s."""
    if omega0 <= 0 or dipole_norm <= 0:
        raise DomainError(
            f"decay rate needs omega0 > 0 and |mu| > 0, got {omega0}, "
            f"{dipole_norm}"
        )
    k0 = omega0 / constants.c
    return k0**3 * dipole_norm**2 / (3 * math.pi * constants.eps0 * constants.hbar)


@dataclass(frozen=True)
class DyadConfig:
    """Physical description of the atom pair, in SI.

    Attributes:
        mu_A: Transition dipole of atom A, C m
        mu_B: Transition dipole of atom B, C m
        omega0: Transition angular frequency, rad/s
        gamma0: Single-atom decay rate, 1/s
        mass: Single-atom mass, kg
        R_vec: Separation vector from A to B, m
    """

    mu_A: NDArray[np.float64]
    mu_B: NDArray[np.float64]
    omega0: float
    gamma0: float
    mass: float
    R_vec: NDArray[np.float64]
    constants: Constants = field(default=CONSTANTS, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu_A", _as_vector(self.mu_A, "mu_A"))
        object.__setattr__(self, "mu_B", _as_vector(self.mu_B, "mu_B"))
        object.__setattr__(self, "R_vec", _as_vector(self.R_vec, "R_vec"))
        norm_a = float(np.linalg.norm(self.mu_A))
        norm_b = float(np.linalg.norm(self.mu_B))
        if norm_a <= 0 or not math.isclose(norm_a, norm_b, rel_tol=1e-12):
            raise DomainError(
                "identical atoms need |mu_A| = |mu_B| > 0, got "
                f"{norm_a:.6e} and {norm_b:.6e}"
            )
        for name in ("omega0", "gamma0", "mass"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if not np.linalg.norm(self.R_vec) > 0:
            raise DomainError("R_vec must be nonzero")

    @property
    def k0(self) -> float:
        return self.omega0 / self.constants.c

    @property
    def wavelength(self) -> float:
        return 2 * math.pi / self.k0

    @property
    def dipole_norm(self) -> float:
        return float(np.linalg.norm(self.mu_A))

    @property
    def separation(self) -> float:
        """Dimensionless distance k₀|R|."""
        return self.k0 * float(np.linalg.norm(self.R_vec))

    @property
    def rhat(self) -> NDArray[np.float64]:
        return self.R_vec / np.linalg.norm(self.R_vec)

    def with_separation(
        self, k0r: float, axis: ArrayLike | None = None
    ) -> "DyadConfig":
        """Move atom B to dimensionless distance ``k0r`` from atom A.

        Args:
            k0r: Target k₀|R|
            axis: Direction from A to B; keeps the current one when omitted
        """
        if k0r <= 0:
            raise DomainError(f"k0R must be positive, got {k0r}")
        direction = self.rhat if axis is None else _as_vector(axis, "axis")
        direction = direction / np.linalg.norm(direction)
        return replace(self, R_vec=(k0r / self.k0) * direction)


@dataclass(frozen=True)
class UnitSystem:
    """Conversion between SI and the internal units anchored at (Γ₀, k₀)."""

    gamma0_SI: float
    k0_SI: float
    hbar: float = CONSTANTS.hbar

    def _scale(self, kind: QuantityKind) -> float:
        """SI value of one internal unit of ``kind``."""
        scales = {
            "time": 1.0 / self.gamma0_SI,
            "length": 1.0 / self.k0_SI,
            "displacement": 1.0 / self.k0_SI,
            "frequency": self.gamma0_SI,
            "force": self.hbar * self.k0_SI * self.gamma0_SI,
            "momentum": self.hbar * self.k0_SI,
        }
        try:
            return scales[kind]
        except KeyError:
            raise DomainError(
                f"unknown quantity kind {kind!r}; expected one of "
                f"{', '.join(scales)}"
            ) from None

    def to_si(self, value: ArrayLike, kind: QuantityKind) -> NDArray | float:
        result = np.asarray(value, dtype=np.float64) * self._scale(kind)
        return float(result) if result.ndim == 0 else result

    def to_internal(self, value: ArrayLike, kind: QuantityKind) -> NDArray | float:
        result = np.asarray(value, dtype=np.float64) / self._scale(kind)
        return float(result) if result.ndim == 0 else result


@dataclass(frozen=True)
class DyadParameters:
    """Dimensionless description of the pair consumed by every closed form.

    Attributes:
        x: k₀|R|
        rhat: Unit vector from A to B
        mu_a: Unit dipole direction of A
        mu_b: Unit dipole direction of B
        coupling_strength: κ = k₀³|μ_A||μ_B|/(4πε₀ħΓ₀); 3/4 when Γ₀ is the
            closed-form rate
        retardation: ε = Γ₀/ω₀
        recoil: η = ħk₀²/(MΓ₀)
    """

    x: float
    rhat: NDArray[np.float64]
    mu_a: NDArray[np.float64]
    mu_b: NDArray[np.float64]
    coupling_strength: float
    retardation: float
    recoil: float

    @property
    def separation_vector(self) -> NDArray[np.float64]:
        return self.x * self.rhat

    def with_separation(self, x: float) -> "DyadParameters":
        if x <= 0:
            raise DomainError(f"k0R must be positive, got {x}")
        return replace(self, x=float(x))


def to_internal(cfg: DyadConfig) -> tuple[UnitSystem, DyadParameters]:
    """Nondimensionalize a pair at its own (Γ₀, k₀).

    Examples:
        >>> units, params = to_internal(rydberg_pair(70, 7.016 * CONSTANTS.amu))
        >>> newtons = units.to_si(1.0, "force")
    """
    constants = cfg.constants
    k0 = cfg.k0
    units = UnitSystem(gamma0_SI=cfg.gamma0, k0_SI=k0, hbar=constants.hbar)
    norm = cfg.dipole_norm
    kappa = (
        k0**3
        * norm
        * float(np.linalg.norm(cfg.mu_B))
        / (4 * math.pi * constants.eps0 * constants.hbar * cfg.gamma0)
    )
    params = DyadParameters(
        x=cfg.separation,
        rhat=cfg.rhat,
        mu_a=cfg.mu_A / norm,
        mu_b=cfg.mu_B / np.linalg.norm(cfg.mu_B),
        coupling_strength=kappa,
        retardation=cfg.gamma0 / cfg.omega0,
        recoil=constants.hbar * k0**2 / (cfg.mass * cfg.gamma0),
    )
    return units, params


def rydberg_pair(
    n: int,
    isotope_mass: float,
    lambda0_override: float | None = None,
    k0r: float = 1.0,
    constants: Constants = CONSTANTS,
) -> DyadConfig:
    """Build a pair of circular Rydberg atoms on adjacent levels.

    Both dipoles have magnitude e·a₀·n² and point along ẑ; atom B sits on the
    x̂ axis. The transition wavelength follows from ħω₀ = 2E₀/n³ unless
    ``lambda0_override`` pins it.

    Args:
        n: Principal quantum number of the upper circular state
        isotope_mass: Single-atom mass, kg
        lambda0_override: Transition wavelength λ₀ = 2π/k₀, m
        k0r: Initial dimensionless separation; use
            :meth:`DyadConfig.with_separation` to move along the axis

    Returns:
        A pair whose γ₀ is the closed-form free-space rate.

    Raises:
        DomainError: If n < 2, the mass is not positive or the override is
            not positive.
    """
    if n < 2:
        raise DomainError(f"principal quantum number must be >= 2, got {n}")
    if isotope_mass <= 0:
        raise DomainError(f"isotope mass must be positive, got {isotope_mass}")
    if lambda0_override is not None and lambda0_override <= 0:
        raise DomainError(
            f"wavelength override must be positive, got {lambda0_override}"
        )

    dipole = constants.e_charge * constants.a0 * n**2
    if lambda0_override is None:
        omega0 = 2 * constants.E0 / (constants.hbar * n**3)
    else:
        omega0 = 2 * math.pi * constants.c / lambda0_override
    gamma0 = decay_rate(omega0, dipole, constants)
    k0 = omega0 / constants.c
    logger.debug(
        "rydberg pair n=%d: lambda0=%.6e m, gamma0=%.6e 1/s",
        n,
        2 * math.pi / k0,
        gamma0,
    )
    return DyadConfig(
        mu_A=np.array([0.0, 0.0, dipole]),
        mu_B=np.array([0.0, 0.0, dipole]),
        omega0=omega0,
        gamma0=gamma0,
        mass=isotope_mass,
        R_vec=np.array([k0r / k0, 0.0, 0.0]),
        constants=constants,
    )

"""Physical constants, unit conversions and field-derived scales.

Formulas throughout the package are written in natural units (hbar = c = 1).
Lengths are carried in nanometres, and a time ``t`` is carried internally as
the light-travel length ``c*t`` in nanometres, so that e.g. the diffraction
time is simply ``sigma_w**2 / LAMBDA_C``.  Public functions take and return
times in nanoseconds and energies in keV; conversion happens at the edge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidInputError

#: reduced Compton wavelength of the electron, nm
LAMBDA_C_NM = 3.8615926796e-4
#: electron rest energy, keV
ELECTRON_REST_KEV = 510.99895
#: speed of light, nm/ns (exact)
C_NM_PER_NS = 2.99792458e8
#: hbar*c, keV*nm; converts natural-unit energies (1/nm) to keV
HBAR_C_KEV_NM = ELECTRON_REST_KEV * LAMBDA_C_NM

# hbar/e in V*s from the fixed constants: (hbar*c in eV*m) / (c in m/s);
# c in nm/ns is numerically equal to c in m/s
_HBAR_OVER_E_VS = HBAR_C_KEV_NM * 1e3 * 1e-9 / C_NM_PER_NS


@dataclass(frozen=True)
class PhysConsts:
    lambda_C: float = LAMBDA_C_NM
    rest_energy_keV: float = ELECTRON_REST_KEV
    c_nm_per_ns: float = C_NM_PER_NS

    @property
    def hbar_c_keV_nm(self) -> float:
        return self.rest_energy_keV * self.lambda_C


CONSTS = PhysConsts()


def ns_to_internal(t_ns):
    """Time in ns -> light-travel length c*t in nm."""
    return t_ns * C_NM_PER_NS


def internal_to_ns(ct_nm):
    return ct_nm / C_NM_PER_NS


def nm_to_m(x):
    return x * 1e-9


def m_to_nm(x):
    return x * 1e9


def natural_to_keV(energy_per_nm):
    """Energy in natural units (1/nm) -> keV."""
    return energy_per_nm * HBAR_C_KEV_NM


def keV_to_natural(energy_keV):
    return energy_keV / HBAR_C_KEV_NM


def _check_finite(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name} must be a real number, got {value!r}") from exc
    if not math.isfinite(value):
        raise InvalidInputError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial number ``n >= 0`` and orbital angular momentum ``l``."""

    n: int
    l: int

    def __post_init__(self):
        for name in ("n", "l"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise InvalidInputError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n < 0:
            raise InvalidInputError(f"radial number n must be >= 0, got {self.n}")

    @property
    def order(self) -> int:
        """Mode order ``2n + |l| + 1``."""
        return 2 * self.n + abs(self.l) + 1


@dataclass(frozen=True)
class FieldContext:
    """Magnetic field ``H`` (tesla) and its derived scales.

    ``sigma_L`` is in nm, ``omega`` in rad/ns and ``T_c`` in ns.  The
    ``*_internal`` accessors give the same quantities with time measured as
    c*t in nm.
    """

    H: float
    sigma_L: float = field(init=False)
    omega: float = field(init=False)
    T_c: float = field(init=False)

    def __post_init__(self):
        H = _check_finite("field H", self.H)
        if H <= 0:
            raise InvalidInputError(f"field H must be positive, got {H}")
        sigma_L = m_to_nm(math.sqrt(2.0 * _HBAR_OVER_E_VS / H))
        omega_internal = 2.0 * LAMBDA_C_NM / sigma_L**2
        omega = omega_internal * C_NM_PER_NS
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "sigma_L", sigma_L)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "T_c", 2.0 * math.pi / omega)

    @property
    def omega_internal(self) -> float:
        """Cyclotron frequency per unit c*t, 1/nm."""
        return 2.0 * LAMBDA_C_NM / self.sigma_L**2

    @property
    def T_c_internal(self) -> float:
        return 2.0 * math.pi / self.omega_internal


def field_context(H: float) -> FieldContext:
    return FieldContext(H)


def kinetic_energy_to_beta(E_parallel_keV: float) -> float:
    """Relativistic speed (in units of c) for a longitudinal kinetic energy."""
    E = _check_finite("kinetic energy", E_parallel_keV)
    if E < 0:
        raise InvalidInputError(f"kinetic energy must be >= 0, got {E}")
    gamma = 1.0 + E / ELECTRON_REST_KEV
    # sqrt(1 - 1/gamma^2) written to avoid cancellation at small E
    return math.sqrt((gamma - 1.0) * (gamma + 1.0)) / gamma

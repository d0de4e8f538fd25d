"""Laguerre-Gaussian packets spreading in free space.

Times are in ns at the interface; ``sigma_prime`` is dsigma/d(ct), dimensionless.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .units import (LAMBDA_C_NM, QuantumNumbers, _check_finite, internal_to_ns,
                    natural_to_keV)


@dataclass(frozen=True)
class WaistSpec:
    """Packet generated at its waist ``sigma_w`` (nm) at instant ``t_g`` (ns).

    ``tau_d`` (ns) is the diffraction time sigma_w**2 / lambda_C.
    """

    sigma_w: float
    t_g: float = 0.0
    tau_d: float = field(init=False)

    def __post_init__(self):
        sigma_w = _check_finite("sigma_w", self.sigma_w)
        if sigma_w <= 0:
            raise InvalidInputError(f"waist sigma_w must be positive, got {sigma_w}")
        object.__setattr__(self, "sigma_w", sigma_w)
        object.__setattr__(self, "t_g", _check_finite("t_g", self.t_g))
        object.__setattr__(self, "tau_d", internal_to_ns(sigma_w**2 / LAMBDA_C_NM))

    @property
    def tau_d_internal(self) -> float:
        return self.sigma_w**2 / LAMBDA_C_NM


@dataclass(frozen=True)
class OpticalState:
    """Dispersion ``sigma`` (nm), its rate ``sigma_prime``, Gouy phase ``phi_G`` at ``t`` (ns)."""

    sigma: float
    sigma_prime: float
    phi_G: float
    t: float

    @property
    def R(self) -> float:
        """Radius of curvature sigma/sigma' (nm-like length in c*t units); inf at a waist."""
        if self.sigma_prime == 0:
            return math.inf
        return self.sigma / self.sigma_prime

    @property
    def sigma_rate_si(self) -> float:
        """dsigma/dt in m/s."""
        return self.sigma_prime * 2.99792458e8


def _reduced_time(w: WaistSpec, t):
    return (np.asarray(t, dtype=float) - w.t_g) / w.tau_d


def free_dispersion(w: WaistSpec, t) -> OpticalState:
    """sigma(t) and dsigma/d(ct) for the free packet; the phase slot is left at 0.

    Array ``t`` is accepted and yields array-valued fields.
    """
    x = _reduced_time(w, t)
    root = np.sqrt(1.0 + x * x)
    sigma = w.sigma_w * root
    # d/d(ct) of sigma_w*sqrt(1+x^2), x = (ct - ct_g)/(c tau_d)
    sigma_prime = w.sigma_w * x / (root * w.tau_d_internal)
    return OpticalState(_scalar(sigma), _scalar(sigma_prime), 0.0, _scalar(np.asarray(t, float)))


def free_gouy(qn: QuantumNumbers, w: WaistSpec, t):
    """Gouy phase N*arctan((t-t_g)/tau_d), zero at the waist."""
    return _scalar(qn.order * np.arctan(_reduced_time(w, t)))


def free_state(qn: QuantumNumbers, w: WaistSpec, t) -> OpticalState:
    """Optical functions including the Gouy phase."""
    s = free_dispersion(w, t)
    return OpticalState(s.sigma, s.sigma_prime, free_gouy(qn, w, t), s.t)


def free_rms_radius(qn: QuantumNumbers, w: WaistSpec, t):
    return free_dispersion(w, t).sigma * math.sqrt(qn.order)


def free_energy(qn: QuantumNumbers, w: WaistSpec, *, keV: bool = False) -> float:
    """Mean transverse energy N/(2 tau_d); natural units (1/nm) unless ``keV``."""
    e = qn.order / (2.0 * w.tau_d_internal)
    return natural_to_keV(e) if keV else e


def free_energy_from_optics(qn: QuantumNumbers, sigma: float, sigma_prime: float) -> float:
    """Size-effect plus expansion form (N/2)(lambda_C/sigma**2 + sigma'**2/lambda_C)."""
    return 0.5 * qn.order * (LAMBDA_C_NM / sigma**2 + sigma_prime**2 / LAMBDA_C_NM)


def waist_from_state(sigma: float, sigma_prime: float, t: float = 0.0) -> WaistSpec:
    """Recover the waist and generation instant of a free packet from (sigma, sigma') at t (ns)."""
    if sigma <= 0:
        raise InvalidInputError(f"sigma must be positive, got {sigma}")
    # sigma^2 = sigma_w^2 (1 + x^2); sigma sigma' = sigma_w^2 x / tau_d
    q = sigma * sigma_prime / LAMBDA_C_NM
    sigma_w = sigma / math.sqrt(1.0 + q * q)
    tau = sigma_w**2 / LAMBDA_C_NM
    return WaistSpec(sigma_w, t - internal_to_ns(q * tau))


def _scalar(a):
    a = np.asarray(a)
    return float(a) if a.ndim == 0 else a

"""Stationary Landau states of the symmetric gauge."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .laguerre import genlaguerre, log_norm_factor
from .units import FieldContext, QuantumNumbers, natural_to_keV, ns_to_internal


@dataclass(frozen=True)
class LandauMode:
    """Landau state (n, l) in field ``ctx``.

    ``E_L`` is in natural units (1/nm), ``rho_L`` in nm.
    """

    qn: QuantumNumbers
    ctx: FieldContext
    E_L: float
    rho_L: float

    @property
    def E_L_keV(self) -> float:
        return natural_to_keV(self.E_L)


def landau_energy(qn: QuantumNumbers, ctx: FieldContext) -> float:
    """(omega/2)(2n + |l| + l + 1) in 1/nm; degenerate in l for l <= 0."""
    return 0.5 * ctx.omega_internal * (qn.order + qn.l)


def landau_mode(qn: QuantumNumbers, ctx: FieldContext) -> LandauMode:
    return LandauMode(qn, ctx, landau_energy(qn, ctx), ctx.sigma_L * math.sqrt(qn.order))


def landau_amplitude(mode: LandauMode, rho, phi, t, t_ref: float = 0.0):
    """Landau wave function at (rho, phi) and time t (ns).

    The stationary phase is exp(-i E_L (t - t_ref)); ``t_ref`` sets where it vanishes.
    """
    rho = np.asarray(rho, dtype=float)
    a = abs(mode.qn.l)
    sL = mode.ctx.sigma_L
    x = (rho / sL) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        log_pow = 0.0 if a == 0 else 0.5 * a * np.log(x)
    log_mag = log_norm_factor(mode.qn.n, mode.qn.l) + log_pow - 0.5 * x - math.log(sL)
    radial = np.exp(log_mag) * genlaguerre(mode.qn.n, a, x)
    dt = ns_to_internal(np.asarray(t, dtype=float) - t_ref)
    phase = mode.qn.l * np.asarray(phi, dtype=float) - mode.E_L * dt
    out = radial * np.exp(1j * phase)
    return complex(out) if np.ndim(out) == 0 else out

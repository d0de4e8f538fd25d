"""Packets inside a homogeneous magnetic field switched on at t0.

Dispersion oscillates about the period-averaged value ``sigma_st`` with the
cyclotron period; the Gouy phase grows by (2n+|l|+l+1)*pi per period.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError
from .free import OpticalState, WaistSpec, free_dispersion, free_gouy
from .units import (LAMBDA_C_NM, FieldContext, QuantumNumbers, _check_finite,
                    field_context, natural_to_keV, ns_to_internal)

#: amplitude ratio below which oscillations count as Landau-like
LANDAU_LIKE_AMPLITUDE = 0.1
#: sigma_st / sigma_L at or above which oscillations count as bouncing
BOUNCING_RATIO = 5.0
#: relative tolerance for recognising Landau boundary data
LANDAU_MATCH_RTOL = 1e-12


@dataclass(frozen=True)
class BoundaryConditions:
    """State at field entry: ``sigma_0`` (nm), ``sigma_0_prime`` (dsigma/d(ct)),
    Gouy phase ``phi_0`` and entry time ``t_0`` (ns)."""

    sigma_0: float
    sigma_0_prime: float = 0.0
    phi_0: float = 0.0
    t_0: float = 0.0

    def __post_init__(self):
        for name in ("sigma_0", "sigma_0_prime", "phi_0", "t_0"):
            object.__setattr__(self, name, _check_finite(name, getattr(self, name)))
        if self.sigma_0 <= 0:
            raise InvalidInputError(f"sigma_0 must be positive, got {self.sigma_0}")

    @classmethod
    def from_free(cls, qn: QuantumNumbers, w: WaistSpec, t_0: float) -> "BoundaryConditions":
        """Boundary data of a free packet arriving at the field edge at ``t_0``."""
        s = free_dispersion(w, t_0)
        return cls(s.sigma, s.sigma_prime, free_gouy(qn, w, t_0), t_0)

    @classmethod
    def from_rms(cls, qn: QuantumNumbers, rho_0: float, rho_0_prime: float = 0.0,
                 phi_0: float = 0.0, t_0: float = 0.0) -> "BoundaryConditions":
        """Build from the r.m.s. radius and its rate, rho = sigma*sqrt(N)."""
        k = math.sqrt(qn.order)
        return cls(rho_0 / k, rho_0_prime / k, phi_0, t_0)


@dataclass(frozen=True)
class OscillationParams:
    """Oscillation of sigma**2 about ``sigma_st**2`` with relative amplitude
    ``amplitude_ratio`` and initial phase ``theta``; ``s`` is the direction."""

    sigma_st: float
    theta: float
    s: int
    amplitude_ratio: float
    bc: BoundaryConditions
    sigma_L: float

    @property
    def ratio(self) -> float:
        """sigma_st**2 / sigma_L**2, equal to zeta**2."""
        return (self.sigma_st / self.sigma_L) ** 2


class Regime(str, enum.Enum):
    LANDAU_LIKE = "landau_like"
    SINE_LIKE = "sine_like"
    BOUNCING = "bouncing"


@dataclass(frozen=True)
class ComparisonMetrics:
    xi_1: float
    xi_2: float
    zeta: float
    delta_zeta: float


def _excess(bc: BoundaryConditions, sigma_L: float) -> float:
    """sigma_st**2 - sigma_L**2 as a sum of squares (no cancellation)."""
    a = bc.sigma_0 - sigma_L**2 / bc.sigma_0
    b = bc.sigma_0_prime * sigma_L**2 / LAMBDA_C_NM
    return 0.5 * (a * a + b * b)


def _is_landau(bc: BoundaryConditions, sigma_L: float) -> bool:
    return (abs(bc.sigma_0 - sigma_L) <= LANDAU_MATCH_RTOL * sigma_L
            and abs(bc.sigma_0_prime) * sigma_L / LAMBDA_C_NM <= LANDAU_MATCH_RTOL)


def oscillation_params(bc: BoundaryConditions, ctx: FieldContext) -> OscillationParams:
    sL = ctx.sigma_L
    sigma_st_sq = sL**2 + _excess(bc, sL)
    if _is_landau(bc, sL):
        return OscillationParams(sL, 0.0, 0, 0.0, bc, sL)
    r = sigma_st_sq / sL**2
    amp = math.sqrt((r - 1.0) * (r + 1.0)) / r
    if bc.sigma_0_prime != 0:
        s = 1 if bc.sigma_0_prime > 0 else -1
    else:
        s = 1 if sL > bc.sigma_0 else -1
    # amp*sin(theta) = 1 - sigma_0^2/sigma_st^2 and, from the slope at t0,
    # amp*cos(theta) = 2 sigma_0 |sigma_0'| / (omega sigma_st^2); atan2 of the two
    # avoids the loss of accuracy of arcsin near +-1 and fixes the branch
    b = bc.sigma_0_prime * sL**2 / LAMBDA_C_NM
    sin_part = 0.5 * ((sL**2 / bc.sigma_0) ** 2 - bc.sigma_0**2 + b * b)
    cos_part = 2.0 * bc.sigma_0 * abs(bc.sigma_0_prime) / ctx.omega_internal
    theta = math.atan2(sin_part, cos_part)
    op = OscillationParams(math.sqrt(sigma_st_sq), theta, s, amp, bc, sL)
    recon = sigma_st_sq * (1.0 - amp * math.sin(theta))
    if abs(recon - bc.sigma_0**2) > 1e-8 * max(sigma_st_sq, bc.sigma_0**2):
        raise InvalidInputError("boundary data cannot be reconstructed by the oscillation form")
    return op


def _tau_internal(op: OscillationParams, t):
    t = np.asarray(t, dtype=float)
    return ns_to_internal(t - op.bc.t_0)


def dispersion_squared(op: OscillationParams, ctx: FieldContext, t):
    """sigma**2(t) and its c*t-derivative in the expanded, cancellation-free form.

    sigma^2 = 2 sigma_st^2 sin^2(w tau/2) + sigma_0^2 cos(w tau) + (2 sigma_0 sigma_0'/w) sin(w tau)
    """
    w = ctx.omega_internal
    tau = _tau_internal(op, t)
    bc = op.bc
    ph = w * tau
    sn, cs = np.sin(ph), np.cos(ph)
    half = np.sin(0.5 * ph)
    sq = (2.0 * op.sigma_st**2 * half * half + bc.sigma_0**2 * cs
          + 2.0 * bc.sigma_0 * bc.sigma_0_prime * sn / w)
    dsq = w * (op.sigma_st**2 - bc.sigma_0**2) * sn + 2.0 * bc.sigma_0 * bc.sigma_0_prime * cs
    return sq, dsq


def dispersion_sine_form(op: OscillationParams, ctx: FieldContext, t):
    """sigma(t) from the amplitude/phase representation (reference form)."""
    tau = _tau_internal(op, t)
    s = op.s if op.s != 0 else 1
    return op.sigma_st * np.sqrt(1.0 + op.amplitude_ratio * np.sin(s * ctx.omega_internal * tau - op.theta))


def field_dispersion(op: OscillationParams, ctx: FieldContext, t) -> OpticalState:
    sq, dsq = dispersion_squared(op, ctx, t)
    sigma = np.sqrt(sq)
    return OpticalState(_scalar(sigma), _scalar(dsq / (2.0 * sigma)), 0.0,
                        _scalar(np.asarray(t, dtype=float)))


def _unwrapped_half_angle_atan(y, r, amp):
    """Continuous branch of arctan(r*tan(y/2) + r*amp).

    The principal arctan jumps by -pi where y/2 crosses pi/2 + k*pi.  y is
    reduced once to [-pi, pi) and the same k supplies the pi*k offset, so the
    branch and the offset can never disagree at the cut.
    """
    y = np.asarray(y, dtype=float)
    k = np.floor((y + math.pi) / (2.0 * math.pi))
    reduced = y - 2.0 * math.pi * k
    return np.arctan(r * np.tan(0.5 * reduced) + r * amp) + math.pi * k


def field_gouy(qn: QuantumNumbers, op: OscillationParams, ctx: FieldContext, t):
    """Gouy phase inside the field, continuous in t and equal to phi_0 at t_0."""
    w = ctx.omega_internal
    tau = _tau_internal(op, t)
    N = qn.order
    if op.s == 0:
        return _scalar(op.bc.phi_0 + 0.5 * (qn.l + N) * w * tau)
    r = op.ratio
    y = op.s * w * tau - op.theta
    y0 = -op.theta
    growth = _unwrapped_half_angle_atan(y, r, op.amplitude_ratio) - _unwrapped_half_angle_atan(y0, r, op.amplitude_ratio)
    return _scalar(op.bc.phi_0 + 0.5 * qn.l * w * tau + N * op.s * growth)


def field_state(qn: QuantumNumbers, op: OscillationParams, ctx: FieldContext, t) -> OpticalState:
    st = field_dispersion(op, ctx, t)
    return OpticalState(st.sigma, st.sigma_prime, field_gouy(qn, op, ctx, t), st.t)


def field_energy(qn: QuantumNumbers, op: OscillationParams, ctx: FieldContext, *, keV: bool = False) -> float:
    """Mean energy (omega/2) N sigma_st^2/sigma_L^2 + l omega/2, natural units unless ``keV``."""
    w = ctx.omega_internal
    e = 0.5 * w * qn.order * op.ratio + 0.5 * w * qn.l
    return natural_to_keV(e) if keV else e


def classify_regime(op: OscillationParams, ctx: FieldContext | None = None) -> Regime:
    if op.sigma_st / op.sigma_L >= BOUNCING_RATIO:
        return Regime.BOUNCING
    if op.amplitude_ratio < LANDAU_LIKE_AMPLITUDE:
        return Regime.LANDAU_LIKE
    return Regime.SINE_LIKE


def comparison_metrics(bc: BoundaryConditions, ctx: FieldContext) -> ComparisonMetrics:
    xi_1 = ctx.sigma_L / bc.sigma_0
    xi_2 = abs(bc.sigma_0_prime) * ctx.sigma_L / LAMBDA_C_NM
    # zeta^2 - 1 = ((xi_1 - 1/xi_1)^2 + xi_2^2)/2, kept as a sum of squares
    dz_sq = 0.5 * ((xi_1 - 1.0 / xi_1) ** 2 + xi_2**2)
    zeta = math.sqrt(1.0 + dz_sq)
    return ComparisonMetrics(xi_1, xi_2, zeta, dz_sq / (zeta + 1.0))


def vanishing_field_limit_check(bc: BoundaryConditions, w: WaistSpec,
                                H_sequence: Sequence[float], t_grid) -> list[float]:
    """max_t |sigma_H - sigma_free| / sigma_free for each field in ``H_sequence``.

    The maximum over the grid is refined with a bounded scalar search around
    the best grid point, so the result does not depend on the grid spacing.
    """
    from scipy.optimize import minimize_scalar

    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(t_grid < bc.t_0):
        raise InvalidInputError("t_grid must not precede the field entry time t_0")
    out = []
    for H in H_sequence:
        ctx = field_context(H)
        op = oscillation_params(bc, ctx)

        def dev(t):
            sf = free_dispersion(w, t).sigma
            return np.abs(field_dispersion(op, ctx, t).sigma - sf) / sf

        d = dev(t_grid)
        k = int(np.argmax(d))
        best = float(d[k])
        lo, hi = t_grid[max(k - 1, 0)], t_grid[min(k + 1, len(t_grid) - 1)]
        if hi > lo:
            res = minimize_scalar(lambda t: -dev(t), bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-14 * max(1.0, abs(hi))})
            best = max(best, -float(res.fun))
        out.append(best)
    return out


def _scalar(a):
    a = np.asarray(a)
    return float(a) if a.ndim == 0 else a

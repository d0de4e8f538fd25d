"""Quantum r.m.s. emittance of free, in-field and Landau states.

Emittances are lengths in nm (the velocity is dimensionless); divide by
LAMBDA_C_NM for values in Compton units.  The totals below are the
two-axis quantity; the per-axis value is half of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .field import OscillationParams, dispersion_squared
from .units import LAMBDA_C_NM, FieldContext, QuantumNumbers


def emittance_free(qn: QuantumNumbers) -> float:
    """lambda_C sqrt(N^2 - 1); exactly zero for the Gaussian mode."""
    N = qn.order
    return LAMBDA_C_NM * math.sqrt((N - 1) * (N + 1))


def _bracket(qn: QuantumNumbers, q):
    """(N^2-1) + (N q + l)^2 - l^2 with q = sigma^2 / sigma_L^2."""
    N = qn.order
    return (N * N - 1) + (N * q + qn.l) ** 2 - qn.l**2


def emittance_field(qn: QuantumNumbers, op: OscillationParams, ctx: FieldContext, t):
    """In-field emittance at time(s) t (ns), periodic with the cyclotron period."""
    sq, _ = dispersion_squared(op, ctx, t)
    val = LAMBDA_C_NM * np.sqrt(np.maximum(_bracket(qn, sq / ctx.sigma_L**2), 0.0))
    return float(val) if np.ndim(val) == 0 else val


def emittance_landau(qn: QuantumNumbers) -> float:
    """Emittance of the Landau state, i.e. the in-field value at sigma = sigma_L."""
    return LAMBDA_C_NM * math.sqrt(_bracket(qn, 1.0))


def per_axis(eps):
    return 0.5 * np.asarray(eps) if np.ndim(eps) else 0.5 * eps


@dataclass
class EmittanceSeries:
    """In-field emittance on a time grid, with the free and Landau constants.

    All values in nm; the ``*_lambda_C`` accessors give Compton units.
    """

    t_grid: np.ndarray
    eps_H: np.ndarray
    eps_f: float
    eps_L: float

    @property
    def eps_H_lambda_C(self):
        return self.eps_H / LAMBDA_C_NM

    @property
    def eps_f_lambda_C(self):
        return self.eps_f / LAMBDA_C_NM

    @property
    def eps_L_lambda_C(self):
        return self.eps_L / LAMBDA_C_NM


def emittance_series(qn: QuantumNumbers, op: OscillationParams, ctx: FieldContext, t_grid) -> EmittanceSeries:
    t_grid = np.asarray(t_grid, dtype=float)
    return EmittanceSeries(t_grid, np.asarray(emittance_field(qn, op, ctx, t_grid)),
                           emittance_free(qn), emittance_landau(qn))


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi) of sigma_st^2/sigma_L^2 with exact rational bounds."""

    lo: Fraction
    hi: Fraction

    def contains(self, value: float) -> bool:
        return float(self.lo) < value < float(self.hi)

    def as_floats(self):
        return float(self.lo), float(self.hi)


def classicality_window(qn: QuantumNumbers, op: Optional[OscillationParams] = None,
                        ctx: Optional[FieldContext] = None) -> Optional[Interval]:
    """Window of sigma_st^2/sigma_L^2 bounded by N/(4|l|) + |l|/N and 2|l|/N.

    None for l >= 0 or when the bounds do not form a nonempty interval.
    The optional oscillation arguments are accepted for call-site symmetry
    and do not change the window.
    """
    if qn.l >= 0:
        return None
    N, a = qn.order, abs(qn.l)
    lo = Fraction(N, 4 * a) + Fraction(a, N)
    hi = Fraction(2 * a, N)
    if lo >= hi:
        return None
    return Interval(lo, hi)


def min_dispersion_ratio(op: OscillationParams) -> float:
    """Minimum over a period of sigma^2/sigma_L^2, r - sqrt(r^2-1) in stable form."""
    r = op.ratio
    return 1.0 / (r + math.sqrt((r - 1.0) * (r + 1.0)))


def dips_below_free(qn: QuantumNumbers, op: OscillationParams) -> bool:
    """True iff eps_H(t) < eps_f at some time.

    The bracket (N q + l)^2 - l^2 is negative exactly for 0 < q < 2|l|/N with
    l < 0, and q sweeps [r - sqrt(r^2-1), r + sqrt(r^2-1)] each period.
    """
    if qn.l >= 0:
        return False
    return min_dispersion_ratio(op) < 2.0 * abs(qn.l) / qn.order


def count_local_maxima_per_period(values, periodic: bool = True) -> int:
    """Strict local maxima of a sampled series; with ``periodic`` the samples
    are one period with the endpoint excluded, and neighbours wrap around."""
    v = np.asarray(values, dtype=float)
    if periodic:
        left, right = np.roll(v, 1), np.roll(v, -1)
        return int(np.count_nonzero((v > left) & (v >= right)))
    inner = (v[1:-1] > v[:-2]) & (v[1:-1] >= v[2:])
    return int(np.count_nonzero(inner))

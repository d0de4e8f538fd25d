"""Independent numerical checks: ODE integration of the optical functions and
quadrature expectation values over sampled states.

Nothing here calls the closed-form dispersion or Gouy phase; tests compare
the two routes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceError, InvalidInputError
from .free import OpticalState
from .laguerre import gauss_laguerre, genlaguerre
from .units import LAMBDA_C_NM, FieldContext, QuantumNumbers, internal_to_ns, ns_to_internal

FREE = "free"
FIELD = "field"

MAX_REFINEMENT = 2**10


@dataclass
class OdeRun:
    """Trajectory of (sigma, sigma', Gouy phase) sampled at every step.

    ``t`` is in ns; ``step`` in ns is the step finally used.
    """

    system: str
    step: float
    t: np.ndarray
    sigma: np.ndarray
    sigma_prime: np.ndarray
    phi_G: np.ndarray

    def state(self, i: int) -> OpticalState:
        return OpticalState(float(self.sigma[i]), float(self.sigma_prime[i]),
                            float(self.phi_G[i]), float(self.t[i]))


def _rk4(sigma, dsigma, phi, h, n_steps, lam, inv_sl4, gouy_const, order):
    """Fixed-step RK4 on sigma'' = lam^2/sigma^3 - lam^2 sigma inv_sl4,
    phi' = gouy_const + lam*order/sigma^2.  Plain floats for speed."""
    lam2 = lam * lam
    out_s = [sigma]
    out_d = [dsigma]
    out_p = [phi]
    for _ in range(n_steps):
        s1, d1 = sigma, dsigma
        a1 = lam2 / s1**3 - lam2 * s1 * inv_sl4
        p1 = gouy_const + lam * order / (s1 * s1)
        s2 = sigma + 0.5 * h * d1
        d2 = dsigma + 0.5 * h * a1
        a2 = lam2 / s2**3 - lam2 * s2 * inv_sl4
        p2 = gouy_const + lam * order / (s2 * s2)
        s3 = sigma + 0.5 * h * d2
        d3 = dsigma + 0.5 * h * a2
        a3 = lam2 / s3**3 - lam2 * s3 * inv_sl4
        p3 = gouy_const + lam * order / (s3 * s3)
        s4 = sigma + h * d3
        d4 = dsigma + h * a3
        a4 = lam2 / s4**3 - lam2 * s4 * inv_sl4
        p4 = gouy_const + lam * order / (s4 * s4)
        sigma = sigma + h * (d1 + 2 * d2 + 2 * d3 + d4) / 6.0
        dsigma = dsigma + h * (a1 + 2 * a2 + 2 * a3 + a4) / 6.0
        phi = phi + h * (p1 + 2 * p2 + 2 * p3 + p4) / 6.0
        if not (sigma > 0 and math.isfinite(sigma) and math.isfinite(dsigma)):
            return None
        out_s.append(sigma)
        out_d.append(dsigma)
        out_p.append(phi)
    return out_s, out_d, out_p


def integrate_optical(system: str, initial: OpticalState, step: float, t_end: float,
                      qn: Optional[QuantumNumbers] = None,
                      ctx: Optional[FieldContext] = None) -> OdeRun:
    """Classic RK4 for the free or in-field optical-function equations.

    ``initial.t``, ``step`` and ``t_end`` are in ns; ``qn`` fixes the Gouy rate
    (defaults to n = l = 0).  If sigma leaves (0, inf) the step is halved, up
    to 2**10 times, before giving up.
    """
    if system not in (FREE, FIELD):
        raise InvalidInputError(f"unknown system {system!r}")
    if system == FIELD and ctx is None:
        raise InvalidInputError("the field system needs a FieldContext")
    if not step > 0:
        raise InvalidInputError(f"step must be positive, got {step}")
    if initial.sigma <= 0:
        raise InvalidInputError("initial sigma must be positive")
    if t_end < initial.t:
        raise InvalidInputError("t_end precedes the initial time")
    qn = qn or QuantumNumbers(0, 0)
    inv_sl4 = 0.0 if system == FREE else ctx.sigma_L**-4
    gouy_const = 0.0 if system == FREE else LAMBDA_C_NM * qn.l / ctx.sigma_L**2
    span = ns_to_internal(t_end - initial.t)
    n_steps = max(1, int(round((t_end - initial.t) / step)))
    refine = 1
    while refine <= MAX_REFINEMENT:
        m = n_steps * refine
        h = span / m
        res = _rk4(initial.sigma, initial.sigma_prime, initial.phi_G, h, m,
                   LAMBDA_C_NM, inv_sl4, gouy_const, qn.order)
        if res is not None:
            t = initial.t + internal_to_ns(h * np.arange(m + 1))
            s, d, p = (np.asarray(v) for v in res)
            return OdeRun(system, internal_to_ns(h), t, s, d, p)
        refine *= 2
    raise ConvergenceError("dispersion collapsed or diverged at every refinement",
                           achieved=internal_to_ns(span / (n_steps * MAX_REFINEMENT)))


@dataclass(frozen=True)
class StateSample:
    """A state given by its quantum numbers and optical functions; ``ctx``
    is None in free space."""

    qn: QuantumNumbers
    optics: OpticalState
    ctx: Optional[FieldContext] = None


OBSERVABLES = ("rho2", "energy_free", "energy_field", "rho_dot_v", "v2", "norm")


def _pieces(sample: StateSample, order: int, alpha: float):
    """Nodes, normalised weights and the radial polynomial parts of the state.

    With x = rho^2/sigma^2 the state is
    C x^(a/2) L(x) exp(-x(1-ib)/2) e^{i l phi}, and rho d/drho acts on the
    polynomial part as core(x) = a L + 2x (L' - (1-ib) L/2).
    """
    qn, op = sample.qn, sample.optics
    a = abs(qn.l)
    x, w = gauss_laguerre(order, float(alpha))
    b = op.sigma * op.sigma_prime / LAMBDA_C_NM
    L = genlaguerre(qn.n, a, x)
    dL = -genlaguerre(qn.n - 1, a + 1, x) if qn.n > 0 else np.zeros_like(x)
    core = a * L + 2.0 * x * (dL - 0.5 * (1.0 - 1j * b) * L)
    # pi * N_nl^2 * Gamma(alpha+1): normalised weights absorb Gamma(alpha+1)
    log_c = (math.lgamma(qn.n + 1) - math.lgamma(qn.n + a + 1) + math.lgamma(alpha + 1.0))
    return x, w, L, core, math.exp(log_c)


def _kinetic_sum(sample: StateSample, order: int) -> float:
    """int [|d_rho psi|^2 + (l/rho + A-term)^2 |psi|^2] d^2rho."""
    qn, op = sample.qn, sample.optics
    a = abs(qn.l)
    alpha = max(a - 1, 0)
    x, w, L, core, c = _pieces(sample, order, alpha)
    s2 = op.sigma**2
    k = 0.0 if sample.ctx is None else s2 / sample.ctx.sigma_L**2
    # weight x^(a-1): |rho d psi|^2/rho^2 -> |core|^2 / (x s^2); same for l^2/rho^2
    if a == 0:
        grad = np.abs(core) ** 2 / np.where(x > 0, x, 1.0)
        az = k * k * x * L * L
    else:
        grad = np.abs(core) ** 2
        az = (qn.l**2 + 2 * qn.l * k * x + k * k * x * x) * L * L
    return c * math.fsum(w * (grad + az)) / s2


def expectation(observable: str, sample: StateSample, order: Optional[int] = None):
    """Quadrature expectation value over the state.

    ``energy_*`` are in 1/nm, ``v2`` is dimensionless (velocity in units of c),
    ``rho2`` in nm^2, ``rho_dot_v`` in nm (complex).
    """
    if observable not in OBSERVABLES:
        raise InvalidInputError(f"unknown observable {observable!r}")
    qn, op = sample.qn, sample.optics
    if op.sigma <= 0:
        raise InvalidInputError("sigma must be positive")
    a = abs(qn.l)
    # every integrand is a polynomial of degree <= 2n+4 against the weight
    order = order or qn.n + 6
    if observable == "norm":
        x, w, L, core, c = _pieces(sample, order, a)
        return c * math.fsum(w * L * L)
    if observable == "rho2":
        x, w, L, core, c = _pieces(sample, order, a)
        return c * op.sigma**2 * math.fsum(w * x * L * L)
    if observable == "rho_dot_v":
        x, w, L, core, c = _pieces(sample, order, a)
        vals = L * core
        integral = c * complex(math.fsum(w * vals.real), math.fsum(w * vals.imag))
        return -1j * LAMBDA_C_NM * integral
    if observable == "energy_free":
        return 0.5 * LAMBDA_C_NM * _kinetic_sum(StateSample(qn, op, None), order)
    if observable == "energy_field":
        if sample.ctx is None:
            raise InvalidInputError("energy_field needs a FieldContext")
        return 0.5 * LAMBDA_C_NM * _kinetic_sum(sample, order)
    # v2: velocity operator includes the vector potential when a field is present
    return LAMBDA_C_NM**2 * _kinetic_sum(sample, order)


def moment_emittance(sample: StateSample) -> float:
    """sqrt(<rho^2><v^2> - |<rho.v>|^2) from quadrature moments, in nm."""
    r2 = expectation("rho2", sample)
    v2 = expectation("v2", sample)
    rv = expectation("rho_dot_v", sample)
    return math.sqrt(max(r2 * v2 - abs(rv) ** 2, 0.0))

"""Expansion of in-field packets over Landau states, and off-axis injection.

A packet entering the field with boundary data (sigma_0, sigma_0', phi_0)
is a superposition of Landau states with the same OAM and time-independent
coefficients a_{n n' l} = <Landau_{n' l} | packet>, the Landau phase being
referenced to the entry time t_0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from .errors import ConvergenceError, InvalidInputError
from .field import BoundaryConditions, comparison_metrics, field_dispersion, field_gouy, oscillation_params
from .laguerre import gauss_laguerre_log, laguerre_functions
from .units import LAMBDA_C_NM, FieldContext, QuantumNumbers, ns_to_internal

TRUNCATION_START = 16
TRUNCATION_CEILING = 4096
ORACLE_MAX_ORDER = 4096


@dataclass
class DecompositionResult:
    """Coefficients keyed by n'; ``tail`` is 1 - sum |a|^2 over the kept terms."""

    qn: QuantumNumbers
    coefficients: Dict[int, complex]
    zeta: float
    truncation_n_max: int
    tail: float

    def as_arrays(self):
        """(n', |a|^2, arg a) as numpy arrays in increasing n'."""
        keys = sorted(self.coefficients)
        a = np.array([self.coefficients[k] for k in keys])
        return np.array(keys), np.abs(a) ** 2, np.angle(a)


def _log_fact(m: int) -> float:
    return math.lgamma(m + 1.0)


def _boundary_invariants(bc: BoundaryConditions, ctx: FieldContext):
    """lambda = (zeta^2-1)/2, xi_1^2 and the chirp-like combination
    eps = sigma_0' sigma_L^2 / (lambda_C sigma_0)."""
    m = comparison_metrics(bc, ctx)
    xi1_sq = m.xi_1**2
    eps = bc.sigma_0_prime * ctx.sigma_L**2 / (LAMBDA_C_NM * bc.sigma_0)
    # zeta^2 - 1 kept cancellation-free
    lam = 0.25 * ((m.xi_1 - 1.0 / m.xi_1) ** 2 + m.xi_2**2)
    return lam, xi1_sq, eps, m.zeta


def _coefficient(n: int, a: int, n_prime: int, lam: float, xi1_sq: float, eps: float,
                 phi_0: float) -> complex:
    """Single closed-form coefficient.

    |a| = M!/sqrt(n! n'! (n+a)! (n'+a)!) (1+lam)^(-(M+1)/2)
          * |sum_k d_k lam^(k + (n'-n)/2)|,  M = n + n' + a,
    where sum_k d_k lam^k is the terminating 2F1(-n, -n-a; -M; 1+lam)
    re-expanded about 1; terms with k < n - n' vanish identically.
    """
    M = n + n_prime + a
    if lam == 0.0:
        return complex(math.cos(-phi_0), math.sin(-phi_0)) if n_prime == n else 0j
    log_lam = math.log(lam)
    log_pref = (_log_fact(M) - 0.5 * (_log_fact(n) + _log_fact(n_prime) + _log_fact(n + a)
                                      + _log_fact(n_prime + a))
                - 0.5 * (M + 1) * math.log1p(lam))
    log_cn = _log_fact(M) - _log_fact(n_prime + a)
    terms = []
    for k in range(max(0, n - n_prime), n + 1):
        log_d = (_log_fact(n) - _log_fact(n - k)
                 + _log_fact(n + a) - _log_fact(n + a - k)
                 + _log_fact(n_prime) - _log_fact(n_prime - n + k)
                 - _log_fact(k) - log_cn)
        mag = math.exp(log_pref + log_d + (k + 0.5 * (n_prime - n)) * log_lam)
        terms.append(-mag if k % 2 else mag)
    real_sum = math.fsum(terms)
    # phase: Landau-mode convention plus the boundary chirp and Gouy offset
    chi = (-phi_0 + (n - n_prime) * math.atan2(-eps, 1.0 - xi1_sq)
           + math.pi * (n + n_prime) + (M + 1) * math.atan2(eps, 1.0 + xi1_sq))
    return real_sum * complex(math.cos(chi), math.sin(chi))


def landau_coefficients(qn: QuantumNumbers, bc: BoundaryConditions, ctx: FieldContext,
                        tail_tolerance: float = 1e-10) -> DecompositionResult:
    """Closed-form Landau expansion, truncated once the missing weight is below tolerance."""
    if not 0 < tail_tolerance < 1:
        raise InvalidInputError(f"tail_tolerance must lie in (0, 1), got {tail_tolerance}")
    lam, xi1_sq, eps, zeta = _boundary_invariants(bc, ctx)
    n, a = qn.n, abs(qn.l)
    coeffs: Dict[int, complex] = {}
    n_max = TRUNCATION_START
    tail = 1.0
    while True:
        for k in range(len(coeffs), n_max + 1):
            coeffs[k] = _coefficient(n, a, k, lam, xi1_sq, eps, bc.phi_0)
        weight = math.fsum(abs(c) ** 2 for c in coeffs.values())
        tail = max(1.0 - weight, 0.0)
        if tail < tail_tolerance and n_max >= n:
            return DecompositionResult(qn, coeffs, zeta, n_max, tail)
        if n_max >= TRUNCATION_CEILING:
            raise ConvergenceError(
                f"Landau expansion tail {tail:.3e} above {tail_tolerance:.1e} at n'_max = {n_max}",
                achieved=tail)
        n_max *= 2


def _oracle_all(qn: QuantumNumbers, n_prime_max: int, bc: BoundaryConditions, ctx: FieldContext,
                t: Optional[float], order: int) -> np.ndarray:
    """Overlaps <Landau_{n'} | packet(t)> for n' = 0..n_prime_max at fixed order."""
    a = abs(qn.l)
    if t is None or t == bc.t_0:
        sigma, sigma_p, phi = bc.sigma_0, bc.sigma_0_prime, bc.phi_0
        dt = 0.0
    else:
        op = oscillation_params(bc, ctx)
        st = field_dispersion(op, ctx, t)
        sigma, sigma_p = st.sigma, st.sigma_prime
        phi = field_gouy(qn, op, ctx, t)
        dt = ns_to_internal(t - bc.t_0)
    sL = ctx.sigma_L
    # rho^2 = S^2 u makes the product of Gaussians exp(-u)
    S2 = 2.0 / (1.0 / sigma**2 + 1.0 / sL**2)
    gamma = 0.5 * (sigma * sigma_p / LAMBDA_C_NM) * S2 / sigma**2
    u, log_w = gauss_laguerre_log(order, float(a))
    # weights of the plain measure du: w * Gamma(a+1) * e^u * u^-a
    log_W = log_w + math.lgamma(a + 1.0) + u - a * np.log(u)
    land = laguerre_functions(n_prime_max, a, u * S2 / sL**2)
    pack = laguerre_functions(qn.n, a, u * S2 / sigma**2)[qn.n]
    kernel = np.exp(log_W) * pack * (S2 / (sigma * sL))
    osc = np.exp(1j * gamma * u)
    const = np.exp(-1j * phi)
    vals = land @ (kernel * osc)
    # Landau phase exp(+i E_L' (t - t0)) from the bra, packet phase exp(-i phi)
    e_land = 0.5 * ctx.omega_internal * (2 * np.arange(n_prime_max + 1) + a + qn.l + 1)
    return vals * const * np.exp(1j * e_land * dt)


def landau_coefficient_oracle(qn: QuantumNumbers, n_prime: int, bc: BoundaryConditions,
                              ctx: FieldContext, t: Optional[float] = None,
                              rtol: float = 1e-12) -> complex:
    """Direct radial quadrature of the overlap, independent of the closed form.

    The Gauss-Laguerre order starts at n + n' + 4 and doubles until two
    successive values agree to ``rtol`` (absolute, coefficients are <= 1).
    """
    return complex(landau_coefficients_oracle(qn, n_prime, bc, ctx, t, rtol)[n_prime])


def landau_coefficients_oracle(qn: QuantumNumbers, n_prime_max: int, bc: BoundaryConditions,
                               ctx: FieldContext, t: Optional[float] = None,
                               rtol: float = 1e-12) -> np.ndarray:
    """Array of oracle coefficients for n' = 0..n_prime_max."""
    if n_prime_max < 0:
        raise InvalidInputError("n_prime_max must be >= 0")
    order = qn.n + n_prime_max + 4
    prev = _oracle_all(qn, n_prime_max, bc, ctx, t, order)
    while True:
        order *= 2
        if order > ORACLE_MAX_ORDER:
            raise ConvergenceError("overlap quadrature did not converge", achieved=order // 2)
        cur = _oracle_all(qn, n_prime_max, bc, ctx, t, order)
        if np.max(np.abs(cur - prev)) <= rtol:
            return cur
        prev = cur


@dataclass(frozen=True)
class OffAxisParams:
    """Tilt ``alpha`` (rad), mean longitudinal momentum ``mean_p_z`` (1/nm) and
    the packet dispersion at the boundary ``sigma_t0`` (nm)."""

    alpha: float
    mean_p_z: float
    sigma_t0: float

    def __post_init__(self):
        if not self.alpha >= 0:
            raise InvalidInputError(f"tilt alpha must be >= 0, got {self.alpha}")
        if not self.sigma_t0 > 0:
            raise InvalidInputError("sigma_t0 must be positive")
        if not math.isfinite(self.mean_p_z):
            raise InvalidInputError("mean_p_z must be finite")

    @property
    def kappa(self) -> float:
        return abs(self.alpha * self.mean_p_z * self.sigma_t0 / (4.0 * math.pi))


def off_axis_coefficients(qn: QuantumNumbers, target: tuple, params: OffAxisParams) -> float:
    """|c_{n n' l l'}| to first order in the tilt.

    Only l' = l +- 1 couple.  Raising |l| by one couples to n' = n
    (weight sqrt(n+|l|+1)) and n' = n - 1 (weight sqrt(n)); lowering |l|
    couples to n' = n (weight sqrt(n+|l|)) and n' = n + 1 (weight sqrt(n+1)).
    """
    n2, l2 = int(target[0]), int(target[1])
    if n2 < 0:
        raise InvalidInputError("target radial number must be >= 0")
    n, l = qn.n, qn.l
    if (n2, l2) == (n, l):
        return 1.0
    if abs(l2 - l) != 1:
        return 0.0
    k = params.kappa
    a, a2 = abs(l), abs(l2)
    if a2 == a + 1:
        if n2 == n:
            return k * math.sqrt(n + a + 1)
        if n2 == n - 1:
            return k * math.sqrt(n)
    elif a2 == a - 1:
        if n2 == n:
            return k * math.sqrt(n + a)
        if n2 == n + 1:
            return k * math.sqrt(n + 1)
    return 0.0


def off_axis_table(qn: QuantumNumbers, params: OffAxisParams):
    """All nonzero (n', l', |c|) couplings, the diagonal first."""
    n, l = qn.n, qn.l
    cand = {(n, l)}
    for l2 in (l - 1, l + 1):
        for n2 in (n - 1, n, n + 1):
            if n2 >= 0:
                cand.add((n2, l2))
    rows = [(n, l, 1.0)]
    for n2, l2 in sorted(cand - {(n, l)}):
        c = off_axis_coefficients(qn, (n2, l2), params)
        if c != 0.0:
            rows.append((n2, l2, c))
    return rows

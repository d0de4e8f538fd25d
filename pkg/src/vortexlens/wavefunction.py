"""Pointwise and grid evaluation of nonstationary Laguerre-Gaussian states."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.special import roots_legendre

from .errors import ConvergenceError, InvalidInputError
from .free import OpticalState
from .laguerre import gauss_laguerre, genlaguerre, log_norm_factor
from .units import LAMBDA_C_NM, FieldContext, QuantumNumbers


@dataclass(frozen=True)
class ModeAmplitudeRequest:
    qn: QuantumNumbers
    optics: OpticalState
    rho: float
    phi: float = 0.0
    ctx: Optional[FieldContext] = None
    t: Optional[float] = None

    def __post_init__(self):
        if not self.rho >= 0:
            raise InvalidInputError(f"rho must be >= 0, got {self.rho}")


@dataclass
class PolarGrid:
    """Complex samples on a radial-by-azimuthal grid.

    ``rho`` and ``weights`` are the radial nodes (nm) and their area weights
    for the integral over rho d rho; ``phi`` are uniform azimuthal samples.
    """

    rho: np.ndarray
    weights: np.ndarray
    phi: np.ndarray
    values: np.ndarray


def _radial_envelope(n: int, a: int, x):
    """N_nl x^(a/2) L_n^a(x) exp(-x/2), formed in log space."""
    x = np.asarray(x, dtype=float)
    if a == 0:
        env = np.exp(log_norm_factor(n, 0) - 0.5 * x)
    else:
        with np.errstate(divide="ignore"):
            env = np.exp(log_norm_factor(n, a) + 0.5 * a * np.log(x) - 0.5 * x)
    return env * genlaguerre(n, a, x)


def chirp(optics: OpticalState) -> float:
    """Dimensionless curvature sigma*sigma'/lambda_C (= sigma**2/(lambda_C R))."""
    return optics.sigma * optics.sigma_prime / LAMBDA_C_NM


def nslg_wavefunction(qn: QuantumNumbers, optics: OpticalState, rho, phi=0.0):
    """Vectorised amplitude of the state (n, l) with optical functions ``optics``."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise InvalidInputError("rho must be >= 0")
    a = abs(qn.l)
    x = (rho / optics.sigma) ** 2
    env = _radial_envelope(qn.n, a, x) / optics.sigma
    phase = qn.l * np.asarray(phi, dtype=float) - optics.phi_G + 0.5 * x * chirp(optics)
    out = env * np.exp(1j * phase)
    return complex(out) if np.ndim(out) == 0 else out


def nslg_amplitude(req: ModeAmplitudeRequest) -> complex:
    return nslg_wavefunction(req.qn, req.optics, req.rho, req.phi)


def nslg_radial_derivative(qn: QuantumNumbers, optics: OpticalState, rho, phi=0.0):
    """d Psi / d rho, analytic.

    With x = rho^2/sigma^2, dx/drho = 2 rho/sigma^2 and
    d/dx [x^(a/2) L_n^a e^{-x(1-ib)/2}] = [a/(2x) - (1-ib)/2 - L_{n-1}^{a+1}/L_n^a] (...)
    written without the division by L_n^a.
    """
    rho = np.asarray(rho, dtype=float)
    a = abs(qn.l)
    s = optics.sigma
    b = chirp(optics)
    x = (rho / s) ** 2
    L = genlaguerre(qn.n, a, x)
    dL = -genlaguerre(qn.n - 1, a + 1, x) if qn.n > 0 else np.zeros_like(x)
    # rho * d/drho = 2x d/dx; keeps the a/(2x) term finite at the core
    with np.errstate(divide="ignore", invalid="ignore"):
        if a == 0:
            pre = np.exp(log_norm_factor(qn.n, 0) - 0.5 * x)
            core = 2.0 * x * (dL - 0.5 * (1 - 1j * b) * L)
        else:
            pre = np.exp(log_norm_factor(qn.n, a) + 0.5 * a * np.log(x) - 0.5 * x)
            core = a * L + 2.0 * x * (dL - 0.5 * (1 - 1j * b) * L)
        drho = pre * core / (s * rho)
    if a == 1:
        # x^(1/2)/rho is finite at the core
        drho = np.where(rho == 0, np.exp(log_norm_factor(qn.n, 1)) * genlaguerre(qn.n, 1, 0.0) / s**2, drho)
    else:
        drho = np.where(rho == 0, 0.0, drho)
    phase = qn.l * np.asarray(phi, dtype=float) - optics.phi_G + 0.5 * x * b
    out = drho * np.exp(1j * phase)
    return complex(out) if np.ndim(out) == 0 else out


def density_ring_count(qn: QuantumNumbers, optics: OpticalState, rho_scan=None) -> int:
    """Number of local maxima of the radial probability density 2 pi rho |Psi|^2."""
    if rho_scan is None:
        top = optics.sigma * math.sqrt(4.0 * qn.order + 40.0)
        rho_scan = np.linspace(0.0, top, 10_000)
    rho_scan = np.asarray(rho_scan, dtype=float)
    dens = 2 * math.pi * rho_scan * np.abs(nslg_wavefunction(qn, optics, rho_scan)) ** 2
    d = np.diff(dens)
    rising = d > 0
    return int(np.count_nonzero(rising[:-1] & ~rising[1:] & (d[1:] < 0)))


def _quad_order(modes: Sequence[QuantumNumbers]) -> int:
    n_max = max(q.n for q in modes)
    return 2 * n_max + 4


def gram_matrix(modes: Sequence[QuantumNumbers], optics: OpticalState, ctx=None,
                order: Optional[int] = None) -> np.ndarray:
    """Overlap matrix <Psi_i | Psi_j> of modes sharing the same optical functions.

    The azimuthal integral gives delta_{l l'}; the chirp phase cancels for
    equal optics, so radial overlaps are polynomial integrals against
    x^|l| e^{-x}, evaluated by Gauss-Laguerre quadrature.
    """
    modes = list(modes)
    m = len(modes)
    if order is None:
        order = _quad_order(modes)
    if order < max(q.n for q in modes) + 1:
        raise ConvergenceError("quadrature order too low for exact overlaps", achieved=order)
    G = np.zeros((m, m), dtype=complex)
    for i, qi in enumerate(modes):
        for j, qj in enumerate(modes):
            if qi.l != qj.l:
                continue
            a = abs(qi.l)
            x, w = gauss_laguerre(order, float(a))
            # normalised weights: int x^a e^{-x} f = Gamma(a+1) sum w f
            li = genlaguerre(qi.n, a, x)
            lj = genlaguerre(qj.n, a, x)
            log_c = (log_norm_factor(qi.n, a) + log_norm_factor(qj.n, a)
                     + math.lgamma(a + 1.0) + math.log(math.pi))
            G[i, j] = math.exp(log_c) * math.fsum(w * li * lj)
    return G


def projection_residual(test_fn, optics: OpticalState, n_max: int, l_max: int,
                        radial_nodes: int = 400, azimuthal_samples: int = 256) -> float:
    """1 - sum |<Psi_nl|f>|^2 over n <= n_max, |l| <= l_max for a normalised test function.

    ``test_fn(x, y)`` takes Cartesian coordinates in nm.  Integrals use
    Gauss-Legendre in rho on [0, rho_max] and the periodic trapezoid in phi.
    """
    rho_max = optics.sigma * math.sqrt(4.0 * (2 * n_max + l_max + 1) + 80.0)
    u, wu = roots_legendre(radial_nodes)
    rho = 0.5 * rho_max * (u + 1.0)
    wr = 0.5 * rho_max * wu * rho
    phi = 2 * math.pi * np.arange(azimuthal_samples) / azimuthal_samples
    R, P = np.meshgrid(rho, phi, indexing="ij")
    f = test_fn(R * np.cos(P), R * np.sin(P))
    norm = np.sum(wr[:, None] * np.abs(f) ** 2) * (2 * math.pi / azimuthal_samples)
    # azimuthal Fourier components: f_l(rho) = (1/2pi) int f e^{-il phi}
    fl = np.fft.fft(f, axis=1) / azimuthal_samples
    total = 0.0
    for l in range(-l_max, l_max + 1):
        comp = fl[:, l % azimuthal_samples]
        for n in range(n_max + 1):
            mode = nslg_wavefunction(QuantumNumbers(n, l), optics, rho, 0.0)
            c = 2 * math.pi * np.sum(wr * np.conj(mode) * comp)
            total += abs(c) ** 2
    return float(1.0 - total / norm)


def sample_polar_grid(qn: QuantumNumbers, optics: OpticalState, n_radial: int = 64,
                      n_azimuthal: int = 32, rho_max: Optional[float] = None) -> PolarGrid:
    """Sample the amplitude on a Gauss-Legendre radial by uniform azimuthal grid."""
    if rho_max is None:
        rho_max = optics.sigma * math.sqrt(4.0 * qn.order + 40.0)
    u, wu = roots_legendre(n_radial)
    rho = 0.5 * rho_max * (u + 1.0)
    w = 0.5 * rho_max * wu * rho
    phi = 2 * math.pi * np.arange(n_azimuthal) / n_azimuthal
    values = nslg_wavefunction(qn, optics, rho[:, None], phi[None, :])
    return PolarGrid(rho, w, phi, values)


def grid_rows(grid: PolarGrid) -> Iterable[tuple]:
    """Rows (rho_nm, phi_rad, re, im, density) in radial-major order."""
    for i, r in enumerate(grid.rho):
        for j, p in enumerate(grid.phi):
            v = grid.values[i, j]
            yield (float(r), float(p), float(v.real), float(v.imag), float(abs(v) ** 2))

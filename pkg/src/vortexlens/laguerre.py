"""Generalized Laguerre polynomials and Gauss-Laguerre quadrature rules."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln


def genlaguerre(n: int, alpha: float, x):
    """L_n^alpha(x) by the three-term upward recurrence in n.

    (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}
    """
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_functions(n_max: int, alpha: float, x):
    """Orthonormal Laguerre functions for k = 0..n_max, stacked on axis 0.

    Row k holds sqrt(k! / Gamma(k+alpha+1)) * x**(alpha/2) * exp(-x/2) * L_k^alpha(x),
    which integrate to delta_{kk'} over [0, inf) with measure dx.  The seed is
    formed in log space so that large ``alpha`` and ``x`` neither overflow
    nor underflow prematurely.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    with np.errstate(divide="ignore"):
        log_seed = 0.5 * alpha * np.log(x) - 0.5 * x - 0.5 * gammaln(alpha + 1.0)
    seed = np.exp(log_seed)
    if alpha == 0:
        seed = np.exp(-0.5 * x)
    out[0] = seed
    if n_max == 0:
        return out
    out[1] = (1.0 + alpha - x) * seed / np.sqrt(1.0 + alpha)
    for k in range(1, n_max):
        a = np.sqrt((k + 1.0) * (k + 1.0 + alpha))
        b = np.sqrt(k * (k + alpha))
        out[k + 1] = ((2 * k + 1 + alpha - x) * out[k] - b * out[k - 1]) / a
    return out


def log_norm_factor(n: int, l: int) -> float:
    """log of sqrt(n! / (pi (n+|l|)!)), the mode normalization constant."""
    a = abs(l)
    return 0.5 * (gammaln(n + 1.0) - gammaln(n + a + 1.0) - np.log(np.pi))


@lru_cache(maxsize=256)
def gauss_laguerre_log(order: int, alpha: float):
    """Nodes and log-weights for the weight x**alpha * exp(-x) / Gamma(alpha+1).

    Nodes are the eigenvalues of the Jacobi matrix; weights come from the
    Christoffel sum 1 / sum_k p_k(x_i)**2 over the orthonormal polynomials,
    rescaled on the fly so that far nodes keep a finite log-weight.
    """
    k = np.arange(order, dtype=float)
    diag = 2.0 * k + 1.0 + alpha
    off = np.sqrt(k[1:] * (k[1:] + alpha))
    x = eigh_tridiagonal(diag, off, eigvals_only=True)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    total = np.ones_like(x)
    log_scale = np.zeros_like(x)
    for j in range(order - 1):
        a = math.sqrt((j + 1.0) * (j + 1.0 + alpha))
        b = math.sqrt(j * (j + alpha))
        p_prev, p = p, ((2 * j + 1 + alpha - x) * p - b * p_prev) / a
        total += p * p
        big = np.abs(p) > 1e100
        if np.any(big):
            p[big] *= 1e-100
            p_prev[big] *= 1e-100
            total[big] *= 1e-200
            log_scale[big] += 200.0 * math.log(10.0)
    log_w = -(np.log(total) + log_scale)
    x.setflags(write=False)
    log_w.setflags(write=False)
    return x, log_w


def gauss_laguerre(order: int, alpha: float):
    """Nodes and weights for the weight x**alpha * exp(-x) / Gamma(alpha+1); weights sum to one."""
    x, log_w = gauss_laguerre_log(order, alpha)
    return x, np.exp(log_w)

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from vortexlens.decomposition import (OffAxisParams, landau_coefficient_oracle,
                                      landau_coefficients, landau_coefficients_oracle,
                                      off_axis_coefficients, off_axis_table)
from vortexlens.errors import ConvergenceError, InvalidInputError
from vortexlens.field import BoundaryConditions
from vortexlens.presets import preset
from vortexlens.units import QuantumNumbers, field_context

FIG7 = preset("fig7")


def detuned_boundary(ctx, delta_zeta):
    """sigma_0 with sigma_0' = 0 giving rho_st/rho_L = 1 + delta_zeta (packet narrower than Landau)."""
    zeta = 1.0 + delta_zeta
    d = math.sqrt(2.0 * (zeta * zeta - 1.0))
    xi_1 = 0.5 * (d + math.sqrt(d * d + 4.0))
    return BoundaryConditions(ctx.sigma_L / xi_1)


def _closed(res, m):
    return np.array([res.coefficients[k] for k in range(m + 1)])


@pytest.mark.parametrize("n, l", [(0, 0), (2, -3), (5, 4), (0, 35)])
def test_landau_boundary_gives_single_mode(ctx19, n, l):
    res = landau_coefficients(QuantumNumbers(n, l), BoundaryConditions(ctx19.sigma_L), ctx19)
    a = _closed(res, res.truncation_n_max)
    target = np.zeros_like(a)
    target[n] = 1.0
    assert np.max(np.abs(a - target)) < 1e-10


@pytest.mark.parametrize("panel", sorted(FIG7["panels"]))
def test_figure7_presets(ctx19, panel):
    qn = QuantumNumbers(*FIG7["panels"][panel])
    bc = BoundaryConditions.from_rms(qn, FIG7["rho_0"], FIG7["rho_0_prime"])
    res = landau_coefficients(qn, bc, ctx19)
    assert abs(sum(abs(c) ** 2 for c in res.coefficients.values()) - 1) < 1e-8
    m = res.truncation_n_max
    assert np.max(np.abs(_closed(res, m) - landau_coefficients_oracle(qn, m, bc, ctx19))) < 1e-6


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_peak_count_follows_radial_number(ctx19, n):
    qn = QuantumNumbers(n, 35)
    bc = BoundaryConditions.from_rms(qn, FIG7["rho_0"])
    _, p, _ = landau_coefficients(qn, bc, ctx19).as_arrays()
    inner = (p[1:-1] > p[:-2]) & (p[1:-1] > p[2:])
    peaks = int(np.count_nonzero(inner)) + int(p[0] > p[1]) + int(p[-1] > p[-2])
    assert peaks == n + 1


# moderate mismatch keeps the expansion within a few hundred modes
bc_strategy = st.tuples(st.floats(0.4, 2.5), st.floats(-6e-5, 6e-5), st.floats(-3.0, 3.0))


@given(st.integers(0, 4), st.integers(-5, 5), bc_strategy)
def test_closed_form_matches_quadrature(n, l, b):
    ctx = field_context(1.9)
    qn = QuantumNumbers(n, l)
    bc = BoundaryConditions(b[0] * ctx.sigma_L, b[1], b[2])
    res = landau_coefficients(qn, bc, ctx, tail_tolerance=1e-6)
    m = min(res.truncation_n_max, 40)
    orc = landau_coefficients_oracle(qn, m, bc, ctx)
    assert np.max(np.abs(_closed(res, m) - orc)) < 1e-9


@given(st.integers(0, 3), st.integers(-4, 4), bc_strategy, st.floats(0.05, 3.0))
def test_coefficients_constant_in_time(n, l, b, u):
    ctx = field_context(1.9)
    qn = QuantumNumbers(n, l)
    bc = BoundaryConditions(b[0] * ctx.sigma_L, b[1], b[2], 0.01)
    c0 = landau_coefficients(qn, bc, ctx, tail_tolerance=1e-6).coefficients
    k = n + 1
    later = landau_coefficient_oracle(qn, k, bc, ctx, t=0.01 + u * ctx.T_c)
    assert abs(later - c0[k]) < 1e-9


@pytest.mark.parametrize("n, l", [(0, 0), (0, 3), (2, 1), (4, -2)])
def test_detuning_power_law(ctx19, n, l):
    qn = QuantumNumbers(n, l)
    mags = [np.abs(_closed(landau_coefficients(qn, detuned_boundary(ctx19, dz), ctx19), n + 4))
            for dz in (1e-5, 1e-6)]
    for k in range(n + 4 + 1):
        # d log|a| / d log(delta zeta) -> |n' - n| / 2
        slope = math.log(mags[0][k] / mags[1][k]) / math.log(10.0)
        assert slope == pytest.approx(abs(k - n) / 2, abs=2e-3)


def test_truncation_failure_reports_tail(ctx19):
    qn = QuantumNumbers(0, 0)
    with pytest.raises(ConvergenceError) as info:
        landau_coefficients(qn, BoundaryConditions(1e5), ctx19)
    assert 0 < info.value.achieved < 1


def test_bad_tail_tolerance(ctx19):
    with pytest.raises(InvalidInputError):
        landau_coefficients(QuantumNumbers(0, 0), BoundaryConditions(20.0), ctx19, tail_tolerance=0)


def test_no_tilt_no_coupling():
    p = OffAxisParams(0.0, 1e-6, 5000.0)
    qn = QuantumNumbers(1, 2)
    assert off_axis_coefficients(qn, (1, 2), p) == 1.0
    assert off_axis_coefficients(qn, (1, 3), p) == 0.0
    assert off_axis_table(qn, p) == [(1, 2, 1.0)]


def test_first_neighbour_couplings():
    p = OffAxisParams(1e-3, 1e-6, 5000.0)
    k = p.kappa
    got = {(n2, abs(l2)): c for n2, l2, c in off_axis_table(QuantumNumbers(0, 1), p)[1:]}
    assert set(got) == {(0, 0), (1, 0), (0, 2)}
    assert got[(0, 0)] == pytest.approx(k)
    assert got[(1, 0)] == pytest.approx(k)
    assert got[(0, 2)] == pytest.approx(k * math.sqrt(2))


@given(st.integers(0, 5), st.integers(-20, 20), st.floats(0.0, 1e-2))
def test_couplings_scale_with_kappa(n, l, alpha):
    p = OffAxisParams(alpha, 1e-6, 5000.0)
    for n2, l2, c in off_axis_table(QuantumNumbers(n, l), p)[1:]:
        assert abs(l2 - l) == 1
        assert c <= p.kappa * math.sqrt(n + abs(l) + 1) * (1 + 1e-12)


def test_off_axis_input_checks():
    with pytest.raises(InvalidInputError):
        OffAxisParams(-1.0, 1e-6, 10.0)
    with pytest.raises(InvalidInputError):
        OffAxisParams(0.1, 1e-6, 0.0)

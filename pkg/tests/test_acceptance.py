"""The twelve acceptance criteria, one test each, at their stated tolerances."""
import math
import os
import time
from fractions import Fraction

import numpy as np

from vortexlens.cli import main
from vortexlens.decomposition import (OffAxisParams, landau_coefficients,
                                      landau_coefficients_oracle, off_axis_table)
from vortexlens.emittance import classicality_window, emittance_field, emittance_free
from vortexlens.field import (BoundaryConditions, comparison_metrics, field_dispersion, field_gouy,
                              field_state, oscillation_params, vanishing_field_limit_check)
from vortexlens.free import OpticalState, WaistSpec
from vortexlens.oracle import FIELD, StateSample, integrate_optical, moment_emittance
from vortexlens.presets import FIGURE_IDS, preset
from vortexlens.units import QuantumNumbers, field_context
from vortexlens.wavefunction import gram_matrix, projection_residual


def _detuned_boundary(ctx, delta_zeta):
    # sigma_0' = 0 and sigma_0 < sigma_L with sigma_st/sigma_L = 1 + delta_zeta
    zeta = 1.0 + delta_zeta
    d = math.sqrt(2.0 * (zeta * zeta - 1.0))
    return BoundaryConditions(ctx.sigma_L * 2.0 / (d + math.sqrt(d * d + 4.0)))


def test_criterion_01_closed_form_vs_ode(acceptance_report):
    ctx = field_context(1.9)
    cases = []
    p3 = preset("fig3")
    qn3 = QuantumNumbers(p3["n"], p3["l"])
    for panel, rho_0 in sorted(p3["panels"].items()):
        cases.append((f"3{panel}", qn3, BoundaryConditions.from_rms(qn3, rho_0, p3["rho_0_prime"])))
    p5 = preset("fig5")
    qn5 = QuantumNumbers(p5["n"], p5["l"])
    cases.append(("5", qn5, BoundaryConditions.from_rms(qn5, p5["rho_0"], p5["rho_0_prime"])))
    worst_dev, worst_time, ok = 0.0, 0.0, True
    for _, qn, bc in cases:
        op = oscillation_params(bc, ctx)
        start = time.perf_counter()
        run = integrate_optical(FIELD, field_dispersion(op, ctx, bc.t_0), ctx.T_c / 1e5,
                                bc.t_0 + 2 * ctx.T_c, qn, ctx)
        elapsed = time.perf_counter() - start
        dev = float(np.max(np.abs(run.sigma / field_dispersion(op, ctx, run.t).sigma - 1)))
        worst_dev, worst_time = max(worst_dev, dev), max(worst_time, elapsed)
        ok &= dev < 1e-8 and elapsed < 5.0
    acceptance_report(1, "closed form vs RK4", ok,
                      f"max rel dev {worst_dev:.2e} (< 1e-8), slowest {worst_time:.2f} s (< 5 s)")
    assert ok


def test_criterion_02_landau_scales(acceptance_report):
    ctx = field_context(1.9)
    rho_L = ctx.sigma_L * math.sqrt(QuantumNumbers(0, 3).order)
    ok = abs(ctx.sigma_L - 26) <= 0.5 and abs(rho_L - 52.7) <= 0.5 and abs(ctx.T_c - 0.0188) <= 5e-4
    acceptance_report(2, "Landau scales at 1.9 T", ok,
                      f"sigma_L {ctx.sigma_L:.3f} nm, rho_L {rho_L:.3f} nm, T_c {ctx.T_c:.5f} ns")
    assert ok


def test_criterion_03_diffraction_time(acceptance_report):
    tau = WaistSpec(3.25).tau_d
    ok = abs(tau / 9e-5 - 1) < 0.05
    acceptance_report(3, "diffraction time", ok, f"tau_d {tau:.4e} ns vs 9e-5 ns ({tau / 9e-5 - 1:+.1%})")
    assert ok


def test_criterion_04_stationary_radius_ratio(acceptance_report):
    p = preset("schattschneider")
    ctx = field_context(p["H"])
    bc = BoundaryConditions(p["sigma_0"], p["sigma_0_prime"])
    m = comparison_metrics(bc, ctx)
    ratio = oscillation_params(bc, ctx).sigma_st / ctx.sigma_L
    ok = abs(ratio - 20.7) <= 0.2 and abs(m.xi_1 - 0.76) <= 0.01 and abs(m.xi_2 - 29.21) <= 0.05
    acceptance_report(4, "lens stationary radius", ok,
                      f"rho_st/rho_L {ratio:.3f} (20.7), xi_1 {m.xi_1:.4f} (0.76), xi_2 {m.xi_2:.3f} (29.21)")
    assert ok


def test_criterion_05_gouy_periodicity(acceptance_report):
    ctx = field_context(1.9)
    p = preset("fig4")
    worst = 0.0
    for n, l in p["modes"]:
        qn = QuantumNumbers(n, l)
        op = oscillation_params(BoundaryConditions.from_rms(qn, p["rho_0"], p["rho_0_prime"], p["phi_0"]), ctx)
        t = np.linspace(0.0, 2 * ctx.T_c, 257)
        gain = field_gouy(qn, op, ctx, t + ctx.T_c) - field_gouy(qn, op, ctx, t)
        worst = max(worst, float(np.max(np.abs(gain - (qn.order + l) * math.pi))))
    ok = worst < 1e-6
    acceptance_report(5, "Gouy gain per period", ok, f"max |gain - (2n+|l|+l+1)pi| {worst:.2e} rad (< 1e-6)")
    assert ok


def test_criterion_06_decomposition(acceptance_report):
    ctx = field_context(1.9)
    p = preset("fig7")
    worst_unit, worst_oracle = 0.0, 0.0
    for panel, (n, l) in sorted(p["panels"].items()):
        qn = QuantumNumbers(n, l)
        bc = BoundaryConditions.from_rms(qn, p["rho_0"], p["rho_0_prime"])
        res = landau_coefficients(qn, bc, ctx)
        worst_unit = max(worst_unit, abs(math.fsum(abs(c) ** 2 for c in res.coefficients.values()) - 1))
        m = res.truncation_n_max
        closed = np.array([res.coefficients[k] for k in range(m + 1)])
        worst_oracle = max(worst_oracle, float(np.max(np.abs(closed - landau_coefficients_oracle(qn, m, bc, ctx)))))
    worst_landau = 0.0
    for n, l in sorted(set(p["panels"].values())):
        qn = QuantumNumbers(n, l)
        res = landau_coefficients(qn, BoundaryConditions(ctx.sigma_L), ctx)
        for k, c in res.coefficients.items():
            worst_landau = max(worst_landau, abs(c - (1.0 if k == n else 0.0)))
    ok = worst_unit < 1e-8 and worst_oracle < 1e-6 and worst_landau < 1e-10
    acceptance_report(6, "Landau decomposition", ok,
                      f"|sum|a|^2-1| {worst_unit:.1e}, closed vs quadrature {worst_oracle:.1e}, "
                      f"Landau-boundary deviation {worst_landau:.1e}")
    assert ok


def test_criterion_07_detuning_scaling(acceptance_report):
    ctx = field_context(1.9)
    delta = 1e-3
    target = 0.5 * math.log(delta)
    # the slope of log|a| against |n'-n| is free of mode-dependent prefactors
    # only for the Gaussian mode; the fit runs over n' = 0..8
    res = landau_coefficients(QuantumNumbers(0, 0), _detuned_boundary(ctx, delta), ctx)
    k = np.arange(9)
    slope = np.polyfit(k, np.log([abs(res.coefficients[i]) for i in k]), 1)[0]
    # reported only: local exponent d ln|a| / d ln(dzeta) at 1e-3 for the Fig. 7 quantum numbers
    worst_power = 0.0
    h = 1e-3
    for n, l in sorted(set(preset("fig7")["panels"].values())):
        qn = QuantumNumbers(n, l)
        up = landau_coefficients(qn, _detuned_boundary(ctx, delta * (1 + h)), ctx).coefficients
        down = landau_coefficients(qn, _detuned_boundary(ctx, delta * (1 - h)), ctx).coefficients
        for kk in range(max(0, n - 4), n + 5):
            if kk != n:
                power = math.log(abs(up[kk]) / abs(down[kk])) / math.log((1 + h) / (1 - h))
                worst_power = max(worst_power, abs(power / (abs(kk - n) / 2) - 1))
    ok = abs(slope / target - 1) < 0.05
    acceptance_report(7, "small-detuning scaling", ok,
                      f"Gaussian-mode slope {slope:.4f} vs 0.5 ln(dzeta) {target:.4f} "
                      f"({slope / target - 1:+.2%}); info: worst local dzeta exponent error over "
                      f"Fig. 7 modes {worst_power:.1%}")
    assert ok


def test_criterion_08_orthonormality_and_completeness(acceptance_report):
    optics = OpticalState(30.0, 2e-4, 0.7, 0.0)
    modes = [QuantumNumbers(n, l) for n in range(7) for l in range(-4, 5)]
    G = gram_matrix(modes, optics)
    off = float(np.max(np.abs(G - np.diag(np.diag(G)))))
    s = 25.0
    norm = 1.0 / math.sqrt(math.pi * s * s)
    test_fn = lambda x, y: norm * np.exp(-((x - 12.0) ** 2 + (y + 5.0) ** 2) / (2 * s * s))
    res = [projection_residual(test_fn, OpticalState(20.0, 0.0, 0.0, 0.0), k, k) for k in range(9)]
    monotone = all(b < a for a, b in zip(res, res[1:]))
    ok = off < 1e-8 and monotone
    acceptance_report(8, "orthonormality and completeness", ok,
                      f"max off-diagonal {off:.1e}; residuals {res[0]:.2e} -> {res[-1]:.2e}, "
                      f"monotone {monotone}")
    assert ok


def test_criterion_09_emittance(acceptance_report):
    ctx = field_context(1.9)
    p = preset("fig8")
    zero = emittance_free(QuantumNumbers(0, 0)) == 0.0
    worst = 0.0
    for l in p["l_values"]:
        qn = QuantumNumbers(p["n"], l)
        op = oscillation_params(BoundaryConditions(p["sigma_0"], p["sigma_0_prime"]), ctx)
        for u in np.linspace(0.0, 1.0, 9):
            t = u * ctx.T_c
            m = moment_emittance(StateSample(qn, field_state(qn, op, ctx, t), ctx))
            worst = max(worst, abs(m / emittance_field(qn, op, ctx, t) - 1))
    w = classicality_window(QuantumNumbers(0, -3))
    exact = w is not None and (w.lo, w.hi) == (Fraction(13, 12), Fraction(3, 2))
    ok = zero and worst < 1e-8 and exact
    acceptance_report(9, "emittance identities", ok,
                      f"eps_f(0,0)==0 {zero}; closed vs moments {worst:.1e}; window {w.lo}..{w.hi}")
    assert ok


def test_criterion_10_vanishing_field(acceptance_report):
    p = preset("fig6")
    qn = QuantumNumbers(p["n"], p["l"])
    w = WaistSpec(p["rho_w"] / math.sqrt(qn.order), p["t_g"])
    bc = BoundaryConditions.from_free(qn, w, p["t_0"])
    d = vanishing_field_limit_check(bc, w, p["fields"], np.linspace(p["t_min"], p["t_max"], p["samples"]))
    weak = vanishing_field_limit_check(bc, w, [1e-6], np.linspace(p["t_0"], p["t_0"] + w.tau_d, 2001))[0]
    ordered = all(a > b for a, b in zip(d, d[1:]))
    ok = ordered and weak < 1e-3
    acceptance_report(10, "vanishing-field limit", ok,
                      "deviations " + ", ".join(f"{h} T: {x:.7e}" for h, x in zip(p["fields"], d))
                      + f"; 1e-6 T: {weak:.1e}")
    assert ok


def test_criterion_11_off_axis_bound(acceptance_report):
    p = preset("offaxis_bound")
    alpha = 1e-2
    params = OffAxisParams(alpha, p["mean_p_z"], p["sigma_t0"])
    k2 = params.kappa**2
    worst_c, worst_unit = 0.0, 0.0
    l_values = sorted({s * v for v in (0, 1, 10, 100, 1000, p["l_max"]) for s in (1, -1)})
    for n in range(p["n_max"] + 1):
        for l in l_values:
            off = [c for _, _, c in off_axis_table(QuantumNumbers(n, l), params)[1:]]
            worst_c = max(worst_c, max(off))
            worst_unit = max(worst_unit, math.fsum(c * c for c in off) / k2)
    ok = worst_c <= 1e-2 * alpha and worst_unit < 10.0
    acceptance_report(11, "off-axis bound", ok,
                      f"max |c| {worst_c / alpha:.4f} alpha (<= 0.01 alpha); "
                      f"max |sum|c|^2-1| {worst_unit:.0f} kappa^2 (< 10 kappa^2)")
    assert ok


def _tree(directory):
    out = {}
    for name in sorted(os.listdir(directory)):
        with open(os.path.join(directory, name), "rb") as fh:
            out[name] = fh.read()
    return out


SCENARIO = """
[source]
n = 0
l = 3
rho_w_nm = 50
energy_keV = 300
[geometry]
z_g_mm = 0
z_0_mm = 0.02
[field]
H_tesla = 1.9
[output]
periods = 2
samples = 501
series = rho, gouy, emittance, decomposition, validity
"""


def test_criterion_12_determinism(acceptance_report, tmp_path):
    same = True
    for fid in FIGURE_IDS:
        runs = []
        for k in range(2):
            out = tmp_path / f"fig{fid}_{k}"
            assert main(["figure", fid, "--out", str(out)]) == 0
            runs.append(_tree(out))
        same &= runs[0] == runs[1]
    cfg = tmp_path / "scenario.ini"
    cfg.write_text(SCENARIO)
    runs = []
    for k in range(2):
        out = tmp_path / f"scenario_{k}"
        assert main(["scenario", str(cfg), "--out", str(out)]) == 0
        runs.append(_tree(out))
    same &= runs[0] == runs[1]
    acceptance_report(12, "determinism", same, f"{len(FIGURE_IDS)} figures and one scenario, two runs each")
    assert same

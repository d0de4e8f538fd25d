"""Data series behind each reproducible figure, built from the preset table."""
from __future__ import annotations

import math

import numpy as np

from .emittance import (classicality_window, count_local_maxima_per_period, dips_below_free,
                        emittance_field, emittance_free, emittance_landau)
from .errors import InvalidInputError
from .export import Table
from .field import (BoundaryConditions, classify_regime, comparison_metrics, field_dispersion,
                    field_gouy, oscillation_params, vanishing_field_limit_check)
from .free import WaistSpec, free_energy, free_rms_radius
from .presets import FIGURE_IDS, preset
from .units import LAMBDA_C_NM, QuantumNumbers, field_context, kinetic_energy_to_beta


def _grid(t0, span, samples):
    return np.linspace(t0, t0 + span, int(samples))


def _rows(*cols):
    return [tuple(float(c[i]) for c in cols) for i in range(len(cols[0]))]


def _oscillation_meta(qn, bc, ctx):
    op = oscillation_params(bc, ctx)
    m = comparison_metrics(bc, ctx)
    N = math.sqrt(qn.order)
    return op, {
        "sigma_0_nm": bc.sigma_0, "sigma_0_prime": bc.sigma_0_prime,
        "sigma_st_nm": op.sigma_st, "rho_st_nm": op.sigma_st * N,
        "rho_L_nm": ctx.sigma_L * N, "theta_rad": op.theta, "s": op.s,
        "amplitude_ratio": op.amplitude_ratio, "regime": classify_regime(op, ctx).value,
        "xi_1": m.xi_1, "xi_2": m.xi_2, "zeta": m.zeta, "T_c_ns": ctx.T_c,
    }


def _radius_table(name, qn, bc, ctx, periods, samples):
    op, meta = _oscillation_meta(qn, bc, ctx)
    t = _grid(bc.t_0, periods * ctx.T_c, samples)
    rho = field_dispersion(op, ctx, t).sigma * math.sqrt(qn.order)
    n = len(t)
    rows = _rows(t, rho, np.full(n, meta["rho_L_nm"]), np.full(n, meta["rho_st_nm"]))
    return Table(name, ("t_ns", "rho_nm", "rho_L_nm", "rho_st_nm"), rows, meta)


def figure_2():
    p = preset("fig2")
    qn = QuantumNumbers(p["n"], p["l"])
    w = WaistSpec(p["sigma_w"], 0.0)
    beta = kinetic_energy_to_beta(p["energy_keV"])
    t = _grid(p["t_min"], p["t_max"] - p["t_min"], p["samples"])
    z_mm = beta * 2.99792458e8 * t * 1e-6
    rho = free_rms_radius(qn, w, t)
    meta = {"tau_d_ns": w.tau_d, "beta": beta, "rho_w_nm": p["sigma_w"] * math.sqrt(qn.order),
            "mean_energy_keV": free_energy(qn, w, keV=True)}
    return [Table("figure2", ("t_ns", "z_mm", "rho_nm"), _rows(t, z_mm, rho), meta)], p


def figure_3():
    p = preset("fig3")
    qn = QuantumNumbers(p["n"], p["l"])
    ctx = field_context(p["H"])
    tables = []
    for panel, rho_0 in sorted(p["panels"].items()):
        bc = BoundaryConditions.from_rms(qn, rho_0, p["rho_0_prime"])
        tables.append(_radius_table(f"figure3{panel}", qn, bc, ctx, p["periods"], p["samples"]))
    return tables, p


def figure_4():
    p = preset("fig4")
    ctx = field_context(p["H"])
    tables = []
    for n, l in p["modes"]:
        qn = QuantumNumbers(n, l)
        bc = BoundaryConditions.from_rms(qn, p["rho_0"], p["rho_0_prime"], p["phi_0"])
        op = oscillation_params(bc, ctx)
        t = _grid(bc.t_0, p["periods"] * ctx.T_c, p["samples"])
        phase = field_gouy(qn, op, ctx, t)
        gain = field_gouy(qn, op, ctx, ctx.T_c) - field_gouy(qn, op, ctx, 0.0)
        meta = {"n": n, "l": l, "gain_per_period_rad": gain,
                "gain_per_period_over_pi": gain / math.pi,
                "expected_gain_over_pi": qn.order + l,
                "rho_0_candidates_nm": p["rho_0_candidates"], "rho_0_used_nm": p["rho_0"]}
        tables.append(Table(f"figure4_n{n}_l{l}", ("t_ns", "gouy_rad"), _rows(t, phase), meta))
    return tables, p


def figure_5():
    p = preset("fig5")
    qn = QuantumNumbers(p["n"], p["l"])
    ctx = field_context(p["H"])
    bc = BoundaryConditions.from_rms(qn, p["rho_0"], p["rho_0_prime"])
    op, meta = _oscillation_meta(qn, bc, ctx)
    beta = kinetic_energy_to_beta(p["energy_keV"])
    t = _grid(0.0, p["periods"] * ctx.T_c, p["samples"])
    st = field_dispersion(op, ctx, t)
    z_mm = beta * 2.99792458e8 * t * 1e-6
    meta.update({"beta": beta, "sigma_L_nm": ctx.sigma_L,
                 "rho_st_over_rho_L": op.sigma_st / ctx.sigma_L})
    rows = _rows(t, z_mm, st.sigma * math.sqrt(qn.order), st.sigma, np.full(len(t), ctx.sigma_L))
    return [Table("figure5", ("t_ns", "z_mm", "rho_nm", "sigma_nm", "sigma_L_nm"), rows, meta)], p


def figure_6():
    p = preset("fig6")
    qn = QuantumNumbers(p["n"], p["l"])
    w = WaistSpec(p["rho_w"] / math.sqrt(qn.order), p["t_g"])
    bc = BoundaryConditions.from_free(qn, w, p["t_0"])
    t = _grid(p["t_min"], p["t_max"] - p["t_min"], p["samples"])
    devs = vanishing_field_limit_check(bc, w, p["fields"], t)
    tables = []
    for H, dev in zip(p["fields"], devs):
        ctx = field_context(H)
        op = oscillation_params(bc, ctx)
        rho = field_dispersion(op, ctx, t).sigma * math.sqrt(qn.order)
        tables.append(Table(f"figure6_H{H:g}T", ("t_ns", "rho_nm"), _rows(t, rho),
                            {"H_tesla": H, "max_relative_deviation": dev}))
    tables.append(Table("figure6_free", ("t_ns", "rho_nm"), _rows(t, free_rms_radius(qn, w, t)),
                        {"tau_d_ns": w.tau_d}))
    return tables, p


def figure_8():
    p = preset("fig8")
    ctx = field_context(p["H"])
    tables = []
    for l in p["l_values"]:
        qn = QuantumNumbers(p["n"], l)
        bc = BoundaryConditions(p["sigma_0"], p["sigma_0_prime"])
        op = oscillation_params(bc, ctx)
        t = _grid(0.0, p["periods"] * ctx.T_c, p["samples"])
        eps = emittance_field(qn, op, ctx, t) / LAMBDA_C_NM
        one = np.linspace(0.0, ctx.T_c, 4000, endpoint=False)
        window = classicality_window(qn)
        meta = {"l": l, "maxima_per_period": count_local_maxima_per_period(emittance_field(qn, op, ctx, one)),
                "dips_below_free": dips_below_free(qn, op), "sigma_st_sq_over_sigma_L_sq": op.ratio,
                "classicality_window": None if window is None else list(window.as_floats())}
        n = len(t)
        rows = _rows(t, eps, np.full(n, emittance_free(qn) / LAMBDA_C_NM),
                     np.full(n, emittance_landau(qn) / LAMBDA_C_NM))
        tables.append(Table(f"figure8_l{l}", ("t_ns", "eps_H_lambdaC", "eps_f_lambdaC", "eps_L_lambdaC"),
                            rows, meta))
    return tables, p


def figure_b1():
    p = preset("figB1")
    qn = QuantumNumbers(p["n"], p["l"])
    ctx = field_context(p["H"])
    tables = []
    for panel, rate in sorted(p["panels"].items()):
        bc = BoundaryConditions.from_rms(qn, p["rho_0"], rate)
        tables.append(_radius_table(f"figureB1{panel}", qn, bc, ctx, p["periods"], p["samples"]))
    return tables, p


_BUILDERS = {"2": figure_2, "3": figure_3, "4": figure_4, "5": figure_5,
             "6": figure_6, "8": figure_8, "B1": figure_b1}


def build_figure(figure_id: str):
    """(tables, preset parameters) for a figure id in FIGURE_IDS."""
    key = str(figure_id).upper() if str(figure_id).lower().startswith("b") else str(figure_id)
    if key not in FIGURE_IDS:
        raise InvalidInputError(f"unknown figure id {figure_id!r}; choose from {', '.join(FIGURE_IDS)}")
    return _BUILDERS[key]()

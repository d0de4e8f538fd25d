"""Command-line interface: ``vortexlens <command> [options]``.

Exit codes: 0 success, 2 invalid input, 3 convergence failure.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .decomposition import (OffAxisParams, landau_coefficients, landau_coefficients_oracle,
                            off_axis_table)
from .emittance import classicality_window, emittance_field, emittance_free, emittance_landau
from .errors import ConvergenceError, InvalidInputError
from .export import Table, run_metadata, write_tables
from .field import (BoundaryConditions, classify_regime, comparison_metrics, field_energy,
                    field_gouy, field_state, oscillation_params)
from .figures import build_figure
from .free import OpticalState, WaistSpec, free_energy, free_state
from .presets import preset
from .scenario import load_config, run_scenario, scenario_parameters
from .units import LAMBDA_C_NM, QuantumNumbers, field_context
from .validity import validity
from .wavefunction import grid_rows, sample_polar_grid

EXIT_OK, EXIT_INVALID, EXIT_CONVERGENCE = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _qn(args) -> QuantumNumbers:
    return QuantumNumbers(args.n, args.l)


def _boundary(args, qn) -> BoundaryConditions:
    return BoundaryConditions(args.sigma0_nm, args.sigma0_prime, args.phi0, 0.0)


def _times(args, t_default_span):
    span = args.t_max_ns if args.t_max_ns is not None else t_default_span
    if span <= 0:
        raise InvalidInputError("--t-max-ns must be positive")
    if args.samples < 2:
        raise InvalidInputError("--samples must be >= 2")
    return np.linspace(0.0, span, args.samples)


def _emit(args, command, tables, params, preset_id=None, directory=False):
    meta = run_metadata(command, params, preset_id)
    write_tables(tables, meta, args.out, as_json=args.json, stream=sys.stdout, directory=directory)


def cmd_ctx(args):
    ctx = field_context(args.field_tesla)
    t = Table("ctx", ("H_tesla", "sigma_L_nm", "omega_rad_per_ns", "T_c_ns", "rho_L_nm"),
              [(ctx.H, ctx.sigma_L, ctx.omega, ctx.T_c, ctx.sigma_L * math.sqrt(_qn(args).order))])
    _emit(args, "ctx", [t], {"H_tesla": ctx.H, "n": args.n, "l": args.l})


def cmd_free(args):
    qn = _qn(args)
    w = WaistSpec(args.sigma0_nm, args.t_g_ns)
    t = _times(args, 5.0 * w.tau_d) + args.t_g_ns
    st = free_state(qn, w, t)
    rows = [(float(a), float(b), float(c), float(b) * math.sqrt(qn.order), float(d))
            for a, b, c, d in zip(t, st.sigma, st.sigma_prime, st.phi_G)]
    meta = {"tau_d_ns": w.tau_d, "mean_energy_keV": free_energy(qn, w, keV=True)}
    tab = Table("free", ("t_ns", "sigma_nm", "sigma_prime", "rho_nm", "gouy_rad"), rows, meta)
    _emit(args, "free", [tab], {"n": qn.n, "l": qn.l, "sigma_w_nm": w.sigma_w, "t_g_ns": w.t_g})


def _field_setup(args):
    qn = _qn(args)
    ctx = field_context(args.field_tesla)
    bc = _boundary(args, qn)
    op = oscillation_params(bc, ctx)
    return qn, ctx, bc, op


def _field_params(args):
    return {"n": args.n, "l": args.l, "H_tesla": args.field_tesla, "sigma0_nm": args.sigma0_nm,
            "sigma0_prime": args.sigma0_prime, "phi0_rad": args.phi0}


def cmd_field(args):
    qn, ctx, bc, op = _field_setup(args)
    t = _times(args, 2.0 * ctx.T_c)
    st = field_state(qn, op, ctx, t)
    m = comparison_metrics(bc, ctx)
    root_n = math.sqrt(qn.order)
    rows = [(float(a), float(b), float(c), float(b) * root_n, float(d))
            for a, b, c, d in zip(t, st.sigma, st.sigma_prime, st.phi_G)]
    meta = {"sigma_st_nm": op.sigma_st, "rho_st_nm": op.sigma_st * root_n,
            "rho_L_nm": ctx.sigma_L * root_n, "theta_rad": op.theta, "s": op.s,
            "amplitude_ratio": op.amplitude_ratio, "regime": classify_regime(op, ctx).value,
            "xi_1": m.xi_1, "xi_2": m.xi_2, "zeta": m.zeta, "delta_zeta": m.delta_zeta,
            "mean_energy_keV": field_energy(qn, op, ctx, keV=True), "T_c_ns": ctx.T_c}
    tab = Table("field", ("t_ns", "sigma_nm", "sigma_prime", "rho_nm", "gouy_rad"), rows, meta)
    _emit(args, "field", [tab], _field_params(args))


def cmd_gouy(args):
    qn, ctx, bc, op = _field_setup(args)
    t = _times(args, 3.0 * ctx.T_c)
    ph = field_gouy(qn, op, ctx, t)
    gain = field_gouy(qn, op, ctx, ctx.T_c) - bc.phi_0
    tab = Table("gouy", ("t_ns", "gouy_rad"), [(float(a), float(b)) for a, b in zip(t, ph)],
                {"gain_per_period_rad": gain, "gain_per_period_over_pi": gain / math.pi})
    _emit(args, "gouy", [tab], _field_params(args))


def cmd_decompose(args):
    preset_id = None
    if args.preset:
        p = preset("fig7")
        panel = args.preset.lower().removeprefix("fig7")
        if panel not in p["panels"]:
            raise InvalidInputError(f"unknown decomposition preset {args.preset!r}; use fig7a..fig7l")
        n, l = p["panels"][panel]
        qn = QuantumNumbers(n, l)
        ctx = field_context(p["H"])
        bc = BoundaryConditions.from_rms(qn, p["rho_0"], p["rho_0_prime"])
        preset_id = f"fig7{panel}"
        params = {"n": n, "l": l, "H_tesla": p["H"], "rho0_nm": p["rho_0"],
                  "rho0_prime": p["rho_0_prime"]}
    else:
        qn, ctx, bc, _ = _field_setup(args)
        params = _field_params(args)
    params["tail_tolerance"] = args.tail_tol
    res = landau_coefficients(qn, bc, ctx, args.tail_tol)
    k, p2, ph = res.as_arrays()
    if args.oracle:
        a = landau_coefficients_oracle(qn, int(k[-1]), bc, ctx)
        p2, ph = np.abs(a) ** 2, np.angle(a)
        params["route"] = "quadrature"
    rows = [(int(a), float(b), float(c)) for a, b, c in zip(k, p2, ph)]
    tab = Table("decompose", ("n_prime", "abs_a_sq", "phase_rad"), rows,
                {"zeta": res.zeta, "truncation_n_max": res.truncation_n_max, "tail": res.tail})
    _emit(args, "decompose", [tab], params, preset_id)


def cmd_emittance(args):
    qn, ctx, bc, op = _field_setup(args)
    t = _times(args, 2.0 * ctx.T_c)
    eps = emittance_field(qn, op, ctx, t) / LAMBDA_C_NM
    ef, el = emittance_free(qn) / LAMBDA_C_NM, emittance_landau(qn) / LAMBDA_C_NM
    win = classicality_window(qn)
    tab = Table("emittance", ("t_ns", "eps_H_lambdaC", "eps_f_lambdaC", "eps_L_lambdaC"),
                [(float(a), float(b), ef, el) for a, b in zip(t, eps)],
                {"per_axis_factor": 0.5,
                 "classicality_window": None if win is None else list(win.as_floats()),
                 "sigma_st_sq_over_sigma_L_sq": op.ratio})
    _emit(args, "emittance", [tab], _field_params(args))


def cmd_offaxis(args):
    qn = _qn(args)
    p = OffAxisParams(args.alpha, args.pz_inv_nm, args.sigma_t0_nm)
    rows = [(a, b, c) for a, b, c in off_axis_table(qn, p)]
    off = [c for a, b, c in rows[1:]]
    tab = Table("offaxis", ("n_prime", "l_prime", "abs_c"), rows,
                {"kappa": p.kappa, "max_offdiagonal": max(off) if off else 0.0,
                 "sum_abs_c_sq_minus_1": math.fsum(c * c for c in off)})
    _emit(args, "offaxis", [tab], {"n": qn.n, "l": qn.l, "alpha_rad": p.alpha,
                                   "mean_p_z_inv_nm": p.mean_p_z, "sigma_t0_nm": p.sigma_t0})


def cmd_validate(args):
    qn = _qn(args)
    ctx = field_context(args.field_tesla) if args.field_tesla is not None else None
    bc = None
    if ctx is not None and args.sigma0_nm is not None:
        bc = BoundaryConditions(args.sigma0_nm, args.sigma0_prime, 0.0, 0.0)
    rep = validity(qn, rho_w=args.rho_w_nm, ctx=ctx, bc=bc, threshold=args.threshold)
    if not rep.checks:
        raise InvalidInputError("give --rho-w-nm and/or --field-tesla (with optional --sigma0-nm)")
    rows = [(c.name, c.lhs, c.rhs, c.margin, c.nonrelativistic) for c in rep.checks]
    tab = Table("validate", ("check", "lhs", "rhs", "margin", "nonrelativistic"), rows,
                {"threshold": args.threshold})
    _emit(args, "validate", [tab], {"n": qn.n, "l": qn.l, "rho_w_nm": args.rho_w_nm,
                                    "H_tesla": args.field_tesla, "sigma0_nm": args.sigma0_nm,
                                    "sigma0_prime": args.sigma0_prime})


def cmd_wavefunction(args):
    qn = _qn(args)
    optics = OpticalState(args.sigma0_nm, args.sigma0_prime, args.phi0, 0.0)
    grid = sample_polar_grid(qn, optics, args.radial, args.azimuthal)
    tab = Table("wavefunction", ("rho_nm", "phi_rad", "re", "im", "density"), list(grid_rows(grid)))
    _emit(args, "wavefunction", [tab], {"n": qn.n, "l": qn.l, "sigma_nm": args.sigma0_nm,
                                        "sigma_prime": args.sigma0_prime, "phi_G_rad": args.phi0})


def cmd_figure(args):
    tables, params = build_figure(args.figure_id)
    fid = str(args.figure_id).upper()
    meta = run_metadata(f"figure{fid}", params, f"fig{fid}")
    write_tables(tables, meta, args.out, as_json=args.json, directory=True)


def cmd_scenario(args):
    sc = load_config(args.config)
    tables = run_scenario(sc)
    meta = run_metadata("scenario", scenario_parameters(sc))
    write_tables(tables, meta, args.out, as_json=args.json, directory=True)


def _common(p, quantum=True, field=False, boundary=False, times=False):
    if quantum:
        p.add_argument("--n", type=int, default=0, help="radial quantum number")
        p.add_argument("--l", type=int, default=0, help="orbital angular momentum")
    if field:
        p.add_argument("--field-tesla", type=float, required=True)
    if boundary:
        p.add_argument("--sigma0-nm", type=float, required=True, help="dispersion at entry (nm)")
        p.add_argument("--sigma0-prime", type=float, default=0.0, help="d sigma / d(ct) at entry")
        p.add_argument("--phi0", type=float, default=0.0, help="Gouy phase at entry (rad)")
    if times:
        p.add_argument("--t-max-ns", type=float, default=None)
        p.add_argument("--samples", type=int, default=1001)
    p.add_argument("--out", default=None, help="output file (stdout when omitted)")
    p.add_argument("--json", action="store_true", help="write one JSON document")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vortexlens", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ctx", help="field-derived scales")
    _common(p, field=True)
    p.set_defaults(func=cmd_ctx)

    p = sub.add_parser("free", help="free-space optical functions")
    _common(p, times=True)
    p.add_argument("--sigma0-nm", type=float, required=True, help="waist dispersion (nm)")
    p.add_argument("--t-g-ns", type=float, default=0.0, help="generation instant (ns)")
    p.set_defaults(func=cmd_free)

    for name, func, text in (("field", cmd_field, "in-field optical functions"),
                             ("gouy", cmd_gouy, "in-field Gouy phase"),
                             ("emittance", cmd_emittance, "in-field quantum emittance")):
        p = sub.add_parser(name, help=text)
        _common(p, field=True, boundary=True, times=True)
        p.set_defaults(func=func)

    p = sub.add_parser("decompose", help="Landau-state expansion")
    p.add_argument("--preset", default=None, help="fig7a .. fig7l")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--field-tesla", type=float, default=None)
    p.add_argument("--sigma0-nm", type=float, default=None)
    p.add_argument("--sigma0-prime", type=float, default=0.0)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--tail-tol", type=float, default=1e-10)
    p.add_argument("--oracle", action="store_true", help="use the quadrature route")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("offaxis", help="first-order tilt couplings")
    _common(p)
    p.add_argument("--alpha", type=float, required=True, help="tilt angle (rad)")
    p.add_argument("--pz-inv-nm", type=float, required=True, help="mean longitudinal momentum (1/nm)")
    p.add_argument("--sigma-t0-nm", type=float, required=True)
    p.set_defaults(func=cmd_offaxis)

    p = sub.add_parser("validate", help="nonrelativistic validity margins")
    _common(p)
    p.add_argument("--rho-w-nm", type=float, default=None)
    p.add_argument("--field-tesla", type=float, default=None)
    p.add_argument("--sigma0-nm", type=float, default=None)
    p.add_argument("--sigma0-prime", type=float, default=0.0)
    p.add_argument("--threshold", type=float, default=10.0)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("wavefunction", help="amplitude on a polar grid")
    _common(p, boundary=True)
    p.add_argument("--radial", type=int, default=64)
    p.add_argument("--azimuthal", type=int, default=32)
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("figure", help="data behind a figure")
    p.add_argument("figure_id", help="2, 3, 4, 5, 6, 8 or B1")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("scenario", help="run a source -> solenoid scenario")
    p.add_argument("config")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scenario)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "decompose" and not args.preset and (args.field_tesla is None or args.sigma0_nm is None):
        parser.exit(EXIT_INVALID, "vortexlens decompose: give --preset or --field-tesla and --sigma0-nm\n")
    try:
        args.func(args)
    except InvalidInputError as exc:
        print(f"vortexlens: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConvergenceError as exc:
        extra = "" if exc.achieved is None else f" (achieved {exc.achieved:.3e})"
        print(f"vortexlens: convergence failure: {exc}{extra}", file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Source -> drift -> solenoid scenarios read from INI-style config files.

Schema (unknown sections or keys are errors)::

    [source]     n, l, sigma_w_nm | rho_w_nm, energy_keV
    [geometry]   z_g_mm, z_0_mm                  (needs a source waist)
    [field]      H_tesla
    [boundary]   sigma0_nm | rho0_nm, sigma0_prime | rho0_prime, phi0_rad
    [output]     periods | t_max_ns, samples, series, tail_tolerance

Either ``[geometry]`` with a waist or an explicit ``[boundary]`` fixes the
state at field entry.  ``series`` is a comma list drawn from
rho, gouy, emittance, decomposition, validity.  Longitudinal motion maps
z to t at the constant speed of the given kinetic energy.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .decomposition import landau_coefficients
from .emittance import emittance_field, emittance_free, emittance_landau
from .errors import InvalidInputError
from .export import Table
from .field import (BoundaryConditions, classify_regime, comparison_metrics, field_energy,
                    field_state, oscillation_params)
from .free import WaistSpec, free_state
from .units import (C_NM_PER_NS, LAMBDA_C_NM, QuantumNumbers, field_context,
                    kinetic_energy_to_beta)
from .validity import validity

_SCHEMA = {
    "source": {"n", "l", "sigma_w_nm", "rho_w_nm", "energy_kev"},
    "geometry": {"z_g_mm", "z_0_mm"},
    "field": {"h_tesla"},
    "boundary": {"sigma0_nm", "rho0_nm", "sigma0_prime", "rho0_prime", "phi0_rad"},
    "output": {"periods", "t_max_ns", "samples", "series", "tail_tolerance"},
}
_SERIES = ("rho", "gouy", "emittance", "decomposition", "validity")
_MM_TO_NM = 1e6


@dataclass
class Scenario:
    qn: QuantumNumbers
    H: float
    energy_keV: float
    waist: Optional[WaistSpec]
    z_g_mm: float
    z_0_mm: float
    boundary: Optional[BoundaryConditions]
    periods: float = 2.0
    t_max_ns: Optional[float] = None
    samples: int = 1001
    series: List[str] = field(default_factory=lambda: ["rho"])
    tail_tolerance: float = 1e-10

    @property
    def beta(self) -> float:
        return kinetic_energy_to_beta(self.energy_keV)

    def entry_time(self) -> float:
        """Flight time (ns) from source to boundary; zero with an explicit boundary."""
        if self.boundary is not None:
            return 0.0
        return (self.z_0_mm - self.z_g_mm) * _MM_TO_NM / (self.beta * C_NM_PER_NS)

    def boundary_conditions(self) -> BoundaryConditions:
        if self.boundary is not None:
            return self.boundary
        return BoundaryConditions.from_free(self.qn, self.waist, self.entry_time())

    def z_of_t(self, t):
        """Position (mm); t = 0 is emission at z_g, or entry at z_0 with an explicit boundary."""
        origin = self.z_g_mm if self.boundary is None else self.z_0_mm
        return origin + self.beta * C_NM_PER_NS * np.asarray(t) / _MM_TO_NM


def _float(sec, key, name):
    try:
        v = float(sec[key])
    except ValueError as exc:
        raise InvalidInputError(f"{name}: {sec[key]!r} is not a number") from exc
    if not math.isfinite(v):
        raise InvalidInputError(f"{name} must be finite")
    return v


def _int(sec, key, name):
    try:
        return int(sec[key])
    except ValueError as exc:
        raise InvalidInputError(f"{name}: {sec[key]!r} is not an integer") from exc


def parse_config(text: str) -> Scenario:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise InvalidInputError(f"malformed config: {exc}") from exc
    for sec in cp.sections():
        if sec not in _SCHEMA:
            raise InvalidInputError(f"unknown section [{sec}]")
        extra = set(cp[sec]) - _SCHEMA[sec]
        if extra:
            raise InvalidInputError(f"unknown key(s) in [{sec}]: {', '.join(sorted(extra))}")
    for required in ("source", "field"):
        if not cp.has_section(required):
            raise InvalidInputError(f"missing section [{required}]")
    src = cp["source"]
    for key in ("n", "l", "energy_kev"):
        if key not in src:
            raise InvalidInputError(f"[source] needs {key}")
    qn = QuantumNumbers(_int(src, "n", "source.n"), _int(src, "l", "source.l"))
    energy = _float(src, "energy_kev", "source.energy_keV")
    root_n = math.sqrt(qn.order)
    waist = None
    if "sigma_w_nm" in src and "rho_w_nm" in src:
        raise InvalidInputError("give only one of sigma_w_nm and rho_w_nm")
    if "sigma_w_nm" in src:
        waist = WaistSpec(_float(src, "sigma_w_nm", "source.sigma_w_nm"), 0.0)
    elif "rho_w_nm" in src:
        waist = WaistSpec(_float(src, "rho_w_nm", "source.rho_w_nm") / root_n, 0.0)
    if "h_tesla" not in cp["field"]:
        raise InvalidInputError("[field] needs H_tesla")
    H = _float(cp["field"], "h_tesla", "field.H_tesla")

    z_g = z_0 = 0.0
    if cp.has_section("geometry"):
        g = cp["geometry"]
        z_g = _float(g, "z_g_mm", "geometry.z_g_mm") if "z_g_mm" in g else 0.0
        if "z_0_mm" not in g:
            raise InvalidInputError("[geometry] needs z_0_mm")
        z_0 = _float(g, "z_0_mm", "geometry.z_0_mm")
        if z_0 < z_g:
            raise InvalidInputError("the boundary z_0 must not precede the source z_g")

    boundary = None
    if cp.has_section("boundary"):
        if cp.has_section("geometry"):
            raise InvalidInputError("use either [geometry] or [boundary], not both")
        b = cp["boundary"]
        if ("sigma0_nm" in b) == ("rho0_nm" in b):
            raise InvalidInputError("[boundary] needs exactly one of sigma0_nm and rho0_nm")
        if "sigma0_prime" in b and "rho0_prime" in b:
            raise InvalidInputError("give only one of sigma0_prime and rho0_prime")
        sigma0 = (_float(b, "sigma0_nm", "boundary.sigma0_nm") if "sigma0_nm" in b
                  else _float(b, "rho0_nm", "boundary.rho0_nm") / root_n)
        rate = 0.0
        if "sigma0_prime" in b:
            rate = _float(b, "sigma0_prime", "boundary.sigma0_prime")
        elif "rho0_prime" in b:
            rate = _float(b, "rho0_prime", "boundary.rho0_prime") / root_n
        phi0 = _float(b, "phi0_rad", "boundary.phi0_rad") if "phi0_rad" in b else 0.0
        boundary = BoundaryConditions(sigma0, rate, phi0, 0.0)
    elif waist is None:
        raise InvalidInputError("a source waist (with [geometry]) or a [boundary] section is required")
    elif not cp.has_section("geometry"):
        raise InvalidInputError("a source waist needs a [geometry] section")

    sc = Scenario(qn, H, energy, waist, z_g, z_0, boundary)
    if cp.has_section("output"):
        o = cp["output"]
        if "periods" in o and "t_max_ns" in o:
            raise InvalidInputError("give only one of periods and t_max_ns")
        if "periods" in o:
            sc.periods = _float(o, "periods", "output.periods")
            if sc.periods <= 0:
                raise InvalidInputError("output.periods must be positive")
        if "t_max_ns" in o:
            sc.t_max_ns = _float(o, "t_max_ns", "output.t_max_ns")
            if sc.t_max_ns <= 0:
                raise InvalidInputError("output.t_max_ns must be positive")
        if "samples" in o:
            sc.samples = _int(o, "samples", "output.samples")
            if sc.samples < 2:
                raise InvalidInputError("output.samples must be >= 2")
        if "series" in o:
            names = [s.strip() for s in o["series"].split(",") if s.strip()]
            bad = [s for s in names if s not in _SERIES]
            if bad or not names:
                raise InvalidInputError(f"unknown series {bad}; choose from {', '.join(_SERIES)}")
            sc.series = names
        if "tail_tolerance" in o:
            sc.tail_tolerance = _float(o, "tail_tolerance", "output.tail_tolerance")
    field_context(H)  # validates H
    return sc


def load_config(path: str) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(text)


def run_scenario(sc: Scenario) -> List[Table]:
    """Tables for the requested series; deterministic for a given scenario."""
    ctx = field_context(sc.H)
    qn = sc.qn
    bc = sc.boundary_conditions()
    op = oscillation_params(bc, ctx)
    t0 = bc.t_0
    span = sc.t_max_ns if sc.t_max_ns is not None else sc.periods * ctx.T_c
    t_field = np.linspace(t0, t0 + span, sc.samples)
    root_n = math.sqrt(qn.order)
    m = comparison_metrics(bc, ctx)
    summary = {
        "sigma_0_nm": bc.sigma_0, "sigma_0_prime": bc.sigma_0_prime, "phi_0_rad": bc.phi_0,
        "t_0_ns": t0, "sigma_st_nm": op.sigma_st, "rho_st_nm": op.sigma_st * root_n,
        "rho_L_nm": ctx.sigma_L * root_n, "amplitude_ratio": op.amplitude_ratio,
        "theta_rad": op.theta, "s": op.s, "regime": classify_regime(op, ctx).value,
        "xi_1": m.xi_1, "xi_2": m.xi_2, "zeta": m.zeta, "beta": sc.beta,
        "mean_energy_keV": field_energy(qn, op, ctx, keV=True), "T_c_ns": ctx.T_c,
    }
    tables: List[Table] = []
    if "rho" in sc.series or "gouy" in sc.series:
        rows = []
        if sc.boundary is None and t0 > 0:
            t_free = np.linspace(0.0, t0, sc.samples, endpoint=False)
            fs = free_state(qn, sc.waist, t_free)
            for i, t in enumerate(t_free):
                rows.append((float(t), float(sc.z_of_t(t)), "free", float(fs.sigma[i] * root_n),
                             float(fs.sigma[i]), float(fs.sigma_prime[i]), float(fs.phi_G[i])))
        st = field_state(qn, op, ctx, t_field)
        for i, t in enumerate(t_field):
            rows.append((float(t), float(sc.z_of_t(t)), "field", float(st.sigma[i] * root_n),
                         float(st.sigma[i]), float(st.sigma_prime[i]), float(st.phi_G[i])))
        tables.append(Table("scenario_rho", ("t_ns", "z_mm", "region", "rho_nm", "sigma_nm",
                                             "sigma_prime", "gouy_rad"), rows, summary))
    if "emittance" in sc.series:
        eps = emittance_field(qn, op, ctx, t_field) / LAMBDA_C_NM
        ef, el = emittance_free(qn) / LAMBDA_C_NM, emittance_landau(qn) / LAMBDA_C_NM
        rows = [(float(t), float(e), ef, el) for t, e in zip(t_field, eps)]
        tables.append(Table("scenario_emittance",
                            ("t_ns", "eps_H_lambdaC", "eps_f_lambdaC", "eps_L_lambdaC"), rows, {}))
    if "decomposition" in sc.series:
        res = landau_coefficients(qn, bc, ctx, sc.tail_tolerance)
        k, p, ph = res.as_arrays()
        rows = [(int(a), float(b), float(c)) for a, b, c in zip(k, p, ph)]
        tables.append(Table("scenario_decomposition", ("n_prime", "abs_a_sq", "phase_rad"), rows,
                            {"zeta": res.zeta, "truncation_n_max": res.truncation_n_max,
                             "tail": res.tail}))
    if "validity" in sc.series:
        rho_w = None if sc.waist is None else sc.waist.sigma_w * root_n
        rep = validity(qn, rho_w=rho_w, ctx=ctx, bc=bc)
        rows = [(c.name, c.lhs, c.rhs, c.margin, c.nonrelativistic) for c in rep.checks]
        tables.append(Table("scenario_validity", ("check", "lhs", "rhs", "margin", "nonrelativistic"),
                            rows, {}))
    return tables


def scenario_parameters(sc: Scenario) -> Dict:
    return {
        "n": sc.qn.n, "l": sc.qn.l, "H_tesla": sc.H, "energy_keV": sc.energy_keV,
        "sigma_w_nm": None if sc.waist is None else sc.waist.sigma_w,
        "z_g_mm": sc.z_g_mm, "z_0_mm": sc.z_0_mm,
        "boundary": None if sc.boundary is None else {
            "sigma0_nm": sc.boundary.sigma_0, "sigma0_prime": sc.boundary.sigma_0_prime,
            "phi0_rad": sc.boundary.phi_0},
        "periods": sc.periods, "t_max_ns": sc.t_max_ns, "samples": sc.samples,
        "series": list(sc.series), "tail_tolerance": sc.tail_tolerance,
    }

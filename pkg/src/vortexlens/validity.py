"""Transverse nonrelativistic-validity margins.

Each check compares a quantum-number side (lhs) with a size-over-Compton
side (rhs); the margin is rhs/lhs and a state counts as nonrelativistic
when the margin exceeds ``MARGIN_THRESHOLD``.  Reports never block a
computation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

from .field import BoundaryConditions, oscillation_params
from .units import LAMBDA_C_NM, FieldContext, QuantumNumbers

MARGIN_THRESHOLD = 10.0


@dataclass(frozen=True)
class ValidityCheck:
    name: str
    lhs: float
    rhs: float
    threshold: float = MARGIN_THRESHOLD

    @property
    def margin(self) -> float:
        return math.inf if self.lhs == 0 else self.rhs / self.lhs

    @property
    def nonrelativistic(self) -> bool:
        return self.margin > self.threshold

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "margin": self.margin, "nonrelativistic": self.nonrelativistic}


@dataclass
class ValidityReport:
    checks: List[ValidityCheck] = field(default_factory=list)

    @property
    def nonrelativistic(self) -> bool:
        return all(c.nonrelativistic for c in self.checks)

    def by_name(self, name: str) -> ValidityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def free_check(qn: QuantumNumbers, rho_w: float, threshold: float = MARGIN_THRESHOLD) -> ValidityCheck:
    """N << rho_w / lambda_C for a free packet of waist r.m.s. radius ``rho_w`` (nm)."""
    return ValidityCheck("free", float(qn.order), rho_w / LAMBDA_C_NM, threshold)


def landau_check(qn: QuantumNumbers, ctx: FieldContext, threshold: float = MARGIN_THRESHOLD) -> ValidityCheck:
    """sqrt(N + l) << sigma_L / lambda_C."""
    return ValidityCheck("landau", math.sqrt(qn.order + qn.l), ctx.sigma_L / LAMBDA_C_NM, threshold)


def field_checks(qn: QuantumNumbers, bc: BoundaryConditions, ctx: FieldContext,
                 threshold: float = MARGIN_THRESHOLD) -> List[ValidityCheck]:
    """Full, simplified (sigma_st >> sigma_L) and large-packet forms for the in-field packet."""
    op = oscillation_params(bc, ctx)
    base = ctx.sigma_L / LAMBDA_C_NM
    N = qn.order
    return [
        ValidityCheck("field", math.sqrt(N * op.ratio + qn.l), base, threshold),
        ValidityCheck("field_simplified", math.sqrt(N), base * ctx.sigma_L / op.sigma_st, threshold),
        ValidityCheck("field_large_packet", math.sqrt(N), base * ctx.sigma_L / bc.sigma_0, threshold),
    ]


def validity(qn: QuantumNumbers, *, rho_w: Optional[float] = None,
             ctx: Optional[FieldContext] = None, bc: Optional[BoundaryConditions] = None,
             threshold: float = MARGIN_THRESHOLD) -> ValidityReport:
    """Collect whichever checks the supplied state descriptors allow."""
    report = ValidityReport()
    if rho_w is not None:
        report.checks.append(free_check(qn, rho_w, threshold))
    if ctx is not None:
        report.checks.append(landau_check(qn, ctx, threshold))
        if bc is not None:
            report.checks.extend(field_checks(qn, bc, ctx, threshold))
    return report

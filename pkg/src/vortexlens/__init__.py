"""Vortex electron packets crossing from free space into a uniform magnetic field.

Closed-form optical functions (dispersion, divergence rate, Gouy phase) for
Laguerre-Gaussian packets in free space and inside a solenoid, their
Landau-state expansion, quantum emittance, validity margins, and an
independent numerical oracle used to verify all of them.
"""

__version__ = "0.1.0"

from .errors import ConvergenceError, InvalidInputError, VortexLensError  # noqa: E402
from .units import (CONSTS, LAMBDA_C_NM, FieldContext, QuantumNumbers,  # noqa: E402
                    field_context, kinetic_energy_to_beta)
from .free import OpticalState, WaistSpec, free_dispersion, free_energy, free_gouy, free_rms_radius  # noqa: E402
from .landau import LandauMode, landau_amplitude, landau_mode  # noqa: E402
from .field import (BoundaryConditions, ComparisonMetrics, OscillationParams, Regime,  # noqa: E402
                    classify_regime, comparison_metrics, field_dispersion, field_energy,
                    field_gouy, oscillation_params, vanishing_field_limit_check)
from .wavefunction import ModeAmplitudeRequest, density_ring_count, gram_matrix, nslg_amplitude  # noqa: E402
from .decomposition import (DecompositionResult, OffAxisParams, landau_coefficient_oracle,  # noqa: E402
                            landau_coefficients, off_axis_coefficients)
from .emittance import (EmittanceSeries, classicality_window, emittance_field,  # noqa: E402
                        emittance_free, emittance_landau)
from .oracle import OdeRun, StateSample, expectation, integrate_optical  # noqa: E402
from .validity import ValidityReport, validity  # noqa: E402

__all__ = [
    "VortexLensError", "InvalidInputError", "ConvergenceError",
    "CONSTS", "LAMBDA_C_NM", "FieldContext", "QuantumNumbers", "field_context", "kinetic_energy_to_beta",
    "OpticalState", "WaistSpec", "free_dispersion", "free_energy", "free_gouy", "free_rms_radius",
    "LandauMode", "landau_amplitude", "landau_mode",
    "BoundaryConditions", "ComparisonMetrics", "OscillationParams", "Regime", "classify_regime",
    "comparison_metrics", "field_dispersion", "field_energy", "field_gouy", "oscillation_params",
    "vanishing_field_limit_check",
    "ModeAmplitudeRequest", "density_ring_count", "gram_matrix", "nslg_amplitude",
    "DecompositionResult", "OffAxisParams", "landau_coefficient_oracle", "landau_coefficients",
    "off_axis_coefficients",
    "EmittanceSeries", "classicality_window", "emittance_field", "emittance_free", "emittance_landau",
    "OdeRun", "StateSample", "expectation", "integrate_optical",
    "ValidityReport", "validity",
]

import numpy as np
import pytest
from hypothesis import given, strategies as st

from vortexlens import oracle
from vortexlens.errors import ConvergenceError, InvalidInputError
from vortexlens.field import BoundaryConditions, field_dispersion, field_gouy, field_state, oscillation_params
from vortexlens.free import OpticalState, WaistSpec, free_dispersion, free_gouy
from vortexlens.oracle import FIELD, FREE, StateSample, expectation, integrate_optical
from vortexlens.presets import preset
from vortexlens.units import QuantumNumbers, field_context, internal_to_ns

optics_st = st.builds(OpticalState, st.floats(1.0, 500.0), st.floats(-1e-3, 1e-3),
                      st.just(0.0), st.just(0.0))
quantum_numbers = st.builds(QuantumNumbers, st.integers(0, 6), st.integers(-8, 8))


def test_free_flight_from_waist():
    qn = QuantumNumbers(1, 2)
    w = WaistSpec(3.25)
    run = integrate_optical(FREE, OpticalState(w.sigma_w, 0.0, 0.0, 0.0), w.tau_d / 1e4, 5 * w.tau_d, qn)
    exact = free_dispersion(w, run.t).sigma
    assert np.max(np.abs(run.sigma / exact - 1)) < 1e-8
    assert np.max(np.abs(run.phi_G - free_gouy(qn, w, run.t))) < 1e-8


def test_landau_fixed_point(ctx19):
    run = integrate_optical(FIELD, OpticalState(ctx19.sigma_L, 0.0, 0.0, 0.0), ctx19.T_c / 1e4,
                            2 * ctx19.T_c, QuantumNumbers(0, 3), ctx19)
    assert np.max(np.abs(run.sigma / ctx19.sigma_L - 1)) < 1e-10


def test_figure3b_against_closed_form(ctx19, qn03):
    rho_0 = preset("fig3")["panels"]["b"]
    op = oscillation_params(BoundaryConditions.from_rms(qn03, rho_0), ctx19)
    run = integrate_optical(FIELD, field_dispersion(op, ctx19, 0.0), ctx19.T_c / 1e5, 2 * ctx19.T_c, qn03, ctx19)
    exact = field_dispersion(op, ctx19, run.t).sigma
    assert np.max(np.abs(run.sigma / exact - 1)) < 1e-8


@pytest.mark.parametrize("n, l", preset("fig4")["modes"])
def test_figure4_gouy_against_ode(ctx19, n, l):
    p = preset("fig4")
    qn = QuantumNumbers(n, l)
    op = oscillation_params(BoundaryConditions.from_rms(qn, p["rho_0"], p["rho_0_prime"], p["phi_0"]), ctx19)
    run = integrate_optical(FIELD, field_state(qn, op, ctx19, 0.0), ctx19.T_c / 2e4, p["periods"] * ctx19.T_c,
                            qn, ctx19)
    assert np.max(np.abs(run.phi_G - field_gouy(qn, op, ctx19, run.t))) < 1e-6


def test_state_accessor(ctx19):
    run = integrate_optical(FREE, OpticalState(5.0, 0.0, 0.0, 0.0), 1e-6, 1e-5)
    s = run.state(3)
    assert (s.sigma, s.t) == (run.sigma[3], run.t[3])


def _collapsing_step():
    # one RK4 step of 100 nm/c carries a 2 nm packet converging at 0.1c through the axis
    return internal_to_ns(100.0)


def test_coarse_step_is_refined():
    h = _collapsing_step()
    run = integrate_optical(FREE, OpticalState(2.0, -0.1, 0.0, 0.0), h, h)
    assert run.step < h
    assert np.all(run.sigma > 0)


def test_refinement_ceiling(monkeypatch):
    monkeypatch.setattr(oracle, "MAX_REFINEMENT", 1)
    h = _collapsing_step()
    with pytest.raises(ConvergenceError):
        integrate_optical(FREE, OpticalState(2.0, -0.1, 0.0, 0.0), h, h)


@pytest.mark.parametrize("kw", [dict(system="bogus"), dict(system=FIELD), dict(step=0.0), dict(t_end=-1.0)])
def test_input_checks(kw):
    args = dict(system=FREE, initial=OpticalState(5.0, 0.0, 0.0, 0.0), step=1e-6, t_end=1e-5)
    args.update(kw)
    with pytest.raises(InvalidInputError):
        integrate_optical(**args)


@given(quantum_numbers, optics_st)
def test_norm_and_second_moment(qn, optics):
    s = StateSample(qn, optics)
    assert expectation("norm", s) == pytest.approx(1.0, abs=1e-10)
    assert expectation("rho2", s) == pytest.approx(optics.sigma**2 * qn.order, rel=1e-10)


@given(quantum_numbers, optics_st)
def test_free_energy_from_optics(qn, optics):
    from vortexlens.free import free_energy_from_optics
    e = expectation("energy_free", StateSample(qn, optics))
    assert e == pytest.approx(free_energy_from_optics(qn, optics.sigma, optics.sigma_prime), rel=1e-10)


@given(quantum_numbers, optics_st)
def test_default_order_is_exact(qn, optics):
    s = StateSample(qn, optics, field_context(1.0))
    for name in ("rho2", "energy_field", "v2"):
        a = expectation(name, s)
        b = expectation(name, s, order=qn.n + 30)
        assert a == pytest.approx(b, rel=1e-11)


def test_unknown_observable():
    with pytest.raises(InvalidInputError):
        expectation("spin", StateSample(QuantumNumbers(0, 0), OpticalState(1.0, 0.0, 0.0, 0.0)))


def test_field_energy_needs_context():
    with pytest.raises(InvalidInputError):
        expectation("energy_field", StateSample(QuantumNumbers(0, 0), OpticalState(1.0, 0.0, 0.0, 0.0)))

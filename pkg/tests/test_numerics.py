import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import eval_genlaguerre, roots_genlaguerre

from vortexlens.export import Table, format_value, json_document, run_metadata
from vortexlens.laguerre import gauss_laguerre, gauss_laguerre_log, genlaguerre, laguerre_functions


@given(st.integers(0, 30), st.floats(0.0, 40.0), st.floats(0.0, 60.0))
def test_laguerre_polynomial_matches_scipy(n, alpha, x):
    ref = eval_genlaguerre(n, alpha, x)
    assert genlaguerre(n, alpha, x) == pytest.approx(ref, rel=1e-9, abs=1e-9 * max(1.0, abs(ref)))


@pytest.mark.parametrize("order, alpha", [(5, 0.0), (20, 3.0), (40, 12.0)])
def test_nodes_and_weights_match_scipy(order, alpha):
    x, w = gauss_laguerre(order, alpha)
    xr, wr = roots_genlaguerre(order, alpha)
    assert np.allclose(x, xr, rtol=1e-11)
    assert np.allclose(w, wr / math.gamma(alpha + 1), rtol=1e-8, atol=1e-300)


@given(st.integers(1, 200), st.floats(0.0, 100.0), st.integers(0, 6))
def test_quadrature_moments_exact(order, alpha, k):
    # int x^k x^a e^-x / Gamma(a+1) = (a+1)_k
    if k > 2 * order - 1:
        return
    x, w = gauss_laguerre(order, alpha)
    exact = math.exp(math.lgamma(alpha + 1 + k) - math.lgamma(alpha + 1))
    assert math.fsum(w * x**k) == pytest.approx(exact, rel=1e-10)


def test_large_order_weights_finite():
    x, log_w = gauss_laguerre_log(4096, 35.0)
    assert np.all(np.isfinite(log_w)) and np.all(np.diff(x) > 0)


@given(st.integers(0, 40), st.floats(0.0, 30.0))
def test_orthonormal_functions(n_max, alpha):
    x, log_w = gauss_laguerre_log(n_max + 2, alpha)
    # plain-measure weights: divide the quadrature weight function back out
    W = np.exp(log_w + math.lgamma(alpha + 1) + x - alpha * np.log(x))
    f = laguerre_functions(n_max, alpha, x)
    G = (f * W) @ f.T
    assert np.max(np.abs(G - np.eye(n_max + 1))) < 1e-10


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_number_format_round_trips(v):
    assert float(format_value(v)) == v


def test_special_values():
    assert [format_value(v) for v in (True, 3, math.inf, -math.inf, math.nan)] == ["true", "3", "inf", "-inf", "nan"]


def test_csv_and_json_layout():
    t = Table("t", ("a", "b"), [(1, 0.5)], {"k": np.float64(2.0)})
    assert t.to_csv() == "a,b\n1,5.0000000000000000e-01\n"
    doc = json_document([t], run_metadata("cmd", {"x": 1}))
    assert doc == json_document([t], run_metadata("cmd", {"x": 1}))
    assert '"command": "cmd"' in doc

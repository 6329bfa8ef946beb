import math

import pytest

from paintlab import bounds
from paintlab.errors import ParameterError


def test_phi_values():
    assert bounds.phi(0.0) == 0.0
    assert abs(bounds.phi(math.e - 1.0) - 1.0) < 1e-12


def test_phi_domain():
    with pytest.raises(ParameterError):
        bounds.phi(-0.001)


def test_phi_dyadic_inequality():
    # the proof-level inequality the typed partition sizes rest on
    for i in range(1, 41):
        x = 2.0**i / i
        assert bounds.phi(x) >= 2.0**i / 4.0, i


def test_phi_convex_nonnegative_grid():
    xs = [k * 0.25 for k in range(200)]
    ys = [bounds.phi(x) for x in xs]
    assert all(y >= 0 for y in ys)
    for a, b, c in zip(ys, ys[1:], ys[2:]):
        assert b <= (a + c) / 2 + 1e-12


def test_chi_asymptotic_value():
    val = bounds.chi_asymptotic(1024, 0.5)
    assert abs(val - 1024 * math.log(2) / (2 * math.log(512))) < 1e-12
    assert abs(val - 56.888888888888886) < 1e-9


def test_chi_asymptotic_small_p_limit():
    n, p = 10**6, 1e-3
    val = bounds.chi_asymptotic(n, p)
    approx = n * p / (2 * math.log(n * p))
    assert abs(val - approx) / approx < 1e-3


def test_chi_asymptotic_domain():
    with pytest.raises(ParameterError):
        bounds.chi_asymptotic(2, 0.5)  # np = 1
    with pytest.raises(ParameterError):
        bounds.chi_asymptotic(100, 0.0)


def test_chain_bounds():
    assert bounds.chain_bounds(1, 1) == (1, 1.0)
    lo, hi = bounds.chain_bounds(3, round(math.e**2))
    assert lo == 3 and abs(hi - (3 * math.log(round(math.e**2)) + 1)) < 1e-12
    lo, hi = bounds.chain_bounds(4, 10)
    assert lo == 4 and abs(hi - (4 * math.log(10) + 1)) < 1e-9


def test_constant_factor_table():
    assert bounds.constant_factor(math.inf) == 2.0
    assert bounds.constant_factor(6.0) == 3.0
    assert bounds.constant_factor(3.0) == 4.0
    with pytest.raises(ParameterError):
        bounds.constant_factor(2.0)


def test_constant_factor_continuity_and_monotone():
    assert abs(bounds.constant_factor(4.0) - 4.0) < 1e-12
    assert abs(bounds.constant_factor(4.0 + 1e-9) - 4.0) < 1e-6
    prev = bounds.constant_factor(4.0)
    for C in (5, 8, 16, 64, 1024):
        cur = bounds.constant_factor(C)
        assert cur < prev
        prev = cur
    assert prev > 2.0


def test_regime_bounds_fields():
    rb = bounds.regime_bounds(10**4, 0.5, 2.0)
    assert abs(rb.s0 - 10 * math.log(10**4) / 0.5) < 1e-9
    assert abs(rb.s0 - 184.2068) < 1e-3
    assert abs(rb.large_threshold - 10**4 / (2 * math.log(10**4) ** 2)) < 1e-9
    assert abs(rb.large_threshold - 58.946) < 1e-2
    assert abs(rb.small_threshold - rb.p * rb.large_threshold) < 1e-12
    assert rb.b == 2.0


def test_identity_chi_equals_budget_prediction():
    for n, p in ((10**4, 0.5), (10**5, 0.01), (2**14, 0.5), (10**6, 1e-3)):
        rb = bounds.regime_bounds(n, p, 1.7)
        assert abs(rb.chi_async - rb.eraser_budget_prediction) <= 1e-9 * rb.chi_async

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from revcarleson.disc import Arc, CarlesonWindow
from revcarleson.errors import EvaluationError, ParameterError
from revcarleson.quad import (
    QuadConfig,
    circle_integral,
    radial_integral,
    radial_rule,
    radial_sup,
    sphere3_mc,
    window_integral,
)


def test_config_validation():
    with pytest.raises(ParameterError):
        QuadConfig(N_circle=1000)
    with pytest.raises(ParameterError):
        QuadConfig(L_radial=2)
    assert QuadConfig().replace(seed=1).seed == 1


def test_circle_examples():
    assert circle_integral(lambda t: np.full(t.shape, 3.5)) == pytest.approx(3.5)
    assert abs(circle_integral(lambda t: np.exp(2j * np.pi * t))) < 1e-15
    val = circle_integral(lambda t: np.abs(1 - 0.9 * np.exp(2j * np.pi * t)) ** -2.0, n=4096)
    assert val == pytest.approx(1.0 / (1.0 - 0.81), abs=1e-10)


def test_circle_non_finite():
    with pytest.raises(EvaluationError):
        circle_integral(lambda t: np.where(t == 0, np.nan, t))


@given(st.integers(1, 127), st.integers(0, 2**32 - 1))
def test_circle_exact_on_trig_polynomials(deg, seed):
    rng = np.random.default_rng(seed)
    k = np.arange(-deg + 1, deg)
    c = rng.standard_normal(k.size) + 1j * rng.standard_normal(k.size)
    val = circle_integral(lambda t: np.exp(2j * np.pi * np.outer(t, k)) @ c, n=256)
    assert abs(val - c[deg - 1]) < 1e-12 * np.abs(c).max() * max(1, np.sqrt(deg))


def test_radial_examples():
    assert radial_integral(lambda r: np.ones_like(r), 0.0) == pytest.approx(1.0, abs=1e-10)
    assert radial_integral(lambda r: np.ones_like(r), 1.0) == pytest.approx(0.5, abs=1e-10)
    cfg = QuadConfig(L_radial=40, K_panel=16)
    assert radial_integral(lambda r: r, -0.5, cfg) == pytest.approx(4.0 / 3.0, abs=1e-8)


def test_radial_divergent_weight():
    with pytest.raises(ParameterError):
        radial_rule(-1.0)


def test_radial_partial_upper_limit():
    # int_0^u (1 - r) dr = u - u^2/2
    u = 1.0 - 2.0 ** -7
    assert radial_integral(lambda r: np.ones_like(r), 1.0, upper=u) == pytest.approx(u - u * u / 2, rel=1e-13)


@pytest.mark.parametrize(
    "g, alpha",
    [
        (lambda r: r ** 3, 0.5),
        (lambda r: 1.0 / (1.0 - 0.99 * r) ** 2, 1.0),
        (lambda r: np.cos(r), -0.7),
        (lambda r: r / (1.0 - 0.9 * r) ** 1.5, 0.2),
    ],
)
def test_radial_self_consistency(g, alpha):
    base = radial_integral(g, alpha, QuadConfig(L_radial=20, K_panel=8))
    fine = radial_integral(g, alpha, QuadConfig(L_radial=40, K_panel=16))
    assert base == pytest.approx(fine, rel=1e-8)


def test_radial_sup_examples():
    val, r = radial_sup(lambda r: 1.0 - r)
    assert (val, r) == (1.0, 0.0)
    val, r = radial_sup(lambda r: 2 * r * (1 - r))
    assert val == pytest.approx(0.5, abs=1e-8) and r == pytest.approx(0.5, abs=1e-4)
    val, r = radial_sup(lambda r: 4 * r ** 3 * (1 - r))
    assert val == pytest.approx(27 / 64, abs=1e-8) and r == pytest.approx(0.75, abs=1e-4)


@given(st.floats(1.0, 50.0), st.floats(0.05, 2.0))
def test_radial_sup_refinement_monotone(n, s):
    def g(r):
        return r ** n * (1.0 - r) ** s

    coarse = radial_sup(g, QuadConfig(L_radial=10, K_panel=4), iterations=0)[0]
    fine = radial_sup(g, QuadConfig(L_radial=10, K_panel=4))[0]
    assert fine >= coarse
    exact = (n / (n + s)) ** n * (s / (n + s)) ** s
    assert fine <= exact * (1 + 1e-12)


def test_window_areas():
    for h in (0.1, 0.5):
        full = window_integral(lambda z: np.ones(z.shape), CarlesonWindow(Arc(0, 1), h))
        assert full == pytest.approx(math.pi * (1 - (1 - h) ** 2), abs=1e-8)
    half = window_integral(lambda z: np.ones(z.shape), CarlesonWindow(Arc(0, 0.5), 0.2))
    assert half == pytest.approx(math.pi * 0.36 / 2, abs=1e-6)


def test_window_weight_closed_form():
    h = 0.3
    got = window_integral(lambda z: np.ones(z.shape), CarlesonWindow(Arc(0, 1), h), alpha=1.0)
    # 2 pi int_{1-h}^1 (1-r) r dr
    exact = 2 * math.pi * (h ** 2 / 2 - h ** 3 / 3)
    assert got == pytest.approx(exact, rel=1e-12)


def test_sphere_examples():
    cfg = QuadConfig(N_mc=10 ** 5)
    assert sphere3_mc(lambda a, b: np.ones(a.shape), cfg) == pytest.approx((1.0, 0.0))
    mean, err = sphere3_mc(lambda a, b: a * 0.5, cfg)
    assert abs(mean) < 3 * 0.5 * math.sqrt(0.5 / cfg.N_mc) * 2


def test_sphere_kernel_oracle():
    cfg = QuadConfig(N_mc=10 ** 6)
    mean, err = sphere3_mc(lambda a, b: np.abs(1 - 0.9 * a) ** -4.0, cfg)
    assert abs(mean - (1 - 0.81) ** -2) <= 3 * err


def test_sphere_determinism():
    cfg = QuadConfig(N_mc=5000, seed=99)
    g = lambda a, b: np.abs(a) ** 2
    assert sphere3_mc(g, cfg) == sphere3_mc(g, cfg)
    with pytest.raises(ParameterError):
        sphere3_mc(g, cfg.replace(N_mc=999))

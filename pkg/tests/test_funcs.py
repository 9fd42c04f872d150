import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from revcarleson.errors import CapabilityError, ParameterError
from revcarleson.funcs import (
    Blaschke,
    Fejer,
    KernelPower,
    Lacunary,
    Monomial,
    TaylorPolynomial,
    blaschke_derivative_mean,
    make_function,
    parse_complex,
)

VARIANTS = [
    TaylorPolynomial([1.0, -0.5j, 2.0, 0.25 + 0.1j]),
    Fejer(7, 0.4),
    Monomial(5),
    KernelPower(0.6 - 0.3j, 2),
    Lacunary(1.5, 6),
    Blaschke(4),
    KernelPower(0.5, 1).scaled(2 - 1j),
    Fejer(5).rotated(0.3),
]


def test_dsl_examples():
    f = make_function("fejer:n=2,phi=0")
    z = np.array([0.3 + 0.1j, -0.5j])
    np.testing.assert_allclose(f(z), z / 2 + z ** 2, rtol=1e-15)
    b = make_function("blaschke:n=1")
    assert b.a == 0.0
    np.testing.assert_allclose(b(z), z ** 2, rtol=1e-15)
    k = make_function("kernel:lambda=0.9+0i,l=2")
    np.testing.assert_allclose(k(z), (1 - 0.9 * z) ** -2.0, rtol=1e-14)
    assert make_function("poly:1,2i")(1j) == pytest.approx(-1.0)
    assert make_function("monomial:n=3")(0.5) == pytest.approx(0.125)
    assert make_function("lacunary:q=1.5,N=3").N == 3


@pytest.mark.parametrize(
    "spec",
    ["kernel:lambda=1.0,l=1", "fejer:n=0", "lacunary:q=2,N=4", "lacunary:q=1.5", "blaschke:n=1.5", "nope:x=1", "poly", "kernel:l=1"],
)
def test_dsl_errors(spec):
    with pytest.raises(ParameterError):
        make_function(spec)


def test_parse_complex():
    assert parse_complex("0.9+0i") == 0.9
    assert parse_complex("-i") == -1j
    assert parse_complex("1-2i") == 1 - 2j
    with pytest.raises(ParameterError):
        parse_complex("abc")


def test_derivative_examples():
    assert Monomial(6).derivative(1, 0.5) == pytest.approx(6 * 0.5 ** 5)
    assert KernelPower(0.5, 1).derivative(1, 0.0) == pytest.approx(0.5)


def test_capability():
    with pytest.raises(CapabilityError):
        Blaschke(3).derivative(2, 0.1)
    with pytest.raises(CapabilityError):
        Lacunary(1.2, 3).ring_values(2, 0.5, 16)
    with pytest.raises(ParameterError):
        Monomial(2).derivative(-1, 0.1)


@pytest.mark.parametrize("f", VARIANTS, ids=lambda f: f.label)
def test_first_derivative_matches_finite_differences(f, rng):
    z = 0.85 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    h = 1e-5
    fd = (f(z + h) - f(z - h)) / (2 * h)
    scale = np.maximum(1.0, np.abs(fd))
    assert np.max(np.abs(f.derivative(1, z) - fd) / scale) < 1e-6


@pytest.mark.parametrize("f", VARIANTS[:4], ids=lambda f: f.label)
def test_higher_derivatives_match_finite_differences(f, rng):
    z = 0.7 * np.sqrt(rng.random(50)) * np.exp(2j * np.pi * rng.random(50))
    h = 1e-5
    fd = (f.derivative(2, z + h) - f.derivative(2, z - h)) / (2 * h)
    scale = np.maximum(1.0, np.abs(fd))
    assert np.max(np.abs(f.derivative(3, z) - fd) / scale) < 1e-6


@pytest.mark.parametrize("f", VARIANTS, ids=lambda f: f.label)
@pytest.mark.parametrize("m", [0, 1])
def test_ring_values_match_pointwise(f, m):
    n, r, shift = 64, 0.8, 0.5
    z = r * np.exp(2j * np.pi * (np.arange(n) + shift) / n)
    np.testing.assert_allclose(f.ring_values(m, r, n, shift), f.derivative(m, z), rtol=1e-11, atol=1e-12)


def test_boundary_sample_examples():
    np.testing.assert_allclose(Monomial(1).boundary_samples(4), [1, 1j, -1, -1j], atol=1e-15)
    np.testing.assert_allclose(TaylorPolynomial([1]).boundary_samples(8), np.ones(8))


@pytest.mark.parametrize("n", range(1, 17))
def test_blaschke_unimodular(n):
    dev = np.max(np.abs(np.abs(Blaschke(n).boundary_samples(1 << 12)) - 1.0))
    assert dev <= 1e-10


def test_blaschke_zero_of_factor():
    # the first factor vanishes at z with z^2 = a; the product rule stays finite there
    f = Blaschke(3)
    z = math.sqrt(f.a)
    assert abs(f(z)) < 1e-15
    h = 1e-6
    fd = (f(z + h) - f(z - h)) / (2 * h)
    assert abs(f.derivative(1, z) - fd) < 1e-6 * max(1, abs(fd))


@given(st.complex_numbers(max_magnitude=0.99), st.integers(1, 6))
def test_kernel_normalisation(lam, l):
    assert KernelPower(lam, l)(0.0) == 1.0


@pytest.mark.parametrize("n", [4, 16, 100, 257])
@pytest.mark.parametrize("phi", [0.0, 1.3, -2.0])
def test_fejer_witness_identity(n, phi):
    f = Fejer(n, phi)
    j = np.arange(1, n + 1)
    total = np.sum(j * np.exp(-(j - 1) / n) / (n - j + 1))
    assert abs(f.derivative(1, f.witness_point)) == pytest.approx(total, abs=1e-10)


@pytest.mark.parametrize("n, r, p", [(4, 0.3, 2), (4, 0.97, 4), (5, 0.9, 6), (8, 0.995, 4), (3, 0.5, 2)])
def test_blaschke_transfer_operator_matches_direct_rule(n, r, p):
    f = Blaschke(n)
    direct = float(np.mean(np.abs(f.ring_values(1, r, 1 << 18)) ** p))
    assert blaschke_derivative_mean(f, r, p // 2) == pytest.approx(direct, rel=1e-10)


def test_blaschke_circle_means_vectorised():
    f = Blaschke(4)
    radii = np.array([0.2, 0.6, 0.95])
    means = f.circle_means(1, radii, 4.0, 1 << 12)
    for r, m in zip(radii, means):
        assert m == pytest.approx(f.circle_mean(1, r, 4.0, 1 << 12), rel=1e-13)
    # odd powers fall back to the circle rule
    assert f.circle_mean(1, 0.5, 3.0, 1 << 14) == pytest.approx(np.mean(np.abs(f.ring_values(1, 0.5, 1 << 14)) ** 3))


def test_lacunary_matches_series():
    f = Lacunary(1.5, 5)
    z = 0.7 * np.exp(0.4j)
    direct = sum(z ** (2 ** n) / n ** (1 / 1.5) for n in range(1, 6))
    assert f(z) == pytest.approx(direct, rel=1e-14)


@given(st.floats(0.0, 1.0), st.complex_numbers(max_magnitude=3.0))
def test_wrappers(theta, c):
    f = Fejer(6, 0.2)
    z = np.array([0.3 + 0.2j, -0.6j])
    np.testing.assert_allclose(f.rotated(theta)(z), f(np.exp(2j * np.pi * theta) * z), rtol=1e-13, atol=1e-14)
    np.testing.assert_allclose(f.scaled(c)(z), c * f(z), rtol=1e-13, atol=1e-14)

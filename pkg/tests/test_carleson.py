import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from revcarleson import carleson as cc
from revcarleson.corpus import NAMES, load_corpus
from revcarleson.disc import Arc
from revcarleson.errors import ParameterError
from revcarleson.funcs import Fejer, TaylorPolynomial
from revcarleson.measures import BoundaryDensity, Measure, lebesgue
from revcarleson.quad import QuadConfig

CFG = QuadConfig(N_circle=1 << 12)


def test_default_l():
    assert cc.default_l(2.0) == 1
    assert cc.default_l(1.0) == 2
    assert cc.default_l(0.4) == 3


def test_geometric_examples():
    assert cc.geometric_constant(lebesgue(), 8) == pytest.approx(1.0, rel=1e-14)
    atom = Measure(boundary_t=[0.3], boundary_w=[1.0])
    assert cc.geometric_constant(atom, 1) == 0.0
    mixed = Measure(boundary_t=[0.1, 0.7], boundary_w=[0.3, 0.2], density=BoundaryDensity(1, [0.5]))
    assert cc.geometric_constant(mixed, 10) == pytest.approx(0.5, abs=1e-12)


def test_direct_examples():
    assert cc.direct_constant(lebesgue(), 8) == pytest.approx(1.0, rel=1e-14)
    assert cc.direct_constant(Measure(), 8) == 0.0
    w, j = 0.3, 5
    atom = Measure(interior_z=[(1 - 2.0 ** -j) * np.exp(2j * np.pi * 0.4)], interior_w=[w])
    assert cc.direct_constant(atom, 8) >= w * 2 ** j


def test_kernel_examples():
    for p, l in ((2.0, 1), (1.0, 2), (3.0, 1)):
        scan = cc.kernel_test_scan(lebesgue(), p, l, 8, CFG)
        assert np.allclose(scan.per_radius, 1.0, atol=1e-9)
    with pytest.raises(ParameterError, match="p.?l > 1"):
        cc.kernel_test_constant(lebesgue(), 1.0, 1)


def test_kernel_origin_atom_decay():
    w, p, l = 0.7, 2.0, 1
    scan = cc.kernel_test_scan(Measure(interior_z=[0.0], interior_w=[w]), p, l, 10, CFG)
    rho = np.array([1 - 2.0 ** -j for j in range(1, 11)])
    np.testing.assert_allclose(scan.per_radius, [w / cc.kernel_power_norm(r, p, l, 1 << 16) for r in rho], rtol=1e-9)
    ratio = np.array(scan.per_radius) / (w * (1 - rho) ** (p * l - 1))
    assert ratio.max() / ratio.min() < 2.5


def test_kernel_half_circle_tends_to_zero():
    per = cc.kernel_test_scan(load_corpus("half_circle"), 2.0, 1, 10, CFG).per_radius
    assert per[-1] < 0.01 and all(b <= a for a, b in zip(per, per[1:]))


def test_density_correlation_matches_direct():
    d = BoundaryDensity(8, np.arange(1.0, 9.0))
    m, rho, e = 64, 0.8, 2.0
    corr = cc.density_kernel_correlation(d, rho, e, m)
    t = (np.arange(m) + 0.5) / m
    beta = np.repeat(d.values, m // 8)
    for k in (0, 5, 37):
        direct = np.mean(beta * np.abs(1 - rho * np.exp(2j * np.pi * (t - k / m))) ** -e)
        assert corr[k] == pytest.approx(direct, rel=1e-12)


@pytest.mark.parametrize(
    "g, k, expected",
    [
        (1.0, 1.0, "consistent"),
        (0.0, 0.0, "consistent"),
        (1.0, 0.005, "inconclusive"),
        (1.0, 1e-6, "inconsistent"),
        (0.02, 1e-6, "inconclusive"),
    ],
)
def test_verdict(g, k, expected):
    assert cc.verdict(3 * g, 3 * k, 0.03, 0.03) == expected
    assert cc.verdict(g, k, 0.01, 0.01) == expected


def test_equivalence_examples():
    rep = cc.equivalence_report(lebesgue(), 2.0, 1, 10, 10, CFG)
    assert rep.verdict == "consistent"
    assert rep.geometric_constant == pytest.approx(1.0) and rep.kernel_constant == pytest.approx(1.0, abs=1e-9)
    cloud = load_corpus("interior_cloud")
    rep = cc.equivalence_report(cloud, 2.0, 1, 10, 10, CFG)
    assert rep.verdict == "consistent" and rep.geometric_constant == 0.0 and rep.kernel_constant < rep.tau_prime
    per = cc.kernel_test_scan(cloud, 2.0, 1, 10, CFG).per_radius
    assert per[-1] < 1e-2 * per[0]
    both = Measure(interior_z=cloud.interior_z, interior_w=cloud.interior_w, density=BoundaryDensity(1, [1.0]))
    rep = cc.equivalence_report(both, 2.0, 1, 10, 10, CFG)
    assert rep.verdict == "consistent" and rep.kernel_constant >= 1.0


@pytest.mark.parametrize("name", NAMES)
def test_corpus_consistency(name):
    rep = cc.equivalence_report(load_corpus(name), 2.0, 1, 10, 10, CFG)
    assert rep.verdict != "inconsistent"
    assert (rep.geometric_constant > rep.tau) == (rep.kernel_constant > rep.tau_prime)


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("c", [0.2, 5.0])
def test_scaling_equivariance(name, c):
    mu = load_corpus(name)
    a = cc.equivalence_report(mu, 2.0, 1, 8, 8, CFG)
    b = cc.equivalence_report(mu.scaled(c), 2.0, 1, 8, 8, CFG)
    for field in ("geometric_constant", "kernel_constant", "direct_constant"):
        assert getattr(b, field) == pytest.approx(c * getattr(a, field), rel=1e-12, abs=1e-300)
    assert a.verdict == b.verdict


def _rotated_by_dyadic_cell(mu, level):
    """``mu`` rotated by ``2^-level`` turns; the density is refined (same measure) first."""
    shift = 2.0 ** -level
    dens = None
    if mu.density is not None:
        n = max(mu.density.N_grid, 1 << level)
        values = np.repeat(mu.density.values, n // mu.density.N_grid)
        dens = BoundaryDensity(n, np.roll(values, n >> level))
    return Measure(mu.interior_z * np.exp(2j * np.pi * shift), mu.interior_w,
                   np.mod(mu.boundary_t + shift, 1.0), mu.boundary_w, dens)


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("level", [3, 8])
def test_grid_rotation_invariance(name, level):
    mu = load_corpus(name)
    rotated = _rotated_by_dyadic_cell(mu, level)
    assert cc.geometric_constant(rotated, level) == pytest.approx(cc.geometric_constant(mu, level), rel=1e-12, abs=1e-15)


def test_phi_h_origin_closed_form():
    for h in (0.5, 0.1, 0.01):
        got = cc.phi_h(0.0, Arc(0, 1), h, 2.0)
        assert got == pytest.approx(math.pi * h * (1 - 2 * h / 3), abs=1e-8)


def test_phi_h_gap_bound_and_limit():
    arc = Arc(0.0, 0.1)
    z = np.exp(2j * np.pi * 0.5)
    delta = abs(z - np.exp(2j * np.pi * 0.1))
    values = []
    for k in range(3, 11):
        h = 2.0 ** -k
        v = cc.phi_h(z, arc, h, 2.0, CFG)
        assert v <= cc.phi_h_gap_bound(arc, h, 2.0, delta)
        values.append(v)
    assert values[-1] < 1e-2 * values[0]
    with pytest.raises(ParameterError):
        cc.phi_h(0.0, arc, 0.1, 1.0)


def test_kernel_window_smoke():
    arc = Arc(0.2, 0.25)
    leb = [cc.kernel_window_smoke(lebesgue(), 2.0, 1, arc, 2.0 ** -k, CFG)["ratio"] for k in (3, 5, 7)]
    assert min(leb) > 0.1 and max(leb) / min(leb) < 1.2
    off = Measure(boundary_t=[0.7], boundary_w=[1.0])
    vals = [cc.kernel_window_smoke(off, 2.0, 1, arc, 2.0 ** -k, CFG)["value"] for k in (3, 6, 9)]
    assert vals[2] < 0.05 * vals[0]


def test_balayage_examples():
    one = TaylorPolynomial([1.0])
    res = cc.balayage_decay(Measure(interior_z=[0.5], interior_w=[1.0]), one, 1.0, [10])
    assert res.values[0] == pytest.approx(0.0009765625, rel=1e-14)
    assert np.all(cc.balayage_decay(lebesgue(), one, 2.0, [1, 5]).values == 0)


@given(st.integers(0, 2**31), st.floats(0.2, 4.0))
def test_balayage_below_envelope_and_monotone(seed, q):
    rng = np.random.default_rng(seed)
    k = 6
    z = 0.95 * np.sqrt(rng.random(k)) * np.exp(2j * np.pi * rng.random(k))
    mu = Measure(interior_z=z, interior_w=rng.random(k))
    f = Fejer(5, 0.3)
    N = [0, 1, 2, 4, 8, 16, 64]
    res = cc.balayage_decay(mu, f, q, N)
    assert np.all(res.values <= res.envelope * (1 + 1e-12))
    plain = cc.balayage_decay(mu, TaylorPolynomial([1.0]), q, N).values
    assert np.all(np.diff(plain) <= 1e-15)


def test_beta_examples():
    res = cc.beta_rcm_test(BoundaryDensity(4, [1, 1, 1, 1]), 1.0, 3.0)
    assert res.decision and res.integral == 1.0
    res = cc.beta_rcm_test(BoundaryDensity(4, [1, 0, 1, 1]), 1.0, 2.0)
    assert not res.decision and math.isinf(res.integral)
    with pytest.raises(ParameterError):
        cc.beta_rcm_test(BoundaryDensity(1, [1.0]), 2.0, 2.0)


def test_power_density_discretisations():
    d = cc.power_density(0.5, 1 << 16, 1.0)
    assert cc.beta_rcm_test(d, 1.0, 2.0).integral == pytest.approx(2 * math.sqrt(2), rel=1e-12)
    assert not cc.beta_rcm_test(cc.power_density(1.0, 1 << 16, 1.0), 1.0, 2.0).decision
    mid = cc.power_density_midpoint(0.5, 1 << 16)
    assert cc.beta_rcm_test(mid, 1.0, 2.0).integral == pytest.approx(2 * math.sqrt(2), rel=0.01)


@given(st.floats(0.05, 0.95))
def test_power_density_flip_below_one(a):
    assert cc.beta_rcm_test(cc.power_density(a, 1024, 1.0), 1.0, 2.0).decision


def test_q_less_p_examples():
    cert = cc.q_less_p_certificate(2.0, 1.0, [1e-4, 1e-8])
    assert cert.left_side == pytest.approx([100.0, 1e4], rel=1e-15)
    with pytest.raises(ParameterError):
        cc.q_less_p_certificate(2.0, 2.0, [0.1])


@given(st.floats(0.1, 10.0), st.floats(0.01, 0.99), st.lists(st.floats(1e-12, 1.0), min_size=1, max_size=8))
def test_q_less_p_exact(p, frac, eps):
    q = frac * p
    cert = cc.q_less_p_certificate(p, q, eps)
    for e, v in zip(eps, cert.left_side):
        assert v == pytest.approx(e ** (q / p - 1), rel=1e-15)


def test_bloch_zero_measure():
    w = cc.bloch_nonexistence_witness(Measure(), 16)
    assert w.rhs == 0.0 and w.lhs > 0
    assert w.lhs == pytest.approx(cc.fejer_witness_value(16), rel=1e-12)


def test_bloch_lebesgue_certificate():
    cert = cc.bloch_certificate(lebesgue(), [64, 256, 1024], cfg=CFG)
    ratios = cert.details["lhs_over_log_n"]
    assert all(0.1 <= r <= 10 for r in ratios)
    assert cert.direction == "increasing"


def test_bloch_interior_bound():
    rng = np.random.default_rng(3)
    z = 0.5 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
    mu = Measure(interior_z=z, interior_w=np.full(20, 0.05))
    prev = math.inf
    for n in (16, 64, 256, 1024):
        w = cc.bloch_nonexistence_witness(mu, n)
        assert w.interior <= w.interior_bound * (1 + 1e-12)
        assert w.interior_bound < prev
        prev = w.interior_bound


def test_bloch_phase_scan_matches_direct():
    mu = load_corpus("mixed")
    cert = cc.bloch_certificate(mu, [64], n_phases=8, cfg=CFG)
    w = cc.bloch_nonexistence_witness(mu, 64, cert.details["phi"][0], CFG)
    assert cert.right_side[0] == pytest.approx(w.rhs, rel=1e-9)


def test_triebel_s_examples():
    assert cc.triebel_s_growth(1, 0.0) == (1.0, 1.0)
    num, exact = cc.triebel_s_growth(2, 0.0)
    assert num == pytest.approx(0.5, abs=1e-10) and exact == pytest.approx(0.5)
    n, s = 10 ** 4, 0.5
    num, exact = cc.triebel_s_growth(n, s)
    assert num == pytest.approx(exact, rel=1e-10)
    assert num >= 0.5 * cc.triebel_s_lower_envelope(n, s)


def test_triebel_s_certificate_grows():
    cert = cc.triebel_s_certificate([10, 100, 1000, 10 ** 4], 0.5)
    assert all(b > a for a, b in zip(cert.left_side, cert.left_side[1:]))
    assert max(cert.trend) / min(cert.trend) < 2.0


def test_report_round_trips():
    rep = cc.equivalence_report(load_corpus("comb"), 2.0, 1, 6, 6, CFG)
    assert cc.ConditionReport.from_json(rep.to_json()) == rep
    cert = cc.q_less_p_certificate(3.0, 1.0, [0.1, 0.01])
    again = cc.Certificate.from_json(cert.to_json())
    assert again == cert
    lines = cert.to_csv().strip().splitlines()
    assert lines[0] == "parameter,value,bound" and len(lines) == 3
    with pytest.raises(ParameterError):
        cc.ConditionReport(**{**json.loads(rep.to_json()), "verdict": "maybe"})

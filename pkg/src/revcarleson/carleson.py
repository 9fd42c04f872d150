"""Condition testers, equivalence reports and nonexistence certificates.

For a measure ``mu`` on the closed disc three resolution-qualified constants
are computed:

* the geometric constant ``min_I mu(I) / m(I)`` over dyadic arcs,
* the kernel constant ``min_lambda int |K_lambda|^p dmu`` over a dyadic
  lambda grid, with ``K_lambda`` the ``H^p``-normalised kernel power,
* the direct (Carleson) constant ``max_I mu(S_I) / m(I)``.

The certificates turn the nonexistence arguments for the Bloch space,
``q < p`` and the ``s > 0`` Triebel-Lizorkin spaces into explicit sweeps.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from .disc import Arc, CarlesonWindow, check_level, dyadic_starts
from .errors import DomainError, ParameterError
from .funcs import Fejer
from .measures import BoundaryDensity, Measure, arc_masses, integrate, lebesgue, window_masses
from .quad import QuadConfig, _finite, _closing_panel, _panel_gl, radial_sup, window_integral

VERDICTS = ("consistent", "inconsistent", "inconclusive")
DEFAULT_TAU = 0.01
GREY_DECADES = 1.0


def default_l(p: float) -> int:
    """Smallest integer ``l`` with ``p l > 1``."""
    return int(math.floor(1.0 / p)) + 1


def _check_pl(p, l):
    if not p > 0:
        raise ParameterError(f"p must be > 0, got {p}")
    if int(l) != l or l < 1:
        raise ParameterError(f"l must be a positive integer, got {l}")
    if not p * l > 1:
        raise ParameterError(f"the kernel test needs p*l > 1 (got p*l = {p * l}); the H^p norm of k_lambda^l stays bounded otherwise")


# ---------------------------------------------------------------- reports


@dataclass
class ConditionReport:
    geometric_constant: float
    kernel_constant: float
    direct_constant: float
    verdict: str
    tau: float
    tau_prime: float
    grid: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("geometric_constant", "kernel_constant", "direct_constant"):
            value = getattr(self, name)
            if not value >= 0 or not math.isfinite(value):
                raise ParameterError(f"{name} must be finite and >= 0, got {value}")
        if self.verdict not in VERDICTS:
            raise ParameterError(f"verdict must be one of {VERDICTS}, got {self.verdict!r}")

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @classmethod
    def from_json(cls, text: str) -> "ConditionReport":
        return cls(**json.loads(text))


@dataclass
class Certificate:
    """A violated inequality tracked over a parameter sweep.

    ``left_side[i]`` and ``right_side[i]`` are the two sides at
    ``parameter[i]``; ``trend`` is their ratio and ``direction`` records
    whether it increases or decreases along the sweep.
    """

    kind: str
    parameter_name: str
    parameter: list
    left_side: list
    right_side: list
    trend: list = field(default_factory=list)
    direction: str = ""
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.parameter)
        if len(self.left_side) != n or len(self.right_side) != n:
            raise ParameterError("certificate columns must have equal length")
        self.parameter = [float(x) for x in self.parameter]
        self.left_side = [float(x) for x in self.left_side]
        self.right_side = [float(x) for x in self.right_side]
        if not self.trend:
            self.trend = [_ratio(a, b) for a, b in zip(self.left_side, self.right_side)]
        self.trend = [float(x) for x in self.trend]
        if not all(math.isfinite(x) for x in self.left_side + self.right_side):
            raise ParameterError("certificate sides must be finite")
        if not self.direction:
            self.direction = _direction(self.trend)

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), allow_nan=False, default=_jsonable)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls(**json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["parameter", "value", "bound"])
        for row in zip(self.parameter, self.left_side, self.right_side):
            writer.writerow([repr(x) for x in row])
        return buf.getvalue()


def _jsonable(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _ratio(a, b):
    # a zero right side means the inequality fails outright; report a large finite ratio
    return a / b if b > 0 else (math.inf if a > 0 else 1.0)


def _direction(values):
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        return "constant"
    d = np.diff(v)
    if np.all(d >= 0):
        return "increasing"
    if np.all(d <= 0):
        return "decreasing"
    return "mixed"


# ---------------------------------------------------------------- constants


def geometric_scan(mu: Measure, level_max: int):
    """``(min_I mu(I)/m(I), arc)`` over both dyadic families."""
    level_max = check_level(level_max)
    best, arc = math.inf, None
    for j in range(level_max + 1):
        length = 1.0 / (1 << j)
        for starts in dyadic_starts(j):
            ratios = arc_masses(mu, starts, length) / length
            i = int(np.argmin(ratios))
            if ratios[i] < best:
                best, arc = float(ratios[i]), Arc(starts[i], length)
    return max(best, 0.0), arc


def geometric_constant(mu: Measure, level_max: int) -> float:
    """Dyadic estimate of ``inf_I mu(I)/m(I)``; an upper bound for the true infimum."""
    return geometric_scan(mu, level_max)[0]


def direct_scan(mu: Measure, level_max: int):
    """``(max_I mu(S_I)/m(I), window)`` over dyadic windows of depth ``m(I)``."""
    level_max = check_level(level_max)
    best, window = 0.0, None
    for j in range(level_max + 1):
        length = 1.0 / (1 << j)
        for starts in dyadic_starts(j):
            ratios = window_masses(mu, starts, length, length) / length
            i = int(np.argmax(ratios))
            if window is None or ratios[i] > best:
                best, window = float(ratios[i]), CarlesonWindow(Arc(starts[i], length), length)
    return best, window


def direct_constant(mu: Measure, level_max: int) -> float:
    """Dyadic estimate of ``sup_I mu(S_I)/m(I)``; a lower bound for the true supremum."""
    return direct_scan(mu, level_max)[0]


def kernel_power_norm(rho: float, p: float, l: int, n: int) -> float:
    """``||k_lambda^l||_{H^p}^p`` for ``|lambda| = rho`` by the ``n``-node circle rule."""
    t = np.arange(n) / n
    vals = np.abs(1.0 - rho * np.exp(2j * np.pi * t)) ** (-p * l)
    return float(_finite(vals, "kernel_power_norm").mean())


def density_kernel_correlation(density: BoundaryDensity, rho: float, exponent: float, m: int):
    """``c[k] = int beta(t) |1 - rho e^{2 pi i (t - k/m)}|^(-exponent) dt`` for ``k < m``.

    Midpoint rule on ``m`` cells (a multiple of ``N_grid``) evaluated for all
    shifts at once as a circular cross-correlation.
    """
    if m % density.N_grid:
        raise ParameterError(f"correlation grid {m} must be a multiple of N_grid={density.N_grid}")
    beta = np.repeat(density.values, m // density.N_grid)
    g = np.abs(1.0 - rho * np.exp(2j * np.pi * (np.arange(m) + 0.5) / m)) ** (-exponent)
    return np.fft.irfft(np.fft.rfft(beta) * np.conj(np.fft.rfft(g)), n=m) / m


def lambda_grid(J: int):
    """Dyadic lambda grid: radii ``1 - 2^-j`` with ``2^(j+3)`` angles each."""
    if int(J) != J or J < 1 or J > 20:
        raise ParameterError(f"lambda grid depth J must be an integer in [1, 20], got {J}")
    return [(1.0 - 2.0 ** -j, np.arange(1 << (j + 3)) / (1 << (j + 3))) for j in range(1, int(J) + 1)]


class KernelScan(NamedTuple):
    constant: float
    argmin: complex
    per_radius: list


def kernel_test_scan(mu: Measure, p: float, l: int | None = None, J: int = 10, cfg: QuadConfig | None = None) -> KernelScan:
    """Minimum of ``int |k_lambda^l|^p dmu / ||k_lambda^l||_{H^p}^p`` over :func:`lambda_grid`."""
    cfg = cfg or QuadConfig()
    l = default_l(p) if l is None else l
    _check_pl(p, l)
    e = p * l
    n_norm = max(cfg.N_circle, 1 << (J + 6))
    best, arg = math.inf, 0j
    per_radius = []
    for rho, angles in lambda_grid(J):
        k = angles.size
        vals = np.zeros(k)
        if mu.density is not None:
            m = mu.density.N_grid
            while m < max(n_norm, k) or m % k:
                m *= 2
            c = density_kernel_correlation(mu.density, rho, e, m)
            vals += c[(np.arange(k) * (m // k))]
        lam_conj = rho * np.exp(-2j * np.pi * angles)
        for z, w in ((mu.interior_z, mu.interior_w), (np.exp(2j * np.pi * mu.boundary_t), mu.boundary_w)):
            for lo in range(0, z.size, 512):
                zz = z[lo:lo + 512]
                vals += (np.abs(1.0 - lam_conj[:, None] * zz[None, :]) ** (-e)) @ w[lo:lo + 512]
        vals = _finite(vals, "kernel_test_constant") / kernel_power_norm(rho, p, l, n_norm)
        i = int(np.argmin(vals))
        per_radius.append(float(vals[i]))
        if vals[i] < best:
            best, arg = float(vals[i]), complex(rho * np.exp(2j * np.pi * angles[i]))
    return KernelScan(best, arg, per_radius)


def kernel_test_constant(mu: Measure, p: float, l: int | None = None, J: int = 10, cfg: QuadConfig | None = None) -> float:
    """Kernel-test constant: min over the lambda grid of ``int |K_lambda|^p dmu``."""
    return kernel_test_scan(mu, p, l, J, cfg).constant


_CALIBRATION: dict = {}


def calibrated_tau_prime(p: float, l: int, J: int, cfg: QuadConfig, tau: float = DEFAULT_TAU) -> float:
    """``tau * kernel_constant(Lebesgue)``: the kernel threshold matching ``tau``."""
    key = (p, l, J, cfg, tau)
    if key not in _CALIBRATION:
        _CALIBRATION[key] = tau * kernel_test_constant(lebesgue(), p, l, J, cfg)
    return _CALIBRATION[key]


def verdict(geometric: float, kernel: float, tau: float, tau_prime: float, grey_decades: float = GREY_DECADES) -> str:
    """Agreement of the two tests about their thresholds.

    Both above or both below is consistent.  When they disagree the pair is
    inconclusive if the disagreeing values lie within ``grey_decades``
    decades of their thresholds, and inconsistent otherwise.
    """
    g_up, k_up = geometric > tau, kernel > tau_prime
    if g_up == k_up:
        return "consistent"
    f = 10.0 ** grey_decades

    def near(x, thr):
        return thr / f <= x <= thr * f

    return "inconclusive" if near(geometric, tau) or near(kernel, tau_prime) else "inconsistent"


def equivalence_report(
    mu: Measure,
    p: float,
    l: int | None = None,
    level_max: int = 12,
    J: int = 10,
    cfg: QuadConfig | None = None,
    tau: float = DEFAULT_TAU,
    tau_prime: float | None = None,
) -> ConditionReport:
    """Geometric, kernel-test and direct constants with the agreement verdict.

    ``tau`` and ``tau_prime`` apply to a measure of unit total mass; the
    report carries them multiplied by ``mu(closed disc)``.
    """
    cfg = cfg or QuadConfig()
    l = default_l(p) if l is None else l
    _check_pl(p, l)
    geo, arc = geometric_scan(mu, level_max)
    scan = kernel_test_scan(mu, p, l, J, cfg)
    direct, window = direct_scan(mu, level_max)
    if tau_prime is None:
        tau_prime = calibrated_tau_prime(p, l, J, cfg, tau)
    # thresholds are relative to the total mass so the verdict is scale invariant
    mass = mu.mass
    scale = mass if mass > 0 else 1.0
    grid = {
        "p": p,
        "l": l,
        "level_max": level_max,
        "J": J,
        "geometric_argmin_arc": [arc.start, arc.length] if arc else None,
        "kernel_argmin_lambda": [scan.argmin.real, scan.argmin.imag],
        "direct_argmax_window": [window.arc.start, window.arc.length, window.depth] if window else None,
        "grey_decades": GREY_DECADES,
        "mass": mass,
        "base_tau": tau,
        "base_tau_prime": tau_prime,
    }
    tau, tau_prime = tau * scale, tau_prime * scale
    return ConditionReport(geo, scan.constant, direct, verdict(geo, scan.constant, tau, tau_prime), tau, tau_prime, grid)


# ---------------------------------------------------------------- windows


def phi_h(z, arc: Arc, h: float, q: float, cfg: QuadConfig | None = None) -> float:
    """``h^-1 int_{S_{I,h}} (1 - |lambda|)^(q-1) |1 - conj(lambda) z|^-q dA(lambda)``."""
    if not q > 1:
        raise ParameterError(f"q must be > 1, got {q}")
    z = complex(getattr(z, "z", z))
    if abs(z) > 1.0 + 1e-12:
        raise DomainError(f"z = {z} is outside the closed disc")
    window = CarlesonWindow(arc, h)
    value = window_integral(lambda lam: np.abs(1.0 - np.conj(lam) * z) ** (-q), window, cfg, alpha=q - 1.0)
    return value / h


def phi_h_gap_bound(arc: Arc, h: float, q: float, delta: float) -> float:
    """``delta^-q |I| h^(q-1)`` with ``|I|`` in radians."""
    return delta ** (-q) * arc.radians * h ** (q - 1.0)


def kernel_window_smoke(
    mu: Measure,
    p: float,
    l: int | None,
    arc: Arc,
    h: float,
    cfg: QuadConfig | None = None,
    resolution: int = 1024,
):
    """``int Phi_h dmu`` with ``q = p l`` and its ratio to ``|I|`` (radians).

    By Fubini the density part is an integral over the window of the
    kernel correlated with ``beta``, computed by FFT at ``M >= resolution/h``
    angles; radial nodes deeper than ``8/M`` are dropped (their share of the
    window weight is at most ``8/(M h)``).  Atoms use :func:`phi_h`.
    """
    cfg = cfg or QuadConfig()
    l = default_l(p) if l is None else l
    _check_pl(p, l)
    q = p * l
    total = 0.0
    for z, w in ((mu.interior_z, mu.interior_w), (np.exp(2j * np.pi * mu.boundary_t), mu.boundary_w)):
        for zi, wi in zip(z, w):
            total += wi * phi_h(zi, arc, h, q, cfg)
    cutoff = None
    if mu.density is not None:
        m = mu.density.N_grid
        while m < max(cfg.N_circle, resolution / h):
            m *= 2
        cutoff = 8.0 / m
        k = cfg.K_panel
        rs, ws = [], []
        j = 0
        while h * 2.0 ** -(j + 1) >= cutoff and j < cfg.L_radial:
            r, w = _panel_gl(1.0 - h * 2.0 ** -j, 1.0 - h * 2.0 ** -(j + 1), k)
            rs.append(r)
            ws.append(w * (1.0 - r) ** (q - 1.0))
            j += 1
        if j == 0:
            r, w = _closing_panel(1.0 - h, 1.0 - cutoff, k, 0.0)
            rs.append(r)
            ws.append(w * (1.0 - r) ** (q - 1.0))
        idx = np.arange(m)
        in_arc = arc.contains(idx / m)
        for r, w in zip(np.concatenate(rs), np.concatenate(ws)):
            c = density_kernel_correlation(mu.density, r, q, m)
            total += 2.0 * np.pi * w * r * c[in_arc].sum() / m / h
    return {"value": total, "ratio": total / arc.radians, "q": q, "radial_cutoff": cutoff}


# ---------------------------------------------------------------- balayage


class Balayage(NamedTuple):
    values: np.ndarray
    envelope: np.ndarray


def balayage_decay(mu: Measure, f, q: float, N_list, n_boundary: int = 4096) -> Balayage:
    """``int_D |z^N f(z)|^q dmu`` over the interior atoms, with the envelope
    ``rho^(Nq) ||f||_inf^q mu(D)``, ``rho`` the largest atom radius."""
    if not q > 0:
        raise ParameterError(f"q must be > 0, got {q}")
    N = np.asarray(list(N_list), dtype=float)
    if mu.interior_z.size == 0:
        return Balayage(np.zeros(N.size), np.zeros(N.size))
    rad = np.abs(mu.interior_z)
    fz = np.abs(f(mu.interior_z))
    sup_f = max(float(np.max(np.abs(f.boundary_samples(n_boundary)))), float(fz.max()))
    # log form keeps |z|^(Nq) from underflowing to nonzero garbage for huge N
    with np.errstate(divide="ignore"):
        logs = N[:, None] * q * np.log(rad)[None, :]
    values = np.exp(logs) @ (mu.interior_w * fz ** q)
    envelope = rad.max() ** (N * q) * sup_f ** q * mu.interior_mass
    return Balayage(values, envelope)


# ---------------------------------------------------------------- (p, q) criteria


class BetaTest(NamedTuple):
    decision: bool
    integral: float
    holder_constant: float


def beta_rcm_test(beta: BoundaryDensity, p: float, q: float) -> BetaTest:
    """Integrability of ``1/beta`` in ``L^(p/(q-p))`` for a piecewise-constant ``beta``.

    ``holder_constant`` is ``||1/beta||_{L^s}^(p/q)`` with ``s = p/(q-p)``,
    the constant of the Hoelder step with exponents ``q/p`` and ``q/(q-p)``.
    """
    if not (0 < p):
        raise ParameterError(f"p must be > 0, got {p}")
    if not p < q:
        raise ParameterError(f"beta_rcm_test needs p < q (got p={p}, q={q}); use q_less_p_certificate for q < p")
    values = np.asarray(beta.values, dtype=float)
    if np.any(values <= 0):
        return BetaTest(False, math.inf, math.inf)
    s = p / (q - p)
    integral = float(np.mean(values ** (-s)))
    return BetaTest(True, integral, integral ** ((q - p) / q))


def power_density(a: float, n_grid: int, s: float) -> BoundaryDensity:
    """Discretisation of ``|t - 1/2|^a`` preserving ``int beta^(-s)`` cell by cell.

    Cell ``i`` gets ``(N int_cell |t - 1/2|^(-a s) dt)^(-1/s)``; a cell whose
    integral diverges gets 0.
    """
    if a < 0 or s <= 0:
        raise ParameterError(f"need a >= 0 and s > 0, got a={a}, s={s}")
    if int(n_grid) != n_grid or n_grid < 1:
        raise ParameterError(f"n_grid must be a positive integer, got {n_grid}")
    e = a * s
    edges = np.arange(n_grid + 1) / n_grid
    u = edges - 0.5

    def prim(x):
        # antiderivative of |x|^(-e), odd in x, finite at 0 only when e < 1
        ax = np.abs(x)
        if e == 1.0:
            with np.errstate(divide="ignore"):
                return np.sign(x) * np.log(ax)
        with np.errstate(divide="ignore"):
            return np.sign(x) * ax ** (1.0 - e) / (1.0 - e)

    lo, hi = u[:-1], u[1:]
    touches = (lo <= 0.0) & (hi >= 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        integral = prim(hi) - prim(lo)
    if e >= 1.0:
        integral = np.where(touches, np.inf, integral)
    else:
        # across the singularity the odd antiderivative already adds both sides
        integral = np.where(touches, np.abs(prim(hi)) + np.abs(prim(lo)), integral)
    mean = integral * n_grid
    with np.errstate(divide="ignore"):
        values = np.where(np.isfinite(mean), mean ** (-1.0 / s), 0.0)
    return BoundaryDensity(int(n_grid), values)


def power_density_midpoint(a: float, n_grid: int) -> BoundaryDensity:
    """``|t - 1/2|^a`` sampled at cell midpoints."""
    t = (np.arange(n_grid) + 0.5) / n_grid
    return BoundaryDensity(int(n_grid), np.abs(t - 0.5) ** a)


def q_less_p_certificate(p: float, q: float, eps_list, mass: float = 1.0) -> Certificate:
    """Total-mass lower bound ``eps^(q/p - 1)`` forced by a ``q``-reverse
    inequality with ``q < p``, against a fixed measure mass.

    An arc of length ``eps`` carries ``nu(I) >= eps^(q/p)`` (normalised
    constant), and ``1/eps`` disjoint such arcs force the bound above.
    """
    if not (0 < q < p):
        raise ParameterError(f"q_less_p_certificate needs 0 < q < p, got p={p}, q={q}")
    eps = np.asarray(list(eps_list), dtype=float)
    if np.any((eps <= 0) | (eps > 1)):
        raise ParameterError("eps values must lie in (0, 1]")
    bound = eps ** (q / p - 1.0)
    return Certificate(
        "qlessp",
        "eps",
        eps.tolist(),
        bound.tolist(),
        [float(mass)] * eps.size,
        details={"p": p, "q": q, "exponent": q / p - 1.0, "per_arc_bound": (eps ** (q / p)).tolist()},
    )


# ---------------------------------------------------------------- Bloch


class BlochWitness(NamedTuple):
    n: int
    phi: float
    lhs: float
    interior: float
    boundary: float
    interior_bound: float
    interior_bound_log: float

    @property
    def rhs(self) -> float:
        return self.interior + self.boundary


def fejer_witness_value(n: int) -> float:
    """``(1 - e^{-1/n}) sum_j j e^{-(j-1)/n} / (n - j + 1)``."""
    j = np.arange(1, n + 1)
    return float((1.0 - math.exp(-1.0 / n)) * np.sum(j * np.exp(-(j - 1) / n) / (n - j + 1)))


def bloch_nonexistence_witness(mu: Measure, n: int, phi: float = 0.0, cfg: QuadConfig | None = None) -> BlochWitness:
    """Both sides of the Bloch decomposition for the Fejer polynomial ``f_n``.

    ``lhs = (1 - |z_n|) |f_n'(z_n)|`` at ``z_n = e^{-1/n} e^{i phi}``; the
    right side is ``int_D |f_n| dmu + int_{dD} |f_n| dmu``.  The interior
    term is also bounded by ``(H_n/n) int (-1 + (1-|z|^{n+1})/(1-|z|)) dmu``
    (Chebyshev's sum inequality); the same expression with ``log n`` in
    place of ``H_n`` is reported alongside.
    """
    cfg = cfg or QuadConfig()
    if int(n) != n or n < 4:
        raise ParameterError(f"n must be an integer >= 4, got {n}")
    n = int(n)
    f = Fejer(n, phi)
    zn = f.witness_point
    lhs = (1.0 - abs(zn)) * abs(f.derivative(1, zn))
    interior = 0.0
    geo = 0.0
    if mu.interior_z.size:
        interior = float(np.abs(f(mu.interior_z)) @ mu.interior_w)
        r = np.abs(mu.interior_z)
        geo = float(_geometric_tail(r, n) @ mu.interior_w)
    boundary = integrate(Measure(boundary_t=mu.boundary_t, boundary_w=mu.boundary_w, density=mu.density), lambda z: np.abs(f(z)), cfg)
    harmonic = float(np.sum(1.0 / np.arange(1, n + 1)))
    return BlochWitness(n, phi, lhs, interior, boundary, harmonic / n * geo, math.log(n) / n * geo)


def _geometric_tail(r, n):
    """``sum_{j=1}^n r^j = -1 + (1 - r^(n+1)) / (1 - r)``."""
    r = np.asarray(r, dtype=float)
    return r * (1.0 - r ** n) / (1.0 - r)


def _fejer_phase_scan(mu: Measure, n: int, n_phases: int, cfg: QuadConfig):
    """Interior and boundary terms of the Bloch decomposition for all phases
    ``phi_k = 2 pi k / n_phases``.

    ``|f_n^phi(e^{2 pi i t})| = |f_n^0(e^{2 pi i (t - phi/(2 pi))})|``, so the
    density part for all phases is one circular correlation of the refined
    density with ``|f_n^0|`` sampled at the same cell midpoints.
    """
    phases = 2.0 * np.pi * np.arange(n_phases) / n_phases
    interior = np.zeros(n_phases)
    boundary = np.zeros(n_phases)
    if mu.interior_z.size or mu.boundary_t.size:
        bz = np.exp(2j * np.pi * mu.boundary_t)
        for k, phi in enumerate(phases):
            f = Fejer(n, float(phi))
            if mu.interior_z.size:
                interior[k] = np.abs(f(mu.interior_z)) @ mu.interior_w
            if bz.size:
                boundary[k] = np.abs(f(bz)) @ mu.boundary_w
    if mu.density is not None:
        m = mu.density.N_grid
        while m < cfg.N_circle or m % n_phases:
            m *= 2
        beta = np.repeat(mu.density.values, m // mu.density.N_grid)
        base = np.abs(Fejer(n, 0.0).ring_values(0, 1.0, m, shift=0.5))
        corr = np.fft.irfft(np.fft.rfft(beta) * np.conj(np.fft.rfft(base)), n=m) / m
        boundary += corr[np.arange(n_phases) * (m // n_phases)]
    return phases, interior, boundary


def bloch_certificate(mu: Measure, n_list, n_phases: int = 64, cfg: QuadConfig | None = None) -> Certificate:
    """Sweep of :func:`bloch_nonexistence_witness` over ``n``.

    For each ``n`` the phase is chosen from an ``n_phases`` grid to minimise
    the right side (the left side does not depend on it).
    """
    cfg = cfg or QuadConfig()
    rows = []
    for n in n_list:
        phases, interior, boundary = _fejer_phase_scan(mu, int(n), n_phases, cfg)
        k = int(np.argmin(interior + boundary))
        w = bloch_nonexistence_witness(Measure(), n, float(phases[k]), cfg)
        geo = float(_geometric_tail(np.abs(mu.interior_z), n) @ mu.interior_w) if mu.interior_z.size else 0.0
        harmonic = float(np.sum(1.0 / np.arange(1, n + 1)))
        rows.append(w._replace(interior=float(interior[k]), boundary=float(boundary[k]),
                               interior_bound=harmonic / n * geo, interior_bound_log=math.log(n) / n * geo))
    return Certificate(
        "bloch",
        "n",
        [w.n for w in rows],
        [w.lhs for w in rows],
        [w.rhs for w in rows],
        details={
            "phi": [w.phi for w in rows],
            "interior": [w.interior for w in rows],
            "boundary": [w.boundary for w in rows],
            "interior_bound": [w.interior_bound for w in rows],
            "interior_bound_log": [w.interior_bound_log for w in rows],
            "lhs_over_log_n": [w.lhs / math.log(w.n) for w in rows],
            "C1": 1.0,
        },
    )


def _rotation_invariant(mu: Measure) -> bool:
    d = mu.density
    return (
        mu.interior_z.size == 0
        and mu.boundary_t.size == 0
        and (d is None or np.all(d.values == d.values[0]))
    )


def packing_diagnostic(mu: Measure, n: int, c_product: float = 1.0, n_phases: int = 64):
    """Arc masses ``mu([phi - a, phi + a])`` with ``a = n^(-1/(2 c mu(dD)))`` (radians).

    ``c_product`` stands for the product of the non-effective constants of
    the packing step; the masses are reported, not compared.
    """
    bm = mu.boundary_mass
    if bm <= 0:
        return {"a": None, "phi": [], "mass": []}
    a = n ** (-1.0 / (2.0 * c_product * bm))
    phis = np.arange(n_phases) / n_phases
    half = a / (2.0 * np.pi)
    length = min(2.0 * half, 1.0)
    masses = arc_masses(mu, np.mod(phis - half, 1.0), length)
    return {"a": a, "phi": (2 * np.pi * phis).tolist(), "mass": masses.tolist()}


# ---------------------------------------------------------------- Triebel s > 0


def triebel_s_closed_form(n: int, s: float) -> float:
    """``n r^(n-1) (1-r)^(1-s)`` at ``r* = (n-1)/(n-s)``."""
    if n == 1:
        return 1.0
    r = (n - 1.0) / (n - s)
    return float(math.exp(math.log(n) + (n - 1) * math.log(r) + (1.0 - s) * math.log1p(-r)))


def triebel_s_lower_envelope(n: int, s: float) -> float:
    """``exp(s log(n - s) - n log((n - s)/(n - 1)))``."""
    return math.exp(s * math.log(n - s) - n * math.log((n - s) / (n - 1.0)))


def triebel_s_growth(n: int, s: float, cfg: QuadConfig | None = None):
    """``(numeric, closed_form)`` for ``sup_r n r^(n-1) (1-r)^(1-s)``."""
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n}")
    if not (0.0 <= s < 1.0):
        raise ParameterError(f"s must lie in [0, 1), got {s}")
    n = int(n)

    def g(r):
        if n == 1:
            return (1.0 - r) ** (1.0 - s)
        with np.errstate(divide="ignore"):
            return np.exp(math.log(n) + (n - 1) * np.log(r) + (1.0 - s) * np.log1p(-r))

    numeric, _ = radial_sup(g, cfg or QuadConfig())
    return numeric, triebel_s_closed_form(n, s)


def triebel_s_certificate(n_list, s: float, cfg: QuadConfig | None = None) -> Certificate:
    rows = [triebel_s_growth(n, s, cfg) for n in n_list]
    return Certificate(
        "triebel-s",
        "n",
        list(n_list),
        [r[0] for r in rows],
        [triebel_s_lower_envelope(n, s) if n > 1 else 1.0 for n in n_list],
        details={"s": s, "closed_form": [r[1] for r in rows]},
    )

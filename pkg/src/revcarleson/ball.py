"""The unit ball of C^2: non-isotropic balls, ball kernels and Monte-Carlo tests.

The surface measure ``sigma`` is normalised to a probability measure and
``<z, w> = z1 conj(w1) + z2 conj(w2)``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import DomainError, IngestionError, ParameterError
from .quad import QuadConfig, sphere_points

D = 2
SPHERE_TOL = 1e-10


@dataclass(frozen=True)
class BallPoint:
    z1: complex
    z2: complex

    def __post_init__(self):
        object.__setattr__(self, "z1", complex(self.z1))
        object.__setattr__(self, "z2", complex(self.z2))
        if self.norm2 > 1.0 + 1e-12:
            raise DomainError(f"({self.z1}, {self.z2}) lies outside the closed ball")

    @property
    def norm2(self) -> float:
        return abs(self.z1) ** 2 + abs(self.z2) ** 2

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.z1, self.z2])

    @property
    def on_sphere(self) -> bool:
        return abs(self.norm2 - 1.0) <= SPHERE_TOL


def inner(z, w):
    """Hermitian product over the last axis of arrays shaped ``(..., 2)``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return z[..., 0] * np.conj(w[..., 0]) + z[..., 1] * np.conj(w[..., 1])


def _vec(x):
    return x.vec if isinstance(x, BallPoint) else np.asarray(x, dtype=complex)


def _check_sphere(x, what):
    n2 = np.sum(np.abs(x) ** 2, axis=-1)
    if np.any(np.abs(n2 - 1.0) > SPHERE_TOL):
        raise DomainError(f"{what} must lie on the unit sphere (|z|^2 = {np.ravel(n2)[0]})")


def ns_metric(zeta, xi):
    """``|1 - <zeta, xi>|^(1/2)`` for points on the sphere."""
    a, b = _vec(zeta), _vec(xi)
    _check_sphere(a, "zeta")
    _check_sphere(b, "xi")
    out = np.sqrt(np.abs(1.0 - inner(a, b)))
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class NonIsotropicBall:
    """``Q(zeta, delta) = {xi in the sphere : |1 - <zeta, xi>| <= delta}``."""

    center: BallPoint
    delta: float

    def __post_init__(self):
        if not self.center.on_sphere:
            raise DomainError("the center of a non-isotropic ball must lie on the sphere")
        if not self.delta > 0:
            raise ParameterError(f"delta must be > 0, got {self.delta}")

    def contains(self, xi):
        return np.abs(1.0 - inner(self.center.vec, _vec(xi))) <= self.delta

    def window_contains(self, z, depth: float | None = None):
        """``z`` in ``S_Q``: ``1 - depth <= |z| <= 1`` and ``z/|z|`` in ``Q``."""
        depth = self.delta if depth is None else depth
        z = _vec(z)
        r = np.sqrt(np.sum(np.abs(z) ** 2, axis=-1))
        direction = z / np.where(r > 0, r, 1.0)[..., None]
        return (r >= 1.0 - depth) & (r <= 1.0 + 1e-12) & self.contains(direction)


def _empty():
    return np.zeros((0, 2), dtype=complex)


@dataclass(frozen=True)
class BallMeasure:
    interior: np.ndarray = field(default_factory=_empty)
    interior_w: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sphere: np.ndarray = field(default_factory=_empty)
    sphere_w: np.ndarray = field(default_factory=lambda: np.zeros(0))
    uniform_sphere_mass: float = 0.0

    def __post_init__(self):
        iz = np.asarray(self.interior, dtype=complex).reshape(-1, 2)
        sz = np.asarray(self.sphere, dtype=complex).reshape(-1, 2)
        iw = np.asarray(self.interior_w, dtype=float).reshape(-1)
        sw = np.asarray(self.sphere_w, dtype=float).reshape(-1)
        if iz.shape[0] != iw.size or sz.shape[0] != sw.size:
            raise IngestionError("atom coordinate and weight counts differ")
        if np.any(iw < 0) or np.any(sw < 0) or not self.uniform_sphere_mass >= 0:
            raise IngestionError("ball measure weights must be >= 0")
        if iz.size and np.any(np.sum(np.abs(iz) ** 2, axis=1) >= 1.0):
            raise IngestionError("interior_atoms: points must satisfy |z| < 1")
        if sz.size:
            _check_sphere(sz, "sphere_atoms")
        for name, val in (("interior", iz), ("interior_w", iw), ("sphere", sz), ("sphere_w", sw)):
            object.__setattr__(self, name, val)
        object.__setattr__(self, "uniform_sphere_mass", float(self.uniform_sphere_mass))

    @property
    def mass(self) -> float:
        return float(self.interior_w.sum() + self.sphere_w.sum() + self.uniform_sphere_mass)

    def transformed(self, u: np.ndarray) -> "BallMeasure":
        """Push-forward under the linear map ``z -> u z`` (``u`` unitary)."""
        return BallMeasure(self.interior @ u.T, self.interior_w, self.sphere @ u.T, self.sphere_w, self.uniform_sphere_mass)

    def to_document(self) -> dict:
        def atoms(z, w):
            return [
                {"z1re": a.real, "z1im": a.imag, "z2re": b.real, "z2im": b.imag, "w": float(x)}
                for (a, b), x in zip(z, w)
            ]

        return {
            "interior_atoms": atoms(self.interior, self.interior_w),
            "sphere_atoms": atoms(self.sphere, self.sphere_w),
            "uniform_sphere_mass": self.uniform_sphere_mass,
        }


_BALL_KEYS = {"interior_atoms", "sphere_atoms", "uniform_sphere_mass"}
_COORDS = ("z1re", "z1im", "z2re", "z2im", "w")


def load_ball_measure(document) -> BallMeasure:
    """Parse the ball-measure JSON (a dict, a JSON string or a path)."""
    if isinstance(document, (str, Path)) and not str(document).lstrip().startswith("{"):
        try:
            document = Path(document).read_text()
        except OSError as exc:
            raise IngestionError(f"cannot read ball measure file: {exc}") from None
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise IngestionError(f"malformed JSON: {exc}") from None
    if not isinstance(document, dict):
        raise IngestionError("ball measure document must be a JSON object")
    unknown = set(document) - _BALL_KEYS
    if unknown:
        raise IngestionError(f"unknown field(s): {sorted(unknown)}")
    parts = {}
    for key in ("interior_atoms", "sphere_atoms"):
        entries = document.get(key, [])
        if not isinstance(entries, list):
            raise IngestionError(f"{key}: expected a list")
        z = np.zeros((len(entries), 2), dtype=complex)
        w = np.zeros(len(entries))
        for i, e in enumerate(entries):
            if not isinstance(e, dict):
                raise IngestionError(f"{key}[{i}]: expected an object")
            vals = []
            for c in _COORDS:
                v = e.get(c)
                if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                    raise IngestionError(f"{key}[{i}].{c}: expected a finite number")
                vals.append(float(v))
            if vals[4] < 0:
                raise IngestionError(f"{key}[{i}].w: negative weight")
            z[i] = (complex(vals[0], vals[1]), complex(vals[2], vals[3]))
            w[i] = vals[4]
            n2 = np.sum(np.abs(z[i]) ** 2)
            if key == "interior_atoms" and n2 >= 1.0:
                raise IngestionError(f"{key}[{i}]: point must satisfy |z| < 1")
            if key == "sphere_atoms" and abs(n2 - 1.0) > SPHERE_TOL:
                raise IngestionError(f"{key}[{i}]: point must lie on the unit sphere")
        parts[key] = (z, w)
    u = document.get("uniform_sphere_mass", 0.0)
    if isinstance(u, bool) or not isinstance(u, (int, float)) or not u >= 0:
        raise IngestionError("uniform_sphere_mass: expected a number >= 0")
    return BallMeasure(*parts["interior_atoms"], *parts["sphere_atoms"], float(u))


class MCValue(NamedTuple):
    value: float
    stderr: float


class RegionMass(NamedTuple):
    mass: float
    stderr: float
    sigma: float
    sigma_stderr: float


def _mc(values):
    values = np.asarray(values, dtype=float)
    return MCValue(float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size)))


def ball_region_mass(mu: BallMeasure, Q: NonIsotropicBall, with_window: bool = False, depth: float | None = None, cfg: QuadConfig | None = None) -> RegionMass:
    """``mu(Q)`` (or ``mu(S_Q)``) and ``sigma(Q)``, both with MC standard errors.

    Atoms are summed exactly; the uniform part is ``c sigma(Q)`` with
    ``sigma(Q)`` estimated from the same sphere samples.
    """
    cfg = cfg or QuadConfig()
    z1, z2 = sphere_points(cfg.N_mc, cfg.seed)
    sigma = _mc(Q.contains(np.stack([z1, z2], axis=-1)).astype(float))
    mass = float(mu.sphere_w @ Q.contains(mu.sphere)) if mu.sphere_w.size else 0.0
    if with_window and mu.interior_w.size:
        mass += float(mu.interior_w @ Q.window_contains(mu.interior, depth))
    c = mu.uniform_sphere_mass
    return RegionMass(mass + c * sigma.value, c * sigma.stderr, sigma.value, sigma.stderr)


def sigma_q_exact(delta: float) -> float:
    """``sigma(Q(zeta, delta))`` in C^2.

    ``<xi, zeta>`` is uniformly distributed on the unit disc when ``xi`` is
    uniform on the sphere of C^2, so ``sigma(Q)`` is the area of
    ``{|u| <= 1, |1 - u| <= delta}`` divided by ``pi``.
    """
    if delta >= 2.0:
        return 1.0
    # lens between the unit disc and the disc of radius delta centred at 1
    r1, r2, d = 1.0, delta, 1.0
    a1 = r1 ** 2 * math.acos((d * d + r1 * r1 - r2 * r2) / (2 * d * r1))
    a2 = r2 ** 2 * math.acos((d * d + r2 * r2 - r1 * r1) / (2 * d * r2))
    tri = 0.5 * math.sqrt((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2))
    return (a1 + a2 - tri) / math.pi


def _kernel_power(z, w, exponent):
    return np.abs(1.0 - inner(z, w)) ** (-exponent)


class KernelNorm(NamedTuple):
    norm: float
    stderr: float
    norm_p: float
    stderr_p: float


def ball_kernel_norm(w, l: int, p: float, cfg: QuadConfig | None = None, seed_offset: int = 0) -> KernelNorm:
    """``||k_w^l||_{H^p}`` with ``k_w = (1 - <z, w>)^(-2)``, by MC on the sphere.

    ``norm_p`` is the ``p``-th power (the MC mean) and ``stderr_p`` its error.
    """
    cfg = cfg or QuadConfig()
    w = _vec(w)
    if np.sum(np.abs(w) ** 2) >= 1.0:
        raise DomainError("w must lie in the open ball")
    if int(l) != l or l < 1 or not p > 0:
        raise ParameterError(f"need a positive integer l and p > 0, got l={l}, p={p}")
    exponent = p * l * D
    if exponent <= D:
        warnings.warn(f"p*l*d = {exponent} <= d: the kernel norm stays bounded and the asymptotic regime does not apply", stacklevel=2)
    if not np.any(w):
        return KernelNorm(1.0, 0.0, 1.0, 0.0)
    z1, z2 = sphere_points(cfg.N_mc, cfg.seed + seed_offset)
    est = _mc(_kernel_power(np.stack([z1, z2], axis=-1), w, exponent))
    norm = est.value ** (1.0 / p)
    return KernelNorm(norm, norm * est.stderr / (p * est.value), est.value, est.stderr)


def default_w_grid():
    """Eight points: radii 0.3, 0.6, 0.8, 0.9 along ``e1`` and ``(e1 + i e2)/sqrt 2``."""
    dirs = [np.array([1.0, 0.0], dtype=complex), np.array([1.0, 1.0j]) / math.sqrt(2.0)]
    return [r * d for r in (0.3, 0.6, 0.8, 0.9) for d in dirs]


class KernelTest(NamedTuple):
    constant: float
    stderr: float
    argmin: np.ndarray
    values: list
    stderrs: list


def ball_kernel_test_constant(mu: BallMeasure, p: float, l: int, w_grid=None, cfg: QuadConfig | None = None) -> KernelTest:
    """``min_w int |k_w^l|^p dmu / ||k_w^l||_p^p`` with MC errors.

    The uniform part of the numerator and the normalising norm use
    independent sample streams, so a uniform ``mu`` gives an honest
    statistical test of the normalisation.
    """
    cfg = cfg or QuadConfig()
    w_grid = default_w_grid() if w_grid is None else [_vec(w) for w in w_grid]
    if not p * l > 1:
        raise ParameterError(f"the kernel test needs p*l > 1, got {p * l}")
    exponent = p * l * D
    z1, z2 = sphere_points(cfg.N_mc, cfg.seed + 1)
    pts = np.stack([z1, z2], axis=-1)
    values, errs = [], []
    for w in w_grid:
        norm = ball_kernel_norm(w, l, p, cfg)
        num, num_err = 0.0, 0.0
        if mu.uniform_sphere_mass > 0:
            est = _mc(_kernel_power(pts, w, exponent)) if np.any(w) else MCValue(1.0, 0.0)
            num, num_err = mu.uniform_sphere_mass * est.value, mu.uniform_sphere_mass * est.stderr
        for z, wt in ((mu.interior, mu.interior_w), (mu.sphere, mu.sphere_w)):
            if wt.size:
                num += float(_kernel_power(z, w, exponent) @ wt)
        ratio = num / norm.norm_p
        rel = math.hypot(num_err / num if num > 0 else 0.0, norm.stderr_p / norm.norm_p)
        values.append(ratio)
        errs.append(ratio * rel)
    i = int(np.argmin(values))
    return KernelTest(values[i], errs[i], w_grid[i], values, errs)

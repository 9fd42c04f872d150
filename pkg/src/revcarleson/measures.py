"""Finite positive measures on the closed disc.

A :class:`Measure` has three parts: interior atoms, boundary atoms and a
piecewise-constant boundary density on a uniform grid of ``[0, 1)``.
Arc and window masses are exact (density cells are split proportionally at
arc endpoints), which keeps sums over a dyadic level equal to the boundary
mass up to rounding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .disc import Arc, CarlesonWindow, angle_of
from .errors import EvaluationError, IngestionError

_TOP_KEYS = {"interior_atoms", "boundary_atoms", "boundary_density"}


@dataclass(frozen=True)
class BoundaryDensity:
    """Piecewise-constant density ``beta`` with ``N_grid`` equal cells."""

    N_grid: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if self.N_grid < 1 or values.size != self.N_grid:
            raise IngestionError(
                f"boundary_density.values: expected {self.N_grid} values, got {values.size}"
            )
        if np.any(~np.isfinite(values)) or np.any(values < 0):
            raise IngestionError("boundary_density.values: entries must be finite and >= 0")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def mass(self) -> float:
        return float(self.values.sum() / self.N_grid)

    def cdf(self, x):
        """``int_0^x beta dm`` for ``x`` in ``[0, 2]`` (periodic continuation)."""
        x = np.asarray(x, dtype=float)
        n = self.N_grid
        cum = np.concatenate(([0.0], np.cumsum(self.values) / n))
        whole = np.floor(x)
        frac = x - whole
        idx = np.minimum((frac * n).astype(int), n - 1)
        return whole * cum[-1] + cum[idx] + (frac - idx / n) * self.values[idx]

    def refined(self, n_points: int):
        """Midpoints and values of the grid refined to a multiple of ``N_grid`` cells."""
        reps = max(1, -(-n_points // self.N_grid))
        m = self.N_grid * reps
        t = (np.arange(m) + 0.5) / m
        return t, np.repeat(self.values, reps)


@dataclass(frozen=True)
class Measure:
    interior_z: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    interior_w: np.ndarray = field(default_factory=lambda: np.zeros(0))
    boundary_t: np.ndarray = field(default_factory=lambda: np.zeros(0))
    boundary_w: np.ndarray = field(default_factory=lambda: np.zeros(0))
    density: BoundaryDensity | None = None

    def __post_init__(self):
        iz = np.asarray(self.interior_z, dtype=complex).reshape(-1)
        iw = np.asarray(self.interior_w, dtype=float).reshape(-1)
        bt = np.asarray(self.boundary_t, dtype=float).reshape(-1)
        bw = np.asarray(self.boundary_w, dtype=float).reshape(-1)
        if iz.size != iw.size:
            raise IngestionError("interior_atoms: coordinate and weight counts differ")
        if bt.size != bw.size:
            raise IngestionError("boundary_atoms: angle and weight counts differ")
        if np.any(np.abs(iz) >= 1.0):
            raise IngestionError("interior_atoms: every atom must satisfy |z| < 1")
        if np.any(iw < 0) or np.any(bw < 0) or not np.all(np.isfinite(np.r_[iw, bw])):
            raise IngestionError("weights must be finite and >= 0")
        if np.any((bt < 0) | (bt >= 1)):
            raise IngestionError("boundary_atoms.t: angles must lie in [0, 1)")
        order = np.argsort(bt, kind="stable")
        bt, bw = bt[order], bw[order]
        for arr in (iz, iw, bt, bw):
            arr.setflags(write=False)
        object.__setattr__(self, "interior_z", iz)
        object.__setattr__(self, "interior_w", iw)
        object.__setattr__(self, "boundary_t", bt)
        object.__setattr__(self, "boundary_w", bw)

    @property
    def interior_mass(self) -> float:
        return float(self.interior_w.sum())

    @property
    def boundary_mass(self) -> float:
        dens = self.density.mass if self.density is not None else 0.0
        return float(self.boundary_w.sum()) + dens

    @property
    def mass(self) -> float:
        return self.interior_mass + self.boundary_mass

    def scaled(self, c: float) -> "Measure":
        dens = None
        if self.density is not None:
            dens = BoundaryDensity(self.density.N_grid, c * self.density.values)
        return Measure(self.interior_z, c * self.interior_w, self.boundary_t, c * self.boundary_w, dens)

    def rotated(self, cells: int) -> "Measure":
        """Rotate by ``cells / N_grid`` turns (``cells / 2**20`` turns without a density)."""
        n = self.density.N_grid if self.density is not None else 1 << 20
        delta = cells / n
        dens = None
        if self.density is not None:
            dens = BoundaryDensity(n, np.roll(self.density.values, cells))
        return Measure(
            self.interior_z * np.exp(2j * np.pi * delta),
            self.interior_w,
            np.mod(self.boundary_t + delta, 1.0),
            self.boundary_w,
            dens,
        )

    def to_document(self) -> dict:
        doc = {
            "interior_atoms": [
                {"re": float(z.real), "im": float(z.imag), "w": float(w)}
                for z, w in zip(self.interior_z, self.interior_w)
            ],
            "boundary_atoms": [
                {"t": float(t), "w": float(w)} for t, w in zip(self.boundary_t, self.boundary_w)
            ],
        }
        if self.density is not None:
            doc["boundary_density"] = {
                "N_grid": self.density.N_grid,
                "values": self.density.values.tolist(),
            }
        return doc


def lebesgue(n_grid: int = 1, scale: float = 1.0) -> Measure:
    return Measure(density=BoundaryDensity(n_grid, np.full(n_grid, float(scale))))


def _number(entry, key, where):
    if key not in entry:
        raise IngestionError(f"{where}.{key}: missing")
    val = entry[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise IngestionError(f"{where}.{key}: expected a number, got {val!r}")
    return float(val)


def load_measure(document) -> Measure:
    """Build a :class:`Measure` from a parsed JSON document (or a JSON string / path)."""
    if isinstance(document, (str, Path)):
        if isinstance(document, str) and document.lstrip().startswith("{"):
            text = document
        else:
            try:
                text = Path(document).read_text()
            except OSError as exc:
                raise IngestionError(f"document: cannot read {document} ({exc})") from None
        try:
            document = json.loads(text)
        except json.JSONDecodeError as exc:
            raise IngestionError(f"document: invalid JSON ({exc})") from None
    if not isinstance(document, dict):
        raise IngestionError("document: expected a JSON object")
    unknown = set(document) - _TOP_KEYS
    if unknown:
        raise IngestionError(f"{sorted(unknown)[0]}: unknown field")

    iz, iw, bt, bw = [], [], [], []
    for i, entry in enumerate(document.get("interior_atoms", [])):
        where = f"interior_atoms[{i}]"
        if not isinstance(entry, dict):
            raise IngestionError(f"{where}: expected an object")
        z = complex(_number(entry, "re", where), _number(entry, "im", where))
        w = _number(entry, "w", where)
        if abs(z) >= 1.0:
            raise IngestionError(f"{where}: |z| = {abs(z)} must be < 1")
        if w < 0:
            raise IngestionError(f"{where}.w: negative weight {w}")
        iz.append(z)
        iw.append(w)
    for i, entry in enumerate(document.get("boundary_atoms", [])):
        where = f"boundary_atoms[{i}]"
        if not isinstance(entry, dict):
            raise IngestionError(f"{where}: expected an object")
        t = _number(entry, "t", where)
        w = _number(entry, "w", where)
        if not (0.0 <= t < 1.0):
            raise IngestionError(f"{where}.t: angle {t} must lie in [0, 1)")
        if w < 0:
            raise IngestionError(f"{where}.w: negative weight {w}")
        bt.append(t)
        bw.append(w)
    density = None
    if "boundary_density" in document:
        dens = document["boundary_density"]
        if not isinstance(dens, dict) or "N_grid" not in dens or "values" not in dens:
            raise IngestionError("boundary_density: expected {\"N_grid\": N, \"values\": [...]}")
        n = dens["N_grid"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise IngestionError(f"boundary_density.N_grid: expected a positive integer, got {n!r}")
        values = dens["values"]
        if not isinstance(values, list) or any(
            isinstance(v, bool) or not isinstance(v, (int, float)) for v in values
        ):
            raise IngestionError("boundary_density.values: expected a list of numbers")
        density = BoundaryDensity(n, np.array(values, dtype=float))
    return Measure(np.array(iz, dtype=complex), np.array(iw), np.array(bt), np.array(bw), density)


def _atom_cdf(mu: Measure, x):
    """Boundary-atom mass on angles ``[0, x)`` for ``x`` in ``[0, 2]``."""
    cum = np.concatenate(([0.0], np.cumsum(mu.boundary_w)))
    whole = np.floor(x)
    frac = x - whole
    idx = np.searchsorted(mu.boundary_t, frac, side="left")
    return whole * cum[-1] + cum[idx]


def arc_masses(mu: Measure, starts, length: float):
    """Boundary mass of the arcs ``[s, s + length)`` for every ``s`` in ``starts``."""
    starts = np.asarray(starts, dtype=float)
    ends = starts + length
    out = np.zeros_like(starts)
    if mu.boundary_t.size:
        out += _atom_cdf(mu, ends) - _atom_cdf(mu, starts)
    if mu.density is not None:
        out += mu.density.cdf(ends) - mu.density.cdf(starts)
    return np.maximum(out, 0.0)


def window_masses(mu: Measure, starts, length: float, depth: float, chunk: int = 4096):
    """Mass of the windows ``S_{I,h}`` over the arcs ``[s, s + length)``."""
    starts = np.asarray(starts, dtype=float)
    out = arc_masses(mu, starts, length)
    if mu.interior_z.size:
        sel = np.abs(mu.interior_z) >= 1.0 - depth
        if np.any(sel):
            ang = angle_of(mu.interior_z[sel])
            w = mu.interior_w[sel]
            for lo in range(0, starts.size, chunk):
                s = starts[lo:lo + chunk, None]
                inside = np.mod(ang[None, :] - s, 1.0) < length if length < 1 else np.ones((s.shape[0], ang.size), bool)
                out[lo:lo + chunk] += inside @ w
    return out


def region_mass(mu: Measure, region) -> float:
    """Exact mass of an arc (boundary parts only) or a Carleson window."""
    if isinstance(region, CarlesonWindow):
        arc = region.arc
        return float(window_masses(mu, [arc.start], arc.length, region.depth)[0])
    if isinstance(region, Arc):
        return float(arc_masses(mu, [region.start], region.length)[0])
    raise TypeError(f"unsupported region type {type(region).__name__}")


def restrict_to_boundary(mu: Measure) -> Measure:
    return Measure(boundary_t=mu.boundary_t, boundary_w=mu.boundary_w, density=mu.density)


def _checked(values, where, points):
    values = np.asarray(values, dtype=float)
    bad = ~np.isfinite(values)
    if np.any(bad):
        raise EvaluationError(f"integrand is not finite at {where} point {np.asarray(points)[bad][0]}")
    return values


def integrate(mu: Measure, g, cfg=None) -> float:
    """``int g dmu`` for a real-valued ``g`` defined on complex arrays.

    Atoms contribute exactly; the density part uses the midpoint rule on the
    density grid refined to at least ``cfg.N_circle`` cells.
    """
    from .quad import QuadConfig

    cfg = cfg or QuadConfig()
    total = 0.0
    if mu.interior_z.size:
        vals = _checked(g(mu.interior_z), "interior atom", mu.interior_z)
        total += float(vals @ mu.interior_w)
    if mu.boundary_t.size:
        pts = np.exp(2j * np.pi * mu.boundary_t)
        vals = _checked(g(pts), "boundary atom", mu.boundary_t)
        total += float(vals @ mu.boundary_w)
    if mu.density is not None:
        t, beta = mu.density.refined(cfg.N_circle)
        live = beta > 0
        if np.any(live):
            vals = _checked(g(np.exp(2j * np.pi * t[live])), "boundary density", t[live])
            total += float(vals @ beta[live]) / t.size
    return total


"""Geometry of the closed unit disc.

Angles are measured in turns: the boundary point with parameter ``t`` is
``exp(2*pi*i*t)`` and Lebesgue measure on the circle has total mass 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError

DISC_TOL = 1e-12
MAX_DYADIC_LEVEL = 24


@dataclass(frozen=True)
class DiscPoint:
    re: float
    im: float

    def __post_init__(self):
        if self.re * self.re + self.im * self.im > 1.0 + DISC_TOL:
            raise DomainError(f"point ({self.re}, {self.im}) is outside the closed disc")

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def from_complex(cls, z: complex) -> "DiscPoint":
        return cls(float(np.real(z)), float(np.imag(z)))


@dataclass(frozen=True)
class Arc:
    """Half-open arc ``{exp(2 pi i t): t in [start, start + length) mod 1}``."""

    start: float
    length: float

    def __post_init__(self):
        if not (0.0 < self.length <= 1.0):
            raise ParameterError(f"arc length must lie in (0, 1], got {self.length}")
        start = float(self.start) % 1.0
        object.__setattr__(self, "start", start)

    @property
    def measure(self) -> float:
        return self.length

    @property
    def radians(self) -> float:
        """Arc length in radians (``|I|`` in the integral estimates)."""
        return 2.0 * np.pi * self.length

    @property
    def center(self) -> float:
        return (self.start + 0.5 * self.length) % 1.0

    def contains(self, t):
        return arc_contains(self.start, self.length, t)

    def rotated(self, delta: float) -> "Arc":
        return Arc((self.start + delta) % 1.0, self.length)


@dataclass(frozen=True)
class CarlesonWindow:
    """``S_{I,h} = {z : 1 - h <= |z| <= 1, z/|z| in I}``."""

    arc: Arc
    depth: float

    def __post_init__(self):
        if not (0.0 < self.depth <= 1.0):
            raise ParameterError(f"window depth must lie in (0, 1], got {self.depth}")

    def contains(self, z):
        return window_contains(self.arc, self.depth, z)


def arc_contains(start, length, t):
    """Vectorised membership of angles ``t`` (turns) in ``[start, start+length) mod 1``."""
    t = np.asarray(t, dtype=float)
    if length >= 1.0:
        out = np.ones_like(t, dtype=bool)
    else:
        out = np.mod(t - start, 1.0) < length
    return out if out.ndim else bool(out)


def angle_of(z):
    """Angle of ``z`` in turns in ``[0, 1)``; the origin is assigned angle 0."""
    return np.mod(np.angle(z) / (2.0 * np.pi), 1.0)


def check_closed_disc(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1.0 + DISC_TOL):
        bad = z[np.abs(z) > 1.0 + DISC_TOL] if z.ndim else z
        raise DomainError(f"point(s) outside the closed disc: {np.ravel(bad)[:3]}")
    return z


def window_contains(arc: Arc, depth: float, z):
    z = check_closed_disc(z)
    rad = np.abs(z)
    out = (rad >= 1.0 - depth) & arc_contains(arc.start, arc.length, angle_of(z))
    return out if np.ndim(out) else bool(out)


def contains(region, z):
    """Membership test for an :class:`Arc` (angle or boundary point) or a window.

    For an arc, a real argument is read as an angle in turns and a complex
    one as a point whose direction ``z/|z|`` is tested.
    """
    if isinstance(region, CarlesonWindow):
        if isinstance(z, DiscPoint):
            z = z.z
        return region.contains(z)
    if isinstance(region, Arc):
        if isinstance(z, DiscPoint):
            z = z.z
        if np.iscomplexobj(z):
            z = check_closed_disc(z)
            return region.contains(angle_of(z))
        return region.contains(np.mod(z, 1.0))
    raise TypeError(f"unsupported region type {type(region).__name__}")


def check_level(level_max: int) -> int:
    if int(level_max) != level_max or level_max < 0 or level_max > MAX_DYADIC_LEVEL:
        raise ParameterError(f"level_max must be an integer in [0, {MAX_DYADIC_LEVEL}], got {level_max}")
    return int(level_max)


def dyadic_starts(level: int):
    """Start points of the standard and the half-shifted dyadic arcs at one level."""
    n = 1 << level
    standard = np.arange(n) / n
    shifted = np.mod(standard + 0.5 / n, 1.0)
    return standard, shifted


def dyadic_arc_family(level_max: int) -> list[Arc]:
    """Standard dyadic arcs and their half-length shifts, levels ``0..level_max``.

    Every arc of length at least ``2**-level_max`` contains a member of the
    family of at least a quarter of its length.
    """
    level_max = check_level(level_max)
    arcs = []
    for j in range(level_max + 1):
        length = 1.0 / (1 << j)
        standard, shifted = dyadic_starts(j)
        arcs.extend(Arc(s, length) for s in standard)
        arcs.extend(Arc(s, length) for s in shifted)
    return arcs

"""Quadrature engines used by the norm evaluators and condition testers.

* ``circle_integral``: equal-weight rule on ``N`` nodes of the circle
  (exact for trigonometric polynomials of degree < N/2).
* ``radial_integral``: dyadic panels ``[1 - 2^-j, 1 - 2^-(j+1)]`` with
  Gauss-Legendre nodes and a Gauss-Jacobi closing panel, so that weights
  ``(1 - r)^alpha`` with ``alpha > -1`` are integrated accurately.
* ``radial_sup``: scan of a graded grid followed by golden-section search in
  the winning cell; the result never exceeds the true supremum.
* ``window_integral``: polar product rule on a Carleson window.
* ``sphere3_mc``: seeded Monte-Carlo on the unit sphere of C^2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .errors import EvaluationError, ParameterError

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class QuadConfig:
    N_circle: int = 1 << 14
    L_radial: int = 40
    K_panel: int = 16
    N_mc: int = 200_000
    seed: int = 20240601

    def __post_init__(self):
        n = self.N_circle
        if n < 16 or n & (n - 1):
            raise ParameterError(f"N_circle must be a power of two >= 16, got {n}")
        if self.L_radial < 4:
            raise ParameterError(f"L_radial must be >= 4, got {self.L_radial}")
        if self.K_panel < 4:
            raise ParameterError(f"K_panel must be >= 4, got {self.K_panel}")

    def replace(self, **changes) -> "QuadConfig":
        return QuadConfig(**{**asdict(self), **changes})

    def as_dict(self) -> dict:
        return asdict(self)


def _finite(values, what):
    values = np.asarray(values)
    if not np.all(np.isfinite(values)):
        raise EvaluationError(f"non-finite integrand value in {what}")
    return values


def circle_nodes(n: int, shift: float = 0.0):
    return (np.arange(n) + shift) / n


def circle_integral(g, cfg: QuadConfig | None = None, n: int | None = None):
    """``int_0^1 g(t) dt`` by the equal-weight rule on ``t = j/N``.

    ``g`` may return an array of shape ``(..., N)``; the rule is applied on
    the last axis.
    """
    n = n or (cfg or QuadConfig()).N_circle
    vals = _finite(g(circle_nodes(n)), "circle_integral")
    out = vals.mean(axis=-1)
    return out if np.ndim(out) else out.item()


@lru_cache(maxsize=64)
def _legendre(k: int):
    x, w = np.polynomial.legendre.leggauss(k)
    return x, w


@lru_cache(maxsize=64)
def _jacobi(k: int, alpha: float):
    x, w = roots_jacobi(k, alpha, 0.0)
    return x, w


def _panel_gl(a, b, k):
    x, w = _legendre(k)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def _closing_panel(a, b, k, alpha):
    """Nodes/weights for ``int_a^b h(r) (b - r)^alpha dr`` (weight included)."""
    if alpha == 0.0:
        return _panel_gl(a, b, k)
    x, w = _jacobi(k, float(alpha))
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), w * half ** (alpha + 1.0)


def radial_rule(alpha: float, cfg: QuadConfig | None = None, upper: float = 1.0, lower: float = 0.0):
    """Nodes and weights of ``int_lower^upper h(r) (1 - r)^alpha dr``.

    With ``upper = 1`` the panels are ``[1 - 2^-j, 1 - 2^-(j+1)]`` for
    ``j < L_radial`` plus the Gauss-Jacobi closing panel ``[1 - 2^-L, 1)``.
    With ``upper < 1`` the dyadic panels are continued until they reach
    ``upper`` and the last one is clipped.
    """
    cfg = cfg or QuadConfig()
    if alpha <= -1.0:
        raise ParameterError(f"radial weight (1-r)^{alpha} is not integrable at r=1 (alpha must be > -1)")
    if not (0.0 <= lower < upper <= 1.0):
        raise ParameterError(f"need 0 <= lower < upper <= 1, got [{lower}, {upper}]")
    k = cfg.K_panel
    nodes, weights = [], []
    if upper >= 1.0:
        n_panels = cfg.L_radial
    else:
        n_panels = max(1, math.ceil(-math.log2(1.0 - upper) - 1e-12))
    for j in range(n_panels):
        a = max(1.0 - 2.0 ** -j, lower)
        b = min(1.0 - 2.0 ** -(j + 1), upper)
        if b <= a:
            continue
        r, w = _panel_gl(a, b, k)
        nodes.append(r)
        weights.append(w * (1.0 - r) ** alpha)
    if upper >= 1.0:
        a = max(1.0 - 2.0 ** -cfg.L_radial, lower)
        r, w = _closing_panel(a, 1.0, k, alpha)
        nodes.append(r)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def radial_integral(g, alpha: float, cfg: QuadConfig | None = None, upper: float = 1.0, lower: float = 0.0):
    """``int_lower^upper g(r) (1 - r)^alpha dr``; the weight is applied here.

    ``g`` receives the 1-D node array and may return shape ``(..., n_nodes)``.
    """
    r, w = radial_rule(alpha, cfg, upper, lower)
    vals = _finite(g(r), "radial_integral")
    out = vals @ w
    return out if np.ndim(out) else float(out)


def sup_grid(cfg: QuadConfig):
    j = np.arange(cfg.L_radial * cfg.K_panel + 1)
    return 1.0 - 2.0 ** (-j / cfg.K_panel)


def radial_sup(g, cfg: QuadConfig | None = None, batched: bool = False, iterations: int = 80):
    """Lower bound of ``sup_{0 <= r < 1} g(r)`` and the maximising radius.

    ``g`` is called with a 2-D array of radii: shape ``(1, n)`` for the grid
    scan and ``(B, 1)`` during refinement, returning shape ``(B, n)`` or
    ``(B, 1)``.  An elementwise ``g`` gives ``B = 1``.  With ``batched``
    the per-row values and argmaxes are returned as arrays.
    """
    cfg = cfg or QuadConfig()
    grid = sup_grid(cfg)
    vals = _finite(g(grid[None, :]), "radial_sup")
    vals = np.atleast_2d(vals)
    rows = np.arange(vals.shape[0])
    i = np.argmax(vals, axis=1)
    best = vals[rows, i].astype(float)
    arg = grid[i].astype(float)

    a = grid[np.maximum(i - 1, 0)].astype(float)
    b = grid[np.minimum(i + 1, grid.size - 1)].astype(float)
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc = _eval_rows(g, c)
    fd = _eval_rows(g, d)
    best, arg = _improve(best, arg, fc, c)
    best, arg = _improve(best, arg, fd, d)
    for _ in range(iterations):
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c, d = np.where(left, b - GOLDEN * (b - a), d), np.where(left, c, a + GOLDEN * (b - a))
        fc, fd = np.where(left, np.nan, fd), np.where(left, fc, np.nan)
        x_new = np.where(left, c, d)
        f_new = _eval_rows(g, x_new)
        fc = np.where(left, f_new, fc)
        fd = np.where(left, fd, f_new)
        best, arg = _improve(best, arg, f_new, x_new)
    if batched:
        return best, arg
    return float(best[0]), float(arg[0])


def _eval_rows(g, r):
    return np.broadcast_to(_finite(g(r[:, None]), "radial_sup"), (r.size, 1)).reshape(-1).astype(float)


def _improve(best, arg, values, where):
    better = values > best
    return np.where(better, values, best), np.where(better, where, arg)


def window_rule(window, cfg: QuadConfig | None = None, alpha: float = 0.0):
    """Polar product rule on ``S_{I,h}`` with ``dA = r dr dtheta`` (area of D is pi).

    Returns points ``lambda`` of shape ``(n_t, n_r)`` and matching weights;
    the factor ``(1 - |lambda|)^alpha`` is folded into the weights.
    """
    cfg = cfg or QuadConfig()
    if alpha <= -1.0:
        raise ParameterError(f"window weight (1-r)^{alpha} is not integrable")
    arc, h = window.arc, window.depth
    n_t = max(16, math.ceil(arc.length * cfg.N_circle))
    t = arc.start + arc.length * (np.arange(n_t) + 0.5) / n_t
    w_t = np.full(n_t, arc.length / n_t)
    k = cfg.K_panel
    rs, ws = [], []
    for j in range(cfg.L_radial):
        a = 1.0 - h * 2.0 ** -j
        b = 1.0 - h * 2.0 ** -(j + 1)
        r, w = _panel_gl(a, b, k)
        rs.append(r)
        ws.append(w * (1.0 - r) ** alpha)
    r, w = _closing_panel(1.0 - h * 2.0 ** -cfg.L_radial, 1.0, k, alpha)
    rs.append(r)
    ws.append(w)
    r = np.concatenate(rs)
    w_r = np.concatenate(ws)
    lam = r[None, :] * np.exp(2j * np.pi * t)[:, None]
    weights = 2.0 * np.pi * w_t[:, None] * (w_r * r)[None, :]
    return lam, weights


def window_integral(g, window, cfg: QuadConfig | None = None, alpha: float = 0.0) -> float:
    """``int_{S_{I,h}} g(lambda) (1 - |lambda|)^alpha dA(lambda)``."""
    lam, weights = window_rule(window, cfg, alpha)
    vals = _finite(g(lam), "window_integral")
    return float(np.sum(vals * weights))


def sphere_points(n: int, seed: int):
    """``n`` uniform points on the unit sphere of C^2 as ``(z1, z2)``."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x[:, 0] + 1j * x[:, 1], x[:, 2] + 1j * x[:, 3]


def sphere3_mc(g, cfg: QuadConfig | None = None):
    """Mean of ``g(z1, z2)`` against normalised surface measure and its standard error."""
    cfg = cfg or QuadConfig()
    if cfg.N_mc < 1000:
        raise ParameterError(f"N_mc must be >= 1000, got {cfg.N_mc}")
    z1, z2 = sphere_points(cfg.N_mc, cfg.seed)
    vals = _finite(g(z1, z2), "sphere3_mc")
    mean = vals.mean()
    err = vals.std(ddof=1) / math.sqrt(vals.size)
    return mean.item(), float(err)

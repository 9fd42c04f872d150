"""(Quasi)norm evaluators for Hardy, Bloch, BMOA, Triebel-Lizorkin and Besov spaces.

All evaluators take a :class:`~revcarleson.funcs.HoloFunction` and a
:class:`~revcarleson.quad.QuadConfig`.  Supremum-based quantities come from
grid scans with local refinement and are flagged as certified lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .disc import check_level
from .errors import ParameterError
from .quad import QuadConfig, _finite, radial_integral, radial_rule, radial_sup, sup_grid

KINDS = ("hardy", "bloch", "bmoa", "triebel", "besov")


@dataclass(frozen=True)
class SpaceSpec:
    """Which (quasi)norm to evaluate; ``m`` defaults to ``floor(s) + 1``."""

    kind: str
    s: float = 0.0
    p: float = 2.0
    q: float = 2.0
    m: int | None = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "q", float(self.q))
        except ValueError:
            raise ParameterError(f"q must be a number or 'inf', got {self.q!r}") from None
        if self.kind not in KINDS:
            raise ParameterError(f"unknown space kind {self.kind!r}; expected one of {KINDS}")
        if self.s < 0:
            raise ParameterError(f"smoothness s must be >= 0, got {self.s}")
        if not self.p > 0:
            raise ParameterError(f"p must be > 0, got {self.p}")
        if not self.q > 0:
            raise ParameterError(f"q must be > 0 or inf, got {self.q}")
        m = math.floor(self.s) + 1 if self.m is None else self.m
        if int(m) != m or m < 1 or m <= self.s:
            raise ParameterError(f"derivative order m must be an integer >= 1 with m > s, got m={m}, s={self.s}")
        object.__setattr__(self, "m", int(m))

    def as_dict(self) -> dict:
        # JSON has no infinity, so the sup variant is written as the string "inf"
        q = "inf" if math.isinf(self.q) else self.q
        return {"kind": self.kind, "s": self.s, "p": self.p, "q": q, "m": self.m}


@dataclass
class NormResult:
    value: float
    lower_bound_certified: bool = False
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.value >= 0:
            raise ParameterError(f"norm value must be >= 0, got {self.value}")

    def as_dict(self) -> dict:
        return {
            "value": float(self.value),
            "lower_bound_certified": bool(self.lower_bound_certified),
            "diagnostics": self.diagnostics,
        }


def _taylor_head(f, m: int) -> float:
    """``sum_{j<m} |f^(j)(0)|``, the additive part of the quasinorms."""
    return float(sum(abs(f.derivative(j, 0.0)) for j in range(m)))


def integral_mean(f, p: float, r: float, cfg: QuadConfig | None = None) -> float:
    """``int_0^1 |f(r e^{2 pi i t})|^p dt``."""
    cfg = cfg or QuadConfig()
    if not p > 0:
        raise ParameterError(f"p must be > 0, got {p}")
    return float(_finite(f.circle_mean(0, r, p, cfg.N_circle), "integral_mean"))


def hardy_norm(f, p: float, cfg: QuadConfig | None = None) -> NormResult:
    """``||f||_{H^p}`` from boundary values (the sup over r of the integral means)."""
    cfg = cfg or QuadConfig()
    value = integral_mean(f, p, 1.0, cfg) ** (1.0 / p)
    coarse = integral_mean(f, p, 1.0, cfg.replace(N_circle=cfg.N_circle // 2)) ** (1.0 / p)
    return NormResult(value, False, {"N_circle": cfg.N_circle, "half_resolution": coarse})


def bloch_norm(f, cfg: QuadConfig | None = None, refine_rounds: int = 4) -> NormResult:
    """``|f(0)| + sup_z (1 - |z|^2)|f'(z)|`` as a certified lower bound."""
    cfg = cfg or QuadConfig()
    f._check_order(1)
    n = cfg.N_circle
    best, best_r, best_t = -1.0, 0.0, 0.0
    for r in sup_grid(cfg):
        vals = (1.0 - r * r) * np.abs(_finite(f.ring_values(1, r, n), "bloch_norm"))
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, best_r, best_t = float(vals[i]), float(r), i / n
    grid_value = best

    def along_r(t):
        return lambda r: (1.0 - r * r) * np.abs(f.derivative(1, r * np.exp(2j * np.pi * t)))

    width = 1.0 / n
    for _ in range(refine_rounds):
        val, r = radial_sup(along_r(best_t), cfg)
        if val > best:
            best, best_r = val, r
        ts = best_t + width * np.linspace(-1.0, 1.0, 65)
        vals = (1.0 - best_r ** 2) * np.abs(f.derivative(1, best_r * np.exp(2j * np.pi * ts)))
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, best_t = float(vals[i]), float(ts[i])
        width /= 16.0
    head = abs(f.derivative(0, 0.0))
    return NormResult(
        head + best,
        True,
        {"grid_sup": grid_value, "refined_sup": best, "argmax_r": best_r, "argmax_t": best_t % 1.0, "f0": head},
    )


def bmoa_norm(f, cfg: QuadConfig | None = None, level_max: int | None = None) -> NormResult:
    """Largest mean oscillation over both dyadic arc families (in turns).

    The oscillation over an arc ``I`` is ``m(I)^-1 int_I |f - f_I| dm`` with
    ``f_I`` the average over ``I``; each arc holds ``N / 2^j`` boundary
    samples, so level ``j`` is admissible while that count is at least 16.
    """
    cfg = cfg or QuadConfig()
    n = cfg.N_circle
    top = int(math.log2(n)) - 4
    level_max = top if level_max is None else check_level(level_max)
    if level_max > top:
        raise ParameterError(f"level_max {level_max} needs N_circle >= {16 << level_max}")
    samples = _finite(f.boundary_samples(n), "bmoa_norm")
    best, where = 0.0, (0, 0.0)
    per_level = []
    for j in range(level_max + 1):
        k = 1 << j
        level_best = 0.0
        for offset in (0, n // (2 * k)):
            blocks = np.roll(samples, -offset).reshape(k, n // k)
            avg = blocks.mean(axis=1, keepdims=True)
            osc = np.abs(blocks - avg).mean(axis=1)
            i = int(np.argmax(osc))
            if osc[i] > level_best:
                level_best = float(osc[i])
            if osc[i] > best:
                best, where = float(osc[i]), (j, (i / k + offset / n) % 1.0)
        per_level.append(level_best)
    return NormResult(best, True, {"level_max": level_max, "best_level": where[0], "best_start": where[1], "per_level": per_level})


def _angles_sup(f, m: int, exponent: float, cfg: QuadConfig, shift: float = 0.0):
    """Per-angle ``sup_r |f^(m)(r e^{2 pi i t})| (1 - r)^exponent`` on ``N_circle`` angles."""
    n = cfg.N_circle
    t = (np.arange(n) + shift) / n
    u = np.exp(2j * np.pi * t)

    def g(r):
        if r.shape[0] == 1:
            out = np.empty((n, r.shape[1]))
            for i, ri in enumerate(r[0]):
                out[:, i] = np.abs(f.ring_values(m, ri, n, shift)) * (1.0 - ri) ** exponent
            return out
        rr = r[:, 0]
        return (np.abs(f.derivative(m, rr * u)) * (1.0 - rr) ** exponent)[:, None]

    return radial_sup(g, cfg, batched=True)


def triebel_norm(f, spec: SpaceSpec, cfg: QuadConfig | None = None, seminorm: bool = False, shift: float = 0.0) -> NormResult:
    """``HF_s^{p,q}`` quasinorm: outer ``L^p(dt)`` of the radial ``L^q`` means."""
    cfg = cfg or QuadConfig()
    if spec.kind != "triebel":
        raise ParameterError(f"triebel_norm needs a triebel SpaceSpec, got {spec.kind}")
    m, s, p, q = spec.m, spec.s, spec.p, spec.q
    f._check_order(m)
    n = cfg.N_circle
    if math.isinf(q):
        inner, argmax = _angles_sup(f, m, m - s, cfg, shift)
        certified = True
        diag = {"argmax_r_median": float(np.median(argmax))}
    else:
        alpha = (m - s) * q - 1.0
        nodes, weights = radial_rule(alpha, cfg)
        inner = np.zeros(n)
        for r, w in zip(nodes, weights):
            inner += w * np.abs(_finite(f.ring_values(m, r, n, shift), "triebel_norm")) ** q
        inner = inner ** (1.0 / q)
        certified = False
        diag = {"radial_nodes": int(nodes.size)}
    semi = float(np.mean(inner ** p) ** (1.0 / p))
    head = 0.0 if seminorm else _taylor_head(f, m)
    diag.update({"seminorm": semi, "taylor_head": head, "spec": spec.as_dict()})
    return NormResult(semi + head, certified, diag)


def besov_norm(f, spec: SpaceSpec, cfg: QuadConfig | None = None, seminorm: bool = False) -> NormResult:
    """``HB_s^{p,q}`` quasinorm: radial ``L^q`` norm of the circle ``L^p`` means."""
    cfg = cfg or QuadConfig()
    if spec.kind != "besov":
        raise ParameterError(f"besov_norm needs a besov SpaceSpec, got {spec.kind}")
    m, s, p, q = spec.m, spec.s, spec.p, spec.q
    f._check_order(m)
    n = cfg.N_circle

    def circle_norm(r):
        return f.circle_means(m, r, p, n) ** (1.0 / p)

    if math.isinf(q):
        semi, r_star = radial_sup(lambda r: circle_norm(r) * (1.0 - r) ** (m - s), cfg)
        certified = True
        diag = {"argmax_r": r_star}
    else:
        alpha = (m - s) * q - 1.0
        semi = radial_integral(lambda r: circle_norm(r) ** q, alpha, cfg) ** (1.0 / q)
        certified = False
        diag = {}
    head = 0.0 if seminorm else _taylor_head(f, m)
    diag.update({"seminorm": float(semi), "taylor_head": head, "spec": spec.as_dict()})
    return NormResult(float(semi) + head, certified, diag)


def q_variation(f, q: float, t: float, r_max: float, cfg: QuadConfig | None = None) -> float:
    """``int_0^{r_max} |f'(r e^{2 pi i t})|^q (1 - r)^(q-1) dr``."""
    cfg = cfg or QuadConfig()
    if q < 1:
        raise ParameterError(f"q must be >= 1, got {q}")
    if not r_max < 1.0:
        raise ParameterError(f"r_max must be < 1 (only partial integrals are computed), got {r_max}")
    if r_max <= 0.0:
        return 0.0
    f._check_order(1)
    u = np.exp(2j * np.pi * t)
    return float(radial_integral(lambda r: np.abs(f.derivative(1, r * u)) ** q, q - 1.0, cfg, upper=r_max))

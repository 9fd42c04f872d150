"""Analytic test functions with closed-form derivatives.

Every variant implements ``derivative(m, z)`` on complex arrays.  Circle
samples go through ``ring_values`` (an FFT for polynomials, so Fejer
polynomials of degree 4096 are cheap) and circle means of ``|f^(m)|^p``
through ``circle_mean``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import CapabilityError, DomainError, ParameterError


def _pochhammer(x: float, m: int) -> float:
    out = 1.0
    for i in range(m):
        out *= x + i
    return out


def _falling(n: int, m: int) -> float:
    out = 1.0
    for i in range(m):
        out *= n - i
    return out


class HoloFunction:
    """Base class: analytic in the disc, derivatives of order ``<= m_max``."""

    m_max: float = math.inf

    def _derivative(self, m: int, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _check_order(self, m):
        if int(m) != m or m < 0:
            raise ParameterError(f"derivative order must be a non-negative integer, got {m}")
        if m > self.m_max:
            raise CapabilityError(f"{self.label} supports derivatives up to order {self.m_max}, not {m}")

    def derivative(self, m: int, z):
        self._check_order(m)
        z = np.asarray(z, dtype=complex)
        out = self._derivative(int(m), z)
        return out if out.ndim else complex(out)

    def __call__(self, z):
        return self.derivative(0, z)

    def ring_values(self, m: int, r: float, n: int, shift: float = 0.0):
        """``f^(m)(r exp(2 pi i (j + shift)/n))`` for ``j = 0..n-1``."""
        z = r * np.exp(2j * np.pi * (np.arange(n) + shift) / n)
        return self.derivative(m, z)

    def boundary_samples(self, n: int):
        return self.ring_values(0, 1.0, n)

    def circle_mean(self, m: int, r: float, p: float, n: int) -> float:
        """``int_0^1 |f^(m)(r e^{2 pi i t})|^p dt`` by the ``n``-node circle rule."""
        return float(np.mean(np.abs(self.ring_values(m, r, n)) ** p))

    def circle_means(self, m: int, radii, p: float, n: int):
        """:meth:`circle_mean` over an array of radii."""
        radii = np.asarray(radii, dtype=float)
        flat = [self.circle_mean(m, r, p, n) for r in radii.reshape(-1)]
        return np.array(flat).reshape(radii.shape)

    def scaled(self, c: complex) -> "HoloFunction":
        return Scaled(self, complex(c))

    def rotated(self, theta: float) -> "HoloFunction":
        return Rotated(self, float(theta))

    @property
    def label(self) -> str:
        return type(self).__name__


class TaylorPolynomial(HoloFunction):
    def __init__(self, coefficients):
        coeffs = np.asarray(coefficients, dtype=complex).reshape(-1)
        if coeffs.size == 0:
            raise ParameterError("a polynomial needs at least one coefficient")
        self.coefficients = coeffs

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def _shifted(self, m):
        c = self.coefficients
        if m > self.degree:
            return np.zeros(1, dtype=complex)
        k = np.arange(m, c.size)
        factor = np.ones(k.size)
        for i in range(m):
            factor *= k - i
        return c[m:] * factor

    def _derivative(self, m, z):
        d = self._shifted(m)
        out = np.full(z.shape, d[-1], dtype=complex)
        for coef in d[-2::-1]:
            out = out * z + coef
        return out

    def ring_values(self, m, r, n, shift=0.0):
        d = self._shifted(m)
        k = np.arange(d.size)
        a = d * (float(r) ** k) * np.exp(2j * np.pi * k * shift / n)
        folded = np.zeros(n, dtype=complex)
        np.add.at(folded, k % n, a)
        return n * np.fft.ifft(folded)

    @property
    def label(self):
        return f"poly(degree={self.degree})"


class Fejer(TaylorPolynomial):
    """``f_n(z) = sum_{j=1}^n z^j e^{i(n-j+1)phi} / (n-j+1)`` (phi in radians)."""

    def __init__(self, n: int, phi: float = 0.0):
        if int(n) != n or n <= 0:
            raise ParameterError(f"Fejer degree n must be a positive integer, got {n}")
        self.n = int(n)
        self.phi = float(phi)
        j = np.arange(1, self.n + 1)
        k = self.n - j + 1
        coeffs = np.zeros(self.n + 1, dtype=complex)
        coeffs[1:] = np.exp(1j * k * self.phi) / k
        super().__init__(coeffs)

    @property
    def witness_point(self) -> complex:
        return complex(np.exp(-1.0 / self.n) * np.exp(1j * self.phi))

    @property
    def label(self):
        return f"fejer:n={self.n},phi={self.phi:g}"


class Monomial(HoloFunction):
    def __init__(self, n: int):
        if int(n) != n or n <= 0:
            raise ParameterError(f"monomial degree must be a positive integer, got {n}")
        self.n = int(n)

    def _derivative(self, m, z):
        if m > self.n:
            return np.zeros(z.shape, dtype=complex)
        return _falling(self.n, m) * z ** (self.n - m)

    def ring_values(self, m, r, n, shift=0.0):
        if m > self.n:
            return np.zeros(n, dtype=complex)
        k = self.n - m
        t = (np.arange(n) + shift) / n
        return _falling(self.n, m) * float(r) ** k * np.exp(2j * np.pi * ((k * t) % 1.0))

    @property
    def label(self):
        return f"monomial:n={self.n}"


class KernelPower(HoloFunction):
    """``k_lambda^l(z) = (1 - conj(lambda) z)^(-l)``."""

    def __init__(self, lam: complex, l: int = 1):
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise ParameterError(f"kernel parameter needs |lambda| < 1, got {abs(lam)}")
        if int(l) != l or l <= 0:
            raise ParameterError(f"kernel power l must be a positive integer, got {l}")
        self.lam = lam
        self.l = int(l)

    def _derivative(self, m, z):
        lb = self.lam.conjugate()
        return lb ** m * _pochhammer(self.l, m) * (1.0 - lb * z) ** (-self.l - m)

    @property
    def label(self):
        return f"kernel:lambda={self.lam.real:g}{self.lam.imag:+g}i,l={self.l}"


class Lacunary(HoloFunction):
    """Truncation ``g_N(z) = sum_{n=1}^N z^(2^n) / n^(1/q)``."""

    m_max = 1

    def __init__(self, q: float, N: int):
        if not (1.0 <= q < 2.0):
            raise ParameterError(f"lacunary exponent q must lie in [1, 2), got {q}")
        if int(N) != N or N <= 0:
            raise ParameterError(f"truncation N must be a positive integer, got {N}")
        self.q = float(q)
        self.N = int(N)
        self.coefficients = np.arange(1, self.N + 1) ** (-1.0 / self.q)

    def _sum(self, m, powers, partials):
        terms = powers if m == 0 else [(2.0 ** n) * p for n, p in enumerate(partials, start=1)]
        out = np.zeros_like(terms[0])
        for a, term in zip(self.coefficients, terms):
            out += a * term
        return out

    def _derivative(self, m, z):
        return self._sum(m, *_dyadic_powers(z, self.N))

    def ring_values(self, m, r, n, shift=0.0):
        self._check_order(m)
        return self._sum(m, *_ring_dyadic_powers(r, n, shift, self.N))

    @property
    def label(self):
        return f"lacunary:q={self.q:g},N={self.N}"


class Blaschke(HoloFunction):
    """``B_n(z) = prod_{k=1}^n (z^(2^k) - a) / (1 - a z^(2^k))`` with ``a = 1 - 1/n``."""

    m_max = 1

    def __init__(self, n: int):
        if int(n) != n or n <= 0:
            raise ParameterError(f"Blaschke index n must be a positive integer, got {n}")
        self.n = int(n)
        self.a = 1.0 - 1.0 / self.n

    def _factors(self, powers, partials):
        a = self.a
        facs, dfacs = [], []
        for k, (power, partial) in enumerate(zip(powers, partials), start=1):
            den = 1.0 - a * power
            facs.append((power - a) / den)
            dfacs.append((1.0 - a * a) * (2.0 ** k) * partial / den ** 2)
        return facs, dfacs

    def _combine(self, m, powers, partials):
        facs, dfacs = self._factors(powers, partials)
        if m == 0:
            out = np.ones_like(facs[0])
            for f in facs:
                out = out * f
            return out
        # product rule with prefix/suffix products, valid at the zeros of the factors
        prefix = [np.ones_like(facs[0])]
        for f in facs[:-1]:
            prefix.append(prefix[-1] * f)
        out = np.zeros_like(facs[0])
        suffix = np.ones_like(facs[0])
        for k in range(self.n - 1, -1, -1):
            out += dfacs[k] * prefix[k] * suffix
            suffix = suffix * facs[k]
        return out

    def _derivative(self, m, z):
        return self._combine(m, *_dyadic_powers(z, self.n))

    def ring_values(self, m, r, n, shift=0.0):
        self._check_order(m)
        return self._combine(m, *_ring_dyadic_powers(r, n, shift, self.n))

    def _transfer_ok(self, m, p):
        return m == 1 and float(p).is_integer() and int(p) >= 2 and int(p) % 2 == 0

    def circle_mean(self, m, r, p, n):
        if self._transfer_ok(m, p) and 0 < r < 1:
            return blaschke_derivative_mean(self, r, int(p) // 2)
        return super().circle_mean(m, r, p, n)

    def circle_means(self, m, radii, p, n):
        radii = np.asarray(radii, dtype=float)
        if self._transfer_ok(m, p) and np.all((radii > 0) & (radii < 1)):
            return blaschke_derivative_means(self, radii, int(p) // 2).reshape(radii.shape)
        return super().circle_means(m, radii, p, n)

    @property
    def label(self):
        return f"blaschke:n={self.n}"


def _dyadic_powers(z, count):
    """``z^(2^k)`` and ``z^(2^k - 1)`` for ``k = 1..count`` by repeated squaring."""
    powers, partials = [], []
    power = z.astype(complex)
    partial = np.ones_like(power)
    for _ in range(count):
        partial = partial * power
        power = power * power
        powers.append(power)
        partials.append(partial)
    return powers, partials


def _ring_dyadic_powers(r, n, shift, count):
    """Same as :func:`_dyadic_powers` on a ring, with angles reduced exactly.

    Repeated squaring of a unimodular number loses about ``2^k`` ulps of
    phase; reducing ``2^k (j + shift) / n`` modulo 1 first keeps the boundary
    values unimodular to rounding.
    """
    j = np.arange(n, dtype=float) + shift
    powers, partials = [], []
    for k in range(1, count + 1):
        e = 1 << k
        radius = float(r) ** e
        frac = np.mod(e * j, n) / n
        powers.append(radius * np.exp(2j * np.pi * frac))
        frac1 = np.mod((e - 1) * j, n) / n
        partials.append(float(r) ** (e - 1) * np.exp(2j * np.pi * frac1))
    return powers, partials


def blaschke_derivative_mean(f: Blaschke, r: float, half_power: int, tol_digits: float = 40.0) -> float:
    """``int_0^1 |B_n'(r e^{2 pi i t})|^(2J) dt`` for ``J = half_power``.

    With ``x_k = 2^k t`` and ``w_k = r^(2^k) e^{2 pi i x_k}``,
    ``z B'(z) = S = sum_k c_k prod_{j != k} phi_j`` where ``phi = b(w)`` and
    ``c = 2^k w b'(w)``.  ``|S|^(2J)`` is the top coefficient of a product of
    per-factor polynomials in nilpotent symbols, and the integral over ``t``
    of a product of functions of ``2^k t`` is evaluated exactly by the
    transfer operator of the doubling map, which keeps only the even Fourier
    modes.  Every stage stays band-limited, so a grid of a few thousand
    points is exact to rounding for all ``r < 1``.
    """
    if not 0.0 < r < 1.0:
        raise DomainError(f"radius must lie in (0, 1), got {r}")
    a, J = f.a, int(half_power)
    decay = -math.log(a * r * r) if a > 0 else math.inf
    band = (tol_digits + 4.0 * math.log(f.n + 2.0)) / decay if decay < math.inf else 0.0
    band = int(min(band, 1 << 16)) + 4 * J + 8
    M = 1 << max(6, math.ceil(math.log2(4 * band + 64)))
    q = M // 4
    binom = [[comb(u, v) for v in range(J + 1)] for u in range(J + 1)]
    e = np.exp(2j * np.pi * np.arange(M) / M)

    state = np.zeros((J + 1, J + 1, M), dtype=complex)
    state[0, 0] = 1.0
    rk = r
    for k in range(1, f.n + 1):
        rk = rk * rk  # r^(2^k)
        if k > 1:
            # doubling-map transfer operator: keep the even Fourier modes
            spec = np.fft.fft(state, axis=-1)
            dec = np.zeros_like(spec)
            dec[..., :q] = spec[..., 0:2 * q:2]
            dec[..., M - q + 1:] = spec[..., M - 2 * q + 2::2]
            state = np.fft.ifft(dec, axis=-1)
        w = rk * e
        den = 1.0 - a * w
        phi = (w - a) / den
        c = (2.0 ** k) * (1.0 - a * a) * w / (den * den)
        state = _nilpotent_step(state, phi, c, J, binom, 0)
        state = _nilpotent_step(state, np.conj(phi), np.conj(c), J, binom, 1)
    return float(np.mean(state[J, J]).real) / r ** (2 * J)


def blaschke_derivative_means(f: Blaschke, radii, half_power: int, tol_digits: float = 40.0):
    """:func:`blaschke_derivative_mean` over an array of radii."""
    radii = np.asarray(radii, dtype=float)
    flat = [blaschke_derivative_mean(f, r, half_power, tol_digits) for r in radii.reshape(-1)]
    return np.array(flat).reshape(radii.shape)


def _powers(x, top):
    out = [np.ones_like(x)]
    for _ in range(top):
        out.append(out[-1] * x)
    return out


def _nilpotent_step(state, phi, c, J, binom, axis):
    """Multiply by ``prod_{i=1}^J (phi + eps_i c)`` along one nilpotent axis."""
    cp = _powers(c, J)
    pp = _powers(phi, J)
    moved = state if axis == 0 else state.swapaxes(0, 1)
    new = np.zeros_like(moved)
    for u in range(J + 1):
        for v in range(u + 1):
            new[u] += binom[u][v] * (cp[u - v] * pp[J - u + v]) * moved[v]
    return new if axis == 0 else new.swapaxes(0, 1)


class Scaled(HoloFunction):
    def __init__(self, base: HoloFunction, c: complex):
        self.base = base
        self.c = c
        self.m_max = base.m_max

    def _derivative(self, m, z):
        return self.c * self.base._derivative(m, z)

    def ring_values(self, m, r, n, shift=0.0):
        self._check_order(m)
        return self.c * self.base.ring_values(m, r, n, shift)

    def circle_mean(self, m, r, p, n):
        return abs(self.c) ** p * self.base.circle_mean(m, r, p, n)

    @property
    def label(self):
        return f"{self.c}*{self.base.label}"


class Rotated(HoloFunction):
    """``z -> f(e^{2 pi i theta} z)``."""

    def __init__(self, base: HoloFunction, theta: float):
        self.base = base
        self.theta = theta
        self.m_max = base.m_max

    def _derivative(self, m, z):
        u = np.exp(2j * np.pi * self.theta)
        return u ** m * self.base._derivative(m, u * z)

    @property
    def label(self):
        return f"rot({self.theta:g})*{self.base.label}"




def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("i", "j")
    if not s:
        raise ParameterError("empty number")
    if s.endswith("j") and s[:-1] in ("", "+", "-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise ParameterError(f"cannot parse complex number {text!r}") from None


def _kv(body: str, spec: str) -> dict:
    out = {}
    for part in filter(None, body.split(",")):
        if "=" not in part:
            raise ParameterError(f"expected key=value in {spec!r}, got {part!r}")
        key, val = part.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def _int(kv, key, spec):
    try:
        val = float(kv[key])
    except KeyError:
        raise ParameterError(f"{spec!r}: missing parameter {key}") from None
    except ValueError:
        raise ParameterError(f"{spec!r}: parameter {key} is not a number") from None
    if not val.is_integer():
        raise ParameterError(f"{spec!r}: parameter {key} must be an integer")
    return int(val)


def _float(kv, key, spec, default=None):
    if key not in kv:
        if default is None:
            raise ParameterError(f"{spec!r}: missing parameter {key}")
        return default
    try:
        return float(kv[key])
    except ValueError:
        raise ParameterError(f"{spec!r}: parameter {key} is not a number") from None


def make_function(spec: str) -> HoloFunction:
    """Parse the function DSL, e.g. ``"kernel:lambda=0.9+0i,l=2"``."""
    if ":" not in spec:
        raise ParameterError(f"function spec {spec!r} must look like 'kind:params'")
    kind, body = spec.split(":", 1)
    kind = kind.strip().lower()
    if kind == "poly":
        return TaylorPolynomial([parse_complex(c) for c in body.split(",")])
    kv = _kv(body, spec)
    if kind == "kernel":
        if "lambda" not in kv:
            raise ParameterError(f"{spec!r}: missing parameter lambda")
        return KernelPower(parse_complex(kv["lambda"]), _int(kv, "l", spec) if "l" in kv else 1)
    if kind == "fejer":
        return Fejer(_int(kv, "n", spec), _float(kv, "phi", spec, 0.0))
    if kind == "lacunary":
        return Lacunary(_float(kv, "q", spec), _int(kv, "N", spec))
    if kind == "blaschke":
        return Blaschke(_int(kv, "n", spec))
    if kind == "monomial":
        return Monomial(_int(kv, "n", spec))
    raise ParameterError(f"unknown function kind {kind!r}")


def check_open_disc(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("point outside the open disc")
    return z

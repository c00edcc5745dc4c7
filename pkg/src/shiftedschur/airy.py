"""Higher-order Airy functions ``Ai_p`` and the ``p``-Airy kernel.

``Ai_p(x) = (1/2 pi i) int_L exp(s zeta^(p+1)/(p+1) - x zeta) d zeta`` with
``s = (-1)^(p/2 + 1)``, where ``L`` comes in from infinity in the lower
sector and leaves in the conjugate upper sector.  For real ``x`` the
integrand is conjugation-symmetric, so only the upper half of the contour is
integrated and ``Ai_p = Im(.)/pi``.

The upper half starts on the real axis, climbs vertically to the dominant
saddle point and leaves along the mid-sector ray, where
``Re(s zeta^(p+1)) = -|zeta|^(p+1)``.  Passing through the saddle keeps full
relative accuracy at large positive ``x``; for negative ``x`` the vertical
piece runs along the imaginary axis, where the integrand is unimodular.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial.legendre import leggauss

from .kernel import ConsistencyError

GL_NODES = 32
DECAY_DEPTH = 60.0


def _check_p(p: int) -> int:
    p = int(p)
    if p < 2 or p % 2:
        raise ValueError(f"p must be a positive even integer, got {p}")
    return p


def sign(p: int) -> int:
    """``(-1)^(p/2 + 1)``, the sign in the ``p``-Airy equation."""
    return -1 if (_check_p(p) // 2) % 2 == 0 else 1


def tau_roots(p: int) -> np.ndarray:
    """Roots of ``tau^p = (-1)^(p/2+1)``."""
    s = sign(p)
    base = 0.0 if s > 0 else math.pi
    return np.exp(1j * (base + 2 * math.pi * np.arange(p)) / p)


def re_tau_star(p: int) -> float:
    return float(np.max(tau_roots(p).real))


def decay_rate(p: int) -> float:
    """``(p/(p+1)) Re(tau*)``: ``log Ai_p(x) ~ -rate * x^((p+1)/p)``."""
    return p / (p + 1) * re_tau_star(p)


def ray_angle(p: int) -> float:
    return math.pi / 2 - math.pi / (2 * (p + 1))


def terminal_root(p: int) -> complex:
    """Root of ``tau^p = s`` whose saddle connects to the terminal valley.

    It is the root with the largest argument not exceeding the mid-sector
    ray angle.  For ``p = 2, 4`` it is also the root of largest real part.
    """
    roots = tau_roots(p)
    ang = np.angle(roots)
    ok = (ang >= -1e-12) & (ang <= ray_angle(p))
    return complex(roots[ok][np.argmax(ang[ok])])


@lru_cache(maxsize=None)
def _gl(n: int):
    return leggauss(n)


class AiryEvaluator:
    """Contour-quadrature evaluator for one even order ``p``."""

    def __init__(self, p: int, nodes_per_panel: int = GL_NODES):
        self.p = _check_p(p)
        self.s = sign(p)
        self.alpha = ray_angle(p)
        self.direction = complex(math.cos(self.alpha), math.sin(self.alpha))
        self.nodes_per_panel = nodes_per_panel
        self.tau = terminal_root(p)
        self._panels: dict[int, np.ndarray] = {}

    def g(self, zeta, x):
        return self.s * zeta ** (self.p + 1) / (self.p + 1) - x * zeta

    def dg(self, zeta, x):
        return self.s * zeta**self.p - x

    def saddle(self, x: float) -> complex:
        if x > 0:
            return self.tau * x ** (1.0 / self.p)
        if x < 0:
            return 1j * (-x) ** (1.0 / self.p)
        return 0j

    def _ray_length(self, z0: complex, x: float) -> float:
        g0 = self.g(z0, x).real
        r = 1.0
        while self.g(z0 + r * self.direction, x).real - g0 > -DECAY_DEPTH:
            r *= 1.25
        return r

    def _piece(self, a: complex, b: complex, x: float):
        L = abs(b - a)
        if L == 0:
            return np.zeros(0, complex), np.zeros(0, complex)
        u = np.linspace(0.0, 1.0, 65)
        rate = float(np.max(np.abs(self.dg(a + (b - a) * u, x))))
        panels = int(math.ceil(L)) + int(math.ceil(L * rate / 10.0))
        t, w = _gl(self.nodes_per_panel)
        edges = np.linspace(0.0, 1.0, panels + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        uu = (mid[:, None] + half[:, None] * t[None, :]).ravel()
        ww = (half[:, None] * w[None, :]).ravel()
        return a + (b - a) * uu, ww * (b - a)

    def contour(self, x: float):
        """Nodes and complex weights of the upper half contour."""
        z0 = self.saddle(x)
        start = complex(z0.real, 0.0)
        z1, w1 = self._piece(start, z0, x)
        R = self._ray_length(z0, x)
        z2, w2 = self._piece(z0, z0 + R * self.direction, x)
        return np.concatenate([z1, z2]), np.concatenate([w1, w2])

    def direct(self, x: float, k: int = 0, check: bool = False) -> float:
        """``d^k Ai_p / dx^k`` at real ``x`` by contour quadrature."""
        z, w = self.contour(float(x))
        f = np.exp(self.g(z, x))
        if k:
            f = f * (-z) ** k
        I = np.sum(f * w)
        if check:
            # lower half computed independently; must be the mirror image
            zl, wl = np.conj(z), -np.conj(w)
            fl = np.exp(self.g(zl, x)) * ((-zl) ** k if k else 1)
            total = (I + np.sum(fl * wl)) / (2j * math.pi)
            scale = np.sum(np.abs(f * w)) / math.pi
            if abs(total.imag) > 1e-12 * max(scale, 1e-300) + 1e-300:
                raise ConsistencyError(f"imaginary residue {total.imag:.2e} at x={x}")
        return float(I.imag / math.pi)

    # piecewise Chebyshev cache: panel j covers [2j, 2j+2]
    PANEL = 2.0
    DEGREE = 40

    def _panel(self, j: int) -> np.ndarray:
        c = self._panels.get(j)
        if c is None:
            lo = j * self.PANEL
            pts = C.chebpts2(self.DEGREE + 1)
            vals = np.array([self.direct(lo + (u + 1) * self.PANEL / 2) for u in pts])
            c = C.chebfit(pts, vals, self.DEGREE)
            self._panels[j] = c
        return c

    def __call__(self, x):
        """``Ai_p`` at many points through the cached Chebyshev panels."""
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        j = np.floor(flat / self.PANEL).astype(np.int64)
        out = np.empty_like(flat)
        for jj in np.unique(j):
            sel = j == jj
            u = 2.0 * (flat[sel] - jj * self.PANEL) / self.PANEL - 1.0
            out[sel] = C.chebval(u, self._panel(int(jj)))
        return out.reshape(x.shape)

    def kernel_tail_point(self, depth: float = 40.0) -> float:
        """``u`` with ``rate * u^((p+1)/p) = depth``; ``Ai_p`` is below ``e^-depth`` past it."""
        return (depth / decay_rate(self.p)) ** (self.p / (self.p + 1))


@lru_cache(maxsize=None)
def evaluator(p: int) -> AiryEvaluator:
    return AiryEvaluator(p)


def airy_p(p: int, x: float) -> float:
    """``Ai_p(x)`` for real ``x`` with ``|x| <= 50``."""
    if abs(x) > 50:
        raise ValueError("supported range is |x| <= 50")
    return evaluator(p).direct(x, 0, check=True)


def airy_derivative(p: int, x: float, k: int) -> float:
    """``k``-th derivative of ``Ai_p`` at ``x``, ``0 <= k <= p``."""
    if not 0 <= k <= p:
        raise ValueError("derivative order must lie in [0, p]")
    return evaluator(p).direct(x, k, check=True)


def airy_oscillatory(p: int, x: float, T: float) -> float:
    """``(1/pi) int_0^inf cos(t^(p+1)/(p+1) + x t) dt`` on the real line.

    ``[0, T]`` by Gauss-Legendre panels, ``[T, inf)`` by two integrations by
    parts (remainder ``O(T^(-3p))``).  Needs ``T^p + x > 0``.
    """
    p = _check_p(p)
    ph = lambda t: t ** (p + 1) / (p + 1) + x * t
    d1 = T**p + x
    if d1 <= 0:
        raise ValueError("T too small for integration by parts")
    d2 = p * T ** (p - 1)
    panels = int(math.ceil(T * (1 + (T**p + abs(x)) / 10.0)))
    t, w = _gl(GL_NODES)
    edges = np.linspace(0.0, T, panels + 1)
    mid, half = 0.5 * (edges[1:] + edges[:-1]), 0.5 * (edges[1:] - edges[:-1])
    tt = (mid[:, None] + half[:, None] * t).ravel()
    ww = (half[:, None] * w).ravel()
    body = math.fsum(ww * np.cos(ph(tt)))
    # int_T^inf cos(phi) = -sin(phi)/phi' + (phi''/phi'^3) cos(phi) at T, plus O(phi'^-4)
    tail = -math.sin(ph(T)) / d1 + d2 / d1**3 * math.cos(ph(T))
    return (body + tail) / math.pi


def airy_kernel(p: int, x: float, y: float, depth: float = 40.0) -> float:
    """``K(x, y) = int_0^inf Ai_p(x + z) Ai_p(y + z) dz``."""
    ev = evaluator(p)
    zmax = max(ev.kernel_tail_point(depth) - min(x, y), 1.0)
    panels = int(math.ceil(zmax))
    t, w = _gl(GL_NODES)
    edges = np.linspace(0.0, zmax, panels + 1)
    mid, half = 0.5 * (edges[1:] + edges[:-1]), 0.5 * (edges[1:] - edges[:-1])
    z = (mid[:, None] + half[:, None] * t).ravel()
    wz = (half[:, None] * w).ravel()
    return float(np.sum(wz * ev(x + z) * ev(y + z)))


def airy_kernel_closed(p: int, x: float, y: float) -> float:
    """Christoffel-Darboux form of the kernel from the ``p``-Airy equation.

    ``(x - y) K = -s sum_j (-1)^j Ai^(p-1-j)(x) Ai^(j)(y)``; the diagonal
    is the ``x``-derivative of the right-hand side.
    """
    p = _check_p(p)
    ev = evaluator(p)
    s = ev.s
    dx = [ev.direct(x, j) for j in range(p + 1)]
    if x == y:
        return -s * math.fsum((-1) ** j * dx[p - j] * dx[j] for j in range(p))
    dy = [ev.direct(y, j) for j in range(p)]
    num = -s * math.fsum((-1) ** j * dx[p - 1 - j] * dy[j] for j in range(p))
    return num / (x - y)

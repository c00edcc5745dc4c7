"""Wave function, its Fourier coefficients ``J(m)`` and the correlation kernel.

For real ``t`` the wave function on the unit circle is the pure phase
``exp(4i sum t_n sin(n theta))``.  Its Fourier coefficients are real and obey
``J(-m) = (-1)^m J(m)``; the kernel is

    K(a, b) = J(a) J(b) / 2 + sum_{k >= 1} (-1)^k J(a + k) J(b - k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .miwa import MiwaParams

FLOOR_TOL = 1e-16
NODE_BUDGET = 10_000_000


class ConsistencyError(ArithmeticError):
    """A numerical self-check failed (e.g. a value that must be real is not)."""


def estimate_bandwidth(params: MiwaParams) -> int:
    """Index beyond which ``|J(m)|`` is below rounding.

    ``J(m)`` is a Bessel-like coefficient: negligible once ``m`` exceeds the
    largest phase frequency ``s = 4 sum n|t_n|`` by a few transition widths
    ``s^(1/3)``.
    """
    s = params.spread
    return int(math.ceil(s + 8.0 * s ** (1.0 / 3.0) + 16))


def wave_fn(params: MiwaParams, theta):
    """``J(e^{i theta}; t) = exp(4i sum t_n sin(n theta))``."""
    th = np.asarray(theta, dtype=float)
    phase = np.zeros_like(th)
    for n, t in params.coeffs:
        phase = phase + 4.0 * t * np.sin(n * th)
    out = np.exp(1j * phase)
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class JTable:
    """``J(m)`` for ``0 <= m <= 2B``; larger ``|m|`` is treated as zero."""

    params: MiwaParams
    values: np.ndarray
    bandwidth: int
    nodes: int
    floor_tol: float = FLOOR_TOL

    @classmethod
    def build(cls, params: MiwaParams, nodes: int | None = None, bandwidth: int | None = None) -> "JTable":
        B = estimate_bandwidth(params) if bandwidth is None else int(bandwidth)
        M = 4 * B + 64 if nodes is None else int(nodes)
        if M > NODE_BUDGET:
            raise ValueError(f"quadrature needs {M} nodes, above the budget of {NODE_BUDGET}")
        if M < 2 * B + 1:
            raise ValueError(f"{M} nodes alias coefficients up to index {B}")
        # trapezoid rule on the circle, all coefficients at once
        theta = 2.0 * math.pi * np.arange(M) / M
        coeffs = np.fft.fft(wave_fn(params, theta)) / M
        top = min(2 * B, M // 2 - 1)
        vals = coeffs[: top + 1]
        residue = float(np.max(np.abs(vals.imag)))
        # FFT round-off accumulates like a random walk over the M nodes
        if residue > 4e-15 * math.sqrt(M) + 1e-14:
            raise ConsistencyError(f"imaginary residue {residue:.2e} in J coefficients")
        return cls(params, np.ascontiguousarray(vals.real), B, M)

    @property
    def top(self) -> int:
        return len(self.values) - 1

    @property
    def truncation_bound(self) -> float:
        """Bound on terms dropped past the table end (super-exponential decay)."""
        edge = float(np.max(np.abs(self.values[-8:])))
        return 2.0 * max(edge, self.floor_tol)

    def __call__(self, m):
        """``J(m)`` for integer scalar or array ``m`` (any sign)."""
        m = np.asarray(m, dtype=np.int64)
        am = np.abs(m)
        inside = am <= self.top
        v = np.where(inside, self.values[np.minimum(am, self.top)], 0.0)
        v = np.where((m < 0) & (am % 2 == 1), -v, v)
        return float(v) if v.ndim == 0 else v

    def parseval(self) -> float:
        """``sum_{m in Z} J(m)^2``; equals 1 since the wave function is unimodular."""
        v2 = self.values**2
        return math.fsum(v2[1:]) * 2.0 + v2[0]

    @property
    def tail_squares(self) -> np.ndarray:
        """``T[m] = sum_{k > m} J(k)^2`` for ``0 <= m <= top``."""
        v2 = self.values**2
        rev = np.cumsum(v2[::-1])[::-1]
        return np.append(rev[1:], 0.0)


@lru_cache(maxsize=64)
def table_for(params: MiwaParams) -> JTable:
    return JTable.build(params)


def j_coefficient(params: MiwaParams, m: int) -> float:
    """``J(m) = (1/2pi) int exp(i[4 sum t_n sin(n theta) - m theta]) d theta``."""
    return table_for(params)(m)


def kernel_K(table: JTable, a: int, b: int) -> float:
    """``K(a, b)`` by the series, summed with compensation."""
    kmax = min(table.top - a, b + table.top)
    head = 0.5 * table(a) * table(b)
    if kmax < 1:
        return head
    k = np.arange(1, kmax + 1)
    signs = np.where(k % 2 == 1, -1.0, 1.0)
    terms = signs * table(a + k) * table(b - k)
    return math.fsum(np.append(terms, head))


def kernel_matrix(table: JTable, rows, cols) -> np.ndarray:
    """``[K(r, c)]`` for integer arrays ``rows``, ``cols``."""
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    out = 0.5 * np.outer(table(rows), table(cols))
    if rows.size == 0 or cols.size == 0:
        return out
    kmax = min(table.top - int(rows.min()), int(cols.max()) + table.top)
    if kmax < 1:
        return out
    k = np.arange(1, kmax + 1)
    signs = np.where(k % 2 == 1, -1.0, 1.0)
    left = signs * table(rows[:, None] + k[None, :])
    right = table(cols[:, None] - k[None, :])
    return out + left @ right.T


def one_point(table: JTable, m):
    """``rho({m}) = J(m)^2 / 2 + sum_{k > m} J(k)^2`` for ``m >= 1``."""
    m = np.asarray(m, dtype=np.int64)
    if np.any(m < 1):
        raise ValueError("one-point function is defined for positive sites")
    tail = table.tail_squares
    inside = m <= table.top
    mm = np.minimum(m, table.top)
    v = np.where(inside, 0.5 * table.values[mm] ** 2 + tail[mm], 0.0)
    return float(v) if v.ndim == 0 else v

"""Limit shape, fermion density, finite-epsilon profiles and the sine kernel."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernel import JTable, one_point, table_for
from .miwa import DomainError, MiwaParams, chi


def _antiderivative_D(params: MiwaParams, theta: float) -> float:
    # int_0^theta D = 4 sum t_n sin(n theta)
    return 4.0 * math.fsum(t * math.sin(n * theta) for n, t in params.coeffs)


def limit_shape(params: MiwaParams, x: float) -> float:
    """``Omega(x) = x + (2/pi) int_0^chi(x) (D(theta) - x) d theta`` (``x`` for ``x >= b``)."""
    if x < 0:
        raise DomainError("limit shape is defined for x >= 0")
    if x >= params.b:
        return float(x)
    c = chi(params, x)
    return x + (2.0 / math.pi) * (_antiderivative_D(params, c) - x * c)


def density(params: MiwaParams, x: float) -> float:
    """``chi(x) / pi`` on ``[0, b]``, zero beyond."""
    if x < 0:
        raise DomainError("density is defined for x >= 0")
    if x >= params.b:
        return 0.0
    return chi(params, x) / math.pi


@dataclass(frozen=True)
class ShapeCurve:
    grid: np.ndarray
    omega: np.ndarray
    density: np.ndarray


def shape_curve(params: MiwaParams, x_max: float, points: int) -> ShapeCurve:
    grid = np.linspace(0.0, x_max, points)
    omega = np.array([limit_shape(params, x) for x in grid])
    dens = np.array([density(params, x) for x in grid])
    return ShapeCurve(grid, omega, dens)


def lattice_index(x: float, epsilon: float) -> int:
    """``floor(x / epsilon)``, robust to representation error in the quotient."""
    q = x / epsilon
    r = round(q)
    return int(r) if abs(q - r) < 1e-9 * max(1.0, abs(q)) else int(math.floor(q))


def expected_profile(params: MiwaParams, epsilon: float, x: float, tol: float = 1e-12) -> float:
    """``E[psi_eps(x)] = x + 2 eps sum_{k >= 1} rho(x/eps + k; t/eps)``.

    Terms past the table end are zero; of the remaining ones, those at or
    below ``tol`` beyond the scaled bandwidth are dropped.
    """
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    table = table_for(params.scaled(1.0 / epsilon))
    n = lattice_index(x, epsilon)
    sites = np.arange(n + 1, table.top + 1)
    if sites.size == 0:
        return float(x)
    rho = one_point(table, sites)
    keep = (rho > tol) | (sites <= table.bandwidth)
    return float(x + 2.0 * epsilon * math.fsum(rho[keep]))


def sine_kernel(params: MiwaParams, x: float, r: int, s: int) -> float:
    """``sin(chi(x)(r - s)) / (pi (r - s))``, diagonal ``chi(x)/pi``."""
    if not 0 <= x <= params.b:
        raise DomainError(f"sine kernel needs 0 <= x <= b = {params.b}")
    c = chi(params, x)
    if r == s:
        return c / math.pi
    return math.sin(c * (r - s)) / (math.pi * (r - s))


def bulk_one_point(params: MiwaParams, x: float, epsilon: float) -> float:
    """``rho(floor(x/eps); t/eps)``, which tends to ``chi(x)/pi``."""
    table: JTable = table_for(params.scaled(1.0 / epsilon))
    n = lattice_index(x, epsilon)
    return one_point(table, max(n, 1))

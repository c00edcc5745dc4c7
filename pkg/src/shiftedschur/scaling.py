"""Finite-epsilon experiments against the edge and bulk scaling limits.

Edge quantities are evaluated at the lattice sites
``m = floor(a / eps^(p+1) + x / eps)`` with parameters ``t / eps^(p+1)``,
where ``(t, a)`` is the minimal ``p``-multicritical tuning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .airy import airy_kernel, evaluator
from .kernel import JTable, kernel_K, one_point, table_for
from .limit_shape import bulk_one_point, density, lattice_index, sine_kernel
from .miwa import MiwaParams, solve_minimal_multicritical
from .skew import MAX_GAP_ORDER, correlation_matrix, gap_probability, pfaffian
from .tracy_widom import tw_cdf

DEFAULT_EPS = {2: (1 / 4, 1 / 6, 1 / 8, 1 / 10), 4: (1 / 3, 1 / 4, 1 / 5)}
TAIL_CUT = 1e-14
GROWTH_ALLOWANCE = 1.1


@lru_cache(maxsize=None)
def multicritical(p: int) -> MiwaParams:
    return solve_minimal_multicritical(p)


def edge_site(params: MiwaParams, x: float, epsilon: float, p: int) -> int:
    return lattice_index(params.edge / epsilon ** (p + 1) + x / epsilon, 1.0)


def _edge_table(params: MiwaParams, epsilon: float, p: int) -> JTable:
    return table_for(params.scaled(epsilon ** -(p + 1)))


def edge_j(p: int, x: float, epsilon: float, params: MiwaParams | None = None) -> float:
    """``J(m; t/eps^(p+1)) / eps``, which tends to ``Ai_p(x)``."""
    params = params or multicritical(p)
    table = _edge_table(params, epsilon, p)
    return table(edge_site(params, x, epsilon, p)) / epsilon


def edge_j_bessel(x: float, epsilon: float) -> float:
    """``edge_j`` for ``p = 2``, ``t_1 = 1/2`` through scipy's Bessel ``J_m(2/eps^3)``."""
    from scipy.special import jv

    params = multicritical(2)
    m = edge_site(params, x, epsilon, 2)
    return float(jv(m, 2.0 / epsilon**3)) / epsilon


def _sign(m: int) -> float:
    return -1.0 if m % 2 else 1.0


def edge_kernel(p: int, x: float, y: float, epsilon: float,
                params: MiwaParams | None = None) -> tuple[float, float, float]:
    """The three scaled kernel blocks; limits are ``0``, ``K_p-Airy(x, y)``, ``0``."""
    params = params or multicritical(p)
    table = _edge_table(params, epsilon, p)
    mx = edge_site(params, x, epsilon, p)
    my = edge_site(params, y, epsilon, p)
    b1 = kernel_K(table, mx, my) / epsilon
    b2 = _sign(my) * kernel_K(table, mx, -my) / epsilon
    b3 = _sign(mx + my) * kernel_K(table, -mx, -my) / epsilon
    return b1, b2, b3


def pfaffian_to_determinant_check(p: int, points: Sequence[float], epsilon: float,
                                  params: MiwaParams | None = None) -> tuple[float, float]:
    """``(eps^-N Pf M(sites), det[K_p-Airy(k_i, k_j)])`` for ``N <= 4`` points.

    Every kernel entry is of order ``eps``, so the Pfaffian is rescaled by
    ``eps^-N``; for one point this is the diagonal of the middle kernel block.
    """
    points = list(points)
    if len(points) > 4:
        raise ValueError("at most 4 points")
    if not points:
        return 1.0, 1.0
    params = params or multicritical(p)
    table = _edge_table(params, epsilon, p)
    sites = [edge_site(params, k, epsilon, p) for k in points]
    if len(set(sites)) < len(sites):
        raise ValueError("points collapse onto the same lattice site at this epsilon")
    left = epsilon ** -len(points) * pfaffian(correlation_matrix(sites, table))
    K = np.array([[airy_kernel(p, a, b) for b in points] for a in points])
    return left, float(np.linalg.det(K))


def gap_cutoff(table: JTable, start: int) -> int:
    """Last site from ``start`` on whose one-point function is at least ``TAIL_CUT``."""
    sites = np.arange(start, table.top + 1)
    if sites.size == 0:
        return start - 1
    rho = one_point(table, sites)
    above = np.nonzero(rho >= TAIL_CUT)[0]
    return int(sites[above[-1]]) if above.size else start - 1


def largest_part_law(p: int, s: float, epsilon: float,
                     params: MiwaParams | None = None) -> float:
    """``P[lambda_1 <= a/eps^(p+1) + s/eps]`` as a discrete gap probability."""
    params = params or multicritical(p)
    table = _edge_table(params, epsilon, p)
    start = edge_site(params, s, epsilon, p) + 1
    stop = gap_cutoff(table, max(start, 1))
    I = range(max(start, 1), stop + 1)
    if 2 * len(I) > MAX_GAP_ORDER:
        raise ValueError(f"gap interval of {len(I)} sites is above the budget")
    return min(max(gap_probability(I, table), 0.0), 1.0)


def bulk_kernel(params: MiwaParams, x: float, r: int, s: int, epsilon: float) -> float:
    """``(-1)^(n+s) K(n + r, -(n + s); t/eps)`` with ``n = floor(x/eps)``; tends to the sine kernel."""
    if not 0 < x:
        raise ValueError("bulk kernel needs x > 0")
    table = table_for(params.scaled(1.0 / epsilon))
    n = lattice_index(x, epsilon)
    return _sign(n + s) * kernel_K(table, n + r, -(n + s))


@dataclass
class ScalingReport:
    p: int
    target: str
    rows: list[tuple[float, str, float, float, float]] = field(default_factory=list)

    def add(self, epsilon: float, arg: str, value: float, limit: float) -> None:
        self.rows.append((epsilon, arg, value, limit, abs(value - limit)))
        self.rows.sort(key=lambda r: (-r[0], r[1]))

    def errors(self, arg: str) -> list[float]:
        return [r[4] for r in self.rows if r[1] == arg]

    @property
    def args(self) -> list[str]:
        return sorted({r[1] for r in self.rows})

    def monotone(self, arg: str, allowance: float = GROWTH_ALLOWANCE) -> bool:
        """No error grows by more than ``allowance`` between consecutive epsilons."""
        e = self.errors(arg)
        return all(b <= allowance * a for a, b in zip(e, e[1:]))

    @property
    def monotone_flags(self) -> dict[str, bool]:
        return {a: self.monotone(a) for a in self.args}

    def final_error(self, arg: str) -> float:
        return self.errors(arg)[-1]


def _fmt(points: Sequence[float]) -> str:
    return ":".join(f"{v:g}" for v in points)


def converge(p: int, target: str, eps: Sequence[float] | None = None,
             args: Sequence[Sequence[float]] = ((0.0,),)) -> ScalingReport:
    """Run one convergence experiment.

    ``target`` is ``j`` (edge J vs ``Ai_p``), ``kernel`` (middle block vs the
    ``p``-Airy kernel at ``(x, y)``, one point means ``x = y``), ``pfdet``
    (scaled Pfaffian vs Airy determinant at a point set) or ``tw`` (largest
    part law vs ``F_p``).
    """
    eps = tuple(DEFAULT_EPS.get(p, (1 / 3, 1 / 4)) if eps is None else eps)
    report = ScalingReport(p, target)
    for pts in args:
        pts = tuple(float(v) for v in pts)
        key = _fmt(pts)
        if target == "j":
            limit = evaluator(p).direct(pts[0])
        elif target == "kernel":
            y = pts[1] if len(pts) > 1 else pts[0]
            limit = airy_kernel(p, pts[0], y)
        elif target == "tw":
            limit = tw_cdf(p, pts[0])
        elif target != "pfdet":
            raise ValueError(f"unknown target {target!r}")
        for e in sorted(eps, reverse=True):
            if target == "j":
                value = edge_j(p, pts[0], e)
            elif target == "kernel":
                value = edge_kernel(p, pts[0], y, e)[1]
            elif target == "tw":
                value = largest_part_law(p, pts[0], e)
            else:
                value, limit = pfaffian_to_determinant_check(p, pts, e)
            report.add(e, key, value, limit)
    return report


def bulk_report(x_values: Sequence[float] = (0.5, 1.0),
                eps: Sequence[float] = (1 / 4, 1 / 8, 1 / 16)) -> ScalingReport:
    """Bulk one-point function at ``x`` against the density ``chi(x)/pi`` for ``t_1 = 1/2``."""
    params = multicritical(2)
    report = ScalingReport(2, "bulk")
    for x in x_values:
        limit = density(params, x)
        for e in sorted(eps, reverse=True):
            report.add(e, f"{x:g}", bulk_one_point(params, x, e), limit)
    return report


def bulk_sine_check(params: MiwaParams, x: float, r: int, s: int, epsilon: float) -> tuple[float, float]:
    return bulk_kernel(params, x, r, s, epsilon), sine_kernel(params, x, r, s)

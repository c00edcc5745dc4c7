"""Miwa parameter sets and the trigonometric functions built from them.

A parameter set is a finite collection of real coefficients ``t_n`` on odd
positive indices.  Everything downstream (Q-functions, the wave function,
limit shapes, edge scaling) is a function of these numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy.optimize import brentq, minimize_scalar


class DomainError(ValueError):
    """Argument outside the region where a function is defined."""


@dataclass(frozen=True)
class MiwaParams:
    """Real Miwa variables ``t_n`` (odd ``n``) with finite support.

    ``a`` is the edge constant.  It is only meaningful for multicritical
    parameters, where it equals ``b``; when omitted it defaults to ``b``.
    """

    coeffs: tuple[tuple[int, float], ...]
    a: float | None = None
    b: float = field(init=False)

    def __post_init__(self):
        items = {}
        for n, t in self.coeffs:
            n = int(n)
            if n <= 0 or n % 2 == 0:
                raise ValueError(f"Miwa index must be odd and positive, got {n}")
            t = float(t)
            if not math.isfinite(t):
                raise ValueError(f"t_{n} must be a finite real number")
            if t != 0.0:
                items[n] = items.get(n, 0.0) + t
        coeffs = tuple(sorted(items.items()))
        object.__setattr__(self, "coeffs", coeffs)
        b = 4.0 * math.fsum(n * t for n, t in coeffs)
        object.__setattr__(self, "b", b)
        if self.a is not None:
            object.__setattr__(self, "a", float(self.a))

    @classmethod
    def from_mapping(cls, t: Mapping[int, float], a: float | None = None) -> "MiwaParams":
        return cls(tuple((int(n), float(v)) for n, v in t.items()), a)

    @property
    def t(self) -> dict[int, float]:
        return dict(self.coeffs)

    @property
    def indices(self) -> np.ndarray:
        return np.array([n for n, _ in self.coeffs], dtype=float)

    @property
    def values(self) -> np.ndarray:
        return np.array([t for _, t in self.coeffs], dtype=float)

    @property
    def edge(self) -> float:
        """``a`` if set, else ``b``."""
        return self.b if self.a is None else self.a

    @property
    def spread(self) -> float:
        """``4 * sum(n |t_n|)``, the largest frequency of the phase function."""
        return 4.0 * math.fsum(n * abs(t) for n, t in self.coeffs)

    def scaled(self, factor: float) -> "MiwaParams":
        """Parameters ``t * factor``; ``a`` scales with them."""
        a = None if self.a is None else self.a * factor
        return MiwaParams(tuple((n, t * factor) for n, t in self.coeffs), a)

    def to_json(self) -> str:
        payload = {"t": {str(n): t for n, t in self.coeffs}, "a": self.edge}
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "MiwaParams":
        payload = json.loads(text)
        return cls.from_mapping({int(k): v for k, v in payload["t"].items()}, payload.get("a"))


def _angles(theta):
    return np.asarray(theta, dtype=float)


def _sine_sum(params: MiwaParams, theta, power: int):
    # odd n: sin(n(pi - u)) = sin(nu), so fold [pi/2, pi] onto [0, pi/2]
    # where the small-angle values keep full relative accuracy
    th = _angles(theta)
    sign = np.sign(th)
    u = np.abs(th)
    u = np.where(u > math.pi / 2, math.pi - u, u)
    s = np.zeros_like(u)
    for n, t in params.coeffs:
        s = s + 4.0 * n**power * t * np.sin(n * u)
    return sign * s


def phi(params: MiwaParams, theta):
    """``4 sum t_n sin(n theta) - a theta``."""
    th = _angles(theta)
    out = _sine_sum(params, th, 0) - params.edge * th
    return float(out) if out.ndim == 0 else out


def D(params: MiwaParams, theta):
    """``4 sum n t_n cos(n theta)``; decreases from ``b`` to ``-b`` when nondegenerate."""
    th = np.abs(_angles(theta))
    flip = th > math.pi / 2
    u = np.where(flip, math.pi - th, th)
    s = np.zeros_like(u)
    for n, t in params.coeffs:
        s = s + 4.0 * n * t * np.cos(n * u)
    s = np.where(flip, -s, s)
    return float(s) if s.ndim == 0 else s


def margin(params: MiwaParams, theta):
    """``-D'(theta) = 4 sum n^2 t_n sin(n theta)``; must be positive on (0, pi)."""
    out = _sine_sum(params, theta, 2)
    return float(out) if out.ndim == 0 else out


def chi(params: MiwaParams, x: float, xtol: float = 1e-15) -> float:
    """The unique angle in ``[0, pi]`` with ``D(chi) = x``.

    Requires nondegenerate parameters (``D`` strictly decreasing).
    """
    b = params.b
    if not (-b <= x <= b):
        raise DomainError(f"chi is defined on [-b, b] = [{-b}, {b}], got {x}")
    if x == b:
        return 0.0
    if x == -b:
        return math.pi
    return brentq(lambda th: D(params, th) - x, 0.0, math.pi, xtol=xtol, rtol=4 * np.finfo(float).eps)


def phi_taylor(params: MiwaParams, order: int) -> list[float]:
    """Coefficients of ``theta^1, theta^3, ..., theta^order`` in the expansion of ``phi``."""
    coeffs = []
    for k in range((order + 1) // 2):
        m = 2 * k + 1
        moment = math.fsum(n**m * t for n, t in params.coeffs)
        c = 4.0 * (-1) ** k * moment / math.factorial(m)
        if k == 0:
            c -= params.edge
        coeffs.append(c)
    return coeffs


@dataclass
class ConditionReport:
    real_valued: bool
    finite_support: bool
    nondegenerate: bool
    worst_theta: float
    worst_margin: float
    multicritical_order: int | None
    taylor: list[float]

    @property
    def ok(self) -> bool:
        return self.real_valued and self.finite_support and self.nondegenerate


def _rounding_floor(params: MiwaParams, theta):
    # near theta = 0 a multicritical margin vanishes like theta^(p-1); below
    # this level the sign is set by rounding in t_n, not by the parameters
    u = np.minimum(theta, math.pi - theta)
    s = np.zeros_like(u)
    for n, t in params.coeffs:
        s = s + 4.0 * n * n * abs(t) * np.abs(np.sin(n * u))
    return 64 * np.finfo(float).eps * s


def _nondegeneracy(params: MiwaParams, grid: int = 10_000):
    th = np.linspace(0.0, math.pi, grid + 2)[1:-1]
    g = margin(params, th)
    floor = _rounding_floor(params, th)
    if np.any(g <= -floor) or not np.any(g > floor):
        i = int(np.argmin(g))
        return False, float(th[i]), float(g[i])
    i = int(np.argmin(np.where(g > floor, g, np.inf)))
    worst_theta, worst = float(th[i]), float(g[i])
    # refine around interior local minima of the sampled margin
    for j in np.flatnonzero((g[1:-1] <= g[:-2]) & (g[1:-1] <= g[2:])) + 1:
        res = minimize_scalar(lambda u: margin(params, u), bounds=(th[j - 1], th[j + 1]),
                              method="bounded", options={"xatol": 1e-13})
        if res.fun <= -_rounding_floor(params, np.array(res.x)):
            return False, float(res.x), float(res.fun)
        if res.fun > _rounding_floor(params, np.array(res.x)) and res.fun < worst:
            worst_theta, worst = float(res.x), float(res.fun)
    return True, worst_theta, worst


def validate(params: MiwaParams, p_hint: int | None = None, tol: float = 1e-10) -> ConditionReport:
    """Check real-valuedness, finite support, nondegeneracy and multicritical order."""
    real_valued = all(isinstance(t, float) and math.isfinite(t) for _, t in params.coeffs)
    finite_support = len(params.coeffs) < 10_000
    nondeg, worst_theta, worst = _nondegeneracy(params)

    max_order = max(p_hint or 0, 2 * max((n for n, _ in params.coeffs), default=1)) + 3
    taylor = phi_taylor(params, max_order)
    scale = max(1.0, max(abs(c) for c in taylor))
    order = None
    if abs(taylor[0]) <= tol * scale:
        for k in range(1, len(taylor)):
            if abs(taylor[k]) > tol * scale:
                p = 2 * k
                if abs(taylor[k] + 1.0 / (p + 1)) <= tol * scale:
                    order = p
                break
    return ConditionReport(real_valued, finite_support, nondeg, worst_theta, worst, order, taylor)


def solve_minimal_multicritical(p: int) -> MiwaParams:
    """Minimal ``p``-multicritical parameters ``t_1, t_3, ..., t_{p-1}``.

    Solves the ``p/2`` linear equations that kill the Taylor coefficients of
    ``phi`` at orders ``3, 5, ..., p-1`` and pin the order ``p+1`` coefficient
    to ``-1/(p+1)``.  Exact rational elimination, so the result is correctly
    rounded.
    """
    if p < 2 or p % 2:
        raise ValueError(f"p must be a positive even integer, got {p}")
    h = p // 2
    idx = [2 * j + 1 for j in range(h)]
    rows = []
    for k in range(1, h + 1):
        m = 2 * k + 1
        row = [Fraction(4 * (-1) ** k * n**m, math.factorial(m)) for n in idx]
        rhs = Fraction(-1, p + 1) if k == h else Fraction(0)
        rows.append(row + [rhs])
    sol = _solve_fraction(rows)
    t = {n: float(v) for n, v in zip(idx, sol)}
    a = float(4 * sum(n * v for n, v in zip(idx, sol)))
    return MiwaParams.from_mapping(t, a)


def _solve_fraction(aug: list[list[Fraction]]) -> list[Fraction]:
    n = len(aug)
    aug = [row[:] for row in aug]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(aug[r][col]))
        if aug[piv][col] == 0:
            raise np.linalg.LinAlgError("multicritical system is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / aug[col][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] / aug[i][i] for i in range(n)]

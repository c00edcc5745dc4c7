"""Acceptance checks shared by the test suite and ``shiftedschur verify``.

Each check returns a :class:`Result` holding a pass flag and a one-line
summary of the measured numbers.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class Result:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(number: int, name: str, body: Callable[[], tuple[bool, str]]) -> Result:
    t0 = time.perf_counter()
    ok, detail = body()
    return Result(number, name, bool(ok), detail, time.perf_counter() - t0)


def _plancherel():
    from .miwa import MiwaParams

    return MiwaParams.from_mapping({1: 0.5}, a=2.0)


def _quartic_half():
    from .miwa import solve_minimal_multicritical

    return solve_minimal_multicritical(4).scaled(0.5)


def normalization() -> Result:
    def body():
        from .partitions import enumerate_strict
        from .schur_q import weights

        t0 = time.perf_counter()
        total = math.fsum(weights(list(enumerate_strict(30)), _plancherel()))
        dt = time.perf_counter() - t0
        err = abs(total - math.exp(0.5))
        return err < 1e-10 and dt < 5.0, f"|sum - e^(1/2)| = {err:.1e}, {dt:.2f}s"

    return _timed(1, "normalization", body)


def pfaffian_vs_enumeration() -> Result:
    def body():
        from .schur_q import ORACLE_ROUNDING, Enumeration
        from .skew import correlation

        t0 = time.perf_counter()
        worst_width, worst_out = 0.0, 0.0
        for params in (_plancherel(), _quartic_half()):
            enum = Enumeration.build(params, 34)
            for A in ({1}, {2}, {1, 2}, {1, 3}, {2, 5}):
                lo, hi = enum.correlation(A)
                v = correlation(A, params)
                worst_width = max(worst_width, hi - lo)
                worst_out = max(worst_out, lo - v, v - hi)
        dt = time.perf_counter() - t0
        ok = worst_width < 1e-8 and worst_out <= ORACLE_ROUNDING and dt < 60.0
        return ok, f"max width {worst_width:.1e}, max excursion {max(worst_out, 0):.1e}, {dt:.1f}s"

    return _timed(2, "pfaffian vs enumeration", body)


def kernel_identities() -> Result:
    def body():
        from scipy.special import jv

        from .kernel import kernel_matrix, table_for

        table = table_for(_plancherel())
        parseval = abs(table.parseval() - 1.0)
        m = np.arange(-20, 21)
        K = kernel_matrix(table, m, m)
        target = np.where(m[:, None] + m[None, :] == 0, (-1.0) ** np.abs(m)[:, None], 0.0)
        anti = float(np.max(np.abs(K + K.T - target)))
        bessel = float(np.max(np.abs(table(m) - jv(m, 2.0))))
        ok = parseval < 1e-10 and anti < 1e-10 and bessel < 1e-10
        return ok, f"Parseval {parseval:.1e}, anticommutation {anti:.1e}, Bessel {bessel:.1e}"

    return _timed(3, "kernel identities", body)


def limit_shape_lsvk() -> Result:
    def body():
        from .limit_shape import limit_shape

        params = _plancherel()
        xs = np.linspace(0.0, 2.0, 50)
        lsvk = (2 / np.pi) * (xs * np.arcsin(xs / 2) + np.sqrt(np.maximum(4 - xs**2, 0.0)))
        err = max(abs(limit_shape(params, x) - v) for x, v in zip(xs, lsvk))
        edge = limit_shape(params, params.b) == params.b
        return err < 1e-10 and edge, f"max LSVK error {err:.1e}, Omega(b) == b: {edge}"

    return _timed(4, "limit shape", body)


def gap_probabilities() -> Result:
    def body():
        from .schur_q import ORACLE_ROUNDING, Enumeration
        from .skew import gap_probability

        worst_ie, worst_enum = 0.0, 0.0
        for params in (_plancherel(), _quartic_half()):
            enum = Enumeration.build(params, 34)
            for r in range(1, 7):
                for I in itertools.combinations(range(1, 7), r):
                    pf = gap_probability(I, params)
                    if r <= 5:
                        ie = gap_probability(I, params, method="inclusion-exclusion")
                        worst_ie = max(worst_ie, abs(pf - ie))
                    lo, hi = enum.gap(I)
                    worst_enum = max(worst_enum, lo - pf, pf - hi)
        ok = worst_ie < 1e-9 and worst_enum <= ORACLE_ROUNDING
        return ok, f"Pfaffian vs inclusion-exclusion {worst_ie:.1e}, enumeration excursion {max(worst_enum, 0):.1e}"

    return _timed(5, "gap probabilities", body)


def envelope_log(p: int, x: float) -> float:
    """Largest ``log|Ai_p|`` over one local oscillation period starting at ``x``."""
    from .airy import evaluator

    ev = evaluator(p)
    freq = ev.saddle(x).imag
    if freq <= 1e-12:
        return math.log(abs(ev.direct(x)))
    return max(math.log(abs(ev.direct(u))) for u in np.linspace(x, x + 2 * math.pi / freq, 41))


def decay_slope(p: int, x1: float = 20.0, x2: float = 40.0) -> float:
    e = (p + 1) / p
    return (envelope_log(p, x2) - envelope_log(p, x1)) / (x2**e - x1**e)


def higher_airy() -> Result:
    def body():
        from scipy.special import airy

        from .airy import airy_derivative, airy_kernel, airy_p, re_tau_star

        xs = np.linspace(-5, 3, 81)
        classical = max(abs(airy_p(2, x) - airy(x)[0]) for x in xs)
        ode = max(
            abs((-1) ** (p // 2 + 1) * airy_derivative(p, x, p) - x * airy_p(p, x))
            for p in (2, 4, 6) for x in (-2, -1, 0, 1, 2)
        )
        ratios = {p: -decay_slope(p) / (p / (p + 1) * re_tau_star(p)) for p in (2, 4)}
        k00 = abs(airy_kernel(2, 0, 0) - airy(0)[1] ** 2)
        ok = classical < 1e-8 and ode < 1e-8 and all(abs(r - 1) < 0.1 for r in ratios.values()) and k00 < 1e-8
        rs = ", ".join(f"p={p} {r:.3f}" for p, r in ratios.items())
        return ok, f"classical {classical:.1e}, ODE {ode:.1e}, decay ratio {rs}, K2(0,0) {k00:.1e}"

    return _timed(6, "higher Airy", body)


def _schedule_summary(report, limit: float) -> tuple[bool, str]:
    parts, ok = [], True
    for arg in report.args:
        errs = report.errors(arg)
        mono = report.monotone(arg)
        fin = errs[-1] < limit
        ok &= mono and fin
        parts.append(f"x={arg} [{', '.join(f'{e:.1e}' for e in errs)}]{'' if mono else ' not decreasing'}")
    return ok, "; ".join(parts)


def edge_convergence() -> Result:
    def body():
        from .scaling import converge

        t0 = time.perf_counter()
        args = [(-1.0,), (0.0,), (1.0,)]
        ok2, d2 = _schedule_summary(converge(2, "j", args=args), 5e-2)
        ok4, d4 = _schedule_summary(converge(4, "j", args=args), 1e-1)
        dt = time.perf_counter() - t0
        return ok2 and ok4 and dt < 600, f"p=2 {d2} | p=4 {d4}"

    return _timed(7, "edge convergence", body)


def pfaffian_collapse() -> Result:
    def body():
        from .scaling import converge

        report = converge(2, "pfdet", args=[(0.0,), (0.0, 1.0)])
        return _schedule_summary(report, 5e-2)

    return _timed(8, "Pfaffian to determinant", body)


def tracy_widom() -> Result:
    def body():
        from .scaling import largest_part_law
        from .tracy_widom import NystromScheme, tw_cdf

        node = trunc = quad = 0.0
        for s in np.linspace(-4, 4, 9):
            base = NystromScheme.build(2, s, 64)
            d = base.determinant()
            node = max(node, abs(NystromScheme.build(2, s, 128).determinant() - d))
            trunc = max(trunc, abs(NystromScheme.build(2, s, 64, length=2 * base.length).determinant() - d))
            cc = NystromScheme.build(2, s, 128, family="clenshaw-curtis").determinant()
            quad = max(quad, abs(cc - NystromScheme.build(2, s, 128).determinant()))
        law = abs(largest_part_law(2, 0.0, 0.25) - tw_cdf(2, 0.0))
        ok = node < 1e-8 and trunc < 1e-8 and quad < 1e-7 and law < 5e-2
        return ok, (f"node doubling {node:.1e}, truncation doubling {trunc:.1e}, "
                    f"Clenshaw-Curtis vs Gauss {quad:.1e}, largest part vs F2(0) {law:.1e}")

    return _timed(9, "Tracy-Widom", body)


def bulk_limit() -> Result:
    def body():
        from .scaling import bulk_report

        return _schedule_summary(bulk_report(), 2e-2)

    return _timed(10, "bulk limit", body)


CRITERIA = (
    normalization,
    pfaffian_vs_enumeration,
    kernel_identities,
    limit_shape_lsvk,
    gap_probabilities,
    higher_airy,
    edge_convergence,
    pfaffian_collapse,
    tracy_widom,
    bulk_limit,
)
QUICK = (1, 3, 4, 6, 8, 9)


def run(suite: str = "full") -> list[Result]:
    if suite not in ("quick", "full"):
        raise ValueError("suite is 'quick' or 'full'")
    chosen = [c for i, c in enumerate(CRITERIA, 1) if suite == "full" or i in QUICK]
    return [c() for c in chosen]

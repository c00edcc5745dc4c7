"""Schur Q-functions, shifted Schur measure weights and enumeration oracles.

``Q_lam`` is evaluated through the two-row Pfaffian formula on the
coefficients ``q_n`` of ``exp(2 xi(t, z)) = sum q_n z^n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .miwa import MiwaParams
from .partitions import StrictPartition, enumerate_strict
from .skew import pfaffian


class SeriesLengthError(ValueError):
    pass


@dataclass(frozen=True)
class QSeries:
    params: MiwaParams
    q: np.ndarray

    @property
    def n_max(self) -> int:
        return len(self.q) - 1

    def __getitem__(self, n: int) -> float:
        if n < 0:
            return 0.0
        if n > self.n_max:
            raise SeriesLengthError(f"q_{n} requested but series has n_max = {self.n_max}")
        return float(self.q[n])


def q_coefficients(params: MiwaParams, n_max: int) -> QSeries:
    """Coefficients of ``exp(2 sum t_k z^k)`` via ``n q_n = 2 sum_k k t_k q_{n-k}``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    q = np.zeros(n_max + 1)
    q[0] = 1.0
    for n in range(1, n_max + 1):
        q[n] = 2.0 * math.fsum(k * t * q[n - k] for k, t in params.coeffs if k <= n) / n
    return QSeries(params, q)


def two_row(qs: QSeries, r: int, s: int) -> float:
    """``Q_(r,s) = q_r q_s + 2 sum_{i=1..s} (-1)^i q_{r+i} q_{s-i}``."""
    terms = [qs[r] * qs[s]]
    terms += [2.0 * (-1) ** i * qs[r + i] * qs[s - i] for i in range(1, s + 1)]
    return math.fsum(terms)


def q_matrix(lam: StrictPartition, qs: QSeries) -> np.ndarray:
    """Skew matrix ``[Q_(lam_i, lam_j)]`` whose Pfaffian is ``Q_lam``.

    Odd-length partitions get an extra part 0, with ``Q_(r,0) = q_r``.
    """
    parts = list(lam.parts)
    if len(parts) % 2:
        parts.append(0)
    m = len(parts)
    A = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            A[i, j] = two_row(qs, parts[i], parts[j])
            A[j, i] = -A[i, j]
    return A


def schur_Q(lam: StrictPartition, params: MiwaParams | QSeries) -> float:
    qs = params if isinstance(params, QSeries) else q_coefficients(params, _needed(lam))
    if lam.length == 0:
        return 1.0
    if lam.length == 1:
        return qs[lam.parts[0]]
    return pfaffian(q_matrix(lam, qs))


def schur_P(lam: StrictPartition, params: MiwaParams | QSeries) -> float:
    return 2.0 ** (-lam.length) * schur_Q(lam, params)


def _needed(lam: StrictPartition) -> int:
    p = lam.parts
    return (p[0] if p else 0) + (p[1] if len(p) > 1 else 0) + 2


def weight(lam: StrictPartition, params: MiwaParams | QSeries) -> float:
    """Unnormalized measure ``P_lam(t) Q_lam(t) = 2^-l Q_lam(t)^2`` (real ``t``)."""
    Q = schur_Q(lam, params)
    return 2.0 ** (-lam.length) * Q * Q


def weights(lams: Sequence[StrictPartition], params: MiwaParams) -> np.ndarray:
    if not lams:
        return np.zeros(0)
    qs = q_coefficients(params, max(_needed(lam) for lam in lams))
    return np.array([weight(lam, qs) for lam in lams])


def partition_function(params: MiwaParams) -> float:
    """``Z = exp(sum 2 n t_n^2)``."""
    return math.exp(math.fsum(2.0 * n * t * t for n, t in params.coeffs))


def probability(lam: StrictPartition, params: MiwaParams) -> float:
    return weight(lam, params) / partition_function(params)


# rounding allowance on sums of O(1) probabilities with fsum
ORACLE_ROUNDING = 1e-13


@dataclass(frozen=True)
class Enumeration:
    """Exact weights of all strict partitions up to a size cutoff."""

    params: MiwaParams
    max_size: int
    partitions: tuple[StrictPartition, ...]
    probs: np.ndarray

    @classmethod
    def build(cls, params: MiwaParams, max_size: int) -> "Enumeration":
        lams = tuple(enumerate_strict(max_size))
        w = weights(lams, params)
        return cls(params, max_size, lams, w / partition_function(params))

    @property
    def tail(self) -> float:
        return max(0.0, 1.0 - math.fsum(self.probs))

    def mass(self, predicate) -> float:
        return math.fsum(p for lam, p in zip(self.partitions, self.probs) if predicate(lam))

    def correlation(self, A: Iterable[int]) -> tuple[float, float]:
        A = set(A)
        lower = self.mass(lambda lam: A.issubset(lam.parts))
        return lower, lower + self.tail

    def gap(self, I: Iterable[int]) -> tuple[float, float]:
        I = set(I)
        lower = self.mass(lambda lam: not I.intersection(lam.parts))
        return lower, lower + self.tail


def oracle_correlation(A: Iterable[int], params: MiwaParams, max_size: int) -> tuple[float, float]:
    """Bracket ``rho(A)`` by summing exact probabilities over ``|lam| <= max_size``."""
    return Enumeration.build(params, max_size).correlation(A)


def oracle_gap(I: Iterable[int], params: MiwaParams, max_size: int) -> tuple[float, float]:
    return Enumeration.build(params, max_size).gap(I)

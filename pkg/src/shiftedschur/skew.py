"""Pfaffians, correlation matrices and discrete gap probabilities."""

from __future__ import annotations

import itertools
import math
from typing import Iterable

import numpy as np

MAX_GAP_ORDER = 1200


def skew_from_upper(upper: np.ndarray) -> np.ndarray:
    """Skew-symmetric matrix from the strict upper triangle of ``upper``."""
    U = np.triu(np.asarray(upper, dtype=float), 1)
    return U - U.T


def pfaffian(A: np.ndarray) -> float:
    """Pfaffian of a real skew-symmetric matrix.

    Parlett-Reid reduction to tridiagonal form with column pivoting; the sign
    of every row/column interchange is tracked.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("pfaffian needs a square matrix")
    if n == 0:
        return 1.0
    if n % 2:
        return 0.0
    pf = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.argmax(np.abs(A[k + 1 :, k])))
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            pf = -pf
        if A[k + 1, k] == 0.0:
            return 0.0
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2 :] / A[k, k + 1]
            col = A[k + 2 :, k + 1].copy()
            A[k + 2 :, k + 2 :] += np.outer(tau, col) - np.outer(col, tau)
    return float(pf)


def _signed_sites(order: list[tuple[int, int]]):
    # (site u, sign c): the operator c * Phi_u at each slot of the Pfaffian
    u = np.array([s for s, _ in order], dtype=np.int64)
    c = np.array([sg for _, sg in order], dtype=float)
    return u, c


def _slot_matrix(table, order: list[tuple[int, int]]) -> np.ndarray:
    from .kernel import kernel_matrix

    u, c = _signed_sites(order)
    K = kernel_matrix(table, u, u)
    return skew_from_upper(np.outer(c, c) * K)


def _parity(a: int) -> int:
    return -1 if a % 2 else 1


def correlation_matrix(A: Iterable[int], table) -> np.ndarray:
    """The ``2N x 2N`` matrix ``M(A; t)``.

    Sites are sorted decreasingly, then the slots are
    ``Phi_{a_1}, ..., Phi_{a_N}, (-1)^{a_N} Phi_{-a_N}, ..., (-1)^{a_1} Phi_{-a_1}``
    and entry ``(i, j)``, ``i < j``, is the two-point function of slots i and j.
    """
    a = sorted({int(x) for x in A}, reverse=True)
    if any(x <= 0 for x in a):
        raise ValueError("correlation sites must be positive integers")
    order = [(x, 1) for x in a] + [(-x, _parity(x)) for x in reversed(a)]
    return _slot_matrix(_as_table(table), order)


def interleaved_matrix(sites: Iterable[int], table) -> np.ndarray:
    """Same two-point data in per-site pairs ``(Phi_x, (-1)^x Phi_{-x})``."""
    order = []
    for x in sites:
        order += [(int(x), 1), (-int(x), _parity(int(x)))]
    return _slot_matrix(_as_table(table), order)


def _as_table(obj):
    from .kernel import JTable, table_for

    return obj if isinstance(obj, JTable) else table_for(obj)


def correlation(A: Iterable[int], params) -> float:
    """``rho(A) = Pf M(A; t)``: probability that every site of ``A`` is a part."""
    A = list(A)
    if not A:
        return 1.0
    return pfaffian(correlation_matrix(A, params))


def gap_matrix(I: Iterable[int], params) -> np.ndarray:
    """``J - K`` on the doubled space over ``I`` (interleaved basis)."""
    sites = sorted({int(x) for x in I})
    n = 2 * len(sites)
    if n > MAX_GAP_ORDER:
        raise ValueError(f"gap matrix of order {n} exceeds {MAX_GAP_ORDER}")
    K = interleaved_matrix(sites, params)
    J = np.zeros((n, n))
    J[np.arange(0, n, 2), np.arange(1, n, 2)] = 1.0
    J[np.arange(1, n, 2), np.arange(0, n, 2)] = -1.0
    return J - K


def gap_probability(I: Iterable[int], params, method: str = "pfaffian") -> float:
    """Probability that no part of the partition lies in ``I``.

    ``method="pfaffian"`` evaluates the Fredholm Pfaffian ``Pf(J - K)``;
    ``method="inclusion-exclusion"`` sums ``(-1)^|S| rho(S)`` over subsets
    (only sensible for ``|I| <= 12``).
    """
    I = sorted({int(x) for x in I})
    if not I:
        return 1.0
    if method == "pfaffian":
        return pfaffian(gap_matrix(I, params))
    if method == "inclusion-exclusion":
        if len(I) > 12:
            raise ValueError("inclusion-exclusion is limited to |I| <= 12")
        full = interleaved_matrix(I, params)
        terms = [1.0]
        for r in range(1, len(I) + 1):
            for S in itertools.combinations(range(len(I)), r):
                idx = [j for i in S for j in (2 * i, 2 * i + 1)]
                terms.append((-1) ** r * pfaffian(full[np.ix_(idx, idx)]))
        return math.fsum(terms)
    raise ValueError(f"unknown method {method!r}")

import itertools
import math

import numpy as np
import pytest

from shiftedschur.miwa import MiwaParams
from shiftedschur.partitions import StrictPartition, enumerate_strict
from shiftedschur.schur_q import (
    Enumeration,
    SeriesLengthError,
    partition_function,
    probability,
    q_coefficients,
    q_matrix,
    schur_P,
    schur_Q,
    two_row,
    weights,
)

X = (0.31, 0.17, -0.23, 0.07)


def _specialize(xs, kmax=21):
    # exp(2 sum_odd t_k z^k) = prod (1 + x z)/(1 - x z)  <=>  t_k = p_k(x) / k
    return MiwaParams.from_mapping({k: sum(x**k for x in xs) / k for k in range(1, kmax + 1, 2)})


def _symmetrized_Q(lam, xs):
    """``2^l / (n-l)! sum_w w(x^lam prod_{i<=l, i<j} (x_i + x_j)/(x_i - x_j))``."""
    n, l = len(xs), len(lam)
    total = 0.0
    for w in itertools.permutations(range(n)):
        y = [xs[i] for i in w]
        term = math.prod(y[i] ** lam[i] for i in range(l))
        for i in range(l):
            for j in range(i + 1, n):
                term *= (y[i] + y[j]) / (y[i] - y[j])
        total += term
    return 2**l * total / math.factorial(n - l)


def _laplace_pfaffian(A):
    n = len(A)
    if n == 0:
        return 1.0
    total = 0.0
    for j in range(1, n):
        rest = [k for k in range(n) if k not in (0, j)]
        total += (-1) ** (j + 1) * A[0][j] * _laplace_pfaffian([[A[r][c] for c in rest] for r in rest])
    return total


def test_q_coefficients_exponential():
    qs = q_coefficients(MiwaParams.from_mapping({1: 0.5}), 12)
    assert qs.q == pytest.approx([1 / math.factorial(n) for n in range(13)], rel=1e-15)
    assert qs[-3] == 0.0
    with pytest.raises(SeriesLengthError):
        qs[13]


def test_two_row_small_values():
    qs = q_coefficients(MiwaParams.from_mapping({1: 0.5}), 6)
    # Q_(2,1) = q2 q1 - 2 q3 q0
    assert two_row(qs, 2, 1) == pytest.approx(1 / 2 - 2 / 6)
    assert schur_Q(StrictPartition.of(2, 1), qs) == pytest.approx(1 / 6)


@pytest.mark.parametrize("lam", [lam for lam in enumerate_strict(8) if 0 < lam.length <= len(X)], ids=str)
def test_schur_Q_matches_symmetrization(lam):
    params = _specialize(X)
    expected = _symmetrized_Q(lam.parts, X)
    assert schur_Q(lam, params) == pytest.approx(expected, rel=1e-10, abs=1e-14)


@pytest.mark.parametrize("lam", [lam for lam in enumerate_strict(8) if lam.length >= 2], ids=str)
def test_pfaffian_matches_laplace_expansion(lam):
    params = MiwaParams.from_mapping({1: 0.4, 3: -0.05})
    qs = q_coefficients(params, 12)
    A = q_matrix(lam, qs)
    assert schur_Q(lam, qs) == pytest.approx(_laplace_pfaffian(A.tolist()), rel=1e-12, abs=1e-15)


def test_P_and_Q_differ_by_power_of_two():
    params = MiwaParams.from_mapping({1: 0.5})
    lam = StrictPartition.of(4, 2, 1)
    assert schur_Q(lam, params) == pytest.approx(8 * schur_P(lam, params))


@pytest.mark.parametrize("t", [{1: 0.5}, {1: 0.75, 3: -1 / 36}, {1: 0.3, 3: 0.1}])
def test_normalization(t):
    params = MiwaParams.from_mapping(t)
    total = math.fsum(weights(list(enumerate_strict(34)), params))
    assert total == pytest.approx(partition_function(params), rel=1e-12)


def test_probability_of_empty_partition():
    params = MiwaParams.from_mapping({1: 0.5})
    assert probability(StrictPartition(()), params) == pytest.approx(math.exp(-0.5))


def test_enumeration_interval_contains_marginal():
    enum = Enumeration.build(MiwaParams.from_mapping({1: 0.5}), 20)
    lo, hi = enum.correlation({1})
    assert 0 <= lo <= hi <= 1
    assert hi - lo == pytest.approx(enum.tail)
    assert np.all(enum.probs >= 0)

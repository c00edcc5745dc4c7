import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftedschur.kernel import table_for
from shiftedschur.miwa import MiwaParams, solve_minimal_multicritical
from shiftedschur.schur_q import ORACLE_ROUNDING, Enumeration
from shiftedschur.skew import (
    correlation,
    correlation_matrix,
    gap_matrix,
    gap_probability,
    interleaved_matrix,
    pfaffian,
    skew_from_upper,
)

PLANCHEREL = MiwaParams.from_mapping({1: 0.5})
QUARTIC = solve_minimal_multicritical(4).scaled(0.5)


def _random_skew(n, seed):
    rng = np.random.default_rng(seed)
    return skew_from_upper(rng.standard_normal((n, n)))


def test_small_pfaffians():
    assert pfaffian(np.zeros((0, 0))) == 1.0
    assert pfaffian(np.array([[0.0, 3.0], [-3.0, 0.0]])) == 3.0
    a, b, c, d, e, f = 1.0, 2.0, 3.0, 4.0, 5.0, 6.0
    A = skew_from_upper(np.array([[0, a, b, c], [0, 0, d, e], [0, 0, 0, f], [0, 0, 0, 0]]))
    assert pfaffian(A) == pytest.approx(a * f - b * e + c * d)
    assert pfaffian(_random_skew(5, 0)) == 0.0


@settings(max_examples=40, deadline=None)
@given(half=st.integers(1, 20), seed=st.integers(0, 2**32 - 1))
def test_pfaffian_squared_is_determinant(half, seed):
    A = _random_skew(2 * half, seed)
    pf, det = pfaffian(A), np.linalg.det(A)
    assert pf * pf == pytest.approx(det, rel=1e-8, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(half=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_pfaffian_permutation_rule(half, seed):
    # Pf(P A P^T) = det(P) Pf(A)
    n = 2 * half
    A = _random_skew(n, seed)
    perm = np.random.default_rng(seed + 1).permutation(n)
    P = np.eye(n)[perm]
    assert pfaffian(P @ A @ P.T) == pytest.approx(np.linalg.det(P) * pfaffian(A), rel=1e-9, abs=1e-12)


def test_pfaffian_needs_pivoting():
    A = skew_from_upper(np.array([[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]], dtype=float))
    assert pfaffian(A) == pytest.approx(-1.0)


def test_listed_and_interleaved_orders_agree():
    table = table_for(QUARTIC)
    A = [5, 2, 1]
    assert pfaffian(correlation_matrix(A, table)) == pytest.approx(
        pfaffian(interleaved_matrix(sorted(A, reverse=True), table)), abs=1e-15)


@pytest.mark.parametrize("params", [PLANCHEREL, QUARTIC], ids=["p2", "p4-half"])
def test_correlations_inside_enumeration_bracket(params):
    enum = Enumeration.build(params, 30)
    for A in ({1}, {2}, {3}, {1, 2}, {1, 3}, {2, 5}, {1, 2, 3}, {1, 2, 4, 7}):
        lo, hi = enum.correlation(A)
        assert lo - ORACLE_ROUNDING <= correlation(A, params) <= hi + ORACLE_ROUNDING


def test_correlation_frozen_values():
    # frozen from the enumeration oracle at |lam| <= 34
    assert correlation({1}, PLANCHEREL) == pytest.approx(0.30863070756666394, abs=1e-13)
    assert correlation({1}, QUARTIC) == pytest.approx(0.21546667921343063, abs=1e-13)


@settings(max_examples=25, deadline=None)
@given(A=st.sets(st.integers(1, 8), min_size=1, max_size=4), extra=st.integers(1, 8))
def test_correlation_monotone_under_inclusion(A, extra):
    assert correlation(A | {extra}, PLANCHEREL) <= correlation(A, PLANCHEREL) + 1e-14


@pytest.mark.parametrize("params", [PLANCHEREL, QUARTIC], ids=["p2", "p4-half"])
def test_gap_methods_agree(params):
    for r in range(1, 6):
        for I in itertools.combinations(range(1, 7), r):
            pf = gap_probability(I, params)
            ie = gap_probability(I, params, method="inclusion-exclusion")
            assert pf == pytest.approx(ie, abs=1e-12)


def test_gap_frozen_values():
    assert gap_probability([1], PLANCHEREL) == pytest.approx(0.6913692924333361, abs=1e-13)
    assert gap_probability([1, 2, 3], PLANCHEREL) == pytest.approx(0.6070788194910034, abs=1e-13)
    assert gap_probability([1, 2, 3], QUARTIC) == pytest.approx(0.7540020065010612, abs=1e-13)
    assert gap_probability([], PLANCHEREL) == 1.0


def test_gap_matrix_size_guard():
    with pytest.raises(ValueError):
        gap_matrix(range(1, 700), PLANCHEREL)


def test_unknown_gap_method():
    with pytest.raises(ValueError):
        gap_probability([1], PLANCHEREL, method="series")

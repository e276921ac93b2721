from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog as scipy_linprog

from nashregion import lp


def test_small_optimum_is_exact():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6
    res = lp.linprog([1, 1], [[1, 2], [3, 1]], [4, 6], nonneg=True)
    assert res.status == lp.OPTIMAL
    assert res.value == Fraction(14, 5)
    assert all(isinstance(v, Fraction) for v in res.x)


def test_infeasible_and_unbounded():
    assert lp.linprog([0], [[1], [-1]], [-1, -1]).status == lp.INFEASIBLE
    assert lp.linprog([1], [[-1]], [0]).status == lp.UNBOUNDED


def test_equality_rows():
    res = lp.linprog([1, 0], [], [], [[1, 1]], [3], nonneg=True)
    assert res.value == 3


small = st.integers(-4, 4)


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(
    st.lists(small, min_size=n, max_size=n),
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=5),
    st.lists(st.integers(-2, 8), min_size=5, max_size=5),
)))
def test_agrees_with_scipy(data):
    c, A, b = data
    b = b[: len(A)]
    n = len(c)
    # box keeps everything bounded so both solvers report an optimum or infeasibility
    A_full = A + [[1 if k == j else 0 for k in range(n)] for j in range(n)]
    b_full = b + [10] * n
    ours = lp.linprog(c, A_full, b_full, nonneg=True)
    ref = scipy_linprog(-np.array(c, float), A_ub=np.array(A_full, float), b_ub=np.array(b_full, float),
                        bounds=[(0, None)] * n, method="highs")
    if ref.status == 2:
        assert ours.status == lp.INFEASIBLE
    else:
        assert ours.status == lp.OPTIMAL
        assert float(ours.value) == pytest.approx(-ref.fun, abs=1e-7)
        x = ours.x
        for row, rhs in zip(A_full, b_full):
            assert sum(Fraction(a) * v for a, v in zip(row, x)) <= rhs

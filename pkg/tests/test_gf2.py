import pytest
from hypothesis import given, strategies as st

from nashregion.gf2 import (
    BitMatrix, BitVector, DimensionError, Span, gf2_add, gf2_matmul, gf2_matvec, shift_down,
    shift_matrix, solve_combination,
)


def vec(dim):
    return st.lists(st.integers(0, 1), min_size=dim, max_size=dim).map(BitVector.of)


def test_level_one_is_most_significant():
    v = BitVector.from_int(0b1000000, 7)
    assert v.level(1) == 1 and v.to_int() == 64
    assert BitVector.of([0, 0, 1]).to_hex() == "1"


def test_bitvector_rejects_bad_bits():
    with pytest.raises(ValueError):
        BitVector.of([0, 2])


def test_shift_matrix_examples():
    assert shift_matrix(3, 0) == BitMatrix.identity(3)
    assert shift_matrix(3, 1).entries == ((0, 0, 0), (1, 0, 0), (0, 1, 0))
    assert shift_matrix(3, 3).is_zero()
    assert shift_matrix(3, 5).is_zero()
    with pytest.raises(ValueError):
        shift_matrix(0, 0)
    with pytest.raises(ValueError):
        shift_matrix(3, -1)


def test_add_and_matvec():
    a, b = BitVector.of([1, 0, 1]), BitVector.of([1, 1, 0])
    assert gf2_add(a, b) == BitVector.of([0, 1, 1])
    assert gf2_add(a, a) == BitVector.zeros(3)
    assert gf2_matvec(shift_matrix(3, 1), a) == BitVector.of([0, 1, 0])
    with pytest.raises(DimensionError):
        gf2_add(a, BitVector.of([1, 0]))
    with pytest.raises(DimensionError):
        gf2_matvec(shift_matrix(4, 1), a)


@given(st.integers(1, 9), st.integers(0, 12), st.integers(0, 12))
def test_shifts_compose(q, a, b):
    assert gf2_matmul(shift_matrix(q, a), shift_matrix(q, b)) == shift_matrix(q, a + b)


@given(st.integers(1, 9).flatmap(lambda q: st.tuples(st.just(q), st.integers(0, 12), st.integers(0, 2**q - 1))))
def test_shift_is_right_shift_of_packed_int(args):
    q, k, x = args
    v = BitVector.from_int(x, q)
    assert gf2_matvec(shift_matrix(q, k), v).to_int() == x >> k
    assert BitVector(shift_down(v.bits, k)).to_int() == x >> k


@given(st.integers(1, 8).flatmap(lambda d: st.tuples(vec(d), vec(d), vec(d))))
def test_addition_group_laws(t):
    a, b, c = t
    assert gf2_add(a, b) == gf2_add(b, a)
    assert gf2_add(gf2_add(a, b), c) == gf2_add(a, gf2_add(b, c))
    assert gf2_add(a, a) == BitVector.zeros(a.dim)


@given(st.lists(st.integers(0, 255), max_size=10), st.integers(0, 255))
def test_span_solution_reproduces_target(rows, target):
    combo = solve_combination(rows, target)
    span_combo = Span(rows).solve(target)
    assert (combo is None) == (span_combo is None)
    if combo is not None:
        acc = 0
        for k, r in enumerate(rows):
            if (combo >> k) & 1:
                acc ^= r
        assert acc == target


def test_span_rejects_outside_target():
    assert Span([0b011, 0b110]).solve(0b001) is None
    assert Span([0b011, 0b110]).rank == 2

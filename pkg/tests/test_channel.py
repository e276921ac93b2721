from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nashregion.channel import (
    ChannelParams, bit_error_probability, derive_q, feedback_output, forward_output,
    forward_output_packed,
)
from nashregion.gf2 import BitVector, DimensionError

params = st.tuples(*[st.integers(0, 5)] * 6).map(ChannelParams.of)


def test_q_is_max_forward_count():
    assert derive_q(ChannelParams(7, 6, 4, 4, 5, 0)) == 7
    assert derive_q(ChannelParams(0, 0, 0, 0)) == 0
    with pytest.raises(ValueError):
        ChannelParams(-1, 0, 0, 0)


def test_forward_example():
    p = ChannelParams(2, 1, 1, 3)  # q = 3
    y = forward_output(p, BitVector.of([1, 1, 0]), BitVector.of([1, 0, 1]), 1)
    assert y == BitVector.of([0, 1, 0])


def test_forward_trivial_cases():
    x = BitVector.of([1, 0, 1])
    assert forward_output(ChannelParams(3, 1, 1, 1), x, BitVector.zeros(3), 1) == x
    assert forward_output(ChannelParams(0, 3, 0, 1), x, x, 1) == BitVector.zeros(3)


def test_feedback_truncation():
    p = ChannelParams(7, 6, 4, 4, 5, 0)
    y = BitVector.of([1, 0, 0, 0, 0, 0, 0])
    assert feedback_output(p, y, 1) == BitVector.of([0, 0, 1, 0, 0, 0, 0])
    assert feedback_output(p.without_feedback(), BitVector.of([1] * 7), 1) == BitVector.zeros(7)
    assert feedback_output(p.with_perfect_feedback(), y, 1) == y


def test_observable_feedback_levels():
    p = ChannelParams(7, 6, 4, 4, 5, 0)
    assert list(p.observable_feedback_levels(1)) == [3, 4, 5, 6, 7]
    assert list(p.observable_feedback_levels(2)) == []


def test_dimension_errors():
    p = ChannelParams(3, 3, 1, 1)
    with pytest.raises(DimensionError):
        forward_output(p, BitVector.of([1, 0]), BitVector.of([1, 0, 0]), 1)


def test_bit_error_probability():
    assert bit_error_probability([0, 1, 1, 0], [0, 1, 0, 0]) == Fraction(1, 4)
    with pytest.raises(ValueError):
        bit_error_probability([0], [0, 1])


@given(params, st.data())
def test_packed_agrees_with_levels(p, data):
    if p.q == 0:
        return
    x1 = data.draw(st.integers(0, 2**p.q - 1))
    x2 = data.draw(st.integers(0, 2**p.q - 1))
    for i in (1, 2):
        y = forward_output(p, BitVector.from_int(x1, p.q), BitVector.from_int(x2, p.q), i)
        assert y.to_int() == int(forward_output_packed(p, np.array([x1]), np.array([x2]), i)[0])


@given(params, st.data())
def test_output_is_linear(p, data):
    if p.q == 0:
        return
    draw = lambda: BitVector.from_int(data.draw(st.integers(0, 2**p.q - 1)), p.q)  # noqa: E731
    a1, a2, b1, b2 = draw(), draw(), draw(), draw()
    for i in (1, 2):
        lhs = forward_output(p, a1 + b1, a2 + b2, i)
        assert lhs == forward_output(p, a1, a2, i) + forward_output(p, b1, b2, i)


@given(params)
def test_swap_symmetry(p):
    if p.q == 0:
        return
    x1, x2 = BitVector.from_int(5 % 2**p.q, p.q), BitVector.from_int(3 % 2**p.q, p.q)
    assert forward_output(p, x1, x2, 1) == forward_output(p.swapped(), x2, x1, 2)


@given(params)
def test_top_levels_of_direct_signal_are_clean(p):
    # with interference silent, receiver i reads its own top levels unchanged
    if p.q == 0:
        return
    ones = BitVector.of([1] * p.q)
    y = forward_output(p, ones, BitVector.zeros(p.q), 1)
    assert sum(y.bits) == p.n11

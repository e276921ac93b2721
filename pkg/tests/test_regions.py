from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nashregion.channel import ChannelParams
from nashregion.regions import (
    box_region, capacity_region, hk_system, inclusion_chain_check, lp_member_capacity, nash_bounds,
    ne_region, ne_region_constructive, theta,
)

FIG2 = ChannelParams(7, 6, 4, 4, 5, 0)
ETA = Fraction(1, 100)
params = st.tuples(*[st.integers(0, 5)] * 6).map(ChannelParams.of)


def test_theta_values():
    assert theta(ChannelParams(7, 6, 4, 4, 0, 0), 1).theta == (0, 7, 4, 3, 4, 7, 7)
    assert theta(ChannelParams(7, 6, 4, 4, 0, 0), 2).theta == (0, 6, 4, 2, 4, 6, 6)
    assert theta(ChannelParams(7, 6, 4, 4, 7, 6), 1).theta == (4, 7, 0, 3, 3, 3, 3)


@given(params, st.integers(1, 2))
def test_theta_invariants(p, i):
    t = theta(p, i)
    assert min(t.theta) >= 0
    assert t[1] + t[3] == p.cross(i)
    assert t[5] == max(t[4], t[3])
    assert t[7] == max(t[3], t[6])


def test_hk_system_shape():
    s = hk_system(ChannelParams(7, 6, 4, 4, 0, 0))
    assert s.dim == 10 and len(s.constraints) == 24
    assert s.contains([0] * 10)
    z = hk_system(ChannelParams(0, 0, 0, 0))
    assert not z.fix(0, 1).feasible()


def test_capacity_examples():
    c = capacity_region(ChannelParams(7, 6, 4, 4, 0, 0))
    assert c.contains_point((0, 0)) and c.contains_point((3, 2))
    assert not c.contains_point((8, 0))
    assert capacity_region(ChannelParams(0, 0, 0, 0)).vertices == ((0, 0),)


def test_nash_bounds_values():
    nb = nash_bounds(FIG2, ETA)
    assert (nb.L1, nb.L2, nb.U1, nb.U2) == (Fraction(299, 100), Fraction(199, 100), Fraction(501, 100),
                                            Fraction(401, 100))
    nb = nash_bounds(ChannelParams(7, 6, 4, 4, 7, 6), ETA)
    assert (nb.U1, nb.U2) == (Fraction(701, 100), Fraction(601, 100))
    assert nash_bounds(FIG2, 3).L1 == 0
    for bad in (0, -1, "0/5"):
        with pytest.raises(ValueError, match="eta must be positive"):
            nash_bounds(FIG2, bad)


def test_box_shapes():
    assert len(box_region(FIG2, ETA).vertices) == 4
    big = box_region(FIG2, 10)
    assert min(v[0] for v in big.vertices) == 0 and min(v[1] for v in big.vertices) == 0


def test_ne_region_examples():
    n = ne_region(FIG2, ETA)
    assert n.contains_point((3, 4)) and n.contains_point((5, 4))
    assert not ne_region(ChannelParams(7, 6, 4, 4, 0, 0), ETA).contains_point((7, 0))


def test_inclusion_examples():
    assert inclusion_chain_check(FIG2, ETA)
    p0 = ChannelParams(7, 6, 4, 4, 0, 0)
    assert ne_region(p0.without_feedback(), ETA).equals(ne_region(p0, ETA))
    pp = FIG2.with_perfect_feedback()
    assert ne_region(pp.with_perfect_feedback(), ETA).equals(ne_region(pp, ETA))


@given(params, st.fractions(min_value=Fraction(1, 16), max_value=4, max_denominator=16))
def test_ne_inside_capacity(p, eta):
    n, c = ne_region(p, eta), capacity_region(p)
    assert c.contains(n)
    for v in n.vertices:
        assert c.contains_point(v)


@given(params, st.sampled_from([Fraction(1, 8), Fraction(1, 2)]), st.sampled_from([Fraction(1, 2), 1, 2]))
def test_monotone_in_eta(p, eta, extra):
    assert ne_region(p, eta + extra).contains(ne_region(p, eta))


@given(params, st.integers(1, 2))
def test_upper_bound_monotone_in_other_feedback(p, i):
    eta = Fraction(1, 8)
    vals = []
    for fb in range(7):
        q = ChannelParams(p.n11, p.n22, p.n12, p.n21, p.fb11 if i == 2 else fb, fb if i == 1 else p.fb22)
        vals.append(nash_bounds(q, eta).upper(i))
    assert vals == sorted(vals)


@given(params, st.integers(0, 7), st.integers(0, 7))
def test_lower_bound_ignores_feedback(p, a, b):
    q = ChannelParams(p.n11, p.n22, p.n12, p.n21, a, b)
    eta = Fraction(1, 8)
    assert (nash_bounds(p, eta).L1, nash_bounds(p, eta).L2) == (nash_bounds(q, eta).L1, nash_bounds(q, eta).L2)


@given(params)
def test_capacity_membership_matches_lp_on_grid(p):
    c = capacity_region(p)
    step = Fraction(1, 2)
    for a in range(2 * p.q + 3):
        for b in range(2 * p.q + 3):
            pt = (a * step, b * step)
            assert c.contains_point(pt) == lp_member_capacity(p, pt)


@given(params)
def test_inclusion_chain_sweep(p):
    assert inclusion_chain_check(p, Fraction(1, 8))


def test_constructive_region_is_eta_free():
    # the tightness equalities pin R_i to the shifted component sum, so eta cancels
    a = ne_region_constructive(FIG2, Fraction(1, 8))
    b = ne_region_constructive(FIG2, Fraction(1, 2))
    assert a.equals(b)
    assert ne_region(FIG2, Fraction(1, 8)).strictly_contains(a)

"""Acceptance criteria 1-11, each at its stated tolerance.

Each test records a one-line verdict that the session summary prints.
"""
import itertools
import random
import time
from fractions import Fraction

import numpy as np

from conftest import ACCEPTANCE
from nashregion import regions
from nashregion.channel import ChannelParams, run_channel
from nashregion.equilibrium import ClassBounds, best_deviation, deviation_ceiling, scheme_aggregates
from nashregion.regions import (
    capacity_region, inclusion_chain_check, lp_member_capacity, nash_bounds, ne_region,
    ne_region_constructive, theta,
)
from nashregion.schemes import FIGURE2_PARAMS, figure2_schemes, floor_scheme, run_and_verify

BASE = (7, 6, 4, 4)
FIG2_FAMILY = [ChannelParams(*BASE, a, b) for a in range(8) for b in range(7)]
_rng = random.Random(20240611)
RANDOM_200 = [ChannelParams(*(_rng.randint(0, 5) for _ in range(6))) for _ in range(200)]
RANDOM_50 = [ChannelParams(*(_rng.randint(0, 5) for _ in range(6))) for _ in range(50)]


def record(n, ok, detail):
    ACCEPTANCE[n] = (bool(ok), detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def _fresh_caches():
    regions._capacity.cache_clear()
    regions._ne.cache_clear()
    regions._ne_constructive.cache_clear()


def test_criterion_01_feedback_collapse():
    _fresh_caches()
    eta = Fraction(1, 100)
    t = time.perf_counter()
    ref = ne_region(ChannelParams(*BASE, 0, 0), eta)
    same = [ne_region(ChannelParams(*BASE, a, b), eta).equals(ref) for a in range(5) for b in range(5)]
    dt = time.perf_counter() - t
    record(1, all(same) and dt < 10, f"{sum(same)}/25 equal to the no-feedback region in {dt:.2f}s")


def test_criterion_02_feedback_enlargement():
    eta = Fraction(1, 100)
    ref = ne_region(ChannelParams(*BASE, 0, 0), eta)
    cases = [(a, b) for a in (5, 6, 7) for b in range(5)]
    strict = [ne_region(ChannelParams(*BASE, a, b), eta).strictly_contains(ref) for a, b in cases]
    record(2, all(strict), f"{sum(strict)}/{len(cases)} strictly larger")


def test_criterion_03_reference_points():
    n = ne_region(FIGURE2_PARAMS, Fraction(1, 100))
    ok = n.contains_point((3, 4)) and n.contains_point((5, 4))
    record(3, ok, "(3,4) and (5,4) in N_eta(7,6,4,4,5,0)")


def test_criterion_04_bounds_table():
    eta = Fraction(1, 100)
    expect_u1 = {**{b: 5 for b in range(5)}, 5: 6, 6: 7}
    expect_u2 = {**{a: 3 for a in range(5)}, 5: 4, 6: 5, 7: 6}
    bad = []
    for a in range(8):
        for b in range(7):
            nb = nash_bounds(ChannelParams(*BASE, a, b), eta)
            if nb.U1 != expect_u1[b] + eta or nb.U2 != expect_u2[a] + eta:
                bad.append((a, b, nb.U1, nb.U2))
    record(4, not bad, f"U table over fb11 in 0..7, fb22 in 0..6: {len(bad)} mismatches")


def test_criterion_05_theta():
    t = time.perf_counter()
    fixed = (theta(ChannelParams(7, 6, 4, 4, 0, 0), 1).theta == (0, 7, 4, 3, 4, 7, 7)
             and theta(ChannelParams(7, 6, 4, 4, 0, 0), 2).theta == (0, 6, 4, 2, 4, 6, 6)
             and theta(ChannelParams(7, 6, 4, 4, 7, 6), 1).theta == (4, 7, 0, 3, 3, 3, 3))
    bad = 0
    count = 0
    for tup in itertools.product(range(6), repeat=6):
        p = ChannelParams(*tup)
        count += 1
        for i in (1, 2):
            th = theta(p, i)
            if (min(th.theta) < 0 or th[1] + th[3] != p.cross(i) or th[5] != max(th[4], th[3])
                    or th[7] != max(th[3], th[6])):
                bad += 1
    dt = time.perf_counter() - t
    record(5, fixed and bad == 0 and count == 46656 and dt < 60,
           f"regression tuples {'match' if fixed else 'DIFFER'}; {bad} invariant failures over {count} tuples in {dt:.1f}s")


def test_criterion_06_constructive_identity():
    eta = Fraction(1, 8)
    cases = FIG2_FAMILY + RANDOM_200
    mismatched = [p for p in cases if not ne_region_constructive(p, eta).equals(ne_region(p, eta))]
    detail = f"{len(cases) - len(mismatched)}/{len(cases)} equal"
    if mismatched:
        p = mismatched[0]
        detail += (f"; e.g. {p}: constructive {[tuple(map(str, v)) for v in ne_region_constructive(p, eta).vertices]}"
                   f" vs N_eta {[tuple(map(str, v)) for v in ne_region(p, eta).vertices]}")
    record(6, not mismatched, detail)


def test_criterion_07_inclusion_chain():
    eta = Fraction(1, 8)
    cases = FIG2_FAMILY + RANDOM_200
    bad = [p for p in cases if not inclusion_chain_check(p, eta)]
    record(7, not bad, f"{len(cases) - len(bad)}/{len(cases)} chains hold")


def test_criterion_08_grid_oracle():
    disagreements = 0
    points = 0
    for p in RANDOM_50:
        c = capacity_region(p)
        for a in range(4 * p.q + 1):
            for b in range(4 * p.q + 1):
                pt = (Fraction(a, 4), Fraction(b, 4))
                points += 1
                if c.contains_point(pt) != lp_member_capacity(p, pt):
                    disagreements += 1
    record(8, disagreements == 0, f"{disagreements} disagreements over {points} grid points")


def _floor_under_attack(p, i, rng, n_attacks=1000):
    """Middle-block messages exhaustive, outer blocks and interference random."""
    s = floor_scheme(p, i)
    f = s.fresh_per_block
    lanes = (1 << f) * n_attacks
    ids = np.arange(lanes)
    w = []
    for blk in range(s.blocks):
        for k in range(f):
            if blk == 1:
                w.append(((ids >> k) & 1).astype(np.uint8))
            else:
                w.append(rng.integers(0, 2, lanes, dtype=np.uint8))
    junk = rng.integers(0, 2, (s.uses, p.q, n_attacks), dtype=np.uint8)
    junk = np.tile(junk, (1, 1, 1 << f))  # lane = message_index * n_attacks + attack
    junk = junk.reshape(s.uses, p.q, 1 << f, n_attacks).reshape(s.uses, p.q, lanes)
    enc = lambda n, fb: s.encode(n, w, (), fb)  # noqa: E731
    adv = lambda n, fb: tuple(junk[n - 1])  # noqa: E731
    e1, e2 = (enc, adv) if i == 1 else (adv, enc)
    _, y, _ = run_channel(p, e1, e2, s.uses, s.uses)
    dec = s.decode(y[i - 1], ())
    return all(np.array_equal(np.broadcast_to(d, (lanes,)), m) for d, m in zip(dec, w))


def test_criterion_09_floor_schemes():
    # the floor scheme ignores feedback and the forward outputs do not depend on it,
    # so the forward tuples with q <= 7 cover every tuple
    rng = np.random.default_rng(9)
    bad = []
    count = 0
    for tup in itertools.product(range(8), repeat=4):
        p = ChannelParams(*tup)
        if p.q == 0:
            continue
        count += 1
        s1, s2 = floor_scheme(p, 1), floor_scheme(p, 2)
        rep = run_and_verify(p, s1, s2, trials=16)
        ok = rep.zero_error and rep.rates == (p.floor_rate(1), p.floor_rate(2))
        ok = ok and _floor_under_attack(p, 1, rng) and _floor_under_attack(p, 2, rng)
        if not ok:
            bad.append(tup)
    record(9, not bad, f"{count - len(bad)}/{count} forward tuples zero-error under 1000 interference sequences")


def test_criterion_10_scheme_targets():
    out = []
    ok = True
    for target, wants_random in (((3, 4), True), ((5, 4), False)):
        s1, s2 = figure2_schemes(target)
        rep = run_and_verify(FIGURE2_PARAMS, s1, s2, exhaustive=True)
        good = (rep.zero_error and rep.mode == "exhaustive" and rep.rates == target
                and (rep.random_rates[1] > 0) == wants_random)
        ok = ok and good
        out.append(f"{target}: {rep.verdict} over {rep.trials} inputs, random rate 2 = {rep.random_rates[1]}")
    record(10, ok, "; ".join(out))


def test_criterion_11_restricted_equilibrium():
    p = ChannelParams(7, 6, 4, 4, 0, 0)
    eta = Fraction(1, 100)
    profile = {1: floor_scheme(p, 1), 2: floor_scheme(p, 2)}
    t = time.perf_counter()
    parts, ok = [], True
    for i in (1, 2):
        fixed, mine = profile[3 - i], profile[i]
        res = best_deviation(p, fixed, ClassBounds(max_pattern=2, relay_lag_max=2), eta)
        rc, rr = scheme_aggregates(p, fixed, mine)
        ceiling = deviation_ceiling(p, i, rc, rr, eta)
        ok = ok and res.best <= ceiling and res.candidates <= 10**6
        parts.append(f"user {i}: best {res.best} <= ceiling {ceiling} ({res.candidates} candidates)")
    dt = time.perf_counter() - t
    record(11, ok and dt < 300, "; ".join(parts) + f" in {dt:.1f}s")

"""Rate regions of the two-user channel: C, the box B_eta and N_eta = C ∩ B_eta."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import lp
from .channel import ChannelParams, other, pos
from .polytope import (
    LinearSystem, Region2, as_rational, box, format_rational, intersect, project, vertices2,
)

COMPONENTS = ("C1", "R1", "C2", "R2", "P")
HK_NAMES = tuple(f"R{i}{c}" for i in (1, 2) for c in COMPONENTS)


def hk_index(i: int, comp: str) -> int:
    return (i - 1) * 5 + COMPONENTS.index(comp)


def check_eta(eta) -> Fraction:
    eta = as_rational(eta)
    if eta <= 0:
        raise ValueError("eta must be positive")
    return eta


@dataclass(frozen=True)
class RatePair:
    r1: Fraction
    r2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r1", as_rational(self.r1))
        object.__setattr__(self, "r2", as_rational(self.r2))
        if self.r1 < 0 or self.r2 < 0:
            raise ValueError("rates must be nonnegative")

    @classmethod
    def of(cls, r) -> "RatePair":
        return r if isinstance(r, RatePair) else cls(*r)

    def __iter__(self):
        return iter((self.r1, self.r2))

    def __getitem__(self, i):
        return (self.r1, self.r2)[i]

    def to_json(self):
        return [format_rational(self.r1), format_rational(self.r2)]


@dataclass(frozen=True)
class ThetaBounds:
    user: int
    theta: tuple[int, int, int, int, int, int, int]

    def __getitem__(self, k: int) -> int:
        """1-based access, ``t[1]`` .. ``t[7]``."""
        if not 1 <= k <= 7:
            raise IndexError(k)
        return self.theta[k - 1]

    def to_json(self):
        return {"user": self.user, "theta": list(self.theta)}


def theta(p: ChannelParams, i: int) -> ThetaBounds:
    j = other(i)
    nii, njj = p.direct(i), p.direct(j)
    nij, nji = p.cross(i), p.cross(j)
    gap_i = pos(max(nii, nij) - p.feedback(i))    # feedback levels transmitter i misses
    gap_j = pos(max(njj, nji) - p.feedback(j))
    t1 = pos(nij - gap_i)
    t2 = max(nii, nij)
    t3 = min(nij, gap_i)
    t4 = pos(nii - nji)
    t5 = max(t4, t3)
    shared = min(nji, gap_j) - min(pos(nji - nii), gap_j) + t4
    t6 = shared
    t7 = max(t3, shared)
    return ThetaBounds(i, (t1, t2, t3, t4, t5, t6, t7))


def _hk_rows(b, p: ChannelParams, var, shift=Fraction(0)):
    """Append the seven rate-splitting constraints per user.

    ``var(i, comp)`` names the variable for a component, or None when the
    component is pinned to zero.
    """
    def terms(*pairs):
        out = {}
        for i, comp in pairs:
            v = var(i, comp)
            if v is not None:
                out[v] = out.get(v, 0) + 1
        return out

    for i in (1, 2):
        j = other(i)
        t = theta(p, i)
        R_i = [(i, "C1"), (i, "C2"), (i, "P")]
        b.le(terms((j, "C1"), (j, "R1")), t[1])
        b.le(terms(*R_i, (j, "C1"), (j, "C2"), (j, "R1"), (j, "R2")), t[2])
        b.le(terms((j, "C2"), (j, "R2")), t[3])
        b.le(terms((i, "P")), t[4])
        b.le(terms((i, "P"), (j, "C2"), (j, "R2")), t[5])
        b.le(terms((i, "C2"), (i, "P")), t[6])
        b.le(terms((i, "C2"), (i, "P"), (j, "C2"), (j, "R2")), t[7])
    return b


def hk_system(p: ChannelParams) -> LinearSystem:
    """Ten-variable rate-splitting system; variables ordered as ``HK_NAMES``."""
    b = LinearSystem.build(10, HK_NAMES)
    _hk_rows(b, p, lambda i, c: f"R{i}{c}")
    for k in range(10):
        b.ge({k: 1}, 0)
    return b.done()


@lru_cache(maxsize=4096)
def _capacity(p: ChannelParams) -> Region2:
    # R1, R2, then the deterministic components of both users
    comps = [(i, c) for i in (1, 2) for c in ("C1", "C2", "P")]
    names = ("R1", "R2") + tuple(f"R{i}{c}" for i, c in comps)
    b = LinearSystem.build(len(names), names)
    _hk_rows(b, p, lambda i, c: None if c.startswith("R") else f"R{i}{c}")
    for nm in names:
        b.ge({nm: 1}, 0)
    for i in (1, 2):
        b.eq({f"R{i}": 1, f"R{i}C1": -1, f"R{i}C2": -1, f"R{i}P": -1}, 0)
    return vertices2(project(b.done(), [0, 1]), "C (achievable)")


def capacity_region(p: ChannelParams) -> Region2:
    """Projection of the rate-splitting system with zero random rates."""
    return _capacity(p)


@dataclass(frozen=True)
class NashBounds:
    L1: Fraction
    L2: Fraction
    U1: Fraction
    U2: Fraction
    eta: Fraction

    def lower(self, i: int) -> Fraction:
        return (self.L1, self.L2)[i - 1]

    def upper(self, i: int) -> Fraction:
        return (self.U1, self.U2)[i - 1]

    def to_json(self):
        f = format_rational
        return {"L": [f(self.L1), f(self.L2)], "U": [f(self.U1), f(self.U2)], "eta": f(self.eta)}


def lower_bound(p: ChannelParams, i: int, eta) -> Fraction:
    return max(Fraction(p.floor_rate(i)) - eta, Fraction(0))


def upper_bound(p: ChannelParams, i: int, eta) -> Fraction:
    j = other(i)
    nii, njj = p.direct(i), p.direct(j)
    nij, nji = p.cross(i), p.cross(j)
    relayed = pos(min(pos(njj - nij), nji) - pos(max(njj, nji) - p.feedback(j)))
    return max(nii, nij) - pos(min(pos(njj - nji), nij) - relayed) + eta


def nash_bounds(p: ChannelParams, eta) -> NashBounds:
    eta = check_eta(eta)
    return NashBounds(lower_bound(p, 1, eta), lower_bound(p, 2, eta),
                      upper_bound(p, 1, eta), upper_bound(p, 2, eta), eta)


def box_region(p: ChannelParams, eta) -> Region2:
    nb = nash_bounds(p, eta)
    return box((nb.L1, nb.L2), (nb.U1, nb.U2), "B_eta")


@lru_cache(maxsize=4096)
def _ne(p: ChannelParams, eta: Fraction) -> Region2:
    return intersect(capacity_region(p), box_region(p, eta), "N_eta")


def ne_region(p: ChannelParams, eta) -> Region2:
    return _ne(p, check_eta(eta))


CONSTRUCTIVE_NAMES = ("R1", "R2") + HK_NAMES + tuple(
    f"A{i}{k}" for i in (1, 2) for k in ("C", "R", "P"))


def constructive_system(p: ChannelParams, eta) -> LinearSystem:
    """Aggregate-level system whose projection is ``ne_region_constructive``.

    ``A_iC, A_iR, A_iP`` are the unshifted aggregates; the components
    ``R_i*`` split the aggregates lowered by ``eta/6`` and must satisfy the
    rate-splitting constraints.  The two tightness equalities and the rate
    definitions complete the system.
    """
    eta = check_eta(eta)
    b = LinearSystem.build(len(CONSTRUCTIVE_NAMES), CONSTRUCTIVE_NAMES)
    _hk_rows(b, p, lambda i, c: f"R{i}{c}")
    for nm in HK_NAMES:
        b.ge({nm: 1}, 0)
    s = eta / 6
    for i in (1, 2):
        b.eq({f"A{i}C": 1, f"R{i}C1": -1, f"R{i}C2": -1}, s)
        b.eq({f"A{i}R": 1, f"R{i}R1": -1, f"R{i}R2": -1}, s)
        b.eq({f"A{i}P": 1, f"R{i}P": -1}, s)
        b.eq({f"R{i}": 1, f"A{i}C": -1, f"A{i}P": -1}, -eta / 3)
    for i in (1, 2):
        j = other(i)
        rhs = max(p.direct(i), p.cross(i)) + Fraction(2, 3) * eta
        b.eq({f"A{i}C": 1, f"A{i}P": 1, f"A{j}C": 1, f"A{j}R": 1}, rhs)
    return b.done()


@lru_cache(maxsize=4096)
def _ne_constructive(p: ChannelParams, eta: Fraction) -> Region2:
    return vertices2(project(constructive_system(p, eta), [0, 1]), "N_eta (constructive)")


def ne_region_constructive(p: ChannelParams, eta) -> Region2:
    return _ne_constructive(p, check_eta(eta))


@dataclass(frozen=True)
class InclusionReport:
    holds: bool
    no_feedback: Region2
    actual: Region2
    perfect_feedback: Region2

    def vertex_counts(self) -> tuple[int, int, int]:
        return tuple(len(r.vertices) for r in (self.no_feedback, self.actual, self.perfect_feedback))


def inclusion_report(p: ChannelParams, eta) -> InclusionReport:
    eta = check_eta(eta)
    lo = ne_region(p.without_feedback(), eta)
    mid = ne_region(p, eta)
    hi = ne_region(p.with_perfect_feedback(), eta)
    return InclusionReport(mid.contains(lo) and hi.contains(mid), lo, mid, hi)


def inclusion_chain_check(p: ChannelParams, eta) -> bool:
    return inclusion_report(p, eta).holds


# ---------------------------------------------------------------- grid oracle

def lp_member_capacity(p: ChannelParams, r: Sequence) -> bool:
    """Independent membership test: LP feasibility with the rates pinned.

    Builds the six deterministic components directly as matrices (no
    projection) and asks the simplex whether a split exists.
    """
    r1, r2 = (as_rational(v) for v in r)
    if r1 < 0 or r2 < 0:
        return False
    comps = [(i, c) for i in (1, 2) for c in ("C1", "C2", "P")]
    idx = {ic: k for k, ic in enumerate(comps)}

    class Rows:
        def __init__(self):
            self.A, self.b = [], []

        def le(self, coeffs, rhs):
            row = [Fraction(0)] * 6
            for k, v in coeffs.items():
                row[k] += v
            self.A.append(row)
            self.b.append(Fraction(rhs))
    rows = Rows()
    _hk_rows(rows, p, lambda i, c: idx.get((i, c)))
    A_eq = []
    for i, r_i in ((1, r1), (2, r2)):
        A_eq.append([Fraction(1) if ic[0] == i else Fraction(0) for ic in comps])
    res = lp.linprog([0] * 6, rows.A, rows.b, A_eq, [r1, r2], nonneg=True)
    return res.feasible


def lp_member_ne(p: ChannelParams, eta, r: Sequence) -> bool:
    nb = nash_bounds(p, eta)
    r1, r2 = (as_rational(v) for v in r)
    if not (nb.L1 <= r1 <= nb.U1 and nb.L2 <= r2 <= nb.U2):
        return False
    return lp_member_capacity(p, (r1, r2))

"""Equilibrium predicates, the deviation ceiling and a brute-force deviation search."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .channel import ChannelParams, other
from .polytope import as_rational, format_rational
from .regions import (
    CONSTRUCTIVE_NAMES, COMPONENTS, RatePair, capacity_region, check_eta, constructive_system,
    hk_system, nash_bounds,
)
from .schemes import (
    InvalidSchemeError, Relay, Scheme, SimulationReport, make_scheme, run_and_verify,
    validate_scheme,
)
from .synthesis import Window, synthesize, visible_aggregates

DEFAULT_EPSILON = Fraction(1, 1000)
ORACLE_LIMIT = 10**6


@dataclass(frozen=True)
class RateSplit:
    """Five rate components per user: C1, R1, C2, R2, P."""

    user1: tuple[Fraction, ...]
    user2: tuple[Fraction, ...]

    def __post_init__(self):
        for comps in (self.user1, self.user2):
            if len(comps) != 5 or any(as_rational(c) < 0 for c in comps):
                raise ValueError("a split has five nonnegative components per user")

    def component(self, i: int, name: str) -> Fraction:
        return (self.user1, self.user2)[i - 1][COMPONENTS.index(name)]

    def rate(self, i: int) -> Fraction:
        return sum(self.component(i, c) for c in ("C1", "C2", "P"))

    def common(self, i: int) -> Fraction:
        return self.component(i, "C1") + self.component(i, "C2")

    def random(self, i: int) -> Fraction:
        return self.component(i, "R1") + self.component(i, "R2")

    def as_vector(self) -> tuple[Fraction, ...]:
        return tuple(self.user1) + tuple(self.user2)

    def to_json(self) -> dict:
        return {f"user{i}": {c: format_rational(self.component(i, c)) for c in COMPONENTS} for i in (1, 2)}


@dataclass(frozen=True)
class GameOutcome:
    configurations: tuple[str, str]
    utilities: tuple[Fraction, Fraction]
    epsilon: Fraction

    def to_json(self) -> dict:
        return {"configurations": list(self.configurations),
                "utilities": [format_rational(u) for u in self.utilities],
                "epsilon": format_rational(self.epsilon)}


def check_epsilon(epsilon) -> Fraction:
    epsilon = as_rational(epsilon)
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie strictly between 0 and 1")
    return epsilon


def utility(report: SimulationReport, i: int, epsilon=DEFAULT_EPSILON) -> Fraction:
    epsilon = check_epsilon(epsilon)
    return report.rates[i - 1] if report.error_probability[i - 1] < epsilon else Fraction(0)


def play(p: ChannelParams, s1: Scheme, s2: Scheme, epsilon=DEFAULT_EPSILON, trials: int = 64,
         seed: int = 0) -> GameOutcome:
    rep = run_and_verify(p, s1, s2, trials=trials, seed=seed)
    return GameOutcome((s1.name or "s1", s2.name or "s2"),
                       (utility(rep, 1, epsilon), utility(rep, 2, epsilon)), check_epsilon(epsilon))


def is_ne_rate_pair(p: ChannelParams, eta, r) -> bool:
    nb = nash_bounds(p, eta)
    r = RatePair.of(r)
    if not (nb.L1 <= r.r1 <= nb.U1 and nb.L2 <= r.r2 <= nb.U2):
        return False
    return capacity_region(p).contains_point((r.r1, r.r2))


def deviation_ceiling(p: ChannelParams, i: int, r_jC, r_jR, eta) -> Fraction:
    eta = check_eta(eta)
    r_jC, r_jR = as_rational(r_jC), as_rational(r_jR)
    if r_jC < 0 or r_jR < 0:
        raise ValueError("aggregate rates must be nonnegative")
    return max(p.direct(i), p.cross(i)) - (r_jC + r_jR) + Fraction(2, 3) * eta


@dataclass(frozen=True)
class NESplit:
    """Witness for a rate pair: the shifted component split and the aggregates."""

    split: RateSplit
    aggregates: dict = field(hash=False)
    eta: Fraction

    def condition_residuals(self, p: ChannelParams) -> tuple[Fraction, Fraction]:
        """Left minus right side of the two tightness equalities (zero for a witness)."""
        a = self.aggregates
        out = []
        for i in (1, 2):
            j = other(i)
            lhs = a[f"A{i}C"] + a[f"A{i}P"] + a[f"A{j}C"] + a[f"A{j}R"]
            out.append(lhs - max(p.direct(i), p.cross(i)) - Fraction(2, 3) * self.eta)
        return tuple(out)

    def rates(self) -> tuple[Fraction, Fraction]:
        a = self.aggregates
        return tuple(a[f"A{i}C"] + a[f"A{i}P"] - self.eta / 3 for i in (1, 2))

    def to_json(self) -> dict:
        return {"shifted_split": self.split.to_json(),
                "aggregates": {k: format_rational(v) for k, v in sorted(self.aggregates.items())}}


def ne_split_search(p: ChannelParams, eta, r) -> NESplit | None:
    """Exact LP search for aggregates meeting the tightness equalities at ``r``."""
    eta = check_eta(eta)
    r = RatePair.of(r)
    sys = constructive_system(p, eta).fix(0, r.r1).fix(0, r.r2)
    res = sys.maximize([0] * sys.dim)
    if not res.feasible:
        return None
    vals = dict(zip(CONSTRUCTIVE_NAMES[2:], res.x))
    split = RateSplit(tuple(vals[f"R1{c}"] for c in COMPONENTS), tuple(vals[f"R2{c}"] for c in COMPONENTS))
    agg = {k: v for k, v in vals.items() if k.startswith("A")}
    witness = NESplit(split, agg, eta)
    # re-verify by substitution rather than trusting the solver
    if not hk_system(p).contains(split.as_vector()) or witness.condition_residuals(p) != (0, 0) \
            or witness.rates() != (r.r1, r.r2):
        raise AssertionError("LP witness failed re-verification")
    return witness


# ------------------------------------------------------------ deviation oracle

def scheme_aggregates(p: ChannelParams, s: Scheme, partner: Scheme | None = None) -> tuple[Fraction, Fraction]:
    """Realized ``(r_jC, r_jR)`` of user j's scheme as seen by receiver i.

    ``partner`` is user i's scheme in the profile (it matters only when j
    relays feedback); by default user i is silent.
    """
    return visible_aggregates(p, s, partner)


@dataclass(frozen=True)
class ClassBounds:
    """Enumeration limits for the deviating user's schemes."""

    max_pattern: int = 2
    relay_lag_max: int = 2
    allow_relay: bool = True
    window: Window = Window()
    limit: int = ORACLE_LIMIT

    def to_json(self) -> dict:
        return {"max_pattern": self.max_pattern, "relay_lag_max": self.relay_lag_max,
                "allow_relay": self.allow_relay, "window": [self.window.back, self.window.ahead]}


def _level_choices(p: ChannelParams, i: int, bounds: ClassBounds) -> list:
    choices: list = [None, "F"]
    if bounds.allow_relay:
        for lvl in p.observable_feedback_levels(i):
            for lag in range(1, bounds.relay_lag_max + 1):
                choices.append(Relay(lvl, lag))
    return choices


def class_size(p: ChannelParams, i: int, bounds: ClassBounds) -> int:
    c = len(_level_choices(p, i, bounds))
    return sum(c ** (p.q * P) for P in range(1, bounds.max_pattern + 1))


def _candidates(p: ChannelParams, i: int, bounds: ClassBounds):
    """Yield ``(P, fresh_count, combo)`` lazily, highest rate ``fresh/P`` first."""
    rest = [c for c in _level_choices(p, i, bounds) if c != "F"]
    q = p.q
    groups = sorted(((P, f) for P in range(1, bounds.max_pattern + 1) for f in range(q * P + 1)),
                    key=lambda g: (-Fraction(g[1], g[0]), g[0]))
    for P, f in groups:
        slots = q * P
        for fresh_at in itertools.combinations(range(slots), f):
            others = [k for k in range(slots) if k not in fresh_at]
            for fill in itertools.product(rest, repeat=len(others)):
                combo = ["F"] * slots
                for k, c in zip(others, fill):
                    combo[k] = c
                yield P, f, tuple(combo)


def _build(i: int, P: int, q: int, combo, blocks: int) -> Scheme:
    levels, k = [], 0
    for u in range(P):
        use = []
        for c in combo[u * q:(u + 1) * q]:
            if c is None:
                use.append("0")
            elif c == "F":
                use.append(f"F{k}")
                k += 1
            else:
                use.append(str(c))
        levels.append(use)
    return make_scheme(i, levels, [[] for _ in range(k)], blocks)


@dataclass
class OracleResult:
    best: Fraction
    scheme: Scheme | None
    candidates: int
    examined: int
    bounds: ClassBounds

    def to_json(self) -> dict:
        return {"class": self.bounds.to_json(), "candidates": self.candidates, "examined": self.examined,
                "best_rate": format_rational(self.best),
                "best_scheme": self.scheme.to_json() if self.scheme else None}


def best_deviation(p: ChannelParams, fixed: Scheme, bounds: ClassBounds = ClassBounds(),
                   eta=None, verify_trials: int = 16, seed: int = 0) -> OracleResult:
    """Search every class member for user ``i = other(fixed.user)``.

    A candidate's utility is its rate when all of its fresh bits are
    recoverable against ``fixed`` and zero otherwise.  Candidates that
    cannot beat the best value found so far are skipped without analysis.
    The winner is confirmed with ``run_and_verify``.
    """
    if eta is not None:
        check_eta(eta)
    problems = validate_scheme(p, fixed)
    if problems:
        raise InvalidSchemeError(problems)
    i = other(fixed.user)
    size = class_size(p, i, bounds)
    if size > bounds.limit:
        raise ValueError(f"class has {size} candidates, above the limit of {bounds.limit}")
    best, best_scheme, examined = Fraction(0), None, 0
    for P, nfresh, combo in _candidates(p, i, bounds):
        rate = Fraction(nfresh, P)
        if rate <= best and best_scheme is not None:
            break
        examined += 1
        s = synthesize(p, _build(i, P, p.q, combo, fixed.blocks), fixed, bounds.window)
        if s is None:
            continue
        pair = (s, fixed) if i == 1 else (fixed, s)
        rep = run_and_verify(p, *pair, trials=verify_trials, seed=seed)
        # only the deviator's own decoding enters its utility
        if rep.error_probability[i - 1] == 0:
            best, best_scheme = rate, s
            break
    if best_scheme is None:
        # nothing decodable: the all-zero scheme is in every class
        best_scheme = _build(i, 1, p.q, (None,) * p.q, fixed.blocks)
    return OracleResult(best, best_scheme, size, examined, bounds)


def restricted_deviation_oracle(p: ChannelParams, fixed: Scheme, bounds: ClassBounds = ClassBounds(),
                                eta=None) -> Fraction:
    return best_deviation(p, fixed, bounds, eta).best

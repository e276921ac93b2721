"""Exact rational halfspace systems, Fourier-Motzkin projection and 2D polygons.

Nothing in here touches floating point.  Rationals are ``fractions.Fraction``
and cross text boundaries as ``"num/den"`` strings.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import lp

Rational = Fraction

LE = "<="
EQ = "="


class UnboundedError(ValueError):
    """The system does not describe a bounded set."""


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to an exact rational.

    Floats are rejected: a float has already lost the value the caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value) -> str:
    v = as_rational(value)
    return f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class Constraint:
    """``a . x <= b`` or ``a . x = b``."""

    a: tuple[Fraction, ...]
    b: Fraction
    rel: str = LE

    def __post_init__(self):
        if self.rel not in (LE, EQ):
            raise ValueError(f"unknown relation {self.rel!r}")

    @classmethod
    def make(cls, a: Iterable, b, rel: str = LE) -> "Constraint":
        return cls(tuple(as_rational(v) for v in a), as_rational(b), rel)

    @property
    def trivial(self) -> bool:
        return not any(self.a)

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((ai * xi for ai, xi in zip(self.a, x) if ai), Fraction(0))
        return lhs == self.b if self.rel == EQ else lhs <= self.b

    def tight(self, x: Sequence[Fraction]) -> bool:
        return sum((ai * xi for ai, xi in zip(self.a, x) if ai), Fraction(0)) == self.b

    def normalized(self) -> "Constraint":
        """Scale so the leading nonzero coefficient is +1 or -1.

        Inequalities are only scaled by positive factors; equalities are
        scaled so the leading coefficient is +1.
        """
        lead = next((v for v in self.a if v), None)
        if lead is None:
            if self.rel == EQ:
                return Constraint(self.a, Fraction(0 if self.b == 0 else 1), EQ)
            return Constraint(self.a, Fraction(0 if self.b >= 0 else -1), LE)
        s = lead if self.rel == EQ else abs(lead)
        if s == 1:
            return self
        return Constraint(tuple(v / s for v in self.a), self.b / s, self.rel)

    def drop(self, var: int) -> "Constraint":
        return Constraint(self.a[:var] + self.a[var + 1:], self.b, self.rel)

    def to_json(self) -> dict:
        return {
            "a": [format_rational(v) for v in self.a],
            "b": format_rational(self.b),
            "rel": self.rel,
        }


def _combine(p: Constraint, n: Constraint, var: int) -> Constraint:
    """Eliminate ``var`` from an upper and a lower bound on it."""
    cp, cn = p.a[var], -n.a[var]
    a = tuple(cn * x + cp * y for x, y in zip(p.a, n.a))
    return Constraint(a, cn * p.b + cp * n.b, LE).drop(var).normalized()


@dataclass(frozen=True)
class LinearSystem:
    dim: int
    constraints: tuple[Constraint, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        for c in self.constraints:
            if len(c.a) != self.dim:
                raise ValueError(f"constraint of length {len(c.a)} in a {self.dim}-dimensional system")
        if self.names is not None and len(self.names) != self.dim:
            raise ValueError("one name per variable")

    @classmethod
    def build(cls, dim: int, names: Sequence[str] | None = None) -> "SystemBuilder":
        return SystemBuilder(dim, tuple(names) if names else None)

    def contains(self, x: Sequence) -> bool:
        x = [as_rational(v) for v in x]
        return all(c.holds(x) for c in self.constraints)

    def conjoin(self, other: "LinearSystem") -> "LinearSystem":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return LinearSystem(self.dim, self.constraints + other.constraints, self.names)

    def matrices(self):
        ub = [c for c in self.constraints if c.rel == LE]
        eq = [c for c in self.constraints if c.rel == EQ]
        return [c.a for c in ub], [c.b for c in ub], [c.a for c in eq], [c.b for c in eq]

    def maximize(self, objective: Sequence) -> lp.LPResult:
        A_ub, b_ub, A_eq, b_eq = self.matrices()
        return lp.linprog([as_rational(v) for v in objective], A_ub, b_ub, A_eq, b_eq)

    def feasible(self) -> bool:
        if any(c.trivial and not c.holds((0,) * self.dim) for c in self.constraints):
            return False
        return self.maximize([0] * self.dim).feasible

    def fix(self, var: int, value) -> "LinearSystem":
        """Substitute ``x[var] = value`` and drop the coordinate."""
        value = as_rational(value)
        cons = tuple(
            Constraint(c.a[:var] + c.a[var + 1:], c.b - c.a[var] * value, c.rel)
            for c in self.constraints
        )
        return LinearSystem(self.dim - 1, cons, _drop_name(self.names, var))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "names": list(self.names) if self.names else None,
            "constraints": [c.to_json() for c in self.constraints],
        }

    def __str__(self):
        names = self.names or tuple(f"x{k}" for k in range(self.dim))
        lines = []
        for c in self.constraints:
            terms = " + ".join(f"{v}*{nm}" for v, nm in zip(c.a, names) if v) or "0"
            lines.append(f"{terms} {c.rel} {c.b}")
        return "\n".join(lines)


class SystemBuilder:
    """Accumulates constraints given as ``{variable: coefficient}`` maps."""

    def __init__(self, dim: int, names: tuple[str, ...] | None):
        self.dim = dim
        self.names = names
        self._index = {nm: k for k, nm in enumerate(names)} if names else {}
        self._rows: list[Constraint] = []

    def _vec(self, coeffs) -> tuple[Fraction, ...]:
        a = [Fraction(0)] * self.dim
        for key, v in coeffs.items():
            k = self._index[key] if isinstance(key, str) else key
            a[k] += as_rational(v)
        return tuple(a)

    def le(self, coeffs, b) -> "SystemBuilder":
        self._rows.append(Constraint(self._vec(coeffs), as_rational(b), LE))
        return self

    def ge(self, coeffs, b) -> "SystemBuilder":
        return self.le({k: -as_rational(v) for k, v in coeffs.items()}, -as_rational(b))

    def eq(self, coeffs, b) -> "SystemBuilder":
        self._rows.append(Constraint(self._vec(coeffs), as_rational(b), EQ))
        return self

    def done(self) -> LinearSystem:
        return LinearSystem(self.dim, tuple(self._rows), self.names)


def _drop_name(names, var):
    return None if names is None else names[:var] + names[var + 1:]


def fm_eliminate(sys: LinearSystem, var: int) -> LinearSystem:
    """Project out coordinate ``var``.

    An equality with a nonzero coefficient on ``var`` is used for direct
    substitution; otherwise every upper bound on ``var`` is paired with every
    lower bound.
    """
    if not 0 <= var < sys.dim:
        raise IndexError(f"variable {var} outside 0..{sys.dim - 1}")
    pivot = next((c for c in sys.constraints if c.rel == EQ and c.a[var]), None)
    out: list[Constraint] = []
    if pivot is not None:
        piv = pivot.a[var]
        for c in sys.constraints:
            if c is pivot:
                continue
            f = c.a[var] / piv
            if f:
                a = tuple(x - f * y for x, y in zip(c.a, pivot.a))
                c = Constraint(a, c.b - f * pivot.b, c.rel)
            out.append(c.drop(var).normalized())
    else:
        pos, neg = [], []
        for c in sys.constraints:
            v = c.a[var]
            if c.rel == EQ:
                # equalities reaching here have a zero coefficient on var
                out.append(c.drop(var).normalized())
            elif v > 0:
                pos.append(c)
            elif v < 0:
                neg.append(c)
            else:
                out.append(c.drop(var).normalized())
        out.extend(_combine(p, n, var) for p in pos for n in neg)
    return LinearSystem(sys.dim - 1, tuple(out), _drop_name(sys.names, var))


INFEASIBLE_MARK = "infeasible"


def _infeasible(dim, names) -> LinearSystem:
    return LinearSystem(dim, (Constraint((Fraction(0),) * dim, Fraction(-1), LE),), names)


def dedupe(sys: LinearSystem) -> LinearSystem:
    """Cheap cleanup: normalize, drop tautologies and duplicates, keep the
    tightest bound among parallel inequalities.  Detects trivially
    infeasible rows."""
    best: dict[tuple, Constraint] = {}
    eqs: dict[tuple, Constraint] = {}
    order: list[tuple] = []
    for c in sys.constraints:
        c = c.normalized()
        if c.trivial:
            if c.holds((0,) * sys.dim):
                continue
            return _infeasible(sys.dim, sys.names)
        if c.rel == EQ:
            prev = eqs.get(c.a)
            if prev is not None:
                if prev.b != c.b:
                    return _infeasible(sys.dim, sys.names)
                continue
            eqs[c.a] = c
            order.append(("eq", c.a))
        else:
            prev = best.get(c.a)
            if prev is None:
                order.append(("le", c.a))
            if prev is None or c.b < prev.b:
                best[c.a] = c
    out = []
    for kind, key in order:
        c = eqs[key] if kind == "eq" else best[key]
        if kind == "le" and key in eqs:
            # an inequality parallel to an equality is decided by the equality
            if eqs[key].b > c.b:
                return _infeasible(sys.dim, sys.names)
            continue
        out.append(c)
    return LinearSystem(sys.dim, tuple(out), sys.names)


def is_infeasible_marker(sys: LinearSystem) -> bool:
    return any(c.trivial and not c.holds((0,) * sys.dim) for c in sys.constraints)


def prune(sys: LinearSystem) -> LinearSystem:
    """Remove duplicate and redundant constraints.

    An inequality is dropped when maximizing its left side over the
    remaining constraints does not exceed its bound.  An infeasible system
    collapses to the single row ``0 <= -1``.
    """
    sys = dedupe(sys)
    if is_infeasible_marker(sys):
        return sys
    if sys.dim == 0:
        return sys
    if not sys.feasible():
        return _infeasible(sys.dim, sys.names)
    kept = list(sys.constraints)
    k = 0
    while k < len(kept):
        c = kept[k]
        if c.rel == EQ:
            k += 1
            continue
        rest = LinearSystem(sys.dim, tuple(kept[:k] + kept[k + 1:]))
        res = rest.maximize(c.a)
        if res.status == lp.OPTIMAL and res.value <= c.b:
            del kept[k]
        else:
            k += 1
    return LinearSystem(sys.dim, tuple(kept), sys.names)


def _elimination_cost(sys: LinearSystem, var: int) -> tuple:
    if any(c.rel == EQ and c.a[var] for c in sys.constraints):
        return (0, 0)
    pos = sum(1 for c in sys.constraints if c.rel == LE and c.a[var] > 0)
    neg = sum(1 for c in sys.constraints if c.rel == LE and c.a[var] < 0)
    return (1, pos * neg - pos - neg)


def project(sys: LinearSystem, keep: Sequence[int]) -> LinearSystem:
    """Project onto the coordinates in ``keep`` (result ordered as ``keep``).

    Variables are eliminated cheapest-first: equality substitutions, then
    the variable minimizing the number of generated rows.  The system is
    pruned after every elimination.
    """
    keep = list(keep)
    if len(set(keep)) != len(keep) or any(not 0 <= k < sys.dim for k in keep):
        raise ValueError(f"bad projection coordinates {keep}")
    labels = list(range(sys.dim))
    cur = prune(sys)
    while len(labels) > len(keep):
        if is_infeasible_marker(cur):
            cur = _infeasible(len(keep), None)
            labels = list(keep)
            break
        candidates = [pos for pos, lab in enumerate(labels) if lab not in keep]
        var = min(candidates, key=lambda pos: (_elimination_cost(cur, pos), pos))
        cur = prune(fm_eliminate(cur, var))
        del labels[var]
    # reorder the surviving coordinates to match ``keep``
    perm = [labels.index(k) for k in keep]
    cons = tuple(Constraint(tuple(c.a[p] for p in perm), c.b, c.rel) for c in cur.constraints)
    names = None if sys.names is None else tuple(sys.names[k] for k in keep)
    return LinearSystem(len(keep), cons, names)


# ---------------------------------------------------------------- 2D regions

Point = tuple[Fraction, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points: Iterable[Point]) -> list[Point]:
    """Counterclockwise convex hull without collinear points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def _signed_area2(vs: Sequence[Point]) -> Fraction:
    return sum(
        (vs[k][0] * vs[(k + 1) % len(vs)][1] - vs[(k + 1) % len(vs)][0] * vs[k][1] for k in range(len(vs))),
        Fraction(0),
    )


@dataclass(frozen=True, eq=False)
class Region2:
    """A bounded convex polygon in the rate plane with both representations.

    ``vertices`` are counterclockwise.  One vertex means a point, two mean
    a segment (``degenerate``); no vertices with ``empty`` set means the
    system is infeasible.
    """

    system: LinearSystem
    vertices: tuple[Point, ...]
    empty: bool = False
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.system.dim != 2:
            raise ValueError("Region2 needs a 2-dimensional system")
        if self.empty != (len(self.vertices) == 0):
            raise ValueError("empty flag disagrees with vertex list")
        for v in self.vertices:
            if not self.system.contains(v):
                raise ValueError(f"vertex {v} violates the halfspaces")
            active = sum(1 for c in self.system.constraints if c.tight(v))
            if active < 2:
                raise ValueError(f"vertex {v} is not at a constraint intersection")
        if len(self.vertices) >= 3 and _signed_area2(self.vertices) <= 0:
            raise ValueError("vertices are not counterclockwise")

    @property
    def degenerate(self) -> bool:
        return 1 <= len(self.vertices) <= 2

    def contains_point(self, p: Sequence) -> bool:
        if self.empty:
            return False
        return self.system.contains(p)

    def contains(self, other: "Region2") -> bool:
        """True when ``other`` is a subset of ``self``."""
        if other.empty:
            return True
        if self.empty:
            return False
        return all(self.system.contains(v) for v in other.vertices)

    def equals(self, other: "Region2") -> bool:
        return self.contains(other) and other.contains(self)

    def strictly_contains(self, other: "Region2") -> bool:
        return self.contains(other) and not other.contains(self)

    def intersect(self, other: "Region2") -> "Region2":
        return intersect(self, other)

    @cached_property
    def facets(self) -> tuple[Constraint, ...]:
        """Irredundant halfspaces, read off the vertex list."""
        if self.empty:
            return self.system.constraints[:1]
        seen = {}
        need = 2 if len(self.vertices) >= 3 else 1
        for c in self.system.constraints:
            for cc in ([c] if c.rel == LE else [Constraint(c.a, c.b, LE), Constraint(tuple(-v for v in c.a), -c.b, LE)]):
                n = cc.normalized()
                if n.trivial:
                    continue
                if sum(1 for v in self.vertices if n.tight(v)) >= need:
                    seen.setdefault((n.a, n.b), n)
        return tuple(seen.values())

    def area(self) -> Fraction:
        if len(self.vertices) < 3:
            return Fraction(0)
        return _signed_area2(self.vertices) / 2

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "empty": self.empty,
            "degenerate": self.degenerate,
            "halfspaces": [
                {"a": [format_rational(v) for v in c.a], "b": format_rational(c.b)} for c in self.facets
            ],
            "vertices": [[format_rational(x), format_rational(y)] for x, y in self.vertices],
        }

    def __eq__(self, other):
        if not isinstance(other, Region2):
            return NotImplemented
        return self.equals(other)

    __hash__ = None


def vertices2(sys: LinearSystem, label: str = "") -> Region2:
    """Enumerate the vertices of a bounded 2D system.

    Every pair of non-parallel constraint lines is intersected, infeasible
    points are discarded and the survivors are ordered counterclockwise.
    Raises ``UnboundedError`` if the feasible set is unbounded.
    """
    if sys.dim != 2:
        raise ValueError("vertices2 works on 2-dimensional systems")
    clean = dedupe(sys)
    if is_infeasible_marker(clean) or not clean.feasible():
        return Region2(_infeasible(2, sys.names), (), True, label)
    for obj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        if clean.maximize(obj).status == lp.UNBOUNDED:
            raise UnboundedError("system is unbounded in the rate plane")
    lines = [c for c in clean.constraints if not c.trivial]
    pts = set()
    for c1, c2 in combinations(lines, 2):
        (a1, b1), (a2, b2) = c1.a, c2.a
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (c1.b * b2 - c2.b * b1) / det
        y = (a1 * c2.b - a2 * c1.b) / det
        if clean.contains((x, y)):
            pts.add((x, y))
    verts = tuple(_hull(pts))
    return Region2(clean, verts, False, label)


def intersect(a: Region2, b: Region2, label: str = "") -> Region2:
    if a.empty or b.empty:
        return Region2(_infeasible(2, a.system.names), (), True, label)
    return vertices2(a.system.conjoin(b.system), label)


def box(lo: Sequence, hi: Sequence, label: str = "") -> Region2:
    """Axis-aligned rectangle ``[lo0, hi0] x [lo1, hi1]``."""
    lo = [as_rational(v) for v in lo]
    hi = [as_rational(v) for v in hi]
    b = LinearSystem.build(2)
    for k in range(2):
        b.ge({k: 1}, lo[k]).le({k: 1}, hi[k])
    return vertices2(b.done(), label)

"""Exact two-phase simplex with Bland's anti-cycling rule.

All pivoting is done on ``gmpy2.mpq`` values; inputs and outputs are
``fractions.Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = mpq(0)


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _q(v) -> mpq:
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


def _frac(v: mpq) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: bool = False,
) -> LPResult:
    """Maximize ``c @ x`` subject to ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.

    Variables are free unless ``nonneg`` is set.  Returns an ``LPResult``
    whose status is one of ``"optimal"``, ``"infeasible"``, ``"unbounded"``.
    """
    n = len(c)
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise ValueError("constraint matrix and bound lengths differ")
    for row in list(A_ub) + list(A_eq):
        if len(row) != n:
            raise ValueError("constraint row length does not match objective")

    split = not nonneg
    n_struct = 2 * n if split else n
    m_ub = len(A_ub)

    def expand(row):
        qs = [_q(v) for v in row]
        return qs + [-v for v in qs] if split else qs

    rows: list[list[mpq]] = []
    rhs: list[mpq] = []
    slack_sign: list[int] = []
    for k, (row, b) in enumerate(zip(A_ub, b_ub)):
        r = expand(row) + [_ZERO] * m_ub
        r[n_struct + k] = mpq(1)
        rows.append(r)
        rhs.append(_q(b))
        slack_sign.append(n_struct + k)
    for row, b in zip(A_eq, b_eq):
        rows.append(expand(row) + [_ZERO] * m_ub)
        rhs.append(_q(b))
        slack_sign.append(-1)

    m = len(rows)
    basis: list[int] = []
    art_rows = []
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            basis.append(-1)
            art_rows.append(i)
        elif slack_sign[i] >= 0:
            basis.append(slack_sign[i])
        else:
            basis.append(-1)
            art_rows.append(i)

    n_base = n_struct + m_ub
    n_art = len(art_rows)
    width = n_base + n_art
    for i in range(m):
        rows[i].extend([_ZERO] * n_art)
    for a, i in enumerate(art_rows):
        rows[i][n_base + a] = mpq(1)
        basis[i] = n_base + a
    tab = [rows[i] + [rhs[i]] for i in range(m)]

    if n_art:
        # maximize -sum(artificials)
        z = [_ZERO] * (width + 1)
        for i in art_rows:
            row = tab[i]
            for j in range(width + 1):
                if j < n_base or j == width:
                    z[j] -= row[j]
        status = _iterate(tab, basis, z, width, width)
        if z[width] < 0:
            return LPResult(INFEASIBLE)
        # drive zero-level artificials out of the basis
        for i in range(len(tab) - 1, -1, -1):
            if basis[i] >= n_base:
                piv = next((j for j in range(n_base) if tab[i][j] != 0), None)
                if piv is None:
                    del tab[i]
                    del basis[i]
                else:
                    _pivot(tab, basis, None, i, piv)
        for row in tab:
            del row[n_base:width]
        width = n_base

    cost = expand(c) + [_ZERO] * m_ub
    z = [-v for v in cost] + [_ZERO]
    for i, bi in enumerate(basis):
        cb = cost[bi]
        if cb:
            row = tab[i]
            for j in range(width + 1):
                if row[j]:
                    z[j] += cb * row[j]
    status = _iterate(tab, basis, z, width, width)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)

    y = [_ZERO] * width
    for i, bi in enumerate(basis):
        y[bi] = tab[i][width]
    if split:
        x = tuple(_frac(y[j] - y[n + j]) for j in range(n))
    else:
        x = tuple(_frac(y[j]) for j in range(n))
    return LPResult(OPTIMAL, _frac(z[width]), x)


def _pivot(tab, basis, z, r, col):
    prow = tab[r]
    pv = prow[col]
    if pv != 1:
        inv = 1 / pv
        prow = [v * inv for v in prow]
        tab[r] = prow
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(tab):
        if i != r:
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
    if z is not None:
        f = z[col]
        if f:
            for j in nz:
                z[j] -= f * prow[j]
    basis[r] = col


def _iterate(tab, basis, z, n_cols, rhs_col):
    while True:
        col = next((j for j in range(n_cols) if z[j] < 0), None)
        if col is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(tab):
            a = row[col]
            if a > 0:
                ratio = row[rhs_col] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(tab, basis, z, best[1], col)


def is_feasible(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n: int | None = None, nonneg: bool = False) -> bool:
    if n is None:
        n = len((list(A_ub) + list(A_eq))[0])
    return linprog([0] * n, A_ub, b_ub, A_eq, b_eq, nonneg=nonneg).feasible

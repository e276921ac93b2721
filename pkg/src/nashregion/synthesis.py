"""Symbolic decodability analysis of DSL schemes.

Every source bit becomes one GF(2) variable (a bit in a Python int) and the
channel is run on these linear forms.  A fresh bit is decodable exactly when
its variable lies in the span of the observations the decoder may use;
``Span.solve`` then yields the decoder row.  Because the schemes are linear,
a bit outside that span is uniform given the observations, so no decoder at
all could recover it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .channel import ChannelParams, other, run_channel
from .gf2 import Span
from .schemes import Decoder, Scheme


@dataclass(frozen=True)
class Window:
    back: int = 2     # earlier blocks visible to the decoder
    ahead: int = 2    # later blocks the decoder may wait for


class _Vars:
    def __init__(self):
        self.count = 0

    def take(self, n: int) -> list[int]:
        out = [1 << (self.count + k) for k in range(n)]
        self.count += n
        return out


def analyze(p: ChannelParams, s: Scheme, fixed: Scheme, window: Window = Window()):
    """Return ``(decoder, undecodable)`` for user ``s.user`` against ``fixed``.

    The decoder is solved jointly over every relative phase of the two
    patterns, so one matrix serves all steady-state blocks.  ``decoder`` is
    None when some fresh bit cannot be recovered; ``undecodable`` lists the
    fresh positions that failed.
    """
    i = s.user
    if fixed.user != other(i):
        raise ValueError("fixed scheme must belong to the other user")
    P, F, K = s.pattern_length, s.fresh_per_block, s.random_per_block
    phases = math.lcm(P, fixed.pattern_length) // P
    t0 = window.back + 2
    Ti = t0 + phases + window.ahead + 1
    si = replace(s, blocks=Ti, flush=window.ahead + 1, decoder=Decoder((), ()))
    need = si.uses
    Tj = -(-need // fixed.pattern_length) + 2
    sj = replace(fixed, blocks=Tj, flush=max(fixed.flush_blocks, 1))

    v = _Vars()
    wi, oi = v.take(si.message_bits), v.take(si.random_bits)
    wj, oj = v.take(sj.message_bits), v.take(sj.random_bits)
    enc_i = lambda n, fb: si.encode(n, wi, oi, fb)  # noqa: E731
    enc_j = lambda n, fb: sj.encode(n, wj, oj, fb)  # noqa: E731
    e1, e2 = (enc_i, enc_j) if i == 1 else (enc_j, enc_i)
    n1, n2 = (si.uses, sj.uses) if i == 1 else (sj.uses, si.uses)
    _, y, _ = run_channel(p, e1, e2, n1, n2)
    y = y[i - 1]
    V = v.count

    names: list[str] = []
    for off in range(-window.back, window.ahead + 1):
        for u in range(P):
            for lvl in range(1, p.q + 1):
                names.append(f"y{off:+d}.{u}.{lvl}")
    for off in range(-window.back, 0):
        names += [f"w{off:+d}.{k}" for k in range(F)]
    for off in range(-window.back, window.ahead + 1):
        names += [f"r{off:+d}.{k}" for k in range(K)]

    def column_form(t: int, name: str) -> int:
        kind, rest = name[0], name[1:].split(".")
        b = t + int(rest[0])
        if kind == "y":
            return y[(b - 1) * P + int(rest[1])][int(rest[2]) - 1]
        if kind == "w":
            return wi[(b - 1) * F + int(rest[1])]
        return oi[(b - 1) * K + int(rest[1])] if b <= Ti else 0

    forms = []
    for name in names:
        f = 0
        for h in range(phases):
            f |= column_form(t0 + h, name) << (h * V)
        forms.append(f)
    span = Span(forms)
    rows, bad = [], []
    for k in range(F):
        target = 0
        for h in range(phases):
            target |= wi[(t0 + h - 1) * F + k] << (h * V)
        sol = span.solve(target)
        if sol is None:
            bad.append(k)
        rows.append(sol)
    if bad:
        return None, bad
    used = 0
    for r in rows:
        used |= r
    keep = [c for c in range(len(names)) if (used >> c) & 1]
    remap = {c: n for n, c in enumerate(keep)}
    packed = []
    for r in rows:
        m = 0
        for c in keep:
            if (r >> c) & 1:
                m |= 1 << remap[c]
        packed.append(m)
    return Decoder(tuple(names[c] for c in keep), tuple(packed)), []


def synthesize(p: ChannelParams, s: Scheme, fixed: Scheme, window: Window = Window()) -> Scheme | None:
    """Return ``s`` with a synthesized decoder, or None if some bit is lost."""
    dec, _ = analyze(p, s, fixed, window)
    if dec is None:
        return None
    return replace(s, decoder=dec, flush=None)


def _rank(forms) -> int:
    return Span(forms).rank


def visible_aggregates(p: ChannelParams, s: Scheme, partner: Scheme | None = None,
                       horizon: int = 4) -> tuple[Fraction, Fraction]:
    """Long-run rates of new fresh and new common-random bits that the
    scheme's transmitter puts on the levels the other receiver sees.

    Input level ``l`` of transmitter j reaches receiver i iff ``l <= n_ij``.
    Content is measured on those levels restricted to j's own variables, so a
    relayed copy of the other user's bit does not count.  The rate is the
    rank gained by the last of ``horizon`` consecutive steady-state periods.
    """
    j = s.user
    i = other(j)
    if partner is None:
        from .schemes import zero_scheme
        partner = zero_scheme(p, i)
    P = s.pattern_length
    period = math.lcm(P, partner.pattern_length) // P
    t0 = 3
    T = t0 + period * horizon + 1
    sj = replace(s, blocks=T, flush=1)
    si = replace(partner, blocks=-(-sj.uses // partner.pattern_length) + 1, flush=1)
    v = _Vars()
    wj, oj = v.take(sj.message_bits), v.take(sj.random_bits)
    wi, oi = v.take(si.message_bits), v.take(si.random_bits)
    fresh_mask = sum(wj)
    rand_mask = sum(oj)
    enc_j = lambda n, fb: sj.encode(n, wj, oj, fb)  # noqa: E731
    enc_i = lambda n, fb: si.encode(n, wi, oi, fb)  # noqa: E731
    e1, e2 = (enc_j, enc_i) if j == 1 else (enc_i, enc_j)
    n1, n2 = (sj.uses, si.uses) if j == 1 else (si.uses, sj.uses)
    x, _, _ = run_channel(p, e1, e2, n1, n2)
    x = x[j - 1]
    visible = p.cross(i)

    def forms(periods: int, mask: int):
        out = []
        for n in range((t0 - 1) * P, (t0 - 1 + periods * period) * P):
            out += [x[n][lvl] & mask for lvl in range(visible)]
        return out

    def gain(mask: int) -> int:
        return _rank(forms(horizon, mask)) - _rank(forms(horizon - 1, mask))

    rc = gain(fresh_mask)
    rr = gain(fresh_mask | rand_mask) - rc
    per = period * P
    return Fraction(rc, per), Fraction(rr, per)

"""Two-user linear deterministic interference channel with noisy output feedback.

Receiver ``i`` observes ``S**(q - n_ii) X_i + S**(q - n_ij) X_j`` and
transmitter ``i`` gets back ``S**((max(n_ii, n_ij) - fb_ii)^+)`` of that
output one channel use later.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .gf2 import BitVector, DimensionError, shift_down
from .polytope import format_rational


def pos(x: int) -> int:
    return x if x > 0 else 0


def other(i: int) -> int:
    if i not in (1, 2):
        raise ValueError(f"user index must be 1 or 2, got {i}")
    return 3 - i


@dataclass(frozen=True)
class ChannelParams:
    """Bit-pipe counts of one channel instance.

    ``n12`` is the number of levels from transmitter 2 that reach receiver 1
    and ``n21`` the number from transmitter 1 reaching receiver 2.
    """

    n11: int
    n22: int
    n12: int
    n21: int
    fb11: int = 0
    fb22: int = 0

    def __post_init__(self):
        for name in ("n11", "n22", "n12", "n21", "fb11", "fb22"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")
            object.__setattr__(self, name, int(v))

    @classmethod
    def of(cls, values: Sequence[int]) -> "ChannelParams":
        return cls(*values)

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.n11, self.n22, self.n12, self.n21, self.fb11, self.fb22)

    @property
    def q(self) -> int:
        return derive_q(self)

    def direct(self, i: int) -> int:
        return self.n11 if other(i) == 2 else self.n22

    def cross(self, i: int) -> int:
        """Levels of transmitter j's signal reaching receiver i (``n_ij``)."""
        return self.n12 if other(i) == 2 else self.n21

    def feedback(self, i: int) -> int:
        return self.fb11 if other(i) == 2 else self.fb22

    def fb_shift(self, i: int) -> int:
        return pos(max(self.direct(i), self.cross(i)) - self.feedback(i))

    def floor_rate(self, i: int) -> int:
        """Rate user i gets on its interference-free top levels."""
        return pos(self.direct(i) - self.cross(i))

    def observable_feedback_levels(self, i: int) -> range:
        """Levels of the feedback vector that can be nonzero.

        Output level ``l`` is silent unless ``l > q - max(n_ii, n_ij)``, and
        the feedback shift pushes it down by ``fb_shift(i)``.
        """
        live = min(max(self.direct(i), self.cross(i)), self.feedback(i))
        return range(self.q - live + 1, self.q + 1)

    def without_feedback(self) -> "ChannelParams":
        return ChannelParams(self.n11, self.n22, self.n12, self.n21, 0, 0)

    def with_perfect_feedback(self) -> "ChannelParams":
        return ChannelParams(
            self.n11, self.n22, self.n12, self.n21,
            max(self.n11, self.n12), max(self.n22, self.n21),
        )

    def swapped(self) -> "ChannelParams":
        return ChannelParams(self.n22, self.n11, self.n21, self.n12, self.fb22, self.fb11)

    def to_json(self) -> dict:
        return dict(zip(("n11", "n22", "n12", "n21", "fb11", "fb22"), self.as_tuple()))

    def __str__(self):
        return "(" + ",".join(map(str, self.as_tuple())) + ")"


def derive_q(p: ChannelParams) -> int:
    return max(p.n11, p.n22, p.n12, p.n21)


def forward_levels(p: ChannelParams, x1: Sequence, x2: Sequence, i: int, zero=0) -> tuple:
    """Receiver-i output on raw level sequences (bits or linear forms)."""
    q = p.q
    if len(x1) != q or len(x2) != q:
        raise DimensionError(f"inputs must have {q} levels")
    xi, xj = (x1, x2) if i == 1 else (x2, x1)
    own = shift_down(xi, q - p.direct(i), zero)
    cross = shift_down(xj, q - p.cross(i), zero)
    return tuple(a ^ b for a, b in zip(own, cross))


def feedback_levels(p: ChannelParams, y: Sequence, i: int, zero=0) -> tuple:
    if len(y) != p.q:
        raise DimensionError(f"output must have {p.q} levels")
    return shift_down(y, p.fb_shift(i), zero)


def forward_output(p: ChannelParams, x1: BitVector, x2: BitVector, i: int) -> BitVector:
    return BitVector(forward_levels(p, x1.bits, x2.bits, i))


def feedback_output(p: ChannelParams, y_fwd: BitVector, i: int) -> BitVector:
    """Feedback seen by transmitter i; the caller applies the one-use delay."""
    return BitVector(feedback_levels(p, y_fwd.bits, i))


def forward_output_packed(p: ChannelParams, x1, x2, i: int):
    """Vectorized receiver-i output on q-bit integers (level 1 = MSB)."""
    q = p.q
    xi, xj = (x1, x2) if i == 1 else (x2, x1)
    return (np.asarray(xi) >> (q - p.direct(i))) ^ (np.asarray(xj) >> (q - p.cross(i)))


def bit_error_probability(sent: Sequence[int], decoded: Sequence[int]) -> Fraction:
    if len(sent) != len(decoded):
        raise ValueError(f"sent {len(sent)} bits but decoded {len(decoded)}")
    if len(sent) == 0:
        raise ValueError("no message bits")
    return Fraction(sum(1 for a, b in zip(sent, decoded) if a != b), len(sent))


# ------------------------------------------------------------------ simulation

Encoder = Callable[[int, Sequence[tuple]], tuple]


def run_channel(p: ChannelParams, enc1: Encoder, enc2: Encoder, n1: int, n2: int, zero=0):
    """Drive both encoders through ``max(n1, n2)`` channel uses.

    ``enc_i(n, feedback)`` gets the 1-based use index and the feedback
    vectors of uses ``1..n-1``.  Inputs past a user's block-length are
    forced to zero.  Returns ``(x, y, fb)``, each a pair of per-use lists.
    """
    q = p.q
    zeros = (zero,) * q
    x = ([], [])
    y = ([], [])
    fb = ([], [])
    for n in range(1, max(n1, n2) + 1):
        xs = []
        for k, (enc, nk) in enumerate(((enc1, n1), (enc2, n2))):
            if n > nk:
                xs.append(zeros)
                continue
            v = tuple(enc(n, fb[k]))
            if len(v) != q:
                raise DimensionError(f"encoder {k + 1} produced {len(v)} levels at use {n}, expected {q}")
            xs.append(v)
        for k in range(2):
            x[k].append(xs[k])
            out = forward_levels(p, xs[0], xs[1], k + 1, zero)
            y[k].append(out)
            fb[k].append(feedback_levels(p, out, k + 1, zero))
    return x, y, fb


@dataclass
class SimTrace:
    params: ChannelParams
    block_lengths: tuple[int, int]
    inputs: tuple[list[BitVector], list[BitVector]]
    outputs: tuple[list[BitVector], list[BitVector]]
    feedback: tuple[list[BitVector], list[BitVector]]
    messages: tuple[tuple[int, ...], tuple[int, ...]]
    decoded: tuple[tuple[int, ...], tuple[int, ...]]
    randomness: tuple[tuple[int, ...], tuple[int, ...]] = field(default=((), ()))

    @property
    def length(self) -> int:
        return len(self.inputs[0])

    def error_probability(self, i: int) -> Fraction:
        sent, got = self.messages[i - 1], self.decoded[i - 1]
        if not sent:
            return Fraction(0)
        return bit_error_probability(sent, got)

    def swapped(self) -> "SimTrace":
        r = lambda pair: (pair[1], pair[0])  # noqa: E731
        return SimTrace(self.params.swapped(), r(self.block_lengths), r(self.inputs), r(self.outputs),
                        r(self.feedback), r(self.messages), r(self.decoded), r(self.randomness))

    def to_json(self) -> dict:
        bits = lambda b: "".join(map(str, b))  # noqa: E731
        uses = []
        for n in range(self.length):
            uses.append({
                "n": n + 1,
                "x1": self.inputs[0][n].to_hex(), "x2": self.inputs[1][n].to_hex(),
                "y1": self.outputs[0][n].to_hex(), "y2": self.outputs[1][n].to_hex(),
                "fb1": self.feedback[0][n].to_hex(), "fb2": self.feedback[1][n].to_hex(),
            })
        users = []
        for k in range(2):
            users.append({
                "user": k + 1,
                "block_length": self.block_lengths[k],
                "message": bits(self.messages[k]),
                "decoded": bits(self.decoded[k]),
                "randomness": bits(self.randomness[k]),
                "bit_error_probability": format_rational(self.error_probability(k + 1)),
            })
        return {"params": self.params.to_json(), "q": self.params.q, "uses": uses, "users": users}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def simulate(p: ChannelParams, s1, s2, w1: Sequence[int], w2: Sequence[int],
             omega1: Sequence[int] = (), omega2: Sequence[int] = ()) -> SimTrace:
    """Run one transmission of both schemes and decode at both receivers.

    A scheme provides ``uses`` (its block-length), ``message_bits``,
    ``random_bits``, ``encode(n, w, omega, feedback)`` and
    ``decode(outputs, omega)``.
    """
    if p.q < 1:
        raise ValueError("all-zero channel: nothing to simulate")
    schemes = (s1, s2)
    ws = (tuple(w1), tuple(w2))
    omegas = (tuple(omega1), tuple(omega2))
    for k, s in enumerate(schemes):
        if getattr(s, "q", p.q) != p.q:
            raise DimensionError(f"scheme {k + 1} is built for q={s.q}, channel has q={p.q}")
        if len(ws[k]) != s.message_bits:
            raise ValueError(f"user {k + 1} needs {s.message_bits} message bits, got {len(ws[k])}")
        if len(omegas[k]) != s.random_bits:
            raise ValueError(f"user {k + 1} needs {s.random_bits} random bits, got {len(omegas[k])}")

    encs = [
        (lambda n, fb, s=s, w=w, o=o: s.encode(n, w, o, fb))
        for s, w, o in zip(schemes, ws, omegas)
    ]
    n1, n2 = s1.uses, s2.uses
    x, y, fb = run_channel(p, encs[0], encs[1], n1, n2)
    decoded = tuple(tuple(s.decode(y[k], omegas[k])) for k, s in enumerate(schemes))
    vec = lambda seq: [BitVector(v) for v in seq]  # noqa: E731
    return SimTrace(
        p, (n1, n2),
        (vec(x[0]), vec(x[1])), (vec(y[0]), vec(y[1])), (vec(fb[0]), vec(fb[1])),
        ws, decoded, omegas,
    )

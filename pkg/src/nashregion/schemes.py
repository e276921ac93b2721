"""Deterministic bit-allocation schemes and their simulated verification.

A scheme fixes, for every use of a ``pattern_length``-use block and every
input level, an XOR of terms:

``F<k>[@b]``
    fresh message bit ``k`` of the block ``b`` blocks back (default 0)
``C<k>[@b]``
    common-random bit ``k`` (shared with the own receiver only)
``R<l>@<lag>``
    feedback level ``l`` observed ``lag`` channel uses earlier

``0`` is the empty XOR.  The decoder is an explicit GF(2) matrix whose rows
produce the fresh bits of the current block from named columns:

``y<off>.<u>.<l>``   receiver output, block ``t+off``, use ``u``, level ``l``
``w<off>.<k>``       fresh bit ``k`` already decoded for block ``t+off`` (off < 0)
``r<off>.<k>``       own common-random bit ``k`` of block ``t+off``

Every encoder and decoder is linear over GF(2) and is evaluated generically:
the same code runs on concrete bits, on numpy lanes holding many inputs at
once, and on int bitmasks standing for linear forms.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .channel import ChannelParams, SimTrace, run_channel, simulate
from .polytope import as_rational, format_rational

EXHAUSTIVE_LIMIT = 20
MIN_BLOCKS = 3


class InvalidSchemeError(ValueError):
    def __init__(self, problems: Sequence[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class Fresh:
    pos: int
    back: int = 0

    def __str__(self):
        return f"F{self.pos}" + (f"@{self.back}" if self.back else "")


@dataclass(frozen=True)
class CommonRandom:
    pos: int
    back: int = 0

    def __str__(self):
        return f"C{self.pos}" + (f"@{self.back}" if self.back else "")


@dataclass(frozen=True)
class Relay:
    level: int
    lag: int

    def __str__(self):
        return f"R{self.level}@{self.lag}"


Term = Fresh | CommonRandom | Relay
_TERM = re.compile(r"^([FCR])(\d+)(?:@(\d+))?$")


def parse_assignment(text: str) -> tuple[Term, ...]:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return ()
    terms = []
    for tok in text.split("+"):
        m = _TERM.match(tok)
        if not m:
            raise ValueError(f"bad level assignment {tok!r}")
        kind, a, b = m.group(1), int(m.group(2)), m.group(3)
        if kind == "F":
            terms.append(Fresh(a, int(b or 0)))
        elif kind == "C":
            terms.append(CommonRandom(a, int(b or 0)))
        else:
            if b is None:
                raise ValueError(f"relay {tok!r} needs an explicit lag")
            terms.append(Relay(a, int(b)))
    return tuple(terms)


def format_assignment(terms: Sequence[Term]) -> str:
    return "+".join(map(str, terms)) if terms else "0"


_COLUMN = re.compile(r"^([ywr])([+-]\d+)\.(\d+)(?:\.(\d+))?$")


@dataclass(frozen=True)
class Column:
    kind: str
    offset: int
    index: int
    level: int = 0

    @classmethod
    def parse(cls, name: str) -> "Column":
        m = _COLUMN.match(name)
        if not m:
            raise ValueError(f"bad decoder column {name!r}")
        kind, off, a, b = m.group(1), int(m.group(2)), int(m.group(3)), m.group(4)
        if (kind == "y") != (b is not None):
            raise ValueError(f"bad decoder column {name!r}")
        return cls(kind, off, a, int(b) if b is not None else 0)

    def __str__(self):
        base = f"{self.kind}{self.offset:+d}.{self.index}"
        return base + (f".{self.level}" if self.kind == "y" else "")


@dataclass(frozen=True)
class Decoder:
    columns: tuple[str, ...]
    rows: tuple[int, ...]

    @classmethod
    def from_terms(cls, rows: Sequence[Sequence[str]]) -> "Decoder":
        """Build from one list of column names per output bit."""
        cols: list[str] = []
        for r in rows:
            for c in r:
                c = str(Column.parse(c))
                if c not in cols:
                    cols.append(c)
        index = {c: k for k, c in enumerate(cols)}
        masks = []
        for r in rows:
            m = 0
            for c in r:
                m ^= 1 << index[str(Column.parse(c))]
            masks.append(m)
        return cls(tuple(cols), tuple(masks))

    @property
    def parsed(self) -> tuple[Column, ...]:
        return tuple(Column.parse(c) for c in self.columns)

    def lookahead(self) -> int:
        return max((c.offset for c in self.parsed if c.kind == "y"), default=0)

    def to_json(self) -> dict:
        n = len(self.columns)
        return {
            "columns": list(self.columns),
            "rows": ["".join("1" if (m >> k) & 1 else "0" for k in range(n)) for m in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Decoder":
        cols = tuple(data["columns"])
        rows = []
        for r in data["rows"]:
            if isinstance(r, str):
                if len(r) != len(cols) or set(r) - {"0", "1"}:
                    raise ValueError(f"decoder row {r!r} does not match {len(cols)} columns")
                rows.append(sum(1 << k for k, ch in enumerate(r) if ch == "1"))
            else:
                if len(r) != len(cols):
                    raise ValueError("decoder row length does not match columns")
                rows.append(sum(1 << k for k, b in enumerate(r) if b))
        return cls(cols, tuple(rows))


@dataclass(frozen=True)
class Scheme:
    """One user's transmit-receive configuration.

    ``levels[u][l-1]`` is the term tuple XORed onto input level ``l`` at use
    ``u`` of each block.  The scheme runs ``blocks`` message blocks followed
    by ``flush`` blocks that carry no new bits, so a decoder looking ahead
    still sees the last message block complete.
    """

    user: int
    q: int
    pattern_length: int
    blocks: int
    levels: tuple[tuple[tuple[Term, ...], ...], ...]
    decoder: Decoder
    fresh_rate: Fraction
    random_rate: Fraction
    flush: int | None = None
    name: str = field(default="", compare=False)

    # -- derived sizes

    @property
    def fresh_per_block(self) -> int:
        return len({t.pos for use in self.levels for lvl in use for t in lvl
                    if isinstance(t, Fresh) and t.back == 0})

    @property
    def random_per_block(self) -> int:
        return len({t.pos for use in self.levels for lvl in use for t in lvl
                    if isinstance(t, CommonRandom) and t.back == 0})

    @property
    def flush_blocks(self) -> int:
        return self.decoder.lookahead() if self.flush is None else self.flush

    @property
    def uses(self) -> int:
        return (self.blocks + self.flush_blocks) * self.pattern_length

    @property
    def message_bits(self) -> int:
        return self.fresh_per_block * self.blocks

    @property
    def random_bits(self) -> int:
        return self.random_per_block * self.blocks

    # -- encoder / decoder, generic over entry type

    def encode(self, n: int, w: Sequence, omega: Sequence, feedback: Sequence[Sequence]) -> tuple:
        P = self.pattern_length
        t, u = divmod(n - 1, P)
        t += 1
        F, K, T = self.fresh_per_block, self.random_per_block, self.blocks
        out = []
        for lvl in self.levels[u]:
            acc = 0
            for term in lvl:
                if isinstance(term, Fresh):
                    b = t - term.back
                    if 1 <= b <= T:
                        acc = acc ^ w[(b - 1) * F + term.pos]
                elif isinstance(term, CommonRandom):
                    b = t - term.back
                    if 1 <= b <= T:
                        acc = acc ^ omega[(b - 1) * K + term.pos]
                else:
                    m = n - term.lag
                    if m >= 1:
                        acc = acc ^ feedback[m - 1][term.level - 1]
            out.append(acc)
        return tuple(out)

    def decode(self, outputs: Sequence[Sequence], omega: Sequence) -> list:
        P, F, K, T = self.pattern_length, self.fresh_per_block, self.random_per_block, self.blocks
        cols = self.decoder.parsed
        decoded: list = []
        for t in range(1, T + 1):
            vals = []
            for c in cols:
                b = t + c.offset
                v = 0
                if c.kind == "y":
                    n = (b - 1) * P + c.index
                    if b >= 1 and n < len(outputs):
                        v = outputs[n][c.level - 1]
                elif c.kind == "w":
                    if 1 <= b < t:
                        v = decoded[(b - 1) * F + c.index]
                elif 1 <= b <= T:
                    v = omega[(b - 1) * K + c.index]
                vals.append(v)
            for row in self.decoder.rows:
                acc = 0
                k = 0
                while row:
                    if row & 1:
                        acc = acc ^ vals[k]
                    row >>= 1
                    k += 1
                decoded.append(acc)
        return decoded

    # -- serialization

    def to_json(self) -> dict:
        return {
            "user": self.user,
            "pattern_length": self.pattern_length,
            "blocks": self.blocks,
            "levels": [[format_assignment(lvl) for lvl in use] for use in self.levels],
            "decoder": self.decoder.to_json(),
            "fresh_rate": format_rational(self.fresh_rate),
            "random_rate": format_rational(self.random_rate),
            **({"flush": self.flush} if self.flush is not None else {}),
            **({"name": self.name} if self.name else {}),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "Scheme":
        levels = tuple(tuple(parse_assignment(a) for a in use) for use in data["levels"])
        if not levels:
            raise ValueError("scheme needs at least one use per block")
        q = len(levels[0])
        return cls(
            user=int(data["user"]),
            q=q,
            pattern_length=int(data["pattern_length"]),
            blocks=int(data["blocks"]),
            levels=levels,
            decoder=Decoder.from_json(data["decoder"]),
            fresh_rate=as_rational(data["fresh_rate"]),
            random_rate=as_rational(data["random_rate"]),
            flush=data.get("flush"),
            name=data.get("name", ""),
        )

    @classmethod
    def load(cls, path: str | Path) -> "Scheme":
        return cls.from_json(json.loads(Path(path).read_text()))

    def with_blocks(self, blocks: int, flush: int | None = None) -> "Scheme":
        return replace(self, blocks=blocks, flush=flush if flush is not None else self.flush)


def make_scheme(user: int, levels: Sequence[Sequence[str]], decoder_rows: Sequence[Sequence[str]],
                blocks: int = MIN_BLOCKS, name: str = "") -> Scheme:
    """Assemble a scheme from assignment strings, deriving the declared rates."""
    lv = tuple(tuple(parse_assignment(a) for a in use) for use in levels)
    P = len(lv)
    s = Scheme(user, len(lv[0]) if lv else 0, P, blocks, lv, Decoder.from_terms(decoder_rows),
               Fraction(0), Fraction(0), name=name)
    return replace(s, fresh_rate=Fraction(s.fresh_per_block, P), random_rate=Fraction(s.random_per_block, P))


def achieved_rate(s: Scheme) -> Fraction:
    return s.fresh_rate


def zero_scheme(p: ChannelParams, i: int, blocks: int = MIN_BLOCKS) -> Scheme:
    return make_scheme(i, [["0"] * p.q], [], blocks, name=f"zero-{i}")


def floor_scheme(p: ChannelParams, i: int, blocks: int = MIN_BLOCKS) -> Scheme:
    """Fresh bits on the top ``(n_ii - n_ij)^+`` input levels, zeros below.

    Those levels land above the interference at receiver ``i`` no matter
    what the other transmitter sends, so the decoder reads them directly.
    """
    q = p.q
    f = p.floor_rate(i)
    lift = q - p.direct(i)
    levels = [[f"F{k}" for k in range(f)] + ["0"] * (q - f)]
    rows = [[f"y+0.0.{k + 1 + lift}"] for k in range(f)]
    return make_scheme(i, levels, rows, blocks, name=f"floor-{i}")


def validate_scheme(p: ChannelParams, s: Scheme) -> list[str]:
    """Return every structural problem found (empty list means valid)."""
    out: list[str] = []
    if s.user not in (1, 2):
        out.append(f"user must be 1 or 2, got {s.user}")
        return out
    q = p.q
    if s.q != q:
        out.append(f"scheme has {s.q} levels but the channel has q={q}")
    if s.pattern_length < 1 or len(s.levels) != s.pattern_length:
        out.append(f"pattern_length {s.pattern_length} but {len(s.levels)} uses listed")
    if s.blocks < 1:
        out.append("blocks must be positive")
    if s.flush is not None and s.flush < s.decoder.lookahead():
        out.append(f"flush {s.flush} shorter than decoder lookahead {s.decoder.lookahead()}")
    observable = set(p.observable_feedback_levels(s.user))
    fresh_seen: dict[int, tuple] = {}
    rand_seen: dict[int, tuple] = {}
    for u, use in enumerate(s.levels):
        if len(use) != q:
            out.append(f"use {u} assigns {len(use)} levels, expected {q}")
        for lvl_idx, lvl in enumerate(use, start=1):
            if lvl_idx > q:
                out.append(f"use {u} references level {lvl_idx} beyond q={q}")
            if len(set(lvl)) != len(lvl):
                out.append(f"use {u} level {lvl_idx} repeats a term")
            for term in lvl:
                where = f"use {u} level {lvl_idx}"
                if isinstance(term, Relay):
                    if term.lag < 1:
                        out.append(f"{where}: relay lag {term.lag} < 1 (feedback arrives one use late)")
                    if not 1 <= term.level <= q:
                        out.append(f"{where}: relay of level {term.level} outside 1..{q}")
                    elif term.level not in observable:
                        out.append(f"{where}: feedback level {term.level} is never observable")
                elif term.back < 0:
                    out.append(f"{where}: negative block offset in {term}")
                elif term.back == 0:
                    seen = fresh_seen if isinstance(term, Fresh) else rand_seen
                    if term.pos in seen:
                        out.append(f"{where}: {term} already used at {seen[term.pos]}")
                    seen[term.pos] = (u, lvl_idx)
    F, K = len(fresh_seen), len(rand_seen)
    if set(fresh_seen) != set(range(F)):
        out.append(f"fresh positions {sorted(fresh_seen)} are not 0..{F - 1}")
    if set(rand_seen) != set(range(K)):
        out.append(f"common-random positions {sorted(rand_seen)} are not 0..{K - 1}")
    for use in s.levels:
        for lvl in use:
            for term in lvl:
                if isinstance(term, Fresh) and term.back > 0 and term.pos >= F:
                    out.append(f"{term} refers to a fresh position that does not exist")
                if isinstance(term, CommonRandom) and term.back > 0 and term.pos >= K:
                    out.append(f"{term} refers to a random position that does not exist")
    P = max(s.pattern_length, 1)
    if s.fresh_rate != Fraction(F, P):
        out.append(f"declared fresh rate {s.fresh_rate} but {F} fresh bits over {P} uses")
    if s.random_rate != Fraction(K, P):
        out.append(f"declared random rate {s.random_rate} but {K} random bits over {P} uses")
    # decoder domain
    if len(s.decoder.rows) != F:
        out.append(f"decoder has {len(s.decoder.rows)} rows for {F} fresh bits")
    for name in s.decoder.columns:
        try:
            c = Column.parse(name)
        except ValueError as exc:
            out.append(str(exc))
            continue
        if c.kind == "y":
            if not 0 <= c.index < P:
                out.append(f"column {name}: use {c.index} outside 0..{P - 1}")
            if not 1 <= c.level <= q:
                out.append(f"column {name}: level {c.level} outside 1..{q}")
        elif c.kind == "w":
            if c.offset >= 0:
                out.append(f"column {name}: decoded bits are only available for earlier blocks")
            if not 0 <= c.index < F:
                out.append(f"column {name}: fresh position outside 0..{F - 1}")
        elif not 0 <= c.index < K:
            out.append(f"column {name}: random position outside 0..{K - 1}")
    for r in s.decoder.rows:
        if r >> len(s.decoder.columns):
            out.append("decoder row wider than its column list")
    return out


# ---------------------------------------------------------------- verification

@dataclass
class SimulationReport:
    rates: tuple[Fraction, Fraction]
    random_rates: tuple[Fraction, Fraction]
    error_probability: tuple[Fraction, Fraction]
    trials: int
    mode: str
    counterexample: SimTrace | None = None

    @property
    def zero_error(self) -> bool:
        return self.error_probability == (0, 0) and self.counterexample is None

    @property
    def verdict(self) -> str:
        return "zero-error" if self.zero_error else "failed"

    def to_json(self) -> dict:
        out = {
            "rates": [format_rational(r) for r in self.rates],
            "random_rates": [format_rational(r) for r in self.random_rates],
            "bit_error_probability": [format_rational(e) for e in self.error_probability],
            "trials": self.trials,
            "mode": self.mode,
            "verdict": self.verdict,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
        return out


def _harmonize(s1: Scheme, s2: Scheme) -> tuple[Scheme, Scheme]:
    """Extend flush so both users stay on the air until both decoders are done."""
    need = max(s1.uses, s2.uses)
    out = []
    for s in (s1, s2):
        blocks = math.ceil(need / s.pattern_length) - s.blocks
        out.append(replace(s, flush=max(blocks, s.flush_blocks)))
    return out[0], out[1]


def _run_lanes(p: ChannelParams, s1: Scheme, s2: Scheme, sources: list[np.ndarray]):
    """Bit-sliced simulation: every source bit is an array over lanes."""
    M1, M2, K1 = s1.message_bits, s2.message_bits, s1.random_bits
    w1 = sources[:M1]
    w2 = sources[M1:M1 + M2]
    o1 = sources[M1 + M2:M1 + M2 + K1]
    o2 = sources[M1 + M2 + K1:]
    enc1 = lambda n, fb: s1.encode(n, w1, o1, fb)  # noqa: E731
    enc2 = lambda n, fb: s2.encode(n, w2, o2, fb)  # noqa: E731
    _, y, _ = run_channel(p, enc1, enc2, s1.uses, s2.uses)
    d1 = s1.decode(y[0], o1)
    d2 = s2.decode(y[1], o2)
    return (w1, d1), (w2, d2)


def _lane_errors(sent, decoded, lanes):
    errs = np.zeros(lanes, dtype=np.int64)
    for a, b in zip(sent, decoded):
        errs += np.broadcast_to(np.asarray(a) ^ np.asarray(b), (lanes,)).astype(np.int64)
    return errs


def _lane_bits(sources, lane):
    return [int(np.asarray(s)[lane]) if np.ndim(s) else int(s) for s in sources]


EXHAUSTIVE_HARD_LIMIT = 32
_CHUNK_BITS = 20
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)
_WORD_PATTERNS = [np.uint64(sum(1 << b for b in range(64) if (b >> k) & 1)) for k in range(6)]


def _packed_sources(n_src: int, chunk: int):
    """Source bits for one chunk of the enumeration, 64 inputs per uint64 word.

    Input number ``chunk * 2**L + 64 * word + bit`` sets source ``k`` to
    bit ``k`` of that number, where ``L = min(n_src, 20)``.
    """
    L = min(n_src, _CHUNK_BITS)
    words = max(1, (1 << L) // 64)
    idx = np.arange(words, dtype=np.uint64)
    out = []
    for k in range(n_src):
        if k < min(L, 6):
            out.append(np.full(words, _WORD_PATTERNS[k], dtype=np.uint64))
        elif k < L:
            out.append(np.where((idx >> np.uint64(k - 6)) & np.uint64(1), _ALL, np.uint64(0)))
        else:
            out.append(_ALL if (chunk >> (k - L)) & 1 else np.uint64(0))
    valid = (1 << min(1 << L, 64)) - 1
    return out, words, np.uint64(valid)


def _packed_errors(sent, decoded, words, valid) -> tuple[int, int | None]:
    """Total mismatching bits and the first failing input inside the chunk."""
    acc = np.zeros(words, dtype=np.uint64)
    total = 0
    for a, b in zip(sent, decoded):
        diff = np.broadcast_to(np.asarray(a ^ b, dtype=np.uint64), (words,)) & valid
        total += int(np.bitwise_count(diff).sum())
        acc |= diff
    bad = np.nonzero(acc)[0]
    if not len(bad):
        return total, None
    w = int(bad[0])
    word = int(acc[w])
    return total, 64 * w + (word & -word).bit_length() - 1


def run_and_verify(p: ChannelParams, s1: Scheme, s2: Scheme, trials: int = 64,
                   exhaustive: bool | None = None, seed: int = 0) -> SimulationReport:
    """Simulate both schemes and report rates and exact bit error probabilities.

    Source bits (messages and common randomness of both users) are
    enumerated exhaustively when there are at most ``2**20`` combinations;
    ``exhaustive=True`` forces enumeration up to ``2**32`` (64 inputs per
    machine word, processed in chunks).  Otherwise ``trials`` random draws
    are made, trial ``k`` seeded from ``(seed, k)``.  Sampled runs also
    simulate the all-zero input and every unit input; because the schemes
    are GF(2)-linear this superposition check covers every input, and the
    report says so in ``mode``.
    """
    problems = [f"user {k + 1}: {msg}" for k, s in enumerate((s1, s2)) for msg in validate_scheme(p, s)]
    if s1.user != 1 or s2.user != 2:
        problems.append("first scheme must be user 1's, second user 2's")
    for s in (s1, s2):
        if s.blocks < MIN_BLOCKS:
            problems.append(f"user {s.user}: verification needs at least {MIN_BLOCKS} blocks, got {s.blocks}")
    if problems:
        raise InvalidSchemeError(problems)
    if trials < 1:
        raise ValueError("trials must be positive")
    s1, s2 = _harmonize(s1, s2)
    M1, M2, K1 = s1.message_bits, s2.message_bits, s1.random_bits
    n_src = M1 + M2 + K1 + s2.random_bits
    if exhaustive is None:
        exhaustive = n_src <= EXHAUSTIVE_LIMIT
    elif exhaustive and n_src > EXHAUSTIVE_HARD_LIMIT:
        raise ValueError(f"{n_src} source bits: exhaustive enumeration exceeds 2^{EXHAUSTIVE_HARD_LIMIT}")

    def counterexample(bits):
        return simulate(p, s1, s2, bits[:M1], bits[M1:M1 + M2], bits[M1 + M2:M1 + M2 + K1], bits[M1 + M2 + K1:])

    totals = [0, 0]
    counter = None
    if exhaustive:
        chunks = 1 << max(0, n_src - _CHUNK_BITS)
        for c in range(chunks):
            sources, words, valid = _packed_sources(n_src, c)
            res = _run_lanes(p, s1, s2, sources)
            for k in range(2):
                errs, first = _packed_errors(*res[k], words, valid)
                totals[k] += errs
                if first is not None and counter is None:
                    lane = (c << min(n_src, _CHUNK_BITS)) + first
                    counter = counterexample([(lane >> b) & 1 for b in range(n_src)])
        n_inputs = 1 << n_src
        bits = (M1 * n_inputs, M2 * n_inputs)
        mode, n_trials = "exhaustive", n_inputs
    else:
        draws = np.stack([np.random.default_rng([seed, k]).integers(0, 2, n_src, dtype=np.uint8)
                          for k in range(trials)], axis=1) if n_src else np.zeros((0, trials), np.uint8)
        basis = np.zeros((n_src, n_src + 1), dtype=np.uint8)
        for k in range(n_src):
            basis[k, k + 1] = 1
        for tag, lanes, sources in (("sampled", trials, list(draws)), ("superposition", n_src + 1, list(basis))):
            res = _run_lanes(p, s1, s2, sources)
            errs = [_lane_errors(sent, dec, lanes) for sent, dec in res]
            if tag == "sampled":
                totals = [int(errs[0].sum()), int(errs[1].sum())]
            bad = np.nonzero(errs[0] + errs[1])[0]
            if len(bad) and counter is None:
                counter = counterexample(_lane_bits(sources, int(bad[0])) if n_src else [])
        bits = (M1 * trials, M2 * trials)
        mode, n_trials = "sampled+superposition", trials
    probs = tuple(Fraction(e, n) if n else Fraction(0) for e, n in zip(totals, bits))
    return SimulationReport((achieved_rate(s1), achieved_rate(s2)), (s1.random_rate, s2.random_rate),
                            probs, n_trials, mode, counter)


def sample_sources(s1: Scheme, s2: Scheme, seed: int = 0):
    """Uniform messages and common randomness for one concrete simulation."""
    rng = np.random.default_rng(seed)
    draw = lambda n: [int(b) for b in rng.integers(0, 2, n)]  # noqa: E731
    return draw(s1.message_bits), draw(s2.message_bits), draw(s1.random_bits), draw(s2.random_bits)


def relay_consistency(s: Scheme, trace: SimTrace, w: Sequence[int], omega: Sequence[int]) -> list[str]:
    """Replay user ``s.user``'s encoder against the recorded feedback.

    Every input level must equal the XOR of its terms, with relay terms
    read from the recorded feedback vectors.  Returns mismatches.
    """
    k = s.user - 1
    fb = [v.bits for v in trace.feedback[k]]
    problems = []
    for n in range(1, s.uses + 1):
        expect = s.encode(n, w, omega, fb[: n - 1])
        got = trace.inputs[k][n - 1].bits
        if tuple(expect) != got:
            problems.append(f"use {n}: sent {got}, replay gives {tuple(expect)}")
    return problems


# ------------------------------------------------------ figure-2 bit allocations

FIGURE2_PARAMS = ChannelParams(7, 6, 4, 4, 5, 0)


def figure2_schemes(target: tuple[int, int], blocks: int = MIN_BLOCKS) -> tuple[Scheme, Scheme]:
    """Zero-error schemes for the rate pairs (5,4) and (3,4) on (7,6,4,4,5,0).

    Transmitter 2 puts fresh bits a1, a2 on its two top levels (clean at
    receiver 2) and two private bits on levels 5 and 6.  Transmitter 1 sees
    ``a2`` through feedback (output level 5 comes back as feedback level 7),
    strips its own level-5 bit and resends ``a2`` one use later on level 3.
    Receiver 1 then reads ``a2`` above the interference and cancels it from
    level 5; receiver 2 cancels the resent ``a2`` from level 6 using the bit
    it decoded one use earlier.

    For (5,4) transmitter 2 leaves levels 3 and 4 empty, so levels 6 and 7
    at receiver 1 are clean.  For (3,4) transmitter 2 fills them with
    common-random bits, which carry no information but jam those two levels
    at receiver 1.
    """
    user1 = ["F0", "F1", "R7@1+F2@1", "0", "F2"]
    dec1 = [["y+0.0.1"], ["y+0.0.2"], ["y+0.0.5", "y+1.0.3"]]
    if target == (5, 4):
        user1 += ["F3", "F4"]
        dec1 += [["y+0.0.6"], ["y+0.0.7"]]
        user2 = ["F0", "F1", "0", "0", "F2", "F3", "0"]
    elif target == (3, 4):
        user1 += ["0", "0"]
        user2 = ["F0", "F1", "C0", "C1", "F2", "F3", "0"]
    else:
        raise ValueError(f"no built-in scheme for rate pair {target}")
    dec2 = [["y+0.0.2"], ["y+0.0.3"], ["y+0.0.6", "w-1.1"], ["y+0.0.7"]]
    tag = f"fig2-{target[0]}{target[1]}"
    return (make_scheme(1, [user1], dec1, blocks, name=f"{tag}-user1"),
            make_scheme(2, [user2], dec2, blocks, name=f"{tag}-user2"))

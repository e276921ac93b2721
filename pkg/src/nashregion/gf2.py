"""Dense bit vectors and bit matrices over GF(2).

Level 1 of a vector is its most significant entry and is stored at
position 0 of the underlying tuple.  The lower shift moves content toward
higher level indices, so ``S x`` drops the last entry of ``x`` and inserts
a zero at level 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when operands have incompatible dimensions."""


@dataclass(frozen=True)
class BitVector:
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) == 0:
            raise DimensionError("a bit vector needs at least one level")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"entries must be 0 or 1, got {self.bits}")

    @classmethod
    def of(cls, bits: Iterable[int]) -> "BitVector":
        return cls(tuple(int(b) for b in bits))

    @classmethod
    def zeros(cls, dim: int) -> "BitVector":
        return cls((0,) * dim)

    @classmethod
    def from_int(cls, value: int, dim: int) -> "BitVector":
        """Level 1 takes the most significant of the ``dim`` low-order bits."""
        if value < 0 or value >> dim:
            raise ValueError(f"{value} does not fit in {dim} bits")
        return cls(tuple((value >> (dim - 1 - k)) & 1 for k in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.bits)

    def level(self, m: int) -> int:
        """Entry at level ``m`` (1-based)."""
        if not 1 <= m <= self.dim:
            raise IndexError(f"level {m} outside 1..{self.dim}")
        return self.bits[m - 1]

    def to_int(self) -> int:
        out = 0
        for b in self.bits:
            out = (out << 1) | b
        return out

    def to_hex(self) -> str:
        return format(self.to_int(), "0{}x".format(max(1, (self.dim + 3) // 4)))

    def __add__(self, other: "BitVector") -> "BitVector":
        return gf2_add(self, other)

    def __iter__(self):
        return iter(self.bits)

    def __len__(self):
        return self.dim

    def __str__(self):
        return "(" + ",".join(map(str, self.bits)) + ")"


@dataclass(frozen=True)
class BitMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DimensionError("a bit matrix needs at least one row and column")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise DimensionError("ragged bit matrix")
            if any(b not in (0, 1) for b in row):
                raise ValueError("entries must be 0 or 1")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "BitMatrix":
        return cls(tuple(tuple(int(b) for b in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(tuple(int(r == c) for c in range(n)) for r in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(((0,) * cols,) * rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return gf2_matvec(self, other)
        if isinstance(other, BitMatrix):
            return gf2_matmul(self, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)


def shift_matrix(q: int, k: int) -> BitMatrix:
    """Return ``S**k`` for the ``q x q`` lower shift matrix ``S``.

    ``(S x)`` moves level ``m-1`` to level ``m`` and zeroes level 1, so row
    ``r`` of ``S**k`` has its single one in column ``r - k``.  Any ``k >= q``
    gives the zero matrix.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    if k < 0:
        raise ValueError("shift exponent must be nonnegative")
    return BitMatrix(tuple(tuple(int(c == r - k) for c in range(q)) for r in range(q)))


def gf2_add(a: BitVector, b: BitVector) -> BitVector:
    if a.dim != b.dim:
        raise DimensionError(f"cannot add vectors of dimension {a.dim} and {b.dim}")
    return BitVector(tuple(x ^ y for x, y in zip(a.bits, b.bits)))


def gf2_matvec(m: BitMatrix, v: BitVector) -> BitVector:
    if m.cols != v.dim:
        raise DimensionError(f"{m.rows}x{m.cols} matrix times {v.dim}-vector")
    return BitVector(tuple(_dot(row, v.bits) for row in m.entries))


def gf2_matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    cols = list(zip(*b.entries))
    return BitMatrix(tuple(tuple(_dot(row, col) for col in cols) for row in a.entries))


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(u, v):
        acc ^= x & y
    return acc


def shift_down(levels: Sequence, k: int, zero=0) -> tuple:
    """Apply ``S**k`` to a sequence of level entries.

    Works for any entry type supporting XOR, which lets the symbolic
    simulator push linear forms (int bitmasks) through the channel with the
    same code path as concrete bits.
    """
    q = len(levels)
    if k >= q:
        return (zero,) * q
    return (zero,) * k + tuple(levels[: q - k])


# Linear forms over GF(2) encoded as Python ints (bit t = coefficient of
# source variable t).  Used for decodability analysis.

def rank_reduce(rows: Iterable[int]) -> dict[int, int]:
    """Reduce forms to echelon basis keyed by pivot (highest set bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        r = reduce_form(r, basis)
        if r:
            basis[r.bit_length() - 1] = r
    return basis


def reduce_form(r: int, basis: dict[int, int]) -> int:
    while r:
        top = r.bit_length() - 1
        piv = basis.get(top)
        if piv is None:
            return r
        r ^= piv
    return 0


def solve_combination(rows: Sequence[int], target: int) -> int | None:
    """Find a subset of ``rows`` whose XOR is ``target``.

    Returns the subset as an int bitmask over row indices, or ``None`` when
    ``target`` is outside the span.
    """
    basis: dict[int, tuple[int, int]] = {}
    for idx, r in enumerate(rows):
        combo = 1 << idx
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = (r, combo)
                break
            br, bc = basis[top]
            r ^= br
            combo ^= bc
    combo = 0
    r = target
    while r:
        top = r.bit_length() - 1
        if top not in basis:
            return None
        br, bc = basis[top]
        r ^= br
        combo ^= bc
    return combo


class Span:
    """Echelon basis of GF(2) forms that remembers how each pivot was built.

    ``solve(target)`` answers many right-hand sides against one reduction.
    """

    def __init__(self, rows: Sequence[int]):
        self.basis: dict[int, tuple[int, int]] = {}
        for idx, r in enumerate(rows):
            combo = 1 << idx
            while r:
                top = r.bit_length() - 1
                if top not in self.basis:
                    self.basis[top] = (r, combo)
                    break
                br, bc = self.basis[top]
                r ^= br
                combo ^= bc

    @property
    def rank(self) -> int:
        return len(self.basis)

    def solve(self, target: int) -> int | None:
        combo = 0
        r = target
        while r:
            top = r.bit_length() - 1
            hit = self.basis.get(top)
            if hit is None:
                return None
            r ^= hit[0]
            combo ^= hit[1]
        return combo

"""Exact rational linear algebra on graded vector spaces.

Everything here works over :class:`fractions.Fraction`; there is no floating
point in this module.  A graded space is only ever described by its ranks
(:class:`GradedDims`), and a graded map by one matrix per degree
(:class:`GradedLinearMap`).  Degrees without a stored block carry the zero map.

Finiteness is declared, never inferred: a :class:`GradedDims` is either
``FiniteUpTo(D)`` (rank 0 in every degree above ``D``) or ``TruncatedAt(D)``
(nothing is known above ``D``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DegreeOutOfWindow, ShapeMismatch, UnboundedSupport


@dataclass(frozen=True)
class GradedDims:
    """Degreewise ranks with an explicit support marker.

    ``truncated=False`` means FiniteUpTo(bound); ``truncated=True`` means
    TruncatedAt(bound).  ``infinite`` is a provenance flag, meaningful only on
    truncated data, recording that the total rank is known to be infinite.
    """

    dims: Mapping[int, int]
    bound: int
    truncated: bool = False
    infinite: bool = False

    def __post_init__(self):
        clean = {}
        for degree, rank in sorted(self.dims.items()):
            degree, rank = int(degree), int(rank)
            if degree < 0 or rank < 0:
                raise ShapeMismatch(f"negative degree or rank: {degree}: {rank}")
            if degree > self.bound:
                raise ShapeMismatch(f"degree {degree} lies beyond the declared bound {self.bound}")
            if rank:
                clean[degree] = rank
        if self.infinite and not self.truncated:
            raise ShapeMismatch("a FiniteUpTo support cannot carry the infinite flag")
        object.__setattr__(self, "dims", clean)

    @classmethod
    def finite(cls, dims: Mapping[int, int], bound: Optional[int] = None) -> "GradedDims":
        if bound is None:
            bound = max((d for d, r in dims.items() if r), default=0)
        return cls(dict(dims), bound)

    @classmethod
    def truncated_at(cls, dims: Mapping[int, int], bound: int, infinite: bool = False) -> "GradedDims":
        return cls({d: r for d, r in dims.items() if d <= bound}, bound, True, infinite)

    @property
    def window(self) -> Optional[int]:
        """Last degree with known rank, or None when every degree is known."""
        return self.bound if self.truncated else None

    def knows(self, degree: int) -> bool:
        return not self.truncated or degree <= self.bound

    def rank(self, degree: int) -> int:
        if not self.knows(degree):
            raise DegreeOutOfWindow(f"degree {degree} lies beyond truncation {self.bound}")
        return self.dims.get(degree, 0)

    def __getitem__(self, degree: int) -> int:
        return self.rank(degree)

    def total(self) -> int:
        if self.truncated:
            raise UnboundedSupport("total rank of truncated data is unknown")
        return sum(self.dims.values())

    def describe(self) -> str:
        kind = f"truncatedAt {self.bound}" if self.truncated else f"finiteUpTo {self.bound}"
        body = ", ".join(f"{d}:{r}" for d, r in self.dims.items())
        return f"{{{body}}} ({kind}{', infinite' if self.infinite else ''})"


ZERO_DIMS = GradedDims({}, 0)


def _window_min(*windows: Optional[int]) -> Optional[int]:
    known = [w for w in windows if w is not None]
    return min(known) if known else None


def add_dims(a: GradedDims, b: GradedDims) -> GradedDims:
    """Degreewise sum of ranks."""
    window = _window_min(a.window, b.window)
    degrees = set(a.dims) | set(b.dims)
    if window is None:
        return GradedDims({d: a.rank(d) + b.rank(d) for d in degrees}, max(a.bound, b.bound))
    dims = {d: a.rank(d) + b.rank(d) for d in degrees if d <= window}
    return GradedDims.truncated_at(dims, window, a.infinite or b.infinite)


def convolve_dims(a: GradedDims, b: GradedDims) -> GradedDims:
    """Ranks of the graded tensor product (Künneth convolution)."""
    window = _window_min(a.window, b.window)
    limit = a.bound + b.bound if window is None else window
    dims = {}
    for i in range(limit + 1):
        total = sum(a.dims.get(j, 0) * b.dims.get(i - j, 0) for j in range(i + 1))
        if total:
            dims[i] = total
    if window is None:
        return GradedDims(dims, limit)
    infinite = (a.infinite and bool(b.dims)) or (b.infinite and bool(a.dims))
    return GradedDims.truncated_at(dims, window, infinite)


@dataclass(frozen=True, eq=False)
class RationalMatrix:
    """Sparse matrix of Fractions: ``entries`` maps (row, col) to nonzero values.

    Künneth blocks of products are mostly zero, so only nonzeros are stored.
    """

    rows: int
    cols: int
    entries: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch("matrix dimensions must be nonnegative")
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ShapeMismatch(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            v = Fraction(v)
            if v:
                clean[i, j] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(len(rows), cols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def scalar(cls, value) -> "RationalMatrix":
        return cls(1, 1, {(0, 0): value})

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        return self.entries.get(tuple(ij), Fraction(0))

    def to_rows(self) -> list:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @cached_property
    def rank(self) -> int:
        by_row = {}
        for (i, j), v in self.entries.items():
            by_row.setdefault(i, {})[j] = v
        return _eliminate(by_row.values())

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        """Kronecker product, row index (i, k) -> i*other.rows + k."""
        entries = {(i * other.rows + k, j * other.cols + l): a * b
                   for (i, j), a in self.entries.items()
                   for (k, l), b in other.entries.items()}
        return RationalMatrix(self.rows * other.rows, self.cols * other.cols, entries)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"RationalMatrix({self.to_rows()!r})"


def block_diagonal(blocks: Iterable[RationalMatrix]) -> RationalMatrix:
    entries = {}
    r0 = c0 = 0
    for b in blocks:
        for (i, j), v in b.entries.items():
            entries[r0 + i, c0 + j] = v
        r0 += b.rows
        c0 += b.cols
    return RationalMatrix(r0, c0, entries)


def _eliminate(rows: Iterable[dict]) -> int:
    """Rank of sparse rows ({col: value}) by exact elimination against pivots."""
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            pivot = pivots.get(col)
            if pivot is None:
                pivots[col] = row
                break
            factor = row[col] / pivot[col]
            for c, v in pivot.items():
                nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def rank(m: RationalMatrix) -> int:
    """Rank over the rationals."""
    return m.rank


@dataclass(frozen=True, eq=False)
class GradedLinearMap:
    """One matrix per degree between two graded spaces.

    ``blocks[i]`` has ``target.rank(i)`` rows and ``source.rank(i)`` columns.
    Zero blocks are dropped on construction, so equality is structural.
    """

    source: GradedDims
    target: GradedDims
    blocks: Mapping[int, RationalMatrix] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for degree in sorted(self.blocks):
            block = self.blocks[degree]
            if not (self.source.knows(degree) and self.target.knows(degree)):
                raise DegreeOutOfWindow(f"block at degree {degree} lies outside the declared window")
            expected = (self.target.rank(degree), self.source.rank(degree))
            if block.shape != expected:
                raise ShapeMismatch(f"degree {degree}: block is {block.shape}, expected {expected}")
            if not block.is_zero:
                clean[degree] = block
        object.__setattr__(self, "blocks", clean)

    @property
    def window(self) -> Optional[int]:
        return _window_min(self.source.window, self.target.window)

    def knows(self, degree: int) -> bool:
        return self.source.knows(degree) and self.target.knows(degree)

    def block(self, degree: int) -> RationalMatrix:
        """The block at ``degree``, materializing zeros when absent."""
        if degree in self.blocks:
            return self.blocks[degree]
        return RationalMatrix.zeros(self.target.rank(degree), self.source.rank(degree))

    def rank_at(self, degree: int) -> int:
        block = self.blocks.get(degree)
        return block.rank if block is not None else 0

    def __eq__(self, other):
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        return (self.source, self.target, dict(self.blocks)) == (other.source, other.target, dict(other.blocks))


def kernel_dim(f: GradedLinearMap, i: int) -> int:
    src = f.source.rank(i)
    if src == 0:
        return 0
    f.target.rank(i)
    return src - f.rank_at(i)


def cokernel_dim(f: GradedLinearMap, i: int) -> int:
    tgt = f.target.rank(i)
    if tgt == 0:
        return 0
    f.source.rank(i)
    return tgt - f.rank_at(i)


def direct_sum(f: GradedLinearMap, g: GradedLinearMap) -> GradedLinearMap:
    """Degreewise block-diagonal sum, f's basis first."""
    source = add_dims(f.source, g.source)
    target = add_dims(f.target, g.target)
    window = _window_min(source.window, target.window)
    blocks = {}
    for d in sorted(set(f.blocks) | set(g.blocks)):
        if window is not None and d > window:
            continue
        blocks[d] = block_diagonal([f.block(d), g.block(d)])
    return GradedLinearMap(source, target, blocks)


def kunneth_tensor(f: GradedLinearMap, g: GradedLinearMap, exact: bool = True) -> GradedLinearMap:
    """Graded tensor product of two maps.

    The degree-i block is block diagonal over j = 0..i with the Kronecker
    product ``f.block(j) ⊗ g.block(i - j)`` in position j.  With
    ``exact=True`` all four graded spaces must be FiniteUpTo; otherwise the
    result is truncated at the smallest window involved.
    """
    if exact and any(d.truncated for d in (f.source, f.target, g.source, g.target)):
        raise UnboundedSupport("exact Künneth product needs FiniteUpTo support on both sides")
    source = convolve_dims(f.source, g.source)
    target = convolve_dims(f.target, g.target)
    limit = source.bound
    if target.window is not None:
        limit = min(limit, target.window)
    blocks = {}
    for i in range(limit + 1):
        pairs = [j for j in range(i + 1) if j in f.blocks and (i - j) in g.blocks]
        if not pairs:
            continue
        parts = []
        for j in range(i + 1):
            k = i - j
            rows = f.target.rank(j) * g.target.rank(k)
            cols = f.source.rank(j) * g.source.rank(k)
            if not rows and not cols:
                continue
            if j in pairs:
                parts.append(f.blocks[j].kron(g.blocks[k]))
            else:
                parts.append(RationalMatrix.zeros(rows, cols))
        blocks[i] = block_diagonal(parts)
    return GradedLinearMap(source, target, blocks)


def kernel_dims(f: GradedLinearMap) -> GradedDims:
    """All kernel dimensions that the declared windows determine.

    The total is flagged infinite when the source is known infinite and the
    target is FiniteUpTo, since then Ker >= source - target degreewise.
    """
    return _profile(f, kernel_dim, f.source, f.target)


def cokernel_dims(f: GradedLinearMap) -> GradedDims:
    return _profile(f, cokernel_dim, f.target, f.source)


def _profile(f, dim_at, near: GradedDims, far: GradedDims) -> GradedDims:
    stop = near.bound
    for i in range(near.bound + 1):
        if near.dims.get(i, 0) and not far.knows(i):
            stop = i - 1
            break
    dims = {i: dim_at(f, i) for i in range(stop + 1)}
    if not near.truncated and stop == near.bound:
        return GradedDims(dims, near.bound)
    infinite = near.infinite and not far.truncated
    return GradedDims.truncated_at(dims, stop, infinite)

"""Exact sparse linear algebra over the rationals.

Vectors are sparse maps from 0-based coordinate indices to nonzero
``Fraction`` values.  Bases are kept in reduced row-echelon form (unit
pivots, pivot columns eliminated everywhere else), so two bases are
structurally equal exactly when they span the same subspace.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "DimensionMismatch",
    "RowBasis",
    "SparseVector",
    "as_fraction",
    "format_rational",
    "kernel_basis",
    "parse_rational",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Raised when vectors of incompatible dimensions are combined."""


def as_fraction(value: Fraction | int | str) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def parse_rational(text: str) -> Fraction:
    """Parse the serialized form "p" or "p/q" (q > 0)."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational literal {text!r}") from exc
    return value


def format_rational(value: Fraction) -> str:
    """Serialize a rational as "p" or "p/q", omitting the denominator 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class SparseVector:
    """Sparse vector of a fixed dimension; zero entries are never stored."""

    __slots__ = ("dimension", "entries")

    def __init__(
        self,
        dimension: int,
        entries: Mapping[int, Fraction | int | str] | Iterable[tuple[int, Fraction | int | str]] = (),
    ) -> None:
        if dimension < 0:
            raise ValueError("dimension must be nonnegative")
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[int, Fraction] = {}
        for index, raw in items:
            if not 0 <= index < dimension:
                raise DimensionMismatch(
                    f"index {index} out of range for dimension {dimension}"
                )
            value = clean.get(index, ZERO) + as_fraction(raw)
            if value:
                clean[index] = value
            else:
                clean.pop(index, None)
        self.dimension = dimension
        self.entries = clean

    @classmethod
    def from_dense(cls, values: Iterable[Fraction | int | str]) -> "SparseVector":
        dense = [as_fraction(v) for v in values]
        return cls(len(dense), {i: v for i, v in enumerate(dense) if v})

    @classmethod
    def basis_vector(cls, dimension: int, index: int) -> "SparseVector":
        return cls(dimension, {index: ONE})

    def get(self, index: int) -> Fraction:
        return self.entries.get(index, ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self.entries.items())

    def add(self, other: "SparseVector") -> "SparseVector":
        self._check(other)
        merged = dict(self.entries)
        for i, v in other.entries.items():
            s = merged.get(i, ZERO) + v
            if s:
                merged[i] = s
            else:
                merged.pop(i, None)
        out = SparseVector(self.dimension)
        out.entries = merged
        return out

    def sub(self, other: "SparseVector") -> "SparseVector":
        return self.add(other.scale(-1))

    def scale(self, factor: Fraction | int) -> "SparseVector":
        factor = as_fraction(factor)
        out = SparseVector(self.dimension)
        if factor:
            out.entries = {i: v * factor for i, v in self.entries.items()}
        return out

    def dot(self, other: "SparseVector") -> Fraction:
        self._check(other)
        small, large = self.entries, other.entries
        if len(small) > len(large):
            small, large = large, small
        return sum((v * large[i] for i, v in small.items() if i in large), ZERO)

    def to_dense(self) -> list[Fraction]:
        return [self.entries.get(i, ZERO) for i in range(self.dimension)]

    def _check(self, other: "SparseVector") -> None:
        if self.dimension != other.dimension:
            raise DimensionMismatch(
                f"dimension mismatch: {self.dimension} vs {other.dimension}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.dimension == other.dimension and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.dimension, tuple(sorted(self.entries.items()))))

    def __repr__(self) -> str:
        body = ", ".join(
            f"{i}: {format_rational(v)}" for i, v in sorted(self.entries.items())
        )
        return f"SparseVector({self.dimension}, {{{body}}})"


class RowBasis:
    """Reduced row-echelon basis of a subspace of Q^dimension.

    Rows are stored keyed by pivot column; each row has a unit pivot and
    its pivot column is zero in every other row, so the stored form is a
    canonical representative of the subspace.  Mutation happens only via
    :meth:`insert`.
    """

    __slots__ = ("dimension", "_rows")

    def __init__(self, dimension: int) -> None:
        if dimension < 0:
            raise ValueError("dimension must be nonnegative")
        self.dimension = dimension
        self._rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))

    def rows(self) -> list[SparseVector]:
        """Basis rows in canonical order (increasing pivot column)."""
        out = []
        for pivot in sorted(self._rows):
            vec = SparseVector(self.dimension)
            vec.entries = dict(self._rows[pivot])
            out.append(vec)
        return out

    def row_dicts(self) -> list[dict[int, Fraction]]:
        """Snapshot copies of the raw row maps, canonical order."""
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def copy(self) -> "RowBasis":
        dup = RowBasis(self.dimension)
        dup._rows = {p: dict(r) for p, r in self._rows.items()}
        return dup

    def _reduce(self, entries: Mapping[int, Fraction]) -> dict[int, Fraction]:
        # Stored rows contain no pivot column other than their own, so a
        # single pass over the pivot columns present in the input suffices.
        v = dict(entries)
        rows = self._rows
        for col in sorted(c for c in v if c in rows):
            coeff = v.get(col)
            if not coeff:
                continue
            for c, x in rows[col].items():
                value = v.get(c, ZERO) - coeff * x
                if value:
                    v[c] = value
                else:
                    v.pop(c, None)
        return v

    def contains(self, vec: SparseVector) -> bool:
        """True iff vec lies in the span of the basis rows."""
        if vec.dimension != self.dimension:
            raise DimensionMismatch(
                f"dimension mismatch: {vec.dimension} vs {self.dimension}"
            )
        return not self._reduce(vec.entries)

    def insert(self, vec: SparseVector) -> bool:
        """Add vec to the span; returns True iff the rank grew."""
        if vec.dimension != self.dimension:
            raise DimensionMismatch(
                f"dimension mismatch: {vec.dimension} vs {self.dimension}"
            )
        v = self._reduce(vec.entries)
        if not v:
            return False
        pivot = min(v)
        inv = ONE / v[pivot]
        if inv != 1:
            v = {c: x * inv for c, x in v.items()}
        # The new pivot column was free until now: clear it from all rows.
        for row in self._rows.values():
            coeff = row.get(pivot)
            if not coeff:
                continue
            for c, x in v.items():
                value = row.get(c, ZERO) - coeff * x
                if value:
                    row[c] = value
                else:
                    row.pop(c, None)
        self._rows[pivot] = v
        return True

    def kernel(self) -> "RowBasis":
        """RREF basis of {v : r·v = 0 for every basis row r}."""
        pivots = self.pivots()
        rows = [self._rows[p] for p in pivots]
        free = [c for c in range(self.dimension) if c not in self._rows]
        kernel = RowBasis(self.dimension)
        for f in free:
            entries: dict[int, Fraction] = {f: ONE}
            for pivot, row in zip(pivots, rows):
                coeff = row.get(f)
                if coeff:
                    entries[pivot] = -coeff
            vec = SparseVector(self.dimension)
            vec.entries = entries
            kernel.insert(vec)
        return kernel

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RowBasis):
            return NotImplemented
        return self.dimension == other.dimension and self._rows == other._rows

    __hash__ = None  # mutable

    def __repr__(self) -> str:
        return f"RowBasis(dimension={self.dimension}, rank={self.rank})"


def kernel_basis(rows: Iterable[SparseVector], dimension: int) -> RowBasis:
    """RREF basis of the null space {v : M v = 0} of the stacked rows."""
    basis = RowBasis(dimension)
    for row in rows:
        basis.insert(row)
    return basis.kernel()

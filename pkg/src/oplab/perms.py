"""Permutations in sequence form, with group and block-composition ops.

A permutation s of {1..n} is stored as the sequence
(s^{-1}(1), ..., s^{-1}(n)); equivalently, the sequence (i_1, ..., i_n)
names the permutation sending i_k to k.  The identity of S_n has
sequence (1, 2, ..., n), and S_0 consists of the single empty
permutation.  Sequence order (tuple order) is the fixed coordinate
order used everywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _lex_permutations
from typing import Sequence

__all__ = [
    "ArityMismatch",
    "Permutation",
    "all_permutations",
    "block_compose",
    "format_permutation",
    "identity",
    "multiply",
    "parse_permutation",
    "perm_index",
]


class ArityMismatch(ValueError):
    """Raised when permutations of different arities are combined."""


@dataclass(frozen=True)
class Permutation:
    seq: tuple[int, ...]

    def __post_init__(self) -> None:
        seq = tuple(self.seq)
        object.__setattr__(self, "seq", seq)
        if sorted(seq) != list(range(1, len(seq) + 1)):
            raise ValueError(f"{seq!r} is not a permutation sequence of 1..{len(seq)}")

    @property
    def arity(self) -> int:
        return len(self.seq)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.seq)
        for k, value in enumerate(self.seq, start=1):
            inv[value - 1] = k
        return Permutation(tuple(inv))

    def function_table(self) -> tuple[int, ...]:
        """The values (s(1), ..., s(n)); equals the inverse's sequence."""
        return self.inverse().seq

    def apply(self, value: int) -> int:
        """Apply the permutation as a function {1..n} -> {1..n}."""
        if not 1 <= value <= len(self.seq):
            raise ValueError(f"{value} outside 1..{len(self.seq)}")
        return self.seq.index(value) + 1

    def sign(self) -> int:
        """Parity sign; the sequence has the same parity as the permutation."""
        seq = self.seq
        inversions = sum(
            1
            for i in range(len(seq))
            for j in range(i + 1, len(seq))
            if seq[i] > seq[j]
        )
        return -1 if inversions % 2 else 1

    def __repr__(self) -> str:
        return f"Permutation({self.seq!r})"

    def __str__(self) -> str:
        return format_permutation(self)


@lru_cache(maxsize=None)
def identity(arity: int) -> Permutation:
    if arity < 0:
        raise ValueError("arity must be nonnegative")
    return Permutation(tuple(range(1, arity + 1)))


def multiply(left: Permutation, right: Permutation) -> Permutation:
    """Group product left*right (apply right, then left, as functions)."""
    if left.arity != right.arity:
        raise ArityMismatch(f"arity mismatch: {left.arity} vs {right.arity}")
    rseq = right.seq
    return Permutation(tuple(rseq[v - 1] for v in left.seq))


def block_compose(outer: Permutation, parts: Sequence[Permutation]) -> Permutation:
    """Substitute parts[i] into slot i of outer, as permutations.

    The result concatenates the shifted part sequences in the order given
    by the outer sequence; parts of arity 0 delete their slot.
    """
    if outer.arity == 0 or len(parts) != outer.arity:
        raise ArityMismatch(
            f"outer arity {outer.arity} requires exactly that many parts, got {len(parts)}"
        )
    offsets = []
    total = 0
    for part in parts:
        offsets.append(total)
        total += part.arity
    blocks = [
        tuple(offset + v for v in part.seq) for offset, part in zip(offsets, parts)
    ]
    result: list[int] = []
    for slot in outer.seq:
        result.extend(blocks[slot - 1])
    return Permutation(tuple(result))


@lru_cache(maxsize=None)
def all_permutations(arity: int) -> tuple[Permutation, ...]:
    """All of S_arity in lexicographic sequence order."""
    if arity < 0:
        raise ValueError("arity must be nonnegative")
    return tuple(Permutation(seq) for seq in _lex_permutations(range(1, arity + 1)))


@lru_cache(maxsize=None)
def _index_map(arity: int) -> dict[tuple[int, ...], int]:
    return {p.seq: i for i, p in enumerate(all_permutations(arity))}


def perm_index(perm: Permutation) -> int:
    """Position of perm in the lexicographic enumeration of its arity."""
    return _index_map(perm.arity)[perm.seq]


def format_permutation(perm: Permutation) -> str:
    return "(" + ",".join(str(v) for v in perm.seq) + ")"


def parse_permutation(text: str) -> Permutation:
    """Parse the textual form "(i1,i2,...,in)"; "()" is the empty permutation."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"permutation literal must be parenthesized: {text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return identity(0)
    try:
        seq = tuple(int(v.strip()) for v in inner.split(","))
    except ValueError as exc:
        raise ValueError(f"invalid permutation literal {text!r}") from exc
    return Permutation(seq)

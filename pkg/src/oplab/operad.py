"""Rational linear combinations of same-arity permutations.

Elements carry the full and partial block compositions (multilinear in
every slot) and the right regular action of the symmetric group.  The
coordinate order for vector conversion is the lexicographic enumeration
of permutation sequences.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import SparseVector, as_fraction, format_rational
from .perms import (
    ArityMismatch,
    Permutation,
    all_permutations,
    block_compose,
    format_permutation,
    identity,
    multiply,
    perm_index,
)

__all__ = [
    "OperadElement",
    "act",
    "format_element",
    "from_vector",
    "full_compose",
    "parse_element",
    "partial_compose",
    "standard_polynomial",
    "to_vector",
]


class OperadElement:
    """Finite linear combination of permutations of one fixed arity."""

    __slots__ = ("arity", "terms")

    def __init__(
        self,
        arity: int,
        terms: Mapping[Permutation, Fraction | int | str]
        | Iterable[tuple[Permutation, Fraction | int | str]] = (),
    ) -> None:
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Permutation, Fraction] = {}
        for perm, raw in items:
            if perm.arity != arity:
                raise ArityMismatch(
                    f"term {perm} has arity {perm.arity}, element has arity {arity}"
                )
            value = clean.get(perm, Fraction(0)) + as_fraction(raw)
            if value:
                clean[perm] = value
            else:
                clean.pop(perm, None)
        self.arity = arity
        self.terms = clean

    @classmethod
    def zero(cls, arity: int) -> "OperadElement":
        return cls(arity)

    @classmethod
    def unit(cls, arity: int) -> "OperadElement":
        """The identity permutation of the given arity with coefficient 1."""
        return cls(arity, {identity(arity): Fraction(1)})

    @classmethod
    def basis(cls, perm: Permutation, coeff: Fraction | int = 1) -> "OperadElement":
        return cls(perm.arity, {perm: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, perm: Permutation) -> Fraction:
        return self.terms.get(perm, Fraction(0))

    def items(self) -> Iterator[tuple[Permutation, Fraction]]:
        return iter(self.terms.items())

    def add(self, other: "OperadElement") -> "OperadElement":
        self._check(other)
        out = dict(self.terms)
        for perm, value in other.terms.items():
            s = out.get(perm, Fraction(0)) + value
            if s:
                out[perm] = s
            else:
                out.pop(perm, None)
        result = OperadElement(self.arity)
        result.terms = out
        return result

    def sub(self, other: "OperadElement") -> "OperadElement":
        return self.add(other.scale(-1))

    def scale(self, factor: Fraction | int) -> "OperadElement":
        factor = as_fraction(factor)
        result = OperadElement(self.arity)
        if factor:
            result.terms = {p: c * factor for p, c in self.terms.items()}
        return result

    __add__ = add
    __sub__ = sub

    def __neg__(self) -> "OperadElement":
        return self.scale(-1)

    def __rmul__(self, factor: Fraction | int) -> "OperadElement":
        return self.scale(factor)

    def _check(self, other: "OperadElement") -> None:
        if self.arity != other.arity:
            raise ArityMismatch(f"arity mismatch: {self.arity} vs {other.arity}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperadElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, tuple(sorted((p.seq, c) for p, c in self.terms.items()))))

    def __repr__(self) -> str:
        return f"OperadElement({self.arity}, {format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def full_compose(theta: OperadElement, parts: Sequence[OperadElement]) -> OperadElement:
    """Compose theta with one element per slot; multilinear in every slot."""
    if theta.arity < 1:
        raise ArityMismatch("full composition needs at least one slot")
    if len(parts) != theta.arity:
        raise ArityMismatch(
            f"expected {theta.arity} parts, got {len(parts)}"
        )
    result_arity = sum(p.arity for p in parts)
    accum: dict[Permutation, Fraction] = {}
    part_items = [list(p.terms.items()) for p in parts]
    for outer, outer_coeff in theta.terms.items():
        for combo in product(*part_items):
            perm = block_compose(outer, [perm for perm, _ in combo])
            coeff = outer_coeff
            for _, c in combo:
                coeff *= c
            value = accum.get(perm, Fraction(0)) + coeff
            if value:
                accum[perm] = value
            else:
                accum.pop(perm, None)
    result = OperadElement(result_arity)
    result.terms = accum
    return result


def partial_compose(mu: OperadElement, slot: int, nu: OperadElement) -> OperadElement:
    """Plug nu into input slot `slot` of mu (1-based); arity-0 nu contracts."""
    if mu.arity < 1:
        raise ArityMismatch("partial composition needs an element of arity >= 1")
    if not 1 <= slot <= mu.arity:
        raise ArityMismatch(f"slot {slot} out of range 1..{mu.arity}")
    unit1 = OperadElement.unit(1)
    parts = [unit1] * mu.arity
    parts[slot - 1] = nu
    return full_compose(mu, parts)


def act(theta: OperadElement, tau: Permutation) -> OperadElement:
    """Right regular action: each basis term sigma goes to sigma*tau."""
    if theta.arity != tau.arity:
        raise ArityMismatch(f"arity mismatch: {theta.arity} vs {tau.arity}")
    result = OperadElement(theta.arity)
    result.terms = {multiply(perm, tau): c for perm, c in theta.terms.items()}
    return result


def to_vector(theta: OperadElement) -> SparseVector:
    """Coordinates in the lexicographic permutation order; dimension arity!."""
    vec = SparseVector(math.factorial(theta.arity))
    vec.entries = {perm_index(p): c for p, c in theta.terms.items()}
    return vec


def from_vector(arity: int, vec: SparseVector) -> OperadElement:
    if vec.dimension != math.factorial(arity):
        raise ArityMismatch(
            f"vector dimension {vec.dimension} is not {arity}!"
        )
    perms = all_permutations(arity)
    result = OperadElement(arity)
    result.terms = {perms[i]: c for i, c in vec.entries.items()}
    return result


def standard_polynomial(arity: int) -> OperadElement:
    """Alternating sum of all permutations, each weighted by its sign."""
    if arity < 1:
        raise ValueError("standard polynomial needs arity >= 1")
    result = OperadElement(arity)
    result.terms = {p: Fraction(p.sign()) for p in all_permutations(arity)}
    return result


def format_element(theta: OperadElement) -> str:
    """Canonical text: "c1*(seq1) + c2*(seq2)" in lexicographic seq order."""
    if not theta.terms:
        return "0"
    parts: list[str] = []
    for perm in sorted(theta.terms, key=lambda p: p.seq):
        coeff = theta.terms[perm]
        body = f"{format_rational(abs(coeff))}*{format_permutation(perm)}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


_TERM_RE = re.compile(
    r"""
    \s*(?P<sign>[+-])?\s*
    (?:(?P<coeff>\d+(?:\s*/\s*\d+)?)\s*\*\s*)?
    \((?P<seq>[\d\s,]*)\)
    """,
    re.VERBOSE,
)


def parse_element(text: str, arity: int | None = None) -> OperadElement:
    """Parse the canonical element text; "0" needs an explicit arity."""
    body = text.strip()
    if body == "0":
        if arity is None:
            raise ValueError("the zero element needs an explicit arity")
        return OperadElement.zero(arity)
    pos = 0
    terms: list[tuple[Permutation, Fraction]] = []
    first = True
    while pos < len(body):
        match = _TERM_RE.match(body, pos)
        if not match or (not first and match.group("sign") is None):
            raise ValueError(f"cannot parse element text at position {pos}: {text!r}")
        sign = -1 if match.group("sign") == "-" else 1
        coeff_text = match.group("coeff")
        coeff = Fraction(coeff_text.replace(" ", "")) if coeff_text else Fraction(1)
        seq_text = match.group("seq").strip()
        if seq_text:
            seq = tuple(int(v) for v in seq_text.split(","))
        else:
            seq = ()
        terms.append((Permutation(seq), sign * coeff))
        pos = match.end()
        first = False
    arities = {perm.arity for perm, _ in terms}
    if len(arities) != 1:
        raise ValueError(f"mixed arities in element text: {sorted(arities)}")
    found = arities.pop()
    if arity is not None and arity != found:
        raise ValueError(f"expected arity {arity}, found {found}")
    return OperadElement(found, terms)

"""Noncommutative polynomials over x1, x2, ... and their text grammar.

Grammar (whitespace insignificant; '*' is mandatory between factors):

    poly     := ['-'] term { ('+'|'-') term }
    term     := factor { '*' factor }
    factor   := atom [ '^' nat ]
    atom     := rational | variable | '(' poly ')'
    variable := 'x' nat
    rational := nat [ '/' nat ]

The canonical printer lists terms in lexicographic word order with an
explicit coefficient on every variable term, so print-parse-print is a
fixed point.  Multilinear polynomials of degree n (every word uses each
of x1..xn exactly once) translate back and forth to arity-n operad
elements: a permutation corresponds to the word spelled by its sequence.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations as _itertools_permutations
from typing import Iterable, Iterator, Mapping

from .linalg import as_fraction, format_rational
from .operad import OperadElement
from .perms import ArityMismatch, Permutation

__all__ = [
    "NcPoly",
    "PolyParseError",
    "act_poly",
    "format_poly",
    "multilinearize",
    "operad_to_poly",
    "parse_poly",
    "poly_to_operad",
]

Word = tuple[int, ...]


class PolyParseError(ValueError):
    """Syntax error with the 0-based offset where parsing failed."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NcPoly:
    """Polynomial in noncommuting variables, stored as word -> coefficient."""

    __slots__ = ("terms",)

    def __init__(
        self,
        terms: Mapping[Word, Fraction | int | str]
        | Iterable[tuple[Word, Fraction | int | str]] = (),
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Word, Fraction] = {}
        for word, raw in items:
            word = tuple(word)
            if any(v < 1 for v in word):
                raise ValueError(f"variable indices must be >= 1, got {word}")
            value = clean.get(word, Fraction(0)) + as_fraction(raw)
            if value:
                clean[word] = value
            else:
                clean.pop(word, None)
        self.terms = clean

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls()

    @classmethod
    def one(cls) -> "NcPoly":
        return cls({(): Fraction(1)})

    @classmethod
    def constant(cls, value: Fraction | int) -> "NcPoly":
        return cls({(): value})

    @classmethod
    def variable(cls, index: int) -> "NcPoly":
        return cls({(index,): Fraction(1)})

    @classmethod
    def monomial(cls, word: Word, coeff: Fraction | int = 1) -> "NcPoly":
        return cls({tuple(word): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def items(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self.terms.items())

    def variables(self) -> set[int]:
        return {v for word in self.terms for v in word}

    def multilinear_arity(self) -> int | None:
        """Arity n if every word is a permutation of 1..n, else None."""
        if not self.terms:
            return None
        lengths = {len(w) for w in self.terms}
        if len(lengths) != 1:
            return None
        n = lengths.pop()
        target = list(range(1, n + 1))
        if all(sorted(w) == target for w in self.terms):
            return n
        return None

    def add(self, other: "NcPoly") -> "NcPoly":
        out = dict(self.terms)
        for word, value in other.terms.items():
            s = out.get(word, Fraction(0)) + value
            if s:
                out[word] = s
            else:
                out.pop(word, None)
        result = NcPoly()
        result.terms = out
        return result

    def sub(self, other: "NcPoly") -> "NcPoly":
        return self.add(other.scale(-1))

    def scale(self, factor: Fraction | int) -> "NcPoly":
        factor = as_fraction(factor)
        result = NcPoly()
        if factor:
            result.terms = {w: c * factor for w, c in self.terms.items()}
        return result

    def mul(self, other: "NcPoly") -> "NcPoly":
        accum: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                value = accum.get(word, Fraction(0)) + c1 * c2
                if value:
                    accum[word] = value
                else:
                    accum.pop(word, None)
        result = NcPoly()
        result.terms = accum
        return result

    def pow(self, exponent: int) -> "NcPoly":
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        result = NcPoly.one()
        for _ in range(exponent):
            result = result.mul(self)
        return result

    __add__ = add
    __sub__ = sub
    __mul__ = mul

    def __neg__(self) -> "NcPoly":
        return self.scale(-1)

    def __rmul__(self, factor: Fraction | int) -> "NcPoly":
        return self.scale(factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self) -> str:
        return f"NcPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(poly: NcPoly) -> str:
    """Canonical text; variable terms always carry an explicit coefficient."""
    if not poly.terms:
        return "0"
    parts: list[str] = []
    for word in sorted(poly.terms):
        coeff = poly.terms[word]
        magnitude = format_rational(abs(coeff))
        if word:
            body = magnitude + "*" + "*".join(f"x{v}" for v in word)
        else:
            body = magnitude
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


class _Parser:
    """Recursive-descent parser for the grammar in the module docstring."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str) -> PolyParseError:
        return PolyParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, char: str) -> None:
        if self.peek() != char:
            raise self.error(f"expected {char!r}")
        self.pos += 1

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start : self.pos])

    def parse(self) -> NcPoly:
        result = self.poly()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input")
        return result

    def poly(self) -> NcPoly:
        negate = False
        if self.peek() == "-":
            self.pos += 1
            negate = True
        result = self.term()
        if negate:
            result = -result
        while True:
            op = self.peek()
            if op == "+":
                self.pos += 1
                result = result + self.term()
            elif op == "-":
                self.pos += 1
                result = result - self.term()
            else:
                return result

    def term(self) -> NcPoly:
        result = self.factor()
        while self.peek() == "*":
            self.pos += 1
            result = result.mul(self.factor())
        return result

    def factor(self) -> NcPoly:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            return base.pow(self.natural())
        return base

    def atom(self) -> NcPoly:
        char = self.peek()
        if char == "(":
            self.pos += 1
            inner = self.poly()
            self.take(")")
            return inner
        if char == "x":
            self.pos += 1
            index_pos = self.pos
            index = self.natural()
            if index == 0:
                self.pos = index_pos
                raise self.error("variable index must be >= 1")
            return NcPoly.variable(index)
        if char.isdigit():
            numerator = self.natural()
            if self.peek() == "/":
                self.pos += 1
                denom_pos = self.pos
                denominator = self.natural()
                if denominator == 0:
                    self.pos = denom_pos
                    raise self.error("denominator must be positive")
                return NcPoly.constant(Fraction(numerator, denominator))
            return NcPoly.constant(Fraction(numerator))
        raise self.error("expected a rational, variable, or parenthesized group")


def parse_poly(text: str) -> NcPoly:
    """Parse polynomial text; raises PolyParseError with the failure offset."""
    return _Parser(text).parse()


def operad_to_poly(theta: OperadElement) -> NcPoly:
    """Isomorphism onto multilinear polynomials: a permutation maps to the
    monomial spelled by its sequence."""
    result = NcPoly()
    result.terms = {perm.seq: coeff for perm, coeff in theta.terms.items()}
    return result


def poly_to_operad(poly: NcPoly) -> OperadElement:
    """Inverse translation; rejects anything that is not multilinear."""
    arity = poly.multilinear_arity()
    if arity is None:
        raise ValueError(
            f"not a multilinear polynomial: {format_poly(poly)}"
        )
    result = OperadElement(arity)
    result.terms = {Permutation(word): coeff for word, coeff in poly.terms.items()}
    return result


def act_poly(poly: NcPoly, tau: Permutation) -> NcPoly:
    """Right action on multilinear polynomials: letter i becomes the i-th
    entry of tau's sequence (the inverse image of i)."""
    arity = poly.multilinear_arity()
    if arity is None:
        raise ValueError("the action is defined on multilinear polynomials only")
    if arity != tau.arity:
        raise ArityMismatch(f"arity mismatch: {arity} vs {tau.arity}")
    seq = tau.seq
    result = NcPoly()
    result.terms = {
        tuple(seq[v - 1] for v in word): coeff for word, coeff in poly.terms.items()
    }
    return result


def _multidegree(word: Word) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for v in word:
        counts[v] = counts.get(v, 0) + 1
    return tuple(sorted(counts.items()))


def _polarize(poly: NcPoly, variable: int, fresh_start: int) -> tuple[NcPoly, int]:
    """Replace the d occurrences of `variable` (same d in every term of a
    multihomogeneous component) by d fresh variables, summed over all d!
    assignments.  Returns the new polynomial and the next unused index."""
    degree = None
    accum: dict[Word, Fraction] = {}
    for word, coeff in poly.terms.items():
        positions = [i for i, v in enumerate(word) if v == variable]
        if degree is None:
            degree = len(positions)
        fresh = list(range(fresh_start, fresh_start + len(positions)))
        for assignment in _itertools_permutations(fresh):
            new_word = list(word)
            for pos, fresh_var in zip(positions, assignment):
                new_word[pos] = fresh_var
            key = tuple(new_word)
            value = accum.get(key, Fraction(0)) + coeff
            if value:
                accum[key] = value
            else:
                accum.pop(key, None)
    result = NcPoly()
    result.terms = accum
    return result, fresh_start + (degree or 0)


def _renumber_by_first_occurrence(poly: NcPoly) -> NcPoly:
    mapping: dict[int, int] = {}
    for word in sorted(poly.terms):
        for v in word:
            if v not in mapping:
                mapping[v] = len(mapping) + 1
    result = NcPoly()
    result.terms = {
        tuple(mapping[v] for v in word): coeff for word, coeff in poly.terms.items()
    }
    return result


def multilinearize(poly: NcPoly) -> list[NcPoly]:
    """Full linearization: split into multihomogeneous components, polarize
    every repeated variable into fresh ones, and renumber canonically.

    In characteristic zero each output vanishes wherever the input does,
    and the input is recoverable from the outputs by identifying variables,
    so the set captures the same identities.  Degrees never grow.
    """
    if poly.is_zero():
        raise ValueError("cannot multilinearize the zero polynomial")
    components: dict[tuple[tuple[int, int], ...], dict[Word, Fraction]] = {}
    for word, coeff in poly.terms.items():
        components.setdefault(_multidegree(word), {})[word] = coeff
    results = []
    for degree_profile, terms in sorted(components.items()):
        component = NcPoly()
        component.terms = dict(terms)
        fresh_start = max((v for v, _ in degree_profile), default=0) + 1
        for variable, degree in degree_profile:
            if degree > 1:
                component, fresh_start = _polarize(component, variable, fresh_start)
        results.append(_renumber_by_first_occurrence(component))
    return results

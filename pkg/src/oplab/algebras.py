"""Finite-dimensional unital algebras given by structure constants.

An algebra is a basis with a multiplication table (b_i * b_j expanded in
coordinates) and a distinguished unit vector; associativity and the unit
laws are checked exhaustively at construction time.  Operad elements and
noncommutative polynomials evaluate against tuples of elements with
exact arithmetic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .freealg import NcPoly, format_poly, multilinearize, poly_to_operad
from .linalg import SparseVector, as_fraction, format_rational
from .operad import OperadElement

__all__ = [
    "AlgebraElement",
    "AlgebraError",
    "StructureAlgebra",
    "algebra_from_spec",
    "direct_sum",
    "evaluate",
    "evaluate_nullary",
    "evaluate_poly",
    "grassmann_algebra",
    "IdentityCheckInconsistency",
    "is_identity",
    "is_identity_general",
    "matrix_algebra",
    "tensor_product",
]


class AlgebraError(ValueError):
    """Raised for malformed structure constants or mismatched operands."""


class StructureAlgebra:
    """Unital associative algebra with an explicit multiplication table."""

    __slots__ = ("name", "labels", "dim", "table", "unit", "_mono", "_zero_overlap_masks")

    def __init__(
        self,
        labels: Sequence[str],
        table: Sequence[Sequence[SparseVector]],
        unit: SparseVector,
        name: str = "custom",
    ) -> None:
        dim = len(labels)
        if dim == 0:
            raise AlgebraError("algebra must have positive dimension")
        if len(table) != dim or any(len(row) != dim for row in table):
            raise AlgebraError("structure-constant table must be dim x dim")
        for row in table:
            for vec in row:
                if vec.dimension != dim:
                    raise AlgebraError("table entries must have the algebra dimension")
        if unit.dimension != dim:
            raise AlgebraError("unit vector must have the algebra dimension")
        self.name = name
        self.labels = list(labels)
        self.dim = dim
        self.table = [list(row) for row in table]
        self.unit = unit
        self._mono = self._monomial_table()
        # Optional metadata set by constructors that can guarantee it:
        # masks such that overlapping factors annihilate any basis product.
        self._zero_overlap_masks: list[int] | None = None
        self._validate()

    def _monomial_table(self) -> list[list[tuple[int, Fraction] | None]] | None:
        mono: list[list[tuple[int, Fraction] | None]] = []
        for row in self.table:
            mono_row: list[tuple[int, Fraction] | None] = []
            for vec in row:
                if len(vec.entries) > 1:
                    return None
                if vec.entries:
                    ((idx, coeff),) = vec.entries.items()
                    mono_row.append((idx, coeff))
                else:
                    mono_row.append(None)
            mono.append(mono_row)
        return mono

    def _validate(self) -> None:
        for i in range(self.dim):
            b = SparseVector.basis_vector(self.dim, i)
            if self.multiply_coords(self.unit, b) != b or self.multiply_coords(b, self.unit) != b:
                raise AlgebraError(f"unit law fails on basis element {self.labels[i]}")
        for i in range(self.dim):
            for j in range(self.dim):
                left = self.table[i][j]
                for k in range(self.dim):
                    lhs = self.multiply_coords(left, SparseVector.basis_vector(self.dim, k))
                    rhs = self.multiply_coords(
                        SparseVector.basis_vector(self.dim, i), self.table[j][k]
                    )
                    if lhs != rhs:
                        raise AlgebraError(
                            "associativity fails on basis triple "
                            f"({self.labels[i]}, {self.labels[j]}, {self.labels[k]})"
                        )

    def multiply_coords(self, a: SparseVector, b: SparseVector) -> SparseVector:
        """Bilinear extension of the table to coordinate vectors."""
        accum: dict[int, Fraction] = {}
        table = self.table
        for i, ca in a.entries.items():
            row = table[i]
            for j, cb in b.entries.items():
                scale = ca * cb
                for k, c in row[j].entries.items():
                    value = accum.get(k, Fraction(0)) + scale * c
                    if value:
                        accum[k] = value
                    else:
                        accum.pop(k, None)
        out = SparseVector(self.dim)
        out.entries = accum
        return out

    def basis_element(self, index: int) -> "AlgebraElement":
        return AlgebraElement(self, SparseVector.basis_vector(self.dim, index))

    def unit_element(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def element(self, coords: Iterable[Fraction | int | str]) -> "AlgebraElement":
        return AlgebraElement(self, SparseVector.from_dense(list(coords)))

    def zero_element(self) -> "AlgebraElement":
        return AlgebraElement(self, SparseVector(self.dim))

    def __repr__(self) -> str:
        return f"StructureAlgebra({self.name!r}, dim={self.dim})"


class AlgebraElement:
    """Element of a StructureAlgebra in basis coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: StructureAlgebra, coords: SparseVector) -> None:
        if coords.dimension != algebra.dim:
            raise AlgebraError("coordinate length must match the algebra dimension")
        self.algebra = algebra
        self.coords = coords

    def _check(self, other: "AlgebraElement") -> None:
        if self.algebra is not other.algebra:
            raise AlgebraError("elements belong to different algebras")

    def add(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, self.coords.add(other.coords))

    def sub(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, self.coords.sub(other.coords))

    def scale(self, factor: Fraction | int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.coords.scale(factor))

    def mul(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(
            self.algebra, self.algebra.multiply_coords(self.coords, other.coords)
        )

    __add__ = add
    __sub__ = sub
    __mul__ = mul

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def __rmul__(self, factor: Fraction | int) -> "AlgebraElement":
        return self.scale(factor)

    def is_zero(self) -> bool:
        return self.coords.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __repr__(self) -> str:
        body = " + ".join(
            f"{format_rational(c)}*{self.algebra.labels[i]}"
            for i, c in sorted(self.coords.entries.items())
        )
        return f"<{body or '0'} in {self.algebra.name}>"


@lru_cache(maxsize=None)
def matrix_algebra(k: int) -> StructureAlgebra:
    """Full k x k matrix algebra on the matrix units e_pq (row-major order);
    e_pq * e_rs = [q == r] e_ps and the unit is the sum of the e_pp."""
    if k < 1:
        raise AlgebraError("matrix algebra needs k >= 1")
    pairs = [(p, q) for p in range(1, k + 1) for q in range(1, k + 1)]
    index = {pq: i for i, pq in enumerate(pairs)}
    dim = k * k
    labels = [f"e{p}{q}" for p, q in pairs]
    table = []
    for p, q in pairs:
        row = []
        for r, s in pairs:
            if q == r:
                row.append(SparseVector(dim, {index[(p, s)]: Fraction(1)}))
            else:
                row.append(SparseVector(dim))
        table.append(row)
    unit = SparseVector(dim, {index[(p, p)]: Fraction(1) for p in range(1, k + 1)})
    return StructureAlgebra(labels, table, unit, name=f"matrix({k})")


@lru_cache(maxsize=None)
def grassmann_algebra(generators: int) -> StructureAlgebra:
    """Exterior algebra on the given number of anticommuting generators.

    Basis e_S for subsets S, ordered by (|S|, lexicographic); the product
    e_S * e_T is 0 when the subsets meet and otherwise (-1)^inv(S,T)
    e_{S union T}, where inv(S,T) counts pairs s > t.
    """
    if generators < 0:
        raise AlgebraError("generator count must be nonnegative")
    subsets: list[tuple[int, ...]] = []
    for size in range(generators + 1):
        subsets.extend(combinations(range(1, generators + 1), size))
    index = {s: i for i, s in enumerate(subsets)}
    dim = len(subsets)
    labels = ["1"] + ["e" + "".join(map(str, s)) for s in subsets[1:]]
    table = []
    for s in subsets:
        row = []
        s_set = set(s)
        for t in subsets:
            if s_set & set(t):
                row.append(SparseVector(dim))
            else:
                inversions = sum(1 for a in s for b in t if a > b)
                sign = -1 if inversions % 2 else 1
                merged = tuple(sorted(s + t))
                row.append(SparseVector(dim, {index[merged]: Fraction(sign)}))
        table.append(row)
    unit = SparseVector(dim, {0: Fraction(1)})
    algebra = StructureAlgebra(labels, table, unit, name=f"grassmann({generators})")
    # Any basis product with two factors of overlapping support vanishes in
    # every order, and supports merge under products; record that as masks.
    masks = [sum(1 << (g - 1) for g in s) for s in subsets]
    algebra._zero_overlap_masks = masks
    return algebra


def direct_sum(parts: Sequence[StructureAlgebra]) -> StructureAlgebra:
    """Componentwise product algebra on the concatenated bases."""
    if not parts:
        raise AlgebraError("direct sum needs at least one part")
    dim = sum(a.dim for a in parts)
    offsets = []
    total = 0
    for a in parts:
        offsets.append(total)
        total += a.dim
    labels = [
        f"{label}#{k}" for k, a in enumerate(parts) for label in a.labels
    ]
    table: list[list[SparseVector]] = [
        [SparseVector(dim) for _ in range(dim)] for _ in range(dim)
    ]
    unit_entries: dict[int, Fraction] = {}
    for k, a in enumerate(parts):
        off = offsets[k]
        for i in range(a.dim):
            for j in range(a.dim):
                entries = {
                    off + idx: c for idx, c in a.table[i][j].entries.items()
                }
                table[off + i][off + j] = SparseVector(dim, entries)
        for idx, c in a.unit.entries.items():
            unit_entries[off + idx] = c
    unit = SparseVector(dim, unit_entries)
    name = " (+) ".join(a.name for a in parts)
    return StructureAlgebra(labels, table, unit, name=name)


def tensor_product(left: StructureAlgebra, right: StructureAlgebra) -> StructureAlgebra:
    """Tensor product algebra on the basis b_i (x) c_j."""
    dim = left.dim * right.dim
    labels = [f"{a}(x){b}" for a in left.labels for b in right.labels]

    def flat(i: int, j: int) -> int:
        return i * right.dim + j

    table: list[list[SparseVector]] = []
    for i1 in range(left.dim):
        for j1 in range(right.dim):
            row = []
            for i2 in range(left.dim):
                for j2 in range(right.dim):
                    lvec = left.table[i1][i2]
                    rvec = right.table[j1][j2]
                    entries = {
                        flat(a, b): ca * cb
                        for a, ca in lvec.entries.items()
                        for b, cb in rvec.entries.items()
                    }
                    row.append(SparseVector(dim, entries))
            table.append(row)
    unit_entries = {
        flat(a, b): ca * cb
        for a, ca in left.unit.entries.items()
        for b, cb in right.unit.entries.items()
    }
    unit = SparseVector(dim, unit_entries)
    return StructureAlgebra(labels, table, unit, name=f"{left.name}(x){right.name}")


def algebra_from_spec(spec: Mapping) -> StructureAlgebra:
    """Build an algebra from its JSON description.

    Supported forms: {"type":"matrix","k":2}, {"type":"grassmann",
    "generators":4}, {"type":"custom","basis":[...],"unit":[...],
    "table":[[[...]]]} with rationals as numbers or "p/q" strings, and
    {"type":"direct_sum","parts":[...]} with nested descriptions.
    """
    try:
        kind = spec["type"]
    except (TypeError, KeyError) as exc:
        raise AlgebraError("algebra spec needs a 'type' field") from exc
    if kind == "matrix":
        return matrix_algebra(int(spec["k"]))
    if kind == "grassmann":
        return grassmann_algebra(int(spec["generators"]))
    if kind == "direct_sum":
        return direct_sum([algebra_from_spec(part) for part in spec["parts"]])
    if kind == "custom":
        labels = [str(s) for s in spec["basis"]]
        dim = len(labels)
        raw_table = spec["table"]
        if len(raw_table) != dim:
            raise AlgebraError("custom table has the wrong number of rows")
        table = []
        for row in raw_table:
            if len(row) != dim:
                raise AlgebraError("custom table has a malformed row")
            table.append([SparseVector.from_dense([as_fraction(v) for v in vec]) for vec in row])
        for row in table:
            for vec in row:
                if vec.dimension != dim:
                    raise AlgebraError("custom table entry has the wrong length")
        unit = SparseVector.from_dense([as_fraction(v) for v in spec["unit"]])
        return StructureAlgebra(labels, table, unit, name="custom")
    raise AlgebraError(f"unknown algebra type {kind!r}")


def evaluate(theta: OperadElement, args: Sequence[AlgebraElement]) -> AlgebraElement:
    """Apply the n-ary operation of theta: each permutation term multiplies
    the arguments in the order spelled by its sequence."""
    if len(args) != theta.arity:
        raise AlgebraError(
            f"arity {theta.arity} element applied to {len(args)} arguments"
        )
    if args:
        algebra = args[0].algebra
        for arg in args[1:]:
            if arg.algebra is not algebra:
                raise AlgebraError("evaluation arguments must share one algebra")
    else:
        raise AlgebraError("evaluation of arity-0 elements needs an algebra")
    accum = SparseVector(algebra.dim)
    for perm, coeff in theta.terms.items():
        prod = args[perm.seq[0] - 1].coords
        for v in perm.seq[1:]:
            prod = algebra.multiply_coords(prod, args[v - 1].coords)
            if not prod.entries:
                break
        accum = accum.add(prod.scale(coeff))
    return AlgebraElement(algebra, accum)


def evaluate_nullary(theta: OperadElement, algebra: StructureAlgebra) -> AlgebraElement:
    """Arity-0 evaluation: the coefficient of the empty permutation times
    the unit of the algebra."""
    if theta.arity != 0:
        raise AlgebraError("evaluate_nullary needs an arity-0 element")
    total = sum(theta.terms.values(), Fraction(0))
    return AlgebraElement(algebra, algebra.unit.scale(total))


def evaluate_poly(
    poly: NcPoly, assignment: Mapping[int, AlgebraElement], algebra: StructureAlgebra
) -> AlgebraElement:
    """Substitute elements for variables and evaluate; the empty word maps
    to the unit."""
    result = SparseVector(algebra.dim)
    for word, coeff in poly.terms.items():
        if word:
            try:
                prod = assignment[word[0]].coords
                for v in word[1:]:
                    prod = algebra.multiply_coords(prod, assignment[v].coords)
            except KeyError as exc:
                raise AlgebraError(f"no value assigned to x{exc.args[0]}") from exc
        else:
            prod = algebra.unit
        result = result.add(prod.scale(coeff))
    return AlgebraElement(algebra, result)


def is_identity(poly: NcPoly, algebra: StructureAlgebra) -> bool:
    """Exhaustive identity test for a multilinear polynomial.

    By multilinearity it suffices to evaluate on every tuple of basis
    elements, so the test enumerates all dim^n tuples.
    """
    theta = poly_to_operad(poly)
    n = theta.arity
    if n == 0:
        return evaluate_nullary(theta, algebra).is_zero()
    mono = algebra._mono
    dim = algebra.dim
    if mono is not None:
        seqs = [perm.seq for perm in theta.terms]
        coeffs = [theta.terms[perm] for perm in theta.terms]
        for tup in product(range(dim), repeat=n):
            accum: dict[int, Fraction] = {}
            for seq, coeff in zip(seqs, coeffs):
                entry: tuple[int, Fraction] | None = (tup[seq[0] - 1], Fraction(1))
                for v in seq[1:]:
                    step = mono[entry[0]][tup[v - 1]]
                    if step is None:
                        entry = None
                        break
                    entry = (step[0], entry[1] * step[1])
                if entry is None:
                    continue
                idx, c = entry
                value = accum.get(idx, Fraction(0)) + coeff * c
                if value:
                    accum[idx] = value
                else:
                    accum.pop(idx, None)
            if accum:
                return False
        return True
    basis = [algebra.basis_element(i) for i in range(dim)]
    for tup in product(range(dim), repeat=n):
        args = [basis[i] for i in tup]
        if not evaluate(theta, args).is_zero():
            return False
    return True


class IdentityCheckInconsistency(RuntimeError):
    """The multilinear reduction and direct random evaluation disagreed."""


def is_identity_general(
    poly: NcPoly,
    algebra: StructureAlgebra,
    *,
    trials: int = 8,
    seed: int = 0,
) -> bool:
    """Identity test for arbitrary polynomials via full linearization.

    In characteristic zero the polynomial is an identity exactly when all
    its multilinearizations are; the result is cross-checked by direct
    evaluation on random elements.
    """
    if poly.is_zero():
        raise ValueError("the zero polynomial is excluded")
    parts = multilinearize(poly)
    verdict = all(is_identity(part, algebra) for part in parts)
    rng = random.Random(seed)
    variables = sorted(poly.variables())
    for _ in range(trials):
        assignment = {
            v: algebra.element(
                [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(algebra.dim)]
            )
            for v in variables
        }
        value = evaluate_poly(poly, assignment, algebra)
        if verdict and not value.is_zero():
            raise IdentityCheckInconsistency(
                f"{format_poly(poly)} passed the multilinear test but a random "
                "substitution is nonzero"
            )
    return verdict

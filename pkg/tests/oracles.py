"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written from scratch against the
mathematical definitions (words, substitution, dense Gaussian
elimination) and shares no algorithmic code with the package.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from oplab import NcPoly, Permutation, StructureAlgebra


def word_substitution_compose(outer: Permutation, parts: list[Permutation]) -> Permutation:
    """Block composition computed through monomial substitution.

    The word of a permutation is its sequence read as letters.  Substitute
    the word of parts[i-1], on letters shifted past all earlier slots, for
    the letter i of the outer word, then read back a permutation.
    """
    offsets = []
    total = 0
    for part in parts:
        offsets.append(total)
        total += part.arity
    replacement = {
        i + 1: [offsets[i] + v for v in parts[i].seq] for i in range(len(parts))
    }
    word: list[int] = []
    for letter in outer.seq:
        word.extend(replacement[letter])
    return Permutation(tuple(word))


def poly_substitute(poly: NcPoly, assignment: dict[int, NcPoly]) -> NcPoly:
    """Substitute polynomials for variables (words concatenate)."""
    result = NcPoly.zero()
    for word, coeff in poly.terms.items():
        term = NcPoly.constant(coeff)
        for letter in word:
            term = term.mul(assignment.get(letter, NcPoly.variable(letter)))
        result = result.add(term)
    return result


def substitute_slot(poly: NcPoly, slot: int, inner: NcPoly, inner_arity: int) -> NcPoly:
    """Substitute a multilinear polynomial into one letter slot of another.

    Letter `slot` is replaced by `inner` shifted onto letters
    slot..slot+inner_arity-1; letters above `slot` shift up to make room.
    """
    assignment: dict[int, NcPoly] = {}
    outer_arity = poly.multilinear_arity()
    assert outer_arity is not None
    shifted_inner = NcPoly(
        {
            tuple(v + slot - 1 for v in word): c
            for word, c in inner.terms.items()
        }
    )
    for letter in range(1, outer_arity + 1):
        if letter == slot:
            assignment[letter] = shifted_inner
        elif letter > slot:
            assignment[letter] = NcPoly.variable(letter + inner_arity - 1)
        else:
            assignment[letter] = NcPoly.variable(letter)
    return poly_substitute(poly, assignment)


def substitute_all_slots(poly: NcPoly, inners: list[NcPoly]) -> NcPoly:
    """Simultaneous substitution of one multilinear polynomial per letter,
    each on its own shifted letter range."""
    arities = []
    for inner in inners:
        arity = inner.multilinear_arity()
        assert arity is not None
        arities.append(arity)
    offsets = []
    total = 0
    for arity in arities:
        offsets.append(total)
        total += arity
    assignment = {
        i
        + 1: NcPoly(
            {
                tuple(v + offsets[i] for v in word): c
                for word, c in inners[i].terms.items()
            }
        )
        for i in range(len(inners))
    }
    return poly_substitute(poly, assignment)


def dense_rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form by plain dense elimination."""
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    cols = len(rows[0])
    pivots: list[int] = []
    row_at = 0
    for col in range(cols):
        pivot_row = None
        for r in range(row_at, len(rows)):
            if rows[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[row_at], rows[pivot_row] = rows[pivot_row], rows[row_at]
        scale = rows[row_at][col]
        rows[row_at] = [v / scale for v in rows[row_at]]
        for r in range(len(rows)):
            if r != row_at and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[row_at])]
        pivots.append(col)
        row_at += 1
        if row_at == len(rows):
            break
    return [rows[i] for i in range(row_at)], pivots


def dense_rank(matrix: list[list[Fraction]]) -> int:
    return len(dense_rref(matrix)[0])


def dense_in_span(rows: list[list[Fraction]], target: list[Fraction]) -> bool:
    """Membership via the rank criterion on the augmented matrix."""
    base = dense_rank(rows)
    return dense_rank(rows + [target]) == base


def dense_kernel(matrix: list[list[Fraction]], cols: int) -> list[list[Fraction]]:
    """Basis of {v : M v = 0} from the RREF free columns."""
    reduced, pivots = dense_rref(matrix)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    kernel = []
    for f in free:
        vec = [Fraction(0)] * cols
        vec[f] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            vec[pivot] = -row[f]
        kernel.append(vec)
    return kernel


def naive_identity_rows(algebra: StructureAlgebra, n: int) -> list[list[Fraction]]:
    """Evaluation rows over ALL ordered basis tuples (the full dim^n sweep),
    one row per (tuple, coordinate), columns indexed by permutations."""
    from oplab import all_permutations

    perms = all_permutations(n)
    rows = []
    dim = algebra.dim
    for tup in product(range(dim), repeat=n):
        by_coord: dict[int, list[Fraction]] = {}
        for si, perm in enumerate(perms):
            vec = algebra.basis_element(tup[perm.seq[0] - 1] ).coords
            for v in perm.seq[1:]:
                vec = algebra.multiply_coords(
                    vec, algebra.basis_element(tup[v - 1]).coords
                )
            for coord, c in vec.entries.items():
                by_coord.setdefault(coord, [Fraction(0)] * len(perms))[si] = c
        rows.extend(by_coord.values())
    return rows

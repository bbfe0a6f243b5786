"""Bounded-arity slices of operadic ideals.

A slice is the arity-n component of an ideal, stored as a canonical RREF
basis in the lexicographic permutation coordinates.  Slices arise three
ways: spanned from a generator set (all unit paddings and contractions
of each generator, closed under the right symmetric-group action),
as a compositional closure fixpoint (an independent algorithm kept for
cross-validation), and as the kernel of the evaluation map against a
concrete algebra.

Evaluation kernels exploit one exact reduction: the evaluation row of a
permuted argument tuple is a right-translate of the representative
tuple's row, so it suffices to enumerate unordered tuples and close the
row space under the action afterwards.  This is lossless; nothing is
sampled.
"""

from __future__ import annotations

import hashlib
import math
import os
import tempfile
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .algebras import StructureAlgebra
from .freealg import NcPoly, operad_to_poly, poly_to_operad
from .linalg import RowBasis, SparseVector, format_rational, parse_rational
from .operad import (
    OperadElement,
    act,
    format_element,
    from_vector,
    full_compose,
    partial_compose,
    to_vector,
)
from .perms import Permutation, all_permutations, multiply, perm_index

__all__ = [
    "BudgetExceeded",
    "ClosureReport",
    "GeneratorSet",
    "IdealSlice",
    "RoundtripReport",
    "UNITAL",
    "NONUNITAL",
    "codimension",
    "full_slice_map",
    "generator_set_hash",
    "ideal_slice_closure",
    "ideal_slice_spanning",
    "identities_slice",
    "load_slice_file",
    "membership",
    "min_identity_degree",
    "poly_generated_slice",
    "roundtrip_check",
    "save_slice_file",
    "slice_cache_path",
    "slice_polynomials",
    "slices_equal",
    "verify_ideal_closure",
]

UNITAL = "unital"
NONUNITAL = "nonunital"
DEFAULT_BUDGET = 10**7

CACHE_MAGIC = "OPIDEAL v1"


class BudgetExceeded(RuntimeError):
    """The requested exhaustive enumeration is larger than the budget."""

    def __init__(self, needed: int, budget: int) -> None:
        super().__init__(
            f"enumeration needs {needed} tuple evaluations, budget is {budget}"
        )
        self.needed = needed
        self.budget = budget


class GeneratorSet:
    """Nonzero operad elements (mixed arities) plus the composition mode."""

    __slots__ = ("elements", "mode")

    def __init__(self, elements: Iterable[OperadElement], mode: str = UNITAL) -> None:
        elements = tuple(elements)
        if any(e.is_zero() for e in elements):
            raise ValueError("generator sets must not contain the zero element")
        if mode not in (UNITAL, NONUNITAL):
            raise ValueError(f"mode must be {UNITAL!r} or {NONUNITAL!r}")
        self.elements = elements
        self.mode = mode

    def canonical_text(self) -> str:
        return "\n".join(sorted(format_element(e) for e in self.elements))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorSet):
            return NotImplemented
        return self.mode == other.mode and set(self.elements) == set(other.elements)

    def __repr__(self) -> str:
        return f"GeneratorSet({len(self.elements)} elements, mode={self.mode})"


class IdealSlice:
    """Arity-n slice of an ideal: a canonical RREF basis inside kS_n."""

    __slots__ = ("arity", "basis")

    def __init__(self, arity: int, basis: RowBasis) -> None:
        if basis.dimension != math.factorial(arity):
            raise ValueError(
                f"basis dimension {basis.dimension} is not {arity}!"
            )
        self.arity = arity
        self.basis = basis

    @classmethod
    def zero(cls, arity: int) -> "IdealSlice":
        return cls(arity, RowBasis(math.factorial(arity)))

    @property
    def dim(self) -> int:
        return self.basis.rank

    def elements(self) -> list[OperadElement]:
        return [from_vector(self.arity, row) for row in self.basis.rows()]

    def contains(self, theta: OperadElement) -> bool:
        if theta.arity != self.arity:
            return False
        return self.basis.contains(to_vector(theta))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealSlice):
            return NotImplemented
        return self.arity == other.arity and self.basis == other.basis

    def __repr__(self) -> str:
        return f"IdealSlice(arity={self.arity}, dim={self.dim})"


@lru_cache(maxsize=None)
def _action_tables(arity: int) -> tuple[tuple[int, ...], ...]:
    """Index translation tables for right multiplication by a generating
    pair of S_arity (adjacent swap and full cycle)."""
    if arity < 2:
        return ()
    swap = Permutation((2, 1) + tuple(range(3, arity + 1)))
    cycle = Permutation(tuple(range(2, arity + 1)) + (1,))
    generators = [swap] if arity == 2 else [swap, cycle]
    perms = all_permutations(arity)
    tables = []
    for g in generators:
        tables.append(tuple(perm_index(multiply(p, g)) for p in perms))
    return tuple(tables)


def _saturate_under_action(basis: RowBasis, arity: int) -> None:
    """Close the row space of `basis` under the right S_arity-action."""
    tables = _action_tables(arity)
    if not tables:
        return
    queue = basis.row_dicts()
    dim = basis.dimension
    while queue:
        row = queue.pop()
        for table in tables:
            vec = SparseVector(dim)
            vec.entries = {table[i]: c for i, c in row.items()}
            if basis.insert(vec):
                queue.append(vec.entries)


def _compositions(total: int, parts: int, minimum: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if minimum * parts > total:
        return
    for head in range(minimum, total - minimum * (parts - 1) + 1):
        for tail in _compositions(total - head, parts - 1, minimum):
            yield (head,) + tail


def _spanning_core_vectors(gens: GeneratorSet, n: int) -> Iterator[SparseVector]:
    """The spanning family before the symmetric-group closure: every
    generator wrapped as 1_3 o (1_r, theta o (1_{s_1},...,1_{s_l}), 1_t)
    with r + sum(s) + t = n; contractions (s_i = 0) only in unital mode."""
    s_min = 0 if gens.mode == UNITAL else 1
    outer = OperadElement.unit(3)
    for theta in gens.elements:
        slots = theta.arity
        for r in range(n + 1):
            left = OperadElement.unit(r)
            for t in range(n - r + 1):
                right = OperadElement.unit(t)
                remainder = n - r - t
                for s in _compositions(remainder, slots, s_min):
                    if slots:
                        middle = full_compose(
                            theta, [OperadElement.unit(k) for k in s]
                        )
                    else:
                        middle = theta
                    element = full_compose(outer, [left, middle, right])
                    if not element.is_zero():
                        yield to_vector(element)


def ideal_slice_spanning(
    gens: GeneratorSet,
    n: int,
    *,
    cache_dir: str | Path | None = None,
    stats: dict | None = None,
) -> IdealSlice:
    """Arity-n slice of the ideal generated by `gens`, by direct spanning."""
    if n < 0:
        raise ValueError("arity must be nonnegative")
    path = None
    if cache_dir is not None:
        path = slice_cache_path(cache_dir, gens, n)
        if path.exists():
            cached, mode = load_slice_file(path)
            if mode == gens.mode and cached.arity == n:
                if stats is not None:
                    stats["cache_hit"] = True
                return cached
    if stats is not None:
        stats["cache_hit"] = False
    basis = RowBasis(math.factorial(n))
    seen: set[tuple] = set()
    for vec in _spanning_core_vectors(gens, n):
        key = tuple(sorted(vec.entries.items()))
        if key in seen:
            continue
        seen.add(key)
        basis.insert(vec)
    _saturate_under_action(basis, n)
    result = IdealSlice(n, basis)
    if path is not None:
        save_slice_file(path, result, gens.mode)
    return result


def _closure_bases(gens: GeneratorSet, hi: int) -> dict[int, RowBasis]:
    """Fixpoint of the compositional closure moves inside arities <= hi.

    Moves: right action by the generating pair of S_m, padding with the
    binary identity on either side, and (unital mode) contraction with
    the nullary identity.  Written independently of the spanning path.
    """
    lo = 0 if gens.mode == UNITAL else 1
    unital = gens.mode == UNITAL
    bases = {m: RowBasis(math.factorial(m)) for m in range(lo, hi + 1)}
    total_capacity = sum(math.factorial(m) for m in range(lo, hi + 1))
    rank_total = 0
    unit2 = OperadElement.unit(2)
    unit0 = OperadElement.unit(0)
    queue: list[OperadElement] = []
    for theta in gens.elements:
        if lo <= theta.arity <= hi and bases[theta.arity].insert(to_vector(theta)):
            queue.append(theta)
            rank_total += 1
    swap_cache: dict[int, list[Permutation]] = {}
    while queue and rank_total < total_capacity:
        theta = queue.pop()
        m = theta.arity
        images: list[OperadElement] = []
        if m >= 2:
            group_gens = swap_cache.get(m)
            if group_gens is None:
                swap = Permutation((2, 1) + tuple(range(3, m + 1)))
                cycle = Permutation(tuple(range(2, m + 1)) + (1,))
                group_gens = [swap] if m == 2 else [swap, cycle]
                swap_cache[m] = group_gens
            for g in group_gens:
                images.append(act(theta, g))
        if m + 1 <= hi:
            for i in range(1, m + 1):
                images.append(partial_compose(theta, i, unit2))
            for j in (1, 2):
                images.append(partial_compose(unit2, j, theta))
        if unital and m >= 1 and m - 1 >= lo:
            for i in range(1, m + 1):
                images.append(partial_compose(theta, i, unit0))
        for image in images:
            if image.is_zero():
                continue
            if bases[image.arity].insert(to_vector(image)):
                queue.append(image)
                rank_total += 1
    return bases


def ideal_slice_closure(
    gens: GeneratorSet,
    n: int,
    headroom: int = 2,
    *,
    verify_stabilization: bool = False,
) -> IdealSlice:
    """Arity-n slice by compositional closure, exploring arities <= n+headroom.

    Elements of arity above n can contract back into arity n (unital
    mode), so the window matters; `verify_stabilization` re-runs with one
    more arity of headroom and warns if the slice grows.
    """
    if n < 0 or headroom < 0:
        raise ValueError("arity and headroom must be nonnegative")
    bases = _closure_bases(gens, n + headroom)
    basis = bases.get(n)
    result = (
        IdealSlice(n, basis) if basis is not None else IdealSlice.zero(n)
    )
    if verify_stabilization:
        wider = _closure_bases(gens, n + headroom + 1).get(n)
        wider_dim = wider.rank if wider is not None else 0
        if wider_dim != result.dim:
            warnings.warn(
                f"closure slice at arity {n} grew from {result.dim} to "
                f"{wider_dim} when headroom increased to {headroom + 1}",
                stacklevel=2,
            )
    return result


def _disjoint_multisets(masks: Sequence[int], n: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing index tuples whose support masks are pairwise disjoint."""
    dim = len(masks)
    prefix: list[int] = []

    def rec(start: int, acc: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for i in range(start, dim):
            m = masks[i]
            if m & acc:
                continue
            prefix.append(i)
            yield from rec(i, acc | m)
            prefix.pop()

    yield from rec(0, 0)


def identities_slice(
    algebra: StructureAlgebra, n: int, *, budget: int = DEFAULT_BUDGET
) -> IdealSlice:
    """All arity-n elements that vanish under every evaluation on the algebra.

    Computed as the kernel of the evaluation row space: one row per
    (argument tuple, output coordinate).  Tuples are enumerated without
    order (permuted tuples give right-translated rows) and the row space
    is closed under the action before the kernel is taken, which is exact.
    The unordered tuple count is charged against the budget; if it does
    not fit the call refuses rather than sampling.
    """
    if n < 1:
        raise ValueError("identity slices are defined for arity >= 1")
    dim = algebra.dim
    needed = math.comb(dim + n - 1, n)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    fact_n = math.factorial(n)
    perm_seqs = [p.seq for p in all_permutations(n)]
    rows = RowBasis(fact_n)
    seen: set[tuple] = set()
    mono = algebra._mono
    masks = algebra._zero_overlap_masks
    if masks is not None and mono is not None:
        tuples: Iterable[tuple[int, ...]] = _disjoint_multisets(masks, n)
    else:
        tuples = combinations_with_replacement(range(dim), n)
    one = Fraction(1)
    basis_vecs = [SparseVector.basis_vector(dim, i) for i in range(dim)]
    for tup in tuples:
        by_coord: dict[int, dict[int, Fraction]] = {}
        if mono is not None:
            for si, seq in enumerate(perm_seqs):
                idx = tup[seq[0] - 1]
                coeff = one
                dead = False
                for v in seq[1:]:
                    step = mono[idx][tup[v - 1]]
                    if step is None:
                        dead = True
                        break
                    idx = step[0]
                    coeff *= step[1]
                if not dead:
                    by_coord.setdefault(idx, {})[si] = coeff
        else:
            for si, seq in enumerate(perm_seqs):
                vec = basis_vecs[tup[seq[0] - 1]]
                for v in seq[1:]:
                    vec = algebra.multiply_coords(vec, basis_vecs[tup[v - 1]])
                    if not vec.entries:
                        break
                for coord, c in vec.entries.items():
                    by_coord.setdefault(coord, {})[si] = c
        for row in by_coord.values():
            key = tuple(sorted(row.items()))
            if key in seen:
                continue
            seen.add(key)
            vec = SparseVector(fact_n)
            vec.entries = dict(row)
            rows.insert(vec)
    _saturate_under_action(rows, n)
    return IdealSlice(n, rows.kernel())


def codimension(
    algebra: StructureAlgebra, n: int, *, budget: int = DEFAULT_BUDGET
) -> int:
    """n! minus the dimension of the arity-n identity slice."""
    return math.factorial(n) - identities_slice(algebra, n, budget=budget).dim


def min_identity_degree(
    algebra: StructureAlgebra, max_arity: int, *, budget: int = DEFAULT_BUDGET
) -> int | None:
    """Least arity <= max_arity with a nonzero identity slice, else None."""
    for n in range(1, max_arity + 1):
        if identities_slice(algebra, n, budget=budget).dim > 0:
            return n
    return None


def membership(
    theta: OperadElement, gens: GeneratorSet, *, cache_dir: str | Path | None = None
) -> bool:
    """True iff theta lies in the generated ideal's slice at its own arity."""
    return ideal_slice_spanning(gens, theta.arity, cache_dir=cache_dir).contains(theta)


def poly_generated_slice(
    polys: Sequence[NcPoly],
    n: int,
    mode: str = UNITAL,
    *,
    cache_dir: str | Path | None = None,
    stats: dict | None = None,
) -> IdealSlice:
    """Slice of the ideal generated by multilinear polynomial generators."""
    gens = GeneratorSet([poly_to_operad(f) for f in polys], mode)
    if not gens.elements:
        return IdealSlice.zero(n)
    return ideal_slice_spanning(gens, n, cache_dir=cache_dir, stats=stats)


def slice_polynomials(slice_: IdealSlice) -> list[NcPoly]:
    """Multilinear polynomial images of the slice basis, in basis order."""
    return [operad_to_poly(theta) for theta in slice_.elements()]


@dataclass
class ClosureReport:
    ok: bool
    checked: int
    failure: str | None = None


def verify_ideal_closure(
    slices: Mapping[int, IdealSlice], max_arity: int, mode: str = UNITAL
) -> ClosureReport:
    """Check that per-arity subspaces behave like ideal slices.

    For every basis element: all right translates stay in the same slice,
    paddings with the binary identity land one arity up (when that slice
    is inside the checked window), and unital contractions land one arity
    down.  A missing arity between 1 and max_arity is a contract violation;
    a missing arity-0 slice defaults to zero.
    """
    for m in range(1, max_arity + 1):
        if m not in slices:
            raise ValueError(f"missing slice for arity {m}")
    unit2 = OperadElement.unit(2)
    unit0 = OperadElement.unit(0)
    zero_by_arity: dict[int, IdealSlice] = {}

    def slice_at(m: int) -> IdealSlice:
        if m in slices:
            return slices[m]
        if m not in zero_by_arity:
            zero_by_arity[m] = IdealSlice.zero(m)
        return zero_by_arity[m]

    checked = 0
    for m in sorted(k for k in slices if k <= max_arity):
        current = slices[m]
        for theta in current.elements():
            if m >= 2:
                for tau in all_permutations(m):
                    checked += 1
                    if not current.contains(act(theta, tau)):
                        return ClosureReport(
                            False,
                            checked,
                            f"arity {m}: right translate by {tau} escapes the slice",
                        )
            if m + 1 <= max_arity:
                target = slice_at(m + 1)
                for i in range(1, m + 1):
                    checked += 1
                    if not target.contains(partial_compose(theta, i, unit2)):
                        return ClosureReport(
                            False,
                            checked,
                            f"arity {m}: padding slot {i} escapes arity {m + 1}",
                        )
                for j in (1, 2):
                    checked += 1
                    if not target.contains(partial_compose(unit2, j, theta)):
                        return ClosureReport(
                            False,
                            checked,
                            f"arity {m}: outer padding slot {j} escapes arity {m + 1}",
                        )
            if mode == UNITAL and m >= 1:
                target = slice_at(m - 1)
                for i in range(1, m + 1):
                    checked += 1
                    image = partial_compose(theta, i, unit0)
                    if not (image.is_zero() or target.contains(image)):
                        return ClosureReport(
                            False,
                            checked,
                            f"arity {m}: contraction at slot {i} escapes arity {m - 1}",
                        )
    return ClosureReport(True, checked)


@dataclass
class RoundtripReport:
    per_arity: dict[int, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.per_arity.values())


def roundtrip_check(gens: GeneratorSet, max_arity: int) -> RoundtripReport:
    """Regenerate each slice from its own polynomial translation.

    For each arity: take the slice of the generated ideal, translate its
    basis to multilinear polynomials, translate back to operad generators,
    and span again; both canonical bases must coincide.
    """
    report = RoundtripReport()
    for n in range(1, max_arity + 1):
        direct = ideal_slice_spanning(gens, n)
        polys = slice_polynomials(direct)
        regenerated = poly_generated_slice(polys, n, gens.mode)
        report.per_arity[n] = regenerated == direct
    return report


def full_slice_map(gens: GeneratorSet, max_arity: int) -> dict[int, IdealSlice]:
    """Spanning slices for every arity up to the bound; arity 0 is included
    in unital mode, where contractions can land there."""
    start = 0 if gens.mode == UNITAL else 1
    return {n: ideal_slice_spanning(gens, n) for n in range(start, max_arity + 1)}


def slices_equal(
    first: GeneratorSet, second: GeneratorSet, max_arity: int
) -> bool:
    """Compare generated ideals arity by arity up to the bound."""
    if first.mode != second.mode:
        raise ValueError("generator sets must use the same mode")
    start = 0 if first.mode == UNITAL else 1
    for n in range(start, max_arity + 1):
        if ideal_slice_spanning(first, n) != ideal_slice_spanning(second, n):
            return False
    return True


# --- slice cache -----------------------------------------------------------


def generator_set_hash(gens: GeneratorSet) -> str:
    """Content hash of the sorted canonical generator texts."""
    digest = hashlib.sha256(gens.canonical_text().encode("utf-8")).hexdigest()
    return digest[:16]


def slice_cache_path(cache_dir: str | Path, gens: GeneratorSet, arity: int) -> Path:
    return Path(cache_dir) / f"{generator_set_hash(gens)}-{gens.mode}-n{arity}.opideal"


def save_slice_file(path: str | Path, slice_: IdealSlice, mode: str) -> None:
    """Write the slice atomically in the cache format."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        CACHE_MAGIC,
        f"arity={slice_.arity} dim={slice_.dim} order=lex mode={mode}",
    ]
    for row in slice_.basis.rows():
        lines.append(" ".join(format_rational(v) for v in row.to_dense()))
    payload = "\n".join(lines) + "\n"
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(payload)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def load_slice_file(path: str | Path) -> tuple[IdealSlice, str]:
    """Read a cached slice; the RREF invariants are re-established on load."""
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines or lines[0] != CACHE_MAGIC:
        raise ValueError(f"{path}: not a slice cache file")
    header: dict[str, str] = {}
    for chunk in lines[1].split():
        key, _, value = chunk.partition("=")
        header[key] = value
    try:
        arity = int(header["arity"])
        dim = int(header["dim"])
        mode = header["mode"]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"{path}: malformed header") from exc
    if header.get("order") != "lex":
        raise ValueError(f"{path}: unsupported coordinate order")
    width = math.factorial(arity)
    basis = RowBasis(width)
    for line in lines[2:]:
        if not line.strip():
            continue
        values = [parse_rational(v) for v in line.split()]
        if len(values) != width:
            raise ValueError(f"{path}: row of length {len(values)}, expected {width}")
        basis.insert(SparseVector.from_dense(values))
    if basis.rank != dim:
        raise ValueError(f"{path}: declared dim {dim} but rank is {basis.rank}")
    return IdealSlice(arity, basis), mode

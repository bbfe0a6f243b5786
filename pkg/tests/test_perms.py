import random
from itertools import product

import pytest

from oplab import (
    ArityMismatch,
    Permutation,
    all_permutations,
    block_compose,
    format_permutation,
    identity,
    multiply,
    parse_permutation,
    perm_index,
)
from oracles import word_substitution_compose


def test_sequence_validation():
    with pytest.raises(ValueError):
        Permutation((1, 1))
    with pytest.raises(ValueError):
        Permutation((2, 3))
    assert Permutation(()).arity == 0


def test_identity_and_multiply():
    assert multiply(identity(3), Permutation((2, 3, 1))) == Permutation((2, 3, 1))
    sigma = Permutation((3, 1, 2))
    assert multiply(sigma, sigma.inverse()) == identity(3)
    # an involution squares to the identity
    assert multiply(Permutation((2, 1)), Permutation((2, 1))) == identity(2)
    with pytest.raises(ArityMismatch):
        multiply(identity(2), identity(3))


def test_inverse_examples():
    assert identity(4).inverse() == identity(4)
    # invert the function table by hand: (2,3,1) names sigma with
    # sigma(2)=1, sigma(3)=2, sigma(1)=3, so the inverse sequence is (3,1,2)
    assert Permutation((2, 3, 1)).inverse() == Permutation((3, 1, 2))
    rng = random.Random(0)
    for _ in range(20):
        seq = list(range(1, 6))
        rng.shuffle(seq)
        p = Permutation(tuple(seq))
        assert p.inverse().inverse() == p


def test_sequence_and_function_table_swap_under_inversion():
    for p in all_permutations(4):
        assert p.function_table() == p.inverse().seq
        # applying as a function agrees with the table
        assert tuple(p.apply(i) for i in range(1, 5)) == p.function_table()


def test_multiply_matches_function_composition():
    rng = random.Random(1)
    for _ in range(30):
        a = list(range(1, 5))
        b = list(range(1, 5))
        rng.shuffle(a)
        rng.shuffle(b)
        pa, pb = Permutation(tuple(a)), Permutation(tuple(b))
        prod = multiply(pa, pb)
        for x in range(1, 5):
            assert prod.apply(x) == pa.apply(pb.apply(x))


def test_block_compose_examples():
    assert block_compose(identity(2), [identity(1), identity(1)]) == identity(2)
    assert block_compose(identity(2), [identity(2), identity(2)]) == identity(4)
    assert block_compose(
        Permutation((2, 1)), [Permutation((2, 1)), Permutation((1,))]
    ) == Permutation((3, 2, 1))


def test_block_compose_identity_outer_concatenates():
    parts = [Permutation((2, 1)), Permutation((1, 3, 2))]
    composed = block_compose(identity(2), parts)
    assert composed.seq == (2, 1, 3, 5, 4)


def test_block_compose_unit_parts_fix_everything():
    for p in all_permutations(3):
        assert block_compose(p, [identity(1)] * 3) == p


def test_block_compose_deletes_empty_slots():
    # arity-0 parts remove their letters entirely
    result = block_compose(Permutation((2, 1)), [identity(0), identity(1)])
    assert result == identity(1)


def test_block_compose_wrong_part_count():
    with pytest.raises(ArityMismatch):
        block_compose(identity(2), [identity(1)])


def _small_perms(max_arity):
    out = []
    for n in range(max_arity + 1):
        out.extend(all_permutations(n))
    return out


def test_block_compose_matches_word_substitution_oracle():
    parts_pool = _small_perms(2)
    for outer_arity in (1, 2, 3):
        for outer in all_permutations(outer_arity):
            for parts in product(parts_pool, repeat=outer_arity):
                assert block_compose(outer, list(parts)) == word_substitution_compose(
                    outer, list(parts)
                )
    # arity-4 outers against random part tuples
    rng = random.Random(9)
    for outer in all_permutations(4):
        for _ in range(5):
            parts = [rng.choice(parts_pool) for _ in range(4)]
            assert block_compose(outer, parts) == word_substitution_compose(
                outer, parts
            )


def test_block_compose_two_stage_associativity():
    # composing in two stages equals composing the flattened data in one
    for outer in _small_perms(3):
        if outer.arity == 0:
            continue
        for parts in product(all_permutations(1) + all_permutations(2), repeat=outer.arity):
            middle = block_compose(outer, list(parts))
            inner_pool = all_permutations(1) + all_permutations(2)
            random.seed(str(outer.seq) + str(tuple(p.seq for p in parts)))
            inners = [random.choice(inner_pool) for _ in range(middle.arity)]
            staged = block_compose(middle, inners)
            # flatten: substitute into each part the matching chunk of inners
            chunks = []
            at = 0
            for part in parts:
                chunks.append(inners[at : at + part.arity])
                at += part.arity
            flattened = block_compose(
                outer,
                [
                    block_compose(part, chunk) if part.arity else part
                    for part, chunk in zip(parts, chunks)
                ],
            )
            assert staged == flattened


def test_lexicographic_enumeration_and_index():
    perms = all_permutations(3)
    assert [p.seq for p in perms[:3]] == [(1, 2, 3), (1, 3, 2), (2, 1, 3)]
    for i, p in enumerate(perms):
        assert perm_index(p) == i


def test_sign_parity_of_sequence():
    assert identity(5).sign() == 1
    assert Permutation((2, 1)).sign() == -1
    # sign is multiplicative
    for a in all_permutations(3):
        for b in all_permutations(3):
            assert multiply(a, b).sign() == a.sign() * b.sign()


def test_permutation_text_round_trip():
    assert format_permutation(Permutation((3, 2, 1))) == "(3,2,1)"
    assert parse_permutation("(3,2,1)") == Permutation((3, 2, 1))
    assert parse_permutation("()") == identity(0)
    with pytest.raises(ValueError):
        parse_permutation("3,2,1")
    for p in all_permutations(4):
        assert parse_permutation(format_permutation(p)) == p

import itertools

import pytest
from hypothesis import given

from combable.oracle import (
    Ball,
    BudgetedOracle,
    FiniteGroupTable,
    FiniteOracle,
    FreeOracle,
    FreeProductOracle,
    KillOracle,
    Undecided,
    ball_enumerate,
    consistency_failures,
    cyclic_group,
    format_table,
    homomorphisms,
    make_oracle,
    parse_table,
    symmetric_group_3,
    word_length,
)
from combable.words import Alphabet, MalformedInput, inverse, shortlex_key

from conftest import words

AB = Alphabet(("a", "b"))


def test_table_validation():
    with pytest.raises(MalformedInput):
        FiniteGroupTable([[0, 1], [1, 1]], {"x": 1})
    with pytest.raises(MalformedInput):
        FiniteGroupTable([[0, 1], [1, 0]], {"x": 2})


def test_s3_table_and_relators():
    s3 = symmetric_group_3()
    assert s3.order == 6 and s3.generates()
    assert len(s3.words) == 6
    for r in s3.relators():
        assert s3.evaluate(r) == s3.identity
    z6 = cyclic_group(6)
    assert [z6.element_order(x) for x in range(6)] == [1, 6, 3, 2, 3, 6]


def test_table_file_roundtrip():
    s3 = symmetric_group_3()
    t = parse_table(format_table(s3))
    assert t.mult == s3.mult and t.alphabet == s3.alphabet
    with pytest.raises(MalformedInput):
        parse_table("order: 2\n0 1\n")


def test_kill_oracle():
    q = KillOracle(AB, ["a"])
    assert q.is_trivial(AB.parse("a b a b^-1"))
    assert not q.is_trivial(AB.parse("b"))


def test_free_product_oracle():
    o = FreeProductOracle(FiniteOracle(cyclic_group(2, "c")), FiniteOracle(cyclic_group(3, "d")))
    assert o.is_trivial(o.parse("c c"))
    assert not o.is_trivial(o.parse("c d c d"))
    assert o.is_trivial(o.parse("c d d d c"))
    assert len(ball_enumerate(o, 3)) == 14


def test_make_oracle_kinds():
    assert make_oracle("free", ["a", "b"]).is_trivial(AB.parse("a a^-1"))
    assert make_oracle("kill_generators", ["a", "b"], ["b"]).is_trivial(AB.parse("b"))
    with pytest.raises(MalformedInput):
        make_oracle("nope")


def test_free_ball_sizes():
    f = FreeOracle(AB)
    sizes = [len(ball_enumerate(f, r)) for r in range(5)]
    assert sizes == [1, 5, 17, 53, 161]


def test_ball_reps_are_shortlex_least():
    o = FiniteOracle(symmetric_group_3())
    reps = ball_enumerate(o, 4)
    assert len(reps) == 6
    # brute force: least word among all words of length <= 4 for each element
    best = {}
    for n in range(5):
        for w in itertools.product([1, -1, 2, -2], repeat=n):
            k = o.key(w)
            if k not in best or shortlex_key(w) < shortlex_key(best[k]):
                best[k] = w
    assert sorted(reps, key=shortlex_key) == sorted(best.values(), key=shortlex_key)


def test_ball_without_keys_uses_pairwise_checks():
    o = BudgetedOracle(FiniteOracle(cyclic_group(4)), 10_000)
    b = Ball(o, 3)
    assert len(b.reps) == 4


@given(words(2, 8), words(2, 8))
def test_keys_agree_with_word_problem(u, v):
    o = FreeProductOracle(FiniteOracle(cyclic_group(2, "c")), FiniteOracle(cyclic_group(3, "d")))
    assert (o.key(u) == o.key(v)) == o.is_trivial(u + inverse(v))


def test_word_length():
    o = FiniteOracle(cyclic_group(6))
    assert word_length(o, (1, 1, 1, 1)) == 2


def test_budget_exhaustion():
    o = BudgetedOracle(FreeOracle(AB), 1)
    o.is_trivial(())
    with pytest.raises(Undecided):
        o.is_trivial(())


def test_homomorphism_counts():
    z2, z3, s3 = cyclic_group(2), cyclic_group(3), symmetric_group_3()
    assert len(homomorphisms(z3, z3)) == 3
    assert len(homomorphisms(z2, z3)) == 1
    assert len(homomorphisms(z2, s3)) == 4


def test_consistency_checker_clean_on_valid_oracle():
    o = FiniteOracle(symmetric_group_3())
    ws = ball_enumerate(o, 3)
    assert consistency_failures(o, ws, ws) == []

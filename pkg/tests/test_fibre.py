import random

from hypothesis import given

from combable.constructions import (
    PairWord,
    evaluate_expression,
    fibre_member,
    fibre_membership_instance,
    fibre_product_generators,
    kill_oracle_for,
    normalize_for_centralizer,
    product_expression_search,
)
from combable.presentation import FinitePresentation
from combable.words import free_reduce

from conftest import words

TRIVIAL = FinitePresentation.from_strings(["a", "b"], ["a", "b"])
KILL_A = FinitePresentation.from_strings(["a", "b"], ["a"])


def test_generators():
    gens = [g.format(TRIVIAL.alphabet) for g in fibre_product_generators(TRIVIAL)]
    assert gens == ["(a, a)", "(b, b)", "(a, 1)", "(b, 1)"]
    assert len(fibre_product_generators(KILL_A)) == 3


def test_trivial_presentation_gives_whole_product():
    aa, _, a1, _ = fibre_product_generators(TRIVIAL)
    assert a1.inverse() * aa == PairWord((), (1,))


def test_membership_examples():
    q = kill_oracle_for(KILL_A)
    assert fibre_member(q, fibre_membership_instance(()))
    pair = fibre_membership_instance((1,))
    assert fibre_member(q, pair)
    expr = product_expression_search(fibre_product_generators(KILL_A), pair, 6)
    assert expr is not None
    assert evaluate_expression(fibre_product_generators(KILL_A), expr) == pair
    assert not fibre_member(q, fibre_membership_instance((2,)))


def _random_word(rng, n):
    return tuple(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, n)))


def test_search_contract_on_random_words():
    """Within radius 6 the search finds (w, 1) exactly when w is trivial in Q."""
    q = kill_oracle_for(KILL_A)
    gens = fibre_product_generators(KILL_A)
    rng = random.Random(3)
    trivial_seen = 0
    for i in range(100):
        if i % 2:
            w = free_reduce(_random_word(rng, 6))
        else:
            # conjugates of powers of a are trivial in Q
            c = free_reduce(_random_word(rng, 2))
            w = free_reduce(c + (1,) * rng.randint(1, 2) + tuple(-x for x in reversed(c)))
        member = fibre_member(q, fibre_membership_instance(w))
        trivial_seen += member
        found = product_expression_search(gens, fibre_membership_instance(w), 6)
        assert (found is not None) == member
    assert trivial_seen >= 50


def test_normalize_for_centralizer():
    p = normalize_for_centralizer(KILL_A)
    assert p.alphabet.names == ("a", "b", "z")
    assert p.relators == KILL_A.relators + ((3,),)
    clash = FinitePresentation.from_strings(["z", "b"], ["z"])
    assert normalize_for_centralizer(clash).alphabet.names == ("z", "b", "z_1")
    q = kill_oracle_for(p)
    for i in range(-2, 3):
        for j in range(-2, 3):
            w1, w2 = (3,) * i if i > 0 else (-3,) * -i, (3,) * j if j > 0 else (-3,) * -j
            assert fibre_member(q, PairWord(w1, w2))


@given(words(2, 8))
def test_normalization_keeps_word_problem(w):
    before, after = kill_oracle_for(KILL_A), kill_oracle_for(normalize_for_centralizer(KILL_A))
    assert before.is_trivial(w) == after.is_trivial(w)

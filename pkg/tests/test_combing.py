import pytest

from combable.combing import IncompleteCombing, fellow_traveller_bound, reduced_word_combing
from combable.oracle import DirectProductOracle, FiniteOracle, FreeOracle, trivial_group
from combable.words import Alphabet


def test_free_group_reduced_words():
    f = FreeOracle(Alphabet(("a", "b")))
    assert fellow_traveller_bound(f, reduced_word_combing, 4) == 1


def test_trivial_group():
    t = FiniteOracle(trivial_group(["a"]))
    assert fellow_traveller_bound(t, lambda w: (), 3) == 0


def test_product_of_cyclic_groups_lex_normal_form():
    z2 = DirectProductOracle(FreeOracle(Alphabet(("a",))), FreeOracle(Alphabet(("b",))))

    def lex(w):
        i = sum(1 if x == 1 else -1 for x in w if abs(x) == 1)
        j = sum(1 if x == 2 else -1 for x in w if abs(x) == 2)
        return (1 if i > 0 else -1,) * abs(i) + (2 if j > 0 else -2,) * abs(j)

    k = fellow_traveller_bound(z2, lex, 5)
    assert 0 < k <= 2


def test_incomplete_combing():
    f = FreeOracle(Alphabet(("a",)))
    with pytest.raises(IncompleteCombing):
        fellow_traveller_bound(f, lambda w: None if len(w) > 1 else w, 2)
    with pytest.raises(IncompleteCombing):
        fellow_traveller_bound(f, lambda w: (), 1)

import pytest

from combable.amalgam import amalgam_equal, conjugator_search
from combable.constructions import (
    MissingOracle,
    basic_conjugacy_instance,
    exponent_sums_match,
    fibre_desk,
    planted_conjugator,
)
from combable.presentation import FinitePresentation
from combable.words import inverse

KILL_A = FinitePresentation.from_strings(["a", "b"], ["a"])


@pytest.fixture(scope="module")
def desk():
    return fibre_desk(KILL_A)


def test_desk_shape(desk):
    N = desk.n_oracle
    assert N.alphabet.names == ("a_l", "b_l", "a_r", "b_r")
    assert desk.phi.format() == {"f1": "a_l a_r", "f2": "b_l b_r", "f3": "a_l"}
    assert N.format(desk.a0) == "a_l a_r"
    assert not desk.normalized


def test_normalization_when_no_letter_is_killed():
    d = fibre_desk(FinitePresentation.from_strings(["a", "b"], ["a b a^-1 b^-1"]))
    assert d.normalized
    assert d.n_oracle.format(d.a0) == "z_l z_r"


def test_identity_instance(desk):
    inst = desk.instance(())
    assert inst.u == inst.v and inst.verdict is True
    assert conjugator_search(inst.spec, inst.u, inst.v, 0) == ()


def test_verdicts_follow_exponent_sums(desk):
    N = desk.n_oracle
    for text, expected in [("b_l", False), ("b_l a_l a_r b_r", True), ("a_l b_l b_r^-1", False), ("b_l b_r", True)]:
        b = N.parse(text)
        assert desk.instance(b).verdict is expected
        assert exponent_sums_match(desk, b, 1) is expected


def test_planted_conjugator_verifies(desk):
    N = desk.n_oracle
    inst = desk.instance(N.parse("b_l a_l a_r b_r"))
    g = planted_conjugator(desk, inst.b)
    assert g is not None
    assert amalgam_equal(inst.spec, g + inst.u + inverse(g), inst.v)
    assert planted_conjugator(desk, N.parse("b_l")) is None


def test_preconditions(desk):
    with pytest.raises(ValueError):
        basic_conjugacy_instance(desk.n_oracle, desk.phi, (), (2,))
    with pytest.raises(MissingOracle):
        basic_conjugacy_instance(desk.n_oracle, desk.phi, desk.a0, (2,), want_verdict=True)


def test_small_radius_search_respects_verdict(desk):
    N = desk.n_oracle
    for text in ("b_l b_r", "b_l", "a_r"):
        inst = desk.instance(N.parse(text))
        g = inst.search(4, split=2)
        if g is not None:
            assert inst.verdict
            assert amalgam_equal(inst.spec, g + inst.u + inverse(g), inst.v)
    assert desk.instance(N.parse("b_l b_r")).search(4, split=2) is not None


def test_supplied_oracle_is_extended_by_the_normalizing_generator():
    from combable.oracle import FiniteOracle, cyclic_group

    z2 = cyclic_group(2, "c")
    P = FinitePresentation(z2.alphabet, ((1, 1),))
    d = fibre_desk(P, FiniteOracle(z2))
    assert d.normalized and d.presentation.alphabet.names == ("c", "z")
    N = d.n_oracle
    assert d.i_member(N.parse("c_l c_l z_r"))
    assert not d.i_member(N.parse("c_l z_l"))
    assert d.instance(N.parse("c_l c_r z_l")).verdict is True


def test_desk_without_oracle_has_no_verdict():
    d = fibre_desk(FinitePresentation.from_strings(["a", "b"], ["a b a^-1 b^-1"]))
    assert d.q_oracle is None
    assert d.instance(d.n_oracle.parse("b_l")).verdict is None
    with pytest.raises(MissingOracle):
        d.instance(d.n_oracle.parse("b_l"), want_verdict=True)

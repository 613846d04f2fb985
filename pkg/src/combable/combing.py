"""Empirical fellow-traveller constants of a combing."""
from __future__ import annotations

from typing import Callable

from .oracle import GroupOracle, ball, word_length
from .words import Word, free_reduce, inverse


class IncompleteCombing(RuntimeError):
    pass


def reduced_word_combing(w) -> Word:
    return free_reduce(w)


def fellow_traveller_bound(
    oracle: GroupOracle,
    normal_form: Callable,
    radius: int,
    distance: Callable | None = None,
) -> int:
    """Max synchronous distance between the combing paths of g and g x, over g in
    the ball of the given radius and x a generator or inverse generator.

    A path stays at its endpoint once its word is used up.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if distance is None:
        distance = lambda p, q: word_length(oracle, inverse(p) + q)
    letters = oracle.alphabet.letters()
    forms = {}

    def form(w):
        k = oracle.key(w) if oracle.has_key else tuple(w)
        if k not in forms:
            nf = normal_form(w)
            if nf is None:
                raise IncompleteCombing(f"no normal form for {oracle.format(w)}")
            nf = tuple(nf)
            if not oracle.equal(nf, w):
                raise IncompleteCombing(
                    f"normal form {oracle.format(nf)} does not represent {oracle.format(w)}"
                )
            forms[k] = nf
        return forms[k]

    k = 0
    for g in ball(oracle, radius).up_to(radius):
        p = form(g)
        for x in letters:
            q = form(g + (x,))
            for t in range(1, max(len(p), len(q)) + 1):
                k = max(k, distance(p[:t], q[:t]))
    return k

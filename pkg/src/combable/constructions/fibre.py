"""Fibre products of a presentation map F -> Q and the membership reduction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..oracle import GroupOracle, KillOracle
from ..presentation import FinitePresentation
from ..words import Alphabet, MalformedInput, Word, free_reduce, inverse, multiply, shortlex_key


@dataclass(frozen=True)
class PairWord:
    left: Word = ()
    right: Word = ()

    def __post_init__(self):
        object.__setattr__(self, "left", free_reduce(self.left))
        object.__setattr__(self, "right", free_reduce(self.right))

    def __mul__(self, other: "PairWord") -> "PairWord":
        return PairWord(multiply(self.left, other.left), multiply(self.right, other.right))

    def inverse(self) -> "PairWord":
        return PairWord(inverse(self.left), inverse(self.right))

    def format(self, alphabet: Alphabet) -> str:
        return f"({alphabet.format(self.left)}, {alphabet.format(self.right)})"


def fibre_product_generators(P: FinitePresentation) -> list:
    """(a, a) for each generator, then (r, 1) for each relator."""
    gens = [PairWord((i + 1,), (i + 1,)) for i in range(P.n_gens)]
    return gens + [PairWord(r, ()) for r in P.relators]


def fibre_membership_instance(w: Sequence[int]) -> PairWord:
    """(w, 1) lies in the fibre product iff w is trivial in the presented group."""
    return PairWord(tuple(w), ())


def fibre_member(q_oracle: GroupOracle, pair: PairWord) -> bool:
    """Decide (u, v) in P via the word problem of Q: u =_Q v."""
    return q_oracle.is_trivial(pair.left + inverse(pair.right))


def kill_oracle_for(P: FinitePresentation) -> KillOracle:
    """Oracle for presentations whose relators are all single letters."""
    killed = []
    for r in P.relators:
        if len(r) != 1:
            raise MalformedInput(
                "no decidable oracle: relator "
                f"{P.alphabet.format(r)!r} is not a single generator"
            )
        killed.append(P.alphabet.names[abs(r[0]) - 1])
    return KillOracle(P.alphabet, killed)


def _pair_ball(gens: Sequence[PairWord], radius: int, cap: int) -> dict:
    """Pair element -> shortlex-least expression [(gen index, +/-1), ...]."""
    letters = []
    for i, g in enumerate(gens):
        letters += [((i, 1), g), ((i, -1), g.inverse())]
    seen = {PairWord(): ()}
    frontier = [(PairWord(), ())]
    for _ in range(radius):
        nxt = []
        for p, expr in frontier:
            for lt, g in letters:
                if expr and expr[-1] == (lt[0], -lt[1]):
                    continue
                q = p * g
                if q not in seen:
                    seen[q] = expr + (lt,)
                    nxt.append((q, seen[q]))
                    if len(seen) > cap:
                        return seen
        frontier = nxt
    return seen


def product_expression_search(gens: Sequence[PairWord], target: PairWord, radius: int, cap: int = 500_000):
    """Find ``target`` as a product of at most ``radius`` generators (meet in the middle).

    Returns the expression as a tuple of (generator index, sign) or None.  A
    returned expression is always checked; None only means "not within the radius".
    """
    h = (radius + 1) // 2
    right = _pair_ball(gens, h, cap)
    left = right if radius - h == h else _pair_ball(gens, radius - h, cap)
    best = None
    for p, e1 in left.items():
        e2 = right.get(p.inverse() * target)
        if e2 is not None:
            cand = e1 + e2
            if best is None or (len(cand), cand) < (len(best), best):
                best = cand
    if best is not None:
        assert evaluate_expression(gens, best) == target
    return best


def evaluate_expression(gens: Sequence[PairWord], expr) -> PairWord:
    out = PairWord()
    for i, s in expr:
        out = out * (gens[i] if s > 0 else gens[i].inverse())
    return out


def fresh_name(base: str, taken) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


class KilledExtension(GroupOracle):
    """Q extended by freshly killed generators: delete them, then ask Q."""

    def __init__(self, inner: GroupOracle, alphabet: Alphabet):
        super().__init__(alphabet)
        self.inner = inner
        self.n_old = inner.n_gens
        self.has_key = inner.has_key

    def _strip(self, w):
        return tuple(x for x in w if abs(x) <= self.n_old)

    def key(self, w):
        return self.inner.key(self._strip(w))

    def is_trivial(self, w):
        return self.inner.is_trivial(self._strip(w))


def normalize_for_centralizer(P: FinitePresentation, name: str = "z") -> FinitePresentation:
    """Adjoin a fresh generator z and the relator z.

    Then (z, z) has centralizer <z> x <z> in F x F, which lies in the fibre
    product because z is trivial in the presented group.
    """
    z = fresh_name(name, P.alphabet.names)
    alphabet = Alphabet(P.alphabet.names + (z,))
    return FinitePresentation(alphabet, P.relators + ((len(alphabet),),))


def centralizer_generator(P: FinitePresentation):
    """A generator a with a single-letter relator, so that (a, a) has its
    centralizer inside the fibre product; None if there is none."""
    for r in P.relators:
        if len(r) == 1:
            return abs(r[0]) - 1
    return None

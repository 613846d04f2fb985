"""Small-cancellation ratio of a relator set and the Rips-style padding construction."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..presentation import FinitePresentation
from ..words import Alphabet, MalformedInput, Word, inverse, is_cyclically_reduced, is_proper_power, letter_key
from .fibre import fresh_name

K_MIN = 1
DEFAULT_K = 24
# exponent ranges start at EXPONENT_BASE * k * (number of padding words)
EXPONENT_BASE = 3


class UnsupportedRelator(MalformedInput):
    pass


def _dense(a: np.ndarray) -> np.ndarray:
    return np.unique(a, return_inverse=True)[1].astype(np.int64)


def max_piece_length(cyclic_words: Sequence[Word]) -> int:
    """Longest common prefix of two distinct rotations of the given cyclic words.

    Rotations are ranked by prefix doubling on the infinite periodic strings;
    identical rotations collapse to one element.
    """
    words = [tuple(w) for w in cyclic_words if w]
    if not words:
        return 0
    lens = np.array([len(w) for w in words], dtype=np.int64)
    total = int(lens.sum())
    starts = np.concatenate([[0], np.cumsum(lens)[:-1]])
    wid = np.repeat(np.arange(len(words)), lens)
    st, ln = starts[wid], lens[wid]
    pos = np.arange(total, dtype=np.int64)
    letters = np.array([letter_key(x) for w in words for x in w], dtype=np.int64)

    def advance(p, s):
        return st[p] + (p - st[p] + s) % ln[p]

    ranks = [_dense(letters)]
    step = 1
    # periodic strings of periods p, q agree forever once they agree on p + q letters
    while step < 2 * int(lens.max()):
        r = ranks[-1]
        ranks.append(_dense(r * (int(r.max()) + 1) + r[advance(pos, step)]))
        step *= 2
    top = ranks[-1]
    _, reps = np.unique(top, return_index=True)
    if len(reps) < 2:
        return 0
    P, Q = reps[:-1], reps[1:]
    lcp = np.zeros(len(P), dtype=np.int64)
    for j in range(len(ranks) - 2, -1, -1):
        eq = ranks[j][advance(P, lcp)] == ranks[j][advance(Q, lcp)]
        lcp[eq] += 1 << j
    rep_len = ln[reps]

    def achievable(t):
        kept = np.nonzero(rep_len >= t)[0]
        if len(kept) < 2:
            return False
        gaps = np.minimum.reduceat(lcp[: kept[-1]], kept[:-1])
        return bool((gaps >= t).any())

    lo, hi = 0, int(lens.max())
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if achievable(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def symmetrized(relators: Sequence[Word]) -> list:
    out = []
    for r in relators:
        out += [tuple(r), inverse(r)]
    return out


def small_cancellation_ratio(relators: Sequence[Word]) -> Fraction:
    """max piece length / min relator length over the symmetrized closure."""
    relators = [tuple(r) for r in relators]
    for r in relators:
        if not r:
            raise UnsupportedRelator("empty relator")
        if not is_cyclically_reduced(r):
            raise UnsupportedRelator(f"relator {r} is not cyclically reduced")
        if is_proper_power(r):
            raise UnsupportedRelator(f"relator {r} is a proper power")
    if not relators:
        return Fraction(0)
    piece = max_piece_length(symmetrized(relators))
    return Fraction(piece, min(len(r) for r in relators))


def max_piece_brute(relators: Sequence[Word]) -> int:
    """Quadratic reference: longest common prefix over all pairs of distinct rotations."""
    rots = set()
    for w in symmetrized(relators):
        rots.update(w[i:] + w[:i] for i in range(len(w)))
    rots = sorted(rots)
    best = 0
    for i, x in enumerate(rots):
        for y in rots[i + 1:]:
            n = 0
            while n < min(len(x), len(y)) and x[n] == y[n]:
                n += 1
            best = max(best, n)
    return best


@dataclass(frozen=True)
class RipsOutput:
    presentation: FinitePresentation
    k: int
    ratio: Fraction
    certified: bool
    advice: str = ""


def padding_word(x1: int, x2: int, exponents: Sequence[int]) -> Word:
    out = []
    for e in exponents:
        out += [x1] + [x2] * e
    return tuple(out)


def rips_construction(P: FinitePresentation, k: int = DEFAULT_K) -> RipsOutput:
    """Adjoin x1, x2; conjugates of x1, x2 by generators and every relator are
    set equal to distinct padding words x1 x2^i x1 x2^(i+1) ... (k blocks)."""
    if k < K_MIN:
        raise ValueError(f"padding parameter must be >= {K_MIN}")
    names = P.alphabet.names
    n1 = fresh_name("x1", names)
    n2 = fresh_name("x2", names + (n1,))
    alphabet = Alphabet(names + (n1, n2))
    x1, x2 = len(names) + 1, len(names) + 2
    bodies = []
    for a in range(1, len(names) + 1):
        for eps in (1, -1):
            for x in (x1, x2):
                bodies.append((eps * a, x, -eps * a))
    bodies += list(P.relators)
    M = len(bodies)
    base = EXPONENT_BASE * k * M
    rels = []
    for j, body in enumerate(bodies):
        W = padding_word(x1, x2, range(base + j * k, base + (j + 1) * k))
        rels.append(tuple(body) + inverse(W))
    out = FinitePresentation(alphabet, tuple(rels))
    ratio = small_cancellation_ratio(rels) if rels else Fraction(0)
    certified = ratio < Fraction(1, 6)
    advice = "" if certified else f"ratio {ratio} >= 1/6; increase k above {k}"
    return RipsOutput(out, k, ratio, certified, advice)

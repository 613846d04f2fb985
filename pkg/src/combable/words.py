"""Words in free groups.

A word is a tuple of nonzero ints: generator ``i`` (0-based) is the letter
``i + 1`` and its inverse is ``-(i + 1)``.  Alphabets carry the names and the
text syntax (``a b^-1 c``, with ``1`` for the empty word).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple  # tuple[int, ...]

_NAME_RE = re.compile(r"^[a-z0-9_]+$")
_TOKEN_RE = re.compile(r"^([a-z0-9_]+)(?:\^(-?\d+))?$")


class MalformedInput(ValueError):
    """Raised for words or maps that do not fit their alphabet."""


@dataclass(frozen=True)
class Alphabet:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise MalformedInput(f"invalid generator name {name!r}")
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise MalformedInput(f"duplicate generator {dup!r}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise MalformedInput(f"unknown generator {name!r}") from None

    def letters(self) -> list:
        """All letters in shortlex order: a < a^-1 < b < b^-1 < ..."""
        out = []
        for i in range(len(self.names)):
            out += [i + 1, -(i + 1)]
        return out

    def generator(self, name: str) -> Word:
        return (self.index(name) + 1,)

    def parse(self, text: str) -> Word:
        return parse_word(text, self)

    def format(self, w: Sequence[int]) -> str:
        return format_word(w, self)

    def __add__(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.names + other.names)

    def suffixed(self, suffix: str) -> "Alphabet":
        return Alphabet(tuple(n + suffix for n in self.names))


def letter_key(x: int) -> int:
    """Sort key of a letter: generator order, x before x^-1."""
    return 2 * x - 2 if x > 0 else -2 * x - 1


def shortlex_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(letter_key(x) for x in w))


def check_word(w: Sequence[int], n_gens: int) -> None:
    for x in w:
        if not isinstance(x, int) or x == 0 or abs(x) > n_gens:
            raise MalformedInput(f"letter {x!r} outside alphabet of size {n_gens}")


def free_reduce(raw: Iterable[int], n_gens: int | None = None) -> Word:
    """Freely reduce a letter sequence; optionally validate against an alphabet size."""
    out = []
    for x in raw:
        if n_gens is not None and (not isinstance(x, int) or x == 0 or abs(x) > n_gens):
            raise MalformedInput(f"letter {x!r} outside alphabet of size {n_gens}")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def multiply(*words: Sequence[int]) -> Word:
    return free_reduce(x for w in words for x in w)


def conjugate(g: Sequence[int], w: Sequence[int]) -> Word:
    """g w g^-1, reduced."""
    return multiply(g, w, inverse(g))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    return multiply(u, v, inverse(u), inverse(v))


def cyclic_reduce(w: Sequence[int]) -> tuple:
    """Split reduced ``w`` as ``conjugator * core * conjugator^-1`` with ``core`` cyclically reduced."""
    w = tuple(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1], w[:i]


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return len(w) < 2 or w[0] != -w[-1]


def is_proper_power(w: Sequence[int]) -> bool:
    """True if the cyclic word ``w`` equals ``u^k`` for some k >= 2."""
    n = len(w)
    if n < 2:
        return False
    w = tuple(w)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and w[d:] + w[:d] == w:
            return True
    return False


def rename(w: Sequence[int], perm: Sequence[int]) -> Word:
    """Send generator i to generator perm[i] (0-based indices)."""
    return tuple((perm[x - 1] + 1) if x > 0 else -(perm[-x - 1] + 1) for x in w)


def shift(w: Sequence[int], offset: int) -> Word:
    return tuple(x + offset if x > 0 else x - offset for x in w)


def exponent_sum(w: Sequence[int], gen: int) -> int:
    """Exponent sum of the 0-based generator ``gen``."""
    return sum(1 if x == gen + 1 else -1 if x == -(gen + 1) else 0 for x in w)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN_RE.match(tok)
        if not m:
            raise MalformedInput(f"bad token {tok!r}")
        letter = alphabet.index(m.group(1)) + 1
        power = int(m.group(2)) if m.group(2) is not None else 1
        if power == 0:
            raise MalformedInput(f"zero exponent in {tok!r}")
        out += [letter if power > 0 else -letter] * abs(power)
    return free_reduce(out)


def format_word(w: Sequence[int], alphabet: Alphabet) -> str:
    if not w:
        return "1"
    names = alphabet.names
    try:
        return " ".join(names[x - 1] if x > 0 else names[-x - 1] + "^-1" for x in w)
    except IndexError:
        raise MalformedInput(f"word {tuple(w)!r} outside alphabet {names}") from None


@dataclass(frozen=True)
class GeneratorMap:
    """A homomorphism between free groups given by generator images."""

    source: Alphabet
    target: Alphabet
    images: tuple

    def __post_init__(self):
        images = tuple(free_reduce(w, len(self.target)) for w in self.images)
        if len(images) != len(self.source):
            raise MalformedInput(
                f"{len(images)} images for {len(self.source)} source generators"
            )
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "GeneratorMap":
        return cls(alphabet, alphabet, tuple((i + 1,) for i in range(len(alphabet))))

    @classmethod
    def from_strings(cls, source: Alphabet, target: Alphabet, images: dict) -> "GeneratorMap":
        """Images keyed by source generator name; missing generators map to themselves by name."""
        out = []
        for name in source.names:
            if name in images:
                out.append(parse_word(images[name], target))
            else:
                out.append(target.generator(name))
        return cls(source, target, tuple(out))

    def __call__(self, w: Sequence[int]) -> Word:
        return apply_map(self, w)

    def compose(self, other: "GeneratorMap") -> "GeneratorMap":
        """self after other."""
        if other.target != self.source:
            raise MalformedInput("alphabet mismatch in composition")
        return GeneratorMap(other.source, self.target, tuple(self(w) for w in other.images))

    def format(self) -> dict:
        return {
            name: format_word(img, self.target)
            for name, img in zip(self.source.names, self.images)
        }


def apply_map(m: GeneratorMap, w: Sequence[int]) -> Word:
    n = len(m.source)
    out = []
    for x in w:
        if x == 0 or abs(x) > n:
            raise MalformedInput(f"letter {x!r} not in source alphabet of size {n}")
        img = m.images[x - 1] if x > 0 else inverse(m.images[-x - 1])
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


# -- Nielsen moves ---------------------------------------------------------

@dataclass(frozen=True)
class Swap:
    i: int
    j: int

    def inverse(self):
        return self


@dataclass(frozen=True)
class Invert:
    i: int

    def inverse(self):
        return self


@dataclass(frozen=True)
class RightMultiply:
    """Replace basis element i by (basis element i) * (basis element j)^sign."""

    i: int
    j: int
    sign: int = 1

    def inverse(self):
        return RightMultiply(self.i, self.j, -self.sign)


@dataclass(frozen=True)
class NielsenRecord:
    """A sequence of elementary Nielsen moves acting on the current basis tuple.

    Moves are applied left to right to the tuple ``(x_1, ..., x_n)``; the
    induced map sends ``x_k`` to the k-th entry of the final tuple.
    """

    alphabet: Alphabet
    moves: tuple = field(default=())

    def __post_init__(self):
        moves = tuple(self.moves)
        object.__setattr__(self, "moves", moves)
        n = len(self.alphabet)
        for mv in moves:
            idx = (mv.i,) if isinstance(mv, Invert) else (mv.i, mv.j)
            if any(not 0 <= k < n for k in idx):
                raise MalformedInput(f"move {mv} has index outside alphabet of size {n}")
            if isinstance(mv, (Swap, RightMultiply)) and mv.i == mv.j:
                raise MalformedInput(f"move {mv} needs distinct indices")
            if isinstance(mv, RightMultiply) and mv.sign not in (1, -1):
                raise MalformedInput(f"move {mv} has sign {mv.sign}")

    def then(self, other: "NielsenRecord") -> "NielsenRecord":
        return NielsenRecord(self.alphabet, self.moves + other.moves)


def nielsen_to_map(r: NielsenRecord) -> GeneratorMap:
    basis = [(i + 1,) for i in range(len(r.alphabet))]
    for mv in r.moves:
        if isinstance(mv, Swap):
            basis[mv.i], basis[mv.j] = basis[mv.j], basis[mv.i]
        elif isinstance(mv, Invert):
            basis[mv.i] = inverse(basis[mv.i])
        else:
            b = basis[mv.j] if mv.sign > 0 else inverse(basis[mv.j])
            basis[mv.i] = multiply(basis[mv.i], b)
    return GeneratorMap(r.alphabet, r.alphabet, tuple(basis))


def invert_record(r: NielsenRecord) -> NielsenRecord:
    return NielsenRecord(r.alphabet, tuple(mv.inverse() for mv in reversed(r.moves)))

"""Word-problem oracles for the concrete groups the constructions compose."""
from __future__ import annotations

import functools
import itertools
from collections import deque
from typing import Callable, Sequence

from .words import (
    Alphabet,
    MalformedInput,
    Word,
    check_word,
    free_reduce,
    inverse,
    letter_key,
    shortlex_key,
)


class ResourceError(RuntimeError):
    """A search or enumeration exceeded its configured cap."""


class Undecided(RuntimeError):
    """A budgeted oracle could not settle a query."""


class GroupOracle:
    """Base class: a group on a named alphabet with a solvable word problem.

    Subclasses implement ``key``, a canonical hashable form; two words are
    equal in the group iff their keys are equal.  Oracles without a canonical
    form override ``is_trivial`` and set ``has_key = False``.
    """

    has_key = True

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    @property
    def n_gens(self) -> int:
        return len(self.alphabet)

    def key(self, w: Sequence[int]):
        raise NotImplementedError

    def is_trivial(self, w: Sequence[int]) -> bool:
        return self.key(w) == self.key(())

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.is_trivial(tuple(u) + inverse(v))

    def reduce(self, w: Sequence[int]) -> Word:
        """A cheaply shortened word for the same element (free reduction by default)."""
        return free_reduce(w)

    def parse(self, text: str) -> Word:
        return self.alphabet.parse(text)

    def format(self, w: Sequence[int]) -> str:
        return self.alphabet.format(w)

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other


class FreeOracle(GroupOracle):
    def key(self, w):
        return free_reduce(w)

    def is_trivial(self, w):
        return not free_reduce(w)


class KillOracle(GroupOracle):
    """F(A) / ncl(A0): delete killed letters and freely reduce."""

    def __init__(self, alphabet: Alphabet, killed: Sequence[str]):
        super().__init__(alphabet)
        self.killed = frozenset(alphabet.index(n) + 1 for n in killed)

    def key(self, w):
        return free_reduce(x for x in w if abs(x) not in self.killed)

    def is_trivial(self, w):
        return not self.key(w)


class FiniteGroupTable:
    """A finite group given by its multiplication table and generator embedding."""

    def __init__(self, mult: Sequence[Sequence[int]], gens: dict, relators: Sequence[Word] | None = None):
        n = len(mult)
        self.mult = [list(row) for row in mult]
        if n == 0 or any(len(row) != n for row in self.mult):
            raise MalformedInput("multiplication table must be square and non-empty")
        if any(not 0 <= x < n for row in self.mult for x in row):
            raise MalformedInput("table entries out of range")
        ids = [e for e in range(n) if all(self.mult[e][x] == x == self.mult[x][e] for x in range(n))]
        if len(ids) != 1:
            raise MalformedInput("table has no identity element")
        self.identity = ids[0]
        self.inv = [None] * n
        for x in range(n):
            for y in range(n):
                if self.mult[x][y] == self.identity:
                    self.inv[x] = y
                    break
            if self.inv[x] is None or self.mult[self.inv[x]][x] != self.identity:
                raise MalformedInput(f"element {x} has no inverse")
        for x, y, z in itertools.product(range(n), repeat=3):
            if self.mult[self.mult[x][y]][z] != self.mult[x][self.mult[y][z]]:
                raise MalformedInput(f"table is not associative at ({x}, {y}, {z})")
        self.alphabet = Alphabet(tuple(gens))
        self.gen_elements = [gens[name] for name in self.alphabet.names]
        if any(not 0 <= g < n for g in self.gen_elements):
            raise MalformedInput("generator embedding out of range")
        self._relators = relators

    @property
    def order(self) -> int:
        return len(self.mult)

    def evaluate(self, w: Sequence[int]) -> int:
        check_word(w, len(self.alphabet))
        e = self.identity
        for x in w:
            g = self.gen_elements[x - 1] if x > 0 else self.inv[self.gen_elements[-x - 1]]
            e = self.mult[e][g]
        return e

    @functools.cached_property
    def words(self) -> dict:
        """Shortlex-least word for every element reachable from the generators."""
        out = {self.identity: ()}
        frontier = [()]
        letters = self.alphabet.letters()
        while frontier:
            nxt = []
            for w in frontier:
                for x in letters:
                    v = w + (x,)
                    e = self.evaluate(v)
                    if e not in out:
                        out[e] = v
                        nxt.append(v)
            frontier = nxt
        return out

    def generates(self) -> bool:
        return len(self.words) == self.order

    def word_for(self, element: int) -> Word:
        try:
            return self.words[element]
        except KeyError:
            raise MalformedInput(f"element {element} not generated") from None

    def relators(self) -> list:
        """A presentation read off the Cayley graph: one relator per non-tree edge."""
        if self._relators is not None:
            return list(self._relators)
        rels = set()
        for e, w in self.words.items():
            for i, g in enumerate(self.gen_elements):
                r = free_reduce(w + (i + 1,) + inverse(self.words[self.mult[e][g]]))
                if r:
                    rels.add(_cyclic_min(r))
        return sorted(rels, key=shortlex_key)

    def centralizer(self, elements: Sequence[int]) -> list:
        return [
            z for z in range(self.order)
            if all(self.mult[z][s] == self.mult[s][z] for s in elements)
        ]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mult[y][x]
            k += 1
        return k


def _cyclic_min(w: Word) -> Word:
    """Least rotation of w or w^-1, to deduplicate relators."""
    cands = []
    for v in (w, inverse(w)):
        cands += [v[i:] + v[:i] for i in range(len(v))]
    return min(cands, key=shortlex_key)


def cyclic_group(n: int, gen: str = "c") -> FiniteGroupTable:
    mult = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroupTable(mult, {gen: 1 % n}, relators=[(1,) * n] if n > 1 else [(1,)])


def symmetric_group_3(transposition: str = "s", rotation: str = "r") -> FiniteGroupTable:
    """S3 as permutations of (0, 1, 2); s = (0 1), r = (0 1 2)."""
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    mult = [[index[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    gens = {transposition: index[(1, 0, 2)], rotation: index[(1, 2, 0)]}
    rels = [(1, 1), (2, 2, 2), (1, 2, 1, 2)]
    return FiniteGroupTable(mult, gens, relators=rels)


def trivial_group(gens: Sequence[str] = ("a",)) -> FiniteGroupTable:
    return FiniteGroupTable([[0]], {g: 0 for g in gens})


def parse_table(text: str) -> FiniteGroupTable:
    """Table file: ``order: n``, n rows of n indices, then ``gen: name index`` lines."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    if not lines or not lines[0][1].startswith("order:"):
        raise MalformedInput("table file must start with 'order: n'")
    try:
        n = int(lines[0][1].split(":", 1)[1])
    except ValueError:
        raise MalformedInput(f"line {lines[0][0]}: bad order") from None
    rows, gens = [], {}
    for lineno, ln in lines[1:]:
        if ln.startswith("gen:"):
            parts = ln.split(":", 1)[1].split()
            if len(parts) != 2:
                raise MalformedInput(f"line {lineno}: expected 'gen: name index'")
            if parts[0] in gens:
                raise MalformedInput(f"line {lineno}: duplicate generator {parts[0]!r}")
            gens[parts[0]] = int(parts[1])
        else:
            try:
                rows.append([int(t) for t in ln.split()])
            except ValueError:
                raise MalformedInput(f"line {lineno}: bad table row") from None
    if len(rows) != n:
        raise MalformedInput(f"expected {n} table rows, found {len(rows)}")
    return FiniteGroupTable(rows, gens)


def format_table(t: FiniteGroupTable) -> str:
    out = [f"order: {t.order}"]
    out += [" ".join(map(str, row)) for row in t.mult]
    out += [f"gen: {name} {g}" for name, g in zip(t.alphabet.names, t.gen_elements)]
    return "\n".join(out) + "\n"


class FiniteOracle(GroupOracle):
    def __init__(self, table: FiniteGroupTable):
        super().__init__(table.alphabet)
        self.table = table

    def key(self, w):
        return self.table.evaluate(w)

    def is_trivial(self, w):
        return self.table.evaluate(w) == self.table.identity

    def reduce(self, w):
        return self.table.word_for(self.table.evaluate(w))


def _split_alphabets(o1: GroupOracle, o2: GroupOracle) -> Alphabet:
    clash = set(o1.alphabet.names) & set(o2.alphabet.names)
    if clash:
        raise MalformedInput(f"factor alphabets collide on {sorted(clash)}")
    return o1.alphabet + o2.alphabet


class DirectProductOracle(GroupOracle):
    def __init__(self, o1: GroupOracle, o2: GroupOracle):
        super().__init__(_split_alphabets(o1, o2))
        self.factors = (o1, o2)
        self.n1 = o1.n_gens
        self.has_key = o1.has_key and o2.has_key

    def project(self, w):
        n1 = self.n1
        left, right = [], []
        for x in w:
            if -n1 <= x <= n1:
                left.append(x)
            elif x > 0:
                right.append(x - n1)
            else:
                right.append(x + n1)
        return tuple(left), tuple(right)

    def embed(self, left, right) -> Word:
        n1 = self.n1
        return tuple(left) + tuple(x + n1 if x > 0 else x - n1 for x in right)

    def key(self, w):
        a, b = self.project(w)
        return (self.factors[0].key(a), self.factors[1].key(b))

    def is_trivial(self, w):
        a, b = self.project(w)
        return self.factors[0].is_trivial(a) and self.factors[1].is_trivial(b)

    def reduce(self, w):
        a, b = self.project(w)
        return self.embed(self.factors[0].reduce(a), self.factors[1].reduce(b))


class FreeProductOracle(GroupOracle):
    def __init__(self, o1: GroupOracle, o2: GroupOracle):
        super().__init__(_split_alphabets(o1, o2))
        self.factors = (o1, o2)
        self.n1 = o1.n_gens
        self.has_key = o1.has_key and o2.has_key

    def syllables(self, w) -> list:
        """Reduced syllable sequence [(factor, local word), ...]."""
        n1 = self.n1
        stack = []
        for x in w:
            f = 0 if abs(x) <= n1 else 1
            y = x if f == 0 else (x - n1 if x > 0 else x + n1)
            if stack and stack[-1][0] == f:
                merged = stack[-1][1] + (y,)
                stack.pop()
            else:
                merged = (y,)
            self._push(stack, f, merged)
        return stack

    def _push(self, stack, f, word):
        if not self.factors[f].is_trivial(word):
            stack.append((f, self.factors[f].reduce(word)))

    def key(self, w):
        return tuple((f, self.factors[f].key(s)) for f, s in self.syllables(w))

    def is_trivial(self, w):
        return not self.syllables(w)

    def reduce(self, w):
        n1 = self.n1
        out = []
        for f, s in self.syllables(w):
            out += s if f == 0 else [x + n1 if x > 0 else x - n1 for x in s]
        return tuple(out)


class BudgetedOracle(GroupOracle):
    """Wraps an oracle and raises Undecided once ``budget`` queries are spent."""

    has_key = False

    def __init__(self, inner: GroupOracle, budget: int):
        super().__init__(inner.alphabet)
        self.inner = inner
        self.budget = budget
        self.spent = 0

    def is_trivial(self, w):
        if self.spent >= self.budget:
            raise Undecided(f"oracle budget of {self.budget} queries exhausted")
        self.spent += 1
        return self.inner.is_trivial(w)


def make_oracle(kind: str, *components, **kw) -> GroupOracle:
    """Build an oracle: free(alphabet), finite(table), direct_product(o1, o2),
    free_product(o1, o2) or kill_generators(alphabet, killed)."""
    if kind == "free":
        (alphabet,) = components
        return FreeOracle(_as_alphabet(alphabet))
    if kind == "finite":
        (table,) = components
        return FiniteOracle(table)
    if kind == "direct_product":
        return DirectProductOracle(*components)
    if kind == "free_product":
        return FreeProductOracle(*components)
    if kind == "kill_generators":
        alphabet, killed = components
        return KillOracle(_as_alphabet(alphabet), killed)
    raise MalformedInput(f"unknown oracle kind {kind!r}")


def _as_alphabet(a) -> Alphabet:
    return a if isinstance(a, Alphabet) else Alphabet(tuple(a))


# -- balls -----------------------------------------------------------------

class Ball:
    """Shortlex-least representatives of all elements of word length <= radius."""

    def __init__(self, oracle, radius: int, cap: int = 2_000_000):
        if radius < 0:
            raise ValueError("radius must be non-negative")
        self.oracle = oracle
        self.cap = cap
        self.reps = [()]
        self.spheres = [[()]]
        self.index = {oracle.key(()): 0} if oracle.has_key else None
        self.radius = 0
        self.grow(radius)

    def grow(self, radius: int) -> None:
        o = self.oracle
        letters = o.alphabet.letters()
        while self.radius < radius:
            new = []
            for w in self.spheres[-1]:
                last = w[-1] if w else 0
                for x in letters:
                    if x == -last:
                        continue
                    v = w + (x,)
                    if self.index is not None:
                        k = o.key(v)
                        if k in self.index:
                            continue
                        self.index[k] = len(self.reps)
                    elif any(o.equal(v, r) for r in self.reps):
                        continue
                    self.reps.append(v)
                    new.append(v)
                    if len(self.reps) > self.cap:
                        raise ResourceError(f"ball exceeds element cap {self.cap}")
            self.spheres.append(new)
            self.radius += 1

    def lookup(self, w):
        """Representative equal to ``w`` in the group, or None."""
        if self.index is not None:
            i = self.index.get(self.oracle.key(w))
            return None if i is None else self.reps[i]
        for r in self.reps:
            if self.oracle.equal(w, r):
                return r
        return None

    def up_to(self, radius: int) -> list:
        return [w for w in self.reps if len(w) <= radius]


@functools.lru_cache(maxsize=64)
def _cached_ball(oracle, cap):
    return Ball(oracle, 0, cap)


def ball(oracle, radius: int, cap: int = 2_000_000) -> Ball:
    b = _cached_ball(oracle, cap)
    b.grow(radius)
    return b


def ball_enumerate(oracle, radius: int, cap: int = 2_000_000) -> list:
    """One shortlex-least word per group element of length <= radius, in shortlex order."""
    return ball(oracle, radius, cap).up_to(radius)


def word_length(oracle, w, max_radius: int = 64, cap: int = 2_000_000) -> int:
    """Cayley-graph length of ``w``, found by growing a ball around the identity."""
    b = ball(oracle, 0, cap)
    while True:
        r = b.lookup(w)
        if r is not None:
            return len(r)
        if b.radius >= max_radius:
            raise ResourceError(f"element not found within radius {max_radius}")
        b.grow(b.radius + 1)


def homomorphisms(src: FiniteGroupTable, dst: FiniteGroupTable) -> list:
    """All homomorphisms src -> dst, each as a list of dst elements indexed by src elements."""
    out = []
    words = src.words
    if len(words) != src.order:
        raise MalformedInput("source table is not generated by its generators")
    for images in itertools.product(range(dst.order), repeat=len(src.gen_elements)):
        f = {}
        for e, w in words.items():
            y = dst.identity
            for x in w:
                g = images[x - 1] if x > 0 else dst.inv[images[-x - 1]]
                y = dst.mult[y][g]
            f[e] = y
        if all(
            f[src.mult[a][b]] == dst.mult[f[a]][f[b]]
            for a in range(src.order)
            for b in range(src.order)
        ):
            hom = [f[e] for e in range(src.order)]
            if hom not in out:
                out.append(hom)
    return out


def consistency_failures(oracle, words, conjugators) -> list:
    """Words violating the oracle invariants (empty, inverse, conjugation)."""
    bad = []
    if not oracle.is_trivial(()):
        bad.append(())
    for w in words:
        t = oracle.is_trivial(w)
        if t != oracle.is_trivial(inverse(w)):
            bad.append(w)
        elif t and any(not oracle.is_trivial(tuple(g) + tuple(w) + inverse(g)) for g in conjugators):
            bad.append(w)
    return bad

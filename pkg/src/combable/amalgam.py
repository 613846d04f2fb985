"""Amalgamated free products and doubles: reduced forms, equality, and
bounded searches for conjugators and centralizers."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .oracle import (
    DirectProductOracle,
    FiniteGroupTable,
    FiniteOracle,
    FreeProductOracle,
    GroupOracle,
    ball,
    homomorphisms,
)
from .words import (
    Alphabet,
    GeneratorMap,
    MalformedInput,
    Word,
    apply_map,
    free_reduce,
    inverse,
    multiply,
    shortlex_key,
)

L, R = 0, 1
TAGS = ("L", "R")


class IncompleteSpec(RuntimeError):
    """An edge element has no transfer into the other factor."""


class Unsupported(ValueError):
    """The requested exhaustive mode needs a finite edge subgroup."""


@dataclass(frozen=True)
class AmalgamElement:
    """Alternating syllables ``((tag, word), ...)`` with tags 'L' / 'R'."""

    syllables: tuple = ()

    def __len__(self):
        return len(self.syllables)


class AmalgamSpec(GroupOracle):
    """A *_C B over the combined alphabet (left names, then right names).

    ``edge`` holds membership predicates for C inside each factor and
    ``transfer`` maps an edge word of one factor to the other.  ``split``
    (optional) maps a factor word h to ``(key of t, c)`` with h = t c, c in C
    and t depending only on the coset hC; it makes the element keys canonical.
    """

    def __init__(
        self,
        left: GroupOracle,
        right: GroupOracle,
        edge: tuple,
        transfer: tuple,
        right_alphabet: Alphabet | None = None,
        split: tuple = (None, None),
        edge_elements: Sequence | None = None,
        double: bool = False,
    ):
        right_alphabet = right_alphabet or right.alphabet
        super().__init__(left.alphabet + right_alphabet)
        self.factors = (left, right)
        self.edge = edge
        self.transfer = transfer
        self.split = split
        self.edge_elements = None if edge_elements is None else [
            (tuple(a), tuple(b)) for a, b in edge_elements
        ]
        self.double = double
        self.n_left = left.n_gens
        can_split = all(
            s is not None or self.edge_elements is not None for s in split
        )
        self.has_key = left.has_key and right.has_key and can_split

    # -- conversions ---------------------------------------------------------

    def syllables(self, w: Sequence[int]) -> list:
        n = self.n_left
        out = []
        for x in w:
            tag = L if abs(x) <= n else R
            y = x if tag == L else (x - n if x > 0 else x + n)
            if out and out[-1][0] == tag:
                out[-1][1].append(y)
            else:
                out.append((tag, [y]))
        return [(t, tuple(s)) for t, s in out]

    def to_word(self, syllables) -> Word:
        n = self.n_left
        out = []
        for tag, s in syllables:
            tag = _tag(tag)
            out += s if tag == L else [x + n if x > 0 else x - n for x in s]
        return tuple(out)

    def left_word(self, w) -> Word:
        return tuple(w)

    def right_word(self, w) -> Word:
        return self.to_word([(R, w)])

    # -- reduction -----------------------------------------------------------

    def _transfer(self, tag, w) -> Word:
        out = self.transfer[tag](w)
        if out is None:
            raise IncompleteSpec(f"no transfer for edge word {w} of factor {TAGS[tag]}")
        return tuple(out)

    def in_edge(self, tag, w) -> bool:
        return self.edge[tag](w)

    def _push(self, stack, tag, w):
        while True:
            if stack and stack[-1][0] == tag:
                w = stack.pop()[1] + w
                continue
            f = self.factors[tag]
            if self.edge[tag](w):
                if f.is_trivial(w):
                    return
                if stack:
                    w = self._transfer(tag, w)
                    tag = 1 - tag
                    continue
                stack.append((tag, f.reduce(w)))
                return
            if len(stack) == 1 and self.edge[stack[0][0]](stack[0][1]):
                t0, w0 = stack.pop()
                w = self._transfer(t0, w0) + w
                continue
            stack.append((tag, f.reduce(w)))
            return

    def reduce_syllables(self, raw) -> list:
        stack = []
        for tag, w in raw:
            self._push(stack, _tag(tag), tuple(w))
        return stack

    def is_trivial(self, w) -> bool:
        return not self.reduce_syllables(self.syllables(w))

    def reduce(self, w) -> Word:
        return self.to_word(self.reduce_syllables(self.syllables(w)))

    # -- canonical keys ------------------------------------------------------

    def _split(self, tag, h):
        if self.split[tag] is not None:
            return self.split[tag](h)
        f = self.factors[tag]
        best = None
        for pair in self.edge_elements:
            e = pair[tag]
            k = f.key(h + e)
            if best is None or k < best[0]:
                best = (k, inverse(e))
        return best

    def key(self, w):
        st = self.reduce_syllables(self.syllables(w))
        if not st:
            return ()
        if len(st) == 1 and self.edge[st[0][0]](st[0][1]):
            tag, h = st[0]
            if tag == R:
                h = self._transfer(R, h)
            return ("e", self.factors[L].key(h))
        out = []
        carry, prev = (), None
        for tag, h in st:
            if carry:
                h = self._transfer(prev, carry) + h
            tkey, carry = self._split(tag, h)
            out.append(tkey)
            prev = tag
        if prev == R:
            carry = self._transfer(R, carry)
        return (st[0][0], tuple(out), self.factors[L].key(carry))


def _tag(t) -> int:
    if t in (L, R):
        return t
    if t in TAGS:
        return TAGS.index(t)
    raise MalformedInput(f"unknown syllable tag {t!r}")


def _as_word(spec: AmalgamSpec, x) -> Word:
    if isinstance(x, AmalgamElement):
        return spec.to_word(x.syllables)
    if x and isinstance(x[0], tuple):
        return spec.to_word(x)
    return tuple(x)


# -- constructors ------------------------------------------------------------

def double_spec(
    oracle: GroupOracle,
    h_member: Callable,
    edge_elements: Sequence | None = None,
    split: Callable | None = None,
) -> AmalgamSpec:
    """The double of a group along the subgroup cut out by ``h_member``; h = h_bar."""
    ident = lambda w: tuple(w)
    elems = None if edge_elements is None else [(tuple(e), tuple(e)) for e in edge_elements]
    return AmalgamSpec(
        oracle,
        oracle,
        edge=(h_member, h_member),
        transfer=(ident, ident),
        right_alphabet=oracle.alphabet.suffixed("_bar"),
        split=(split, split),
        edge_elements=elems,
        double=True,
    )


def _check_embedding(C: FiniteGroupTable, G: FiniteGroupTable, emb: Sequence[int], name: str):
    if len(emb) != C.order:
        raise MalformedInput(f"embedding into {name} has {len(emb)} entries for |C| = {C.order}")
    if len(set(emb)) != len(emb):
        raise MalformedInput(f"embedding into {name} is not injective")
    for x in range(C.order):
        for y in range(C.order):
            if emb[C.mult[x][y]] != G.mult[emb[x]][emb[y]]:
                raise MalformedInput(f"embedding into {name} is not a homomorphism at ({x}, {y})")


def finite_amalgam(
    A: FiniteGroupTable,
    B: FiniteGroupTable,
    C: FiniteGroupTable,
    emb_a: Sequence[int],
    emb_b: Sequence[int],
) -> AmalgamSpec:
    _check_embedding(C, A, emb_a, "A")
    _check_embedding(C, B, emb_b, "B")
    oa, ob = FiniteOracle(A), FiniteOracle(B)
    a_to_c = {g: c for c, g in enumerate(emb_a)}
    b_to_c = {g: c for c, g in enumerate(emb_b)}

    def edge_a(w):
        return A.evaluate(w) in a_to_c

    def edge_b(w):
        return B.evaluate(w) in b_to_c

    def a_to_b(w):
        c = a_to_c.get(A.evaluate(w))
        return None if c is None else B.word_for(emb_b[c])

    def b_to_a(w):
        c = b_to_c.get(B.evaluate(w))
        return None if c is None else A.word_for(emb_a[c])

    elems = [(A.word_for(emb_a[c]), B.word_for(emb_b[c])) for c in range(C.order)]
    spec = AmalgamSpec(oa, ob, (edge_a, edge_b), (a_to_b, b_to_a), edge_elements=elems)
    spec.tables = (A, B, C)
    spec.embeddings = (list(emb_a), list(emb_b))
    return spec


def graph_double(h_oracle: GroupOracle, f_oracle: GroupOracle, phi: GeneratorMap) -> AmalgamSpec:
    """Double of H x F along the graph {(phi(x), x)} of a homomorphism phi: F -> H."""
    if phi.source != f_oracle.alphabet or phi.target != h_oracle.alphabet:
        raise MalformedInput("phi must map the F alphabet into the H alphabet")
    G = DirectProductOracle(h_oracle, f_oracle)

    def member(w):
        h, x = G.project(w)
        return h_oracle.is_trivial(h + inverse(apply_map(phi, x)))

    def split(w):
        h, x = G.project(w)
        px = apply_map(phi, x)
        return h_oracle.key(h + inverse(px)), G.embed(px, x)

    spec = double_spec(G, member, split=split)
    spec.graph = (h_oracle, f_oracle, phi)
    return spec


def build_amalgam(kind: str, *parts, **kw) -> AmalgamSpec:
    if kind == "double":
        return double_spec(*parts, **kw)
    if kind == "finite_amalgam":
        return finite_amalgam(*parts, **kw)
    if kind == "graph_double":
        return graph_double(*parts, **kw)
    raise MalformedInput(f"unknown amalgam kind {kind!r}")


# -- operations ----------------------------------------------------------------

def reduce_sequence(spec: AmalgamSpec, raw) -> AmalgamElement:
    if raw and not isinstance(raw[0], tuple):
        raw = spec.syllables(raw)
    st = spec.reduce_syllables(raw)
    return AmalgamElement(tuple((TAGS[t], w) for t, w in st))


def is_reduced(spec: AmalgamSpec, e: AmalgamElement) -> bool:
    syl = [(_tag(t), w) for t, w in e.syllables]
    if len(syl) <= 1:
        return not syl or not spec.factors[syl[0][0]].is_trivial(syl[0][1])
    return all(
        not spec.in_edge(t, w) and (k == 0 or syl[k - 1][0] != t)
        for k, (t, w) in enumerate(syl)
    )


def amalgam_equal(spec: AmalgamSpec, u, v) -> bool:
    return spec.is_trivial(_as_word(spec, u) + inverse(_as_word(spec, v)))


@functools.lru_cache(maxsize=512)
def _conjugation_table(spec, x, depth, side):
    """Map key(w x w^-1) (side 'left') or key(w^-1 x w) (side 'right') to the
    shortlex-least ball representative w of length <= depth."""
    table = {}
    for w in ball(spec, depth).up_to(depth):
        g = w + x + inverse(w) if side == "left" else inverse(w) + x + w
        k = spec.key(g)
        if k not in table:
            table[k] = w
    return table


def conjugator_search(spec: AmalgamSpec, u, v, radius: int, split: int | None = None):
    """Shortlex-least g with |g| <= radius and g u g^-1 = v, or None.

    With canonical keys the search meets in the middle: g = w2 w1 with
    w1 u w1^-1 = w2^-1 v w2, |w1| <= split and |w2| <= radius - split.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    u, v = _as_word(spec, u), _as_word(spec, v)
    if not spec.has_key:
        for g in ball(spec, radius).up_to(radius):
            if spec.is_trivial(g + u + inverse(g) + inverse(v)):
                return g
        return None
    d1 = radius // 2 if split is None else min(split, radius)
    d2 = radius - d1
    tu = _conjugation_table(spec, free_reduce(u), d1, "left")
    tv = _conjugation_table(spec, free_reduce(v), d2, "right")
    if len(tv) < len(tu):
        pairs = ((tu.get(k), w2) for k, w2 in tv.items())
    else:
        pairs = ((w1, tv.get(k)) for k, w1 in tu.items())
    best = None
    for w1, w2 in pairs:
        if w1 is None or w2 is None:
            continue
        cand = w2 + w1
        if best is None or shortlex_key(cand) < shortlex_key(best):
            best = cand
    if best is not None and not spec.is_trivial(best + u + inverse(best) + inverse(v)):
        raise AssertionError("conjugator failed re-verification")
    return best


def centralizer_ball(spec: AmalgamSpec, S: Sequence, radius: int) -> list:
    S = [_as_word(spec, s) for s in S]
    out = []
    for g in ball(spec, radius).up_to(radius):
        if all(spec.is_trivial(g + s + inverse(g) + inverse(s)) for s in S):
            out.append(g)
    return out


def check_conj_ab(spec: AmalgamSpec, a, a2, b, b2, radius: int) -> dict:
    """Compare a bounded conjugator search with the edge-conjugation criterion
    for length-two elements ab and a'b'."""
    if spec.edge_elements is None:
        raise Unsupported("exhaustive edge enumeration needs a finite edge subgroup")
    for w, tag, name in ((a, L, "a"), (a2, L, "a'"), (b, R, "b"), (b2, R, "b'")):
        if spec.in_edge(tag, tuple(w)):
            raise ValueError(f"{name} lies in the edge subgroup")
    u = spec.to_word([(L, a), (R, b)])
    v = spec.to_word([(L, a2), (R, b2)])
    witnesses = [
        c for c, _ in spec.edge_elements
        if amalgam_equal(spec, c + u + inverse(c), v)
    ]
    exists_c = bool(witnesses)
    bl = ball(spec, radius)
    c_lengths = [len(r) for r in (bl.lookup(c) for c in witnesses) if r is not None]
    found = conjugator_search(spec, u, v, radius)
    ok = (found is None or exists_c) and (not c_lengths or found is not None)
    return {
        "u": spec.format(u),
        "v": spec.format(v),
        "exists_c": exists_c,
        "witness_c": [spec.format(c) for c in witnesses],
        "bfs": None if found is None else spec.format(found),
        "radius": radius,
        "pass": ok,
    }


def _outside_edge(spec: AmalgamSpec, tag: int) -> list:
    """Shortlex words for the elements of a finite factor outside the edge group."""
    table = spec.tables[tag]
    emb = set(spec.embeddings[tag])
    return [table.word_for(x) for x in range(table.order) if x not in emb]


def lemma_conj_ab_exhaustive(spec: AmalgamSpec, radius: int) -> dict:
    """check_conj_ab over every (a, a', b, b') with a, a' in A - C and b, b' in B - C."""
    if getattr(spec, "tables", None) is None:
        raise Unsupported("exhaustive checks need an amalgam of finite tables")
    As, Bs = _outside_edge(spec, L), _outside_edge(spec, R)
    failures, total = [], 0
    for a in As:
        for b in Bs:
            for a2 in As:
                for b2 in Bs:
                    rep = check_conj_ab(spec, a, a2, b, b2, radius)
                    total += 1
                    if not rep["pass"]:
                        failures.append(rep)
    return {"checked": total, "counterexamples": failures, "pass": not failures}


def lemma_centralizer_exhaustive(spec: AmalgamSpec, radius: int, max_size: int = 2) -> dict:
    """For every non-empty S in A - C with |S| <= max_size, compare the centralizer
    of S inside the ball with Z_A(S) intersected with the ball."""
    if getattr(spec, "tables", None) is None:
        raise Unsupported("exhaustive checks need an amalgam of finite tables")
    A = spec.tables[L]
    emb = set(spec.embeddings[L])
    outside = [x for x in range(A.order) if x not in emb]
    bl = ball(spec, radius)
    failures, total = [], 0
    for size in range(1, max_size + 1):
        for S in itertools.combinations(outside, size):
            words = [A.word_for(x) for x in S]
            got = {spec.key(w) for w in centralizer_ball(spec, words, radius)}
            expected = set()
            for z in A.centralizer(list(S)):
                r = bl.lookup(A.word_for(z))
                if r is not None and len(r) <= radius:
                    expected.add(spec.key(r))
            total += 1
            if got != expected:
                failures.append({"S": [spec.format(w) for w in words], "extra": len(got - expected), "missing": len(expected - got)})
    return {"checked": total, "counterexamples": failures, "pass": not failures}


def kerphi_double(A: FiniteGroupTable, B: FiniteGroupTable, Q: FiniteGroupTable, phi: GeneratorMap):
    """D = G *_{Q^} G_bar with G = (A * B) x Q and Q^ = {(phi(q), q)}."""
    oa, ob, oq = FiniteOracle(A), FiniteOracle(B), FiniteOracle(Q)
    ab = FreeProductOracle(oa, ob)
    phi_ab = GeneratorMap(
        phi.source, ab.alphabet,
        tuple(tuple(x + oa.n_gens if x > 0 else x - oa.n_gens for x in w) for w in phi.images),
    )
    spec = graph_double(ab, oq, phi_ab)
    return spec


def check_kerphi_characteristic(
    A: FiniteGroupTable,
    B: FiniteGroupTable,
    Q: FiniteGroupTable,
    phi: GeneratorMap,
    radius: int,
) -> dict:
    """Check that ker(phi) centralizes A, A^b, A_bar, A_bar^b_bar and equals
    Q meet Q_bar inside the ball, for the double of (A*B) x Q along Q^."""
    report = {"radius": radius, "preconditions": [], "checks": {}}
    # hypotheses
    phi_table = _hom_from_map(Q, B, phi)
    if phi_table is None:
        report["preconditions"].append("phi is not a homomorphism Q -> B")
    if any(any(x != Q.identity for x in h) for h in homomorphisms(A, Q)):
        report["preconditions"].append("a nontrivial homomorphism A -> Q exists")
    if any(len(set(h)) == A.order for h in homomorphisms(A, B)):
        report["preconditions"].append("B contains a copy of A")
    if report["preconditions"]:
        report["status"] = "precondition-violation"
        return report

    spec = kerphi_double(A, B, Q, phi)
    G = spec.factors[L]
    na, nb = A.alphabet.__len__(), B.alphabet.__len__()
    q_off = na + nb

    def q_word(q):
        return tuple(x + q_off if x > 0 else x - q_off for x in Q.word_for(q))

    def b_word(b):
        return tuple(x + na if x > 0 else x - na for x in B.word_for(b))

    kernel = [q for q in range(Q.order) if phi_table[q] == B.identity]
    kernel_words = [q_word(q) for q in kernel]
    b_elt = next(x for x in range(B.order) if x != B.identity)
    bw = b_word(b_elt)
    a_gens = [(i + 1,) for i in range(na)]
    targets = {
        "A": [g for g in a_gens],
        "A^b": [bw + g + inverse(bw) for g in a_gens],
        "A_bar": [spec.right_word(g) for g in a_gens],
        "A_bar^b_bar": [spec.right_word(bw + g + inverse(bw)) for g in a_gens],
    }
    bl = ball(spec, radius)
    centralizes = {}
    for name, gens in targets.items():
        centralizes[name] = all(
            spec.is_trivial(k + g + inverse(k) + inverse(g))
            for k in kernel_words if bl.lookup(k) is not None
            for g in gens
        )
    report["checks"]["kernel_centralizes"] = centralizes

    reps = bl.up_to(radius)
    q_keys = {spec.key(q_word(q)) for q in range(Q.order)}
    qbar_keys = {spec.key(spec.right_word(q_word(q))) for q in range(Q.order)}
    meet = [w for w in reps if spec.key(w) in q_keys and spec.key(w) in qbar_keys]
    ker_in_ball = [r for r in (bl.lookup(k) for k in kernel_words) if r is not None]
    meet_set = {spec.key(w) for w in meet}
    ker_set = {spec.key(w) for w in ker_in_ball}
    report["checks"]["Q_meet_Qbar"] = sorted(spec.format(w) for w in meet)
    report["checks"]["ker_phi"] = sorted(spec.format(w) for w in ker_in_ball)
    report["checks"]["meet_equals_kernel"] = meet_set == ker_set

    # the centralizer of A together with A^b, inside the ball, is Q
    cent = centralizer_ball(spec, targets["A"] + targets["A^b"], radius)
    cent_keys = {spec.key(w) for w in cent}
    q_in_ball = {spec.key(r) for r in (bl.lookup(q_word(q)) for q in range(Q.order)) if r is not None}
    report["checks"]["centralizer_is_Q"] = cent_keys == q_in_ball
    report["kernel_size"] = len(kernel)
    ok = all(centralizes.values()) and report["checks"]["meet_equals_kernel"] and report["checks"]["centralizer_is_Q"]
    report["status"] = "pass" if ok else "fail"
    return report


def _hom_from_map(Q: FiniteGroupTable, B: FiniteGroupTable, phi: GeneratorMap):
    """Element table of the homomorphism defined by generator images, or None."""
    if phi.source != Q.alphabet or phi.target != B.alphabet:
        raise MalformedInput("phi must map Q's generators to words over B's generators")
    images = [B.evaluate(w) for w in phi.images]
    f = {}
    for q, w in Q.words.items():
        y = B.identity
        for x in w:
            g = images[x - 1] if x > 0 else B.inv[images[-x - 1]]
            y = B.mult[y][g]
        f[q] = y
    if len(f) != Q.order:
        return None
    for x in range(Q.order):
        for y in range(Q.order):
            if f[Q.mult[x][y]] != B.mult[f[x]][f[y]]:
                return None
    return [f[q] for q in range(Q.order)]

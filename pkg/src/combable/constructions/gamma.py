"""The family Gamma_n: doubles of (A * B) x F along the graph subgroups Sigma_n,
the retraction onto F, Rapaport automorphisms and isomorphism witnesses."""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from ..amalgam import AmalgamSpec, graph_double
from ..oracle import FiniteGroupTable, FiniteOracle, FreeOracle, FreeProductOracle, GroupOracle
from ..presentation import FinitePresentation, HomCertificate, verify_iso_certificate
from ..words import (
    Alphabet,
    GeneratorMap,
    MalformedInput,
    NielsenRecord,
    RightMultiply,
    Word,
    commutator,
    free_reduce,
    inverse,
    invert_record,
    letter_key,
    multiply,
    nielsen_to_map,
    shift,
)


class SurjectivityNotWitnessed(RuntimeError):
    pass


@dataclass(frozen=True)
class GammaSpec:
    """X and R present (A * B) x F; F is free on sigma_names + tau_names."""

    x: Alphabet
    relators: tuple
    sigma_names: tuple
    tau_names: tuple
    b_names: tuple
    s: tuple
    h_oracle: GroupOracle | None = None

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        object.__setattr__(self, "s", tuple(free_reduce(w) for w in self.s))
        if len(self.sigma_names) != len(self.tau_names):
            raise MalformedInput("need as many tau generators as sigma generators")
        if len(self.s) != self.m:
            raise MalformedInput(f"{len(self.s)} words in S_n for m = {self.m}")
        for name in self.sigma_names + self.tau_names + self.b_names:
            self.x.index(name)
        nb = len(self.b_names)
        for w in self.s:
            if any(abs(y) > nb for y in w):
                raise MalformedInput("S_n words must be over B")

    @property
    def m(self) -> int:
        return len(self.sigma_names)

    @property
    def f_alphabet(self) -> Alphabet:
        return Alphabet(tuple(self.sigma_names) + tuple(self.tau_names))

    def b_to_x(self, w) -> Word:
        idx = [self.x.index(n) for n in self.b_names]
        return tuple(idx[y - 1] + 1 if y > 0 else -(idx[-y - 1] + 1) for y in w)

    def f_to_x(self, w) -> Word:
        idx = [self.x.index(n) for n in self.f_alphabet.names]
        return tuple(idx[y - 1] + 1 if y > 0 else -(idx[-y - 1] + 1) for y in w)

    def with_s(self, s) -> "GammaSpec":
        return GammaSpec(self.x, self.relators, self.sigma_names, self.tau_names, self.b_names, tuple(s), self.h_oracle)


def gamma_spec(
    a_table: FiniteGroupTable,
    b_oracle: GroupOracle,
    s: Sequence[Word],
    b_relators: Sequence[Word] = (),
    sigma: str = "sigma",
    tau: str = "tau",
) -> GammaSpec:
    """X = A gens, B gens, sigma_i, tau_i; R = R_A, R_B and [y, f] for y in A or B, f in F."""
    m = len(s)
    a_names, b_names = a_table.alphabet.names, b_oracle.alphabet.names
    sig = tuple(f"{sigma}{i + 1}" for i in range(m))
    ta = tuple(f"{tau}{i + 1}" for i in range(m))
    x = Alphabet(a_names + b_names + sig + ta)
    na, nb = len(a_names), len(b_names)
    rels = list(a_table.relators())
    rels += [shift(r, na) for r in b_relators]
    for y in range(1, na + nb + 1):
        for f in range(na + nb + 1, na + nb + 2 * m + 1):
            rels.append(commutator((y,), (f,)))
    h = FreeProductOracle(FiniteOracle(a_table), b_oracle)
    return GammaSpec(x, tuple(rels), sig, ta, b_names, tuple(s), h)


def gamma_presentation(spec: GammaSpec) -> FinitePresentation:
    n = len(spec.x)
    bar = spec.x.suffixed("_bar")
    clash = set(bar.names) & set(spec.x.names)
    if clash:
        raise MalformedInput(f"bar copy collides with generators {sorted(clash)}")
    rels = list(spec.relators) + [shift(r, n) for r in spec.relators]
    for t in spec.tau_names:
        i = spec.x.index(t) + 1
        rels.append((i, -(i + n)))
    for name, w in zip(spec.sigma_names, spec.s):
        word = multiply((spec.x.index(name) + 1,), spec.b_to_x(w))
        rels.append(free_reduce(word + inverse(shift(word, n))))
    return FinitePresentation(spec.x + bar, tuple(rels))


def _require_oracle(spec: GammaSpec) -> GroupOracle:
    if spec.h_oracle is None:
        raise MalformedInput("this GammaSpec carries no oracle for A * B")
    expected = spec.x.names[: len(spec.x) - 2 * spec.m]
    if spec.h_oracle.alphabet.names != expected or spec.x.names[len(expected):] != spec.f_alphabet.names:
        raise MalformedInput("oracle-backed GammaSpec needs X ordered as A * B gens, then sigma, tau")
    return spec.h_oracle


def phi_n(spec: GammaSpec) -> GeneratorMap:
    """sigma_i -> s_i, tau_i -> 1, as a map F -> A * B."""
    h = _require_oracle(spec)
    nb_off = h.n_gens - len(spec.b_names)
    images = tuple(shift(w, nb_off) for w in spec.s) + ((),) * spec.m
    return GeneratorMap(spec.f_alphabet, h.alphabet, images)


@functools.lru_cache(maxsize=64)
def gamma_oracle(spec: GammaSpec) -> AmalgamSpec:
    h = _require_oracle(spec)
    return graph_double(h, FreeOracle(spec.f_alphabet), phi_n(spec))


def sigma_membership(spec: GammaSpec):
    h = _require_oracle(spec)
    phi = phi_n(spec)

    def member(g, x) -> bool:
        return h.is_trivial(tuple(g) + inverse(phi(x)))

    return member


def retraction_to_F(spec: GammaSpec, w) -> Word:
    n = len(spec.x)
    f_index = {spec.x.index(name) + 1: j + 1 for j, name in enumerate(spec.f_alphabet.names)}
    out = []
    for y in w:
        a = abs(y)
        if a == 0 or a > 2 * n:
            raise MalformedInput(f"letter {y} is not a generator of Gamma_n")
        if a > n:
            a -= n
        if a in f_index:
            out.append(f_index[a] if y > 0 else -f_index[a])
    return free_reduce(out)


def include_F(spec: GammaSpec, w) -> Word:
    return spec.f_to_x(w)


# -- Rapaport automorphisms --------------------------------------------------

def _shortlex_witnesses(Q: GroupOracle, images: Sequence[Word], targets: Sequence[Word], max_len: int):
    """Shortlex-least words over symbols 1..m (symbol j evaluating to images[j-1])
    equal in Q to each target, or None where none exists up to max_len."""
    m = len(images)
    symbols = sorted([j for i in range(1, m + 1) for j in (i, -i)], key=letter_key)
    found = [None] * len(targets)

    def note(word, img):
        for t, tgt in enumerate(targets):
            if found[t] is None and Q.equal(img, tgt):
                found[t] = word

    note((), ())
    frontier = [((), ())]
    seen = {Q.key(())} if Q.has_key else None
    for _ in range(max_len):
        if all(f is not None for f in found):
            break
        nxt = []
        for word, img in frontier:
            for y in symbols:
                if word and word[-1] == -y:
                    continue
                im = Q.reduce(img + (images[y - 1] if y > 0 else inverse(images[-y - 1])))
                if seen is not None:
                    k = Q.key(im)
                    if k in seen:
                        continue
                    seen.add(k)
                nxt.append((word + (y,), im))
                note(word + (y,), im)
        frontier = nxt
    return found


@dataclass(frozen=True)
class RapaportResult:
    record: NielsenRecord
    map: GeneratorMap
    u: tuple
    v: tuple


def rapaport_automorphism(
    Q: GroupOracle,
    g: Sequence[Word],
    sigma_images: Sequence[Word],
    max_len: int = 8,
    f_alphabet: Alphabet | None = None,
) -> RapaportResult:
    """Automorphism Phi of F(sigma, tau) with phi(Phi(sigma_i)) = 1 and
    phi(Phi(tau_i)) = g_i, where phi(sigma_i) = sigma_images[i], phi(tau_i) = 1."""
    m = len(sigma_images)
    if len(g) != m:
        raise MalformedInput(f"{len(g)} targets for {m} sigma images")
    if f_alphabet is None:
        f_alphabet = Alphabet(tuple(f"sigma{i + 1}" for i in range(m)) + tuple(f"tau{i + 1}" for i in range(m)))
    if len(f_alphabet) != 2 * m:
        raise MalformedInput("F alphabet must have 2m generators")
    g = [Q.reduce(w) for w in g]
    sigma_images = [Q.reduce(w) for w in sigma_images]
    u = _shortlex_witnesses(Q, sigma_images, g, max_len)
    if None in u:
        i = u.index(None)
        raise SurjectivityNotWitnessed(f"target {i + 1} is not a product of sigma images of length <= {max_len}")
    v = _shortlex_witnesses(Q, g, sigma_images, max_len)
    if None in v:
        i = v.index(None)
        raise SurjectivityNotWitnessed(f"sigma image {i + 1} is not a product of targets of length <= {max_len}")
    moves = []
    for i, ui in enumerate(u):
        moves += [RightMultiply(m + i, abs(y) - 1, 1 if y > 0 else -1) for y in ui]
    for i, vi in enumerate(v):
        moves += [RightMultiply(i, m + abs(y) - 1, 1 if y > 0 else -1) for y in inverse(vi)]
    record = NielsenRecord(f_alphabet, tuple(moves))
    Phi = nielsen_to_map(record)
    phi = GeneratorMap(f_alphabet, Q.alphabet, tuple(sigma_images) + ((),) * m)
    for i in range(m):
        if not Q.is_trivial(phi(Phi.images[i])) or not Q.equal(phi(Phi.images[m + i]), g[i]):
            raise AssertionError("Rapaport postcondition failed")
    return RapaportResult(record, Phi, tuple(u), tuple(v))


# -- isomorphism witnesses -----------------------------------------------------

def _swap_st(m: int, w) -> Word:
    return tuple((y + m if abs(y) <= m else y - m) if y > 0 else (y - m if abs(y) <= m else y + m) for y in w)


def _gamma_map(source: GammaSpec, target: GammaSpec, f_images: Sequence[Word]) -> GeneratorMap:
    """Identity on A * B, f -> f_images on F, and the same on the bar copy."""
    n = len(source.x)
    f_pos = {source.x.index(name): j for j, name in enumerate(source.f_alphabet.names)}
    images = []
    for k in range(n):
        if k in f_pos:
            images.append(target.f_to_x(f_images[f_pos[k]]))
        else:
            images.append((k + 1,))
    images += [shift(w, n) for w in images]
    src = gamma_presentation(source).alphabet
    return GeneratorMap(src, gamma_presentation(target).alphabet, tuple(images))


def iso_witness(spec_n: GammaSpec, spec_n2: GammaSpec, b_oracle: GroupOracle | None = None, max_len: int = 8):
    """Certificates for Gamma_n' -> Gamma_n and back, built from a Rapaport automorphism."""
    same = (spec_n.x, spec_n.relators, spec_n.sigma_names, spec_n.tau_names, spec_n.b_names)
    if same != (spec_n2.x, spec_n2.relators, spec_n2.sigma_names, spec_n2.tau_names, spec_n2.b_names):
        raise MalformedInput("the two specs must differ only in S_n")
    if b_oracle is None:
        h = _require_oracle(spec_n)
        b_oracle = h.factors[1]
    m = spec_n.m
    res = rapaport_automorphism(b_oracle, spec_n2.s, spec_n.s, max_len, spec_n.f_alphabet)
    Phi = res.map
    Phi_inv = nielsen_to_map(invert_record(res.record))
    # alpha(sigma_i) = Phi(tau_i), alpha(tau_i) = Phi(sigma_i)
    alpha = [Phi.images[m + i] for i in range(m)] + [Phi.images[i] for i in range(m)]
    alpha_inv = [_swap_st(m, w) for w in Phi_inv.images]
    c1 = HomCertificate(gamma_presentation(spec_n2), gamma_oracle(spec_n), _gamma_map(spec_n2, spec_n, alpha))
    c2 = HomCertificate(gamma_presentation(spec_n), gamma_oracle(spec_n2), _gamma_map(spec_n, spec_n2, alpha_inv))
    return c1, c2


def mutate_image(c: HomCertificate, gen: int, pos: int) -> HomCertificate:
    """Replace letter ``pos`` of the image of generator ``gen`` by the first
    other letter that differs from it in the target group."""
    img = list(c.images.images[gen])
    old = img[pos]
    for y in c.target.alphabet.letters():
        if y != old and not c.target.is_trivial((old, -y)):
            img[pos] = y
            break
    images = list(c.images.images)
    images[gen] = tuple(img)
    return HomCertificate(c.source, c.target, GeneratorMap(c.images.source, c.images.target, tuple(images)))


def verify_witness(c1: HomCertificate, c2: HomCertificate) -> bool:
    return verify_iso_certificate(c1, c2)

"""Finite presentations, their text format, homomorphism certificates and
presentation-sequence sources."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .folding import fold_subgroup
from .oracle import GroupOracle, Undecided
from .words import (
    Alphabet,
    GeneratorMap,
    MalformedInput,
    apply_map,
    format_word,
    free_reduce,
    inverse,
    parse_word,
)


class PresentationSyntaxError(MalformedInput):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class FinitePresentation:
    alphabet: Alphabet
    relators: tuple = ()

    def __post_init__(self):
        rels = tuple(tuple(r) for r in self.relators)
        n = len(self.alphabet)
        for r in rels:
            if free_reduce(r, n) != r:
                raise MalformedInput(f"relator {r} is not freely reduced")
            if not r:
                raise MalformedInput("empty relator")
        object.__setattr__(self, "relators", rels)

    @classmethod
    def from_strings(cls, gens: Sequence[str], relators: Sequence[str]) -> "FinitePresentation":
        alphabet = Alphabet(tuple(gens))
        return cls(alphabet, tuple(parse_word(r, alphabet) for r in relators))

    @property
    def n_gens(self) -> int:
        return len(self.alphabet)

    def format_relators(self) -> list:
        return [format_word(r, self.alphabet) for r in self.relators]


def parse_presentation(text: str) -> FinitePresentation:
    alphabet = None
    relators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        head = head.strip()
        if not sep or head not in ("gens", "rel"):
            raise PresentationSyntaxError(lineno, f"expected 'gens:' or 'rel:', got {line!r}")
        if head == "gens":
            if alphabet is not None:
                raise PresentationSyntaxError(lineno, "second 'gens:' line")
            try:
                alphabet = Alphabet(tuple(body.split()))
            except MalformedInput as e:
                raise PresentationSyntaxError(lineno, str(e)) from None
        else:
            if alphabet is None:
                raise PresentationSyntaxError(lineno, "'rel:' before 'gens:'")
            try:
                r = parse_word(body, alphabet)
            except MalformedInput as e:
                raise PresentationSyntaxError(lineno, str(e)) from None
            if not r:
                raise PresentationSyntaxError(lineno, "relator reduces to the empty word")
            relators.append(r)
    if alphabet is None:
        raise PresentationSyntaxError(0, "missing 'gens:' line")
    return FinitePresentation(alphabet, tuple(relators))


def serialize(p: FinitePresentation) -> str:
    lines = ["gens: " + " ".join(p.alphabet.names)]
    lines += ["rel: " + format_word(r, p.alphabet) for r in p.relators]
    return "\n".join(lines) + "\n"


def load_presentation(path) -> FinitePresentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


# -- certificates ----------------------------------------------------------

@dataclass(frozen=True)
class HomCertificate:
    """Claims that ``images`` defines a homomorphism from ``source`` into the target group."""

    source: FinitePresentation
    target: GroupOracle
    images: GeneratorMap

    def __post_init__(self):
        if self.images.source != self.source.alphabet:
            raise MalformedInput("certificate images do not match the source alphabet")
        if self.images.target != self.target.alphabet:
            raise MalformedInput("certificate images do not match the target alphabet")

    def to_json(self, verdict=None) -> dict:
        return {
            "source": serialize(self.source),
            "images": [format_word(w, self.images.target) for w in self.images.images],
            "verdict": verdict,
        }


def _decide_all(checks) -> bool:
    """False as soon as one check is decided False; Undecided if none fails but one is open."""
    undecided = None
    for check in checks:
        try:
            if not check():
                return False
        except Undecided as e:
            undecided = e
    if undecided is not None:
        raise undecided
    return True


def verify_hom_certificate(c: HomCertificate) -> bool:
    return _decide_all(
        (lambda r=r: c.target.is_trivial(apply_map(c.images, r))) for r in c.source.relators
    )


def verify_iso_certificate(c1: HomCertificate, c2: HomCertificate) -> bool:
    """c1: P -> Q and c2: Q -> P are mutually inverse homomorphisms."""
    if c1.images.target != c2.source.alphabet or c2.images.target != c1.source.alphabet:
        raise MalformedInput("certificates do not compose")
    if not verify_hom_certificate(c1) or not verify_hom_certificate(c2):
        return False
    back = c2.images.compose(c1.images)
    forth = c1.images.compose(c2.images)
    return _decide_all(
        [
            (lambda i=i, w=w: c2.target.is_trivial(w + inverse(((i + 1),))))
            for i, w in enumerate(back.images)
        ]
        + [
            (lambda i=i, w=w: c1.target.is_trivial(w + inverse(((i + 1),))))
            for i, w in enumerate(forth.images)
        ]
    )


# -- generating sets and sequence sources -----------------------------------

def pad_generating_set(S: Sequence, m: int) -> list:
    """Extend S to exactly m entries by repeating its last element."""
    S = list(S)
    if len(S) > m:
        raise ValueError(f"generating set has {len(S)} > {m} elements")
    if not S:
        return [()] * m
    return S + [S[-1]] * (m - len(S))


def same_subgroup(S: Sequence, T: Sequence, n_gens: int) -> bool:
    return fold_subgroup(S, n_gens) == fold_subgroup(T, n_gens)


@dataclass(frozen=True)
class SequenceSource:
    name: str
    _at: Callable
    _truth: Callable
    length: int | None = None

    def at(self, n: int) -> FinitePresentation:
        if n < 0 or (self.length is not None and n >= self.length):
            raise IndexError(f"source {self.name!r} has no entry {n}")
        return self._at(n)

    def ground_truth(self, n: int) -> str:
        return self._truth(n)


def _pad_relators(p: FinitePresentation, count: int) -> FinitePresentation:
    return FinitePresentation(p.alphabet, tuple(pad_generating_set(p.relators, count)))


_TRIVIAL = FinitePresentation.from_strings(["a", "b"], ["a", "b"])
_INFINITE = FinitePresentation.from_strings(["a", "b"], ["a"])


def make_sequence_source(kind: str, params: dict | None = None) -> SequenceSource:
    """Deterministic presentation sequences with known answers, standing in for
    families whose triviality cannot be decided."""
    params = dict(params or {})
    if kind == "toy-trivial":
        count = params.get("relators", 2)
        p = _pad_relators(_TRIVIAL, count)
        return SequenceSource(kind, lambda n: p, lambda n: "trivial")
    if kind == "toy-infinite":
        count = params.get("relators", 1)
        p = _pad_relators(_INFINITE, count)
        return SequenceSource(kind, lambda n: p, lambda n: "infinite")
    if kind == "alternating":
        count = params.get("relators", 2)
        ps = (_pad_relators(_TRIVIAL, count), _pad_relators(_INFINITE, count))
        return SequenceSource(
            kind, lambda n: ps[n % 2], lambda n: "trivial" if n % 2 == 0 else "infinite"
        )
    if kind == "file-backed":
        path = params.get("path")
        text = params.get("text")
        if text is None:
            if path is None:
                raise MalformedInput("file-backed source needs 'path' or 'text'")
            text = Path(path).read_text(encoding="utf-8")
        return _file_source(text)
    raise MalformedInput(f"unknown sequence source kind {kind!r}")


def _file_source(text: str) -> SequenceSource:
    """Sections separated by '---' lines; each a presentation plus optional 'truth: label'."""
    sections, current = [], []
    for line in text.splitlines():
        if line.strip() == "---":
            sections.append(current)
            current = []
        else:
            current.append(line)
    sections.append(current)
    sections = [s for s in sections if any(ln.split("#", 1)[0].strip() for ln in s)]
    if not sections:
        raise MalformedInput("file-backed source is empty")
    pres, truths = [], []
    for sec in sections:
        truth = "unknown"
        body = []
        for ln in sec:
            stripped = ln.split("#", 1)[0].strip()
            if stripped.startswith("truth:"):
                truth = stripped.split(":", 1)[1].strip()
                if truth not in ("trivial", "infinite", "unknown"):
                    raise MalformedInput(f"bad ground truth {truth!r}")
            else:
                body.append(ln)
        pres.append(parse_presentation("\n".join(body)))
        truths.append(truth)
    alphabet = pres[0].alphabet
    if any(p.alphabet != alphabet for p in pres):
        raise MalformedInput("file-backed presentations must share one alphabet")
    count = max(len(p.relators) for p in pres)
    if any(not p.relators for p in pres):
        raise MalformedInput("file-backed presentations need at least one relator")
    pres = [_pad_relators(p, count) for p in pres]
    return SequenceSource(
        "file-backed", lambda n: pres[n], lambda n: truths[n], length=len(pres)
    )


def certificate_record(c: HomCertificate, verdict) -> str:
    return json.dumps(c.to_json(verdict), indent=2)

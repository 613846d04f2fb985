"""Batch command-line front end.

Exit codes: 0 success or PASS, 1 checked FAIL, 2 usage or precondition
error, 3 undecided at the given radius or budget.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import amalgam as am
from .combing import IncompleteCombing, fellow_traveller_bound, reduced_word_combing
from .constructions import (
    MissingOracle,
    SurjectivityNotWitnessed,
    UnsupportedRelator,
    fibre_desk,
    fibre_member,
    fibre_membership_instance,
    fibre_product_generators,
    gamma_presentation,
    iso_witness,
    kill_oracle_for,
    product_expression_search,
    rapaport_automorphism,
    retraction_to_F,
    rips_construction,
    small_cancellation_ratio,
)
from .constructions.rips import DEFAULT_K
from .oracle import BudgetedOracle, ResourceError, Undecided, ball, word_length
from .presentation import (
    HomCertificate,
    load_presentation,
    parse_presentation,
    serialize,
    verify_hom_certificate,
    verify_iso_certificate,
)
from .specs import load_gamma, load_oracle, load_table, read_json
from .words import Alphabet, GeneratorMap, MalformedInput, format_word, parse_word

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    radius: int = 6
    budget: int = 100_000
    out: str | None = None
    format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.radius < 0:
            raise UsageError("--radius must be >= 0")
        if self.budget <= 0:
            raise UsageError("--budget must be > 0")
        if self.format not in ("text", "json"):
            raise UsageError("--format must be text or json")


@dataclass
class Result:
    code: int
    data: object
    text: str


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _free_spec(words):
    names = []
    for w in words:
        for tok in w.split():
            name = tok.split("^", 1)[0]
            if name != "1" and name not in names:
                names.append(name)
    return {"kind": "free", "gens": names}


def _spec(args, words=()):
    if args.spec is None:
        return load_oracle(_free_spec(words))
    return load_oracle(read_json(args.spec))


# -- commands ------------------------------------------------------------------

def cmd_fmt(args, cfg):
    p = load_presentation(args.file)
    text = serialize(p)
    return Result(EXIT_PASS, {"presentation": text}, text)


def cmd_fibre_gens(args, cfg):
    p = load_presentation(args.file)
    gens = [g.format(p.alphabet) for g in fibre_product_generators(p)]
    return Result(EXIT_PASS, {"generators": gens}, "\n".join(gens) + "\n")


def cmd_fibre_member(args, cfg):
    p = load_presentation(args.file)
    try:
        q = kill_oracle_for(p)
    except MalformedInput as e:
        raise UsageError(str(e)) from None
    w = parse_word(args.word, p.alphabet)
    pair = fibre_membership_instance(w)
    member = fibre_member(q, pair)
    expr = product_expression_search(fibre_product_generators(p), pair, cfg.radius) if member else None
    gens = [g.format(p.alphabet) for g in fibre_product_generators(p)]
    witness = None if expr is None else [f"{gens[i]}^{s}" for i, s in expr]
    data = {
        "kind": "fibre-membership",
        "inputs": {"word": format_word(w, p.alphabet)},
        "words": {"pair": pair.format(p.alphabet)},
        "verdict": member,
        "witness": witness,
    }
    text = f"{pair.format(p.alphabet)}: {'member' if member else 'non-member'}\n"
    if witness is not None:
        text += "witness: " + " ".join(witness) + "\n"
    return Result(EXIT_PASS if member else EXIT_FAIL, data, text)


def cmd_rips(args, cfg):
    p = load_presentation(args.file)
    out = rips_construction(p, args.k)
    data = {
        "k": out.k,
        "ratio": str(out.ratio),
        "certified": out.certified,
        "generators": len(out.presentation.alphabet),
        "relators": len(out.presentation.relators),
        "presentation": serialize(out.presentation),
    }
    if not out.certified:
        data["advice"] = out.advice
    text = serialize(out.presentation)
    return Result(EXIT_PASS if out.certified else EXIT_FAIL, data, text)


def cmd_sc_check(args, cfg):
    p = load_presentation(args.file)
    try:
        lam = small_cancellation_ratio(p.relators)
    except UnsupportedRelator as e:
        raise UsageError(str(e)) from None
    ok = lam < Fraction(1, 6)
    data = {"ratio": str(lam), "certified": ok}
    verdict = "C'(1/6) certified" if ok else "not below 1/6"
    text = f"lambda = {lam} ({verdict})\n"
    return Result(EXIT_PASS if ok else EXIT_FAIL, data, text)


def cmd_conj_instance(args, cfg):
    p = load_presentation(args.file)
    desk = fibre_desk(p)
    N = desk.n_oracle
    if args.random:
        rng = random.Random(cfg.seed)
        letters = N.alphabet.letters()
        bs = []
        for _ in range(args.random):
            bs.append(tuple(rng.choice(letters) for _ in range(rng.randint(1, 3))))
    else:
        if args.b is None:
            raise UsageError("conj-instance needs a word b over N or --random COUNT")
        bs = [parse_word(args.b, N.alphabet)]
    records = []
    for b in bs:
        inst = desk.instance(N.reduce(b))
        rec = inst.record()
        rec["inputs"]["normalized"] = desk.normalized
        records.append(rec)
    data = records[0] if len(records) == 1 and not args.random else records
    text = "".join(
        f"b = {r['inputs']['b']}\nu = {r['words']['u']}\nv = {r['words']['v']}\nverdict: {r['verdict']}\n"
        for r in records
    )
    return Result(EXIT_PASS, data, text)


def cmd_conj_search(args, cfg):
    spec = _spec(args, [args.u, args.v])
    u, v = spec.parse(args.u), spec.parse(args.v)
    g = am.conjugator_search(spec, u, v, cfg.radius)
    data = {
        "kind": "conjugator-search",
        "inputs": {"u": spec.format(u), "v": spec.format(v), "radius": cfg.radius},
        "verdict": None if g is None else True,
        "witness": None if g is None else spec.format(g),
    }
    if g is None:
        return Result(EXIT_UNDECIDED, data, f"no conjugator of length <= {cfg.radius} (undecided)\n")
    return Result(EXIT_PASS, data, f"conjugator: {spec.format(g)}\n")


def cmd_centralizer(args, cfg):
    spec = _spec(args, args.elements)
    S = [spec.parse(s) for s in args.elements]
    elts = [spec.format(w) for w in am.centralizer_ball(spec, S, cfg.radius)]
    return Result(EXIT_PASS, {"radius": cfg.radius, "centralizer": elts}, "\n".join(elts) + "\n")


def cmd_lemma_check(args, cfg):
    if args.which == "kerphi":
        d = read_json(args.spec)
        A, B, Q = load_table(d["A"]), load_table(d["B"]), load_table(d["Q"])
        phi = GeneratorMap.from_strings(Q.alphabet, B.alphabet, d["phi"])
        rep = am.check_kerphi_characteristic(A, B, Q, phi, cfg.radius)
        code = {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(rep["status"], EXIT_USAGE)
        return Result(code, rep, f"{rep['status']}\n" + "".join(f"violated: {p}\n" for p in rep["preconditions"]))
    spec = load_oracle(read_json(args.spec))
    if args.which == "conj-ab":
        rep = am.lemma_conj_ab_exhaustive(spec, cfg.radius)
    else:
        rep = am.lemma_centralizer_exhaustive(spec, cfg.radius)
    status = "pass" if rep["pass"] else "fail"
    text = f"{status}: {rep['checked']} cases, {len(rep['counterexamples'])} counterexamples\n"
    return Result(EXIT_PASS if rep["pass"] else EXIT_FAIL, rep, text)


def cmd_gamma_emit(args, cfg):
    spec = load_gamma(read_json(args.spec))
    p = gamma_presentation(spec)
    text = serialize(p)
    data = {"generators": len(p.alphabet), "relators": len(p.relators), "presentation": text}
    return Result(EXIT_PASS, data, text)


def cmd_retract(args, cfg):
    spec = load_gamma(read_json(args.spec))
    alphabet = gamma_presentation(spec).alphabet
    w = parse_word(args.word, alphabet)
    out = format_word(retraction_to_F(spec, w), spec.f_alphabet)
    return Result(EXIT_PASS, {"retraction": out}, out + "\n")


def cmd_rapaport(args, cfg):
    d = read_json(args.spec)
    Q = load_oracle(d["Q"])
    images = [parse_word(w, Q.alphabet) for w in d["sigma_images"]]
    targets = [parse_word(w, Q.alphabet) for w in d["targets"]]
    max_len = args.max_len
    try:
        res = rapaport_automorphism(Q, targets, images, max_len)
    except SurjectivityNotWitnessed as e:
        return Result(EXIT_UNDECIDED, {"error": str(e), "witness": None}, f"undecided: {e}\n")
    F = res.record.alphabet
    moves = [repr(mv) for mv in res.record.moves]
    data = {
        "u": [format_word(w, Alphabet(F.names[: len(images)])) for w in res.u],
        "v": [" ".join(f"g{abs(y)}" + ("^-1" if y < 0 else "") for y in w) or "1" for w in res.v],
        "moves": moves,
        "map": res.map.format(),
    }
    text = "".join(f"{k} -> {v}\n" for k, v in res.map.format().items())
    return Result(EXIT_PASS, data, text)


def _cert_json(c: HomCertificate, target_spec) -> dict:
    d = c.to_json()
    d.pop("verdict")
    d["target"] = target_spec
    return d


def cmd_iso_witness(args, cfg):
    d1, d2 = read_json(args.spec_n), read_json(args.spec_n2)
    s1, s2 = load_gamma(d1), load_gamma(d2)
    try:
        c1, c2 = iso_witness(s1, s2, max_len=args.max_len)
    except SurjectivityNotWitnessed as e:
        return Result(EXIT_UNDECIDED, {"error": str(e), "witness": None}, f"undecided: {e}\n")
    ok = verify_iso_certificate(c1, c2)
    data = {
        "forward": _cert_json(c1, dict(d1, kind="gamma")),
        "backward": _cert_json(c2, dict(d2, kind="gamma")),
        "verdict": ok,
    }
    text = "forward:\n" + "".join(f"  {k} -> {v}\n" for k, v in c1.images.format().items())
    text += "backward:\n" + "".join(f"  {k} -> {v}\n" for k, v in c2.images.format().items())
    text += f"verified: {ok}\n"
    return Result(EXIT_PASS if ok else EXIT_FAIL, data, text)


def _load_cert(d: dict, budget: int) -> HomCertificate:
    src = d["source"]
    source = parse_presentation(src) if "gens:" in src else load_presentation(src)
    target = BudgetedOracle(load_oracle(d["target"]), budget)
    images = tuple(parse_word(w, target.alphabet) for w in d["images"])
    return HomCertificate(source, target, GeneratorMap(source.alphabet, target.alphabet, images))


def cmd_verify_cert(args, cfg):
    d = read_json(args.cert)
    if "forward" in d:
        c1, c2 = _load_cert(d["forward"], cfg.budget), _load_cert(d["backward"], cfg.budget)
        ok = verify_iso_certificate(c1, c2)
    else:
        ok = verify_hom_certificate(_load_cert(d, cfg.budget))
    return Result(EXIT_PASS if ok else EXIT_FAIL, {"verdict": ok}, ("PASS" if ok else "FAIL") + "\n")


def cmd_fellow_traveller(args, cfg):
    spec = _spec(args)
    if args.combing == "reduced":
        nf = reduced_word_combing
    else:
        def nf(w):
            return ball(spec, word_length(spec, w)).lookup(w)
    k = fellow_traveller_bound(spec, nf, cfg.radius)
    return Result(EXIT_PASS, {"radius": cfg.radius, "combing": args.combing, "k": k}, f"k = {k}\n")


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", type=int, default=6)
    common.add_argument("--budget", type=int, default=100_000)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", default=None)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="combable", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    add("fmt", cmd_fmt, "parse and re-serialize a presentation").add_argument("file")
    add("fibre-gens", cmd_fibre_gens, "generators (a,a), (r,1) of the fibre product").add_argument("file")
    sp = add("fibre-member", cmd_fibre_member, "decide (w,1) in the fibre product")
    sp.add_argument("file")
    sp.add_argument("word")
    sp = add("rips", cmd_rips, "Rips-style presentation with small-cancellation certificate")
    sp.add_argument("file")
    sp.add_argument("--k", type=int, default=DEFAULT_K)
    add("sc-check", cmd_sc_check, "small-cancellation ratio of the relators").add_argument("file")
    sp = add("conj-instance", cmd_conj_instance, "conjugacy instance in the fibre-product double")
    sp.add_argument("file", help="presentation of Q")
    sp.add_argument("b", nargs="?")
    sp.add_argument("--random", type=int, default=0, metavar="COUNT")
    for name, func, help_text, extra in (
        ("conj-search", cmd_conj_search, "bounded conjugator search", ("u", "v")),
        ("centralizer", cmd_centralizer, "centralizer inside a ball", ()),
        ("fellow-traveller", cmd_fellow_traveller, "empirical fellow-traveller constant", ()),
    ):
        sp = add(name, func, help_text)
        sp.add_argument("--spec", default=None, help="oracle spec JSON (default: free group on the named letters)")
        for a in extra:
            sp.add_argument(a)
    sub.choices["centralizer"].add_argument("elements", nargs="+")
    sub.choices["fellow-traveller"].add_argument("--combing", choices=["reduced", "shortlex"], default="reduced")
    sp = add("lemma-check", cmd_lemma_check, "exhaustive lemma checks on finite amalgams")
    sp.add_argument("which", choices=["conj-ab", "centralizer", "kerphi"])
    sp.add_argument("spec")
    add("gamma-emit", cmd_gamma_emit, "emit the Gamma_n presentation").add_argument("spec")
    sp = add("retract", cmd_retract, "retraction of a Gamma_n word onto F")
    sp.add_argument("spec")
    sp.add_argument("word")
    sp = add("rapaport", cmd_rapaport, "Rapaport automorphism for sigma images and targets")
    sp.add_argument("spec")
    sp.add_argument("--max-len", type=int, default=8)
    sp = add("iso-witness", cmd_iso_witness, "isomorphism certificates Gamma_n' <-> Gamma_n")
    sp.add_argument("spec_n")
    sp.add_argument("spec_n2")
    sp.add_argument("--max-len", type=int, default=8)
    add("verify-cert", cmd_verify_cert, "verify a homomorphism or isomorphism certificate").add_argument("cert")
    return p


def _emit(result: Result, cfg: RunConfig) -> None:
    text = _json(result.data) if cfg.format == "json" else result.text
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    inputs = [v for k, v in vars(args).items() if k in ("file", "spec", "cert", "spec_n", "spec_n2") and v]
    try:
        cfg = RunConfig(args.command, inputs, args.radius, args.budget, args.out, args.format, args.seed)
        try:
            result = args.func(args, cfg)
        except (Undecided, ResourceError) as e:
            result = Result(EXIT_UNDECIDED, {"error": str(e), "witness": None}, f"undecided: {e}\n")
    except (UsageError, MalformedInput, ValueError, OSError, KeyError, IncompleteCombing, am.Unsupported, MissingOracle) as e:
        msg = f"missing field {e}" if isinstance(e, KeyError) else str(e)
        print(f"combable {args.command}: {msg}", file=sys.stderr)
        return EXIT_USAGE
    _emit(result, cfg)
    return result.code


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

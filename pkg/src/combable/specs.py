"""JSON descriptions of oracles, amalgams and Gamma_n specs used by the CLI."""
from __future__ import annotations

import json
from pathlib import Path

from .amalgam import finite_amalgam, graph_double, kerphi_double
from .constructions import fibre_desk, gamma_spec
from .constructions.gamma import GammaSpec
from .oracle import (
    DirectProductOracle,
    FiniteGroupTable,
    FiniteOracle,
    FreeOracle,
    FreeProductOracle,
    GroupOracle,
    KillOracle,
    cyclic_group,
    parse_table,
    symmetric_group_3,
    trivial_group,
)
from .presentation import load_presentation, parse_presentation
from .words import Alphabet, GeneratorMap, MalformedInput, parse_word


def read_json(path_or_text) -> dict:
    p = Path(path_or_text)
    text = p.read_text(encoding="utf-8") if p.exists() else str(path_or_text)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"spec is not valid JSON: {e}") from None


def _presentation(value):
    if "gens:" in value:
        return parse_presentation(value)
    return load_presentation(value)


def load_table(d: dict) -> FiniteGroupTable:
    kind = d.get("kind")
    if kind == "cyclic":
        return cyclic_group(int(d["n"]), d.get("gen", "c"))
    if kind == "s3":
        s, r = d.get("gens", ["s", "r"])
        return symmetric_group_3(s, r)
    if kind == "trivial":
        return trivial_group(d.get("gens", ["a"]))
    if kind == "table":
        if "text" in d:
            return parse_table(d["text"])
        return parse_table(Path(d["path"]).read_text(encoding="utf-8"))
    raise MalformedInput(f"unknown finite group kind {kind!r}")


def load_oracle(d: dict) -> GroupOracle:
    """Build a GroupOracle (amalgams included) from its JSON description."""
    if not isinstance(d, dict) or "kind" not in d:
        raise MalformedInput("an oracle spec is a JSON object with a 'kind' field")
    kind = d["kind"]
    if kind == "free":
        return FreeOracle(Alphabet(tuple(d["gens"])))
    if kind == "kill":
        return KillOracle(Alphabet(tuple(d["gens"])), d.get("killed", []))
    if kind in ("cyclic", "s3", "trivial", "table"):
        return FiniteOracle(load_table(d))
    if kind == "direct_product":
        a, b = d["factors"]
        return DirectProductOracle(load_oracle(a), load_oracle(b))
    if kind == "free_product":
        a, b = d["factors"]
        return FreeProductOracle(load_oracle(a), load_oracle(b))
    if kind == "finite_amalgam":
        return finite_amalgam(load_table(d["A"]), load_table(d["B"]), load_table(d["C"]), d["emb_a"], d["emb_b"])
    if kind == "graph_double":
        h, f = load_oracle(d["h"]), load_oracle(d["f"])
        phi = GeneratorMap.from_strings(f.alphabet, h.alphabet, d["phi"])
        return graph_double(h, f, phi)
    if kind == "kerphi":
        A, B, Q = load_table(d["A"]), load_table(d["B"]), load_table(d["Q"])
        return kerphi_double(A, B, Q, GeneratorMap.from_strings(Q.alphabet, B.alphabet, d["phi"]))
    if kind == "fibre_desk":
        desk = fibre_desk(_presentation(d["presentation"]))
        return desk.instance(()).spec
    if kind == "gamma":
        from .constructions import gamma_oracle

        return gamma_oracle(load_gamma(d))
    raise MalformedInput(f"unknown oracle kind {kind!r}")


def load_gamma(d: dict) -> GammaSpec:
    """Either oracle-backed {A, B, S[, b_relators]} or explicit {X, R, sigma, tau, B_names, S}."""
    if "X" in d:
        x = Alphabet(tuple(d["X"]))
        b_alpha = Alphabet(tuple(d["B_names"]))
        return GammaSpec(
            x,
            tuple(parse_word(r, x) for r in d["R"]),
            tuple(d["sigma"]),
            tuple(d["tau"]),
            b_alpha.names,
            tuple(parse_word(w, b_alpha) for w in d["S"]),
        )
    A = load_table(d["A"])
    B = load_oracle(d["B"])
    S = [parse_word(w, B.alphabet) for w in d["S"]]
    rels = [parse_word(r, B.alphabet) for r in d.get("b_relators", [])]
    return gamma_spec(A, B, S, rels)

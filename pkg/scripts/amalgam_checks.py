"""Exhaustive conjugacy and centralizer checks on small finite amalgams, and the
kernel check for the double of (A * B) x Q."""
import argparse
import json
import time

from combable.amalgam import (
    check_kerphi_characteristic,
    finite_amalgam,
    lemma_centralizer_exhaustive,
    lemma_conj_ab_exhaustive,
)
from combable.oracle import cyclic_group, symmetric_group_3
from combable.words import GeneratorMap


def amalgams():
    A, B, C = symmetric_group_3("s", "r"), symmetric_group_3("t", "u"), cyclic_group(2, "z")
    yield "S3 *_Z2 S3", finite_amalgam(A, B, C, [A.identity, A.gen_elements[0]], [B.identity, B.gen_elements[0]])
    yield "Z4 *_Z2 Z6", finite_amalgam(cyclic_group(4, "x"), cyclic_group(6, "y"), C, [0, 2], [0, 3])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius", type=int, default=8)
    ap.add_argument("--kerphi-radius", type=int, default=6)
    args = ap.parse_args()
    for name, spec in amalgams():
        for label, check in (("conj-ab", lemma_conj_ab_exhaustive), ("centralizer", lemma_centralizer_exhaustive)):
            t = time.perf_counter()
            rep = check(spec, args.radius)
            print(f"{name}\t{label}\tchecked={rep['checked']}\tcounterexamples={len(rep['counterexamples'])}"
                  f"\t{time.perf_counter() - t:.1f}s")
    A, B, Q = cyclic_group(2, "a"), cyclic_group(3, "b"), cyclic_group(3, "q")
    for image in ("1", "b", "b b"):
        t = time.perf_counter()
        phi = GeneratorMap.from_strings(Q.alphabet, B.alphabet, {"q": image})
        rep = check_kerphi_characteristic(A, B, Q, phi, args.kerphi_radius)
        print(f"kerphi q->{image}\t{rep['status']}\t{json.dumps(rep['checks'], sort_keys=True)}"
              f"\t{time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()

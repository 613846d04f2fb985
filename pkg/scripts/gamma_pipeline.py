"""Emit Gamma_n for two generating sets of B = F(a, b), build isomorphism
certificates both ways, verify them, and count how many single-letter
mutations are rejected."""
import argparse
import time

from combable.constructions import gamma_presentation, gamma_spec, iso_witness, mutate_image
from combable.oracle import FreeOracle, cyclic_group
from combable.presentation import serialize, verify_iso_certificate
from combable.words import Alphabet


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", nargs="+", default=["a", "b"], help="S_n as words in a, b")
    ap.add_argument("--s2", nargs="+", default=["b", "a b"], help="S_n' as words in a, b")
    ap.add_argument("--show", action="store_true", help="print both presentations")
    args = ap.parse_args()
    B = FreeOracle(Alphabet(("a", "b")))
    z2 = cyclic_group(2, "c")
    sn = gamma_spec(z2, B, [B.parse(w) for w in args.s])
    sn2 = gamma_spec(z2, B, [B.parse(w) for w in args.s2])
    if args.show:
        print(serialize(gamma_presentation(sn)))
        print(serialize(gamma_presentation(sn2)))
    t = time.perf_counter()
    c1, c2 = iso_witness(sn, sn2)
    print(f"certificates verify: {verify_iso_certificate(c1, c2)}")
    total = rejected = 0
    for cert, forward in ((c1, True), (c2, False)):
        for gi, img in enumerate(cert.images.images):
            for pos in range(len(img)):
                bad = mutate_image(cert, gi, pos)
                total += 1
                rejected += not verify_iso_certificate(*((bad, c2) if forward else (c1, bad)))
    print(f"mutations rejected: {rejected}/{total}")
    print(f"{time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()

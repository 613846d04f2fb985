"""Conjugacy instances from the fibre product of F(a, b) -> <a, b | a>: verdicts
against bounded conjugator search, bucketed by the length of b."""
import argparse
import collections
import time

from combable.constructions import exponent_sums_match, fibre_desk, planted_conjugator
from combable.oracle import FreeOracle, ball
from combable.presentation import FinitePresentation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-b", type=int, default=3)
    ap.add_argument("--radius", type=int, default=6)
    ap.add_argument("--split", type=int, default=2)
    args = ap.parse_args()
    desk = fibre_desk(FinitePresentation.from_strings(["a", "b"], ["a"]))
    N = desk.n_oracle
    t = time.perf_counter()
    rows = collections.defaultdict(collections.Counter)
    for b in ball(FreeOracle(N.alphabet), args.max_b).up_to(args.max_b):
        inst = desk.instance(b)
        assert inst.verdict == exponent_sums_match(desk, b, 1)
        found = inst.search(args.radius, split=args.split) is not None
        rows[len(b)][(inst.verdict, found)] += 1
        if inst.verdict and not found:
            g = planted_conjugator(desk, b, max_len=8)
            print(f"missed at radius {args.radius}: b = {N.format(b)}, planted conjugator length "
                  f"{'>8' if g is None else len(g)}")
    print("|b|\tconj+found\tconj+missed\tnot-conj+found\tnot-conj+none")
    for n in sorted(rows):
        c = rows[n]
        print(f"{n}\t{c[(True, True)]}\t{c[(True, False)]}\t{c[(False, True)]}\t{c[(False, False)]}")
    print(f"{time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()

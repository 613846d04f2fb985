"""Small-cancellation ratio of Rips output as a function of the padding parameter k."""
import argparse
import time

from combable.constructions import rips_construction
from combable.presentation import parse_presentation

SAMPLES = [
    "gens: a b\nrel: a b a^-1 b^-1\n",
    "gens: a b\nrel: a\nrel: b\n",
    "gens: a b c\nrel: a b a^-1 b^-2\nrel: c a c^-1 a^-2\n",
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2, 4, 8, 12, 16, 20, 24, 32])
    args = ap.parse_args()
    print("k\t" + "\t".join(f"sample{i + 1}" for i in range(len(SAMPLES))) + "\tseconds")
    for k in args.k:
        t = time.perf_counter()
        outs = [rips_construction(parse_presentation(s), k) for s in SAMPLES]
        cells = [f"{float(o.ratio):.4f}{'*' if o.certified else ''}" for o in outs]
        print(f"{k}\t" + "\t".join(cells) + f"\t{time.perf_counter() - t:.1f}")
    print("* = certified below 1/6")


if __name__ == "__main__":
    main()

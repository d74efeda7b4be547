"""Smallest ambient bound M whose forced zeros cover the Farey set F_N, for a range of N."""

import argparse

from infocoh.funceq import farey_grid, symmetry_propagation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, nargs="+", default=[5, 10, 20, 30, 40])
    args = ap.parse_args()
    print("N\t|F_N|\tM\tM/N\tcoverage")
    for N in args.N:
        found = None
        for M in range(N, 64 * N + 1):
            p = symmetry_propagation(1, N, M)
            if p.covered:
                found = p
                break
        if found is None:
            print("%d\t%d\t>%d\t-\t%.3f" % (N, len(farey_grid(N)), 64 * N, p.coverage))
        else:
            print("%d\t%d\t%d\t%.2f\t%.3f" % (N, len(farey_grid(N)), found.M, found.M / N, found.coverage))


if __name__ == "__main__":
    main()

"""Grid Z^1 dimension against N for the named examples, with its prime-log explanation.

At alpha = 1 every grid entropy is a rational combination of log q over primes q,
so each prime coefficient vector is itself in the nullspace; the table shows how
much of the nullity those vectors account for.
"""

import argparse
import time

from infocoh import catalog
from infocoh.cohomology import (
    assemble_z1_system, entropy_vector, grid_dimension_trend, nullspace_membership,
    prime_components, z1_h1_dimensions,
)
from infocoh.linalg import vector_rank

EXAMPLES = {
    "two_binary": catalog.two_binary,
    "two_block": catalog.two_block_example,
    "diagonal": catalog.diagonal_block_example,
    "chain": catalog.irreducible_chain,
}


def row(name, alpha, N):
    S, Q = EXAMPLES[name]()
    t0 = time.perf_counter()
    sy = assemble_z1_system(alpha, S, Q, N)
    d = z1_h1_dimensions(sy, alpha)
    out = [name, alpha, N, sy.n_rows, sy.n_cols, d.z1, d.h1]
    if alpha == 1:
        primes, vecs = prime_components(entropy_vector(sy, 1))
        vecs = [v for v in vecs if nullspace_membership(sy, v).exact_zero]
        out.append("%d (%d primes)" % (vector_rank(vecs) if vecs else 0, len(primes)))
    else:
        out.append("-")
    out.append("%.2fs" % (time.perf_counter() - t0))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--examples", default="two_binary,two_block,diagonal,chain")
    ap.add_argument("--alpha", type=float, nargs="+", default=[1, 2])
    ap.add_argument("--N", type=int, nargs="+", default=[3, 4, 5, 6])
    args = ap.parse_args()
    head = ["example", "alpha", "N", "rows", "unknowns", "z1", "h1", "prime span", "time"]
    print("\t".join(head))
    for name in args.examples.split(","):
        for a in args.alpha:
            a = int(a) if a == int(a) else a
            for N in args.N:
                print("\t".join(str(c) for c in row(name, a, N)))
            if a == 1:
                tr = grid_dimension_trend(1, *EXAMPLES[name](), args.N)
                print("# %s projected onto the N=%d unknowns: %s" % (name, tr.Ns[0], tr.projected))


if __name__ == "__main__":
    main()

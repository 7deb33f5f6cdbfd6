"""Print the nonzero entries of R(p) and check its symmetry.

    python3 scripts/rmatrix_table.py --m 3 --n 2 --p e12=1
"""

import argparse
import itertools

from hgw.cli.dsl import parse_ast
from hgw.exact import format_scalar
from hgw.findim.rmatrix import rmatrix


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--p", default="e12=1")
    args = ap.parse_args()
    p = parse_ast(args.p, args.m, args.n)
    R = rmatrix(p)
    N = args.m * args.n
    for i, j, l, k in itertools.product(range(1, N + 1), repeat=4):
        v = R(i, j, l, k)
        if v != 0:
            print(f"R[{i}{j}][{l}{k}] = {format_scalar(v)}")
    bad = R.check_symmetry()
    print("symmetry R_ij^lk = R_kl^ji:", "holds" if bad is None else f"fails at {bad}")


if __name__ == "__main__":
    main()

"""Verify a few small systems from the catalog and print one summary line each.

    python3 scripts/verify_catalog.py [--degree-cap D]
"""

import argparse
import time

from hgw.catalog import F_q, FieldMatrix, build_bef_system, build_hef_system, find_matching_pair
from hgw.exact import mpq
from hgw.group_algebras import group_algebra_system
from hgw.ncalg.ideal import Reducer
from hgw.system import verify_system


def systems():
    I2 = FieldMatrix.identity(2)
    yield "k[Z/2] as A=B=Z=T", group_algebra_system(2), {}
    yield "k[Z] as A=B=Z=T", group_algebra_system(None), {}
    yield "B(I2, I2)", build_bef_system(I2, I2), {}
    E, F = find_matching_pair(2, 3)
    yield f"B(E, F), E in GL2, F = {F.label()}", build_bef_system(E, F), {"arg_degree": 1}
    Fq = F_q(mpq(2))
    yield "H(F_2, F_2)", build_hef_system(Fq, Fq), {}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree-cap", type=int, default=3)
    args = ap.parse_args()
    for label, sys_, kw in systems():
        t0 = time.perf_counter()
        rep = verify_system(sys_, Reducer(args.degree_cap), **kw)
        print(f"{rep.verdict:13s} {len(rep.checks):3d} checks {time.perf_counter() - t0:6.1f}s  {label}")


if __name__ == "__main__":
    main()

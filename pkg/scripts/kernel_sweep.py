"""Measure the degree-1 kernel of the truncated G-complex against the cycle span.

Usage: python3 scripts/kernel_sweep.py [--cases 3:1 3:2 5:1 2:1 2:2]
"""

import argparse
import time

from sl2parahoric import homology as hom
from sl2parahoric.errors import DomainError
from sl2parahoric.workspace import Workspace


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cases", nargs="*", default=["3:1", "3:2", "5:1", "2:1", "2:2"])
    args = ap.parse_args()
    print(f"{'p':>3} {'n':>3} {'edge':>6} {'vertex':>7} {'ker':>5} {'cycles':>7} {'excess':>7} "
          f"{'squares':>8} {'1+w':>5} {'sec':>6}")
    for case in args.cases:
        p, n = (int(x) for x in case.split(":"))
        ws = Workspace(p)
        t = time.perf_counter()
        G = hom.build_g_complex(ws, n)
        try:
            h = hom.h1_basis_check(ws, n)
        except DomainError as exc:
            print(f"{p:>3} {n:>3} skipped: {exc}")
            continue
        squares = all(i.holds for i in hom.commuting_squares(ws, n))
        onew = all(i.holds for i in hom.verify_pres_pind(ws, n))
        print(f"{p:>3} {n:>3} {G.dims[0]:>6} {G.dims[1]:>7} {h.kernel_dim:>5} {len(h.orbit_reps):>7} "
              f"{h.excess:>7} {str(squares):>8} {str(onew):>5} {time.perf_counter() - t:>6.2f}")


if __name__ == "__main__":
    main()

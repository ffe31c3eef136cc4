"""Wall time of enumeration, class computation and Dixon tables per group.

Usage: python3 scripts/table_timings.py [--p 3] [--max-level 3]
"""

import argparse
import time

from sl2parahoric.chartab import character_table
from sl2parahoric.groups import Kind, enumerate_group


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--max-level", type=int, default=3)
    args = ap.parse_args()
    kinds = [Kind.FULL, Kind.IWAHORI_UPPER, Kind.IWAHORI_INTERSECTION, Kind.LOWER_BOREL]
    print(f"{'N':>2} {'group':<14} {'order':>7} {'classes':>8} {'enum s':>7} {'table s':>8} orthogonal")
    for N in range(1, args.max_level + 1):
        for kind in kinds:
            t0 = time.perf_counter()
            G = enumerate_group(args.p, N, kind, max_elements=10**6)
            r = G.num_classes
            t1 = time.perf_counter()
            T = character_table(G)
            t2 = time.perf_counter()
            print(f"{N:>2} {kind.value:<14} {G.order:>7} {r:>8} {t1 - t0:>7.2f} {t2 - t1:>8.2f} "
                  f"{T.check_orthogonality()}")


if __name__ == "__main__":
    main()

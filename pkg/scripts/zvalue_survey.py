"""Conductor, z and deg i(rho) across primes and levels, with both induction routes compared.

Usage: python3 scripts/zvalue_survey.py [--primes 3 5 7] [--max-level 2]
"""

import argparse
from collections import Counter

from sl2parahoric.errors import ResourceBudgetError
from sl2parahoric.parahoric import LCharacter, conductor, parahoric_induce, z_value
from sl2parahoric.workspace import Workspace


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", nargs="*", type=int, default=[3, 5, 7])
    ap.add_argument("--max-level", type=int, default=2)
    args = ap.parse_args()
    for p in args.primes:
        ws = Workspace(p)
        for n in range(1, args.max_level + 1):
            try:
                rows = Counter()
                agree = True
                for rho in LCharacter.all(p, n):
                    i = parahoric_induce(ws, rho)
                    agree &= i == parahoric_induce(ws, rho, "lambda")
                    agree &= 1 / i.degree == z_value(rho)
                    rows[(conductor(rho), str(z_value(rho)), int(i.degree))] += 1
            except ResourceBudgetError as exc:
                print(f"p={p} n={n}: {exc}")
                continue
            summary = ", ".join(f"c={c} z={z} deg={d} x{k}" for (c, z, d), k in sorted(rows.items()))
            print(f"p={p} n={n} routes_agree={agree}: {summary}")


if __name__ == "__main__":
    main()

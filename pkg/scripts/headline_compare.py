"""Oracle vs closed form for G1C and G2C at their good primes, with timings."""

import argparse
import time

from pfaffzeta import formulas, geometry, oracle
from pfaffzeta.oracle import OracleStats
from pfaffzeta.presentations import builtin


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="5,13,17")
    ap.add_argument("--order", type=int, default=6)
    args = ap.parse_args()
    z = formulas.assemble_zeta(3)
    for name in ("G1C", "G2C"):
        pres = builtin(name)
        for p in map(int, args.primes.split(",")):
            inv = geometry.invariants(pres, p)
            if inv.bad:
                print(f"{name} p={p}: flagged ({'; '.join(inv.bad_reasons)}), skipped")
                continue
            stats = OracleStats()
            t0 = time.time()
            brute = oracle.oracle_zeta(pres, p, args.order, stats=stats)
            ok = brute == z.series(p, args.order, inv.c_total, inv.n1, inv.n2)
            print(f"{name} p={p} K={args.order}: {'match' if ok else 'MISMATCH'} "
                  f"({stats.lattices} lattices visited, {stats.skipped_lattices} pruned, {time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()

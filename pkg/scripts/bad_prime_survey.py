"""For each builtin group and small prime: is it flagged, and where does the oracle first leave the closed form?"""

import argparse
import time

from pfaffzeta import formulas, geometry, oracle
from pfaffzeta.presentations import builtin


def first_divergence(pres, p, K):
    inv = geometry.invariants(pres, p)
    closed = formulas.assemble_zeta(pres.r).series(p, K, inv.c_total, inv.n1, inv.n2)
    brute = oracle.oracle_zeta(pres, p, K)
    return inv, next((n for n in range(K + 1) if brute[n] != closed[n]), None)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", default="G1C,G2C,dusautoy-E")
    ap.add_argument("--primes", default="2,3,5,7,11,13")
    ap.add_argument("--order", type=int, default=5)
    args = ap.parse_args()
    print(f"{'group':<16} {'p':>3} {'flagged':>8} {'diverges at':>12} {'secs':>6}  reasons")
    for name in args.groups.split(","):
        pres = builtin(name)
        for p in map(int, args.primes.split(",")):
            K = args.order if p <= 7 else min(args.order, 4)
            t0 = time.time()
            try:
                inv, n = first_divergence(pres, p, K)
            except geometry.BadPrimeError as exc:
                print(f"{name:<16} {p:>3} {'yes':>8} {'-':>12} {'-':>6}  {exc}")
                continue
            where = f"t^{n}" if n is not None else f"none <= t^{K}"
            print(f"{name:<16} {p:>3} {('yes' if inv.bad else 'no'):>8} {where:>12} {time.time() - t0:>6.1f}  "
                  + "; ".join(inv.bad_reasons))


if __name__ == "__main__":
    main()

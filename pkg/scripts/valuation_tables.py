"""Print residual-valuation tables for the limit statements.

    python scripts/valuation_tables.py --p 5 --levels 4

Rows are (k, a) for the cylinder limits, then (character, n) for the Witt
partial sums.
"""
import argparse
from fractions import Fraction

from qeuler.characters import quadratic_char, trivial_char
from qeuler.exact_arith import vp
from qeuler.measures import Cylinder, cylinder_limit, mu_star
from qeuler.qcore import gen_euler_number
from qeuler.suites import witt_partial_sum


def fmt(v):
    return "inf" if v == float("inf") else str(v)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--q", default=None, help="defaults to 1+p")
    ap.add_argument("--levels", type=int, default=4)
    ap.add_argument("--k-max", type=int, default=3)
    args = ap.parse_args()
    p = args.p
    q = Fraction(args.q) if args.q else Fraction(1 + p)
    levels = range(1, args.levels + 1)

    print(f"mu_k*(a + p^N Z_p) vs [2]_q/2 (-1)^a [a]_q^k   p={p} q={q}")
    print("k  a  " + " ".join(f"N={N:<3}" for N in levels))
    for k in range(args.k_max + 1):
        for a in range(p):
            target = cylinder_limit(k, a, q)
            row = [fmt(vp(mu_star(k, Cylinder(1, N, a, p), q) - target, p)) for N in levels]
            print(f"{k}  {a}  " + " ".join(f"{v:<5}" for v in row))

    print(f"\nWitt partial sums vs E_(n,chi,q)   p={p} q={q}")
    chars = [("1:0", trivial_char(1))] + [(f"{d}:q", quadratic_char(d)) for d in (3, 5, 7) if d != p]
    for label, chi in chars:
        for n in range(args.k_max + 1):
            if chi.d == 1 and n == 0:
                continue
            target = gen_euler_number(n, chi, q)
            row = [fmt(vp(witt_partial_sum(n, chi, q, p, r) - target, p)) for r in range(args.levels)]
            print(f"{label:<4} n={n}  " + " ".join(f"{v:<5}" for v in row))


if __name__ == "__main__":
    main()

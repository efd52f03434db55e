#!/usr/bin/env python3
"""Write the first N ordinates of nontrivial zeta zeros, one per line.

Zeros come from Arb's certified isolation (python-flint). A sample is
cross-checked against mpmath.zetazero and the total count against
mpmath.nzeros.
"""
import argparse
import sys

import flint
import mpmath


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("-n", type=int, default=10000)
    ap.add_argument("-o", "--out", default="-")
    args = ap.parse_args()

    flint.ctx.prec = 80
    ords = []
    chunk = 1000
    for start in range(1, args.n + 1, chunk):
        num = min(chunk, args.n - start + 1)
        for z in flint.acb.zeta_zeros(start, num):
            ords.append(float(z.imag.mid()))

    mpmath.mp.dps = 20
    for k in sorted({1, 2, 3, 100, args.n // 2, args.n}):
        ref = float(mpmath.zetazero(k).imag)
        if abs(ref - ords[k - 1]) > 1e-9:
            sys.exit(f"zero {k}: {ords[k - 1]} disagrees with mpmath {ref}")
    nxt = float(flint.acb.zeta_zeros(args.n + 1, 1)[0].imag.mid())
    if mpmath.nzeros((ords[-1] + nxt) / 2) != args.n:
        sys.exit("zero count mismatch")
    if any(b <= a for a, b in zip(ords, ords[1:])):
        sys.exit("ordinates not strictly increasing")

    out = sys.stdout if args.out == "-" else open(args.out, "w")
    out.write(f"# first {args.n} ordinates of nontrivial zeros of zeta(s)\n")
    out.write("# generated by scripts/gen_zeros.py (python-flint zeta_zeros, checked with mpmath)\n")
    for g in ords:
        out.write(f"{g:.12f}\n")


if __name__ == "__main__":
    main()

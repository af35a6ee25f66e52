"""Scan the BN family: hit density over an x0 range, then one hit per bit size.

Usage: python3 scripts/bn_scan.py [--range 10000] [--bits 32 64 128 256] [--seed 7] [--workers 4]
"""

import argparse
import math
import time

from bwfamily.registry import load_family
from bwfamily.instantiate import scan_bits, scan_range


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--range", type=int, default=10_000, dest="half_width")
    ap.add_argument("--bits", type=int, nargs="*", default=[32, 64, 128, 256])
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    bn = load_family("bn")
    start = time.perf_counter()
    rep = scan_range(bn, -args.half_width, args.half_width, seed=args.seed, workers=args.workers)
    print(
        f"x0 in [-{args.half_width}, {args.half_width}]: {len(rep.hits)} hits, "
        f"near misses {dict(rep.near_misses)} ({time.perf_counter() - start:.1f} s)"
    )
    for bits in args.bits:
        start = time.perf_counter()
        rep = scan_bits(bn, bits, 1, seed=args.seed)
        if not rep.hits:
            print(f"{bits} bits: no hit after {rep.points} points")
            continue
        h = rep.hits[0]
        print(
            f"{bits} bits: x0={h.x0} r0 has {h.r0.bit_length()} bits, log q/log r = {h.rho_numeric:.4f}, "
            f"k < log2(r)/8: {h.k_bound_ok}, {h.primality}, {rep.points} points "
            f"({time.perf_counter() - start:.2f} s)"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

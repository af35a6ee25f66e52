"""Search every BW family for k = 3, 4, 6 over a grid of small integer t(x).

Usage: python3 scripts/exhaustive_small_k.py [--max-degree 2] [--bound 3] [--json out.json]
"""

import argparse
import json
import time

from bwfamily.exactmath import format_poly
from bwfamily.theorems import exhaustive_small_search


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--json", help="write the summary to this file")
    args = ap.parse_args()

    start = time.perf_counter()
    rep = exhaustive_small_search(max_degree=args.max_degree, bound=args.bound)
    elapsed = time.perf_counter() - start

    summary = {
        "max_degree": rep.max_degree,
        "coefficient_bound": rep.coefficient_bound,
        "t_polys_tried": rep.t_polys_tried,
        "rings_irreducible": rep.rings_irreducible,
        "rings_reducible": rep.rings_reducible,
        "rings_inconclusive": rep.rings_inconclusive,
        "families_built": rep.families_built,
        "no_sqrt": rep.no_sqrt,
        "complete": rep.complete,
        "ideal": [{"k": c.k, "D": c.D, "t": format_poly(c.t), "q": format_poly(c.q)} for c in rep.ideal],
        "by_k": {str(k): v for k, v in rep.by_k.items()},
        "seconds": round(elapsed, 2),
    }
    for k, counts in rep.by_k.items():
        print(f"k={k}: {counts}")
    print(
        f"{rep.t_polys_tried} t(x) tried, {rep.families_built} families built, "
        f"{rep.complete} complete, {len(rep.ideal)} ideal ({elapsed:.1f} s)"
    )
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())

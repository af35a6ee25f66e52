"""Construct and validate the k = 8, 12 catalog and print a rho table.

Usage: python3 scripts/catalog_k8_k12.py
"""

from collections import Counter

from bwfamily.theorems import theorem3_scan


def main():
    scan = theorem3_scan()
    by_rho = Counter()
    for res in scan.results:
        if res.diagnosis is None:
            print(f"{res.entry.label:<36} D={res.entry.D}  skipped: {res.error}")
            continue
        d = res.diagnosis
        by_rho[(res.entry.k, str(d.rho))] += 1
        print(
            f"{res.entry.label:<36} D={res.entry.D}  deg t={d.degrees['t']} deg r={d.degrees['r']}"
            f"  rho={d.rho}  failing={d.failing() or '-'}"
        )
    print()
    for (k, rho), n in sorted(by_rho.items()):
        print(f"k={k} rho={rho}: {n} candidates")
    print(f"in scope {len(scan.in_scope)}, ideal {len(scan.ideal_found)}, control ideal {scan.control.is_ideal}")
    return 0 if scan.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())

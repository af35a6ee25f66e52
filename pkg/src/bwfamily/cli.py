"""Command-line front end.

Exit codes: 0 success, 1 negative mathematical verdict, 2 usage or parse
error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import registry
from .cyclo_ring import (
    IrreducibilityInconclusive,
    NotPrimitiveRootError,
    ReducibleModulusError,
    ResidueRing,
    ZetaImage,
    cyclotomic,
)
from .exactmath import format_poly, parse_poly
from .family import (
    CONDITIONS,
    FAMILY_POLY_KEYS,
    FamilyDiagnosis,
    InconsistentFamilyError,
    InternalInconsistencyError,
    InvalidSqrtError,
    MalformedFamilyDocument,
    UnsupportedSqrtError,
    bw_construct,
    diagnosis_to_dict,
    family_from_dict,
    is_squarefree_positive,
    validate,
)
from .instantiate import scan_bits, scan_range
from .theorems import theorem1_obstruction, theorem3_scan

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

REPRODUCE_TARGETS = ("bn", "example-k4-d2", "example-k6-d1", "theorem1", "theorem3-scan")


class UsageError(Exception):
    pass


def _emit(payload, as_json: bool, out):
    if as_json:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write(payload if payload.endswith("\n") else payload + "\n")


def _fmt_rho(d: FamilyDiagnosis) -> str:
    if d.rho is None:
        return "undefined"
    return str(d.rho)


def _diagnosis_text(d: FamilyDiagnosis) -> str:
    c = d.candidate
    lines = [f"k = {c.k}, D = {c.D}" + (f"  [{c.name}]" if c.name else "")]
    for key in FAMILY_POLY_KEYS:
        p = getattr(c, key)
        lines.append(f"{key}(x) = {format_poly(p) if p is not None else '-'}")
    for key in CONDITIONS:
        res = d.conditions[key]
        extra = f"  witness: {res.witness}" if res.witness and not res.passed else ""
        lines.append(f"condition ({key}): {res.status:<7} {res.detail}{extra}")
    lines.append(f"rho = {_fmt_rho(d)}")
    degs = ", ".join(f"deg {k} = {v}" for k, v in d.degrees.items() if k in FAMILY_POLY_KEYS)
    lines.append(degs)
    lines.append(f"complete family: {'yes' if d.is_complete_family else 'no'}")
    lines.append(f"ideal: {'yes' if d.is_ideal else 'no'}")
    return "\n".join(lines)


def _parse(text: str, what: str):
    try:
        return parse_poly(text)
    except ValueError as exc:
        raise UsageError(f"--{what}: {exc}") from None


def _load_family_arg(name: str):
    if name in registry.BUILTIN:
        return family_from_dict(registry.load_document(name), diagnostic=True)
    path = Path(name)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise UsageError(f"no built-in family or file named {name!r}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read family document {name!r}: {exc}") from None
    try:
        return family_from_dict(doc, diagnostic=True)
    except MalformedFamilyDocument as exc:
        raise UsageError(f"malformed family document {name!r}: {exc}") from None


# commands ----------------------------------------------------------------------


def cmd_cyclotomic(args, out) -> int:
    if args.k < 1:
        raise UsageError("k must be >= 1")
    _emit(format_poly(cyclotomic(args.k)), False, out)
    return EXIT_OK


def cmd_construct(args, out) -> int:
    if args.k < 1 or args.D < 1:
        raise UsageError("--k and --D must be positive")
    r = _parse(args.r, "r")
    zeta = _parse(args.zeta, "zeta")
    sqrt = _parse(args.sqrt, "sqrt") if args.sqrt else None

    def fail(msg, **extra):
        payload = {"error": msg, **extra} if args.json else f"error: {msg}"
        _emit(payload, args.json, out)
        return EXIT_VERDICT

    if not is_squarefree_positive(args.D):
        return fail(f"D = {args.D} is not square-free")
    if r.is_constant():
        return fail("r must be nonconstant")
    try:
        ring = ResidueRing(r)
    except ReducibleModulusError as exc:
        return fail(str(exc), witness=format_poly(exc.factor))
    except IrreducibilityInconclusive as exc:
        return fail(f"irreducibility of r undecided: {exc}")
    try:
        z = ZetaImage(args.k, ring(zeta))
    except NotPrimitiveRootError as exc:
        return fail(f"zeta is not a primitive {args.k}-th root of unity: {exc}")
    try:
        cand = bw_construct(args.k, args.D, ring, z, ring(sqrt) if sqrt is not None else None)
    except (UnsupportedSqrtError, InvalidSqrtError) as exc:
        return fail(str(exc))
    diag = validate(cand)
    _emit(diagnosis_to_dict(diag) if args.json else _diagnosis_text(diag), args.json, out)
    return EXIT_OK if diag.is_complete_family else EXIT_VERDICT


def cmd_validate(args, out) -> int:
    cand = _load_family_arg(args.family)
    diag = validate(cand)
    _emit(diagnosis_to_dict(diag) if args.json else _diagnosis_text(diag), args.json, out)
    return EXIT_OK if diag.is_complete_family else EXIT_VERDICT


def _report_text(rep) -> str:
    lines = [
        f"family {rep.family}: {rep.mode} scan over x0 in [{rep.lo}, {rep.hi}]"
        + (f", target {rep.bits} bits" if rep.bits else "")
        + f", seed {rep.seed}",
        f"points {rep.points}, hits {len(rep.hits)}, skipped by integrality filter {rep.skipped}",
    ]
    for h in rep.hits:
        lines.append(
            f"  x0={h.x0} t={h.t0} r={h.r0} q={h.q0} y={h.y0} h={h.h0} "
            f"rho~{h.rho_numeric:.4f} k_bound_ok={h.k_bound_ok} primality={h.primality}"
            + (" [t = 2]" if h.t_equals_two else "")
        )
    for reason, n in sorted(rep.near_misses.items()):
        lines.append(f"  near miss {reason}: {n}")
    return "\n".join(lines)


def cmd_instantiate(args, out) -> int:
    cand = _load_family_arg(args.family)
    try:
        cand = family_from_dict_strict(cand)
    except InconsistentFamilyError as exc:
        _emit({"error": str(exc)} if args.json else f"error: inconsistent family: {exc}", args.json, out)
        return EXIT_VERDICT
    if args.bits is not None:
        if args.bits < 8 or args.count < 1:
            raise UsageError("--bits must be >= 8 and --count >= 1")
        rep = scan_bits(cand, args.bits, args.count, seed=args.seed)
    else:
        if args.x_start is None or args.x_end is None or args.x_start > args.x_end:
            raise UsageError("give --x-start <= --x-end, or --bits/--count")
        rep = scan_range(cand, args.x_start, args.x_end, seed=args.seed, workers=args.workers)
    _emit(rep.to_json() if args.json else _report_text(rep), args.json, out)
    return EXIT_OK if rep.hits else EXIT_VERDICT


def family_from_dict_strict(cand):
    """Re-run the construction-time identity checks on a loaded family."""
    from dataclasses import replace

    return replace(cand, diagnostic=False)


def _reproduce_family(name: str, as_json: bool, out) -> int:
    doc = registry.load_document(name)
    recorded = family_from_dict(doc, diagnostic=True)
    cons = doc["construction"]
    ring = ResidueRing(parse_poly(cons["r"]))
    z = ZetaImage(doc["k"], ring(parse_poly(cons["zeta"])))
    s = ring(parse_poly(cons["sqrt"])) if "sqrt" in cons else None
    rebuilt = bw_construct(doc["k"], doc["D"], ring, z, s)
    diffs = {}
    for key in FAMILY_POLY_KEYS:
        a, b = getattr(rebuilt, key), getattr(recorded, key)
        if a != b:
            diffs[key] = {"reconstructed": format_poly(a), "registry": format_poly(b) if b is not None else None}
    diag = validate(rebuilt)
    if as_json:
        payload = {"target": name, "match": not diffs, "differences": diffs, "diagnosis": diagnosis_to_dict(diag)}
    else:
        head = "reconstructed = registry" if not diffs else "reconstructed != registry"
        lines = [f"{name}: {head}"]
        for key, d in diffs.items():
            lines.append(f"  {key}: reconstructed {d['reconstructed']}, registry {d['registry']}")
        lines.append(_diagnosis_text(diag))
        payload = "\n".join(lines)
    _emit(payload, as_json, out)
    return EXIT_OK if not diffs else EXIT_INTERNAL


def _reproduce_theorem1(as_json: bool, out) -> int:
    reports = [theorem1_obstruction(k) for k in (3, 4, 6)]
    ok = all(r.certified for r in reports)
    if as_json:
        payload = {
            "target": "theorem1",
            "certified": ok,
            "cases": [
                {
                    "k": r.k,
                    "supersingular_form": format_poly(r.forms.supersingular),
                    "supersingular_constant": str(r.square_constant),
                    "supersingular_square_root": format_poly(r.square_root) if r.square_root else None,
                    "constant_times_square": r.constant_times_square,
                    "noncyclotomic_form": format_poly(r.forms.noncyclotomic),
                    "noncyclotomic_dy2": format_poly(r.forms.noncyclotomic_dy2),
                    "denominator": r.profile.d,
                    "good_residues": sorted(r.profile.good_residues),
                    "residues_mod4": {str(a): v for a, v in r.residues_mod4.items()},
                    "never_integral": r.never_integral,
                    "certified": r.certified,
                }
                for r in reports
            ],
        }
    else:
        lines = ["forced q-forms for k = 3, 4, 6, written in the variable x = t - 1"]
        for r in reports:
            table = ", ".join(f"X={a}: {v}" for a, v in r.residues_mod4.items())
            lines += [
                f"k = {r.k}",
                f"  supersingular branch: q = {format_poly(r.forms.supersingular)}"
                f" = {r.square_constant} * ({format_poly(r.square_root)})^2"
                f" -> constant x square, not irreducible: {r.constant_times_square}",
                f"  noncyclotomic branch: D*y^2 = {format_poly(r.forms.noncyclotomic_dy2)},"
                f" q = {format_poly(r.forms.noncyclotomic)}",
                f"    4q mod 4 by X mod 4: {table}",
                f"    good residues mod {r.profile.d}: {sorted(r.profile.good_residues) or 'none'}"
                f" -> never integral: {r.never_integral}",
                f"  certified: {r.certified}",
            ]
        lines.append("all obstructions certified" if ok else "NOT all obstructions certified")
        payload = "\n".join(lines)
    _emit(payload, as_json, out)
    return EXIT_OK if ok else EXIT_VERDICT


def _reproduce_theorem3(as_json: bool, out) -> int:
    scan = theorem3_scan()
    rows = []
    for res in scan.results + ([scan.control] if scan.control else []):
        d = res.diagnosis
        rows.append(
            {
                "label": res.entry.label,
                "k": res.entry.k,
                "D": res.entry.D,
                "control": res is scan.control,
                "in_scope": res.in_scope,
                "deg_t": res.candidate.t.degree if res.candidate else None,
                "deg_r": res.candidate.r.degree if res.candidate else None,
                "rho": str(d.rho) if d else None,
                "complete": d.is_complete_family if d else None,
                "failing": d.failing() if d else None,
                "ideal": res.is_ideal,
                "error": res.error or None,
            }
        )
    if as_json:
        payload = {
            "target": "theorem3-scan",
            "in_scope": len(scan.in_scope),
            "ideal_found": len(scan.ideal_found),
            "ok": scan.ok,
            "candidates": rows,
        }
    else:
        lines = ["k in {8, 12}, sqrt(-D) in Q(zeta_k), deg r != 2 deg t"]
        for row in rows:
            tag = "control" if row["control"] else ("in scope" if row["in_scope"] else "out of scope")
            lines.append(
                f"  {row['label']:<34} D={row['D']} deg t={row['deg_t']} deg r={row['deg_r']}"
                f" rho={row['rho']} complete={row['complete']} failing={row['failing']}"
                f" ideal={row['ideal']} [{tag}]"
            )
        lines.append(
            f"{len(scan.in_scope)} in-scope candidates, {len(scan.ideal_found)} ideal"
            + (" -> no ideal family" if scan.ok else "")
        )
        payload = "\n".join(lines)
    _emit(payload, as_json, out)
    return EXIT_OK if scan.ok else EXIT_VERDICT


def cmd_reproduce(args, out) -> int:
    if args.target == "theorem1":
        return _reproduce_theorem1(args.json, out)
    if args.target == "theorem3-scan":
        return _reproduce_theorem3(args.json, out)
    return _reproduce_family(args.target, args.json, out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bwfamily", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cyclotomic", help="print the k-th cyclotomic polynomial")
    c.add_argument("k", type=int)
    c.set_defaults(func=cmd_cyclotomic)

    c = sub.add_parser("construct", help="Brezing-Weng construction plus validation")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--D", type=int, required=True)
    c.add_argument("--r", required=True, help="irreducible modulus r(x)")
    c.add_argument("--zeta", required=True, help="image of a primitive k-th root of unity")
    c.add_argument("--sqrt", help="explicit sqrt(-D) in Q[x]/(r)")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("validate", help="check the complete-family conditions")
    c.add_argument("family", help="built-in name or path to a family JSON document")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_validate)

    c = sub.add_parser("instantiate", help="scan integer x0 for certified curve parameters")
    c.add_argument("family")
    c.add_argument("--x-start", type=int)
    c.add_argument("--x-end", type=int)
    c.add_argument("--bits", type=int)
    c.add_argument("--count", type=int, default=1)
    c.add_argument("--seed", type=int)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_instantiate)

    c = sub.add_parser("reproduce", help="rebuild registry families or rerun the theorem checks")
    c.add_argument("target", choices=REPRODUCE_TARGETS)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"bwfamily: {exc}\n")
        return EXIT_USAGE
    except InternalInconsistencyError as exc:
        sys.stderr.write(f"bwfamily: internal inconsistency: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: cohomology, lefschetz, kneser, hodge, lattice, verify-all.
Reports go to stdout (JSON by default; --format text/csv for matrices),
diagnostics and wall time to stderr.  Exit codes: 0 all checks passed,
1 a mathematical check failed, 2 usage error.  Identical invocations
produce byte-identical stdout.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import acceptance
from .ce_complex import (
    AlgebraSpec,
    Mode,
    betti_bruteforce,
    betti_closed_form,
    cohomology_basis,
)
from .errors import (
    CertificateFailureError,
    InvalidParameterError,
    InvalidSymplecticFormError,
    InvariantViolationError,
    NoHarmonicRepresentativeError,
    NotACocycleError,
    SizeLimitError,
    StructureViolationError,
    UnsupportedModeError,
)
from .exterior_algebra import Form, all_monomials
from .kneser import KneserGraph, adjacency, spectrum, verify_invertible
from .lattice import (
    alt_remark_params,
    build_lattice,
    case1_params,
    hypothesis1_certificate,
)
from .lefschetz import check_structure, hard_lefschetz_report, lefschetz_matrix
from .symplectic_hodge import (
    dc,
    dc_as_commutator,
    ddc_lemma_check,
    harmonic_representative,
    star,
)
from .ce_complex import differential, is_closed

USAGE_ERRORS = (
    InvalidParameterError,
    UnsupportedModeError,
    SizeLimitError,
    ValueError,
)
CHECK_ERRORS = (
    InvariantViolationError,
    StructureViolationError,
    CertificateFailureError,
    NotACocycleError,
    InvalidSymplecticFormError,
    NoHarmonicRepresentativeError,
)


def _parse_spec(args) -> AlgebraSpec:
    mode = Mode.parse(args.mode)
    if mode is Mode.EXPLICIT:
        if not args.b:
            raise UnsupportedModeError("explicit mode needs --b p/q,p/q,...")
        weights = [Fraction(part) for part in args.b.split(",")]
        spec = AlgebraSpec.explicit(weights)
        if spec.n != args.n:
            raise InvalidParameterError(
                f"--b lists {spec.n - 1} weights but --n is {args.n}"
            )
        return spec
    if args.b:
        raise InvalidParameterError("--b is only meaningful with --mode explicit")
    return AlgebraSpec(args.n, mode)


def _int_list(text):
    return [int(part) for part in text.split(",")]


def _matrix_lines(rows, cuts=()):
    """Space-separated integer rows with optional block separators."""
    cuts = [c for c in cuts if 0 < c < len(rows)]
    lines = []
    width = len(rows[0]) if rows else 0
    for i, row in enumerate(rows):
        if i in cuts:
            lines.append("-" * (2 * width + 2 * len(cuts) - 1))
        cells = []
        for j, v in enumerate(row):
            if j in cuts:
                cells.append("|")
            cells.append(str(v))
        lines.append(" ".join(cells))
    return lines


def emit(report: dict, fmt: str) -> str:
    """Render a report: stable JSON, plain text, or CSV for matrices."""
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        matrix = report.get("results", {}).get("matrix")
        if matrix is None:
            raise InvalidParameterError("csv output needs a matrix payload")
        return "\n".join(",".join(str(v) for v in row) for row in matrix) + "\n"
    lines = [f"command: {report['command']}"]
    for key, value in sorted(report.get("params", {}).items()):
        lines.append(f"{key}: {value}")
    results = report.get("results", {})
    for key, value in results.items():
        if key == "matrix":
            lines.extend(_matrix_lines(value, results.get("block_cuts", ())))
        elif key == "block_cuts":
            continue
        else:
            lines.append(f"{key}: {value}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines) + "\n"


def _cmd_cohomology(args):
    spec = _parse_spec(args)
    results = {}
    ok = True
    wants_betti = args.betti or not args.basis
    if wants_betti:
        if spec.mode is Mode.EXPLICIT:
            betti = [betti_bruteforce(spec, k) for k in range(spec.two_n + 1)]
        else:
            betti = [betti_closed_form(spec, k) for k in range(spec.two_n + 1)]
        results["betti"] = betti
    if args.check_brute:
        brute = [betti_bruteforce(spec, k) for k in range(spec.two_n + 1)]
        results["betti_bruteforce"] = brute
        if results.get("betti", brute) != brute:
            ok = False
    if args.basis:
        degree = args.degree
        if degree is None:
            raise InvalidParameterError("--basis needs --degree")
        basis = cohomology_basis(spec, degree)
        results["degree"] = degree
        results["labels"] = list(basis.labels)
        results["monomials"] = [list(m.indices) for m in basis.elements]
        results["signs"] = list(basis.signs)
    return results, ok


def _lefschetz_cuts(spec, mat):
    from math import comb

    n, m = spec.n, mat.m
    if spec.mode is Mode.GENERIC:
        if m == 0:
            return []
        if m % 2 == 0:
            return [comb(n - 1, m // 2 - 1)]
        return [len(mat.entries) // 2]
    if mat.structure is not None:
        return [b.offset for b in mat.structure.blocks[1:]]
    return []


def _cmd_lefschetz(args):
    spec = _parse_spec(args)
    results = {}
    ok = True
    if args.hl:
        report = hard_lefschetz_report(spec)
        results["operators"] = [
            {"m": op.m, "size": op.size, "determinant": str(op.determinant)}
            for op in report.operators
        ]
        results["hard_lefschetz"] = report.hard_lefschetz
        ok = ok and report.hard_lefschetz
        return results, ok
    if args.m is None:
        raise InvalidParameterError("--m is required (or use --hl)")
    mat = lefschetz_matrix(spec, args.m)
    if args.check_kneser:
        report = check_structure(spec, mat)
        results["structure"] = report.summary()
        results["blocks"] = [
            {
                "offset": b.offset,
                "size": b.size,
                "kind": b.kind,
                "params": list(b.params),
                "tag": b.tag,
            }
            for b in report.blocks
        ]
    if args.emit_matrix or not args.check_kneser:
        results["matrix"] = [list(row) for row in mat.entries]
        results["block_cuts"] = _lefschetz_cuts(spec, mat)
        results["row_labels"] = list(mat.row_basis.labels)
        results["col_labels"] = list(mat.col_basis.labels)
    results["determinant"] = str(mat.determinant())
    ok = ok and mat.determinant() != 0
    return results, ok


def _cmd_kneser(args):
    g = KneserGraph(args.n, args.k)
    results = {
        "vertices": [list(v) for v in g.vertices],
        "vertex_degree": g.degree,
    }
    ok = True
    if args.emit_matrix or not (args.spectrum or args.verify):
        results["matrix"] = adjacency(g)
    if args.spectrum:
        results["eigenvalues"] = [
            {"j": j, "value": value} for value, j in spectrum(g)
        ]
    if args.verify:
        cert = verify_invertible(g)
        results["determinant"] = str(cert.determinant)
        results["annihilator_vanishes"] = cert.annihilator_vanishes
        ok = cert.annihilator_vanishes and cert.determinant != 0
    return results, ok


def _cmd_hodge(args):
    spec = _parse_spec(args)
    if spec.n > 4:
        raise SizeLimitError("the operator suite is limited to n <= 4")
    checks = []

    def record(name, passed):
        checks.append({"name": name, "passed": bool(passed)})

    two_n = spec.two_n
    invol = dc2 = anti = comm = True
    for k in range(two_n + 1):
        for mono in all_monomials(two_n, k):
            f = Form.from_monomial(mono)
            invol &= star(spec, star(spec, f)) == f
            dc2 &= dc(spec, dc(spec, f)).is_zero
            anti &= differential(spec, dc(spec, f)) == -dc(
                spec, differential(spec, f)
            )
            comm &= dc(spec, f) == dc_as_commutator(spec, f)
    record("star is an involution", invol)
    record("dc o dc = 0", dc2)
    record("d dc = -dc d", anti)
    record("dc = [d, Lambda]", comm)
    lemma = all(ddc_lemma_check(spec, k) for k in range(two_n + 1))
    record("dd^c lemma in every degree", lemma)
    harmonic = True
    for k in range(two_n + 1):
        for vec in cohomology_basis(spec, k).forms():
            rep = harmonic_representative(spec, vec)
            harmonic &= is_closed(spec, rep) and dc(spec, rep).is_zero
    record("harmonic representative for every basis class", harmonic)
    ok = all(c["passed"] for c in checks)
    return {"checks": checks}, ok


def _cmd_lattice(args):
    results = {}
    ok = True
    if args.alt_k:
        values = alt_remark_params(args.n, _int_list(args.alt_k))
        results["alt_params"] = [str(v) for v in values]
        cert = hypothesis1_certificate(values, require_structural=False)
        results["numeric_independence"] = cert.numeric_ok
        ok = cert.numeric_ok
        return results, ok
    if args.case is None:
        raise InvalidParameterError("--case I or --case II is required")
    case = args.case.upper()
    if case == "I":
        d_list = _int_list(args.d) if args.d else None
        params = case1_params(args.n, d_list)
        results["pell_solutions"] = [
            {"d": s.d, "m": str(s.m), "k": str(s.k)} for s in params
        ]
        package = build_lattice("I", args.n, params)
    elif case == "II":
        if args.m is None:
            raise InvalidParameterError("case II needs --m")
        package = build_lattice("II", args.n, args.m)
    else:
        raise InvalidParameterError(f"unknown case {args.case!r}")
    results.update(package.to_json_dict())
    ok = package.residual < 1e-9 and (
        package.certificate is None or package.certificate.certified
    )
    return results, ok


def _cmd_verify_all(args):
    report = acceptance.verify_all(args.max_n)
    return report, report["all_passed"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aacohom",
        description=(
            "exact cohomology, Lefschetz operators, Kneser structure and "
            "lattices for diagonal almost-abelian Lie algebras"
        ),
    )
    parser.add_argument(
        "--format", choices=("text", "json", "csv"), default="json"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_args(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--mode", default="generic",
                       choices=("generic", "ones", "explicit"))
        p.add_argument("--b", default=None,
                       help="comma-separated rationals p/q for explicit mode")

    p = sub.add_parser("cohomology", help="Betti numbers and cohomology bases")
    add_spec_args(p)
    p.add_argument("--betti", action="store_true")
    p.add_argument("--check-brute", action="store_true",
                   help="cross-check against the rank oracle")
    p.add_argument("--basis", action="store_true")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(fn=_cmd_cohomology)

    p = sub.add_parser("lefschetz", help="Lefschetz matrices and verdicts")
    add_spec_args(p)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--emit-matrix", action="store_true")
    p.add_argument("--check-kneser", action="store_true")
    p.add_argument("--hl", action="store_true",
                   help="full hard-Lefschetz report over all m")
    p.set_defaults(fn=_cmd_lefschetz)

    p = sub.add_parser("kneser", help="Kneser graphs: matrices and spectra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--emit-matrix", action="store_true")
    p.add_argument("--spectrum", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(fn=_cmd_kneser)

    p = sub.add_parser("hodge", help="symplectic star operator suite checks")
    add_spec_args(p)
    p.set_defaults(fn=_cmd_hodge)

    p = sub.add_parser("lattice", help="Pell solutions and lattice packages")
    p.add_argument("--case", default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", default=None,
                   help="comma-separated square-free moduli for case I")
    p.add_argument("--m", type=int, default=None, help="case II parameter")
    p.add_argument("--alt-k", default=None,
                   help="comma-separated exponents for the cosh intervals")
    p.set_defaults(fn=_cmd_lattice)

    p = sub.add_parser("verify-all", help="run the full acceptance suite")
    p.add_argument("--max-n", type=int, default=5)
    p.set_defaults(fn=_cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        results, ok = args.fn(args)
    except CHECK_ERRORS as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except USAGE_ERRORS as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.monotonic() - started
    if args.command == "verify-all":
        report = dict(results)
        report["command"] = "verify-all"
        report["status"] = "ok" if ok else "fail"
    else:
        params = {
            key: value
            for key, value in vars(args).items()
            if key not in ("fn", "format", "command") and value is not None
        }
        report = {
            "command": args.command,
            "params": params,
            "results": results,
            "status": "ok" if ok else "fail",
        }
    try:
        rendered = emit(report, args.format)
    except USAGE_ERRORS as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(rendered)
    print(f"[{args.command}] {elapsed:.3f}s", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

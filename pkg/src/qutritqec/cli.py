"""Command-line front end.

Subcommands: ``verify-code`` (run every structural check and report
pass/fail), ``syndrome-table`` (the 41-row diagnosis table as CSV or
JSON), ``decompose`` (coefficients of a 3x3 matrix in either error
basis), ``codewords`` (derived or transcribed codewords as JSON), and
``simulate`` (Monte Carlo logical failure rate).  Exit codes: 0 all
checks passed, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

import numpy as np

from . import analytics, errormodel
from .code import (
    DEFAULT_GENERATOR_STRINGS,
    CodeConstructionError,
    build_code,
    crosscheck_reference_codewords,
    knill_laflamme_check,
    load_reference_listings,
)
from .cyclo import CycloNumber, DenseMatrix, index_to_ket
from .decode import (
    SyndromeCollisionError,
    build_syndrome_table,
    format_table_csv,
    single_error_set,
)

#: Generator set with a deliberately corrupted second line, for the
#: negative-control path of verify-code.
_FAULTED_GENERATORS = (
    DEFAULT_GENERATOR_STRINGS[0],
    "X I X Z X",
    DEFAULT_GENERATOR_STRINGS[2],
    DEFAULT_GENERATOR_STRINGS[3],
)


def _coeff_repr(value):
    """Coefficient as JSON: always a float form, plus the exact {a, b}
    form when available."""
    if isinstance(value, CycloNumber):
        c = value.embed()
        return {"exact": value.to_json(), "float": [c.real, c.imag]}
    c = complex(value)
    return {"exact": None, "float": [c.real, c.imag]}


def _coeff_str(value) -> str:
    if isinstance(value, CycloNumber):
        return str(value)
    c = complex(value)
    return f"{c.real:+.12f}{c.imag:+.12f}j"


# ---------------------------------------------------------------------------
# verify-code
# ---------------------------------------------------------------------------

def _run_checks(inject_fault: bool) -> list:
    """All structural checks as (name, passed, detail) triples."""
    checks = []
    gens = _FAULTED_GENERATORS if inject_fault else DEFAULT_GENERATOR_STRINGS
    try:
        code = build_code(gens, validate=False)
        checks.append(
            ("generator-structure", True,
             "4 commuting generators, each cubing to identity; logical pair "
             f"Z={code.logical_z}, X={code.logical_x}")
        )
    except CodeConstructionError as exc:
        checks.append(("generator-structure", False, str(exc)))
        return checks

    from .cyclo import exact_rank

    proj = code.projector
    idempotent = (proj @ proj) == proj
    hermitian = proj == proj.adjoint()
    rank = exact_rank(proj)
    ok = idempotent and hermitian and rank == 3
    checks.append(
        ("codespace-projector", ok,
         f"idempotent={idempotent}, hermitian={hermitian}, exact rank={rank}")
    )

    try:
        words = code.codewords
        amp_ok = all(
            len(w.nonzero_indices()) == 81
            and all(w.data[i].norm2() == Fraction(1, 81) for i in w.nonzero_indices())
            for w in words
        )
        checks.append(
            ("canonical-codewords", amp_ok,
             "3 orthonormal stabilized codewords; 81 amplitudes of "
             "magnitude 1/9 each" if amp_ok else
             "codeword amplitude structure unexpected")
        )
    except CodeConstructionError as exc:
        checks.append(("canonical-codewords", False, str(exc)))
        return checks

    errors = single_error_set(code.n)
    kl = knill_laflamme_check(code, errors)
    checks.append(
        ("knill-laflamme", kl.ok and kl.weak_condition_ok,
         f"{kl.n_errors}-error matrix check: "
         f"{'pass' if kl.ok else f'{len(kl.violations)} violations'}; "
         f"equal-diagonal corollary: {'pass' if kl.weak_condition_ok else 'fail'}")
    )

    try:
        table = build_syndrome_table(code)
        detail = (
            f"{len(table)} distinct syndromes for {len(table.rows)} errors; "
            f"{len(table.degenerate_pairs)} degenerate pairs"
        )
        checks.append(("syndrome-table", len(table.rows) == 41, detail))
    except SyndromeCollisionError as exc:
        checks.append(("syndrome-table", False, str(exc)))

    crosscheck = crosscheck_reference_codewords(code)
    anomaly_lines = crosscheck.anomalies
    detail = (
        f"3 listings compared; {len(anomaly_lines)} anomalies: "
        + ("; ".join(anomaly_lines) if anomaly_lines else "none")
    )
    checks.append(("reference-crosscheck", True, detail))
    return checks


def cmd_verify_code(args) -> int:
    checks = _run_checks(args.inject_fault)
    ok = all(passed for _, passed, _ in checks)
    if args.json:
        payload = {
            "ok": ok,
            "checks": [
                {"name": name, "passed": passed, "detail": detail}
                for name, passed, detail in checks
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for name, passed, detail in checks:
            print(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
        print(f"overall: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# syndrome-table
# ---------------------------------------------------------------------------

def cmd_syndrome_table(args) -> int:
    code = build_code(validate=False)
    table = build_syndrome_table(code)
    if args.format == "csv":
        sys.stdout.write(format_table_csv(table))
    else:
        rows = [
            {
                "error_site": row.site,
                "error_type": row.error_type,
                "syndrome": list(row.syndrome.eigenvalue_strings()),
            }
            for row in table.rows
        ]
        print(json.dumps({"rows": rows}, indent=2))
    return 0


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------

def cmd_decompose(args) -> int:
    try:
        matrix = DenseMatrix.load(args.input)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: cannot read matrix from {args.input}: {exc}", file=sys.stderr)
        return 2
    if matrix.shape != (3, 3):
        print(
            f"error: decomposition needs a 3x3 matrix, got {matrix.rows}x{matrix.cols}",
            file=sys.stderr,
        )
        return 2

    if args.basis == "sigma":
        coeffs = errormodel.decompose_in_sigma(matrix)
        rebuilt = errormodel.reconstruct_from_sigma(coeffs)
        named = {f"lambda{i}": c for i, c in enumerate(coeffs, start=1)}
    else:
        pc = errormodel.decompose_in_pauli(matrix)
        rebuilt = pc.reconstruct()
        named = {label: pc.by_label(label) for label in errormodel.PAULI_BASIS_LABELS}

    if matrix.exact:
        residual = 0.0 if rebuilt == matrix else (rebuilt - matrix).max_abs()
    else:
        residual = float(np.max(np.abs(rebuilt.data - matrix.data)))

    if args.json:
        payload = {
            "basis": args.basis,
            "exact": matrix.exact,
            "coefficients": {k: _coeff_repr(v) for k, v in named.items()},
            "residual": residual,
        }
        print(json.dumps(payload, indent=2))
    else:
        for k, v in named.items():
            print(f"{k} = {_coeff_str(v)}")
        print(f"reconstruction residual: {residual:.3e}")
    return 0


# ---------------------------------------------------------------------------
# codewords
# ---------------------------------------------------------------------------

def _derived_payload(code) -> dict:
    states = []
    for label, word in enumerate(code.codewords):
        terms = []
        for idx in word.nonzero_indices():
            coeff = word.data[idx] * 9  # unit-magnitude part; 1/9 factored out
            terms.append({"ket": index_to_ket(idx, code.n), "coeff": coeff.to_json()})
        states.append({"state": label, "terms": terms})
    return {"source": "derived", "normalization": "1/9", "states": states}


def cmd_codewords(args) -> int:
    code = build_code(validate=False)
    if args.source == "derived":
        print(json.dumps(_derived_payload(code), indent=2))
        return 0
    payload = load_reference_listings()
    crosscheck = crosscheck_reference_codewords(code)
    report = {
        "source": "paper",
        "normalization": payload["normalization"],
        "states": payload["listings"],
        "discrepancy_report": [
            {
                "state": entry.state,
                "raw_terms": entry.raw_terms,
                "distinct_kets": entry.distinct_kets,
                "duplicates": entry.duplicates,
                "projector_residual": entry.projector_residual,
                "stabilizer_expectations": [
                    [e.real, e.imag] for e in entry.stabilizer_expectations
                ],
                "overlaps_with_derived": list(entry.overlaps),
                "anomalies": entry.anomalies,
            }
            for entry in crosscheck.listings
        ],
    }
    print(json.dumps(report, indent=2))
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    try:
        model = analytics.NoiseModel(p=args.p, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.trials < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return 2
    report = analytics.monte_carlo(model, args.trials, workers=args.workers)
    lo, hi = float(report.interval[0]), float(report.interval[1])
    if args.json:
        payload = dataclasses.asdict(report)
        payload["interval"] = [lo, hi]
        print(json.dumps(payload, indent=2))
    elif args.csv:
        print("trials,failures,rate,wilson_low,wilson_high,analytic")
        print(
            f"{report.trials},{report.failures},{report.rate:.10g},"
            f"{lo:.10g},{hi:.10g},{report.analytic:.10g}"
        )
    else:
        print(f"trials:    {report.trials}")
        print(f"failures:  {report.failures}")
        print(f"rate:      {report.rate:.6g}")
        print(f"wilson95:  [{lo:.6g}, {hi:.6g}]")
        print(f"analytic:  {report.analytic:.6g} (all multi-error trials counted as failures)")
        print(
            f"multi-error trials: {report.multi_error_trials}, "
            f"decoder fixed {report.multi_error_corrected} "
            f"({report.multi_error_corrected_fraction:.4f})"
        )
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qutritqec",
        description="Verification and simulation for the five-qutrit code.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-code", help="run all structural checks")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument(
        "--inject-fault",
        action="store_true",
        help="corrupt the second generator first (negative control)",
    )
    p.set_defaults(func=cmd_verify_code)

    p = sub.add_parser("syndrome-table", help="emit the 41-row syndrome table")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_syndrome_table)

    p = sub.add_parser("decompose", help="decompose a 3x3 matrix in an error basis")
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.add_argument("--basis", choices=("sigma", "pauli"), default="sigma")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("codewords", help="emit codewords as JSON")
    p.add_argument("--source", choices=("derived", "paper"), default="derived")
    p.set_defaults(func=cmd_codewords)

    p = sub.add_parser("simulate", help="Monte Carlo logical failure rate")
    p.add_argument("--p", type=float, required=True, help="per-site error probability")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

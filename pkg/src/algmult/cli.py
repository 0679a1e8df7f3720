"""Command-line front end.

Subcommands: chi, spectrum, verify, bifurcate, tangent, schur, smith.
All exact scalars travel as strings; floating point appears only in
bifurcation reports.  Exit codes: 0 success, 1 input error, 2 out-of-theory
input (degenerate path or infinite multiplicity), 3 internal invariant
violation (a route disagreement, which a correct build cannot produce).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .bifurcation import LSConfig, branch_probe, nonlinear_eigenvalue_verdict
from .errors import (
    CapExceededError,
    DegeneratePathError,
    InvariantViolationError,
    NewtonConvergenceError,
    ProblemFormatError,
    RegularityError,
)
from .geometry import (
    SUM_DIMENSION_CAP,
    SUM_ORDER_CAP,
    chi_via_intersection,
    intersection_index_pencil,
    pencil_routes_agree,
    tangent_order,
)
from .matrices import ConstMat, MatPoly
from .plant import (
    random_jordan_pencil,
    random_planted_instance,
    random_scalar,
)
from .problems import ProblemInput, load_problem, render_path
from .scalars import ExtendedNat, Field
from .schur import (
    chi_via_schur,
    factorization_witness,
    schur_inverse_identity,
    schur_operator,
)
from .smith import (
    build_linearization,
    local_partial_multiplicities,
    local_smith_of_schur,
)
from .spectral import (
    Path,
    algebraic_order,
    check_direct_sum,
    check_product_formula,
    chi_via_det,
    generalized_spectrum,
    projection_pair,
    transversality,
)

DEGENERATE_MESSAGE = "Σ(𝔏)=Ω"
SEEDED_PAIR_COUNT = 5


@dataclass(frozen=True)
class MultiplicityCertificate:
    """Cross-check record tying the four multiplicity routes together."""

    center: object
    chi_det: ExtendedNat
    chi_schur_per_pair: Tuple[int, ...]
    kappas: Tuple[int, ...]
    linearization_size: int
    intersection_index: int
    algebraic_order: int
    transversality_verdict: str
    transversality_chi: Optional[int]
    agree: bool


def build_certificate(
    path: Path, lam0, seeded_pairs: int = SEEDED_PAIR_COUNT
) -> MultiplicityCertificate:
    """Run every route at lam0 and compare them all."""
    if path.is_degenerate:
        raise DegeneratePathError(DEGENERATE_MESSAGE)
    field = path.field
    lam0 = field.coerce(lam0)
    chi_d = chi_via_det(path, lam0)
    pairs = [projection_pair(path, lam0)]
    pairs += [
        projection_pair(path, lam0, seed=s) for s in range(1, seeded_pairs + 1)
    ]
    chi_schur_values = tuple(int(chi_via_schur(path, p)) for p in pairs)
    lsf = local_smith_of_schur(path, pairs[0])
    if lsf.kappas:
        lin = build_linearization(lsf)
        lin_size = lin.size
    else:
        lin_size = 0
    index = chi_via_intersection(path, pairs[0]).index
    kappa_alg = algebraic_order(path, lam0)
    trans = transversality(path, lam0)
    values = {int(chi_d), *chi_schur_values, lsf.total, index}
    agree = len(values) == 1
    if trans.is_transversal:
        agree = agree and trans.chi == int(chi_d)
    return MultiplicityCertificate(
        center=lam0,
        chi_det=chi_d,
        chi_schur_per_pair=chi_schur_values,
        kappas=lsf.kappas,
        linearization_size=lin_size,
        intersection_index=index,
        algebraic_order=kappa_alg,
        transversality_verdict=trans.verdict,
        transversality_chi=trans.chi,
        agree=agree,
    )


def certificate_to_json(field: Field, cert: MultiplicityCertificate) -> dict:
    return {
        "lambda0": field.render(cert.center),
        "chi_det": _nat(cert.chi_det),
        "chi_schur": cert.chi_schur_per_pair[0],
        "chi_schur_pairs": list(cert.chi_schur_per_pair),
        "kappa": list(cert.kappas),
        "M": cert.linearization_size,
        "index": cert.intersection_index,
        "algebraic_order": cert.algebraic_order,
        "transversality": {
            "verdict": cert.transversality_verdict,
            "chi": cert.transversality_chi,
        },
        "agree": cert.agree,
    }


def _nat(x: ExtendedNat):
    return "inf" if x.is_infinite else int(x)


def _float17(x: float) -> float:
    return float(f"{x:.17g}")


def _emit(obj, json_out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, ensure_ascii=True) + "\n"
    sys.stdout.write(text)
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_lambda0(field: Field, text: Optional[str], problem: ProblemInput):
    if text is not None:
        stripped = text.strip()
        obj = json.loads(stripped) if stripped.startswith("{") else stripped
        return field.parse(obj)
    if problem.center is not None:
        return problem.center
    return field.zero()


def cmd_chi(args) -> int:
    problem = load_problem(args.input)
    path = problem.require_path()
    lam0 = _parse_lambda0(problem.field, args.lambda0, problem)
    if path.is_degenerate:
        _emit({"error": DEGENERATE_MESSAGE}, args.json_out)
        return 2
    cert = build_certificate(path, lam0)
    _emit(certificate_to_json(problem.field, cert), args.json_out)
    return 0 if cert.agree else 3


def cmd_spectrum(args) -> int:
    problem = load_problem(args.input)
    path = problem.require_path()
    report = generalized_spectrum(path)
    out = {
        "field": report.field_tag,
        "degenerate": report.degenerate,
        "eigenvalues": [
            {"value": problem.field.render(value), "chi": mult}
            for value, mult in report.eigenvalues
        ],
        "residual": report.residual.to_string(),
    }
    _emit(out, args.json_out)
    return 2 if report.degenerate else 0


def cmd_schur(args) -> int:
    problem = load_problem(args.input)
    path = problem.require_path()
    lam0 = _parse_lambda0(problem.field, args.lambda0, problem)
    if path.is_degenerate:
        _emit({"error": DEGENERATE_MESSAGE}, args.json_out)
        return 2
    pair = projection_pair(path, lam0, seed=args.seed)
    op = schur_operator(path, pair)
    witness = factorization_witness(path, pair)
    out = {
        "lambda0": problem.field.render(lam0),
        "size": op.size,
        "matrix": op.matrix.to_string_rows(),
        "validity_excludes": [problem.field.render(b) for b in op.bad_points],
        "witness": {
            "left": witness.left.to_string_rows(),
            "middle": witness.middle.to_string_rows(),
            "right": witness.right.to_string_rows(),
        },
        "inverse_identity": (
            schur_inverse_identity(path, pair) if op.size else None
        ),
    }
    _emit(out, args.json_out)
    return 0


def cmd_smith(args) -> int:
    problem = load_problem(args.input)
    path = problem.require_path()
    lam0 = _parse_lambda0(problem.field, args.lambda0, problem)
    if path.is_degenerate:
        _emit({"error": DEGENERATE_MESSAGE}, args.json_out)
        return 2
    pair = projection_pair(path, lam0)
    lsf = local_smith_of_schur(path, pair)
    out = {
        "lambda0": problem.field.render(lam0),
        "kappa": list(lsf.kappas),
        "chi": lsf.total,
    }
    path_lsf = local_partial_multiplicities(path.matrix, lam0)
    out["path_kappa"] = list(path_lsf.kappas)
    if lsf.kappas:
        lin = build_linearization(lsf)
        out["M"] = lin.size
        out["linearization"] = [
            [problem.field.render(lin.lin[i, j]) for j in range(lin.size)]
            for i in range(lin.size)
        ]
        out["p1"] = lin.p1.to_string_rows()
        out["p2"] = lin.p2.to_string_rows()
    else:
        out["M"] = 0
        out["linearization"] = []
    _emit(out, args.json_out)
    return 0


def cmd_tangent(args) -> int:
    problem = load_problem(args.input)
    pencil = problem.require_pencil()
    lam0 = _parse_lambda0(problem.field, args.lambda0, problem)
    report = tangent_order(pencil, lam0)
    limit = args.max_order if args.max_order else len(report.per_order)
    per_order = []
    for item in report.per_order[:limit]:
        per_order.append(
            {
                "order": item.order,
                "value": problem.field.render(item.value),
                "methods": (
                    ["derivative-of-det", "combinatorial-sum"]
                    if item.method == "both"
                    else [item.method]
                ),
                "line_in_tangent_variety": not item.value,
            }
        )
    index = intersection_index_pencil(pencil, lam0)
    out = {
        "lambda0": problem.field.render(lam0),
        "order": report.order,
        "intersection_index": index.index,
        "generator": index.generator.to_string("x1"),
        "monomial_basis_size": index.monomial_basis_size,
        "per_order": per_order,
        "combinatorial_route_skipped": pencil.nrows > SUM_DIMENSION_CAP,
        "caps": {"dimension": SUM_DIMENSION_CAP, "order": SUM_ORDER_CAP},
    }
    _emit(out, args.json_out)
    return 0


def cmd_bifurcate(args) -> int:
    problem = load_problem(args.input)
    if problem.field.is_complex:
        sys.stderr.write("bifurcation needs the real field\n")
        return 1
    lam0 = _parse_lambda0(problem.field, args.lambda0, problem)
    try:
        nlp = problem.nonlinear_problem(lam0)
    except ProblemFormatError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    config = LSConfig(probe_offset=args.delta) if args.delta else LSConfig()
    try:
        verdict = nonlinear_eigenvalue_verdict(nlp, config)
    except DegeneratePathError as exc:
        _emit({"error": str(exc)}, args.json_out)
        return 2
    branches = []
    if verdict.odd and nlp.size <= 3:
        for sol in branch_probe(nlp, config):
            branches.append(
                {
                    "lambda": _float17(sol.lam),
                    "u": [_float17(v) for v in sol.u],
                    "residual": _float17(sol.residual),
                }
            )
    out = {
        "lambda0": problem.field.render(lam0),
        "chi": verdict.chi,
        "odd": verdict.odd,
        "sign_change": verdict.sign_change,
        "det_minus": _float17(verdict.det_minus),
        "det_plus": _float17(verdict.det_plus),
        "criteria": verdict.criteria,
        "pairs": [
            {
                "schur_sign_change": pv.schur_sign_change,
                "corner_sign_change": pv.corner_sign_change,
                "numeric_sign_change": pv.numeric_sign_change,
                "discrepancy": _float17(pv.discrepancy),
            }
            for pv in verdict.pair_verdicts
        ],
        "verdict": verdict.verdict,
        "branches": branches,
    }
    _emit(out, args.json_out)
    return 0


def _verify_one_instance(rng: random.Random, args, index: int) -> dict:
    from .geometry import det_derivative, det_differential_sum

    inst = random_planted_instance(
        rng, max_size=args.size, max_degree=args.degree
    )
    path, lam0 = inst.path, inst.center
    field = path.field
    checks = {}
    cert = build_certificate(path, lam0)
    checks["planted_chi"] = int(cert.chi_det) == inst.chi
    checks["routes_agree"] = cert.agree
    pair = projection_pair(path, lam0)
    if pair.kernel_dim >= 1:
        checks["inverse_identity"] = schur_inverse_identity(path, pair)
        for s in range(1, 4):
            seeded = projection_pair(path, lam0, seed=s)
            checks["inverse_identity"] &= schur_inverse_identity(path, seeded)
    if inst.chi > 0:
        path_kappas = local_partial_multiplicities(path.matrix, lam0).kappas
        checks["algebraic_order_is_kappa1"] = (
            algebraic_order(path, lam0) == path_kappas[0]
        )
        checks["path_kappa_sum"] = sum(path_kappas) == inst.chi
    companion = random_planted_instance(
        rng,
        max_degree=args.degree,
        size=path.size,
        center=lam0,
    )
    checks["product_formula"] = check_product_formula(path, companion.path, lam0)
    checks["direct_sum"] = check_direct_sum(path, companion.path, lam0)
    if path.size <= SUM_DIMENSION_CAP:
        t = ConstMat(
            field,
            [
                [random_scalar(rng, field) for _ in range(path.size)]
                for _ in range(path.size)
            ],
        )
        base = MatPoly.lambda_identity_minus(t).eval(lam0)
        ok = True
        for r in range(1, min(4, path.size) + 1):
            ok &= det_differential_sum(base, r) == det_derivative(t, lam0, r)
        checks["differential_sum"] = ok
    pencil_t, pencil_lam, _mult = random_jordan_pencil(rng, field, max_size=4)
    checks["pencil_routes"] = pencil_routes_agree(pencil_t, pencil_lam)
    return {
        "index": index,
        "size": path.size,
        "chi": inst.chi,
        "checks": checks,
        "ok": all(checks.values()),
        "instance": render_path(path, center=lam0),
    }


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    results = []
    failures = []
    for index in range(args.count):
        result = _verify_one_instance(rng, args, index)
        results.append(result)
        if not result["ok"]:
            failures.append(result)
    passes = args.count - len(failures)
    out = {
        "seed": args.seed,
        "count": args.count,
        "size": args.size,
        "degree": args.degree,
        "instances": [
            {k: v for k, v in r.items() if k != "instance"} for r in results
        ],
        "summary": f"{passes}/{args.count} pass",
    }
    for failure in failures:
        repro = f"reproducer-seed{args.seed}-i{failure['index']}.json"
        with open(repro, "w", encoding="utf-8") as fh:
            json.dump(failure["instance"], fh, indent=2, ensure_ascii=True)
            fh.write("\n")
        out.setdefault("reproducers", []).append(repro)
    _emit(out, args.json_out)
    return 0 if not failures else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algmult",
        description=(
            "Exact multiplicity of matrix-polynomial paths by four "
            "cross-certified routes, plus a bifurcation harness."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="problem file (JSON)")
        p.add_argument("--json-out", default=None, help="also write JSON here")

    p_chi = sub.add_parser("chi", help="four-route multiplicity certificate")
    add_common(p_chi)
    p_chi.add_argument("--lambda0", default=None, help="center (scalar text)")
    p_chi.set_defaults(func=cmd_chi)

    p_spec = sub.add_parser("spectrum", help="field eigenvalues with multiplicities")
    add_common(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_verify = sub.add_parser(
        "verify", help="random planted instances through the full invariant suite"
    )
    add_common(p_verify, needs_input=False)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--count", type=int, default=10)
    p_verify.add_argument("--size", type=int, default=4)
    p_verify.add_argument("--degree", type=int, default=3)
    p_verify.set_defaults(func=cmd_verify)

    p_bif = sub.add_parser("bifurcate", help="odd-multiplicity bifurcation verdict")
    add_common(p_bif)
    p_bif.add_argument("--lambda0", default=None)
    p_bif.add_argument("--delta", type=float, default=None, help="probe offset")
    p_bif.set_defaults(func=cmd_bifurcate)

    p_tan = sub.add_parser("tangent", help="tangent order of a constant pencil")
    add_common(p_tan)
    p_tan.add_argument("--lambda0", default=None)
    p_tan.add_argument("--max-order", type=int, default=None)
    p_tan.set_defaults(func=cmd_tangent)

    p_schur = sub.add_parser("schur", help="Schur operator and witnesses")
    add_common(p_schur)
    p_schur.add_argument("--lambda0", default=None)
    p_schur.add_argument("--seed", type=int, default=None, help="seeded pair")
    p_schur.set_defaults(func=cmd_schur)

    p_smith = sub.add_parser("smith", help="partial multiplicities and linearization")
    add_common(p_smith)
    p_smith.add_argument("--lambda0", default=None)
    p_smith.set_defaults(func=cmd_smith)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProblemFormatError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    except (json.JSONDecodeError, ValueError) as exc:
        if isinstance(exc, DegeneratePathError):
            sys.stderr.write(f"{DEGENERATE_MESSAGE}\n")
            return 2
        if isinstance(exc, (RegularityError, CapExceededError)):
            sys.stderr.write(f"input error: {exc}\n")
            return 1
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    except NewtonConvergenceError as exc:
        sys.stderr.write(f"numerics failed: {exc}\n")
        return 2
    except InvariantViolationError as exc:
        sys.stderr.write(f"internal invariant violation: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())

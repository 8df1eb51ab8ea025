"""Command line front end: ``crl degree|singular|ideal|covariants|char``.

Human-readable tables by default; ``--json`` prints the report envelope.
Exit codes: 0 ok, 2 validation error, 3 budget exceeded, 4 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from crl import __version__
from crl.charring import Character, cg_tensor, plethysm_sym_sym, wedge_sym
from crl.covariants import (
    CovariantError,
    calibrate_combination,
    criterion_table,
    parse_covariant,
    vanishes_on_locus,
)
from crl.encomplex import (
    ASSUMPTIONS,
    UnknownDError,
    VanishingAssumptionError,
    euler_h0_char,
    predicted_ideal_char,
    report as complex_report,
)
from crl.ideal_la import (
    BudgetExceeded,
    LAConfig,
    generator_characters,
    graded_piece_kernel,
    minimal_generators_by_degree,
)
from crl.ideal_la.groebner import GroebnerBudgetExceeded
from crl.partitions import (
    PartitionError,
    crl_degree,
    de_jonquieres_degree,
    parse_partition,
    singular_merge_set,
)
from crl.polyring import PolyError

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4


class Mismatch(RuntimeError):
    """Two independent methods disagree."""


def envelope(command: str, lam, parameters: dict, results: dict,
             assumptions: Sequence[str] = (), certified: bool | None = None,
             warnings: Sequence[str] = ()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "partition": lam.to_json() if lam is not None else None,
        "parameters": parameters,
        "results": results,
        "assumptions": list(assumptions),
        "certified": certified,
        "warnings": list(warnings),
    }


def dumps(env: dict) -> str:
    return json.dumps(env, sort_keys=True, ensure_ascii=False, indent=2)


# -- commands -------------------------------------------------------------------


def cmd_degree(args) -> tuple[dict, list[str]]:
    lam = parse_partition(args.partition)
    formula = crl_degree(lam)
    coefficient = de_jonquieres_degree(lam)
    if formula != coefficient:
        raise Mismatch(f"degree formula {formula} != coefficient extraction {coefficient}")
    results = {
        "degree": {"value": formula, "method": "formula"},
        "de_jonquieres": {"value": coefficient, "method": "formula"},
        "n": lam.n, "d": lam.d, "M": lam.M,
    }
    lines = [f"partition {lam}  (d={lam.d}, n={lam.n}, M={lam.M})",
             f"degree (closed formula)      {formula}",
             f"degree (coefficient extract) {coefficient}"]
    return envelope("degree", lam, {}, results, certified=True), lines


def cmd_singular(args) -> tuple[dict, list[str]]:
    lam = parse_partition(args.partition)
    ms = singular_merge_set(lam)
    results = ms.to_json()
    results["method"] = "formula"
    results["empty"] = ms.is_empty()
    lines = [f"partition {lam.exponent_notation()}"]
    for name, case in ms.cases().items():
        lines.append(f"case ({name}): {len(case)}")
        for mu in sorted(case, key=lambda p: p.parts, reverse=True):
            wit = "; ".join(",".join(map(str, w)) for w in case[mu])
            lines.append(f"  {mu.exponent_notation():24s} witnesses {wit}")
    if ms.is_empty():
        lines.append("empty: all parts equal, the locus is smooth")
    return envelope("singular", lam, {}, results, certified=True), lines


def cmd_ideal(args) -> tuple[dict, list[str]]:
    lam = parse_partition(args.partition)
    m = args.m
    config = LAConfig.from_env()
    warnings: list[str] = []
    results: dict = {}
    lines = [f"partition {lam}, degree m={m}"]
    method = args.method
    prediction: Character | None = None
    certified = None

    if method in ("predict", "both"):
        rep = complex_report(lam, m)
        try:
            prediction = predicted_ideal_char(lam, m)
            results["prediction"] = {**rep, "method": "complex-prediction",
                                     "character": prediction.to_json()}
            lines.append(f"predicted (complex)   {prediction}   dim {prediction.dim()}")
        except UnknownDError as exc:
            warnings.append(f"{exc}; falling back to kernel-only mode")
            results["prediction"] = {**rep, "method": "complex-prediction", "character": None}
            method = "kernel"
            lines.append("predicted (complex)   unavailable: D unknown")
        except VanishingAssumptionError as exc:
            warnings.append(str(exc))
            results["prediction"] = {**rep, "method": "complex-prediction", "character": None}
            lines.append(f"predicted (complex)   virtual: {exc.character}  (assumptions fail)")

    if method in ("kernel", "both"):
        rep = graded_piece_kernel(lam, m, config)
        certified = rep.certified
        results["kernel"] = {**rep.to_json(include_basis=args.basis), "method": "linear-algebra"}
        lines.append(f"kernel (linear alg.)  {rep.character}   dim {rep.dim_ideal}"
                     f"   certified={rep.certified}")
        lines.append(f"ambient {rep.dim_ambient}, Hilbert function {rep.hilbert_value}")
        if method == "both" and prediction is not None:
            agree = prediction == rep.character
            results["agreement"] = agree
            if not agree:
                env = envelope("ideal", lam, {"m": m, "method": args.method}, results,
                               ASSUMPTIONS, certified, warnings)
                raise Mismatch(dumps(env))
            lines.append("prediction and kernel agree")

    if args.gens_up_to:
        gens = minimal_generators_by_degree(lam, args.gens_up_to, config)
        chars = generator_characters(lam, args.gens_up_to, config)
        results["generators"] = {
            "method": "linear-algebra",
            "counts": {str(k): v for k, v in gens.items()},
            "characters": {str(k): c.to_json() for k, c in chars.items()},
        }
        for k in sorted(gens):
            lines.append(f"new generators in degree {k}: {gens[k]:4d}  {chars[k]}")

    env = envelope("ideal", lam, {"m": m, "method": args.method,
                                  "gens_up_to": args.gens_up_to,
                                  "max_ambient_dim": config.max_ambient_dim},
                   results, ASSUMPTIONS if "prediction" in results else (), certified, warnings)
    return env, lines


def cmd_covariants(args) -> tuple[dict, list[str]]:
    lam = parse_partition(args.partition)
    d = args.d if args.d is not None else lam.d
    if d != lam.d:
        raise PartitionError(f"d={d} does not match the partition degree {lam.d}")
    results: dict = {}
    lines = [f"binary {d}-ic, locus {lam}"]
    if args.calibrate:
        basis = [parse_covariant(t, d) for t in args.calibrate]
        vecs = calibrate_combination(basis, lam)
        results["calibration"] = {
            "basis": list(args.calibrate),
            "vectors": vecs,
            "method": "linear-algebra",
        }
        lines.append("relations vanishing on the locus:")
        for v in vecs:
            lines.append("  " + " + ".join(f"({c})*[{t}]" for c, t in zip(v, args.calibrate)))
        if not vecs:
            lines.append("  none")
    elif args.check:
        rows = []
        for text in args.check:
            C = parse_covariant(text, d)
            ok = vanishes_on_locus(C, lam)
            rows.append({"expr": text, "type": list(C.type), "vanishes": ok,
                         "nonzero": not C.is_zero(), "method": "formula"})
            lines.append(f"  {text:36s} type {C.type}  vanishes={ok}")
        results["checks"] = rows
    else:
        table = []
        for m, covs in criterion_table(d, lam):
            for C in covs:
                ok = vanishes_on_locus(C, lam)
                table.append({"degree": m, "expr": C.name, "type": list(C.type),
                              "vanishes": ok, "nonzero": not C.is_zero(), "method": "formula"})
                lines.append(f"  I_{m}: {C.name:30s} type {C.type}  vanishes={ok}")
        results["table"] = table
    return envelope("covariants", lam, {"d": d}, results, certified=True), lines


def cmd_char(args) -> tuple[dict, list[str]]:
    ops = {"cg": cg_tensor, "sym": plethysm_sym_sym, "wedge": wedge_sym}
    ch = ops[args.op](args.a, args.b)
    label = {"cg": "s{a} * s{b}", "sym": "Sym^{a}(Sym^{b})", "wedge": "wedge^{a}(Sym^{b})"}
    text = label[args.op].format(a=args.a, b=args.b)
    results = {"character": {**ch.to_json(), "method": "formula"}, "expression": text}
    return envelope("char", None, {"op": args.op, "a": args.a, "b": args.b}, results,
                    certified=True), [f"{text} = {ch}   (dim {ch.dim()})"]


def cmd_euler(args) -> tuple[dict, list[str]]:
    lam = parse_partition(args.partition)
    rep = complex_report(lam, args.m)
    ch = euler_h0_char(lam, args.m)
    lines = [f"alternating sum for {lam} at m={args.m}: {ch}"]
    for t in rep["terms"]:
        lines.append(f"  p={t['p']:3d} alpha={t['alpha']:3d}  {t['character']['text']}")
    return envelope("euler", lam, {"m": args.m}, {**rep, "method": "complex-prediction"},
                    ASSUMPTIONS, certified=True), lines


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crl", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"crl {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report envelope")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock seconds to the report (breaks byte-identity)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", parents=[common], help="degree of X_lambda, two ways")
    p.add_argument("partition", help='comma list, e.g. "3,2,2"')
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("singular", parents=[common], help="partitions indexing the singular locus")
    p.add_argument("partition")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("ideal", parents=[common], help="degree-m piece of the ideal")
    p.add_argument("partition")
    p.add_argument("m", type=int)
    p.add_argument("--method", choices=("predict", "kernel", "both"), default="both")
    p.add_argument("--gens-up-to", type=int, default=0, metavar="M",
                   help="also count minimal generators in degrees 1..M")
    p.add_argument("--basis", action="store_true", help="include kernel basis polynomials")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("covariants", parents=[common], help="covariants vanishing on the locus")
    p.add_argument("partition")
    p.add_argument("--d", type=int, default=None, help="base degree (defaults to |lambda|)")
    p.add_argument("--calibrate", nargs="+", metavar="EXPR",
                   help="find relations among covariants of one type")
    p.add_argument("--check", nargs="+", metavar="EXPR", help="test given expressions")
    p.set_defaults(func=cmd_covariants)

    p = sub.add_parser("char", parents=[common], help="raw character ring operations")
    p.add_argument("op", choices=("cg", "sym", "wedge"))
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("euler", parents=[common], help="terms of the complex at twist m")
    p.add_argument("partition")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_euler)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        env, lines = args.func(args)
    except (PartitionError, PolyError, CovariantError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (BudgetExceeded, GroebnerBudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Mismatch as exc:
        print(f"cross-validation mismatch:\n{exc}", file=sys.stderr)
        return EXIT_MISMATCH
    if args.timing:
        env["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    if args.json:
        sys.stdout.write(dumps(env) + "\n")
    else:
        for w in env.get("warnings", []):
            print(f"warning: {w}", file=sys.stderr)
        print("\n".join(lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

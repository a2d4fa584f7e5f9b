"""Command-line front end.

Every library operation is reachable through a verb; algebras travel as the
JSON format of ``serialize``/``parse``.  Exit codes: 0 success or passing
check, 1 failing check or violation found, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    SuperAlgebra,
    check_grading,
    check_leibniz_superidentity,
    check_lie_superidentity,
    parse,
    parse_graded_map,
    serialize,
)
from .catalog import (
    closed_formula_bracket,
    complete_by_superidentity,
    csq_model,
    max_nilindex_leibniz,
    max_nilindex_super,
    thm32_family,
    thm32_normal,
    zf_adapted,
)
from .errors import (
    InconsistentStructure,
    LeibnizSuperError,
    NotNilpotent,
    ParseError,
)
from .invariants import (
    center,
    characteristic_sequence,
    descending_central_series,
    right_annihilator,
)
from .linalg import DEFAULT_TOL, RATIONAL
from .verify import (
    check_generator_placement,
    probe_csq_nonexistence,
    probe_zf_nonexistence,
    verify_isomorphism,
    verify_lemma_formula,
    verify_thm32,
)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_algebra(path: str) -> SuperAlgebra:
    return parse(_read_text(path))


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _parse_rows(text: Optional[str], what: str) -> Optional[list]:
    """Decode a JSON array of arrays of rational strings, e.g. '[["1/2","0"]]'."""
    if text is None:
        return None
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: invalid JSON: {exc.msg}") from None
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError(f"{what}: expected an array of arrays")
    return rows


def _parse_scalars(text: str, what: str) -> list:
    try:
        values = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: invalid JSON: {exc.msg}") from None
    if not isinstance(values, list):
        raise ParseError(f"{what}: expected an array")
    return values


def _parse_parts(text: str) -> list:
    values = _parse_scalars(text, "--parts")
    if any(not isinstance(v, int) for v in values):
        raise ParseError("--parts: expected an array of integers")
    return values


def _parse_b1(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(text)
    except ValueError:
        raise ParseError(f"--b1: cannot read {text!r} as a rational or complex number") from None


def _pairs_str(pairs) -> str:
    if not pairs:
        return "0"
    return " + ".join(f"{value}*{label}" for label, value in pairs)


def _violation_lines(violations, limit: int = 10) -> list:
    lines = [f"  {v}" for v in violations[:limit]]
    if len(violations) > limit:
        lines.append(f"  ... and {len(violations) - limit} more")
    return lines


def cmd_check(args) -> int:
    algebra = _load_algebra(args.algebra)
    grading = check_grading(algebra)
    identity = check_leibniz_superidentity(algebra, args.tol)
    clean = not grading and not identity
    if args.json:
        doc = {
            "name": algebra.name,
            "grading_violations": [[str(l), str(r), str(t)] for l, r, t in grading],
            "identity_violations": [
                {"x": str(v.x), "y": str(v.y), "z": str(v.z)} for v in identity
            ],
            "clean": clean,
        }
        _emit(json.dumps(doc, indent=2), None)
    else:
        print(f"grading violations: {len(grading)}")
        for line in _violation_lines([f"[{l},{r}] hits {t}" for l, r, t in grading]):
            print(line)
        print(f"identity violations: {len(identity)}")
        for line in _violation_lines([str(v) for v in identity]):
            print(line)
        print("clean" if clean else "NOT a Leibniz superalgebra")
    return 0 if clean else 1


def cmd_lie_check(args) -> int:
    algebra = _load_algebra(args.algebra)
    grading = check_grading(algebra)
    lie = check_lie_superidentity(algebra, args.tol)
    clean = not grading and not lie
    if args.json:
        doc = {
            "name": algebra.name,
            "grading_violations": [[str(l), str(r), str(t)] for l, r, t in grading],
            "lie_violations": [
                {"kind": v.kind, "elements": [str(e) for e in v.elements]} for v in lie
            ],
            "clean": clean,
        }
        _emit(json.dumps(doc, indent=2), None)
    else:
        print(f"grading violations: {len(grading)}")
        print(f"lie violations: {len(lie)}")
        for line in _violation_lines([str(v) for v in lie]):
            print(line)
        print("clean" if clean else "NOT a Lie superalgebra")
    return 0 if clean else 1


def cmd_series(args) -> int:
    algebra = _load_algebra(args.algebra)
    report = descending_central_series(algebra)
    if args.json:
        doc = {
            "name": algebra.name,
            "dims": list(report.dims),
            "nilindex": report.nilindex,
        }
        _emit(json.dumps(doc, indent=2), None)
    else:
        print(str(report))
    return 0


def cmd_cseq(args) -> int:
    algebra = _load_algebra(args.algebra)
    seq = characteristic_sequence(algebra, samples=args.samples, seed=args.seed)
    if args.json:
        doc = {"name": algebra.name, "even": list(seq.even), "odd": list(seq.odd)}
        _emit(json.dumps(doc, indent=2), None)
    else:
        print(str(seq))
    return 0


def cmd_invariants(args) -> int:
    algebra = _load_algebra(args.algebra)
    series = descending_central_series(algebra)
    annihilator = right_annihilator(algebra)
    central = center(algebra)
    seq = None
    note = None
    try:
        seq = characteristic_sequence(algebra, samples=args.samples, seed=args.seed)
    except LeibnizSuperError as exc:
        note = str(exc)
    if args.json:
        doc = {
            "name": algebra.name,
            "n": algebra.n,
            "m": algebra.m,
            "nilindex": series.nilindex,
            "series_dims": list(series.dims),
            "char_sequence": None if seq is None else {"even": list(seq.even), "odd": list(seq.odd)},
            "right_annihilator_dim": annihilator.dim,
            "center_dim": central.dim,
        }
        if note:
            doc["char_sequence_note"] = note
        _emit(json.dumps(doc, indent=2), None)
    else:
        if algebra.name:
            print(f"name: {algebra.name}")
        print(f"dimensions: n={algebra.n}, m={algebra.m}")
        print(f"nilindex: {series.nilindex if series.nilindex else 'not nilpotent'}")
        print(f"series dims: {' > '.join(str(d) for d in series.dims)}")
        print(f"char sequence: {seq if seq is not None else f'unavailable ({note})'}")
        print(f"right annihilator dim: {annihilator.dim}")
        print(f"center dim: {central.dim}")
    return 0


def _catalog_algebra(args) -> SuperAlgebra:
    if args.family == "max-leibniz":
        return max_nilindex_leibniz(args.n)
    if args.family == "max-super":
        return max_nilindex_super(args.n)
    if args.family == "zf":
        skeleton = zf_adapted(
            args.n, args.m, _parse_rows(args.alpha, "--alpha"), _parse_rows(args.beta, "--beta")
        )
        return complete_by_superidentity(skeleton)
    if args.family == "thm32-family":
        return thm32_family(args.m, _parse_scalars(args.gamma, "--gamma"))
    if args.family == "thm32-normal":
        return thm32_normal(args.m)
    skeleton = csq_model(
        args.n,
        _parse_parts(args.parts),
        _parse_rows(args.alpha, "--alpha"),
        _parse_rows(args.beta, "--beta"),
    )
    return complete_by_superidentity(skeleton)


def cmd_catalog(args) -> int:
    try:
        algebra = _catalog_algebra(args)
    except InconsistentStructure as exc:
        print(f"inconsistent parameters: {exc}", file=sys.stderr)
        return 1
    _emit(serialize(algebra), args.output)
    return 0


def cmd_complete(args) -> int:
    alpha = _parse_rows(args.alpha, "--alpha")
    beta = _parse_rows(args.beta, "--beta")
    if args.parts:
        skeleton = csq_model(args.n, _parse_parts(args.parts), alpha, beta)
    else:
        if args.m is None:
            raise ParseError("complete needs --m (single chain) or --parts")
        skeleton = zf_adapted(args.n, args.m, alpha, beta)
    try:
        algebra = complete_by_superidentity(skeleton)
    except InconsistentStructure as exc:
        if args.json:
            doc = {
                "consistent": False,
                "triple": list(exc.triple),
                "residual": [str(v) for v in exc.residual],
            }
            _emit(json.dumps(doc, indent=2), None)
        else:
            print(f"inconsistent: identity fails at {exc.triple}")
        return 1
    _emit(serialize(algebra), args.output)
    return 0


def cmd_formula(args) -> int:
    beta = _parse_rows(args.beta, "--beta")
    if beta is None:
        raise ParseError("formula needs --beta rows")
    value = closed_formula_bracket(args.i, args.j, beta, args.n, args.m1)
    pairs = [[f"x{k + 1}", str(v)] for k, v in enumerate(value) if v]
    if args.json:
        doc = {"i": args.i, "j": args.j, "value": pairs}
        _emit(json.dumps(doc, indent=2), None)
    else:
        print(f"[y{args.i},y{args.j}] = {_pairs_str([(l, v) for l, v in pairs])}")
    return 0


def cmd_verify_thm32(args) -> int:
    report = verify_thm32(
        args.m, _parse_scalars(args.gamma, "--gamma"), _parse_b1(args.b1), args.tol
    )
    if args.json:
        _emit(report.to_json(), None)
    else:
        print(f"deviation: {report.deviation:.3e} (tolerance {report.tolerance:.1e})")
        print("pass" if report.passed else "FAIL")
    return 0 if report.passed else 1


def cmd_probe_zf(args) -> int:
    report = probe_zf_nonexistence(args.n, args.m, args.trials, args.seed)
    return _finish_probe(report, args)


def cmd_probe_csq(args) -> int:
    report = probe_csq_nonexistence(args.n, _parse_parts(args.parts), args.trials, args.seed)
    return _finish_probe(report, args)


def _finish_probe(report, args) -> int:
    if args.json:
        _emit(report.to_json(), None)
    else:
        print(f"trials: {report.trials}  seed: {report.seed}")
        print(f"max nilindex: {report.max_nilindex}")
        print(f"histogram: {report.to_json_dict()['histogram']}")
        print(f"violations: {len(report.violations)}")
        for record in report.violations[:5]:
            print(f"  trial {record['trial']}: nilindex {record['nilindex']}, "
                  f"char sequence {record['char_sequence']}")
    return 0 if report.passed else 1


def cmd_verify_formula(args) -> int:
    report = verify_lemma_formula(args.n, args.m, args.trials, args.seed)
    if args.json:
        _emit(report.to_json(), None)
    else:
        print(f"pairs checked: {report.pairs_checked} over {report.trials} trials")
        if report.passed:
            print("all derived products match the closed formula")
        else:
            mm = report.first_mismatch
            print(f"MISMATCH at trial {mm['trial']}, pair ({mm['i']},{mm['j']})")
    return 0 if report.passed else 1


def cmd_iso_verify(args) -> int:
    a = _load_algebra(args.first)
    b = _load_algebra(args.second)
    change = parse_graded_map(_read_text(args.map))
    matched = verify_isomorphism(a, b, change, args.tol)
    if args.json:
        _emit(json.dumps({"isomorphic_via_map": matched}, indent=2), None)
    else:
        print("map carries the first table onto the second" if matched else "map does NOT match")
    return 0 if matched else 1


def cmd_generators(args) -> int:
    algebra = _load_algebra(args.algebra)
    report = check_generator_placement(algebra)
    if args.json:
        _emit(report.to_json(), None)
    else:
        print(f"even generators: {report.even_count}")
        print(f"odd generators: {report.odd_count}")
        print(f"representatives: {', '.join(report.representatives)}")
    return 0


def _add_json(p) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _add_tol(p) -> None:
    p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                   help="absolute tolerance on the complex backend (default 1e-9)")


def _add_seeded(p, trials_default: int = 1000) -> None:
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--trials", type=int, default=trials_default,
                   help=f"number of trials (default {trials_default})")


def _add_samples(p) -> None:
    p.add_argument("--samples", type=int, default=50,
                   help="random candidates for the characteristic sequence (default 50)")
    p.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leibnizsuper",
        description="Exact structure-constant calculus for nilpotent Leibniz and Lie superalgebras.",
    )
    sub = parser.add_subparsers(dest="verb", metavar="verb")

    p = sub.add_parser("check", help="grading + Leibniz superidentity check")
    p.add_argument("algebra", help="algebra JSON file, or - for stdin")
    _add_json(p)
    _add_tol(p)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("lie-check", help="grading + graded Lie conditions check")
    p.add_argument("algebra")
    _add_json(p)
    _add_tol(p)
    p.set_defaults(handler=cmd_lie_check)

    p = sub.add_parser("invariants", help="nilindex, series, char sequence, annihilator, center")
    p.add_argument("algebra")
    _add_json(p)
    _add_samples(p)
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("series", help="descending central series dimensions")
    p.add_argument("algebra")
    _add_json(p)
    p.set_defaults(handler=cmd_series)

    p = sub.add_parser("cseq", help="characteristic sequence")
    p.add_argument("algebra")
    _add_json(p)
    _add_samples(p)
    p.set_defaults(handler=cmd_cseq)

    cat = sub.add_parser("catalog", help="emit a catalog algebra as JSON")
    fam = cat.add_subparsers(dest="family", metavar="family")

    q = fam.add_parser("max-leibniz", help="single even chain of maximal nilindex")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("-o", "--output")
    q.set_defaults(handler=cmd_catalog)

    q = fam.add_parser("max-super", help="graded chain of maximal nilindex")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("-o", "--output")
    q.set_defaults(handler=cmd_catalog)

    q = fam.add_parser("zf", help="completed single-odd-chain skeleton")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--alpha", help='JSON rows, e.g. \'[["1/2","0"],["0","0"]]\'')
    q.add_argument("--beta", help="JSON rows")
    q.add_argument("-o", "--output")
    q.set_defaults(handler=cmd_catalog)

    q = fam.add_parser("thm32-family", help="two-even-dimensional gamma family")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--gamma", required=True, help='JSON array, e.g. \'["0","1"]\'')
    q.add_argument("-o", "--output")
    q.set_defaults(handler=cmd_catalog)

    q = fam.add_parser("thm32-normal", help="normal form of the gamma family")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("-o", "--output")
    q.set_defaults(handler=cmd_catalog)

    q = fam.add_parser("csq-model", help="completed multi-chain skeleton")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--parts", required=True, help="JSON array of part sizes, e.g. '[2,2]'")
    q.add_argument("--alpha")
    q.add_argument("--beta")
    q.add_argument("-o", "--output")
    q.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("complete", help="complete a chain skeleton by superidentity rewriting")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--parts", help="JSON array of part sizes (multi-chain)")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("-o", "--output")
    _add_json(p)
    p.set_defaults(handler=cmd_complete)

    p = sub.add_parser("formula", help="closed formula for [y_i, y_j] from beta rows")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m1", type=int, required=True, help="length of the first odd chain")
    p.add_argument("--beta", required=True)
    _add_json(p)
    p.set_defaults(handler=cmd_formula)

    p = sub.add_parser("verify-formula", help="cross-check completion against the closed formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_seeded(p, trials_default=100)
    _add_json(p)
    p.set_defaults(handler=cmd_verify_formula)

    p = sub.add_parser("verify-thm32", help="normalize a gamma family and measure the residual")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--b1", default="1", help="scale of the first even generator (default 1)")
    _add_json(p)
    _add_tol(p)
    p.set_defaults(handler=cmd_verify_thm32)

    p = sub.add_parser("probe-zf", help="nonexistence probe over single-odd-chain skeletons")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    _add_seeded(p)
    _add_json(p)
    p.set_defaults(handler=cmd_probe_zf)

    p = sub.add_parser("probe-csq", help="nonexistence probe over multi-chain skeletons")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--parts", required=True)
    _add_seeded(p)
    _add_json(p)
    p.set_defaults(handler=cmd_probe_csq)

    p = sub.add_parser("iso-verify", help="check that a graded map carries one table onto another")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--map", required=True, help="graded map JSON file")
    _add_json(p)
    _add_tol(p)
    p.set_defaults(handler=cmd_iso_verify)

    p = sub.add_parser("generators", help="parities of a generating pair from L/L^2")
    p.add_argument("algebra")
    _add_json(p)
    p.set_defaults(handler=cmd_generators)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "handler", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistentStructure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NotNilpotent as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except LeibnizSuperError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

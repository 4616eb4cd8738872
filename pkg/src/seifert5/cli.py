"""Command-line surface: JSON in, JSON (or text) out, deterministic exit codes.

Exit codes: 0 for an affirmative verdict (realizable, admissible, verified,
feasible), 1 for a negative verdict, 2 for input or internal errors, 3 when
the answer is INDETERMINATE or the search was inconclusive.  Output is a
single JSON document on stdout (JSON lines for `enumerate`); diagnostics go
to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .abgroup import AbelianGroup
from .classify import (
    FiveManifoldClass,
    circle_action_admissible,
    decode_i,
    encode_i,
    smale_barden_realizable,
    validate_i,
)
from .cohomology import Indeterminate, UnknownNonzero, full_report
from .construct import GateRejection, build, enumerate_admissible, verify_roundtrip
from .orbit_local import StabilizerRep, local_invariants
from .sasakian import (
    DEFAULT_CANDIDATE_CAP,
    MAX_EXCEPTIONAL_VALUES,
    InconclusiveSearch,
    sasaki_check,
)
from .seifert import SeifertSpec, SpecSchemaError, SpecValidationError

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2
EXIT_UNDECIDED = 3


def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _emit(document: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(document, indent=2))
    else:
        for line in text_lines:
            print(line)


def _cmd_classify(args) -> int:
    cls = FiveManifoldClass.from_json_dict(_parse_json(_read_input(args.input)))
    valid = validate_i(cls.h2, cls.i)
    realizable = valid and smale_barden_realizable(cls)
    doc = {
        "h2": cls.h2.to_json_dict(),
        "i": encode_i(cls.i),
        "valid_i": valid,
        "realizable": realizable,
    }
    _emit(doc, args.format, [f"{cls.h2} with i = {encode_i(cls.i)}: "
                             + ("realizable" if realizable else "not realizable")])
    return EXIT_YES if realizable else EXIT_NO


def _cmd_gate(args) -> int:
    cls = FiveManifoldClass.from_json_dict(_parse_json(_read_input(args.input)))
    verdict = circle_action_admissible(cls)
    doc = verdict.to_json_dict()
    if verdict.admissible:
        lines = ["admissible"]
    else:
        lines = ["not admissible: " + ", ".join(verdict.violated_rules)]
    _emit(doc, args.format, lines)
    return EXIT_YES if verdict.admissible else EXIT_NO


def _cmd_construct(args) -> int:
    data = _parse_json(_read_input(args.input))
    if args.target_i is not None:
        i = decode_i(args.target_i if args.target_i == "inf" else int(args.target_i))
        group_data = {k: v for k, v in data.items() if k != "i"}
        cls = FiveManifoldClass(AbelianGroup.from_json_dict(group_data), i)
    else:
        cls = FiveManifoldClass.from_json_dict(data)
    try:
        spec = build(cls)
    except GateRejection as exc:
        _emit(exc.verdict.to_json_dict(), args.format,
              ["not admissible: " + ", ".join(exc.verdict.violated_rules)])
        return EXIT_NO
    if args.verify:
        report = verify_roundtrip(cls)
        doc = {"spec": spec.to_json_dict(), "report": report.to_json_dict()}
        _emit(doc, args.format, [spec.to_json(), _report_text(report)])
    else:
        _emit(spec.to_json_dict(), args.format, [spec.to_json()])
    return EXIT_YES


def _report_text(report) -> str:
    lines = [f"|H1| = {report.h1_order!r}"]
    lines.append(f"H2 = {report.h2}" if report.h2 is not None else "H2 = (undetermined)")
    lines.append(
        f"H3 torsion = {report.h3_tors}" if report.h3_tors is not None else "H3 torsion = (undetermined)"
    )
    lines.append("c1 = (" + ", ".join(str(c) for c in report.c1) + ")")
    lines.append("c1(L/mu) = " + str(list(report.c1_mu)))
    wu = "indeterminate" if isinstance(report.wu, Indeterminate) else str(encode_i(report.wu))
    lines.append(f"wu = {wu}")
    lines.append(f"simply connected: {report.simply_connected}")
    return "\n".join(lines)


def _cmd_verify(args) -> int:
    spec = SeifertSpec.from_json_dict(_parse_json(_read_input(args.input)))
    report = full_report(spec)
    doc = report.to_json_dict()
    if args.expect is None:
        _emit(doc, args.format, [_report_text(report)])
        return EXIT_YES

    expected = FiveManifoldClass.from_json_dict(_parse_json(_read_input(args.expect)))
    diffs = []
    mismatch = False
    undecided = False
    if isinstance(report.h1_order, UnknownNonzero):
        undecided = True
        diffs.append({"field": "h1_order", "expected": 1, "actual": "unknown_nonzero"})
    elif report.h1_order != 1:
        mismatch = True
        diffs.append({"field": "h1_order", "expected": 1, "actual": report.h1_order})
    if report.h2 is not None and report.h2 != expected.h2:
        mismatch = True
        diffs.append(
            {
                "field": "h2",
                "expected": expected.h2.to_json_dict(),
                "actual": report.h2.to_json_dict(),
            }
        )
    if isinstance(report.wu, Indeterminate):
        if report.h1_order == 1:
            undecided = True
            diffs.append(
                {"field": "wu", "expected": encode_i(expected.i), "actual": "indeterminate"}
            )
    elif report.wu != expected.i:
        mismatch = True
        diffs.append(
            {"field": "wu", "expected": encode_i(expected.i), "actual": encode_i(report.wu)}
        )
    doc = {"report": doc, "match": not diffs, "diffs": diffs}
    lines = [_report_text(report), "match" if not diffs else "MISMATCH:"]
    for d in diffs:
        lines.append(f"  {d['field']}: expected {d['expected']}, got {d['actual']}")
    _emit(doc, args.format, lines)
    if mismatch:
        return EXIT_NO
    return EXIT_UNDECIDED if undecided else EXIT_YES


def _cmd_local(args) -> int:
    exponents = tuple(int(x) for x in args.exponents.split(","))
    rep = StabilizerRep(args.m, exponents)
    inv = local_invariants(rep)
    doc = {
        "m": rep.m,
        "exponents": list(rep.exponents),
        "c": list(inv.c),
        "d": list(inv.d),
        "C": inv.C,
        "manifold_point": inv.manifold_point,
    }
    _emit(doc, args.format, [
        f"c = {list(inv.c)}, d = {list(inv.d)}, C = {inv.C}, "
        + ("manifold point" if inv.manifold_point else "orbifold point"),
    ])
    return EXIT_YES


def _cmd_sasaki(args) -> int:
    if args.values is not None:
        values = [int(x) for x in args.values.split(",")]
    else:
        data = _parse_json(_read_input(args.input))
        group = AbelianGroup.from_json_dict({k: v for k, v in data.items() if k != "i"})
        if group.free_rank != 0:
            raise ValueError("sasaki check applies to rational homology spheres (free_rank 0)")
        values = []
        for _, _, c in group.torsion:
            values.append(c)
    try:
        report = sasaki_check(values, max_exceptions=args.max_exceptions,
                              max_candidates=args.max_candidates)
    except InconclusiveSearch as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        _emit({"feasible": None, "inconclusive": True}, args.format, ["inconclusive"])
        return EXIT_UNDECIDED
    doc = report.to_json_dict()
    if report.feasible:
        lines = [f"no obstruction found; witness {report.witness}, "
                 f"{len(report.exceptions)} exception(s)"]
    elif report.densest_violation is not None:
        v = report.densest_violation
        lines = [f"infeasible: {v.count} values in [{v.lo}, {v.hi}] exceed {v.bound:.2f}"]
    else:
        lines = ["infeasible: exhaustive search found no covering quadratic"]
    _emit(doc, args.format, lines)
    return EXIT_YES if report.feasible else EXIT_NO


def _cmd_enumerate(args) -> int:
    for cls, spec in enumerate_admissible(args.max_torsion_order, args.max_k):
        if args.format == "json":
            line = {"class": cls.to_json_dict(), "spec": spec.to_json_dict()}
            print(json.dumps(line, separators=(",", ":")))
        else:
            print(f"k={cls.k} H2={cls.h2} i={encode_i(cls.i)} "
                  f"divisors={len(spec.divisors)} twist={list(spec.twist)}")
    return EXIT_YES


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seifert5",
        description="Circle actions on simply connected 5-manifolds: "
        "classify, construct and verify Seifert presentations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_input=True):
        p.add_argument("--format", choices=("json", "text"), default="json")
        if with_input:
            p.add_argument("input", nargs="?", default=None,
                           help="input file (default: stdin)")

    p = sub.add_parser("classify", help="decide realizability of an (H2, i) class")
    add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("gate", help="decide circle-action admissibility")
    add_common(p)
    p.set_defaults(func=_cmd_gate)

    p = sub.add_parser("construct", help="build a Seifert presentation for an admissible class")
    p.add_argument("--target-i", default=None, help="0, a natural number, or 'inf'")
    p.add_argument("--verify", action="store_true", help="run the round-trip verification")
    add_common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="recompute invariants from a Seifert presentation")
    p.add_argument("--expect", default=None, metavar="CLASS_JSON",
                   help="file with the expected (H2, i); exit 1 on mismatch")
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("local", help="local invariants of a stabilizer representation")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--exponents", required=True, help="comma-separated, e.g. 3,4")
    add_common(p, with_input=False)
    p.set_defaults(func=_cmd_local)

    p = sub.add_parser("sasaki", help="necessary conditions for algebraic realization")
    p.add_argument("--values", default=None, help="comma-separated torsion counts")
    p.add_argument("--max-exceptions", type=int, default=MAX_EXCEPTIONAL_VALUES)
    p.add_argument("--max-candidates", type=int, default=DEFAULT_CANDIDATE_CAP)
    add_common(p)
    p.set_defaults(func=_cmd_sasaki)

    p = sub.add_parser("enumerate", help="stream admissible classes with their presentations")
    p.add_argument("--max-torsion-order", type=int, required=True)
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecSchemaError, SpecValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except AssertionError as exc:
        print(f"internal defect: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

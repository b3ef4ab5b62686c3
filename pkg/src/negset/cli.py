"""Command-line entry point: session evaluation, DISC checking, law sweeps."""

from __future__ import annotations

import argparse
import json
import sys

from . import oracle
from .consistency import disc_violations, make_contradiction_spec
from .errors import NegsetError, UniverseTooLarge, UnknownFixture, UnknownLaw
from .session import (
    Let,
    ParseError,
    SessionScript,
    ValidationError,
    eval_expr,
    format_negset,
    parse_session,
    run_session,
)

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_PARSE = 2
EXIT_RESOLUTION = 3
EXIT_CONFIG = 4


def _load_script(path: str) -> SessionScript:
    with open(path, encoding="utf-8") as handle:
        return parse_session(handle.read())


def cmd_eval(path: str, as_json: bool, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        script = _load_script(path)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    report = run_session(script)
    out.write(report.to_json() if as_json else report.to_text())
    if report.halted:
        return EXIT_RESOLUTION if report.halt_kind == "resolution" else EXIT_CONFIG
    return EXIT_OK if report.all_ok else EXIT_FAILED_CHECKS


def cmd_check(path: str, as_json: bool, out=None, err=None) -> int:
    """Diagnostic mode: evaluate bindings without policy gating, report DISC verdicts."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        script = _load_script(path)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    spec = script.contradiction_spec()
    ungated = make_contradiction_spec(script.universe)  # no relations: raw algebra
    env = {name: value for name, value in script.agents}
    named = [(name, value) for name, value in script.agents]
    for stmt in script.statements:
        if isinstance(stmt, Let):
            value = eval_expr(stmt.expr, env, ungated)
            env[stmt.name] = value
            named.append((stmt.name, value))
    entries = []
    all_ok = True
    for name, value in named:
        violations = disc_violations(value, spec)
        all_ok &= not violations
        entries.append((name, value, violations))
    if as_json:
        doc = {
            "universe": list(script.universe.objects),
            "sets": [
                {
                    "name": name,
                    "value": {
                        "necessity": list(value.necessity.names()),
                        "admissibility": list(value.admissibility.names()),
                    },
                    "disc": not violations,
                    "violations": [
                        {"kind": v.kind, "pair": list(v.pair)} for v in violations
                    ],
                }
                for name, value, violations in entries
            ],
            "ok": all_ok,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for name, value, violations in entries:
            if violations:
                detail = "; ".join(str(v) for v in violations)
                out.write(f"{name} = {format_negset(value)}: NOT DISC [{detail}]\n")
            else:
                out.write(f"{name} = {format_negset(value)}: DISC\n")
    return EXIT_OK if all_ok else EXIT_FAILED_CHECKS


def _law_line(report: oracle.LawReport) -> str:
    status = "as expected" if report.matches_expected else "UNEXPECTED"
    line = (
        f"{report.law} n={report.size}: {report.verdict} "
        f"({report.checked} tuples, {report.violation_count} violations, "
        f"{report.elapsed:.2f}s) [{status}]"
    )
    for example in report.counterexamples:
        line += f"\n  counterexample: {example}"
    return line


def _report_json(report: oracle.LawReport) -> dict:
    return {
        "law": report.law,
        "size": report.size,
        "checked": report.checked,
        "verdict": report.verdict,
        "counterexamples": list(report.counterexamples),
        "violation_count": report.violation_count,
        "elapsed": report.elapsed,
        "matches_expected": report.matches_expected,
    }


def cmd_laws(
    law: str | None,
    run_all: bool,
    size: int | None,
    limit: int,
    unsafe_size: bool,
    as_json: bool,
    out=None,
    err=None,
) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    law_ids = oracle.law_ids() if run_all else [law]
    reports = []
    try:
        for law_id in law_ids:
            if law_id not in oracle.LAWS:
                raise UnknownLaw(law_id)
            n = size if size is not None else oracle.LAWS[law_id].cap
            reports.append(
                oracle.check_law(law_id, n, limit=limit, allow_over_cap=unsafe_size)
            )
    except (UnknownLaw, UniverseTooLarge) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    fixtures = [oracle.verify_fixture(fid) for fid in oracle.fixture_ids()] if run_all else []
    ok = all(r.matches_expected for r in reports) and all(f.passed for f in fixtures)
    if as_json:
        doc = {
            "laws": [_report_json(r) for r in reports],
            "fixtures": [
                {"fixture": f.fixture_id, "passed": f.passed, "note": f.note}
                for f in fixtures
            ],
            "ok": ok,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for report in reports:
            out.write(_law_line(report) + "\n")
        for fixture in fixtures:
            verdict = "pass" if fixture.passed else "FAIL"
            note = f"  # {fixture.note}" if fixture.note else ""
            out.write(f"fixture {fixture.fixture_id}: {verdict}{note}\n")
    return EXIT_OK if ok else EXIT_FAILED_CHECKS


def cmd_fixtures(fixture: str | None, as_json: bool, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ids = [fixture] if fixture else oracle.fixture_ids()
    try:
        results = [oracle.verify_fixture(fid) for fid in ids]
    except UnknownFixture as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    ok = all(r.passed for r in results)
    if as_json:
        doc = {
            "fixtures": [
                {"fixture": r.fixture_id, "passed": r.passed, "note": r.note}
                for r in results
            ],
            "ok": ok,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        for result in results:
            verdict = "pass" if result.passed else "FAIL"
            note = f"  # {result.note}" if result.note else ""
            out.write(f"fixture {result.fixture_id}: {verdict}{note}\n")
    return EXIT_OK if ok else EXIT_FAILED_CHECKS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negset", description="negotiation-set algebra toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="run a session script")
    p_eval.add_argument("path")
    p_eval.add_argument("--json", action="store_true")

    p_check = sub.add_parser("check", help="DISC verdicts for every agent and binding")
    p_check.add_argument("path")
    p_check.add_argument("--json", action="store_true")

    p_laws = sub.add_parser("laws", help="exhaustive law sweeps")
    group = p_laws.add_mutually_exclusive_group(required=True)
    group.add_argument("--law", help="law id to check")
    group.add_argument("--all", action="store_true", dest="run_all")
    p_laws.add_argument("--size", type=int, default=None)
    p_laws.add_argument("--limit", type=int, default=5)
    p_laws.add_argument("--unsafe-size", action="store_true")
    p_laws.add_argument("--json", action="store_true")

    p_fix = sub.add_parser("fixtures", help="re-derive the worked examples")
    p_fix.add_argument("--fixture", default=None)
    p_fix.add_argument("--json", action="store_true")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            return cmd_eval(args.path, args.json)
        if args.command == "check":
            return cmd_check(args.path, args.json)
        if args.command == "laws":
            return cmd_laws(
                args.law, args.run_all, args.size, args.limit, args.unsafe_size, args.json
            )
        return cmd_fixtures(args.fixture, args.json)
    except NegsetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

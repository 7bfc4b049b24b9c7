"""Command-line front end: convert, verify, serve.

Exit codes for ``convert``: 0 success, 1 parse/IO error, 2 untranslatable
rule without a valid ``--ground`` choice, 3 invalid ``--ground`` choice.
``verify`` exits 0 iff no rule FAILed (1 on parse/IO errors); ``serve``
exits 1 when the port is busy or the ontology is unreadable.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
import time
from pathlib import Path

from . import __version__
from .api import ConvertOutcome, convert_payload, convert_rule_text
from .model import Axiom
from .mutation import effective_mutants
from .ns_options import GroundingOption, annotate_rule
from .ontology_io import (
    DEFAULT_BASE_IRI,
    OntologyDocument,
    commit,
    empty_document,
    missing_declarations,
    read_document,
    render_functional,
    render_manchester,
    write_document,
)
from .oracle import DEFAULT_SEED, Verdict, check_equivalence
from .rule_parser import ParseError, parse_rules, render_rule
from .transformer import Success, Untranslatable, convert


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rules2owl",
        description="Compile rules into equivalent OWL 2 DL axioms.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_convert = sub.add_parser(
        "convert", help="convert rules to axioms, optionally committing them"
    )
    _add_rule_source(p_convert)
    p_convert.add_argument("--ontology", help="ontology file (.ofn) to read/commit")
    p_convert.add_argument(
        "--commit", action="store_true", help="write results into the ontology file"
    )
    p_convert.add_argument(
        "--declare-missing",
        action="store_true",
        help="auto-declare classes/properties the rules mention",
    )
    p_convert.add_argument(
        "--ground",
        metavar="V1,V2,...",
        help="nominal-schema variables to ground when a rule is untranslatable",
    )
    p_convert.add_argument(
        "--format",
        choices=("functional", "manchester", "json"),
        default="functional",
    )
    p_convert.add_argument("--base-iri", default=DEFAULT_BASE_IRI)
    p_convert.set_defaults(func=cmd_convert)

    p_verify = sub.add_parser(
        "verify", help="check rule/axiom equivalence on small interpretations"
    )
    _add_rule_source(p_verify)
    p_verify.add_argument("--max-domain", type=int, default=2)
    p_verify.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p_verify.add_argument(
        "--mutate",
        action="store_true",
        help="verify a deliberately corrupted axiom set instead (expect FAIL)",
    )
    p_verify.add_argument(
        "--report-dir",
        help="also write verify_report.csv and verify_summary.png here",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_serve = sub.add_parser("serve", help="run the HTTP service and web UI")
    p_serve.add_argument("--port", type=int, required=True)
    p_serve.add_argument("--ontology", required=True)
    p_serve.add_argument("--base-iri", default=DEFAULT_BASE_IRI)
    p_serve.add_argument(
        "--static-dir",
        help="directory with the web UI build (default: ./frontend/dist if present)",
    )
    p_serve.set_defaults(func=cmd_serve)
    return parser


def _add_rule_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--rule", help="a single rule, e.g. 'A(?x) -> B(?x)'")
    source.add_argument(
        "--rules-file",
        help="file with one rule per line; blank lines and # comments ignored",
    )


def _rule_texts(args: argparse.Namespace) -> list[str]:
    if args.rule is not None:
        return [args.rule]
    try:
        lines = Path(args.rules_file).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CliError(f"cannot read rules file: {exc}") from exc
    return [
        line.strip()
        for line in lines
        if line.strip() and not line.lstrip().startswith("#")
    ]


def _load_document(args: argparse.Namespace) -> OntologyDocument:
    path = getattr(args, "ontology", None)
    base_iri = getattr(args, "base_iri", DEFAULT_BASE_IRI)
    if path is None or not Path(path).exists():
        return empty_document(base_iri)
    try:
        return read_document(path)
    except ParseError as exc:
        raise CliError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise CliError(f"cannot read ontology: {exc}") from exc


# ---------------------------------------------------------------------------
# convert
# ---------------------------------------------------------------------------


def cmd_convert(args: argparse.Namespace) -> int:
    document = _load_document(args)
    if args.commit and not args.ontology:
        raise CliError("--commit requires --ontology")
    ground: frozenset[str] | None = None
    if args.ground:
        ground = frozenset(v.strip() for v in args.ground.split(",") if v.strip())
    texts = _rule_texts(args)
    json_payloads: list[dict] = []
    exit_code = 0
    for text in texts:
        outcome = convert_rule_text(text, document)
        if outcome.status == "error":
            line, column = outcome.position or (0, 0)
            raise CliError(f"line {line}, column {column}: {outcome.message}")
        if outcome.status == "untranslatable":
            outcome, code = _apply_ground(outcome, ground, document)
            if code:
                exit_code = max(exit_code, code)
                _print_untranslatable(outcome, args.format, json_payloads)
                continue
        if args.format == "json":
            json_payloads.append(convert_payload(outcome))
        else:
            for axiom in outcome.axioms:
                print(_render(axiom, args.format))
            for warning in outcome.warnings:
                print(f"warning: {warning}", file=sys.stderr)
        if args.commit:
            result = commit(document, outcome.axioms, args.declare_missing)
            document = result.document
    if args.format == "json":
        out = json_payloads[0] if args.rule is not None else json_payloads
        print(json.dumps(out, indent=2))
    if args.commit and exit_code == 0:
        write_document(document, args.ontology)
        print(f"committed to {args.ontology}", file=sys.stderr)
    return exit_code


def _apply_ground(
    outcome: ConvertOutcome,
    ground: frozenset[str] | None,
    document: OntologyDocument,
) -> tuple[ConvertOutcome, int]:
    """Resolve an untranslatable outcome against --ground. Returns the
    (possibly rewritten) outcome and 0 on success, or the exit code."""
    if ground is None:
        return outcome, 2
    if not any(o.variables == ground for o in outcome.options):
        return outcome, 3
    rule = outcome.untranslatable_rule
    assert rule is not None
    annotated = annotate_rule(rule, GroundingOption(ground))
    resolved = ConvertOutcome(
        "ok",
        rules=[rule],
        axioms=[annotated],
        declarations=missing_declarations([annotated], document.signature()),
    )
    return resolved, 0


def _render(axiom: Axiom, fmt: str) -> str:
    return render_manchester(axiom) if fmt == "manchester" else render_functional(axiom)


def _print_untranslatable(
    outcome: ConvertOutcome, fmt: str, json_payloads: list[dict]
) -> None:
    if fmt == "json":
        json_payloads.append(convert_payload(outcome))
        return
    print(f"untranslatable: {outcome.message}")
    for option, preview in zip(outcome.options, outcome.option_previews):
        print(f"option {','.join(option.sorted_variables())}:")
        for line in preview.splitlines():
            print(f"    {line}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    from .report import VerifyRecord, write_verify_report

    texts = _rule_texts(args)
    if not texts:
        print("0 rules")
        return 0
    records: list[VerifyRecord] = []
    failed = False
    for text in texts:
        try:
            rules = parse_rules(text)
        except ParseError as exc:
            raise CliError(f"{text!r}: {exc}") from exc
        for rule in rules:
            rule_text = render_rule(rule)
            start = time.perf_counter()
            result = convert(rule)
            if isinstance(result, Untranslatable):
                print(f"UNTRANSLATABLE {rule_text}")
                records.append(
                    VerifyRecord(
                        rule_text,
                        "UNTRANSLATABLE",
                        args.max_domain,
                        0,
                        _ms_since(start),
                        result.reason,
                    )
                )
                continue
            assert isinstance(result, Success)
            note = ""
            if args.mutate:
                mutants = effective_mutants(result)
                if mutants:
                    (a, b), result = mutants[0]
                    note = f" (class names {a}/{b} swapped)"
                else:
                    note = " (no class pair to swap; original verified)"
            verdict = check_equivalence(
                rule, result, args.max_domain, seed=args.seed
            )
            duration = _ms_since(start)
            if verdict.passed:
                print(f"PASS {rule_text}{note}")
                records.append(
                    VerifyRecord(
                        rule_text,
                        "PASS",
                        args.max_domain,
                        verdict.interpretations_checked,
                        duration,
                        note.strip(),
                    )
                )
            else:
                failed = True
                print(f"FAIL {rule_text}{note}")
                assert verdict.counterexample is not None
                print(_format_counterexample(verdict))
                records.append(
                    VerifyRecord(
                        rule_text,
                        "FAIL",
                        args.max_domain,
                        verdict.interpretations_checked,
                        duration,
                        _format_counterexample(verdict).replace("\n", " "),
                    )
                )
    if args.report_dir:
        csv_path, png_path = write_verify_report(records, args.report_dir)
        print(f"report written: {csv_path}, {png_path}", file=sys.stderr)
    return 1 if failed else 0


def _ms_since(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def _format_counterexample(verdict: Verdict) -> str:
    interp = verdict.counterexample
    assert interp is not None
    lines = [f"  counterexample (domain size {interp.domain_size}):"]
    for name in sorted(interp.class_ext):
        members = ", ".join(str(d) for d in sorted(interp.class_ext[name]))
        lines.append(f"    {name} = {{{members}}}")
    for name in sorted(interp.role_ext):
        pairs = ", ".join(f"({a},{b})" for a, b in sorted(interp.role_ext[name]))
        lines.append(f"    {name} = {{{pairs}}}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import DocumentStore, create_app

    path = Path(args.ontology)
    if path.exists():
        try:
            document = read_document(path)
        except (ParseError, OSError) as exc:
            raise CliError(f"{path}: {exc}") from exc
    else:
        document = empty_document(args.base_iri)
        write_document(document, path)
    try:
        sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        sock.bind(("127.0.0.1", args.port))
        sock.listen(128)
    except OSError as exc:
        raise CliError(f"cannot bind 127.0.0.1:{args.port}: {exc}") from exc

    static_dir = args.static_dir
    if static_dir is None:
        candidate = Path("frontend") / "dist"
        static_dir = candidate if candidate.is_dir() else None
    if static_dir is not None:
        print(f"serving web UI from {Path(static_dir).resolve()}", file=sys.stderr)
    else:
        print("no web UI build found (frontend/dist); serving API only",
              file=sys.stderr)
    store = DocumentStore(path, document)
    app = create_app(store, static_dir)
    config = uvicorn.Config(app, host="127.0.0.1", port=args.port, log_level="info")
    server = uvicorn.Server(config)
    try:
        server.run(sockets=[sock])
    finally:
        store.flush()
        sock.close()
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

"""Conversion/commit orchestration shared by the CLI and the HTTP service.

The JSON payload shape produced here is the single source of truth for both
the service responses and the CLI's ``--format json`` output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    Axiom,
    ClassExpression,
    Declaration,
    Rule,
    Signature,
    canonicalize_axiom,
)
from .ns_options import GroundingOption, annotate_rule, render_ns_preview
from .ontology_io import (
    OntologyDocument,
    commit,
    missing_declarations,
    render_functional,
    render_manchester,
)
from .rule_parser import ParseError, parse_rules
from .transformer import Success, Untranslatable, convert


@dataclass
class ConvertOutcome:
    status: str  # "ok" | "untranslatable" | "error"
    rules: list[Rule] = field(default_factory=list)
    axioms: list[Axiom] = field(default_factory=list)
    fresh_roles: list[tuple[str, ClassExpression]] = field(default_factory=list)
    declarations: list[Declaration] = field(default_factory=list)
    options: list[GroundingOption] = field(default_factory=list)
    option_previews: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    message: str | None = None
    position: tuple[int, int] | None = None
    untranslatable_rule: Rule | None = None


def convert_rule_text(text: str, document: OntologyDocument) -> ConvertOutcome:
    """Parse and convert rule text against a document's signature. Does not
    mutate anything; conjunctive heads are split and their results merged."""
    try:
        rules = parse_rules(text)
    except ParseError as exc:
        return ConvertOutcome(
            "error", message=exc.message, position=(exc.line, exc.column)
        )
    sig = document.signature()
    axioms: list[Axiom] = []
    seen: set[Axiom] = set()
    fresh: list[tuple[str, ClassExpression]] = []
    warnings: list[str] = []
    for rule in rules:
        result = convert(rule, sig)
        if isinstance(result, Untranslatable):
            options = list(result.options)
            return ConvertOutcome(
                "untranslatable",
                rules=rules,
                options=options,
                option_previews=[render_ns_preview(rule, o) for o in options],
                message=result.reason,
                untranslatable_rule=rule,
            )
        assert isinstance(result, Success)
        for axiom in result.axioms:
            key = canonicalize_axiom(axiom)
            if key not in seen:
                seen.add(key)
                axioms.append(axiom)
        fresh.extend(result.fresh_roles)
        for warning in result.warnings:
            if warning not in warnings:
                warnings.append(warning)
        # later split rules must not reuse the fresh names minted so far
        sig = sig.union(
            Signature(frozenset(), frozenset(name for name, _ in result.fresh_roles))
        )
    declarations = missing_declarations(axioms, document.signature())
    return ConvertOutcome(
        "ok",
        rules=rules,
        axioms=axioms,
        fresh_roles=fresh,
        declarations=declarations,
        warnings=warnings,
    )


def convert_payload(outcome: ConvertOutcome) -> dict:
    """The ConvertResponse JSON. ``options`` is present exactly when the
    status is untranslatable."""
    payload: dict = {
        "status": outcome.status,
        "axioms": [
            {"functional": render_functional(a), "manchester": render_manchester(a)}
            for a in outcome.axioms
        ],
        "freshDeclarations": [
            {"kind": d.kind.value, "name": d.name} for d in outcome.declarations
        ],
        "warnings": list(outcome.warnings),
    }
    if outcome.status == "untranslatable":
        payload["options"] = [o.sorted_variables() for o in outcome.options]
        payload["optionPreviews"] = list(outcome.option_previews)
    if outcome.message is not None:
        payload["message"] = outcome.message
    if outcome.position is not None:
        payload["position"] = {
            "line": outcome.position[0],
            "column": outcome.position[1],
        }
    return payload


@dataclass
class CommitOutcome:
    status: str  # "committed" | "untranslatable" | "error"
    document: OntologyDocument | None = None
    committed: list[Axiom] = field(default_factory=list)
    skipped: list[Axiom] = field(default_factory=list)
    options: list[GroundingOption] = field(default_factory=list)
    ground_invalid: bool = False
    message: str | None = None
    position: tuple[int, int] | None = None


def commit_rule_text(
    text: str,
    document: OntologyDocument,
    ground: frozenset[str] | None = None,
    declare_missing: bool = True,
) -> CommitOutcome:
    """Convert rule text and commit the result to the document. Untranslatable
    rules require ``ground`` to match one of their grounding options, in which
    case the annotated rule is committed instead of axioms."""
    try:
        rules = parse_rules(text)
    except ParseError as exc:
        return CommitOutcome(
            "error", message=exc.message, position=(exc.line, exc.column)
        )
    sig = document.signature()
    to_commit: list[Axiom] = []
    for rule in rules:
        result = convert(rule, sig)
        if isinstance(result, Success):
            to_commit.extend(result.axioms)
            sig = sig.union(
                Signature(
                    frozenset(), frozenset(name for name, _ in result.fresh_roles)
                )
            )
            continue
        assert isinstance(result, Untranslatable)
        options = list(result.options)
        if ground is None:
            return CommitOutcome(
                "untranslatable", options=options, message=result.reason
            )
        if not any(o.variables == ground for o in options):
            return CommitOutcome(
                "untranslatable",
                options=options,
                ground_invalid=True,
                message=(
                    "ground set {" + ", ".join(sorted(ground)) + "} is not one "
                    "of the offered grounding options"
                ),
            )
        to_commit.append(annotate_rule(rule, GroundingOption(ground)))
    outcome = commit(document, to_commit, declare_missing)
    return CommitOutcome(
        "committed",
        document=outcome.document,
        committed=list(outcome.added),
        skipped=list(outcome.skipped),
    )

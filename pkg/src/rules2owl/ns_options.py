"""Nominal-schema grounding options for untranslatable rules.

A grounding option is a minimal set of non-head body variables whose
nominal-schema treatment (each occurrence replaced by a placeholder nominal
``{?v}``) leaves a rule the compiler can translate. The chosen option is
never expanded into axioms; it is recorded as an annotation on the stored
rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import (
    AnnotatedSwrlRule,
    ClassAtom,
    NS_ANNOTATION_PROPERTY,
    Rule,
    rule_signature,
)
from .transformer import (
    ConversionResult,
    Success,
    _convert_with_graph,
    build_graph,
    convert,
)

# Beyond this many candidate variables, exhaustive subset enumeration is
# replaced by a bounded sweep and the result is marked truncated.
MAX_EXHAUSTIVE_CANDIDATES = 16
TRUNCATED_MAX_CARDINALITY = 3


@dataclass(frozen=True)
class GroundingOption:
    """A set of body variables to treat as nominal-schema variables."""

    variables: frozenset[str]

    def __post_init__(self) -> None:
        if not self.variables:
            raise ValueError("a grounding option must name at least one variable")

    def sorted_variables(self) -> list[str]:
        return sorted(self.variables)

    def __str__(self) -> str:
        return "{" + ", ".join(f"?{v}" for v in self.sorted_variables()) + "}"


def _validate_option(rule: Rule, option: GroundingOption) -> None:
    body_vars = rule.body_variables()
    head_vars = rule.head_variables()
    stray = option.variables - body_vars
    if stray:
        raise ValueError(
            f"option names non-body variable(s): {', '.join(sorted(stray))}"
        )
    clashing = option.variables & head_vars
    if clashing:
        raise ValueError(
            f"option must not include head variable(s): {', '.join(sorted(clashing))}"
        )


def _convert_split(rule: Rule, option: GroundingOption) -> ConversionResult:
    graph = build_graph(rule.body, grounded=option.variables)
    return _convert_with_graph(graph, rule.head, rule_signature(rule))


def check_option(rule: Rule, option: GroundingOption) -> bool:
    """True iff grounding the option's variables leaves a translatable rule."""
    _validate_option(rule, option)
    return isinstance(_convert_split(rule, option), Success)


def discarded_class_atoms(rule: Rule, option: GroundingOption) -> list[ClassAtom]:
    """Class atoms on grounded variables; dropped from the residual rule but
    kept around for preview rendering."""
    return [
        a
        for a in rule.body
        if isinstance(a, ClassAtom) and a.arg.name in option.variables
    ]


def enumerate_options_detailed(rule: Rule) -> tuple[list[GroundingOption], bool]:
    """All minimal valid grounding options (sorted by cardinality, then
    lexicographically) plus a flag for truncated enumeration."""
    if isinstance(convert(rule, enumerate_grounding=False), Success):
        return [], False
    candidates = sorted(rule.body_variables() - rule.head_variables())
    truncated = len(candidates) > MAX_EXHAUSTIVE_CANDIDATES
    max_cardinality = TRUNCATED_MAX_CARDINALITY if truncated else len(candidates)
    accepted: list[GroundingOption] = []
    for size in range(1, max_cardinality + 1):
        for combo in itertools.combinations(candidates, size):
            subset = frozenset(combo)
            if any(opt.variables <= subset for opt in accepted):
                continue
            option = GroundingOption(subset)
            if check_option(rule, option):
                accepted.append(option)
    return accepted, truncated


def enumerate_options(rule: Rule) -> list[GroundingOption]:
    """Minimal valid grounding options; empty for translatable rules."""
    options, _ = enumerate_options_detailed(rule)
    return options


def annotate_rule(rule: Rule, option: GroundingOption) -> AnnotatedSwrlRule:
    """The rule stored as-is, with the chosen variables recorded in the
    nominal-schema annotation (comma-joined, sorted)."""
    if not check_option(rule, option):
        raise ValueError(f"option {option} does not make the rule translatable")
    value = ",".join(option.sorted_variables())
    return AnnotatedSwrlRule(rule, ((NS_ANNOTATION_PROPERTY, value),))


def render_ns_preview(rule: Rule, option: GroundingOption) -> str:
    """Human-readable pseudo-axioms for a grounding option, with ``{?v}``
    placeholders for the nominal-schema variables. Display-only."""
    from .ontology_io import render_manchester

    result = _convert_split(rule, option)
    if not isinstance(result, Success):
        raise ValueError(f"option {option} does not make the rule translatable")
    return "\n".join(render_manchester(a) for a in result.axioms)

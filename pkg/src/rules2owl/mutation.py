"""Class-name-swap mutations of generated axiom sets.

Used to demonstrate (and measure) the equivalence oracle's sensitivity: a
correct translation stops matching its rule once two class names are swapped
inside the axioms, unless the swap is structurally neutral.
"""

from __future__ import annotations

import itertools

from .model import (
    AnnotatedSwrlRule,
    Axiom,
    ClassAtom,
    ClassExpression,
    Declaration,
    EntityKind,
    HasSelf,
    Intersection,
    NamedClass,
    NominalPlaceholder,
    Rule,
    SomeValuesFrom,
    SubClassOf,
    SubObjectPropertyOf,
    TopClass,
    canonicalize_axiom,
    expression_class_names,
)
from .transformer import Success


def rename_classes_in_expression(
    expr: ClassExpression, mapping: dict[str, str]
) -> ClassExpression:
    if isinstance(expr, NamedClass):
        return NamedClass(mapping.get(expr.name, expr.name))
    if isinstance(expr, (TopClass, HasSelf, NominalPlaceholder)):
        return expr
    if isinstance(expr, Intersection):
        return Intersection(
            tuple(rename_classes_in_expression(op, mapping) for op in expr.operands)
        )
    if isinstance(expr, SomeValuesFrom):
        return SomeValuesFrom(
            expr.role, rename_classes_in_expression(expr.filler, mapping)
        )
    raise TypeError(f"not a class expression: {expr!r}")


def rename_classes_in_axiom(axiom: Axiom, mapping: dict[str, str]) -> Axiom:
    if isinstance(axiom, SubClassOf):
        return SubClassOf(
            rename_classes_in_expression(axiom.sub, mapping),
            rename_classes_in_expression(axiom.sup, mapping),
        )
    if isinstance(axiom, SubObjectPropertyOf):
        return axiom
    if isinstance(axiom, Declaration):
        if axiom.kind is EntityKind.CLASS:
            return Declaration(axiom.kind, mapping.get(axiom.name, axiom.name))
        return axiom
    if isinstance(axiom, AnnotatedSwrlRule):
        body = [
            ClassAtom(mapping.get(a.class_name, a.class_name), a.arg)
            if isinstance(a, ClassAtom)
            else a
            for a in axiom.rule.body
        ]
        head = axiom.rule.head
        if isinstance(head, ClassAtom):
            head = ClassAtom(mapping.get(head.class_name, head.class_name), head.arg)
        return AnnotatedSwrlRule(Rule(body, head), axiom.annotations)
    raise TypeError(f"not an axiom: {axiom!r}")


def swap_class_names(result: Success, a: str, b: str) -> Success:
    """The same conversion result with class names a and b exchanged
    everywhere (axioms and fresh-role source expressions)."""
    mapping = {a: b, b: a}
    return Success(
        tuple(rename_classes_in_axiom(ax, mapping) for ax in result.axioms),
        tuple(
            (name, rename_classes_in_expression(src, mapping))
            for name, src in result.fresh_roles
        ),
        result.warnings,
    )


def class_name_pairs(result: Success) -> list[tuple[str, str]]:
    """All unordered pairs of distinct class names occurring in the axioms."""
    names: set[str] = set()
    for axiom in result.axioms:
        if isinstance(axiom, SubClassOf):
            names.update(expression_class_names(axiom.sub))
            names.update(expression_class_names(axiom.sup))
    return list(itertools.combinations(sorted(names), 2))


def effective_mutants(result: Success) -> list[tuple[tuple[str, str], Success]]:
    """Mutants that actually change the axiom set (canonically); swaps that
    produce a structurally identical set are not mutations."""
    original = {canonicalize_axiom(a) for a in result.axioms}
    out = []
    for a, b in class_name_pairs(result):
        mutant = swap_class_names(result, a, b)
        if {canonicalize_axiom(x) for x in mutant.axioms} != original:
            out.append(((a, b), mutant))
    return out

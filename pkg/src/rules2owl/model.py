"""Shared domain model: rules, class/role expressions, axioms, signatures.

All types are immutable values (frozen dataclasses), safe to share across
threads. Structural equality is the only equality; ``canonicalize`` puts
class expressions into the fixed canonical form used for golden output and
axiom deduplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union

# Reserved names with built-in semantics (never part of a Signature).
TOP_CLASS_NAME = "owl:Thing"
UNIVERSAL_PROPERTY_NAME = "owl:topObjectProperty"
NS_ANNOTATION_PROPERTY = "rowl:nominalSchemaVariables"

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_ENTITY_RE = re.compile(r"(?:[A-Za-z_][A-Za-z0-9_]*:)?[A-Za-z_][A-Za-z0-9_]*\Z")


def is_variable_name(name: str) -> bool:
    return bool(_IDENT_RE.match(name))


def is_entity_name(name: str) -> bool:
    """Plain identifier with an optional single ``prefix:`` qualifier."""
    return bool(_ENTITY_RE.match(name))


# ---------------------------------------------------------------------------
# Rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Variable:
    """A rule variable; the name is stored without the ``?`` prefix."""

    name: str

    def __post_init__(self) -> None:
        if not is_variable_name(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")

    def __str__(self) -> str:
        return f"?{self.name}"


Term = Variable


@dataclass(frozen=True, slots=True)
class ClassAtom:
    """Unary atom ``C(t)``."""

    class_name: str
    arg: Variable

    def __post_init__(self) -> None:
        if not is_entity_name(self.class_name):
            raise ValueError(f"invalid class name: {self.class_name!r}")

    def __str__(self) -> str:
        return f"{self.class_name}({self.arg})"


@dataclass(frozen=True, slots=True)
class PropertyAtom:
    """Binary atom ``R(t, u)`` over an object property."""

    property_name: str
    arg1: Variable
    arg2: Variable

    def __post_init__(self) -> None:
        if not is_entity_name(self.property_name):
            raise ValueError(f"invalid property name: {self.property_name!r}")

    def __str__(self) -> str:
        return f"{self.property_name}({self.arg1}, {self.arg2})"


Atom = Union[ClassAtom, PropertyAtom]


def atom_variables(atom: Atom) -> tuple[Variable, ...]:
    if isinstance(atom, ClassAtom):
        return (atom.arg,)
    return (atom.arg1, atom.arg2)


@dataclass(frozen=True)
class Rule:
    """A safe Horn-style rule: conjunctive body, single head atom.

    Construction deduplicates body atoms (first occurrence wins) and rejects
    unsafe rules (a head variable missing from the body).
    """

    body: tuple[Atom, ...]
    head: Atom

    def __init__(self, body: Iterable[Atom], head: Atom) -> None:
        deduped: list[Atom] = []
        seen: set[Atom] = set()
        for atom in body:
            if atom not in seen:
                seen.add(atom)
                deduped.append(atom)
        if not deduped:
            raise ValueError("rule body must contain at least one atom")
        body_vars = {v.name for a in deduped for v in atom_variables(a)}
        missing = [v.name for v in atom_variables(head) if v.name not in body_vars]
        if missing:
            raise ValueError(
                f"unsafe rule: head variable(s) {', '.join(sorted(set(missing)))} "
                "do not occur in the body"
            )
        object.__setattr__(self, "body", tuple(deduped))
        object.__setattr__(self, "head", head)

    def body_variables(self) -> set[str]:
        return {v.name for a in self.body for v in atom_variables(a)}

    def head_variables(self) -> set[str]:
        return {v.name for v in atom_variables(self.head)}

    def class_names(self) -> set[str]:
        """Class names used by the rule, reserved names excluded."""
        names = {
            a.class_name
            for a in (*self.body, self.head)
            if isinstance(a, ClassAtom) and a.class_name != TOP_CLASS_NAME
        }
        return names

    def property_names(self) -> set[str]:
        names = {
            a.property_name
            for a in (*self.body, self.head)
            if isinstance(a, PropertyAtom)
            and a.property_name != UNIVERSAL_PROPERTY_NAME
        }
        return names


# ---------------------------------------------------------------------------
# Role expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NamedRole:
    name: str

    def __post_init__(self) -> None:
        if not is_entity_name(self.name):
            raise ValueError(f"invalid role name: {self.name!r}")


@dataclass(frozen=True, slots=True)
class InverseRole:
    """Inverse of a named role; never nests (see :func:`inverse_role`)."""

    of: NamedRole


@dataclass(frozen=True, slots=True)
class UniversalRole:
    """The universal property, rendered as ``owl:topObjectProperty``."""


UNIVERSAL = UniversalRole()

RoleExpression = Union[NamedRole, InverseRole, UniversalRole]


def inverse_role(role: RoleExpression) -> RoleExpression:
    """Inverse with normalization: inverse-of-inverse collapses, U is its own."""
    if isinstance(role, NamedRole):
        return InverseRole(role)
    if isinstance(role, InverseRole):
        return role.of
    return UNIVERSAL


def role_text(role: RoleExpression) -> str:
    """Manchester-style rendering of a role expression."""
    if isinstance(role, NamedRole):
        return role.name
    if isinstance(role, InverseRole):
        return f"inverse {role.of.name}"
    return UNIVERSAL_PROPERTY_NAME


# ---------------------------------------------------------------------------
# Class expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NamedClass:
    name: str

    def __post_init__(self) -> None:
        if not is_entity_name(self.name):
            raise ValueError(f"invalid class name: {self.name!r}")


@dataclass(frozen=True, slots=True)
class TopClass:
    """owl:Thing."""


TOP = TopClass()


@dataclass(frozen=True, slots=True)
class Intersection:
    operands: tuple[ClassExpression, ...]


@dataclass(frozen=True, slots=True)
class SomeValuesFrom:
    role: RoleExpression
    filler: ClassExpression


@dataclass(frozen=True, slots=True)
class HasSelf:
    role: NamedRole


@dataclass(frozen=True, slots=True)
class NominalPlaceholder:
    """Nominal-schema placeholder ``{?v}``; display-only, never persisted."""

    variable: str


ClassExpression = Union[
    NamedClass, TopClass, Intersection, SomeValuesFrom, HasSelf, NominalPlaceholder
]

_ATOMIC_EXPRS = (NamedClass, TopClass, NominalPlaceholder)


def class_expression_text(expr: ClassExpression) -> str:
    """Manchester-style rendering; doubles as the canonical sort key."""
    if isinstance(expr, NamedClass):
        return expr.name
    if isinstance(expr, TopClass):
        return TOP_CLASS_NAME
    if isinstance(expr, NominalPlaceholder):
        return "{?" + expr.variable + "}"
    if isinstance(expr, HasSelf):
        return f"{expr.role.name} Self"
    if isinstance(expr, SomeValuesFrom):
        return f"{role_text(expr.role)} some {_parenthesized(expr.filler)}"
    if isinstance(expr, Intersection):
        return " and ".join(_parenthesized(op) for op in expr.operands)
    raise TypeError(f"not a class expression: {expr!r}")


def _parenthesized(expr: ClassExpression) -> str:
    text = class_expression_text(expr)
    return text if isinstance(expr, _ATOMIC_EXPRS) else f"({text})"


def canonicalize(expr: ClassExpression) -> ClassExpression:
    """Canonical form: intersections flattened, Top-absorbed, deduplicated and
    sorted by rendered text; idempotent."""
    if isinstance(expr, SomeValuesFrom):
        return SomeValuesFrom(expr.role, canonicalize(expr.filler))
    if not isinstance(expr, Intersection):
        return expr
    flat: list[ClassExpression] = []
    for op in expr.operands:
        op = canonicalize(op)
        if isinstance(op, TopClass):
            continue
        if isinstance(op, Intersection):
            flat.extend(op.operands)
        else:
            flat.append(op)
    unique = sorted(set(flat), key=class_expression_text)
    if not unique:
        return TOP
    if len(unique) == 1:
        return unique[0]
    return Intersection(tuple(unique))


def intersection_of(operands: Iterable[ClassExpression]) -> ClassExpression:
    """Canonical conjunction; Top for an empty operand list."""
    ops = tuple(operands)
    if not ops:
        return TOP
    if len(ops) == 1:
        return canonicalize(ops[0])
    return canonicalize(Intersection(ops))


# ---------------------------------------------------------------------------
# Axioms
# ---------------------------------------------------------------------------


class EntityKind(Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"


@dataclass(frozen=True, slots=True)
class SubClassOf:
    sub: ClassExpression
    sup: ClassExpression


@dataclass(frozen=True, slots=True)
class SubObjectPropertyOf:
    """Role chain inclusion; a length-1 chain is a plain subproperty."""

    chain: tuple[RoleExpression, ...]
    sup: NamedRole

    def __post_init__(self) -> None:
        if not self.chain:
            raise ValueError("property chain must not be empty")


@dataclass(frozen=True, slots=True)
class Declaration:
    kind: EntityKind
    name: str


@dataclass(frozen=True)
class AnnotatedSwrlRule:
    """A rule kept as-is, with annotations (e.g. chosen nominal-schema vars)."""

    rule: Rule
    annotations: tuple[tuple[str, str], ...] = ()


Axiom = Union[SubClassOf, SubObjectPropertyOf, Declaration, AnnotatedSwrlRule]


def canonicalize_axiom(axiom: Axiom) -> Axiom:
    if isinstance(axiom, SubClassOf):
        return SubClassOf(canonicalize(axiom.sub), canonicalize(axiom.sup))
    return axiom


def _role_names(role: RoleExpression) -> Iterator[str]:
    if isinstance(role, NamedRole):
        yield role.name
    elif isinstance(role, InverseRole):
        yield role.of.name


def expression_class_names(expr: ClassExpression) -> Iterator[str]:
    if isinstance(expr, NamedClass):
        yield expr.name
    elif isinstance(expr, Intersection):
        for op in expr.operands:
            yield from expression_class_names(op)
    elif isinstance(expr, SomeValuesFrom):
        yield from expression_class_names(expr.filler)


def expression_role_names(expr: ClassExpression) -> Iterator[str]:
    if isinstance(expr, Intersection):
        for op in expr.operands:
            yield from expression_role_names(op)
    elif isinstance(expr, SomeValuesFrom):
        yield from _role_names(expr.role)
        yield from expression_role_names(expr.filler)
    elif isinstance(expr, HasSelf):
        yield from _role_names(expr.role)


def axiom_entity_names(axiom: Axiom) -> tuple[set[str], set[str]]:
    """(class names, object property names) used by an axiom, reserved excluded."""
    classes: set[str] = set()
    properties: set[str] = set()
    if isinstance(axiom, SubClassOf):
        for expr in (axiom.sub, axiom.sup):
            classes.update(expression_class_names(expr))
            properties.update(expression_role_names(expr))
    elif isinstance(axiom, SubObjectPropertyOf):
        for role in axiom.chain:
            properties.update(_role_names(role))
        properties.update(_role_names(axiom.sup))
    elif isinstance(axiom, Declaration):
        target = classes if axiom.kind is EntityKind.CLASS else properties
        target.add(axiom.name)
    elif isinstance(axiom, AnnotatedSwrlRule):
        classes.update(axiom.rule.class_names())
        properties.update(axiom.rule.property_names())
    return classes, properties


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """Known class and object-property names.

    The two sets may overlap (same name declared as both); ``overlap`` exposes
    the offending names as a warning flag for callers that care.
    """

    classes: frozenset[str] = frozenset()
    object_properties: frozenset[str] = frozenset()

    @property
    def overlap(self) -> frozenset[str]:
        return self.classes & self.object_properties

    def all_names(self) -> frozenset[str]:
        return self.classes | self.object_properties

    def union(self, other: Signature) -> Signature:
        return Signature(
            self.classes | other.classes,
            self.object_properties | other.object_properties,
        )


def rule_signature(rule: Rule) -> Signature:
    return Signature(
        frozenset(rule.class_names()), frozenset(rule.property_names())
    )

"""Ontology document I/O.

Persistence format is a fixed OWL 2 functional-style-syntax subset
(declarations, SubClassOf, SubObjectPropertyOf incl. chains, the class
constructors ObjectIntersectionOf / ObjectSomeValuesFrom / ObjectHasSelf,
ObjectInverseOf, the reserved names owl:Thing and owl:topObjectProperty,
and DLSafeRule with an optional nominal-schema annotation). Manchester
syntax is display-only.

Documents are immutable; ``commit`` returns a new document and never
removes or reorders existing axioms.
"""

from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

from .model import (
    AnnotatedSwrlRule,
    Atom,
    Axiom,
    ClassAtom,
    ClassExpression,
    Declaration,
    EntityKind,
    HasSelf,
    Intersection,
    InverseRole,
    NamedClass,
    NamedRole,
    NominalPlaceholder,
    PropertyAtom,
    RoleExpression,
    Rule,
    Signature,
    SomeValuesFrom,
    SubClassOf,
    SubObjectPropertyOf,
    TOP,
    TOP_CLASS_NAME,
    TopClass,
    UNIVERSAL,
    UNIVERSAL_PROPERTY_NAME,
    UniversalRole,
    Variable,
    axiom_entity_names,
    canonicalize_axiom,
    class_expression_text,
    role_text,
)
from .rule_parser import ErrorKind, ParseError, render_rule

OWL_PREFIX_IRI = "http://www.w3.org/2002/07/owl#"
ROWL_PREFIX_IRI = "http://example.org/rowl#"
DEFAULT_BASE_IRI = "http://example.org/ontology#"

_FIXED_PREFIXES = {"owl": OWL_PREFIX_IRI, "rowl": ROWL_PREFIX_IRI}


# ---------------------------------------------------------------------------
# Manchester rendering (display only)
# ---------------------------------------------------------------------------


def render_manchester(axiom: Axiom) -> str:
    if isinstance(axiom, SubClassOf):
        return (
            f"{class_expression_text(axiom.sub)} SubClassOf "
            f"{class_expression_text(axiom.sup)}"
        )
    if isinstance(axiom, SubObjectPropertyOf):
        if len(axiom.chain) == 1:
            left = role_text(axiom.chain[0])
        else:
            left = " o ".join(role_text(r) for r in axiom.chain)
        return f"{left} SubPropertyOf {axiom.sup.name}"
    if isinstance(axiom, Declaration):
        return f"{axiom.kind.value}: {axiom.name}"
    if isinstance(axiom, AnnotatedSwrlRule):
        text = f"Rule: {render_rule(axiom.rule)}"
        if axiom.annotations:
            notes = ", ".join(f'{p} "{v}"' for p, v in axiom.annotations)
            return f"{text}  [{notes}]"
        return text
    raise TypeError(f"not an axiom: {axiom!r}")


# ---------------------------------------------------------------------------
# Functional-style rendering
# ---------------------------------------------------------------------------


def _name_functional(name: str) -> str:
    return name if ":" in name else f":{name}"


def _role_functional(role: RoleExpression) -> str:
    if isinstance(role, NamedRole):
        return _name_functional(role.name)
    if isinstance(role, InverseRole):
        return f"ObjectInverseOf({_name_functional(role.of.name)})"
    if isinstance(role, UniversalRole):
        return UNIVERSAL_PROPERTY_NAME
    raise TypeError(f"not a role expression: {role!r}")


def _class_functional(expr: ClassExpression) -> str:
    if isinstance(expr, NamedClass):
        return _name_functional(expr.name)
    if isinstance(expr, TopClass):
        return TOP_CLASS_NAME
    if isinstance(expr, Intersection):
        return "ObjectIntersectionOf(" + " ".join(
            _class_functional(op) for op in expr.operands
        ) + ")"
    if isinstance(expr, SomeValuesFrom):
        return (
            f"ObjectSomeValuesFrom({_role_functional(expr.role)} "
            f"{_class_functional(expr.filler)})"
        )
    if isinstance(expr, HasSelf):
        return f"ObjectHasSelf({_name_functional(expr.role.name)})"
    if isinstance(expr, NominalPlaceholder):
        raise ValueError(
            "nominal-schema placeholders are display-only and cannot be "
            "serialized"
        )
    raise TypeError(f"not a class expression: {expr!r}")


def _atom_functional(atom: Atom) -> str:
    if isinstance(atom, ClassAtom):
        name = (
            TOP_CLASS_NAME
            if atom.class_name == TOP_CLASS_NAME
            else _name_functional(atom.class_name)
        )
        return f"ClassAtom({name} Variable({atom.arg.name}))"
    name = (
        UNIVERSAL_PROPERTY_NAME
        if atom.property_name == UNIVERSAL_PROPERTY_NAME
        else _name_functional(atom.property_name)
    )
    return (
        f"ObjectPropertyAtom({name} Variable({atom.arg1.name}) "
        f"Variable({atom.arg2.name}))"
    )


def _escape_string(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


def render_functional(axiom: Axiom) -> str:
    if isinstance(axiom, SubClassOf):
        return (
            f"SubClassOf({_class_functional(axiom.sub)} "
            f"{_class_functional(axiom.sup)})"
        )
    if isinstance(axiom, SubObjectPropertyOf):
        sup = _name_functional(axiom.sup.name)
        if len(axiom.chain) == 1:
            return f"SubObjectPropertyOf({_role_functional(axiom.chain[0])} {sup})"
        chain = " ".join(_role_functional(r) for r in axiom.chain)
        return f"SubObjectPropertyOf(ObjectPropertyChain({chain}) {sup})"
    if isinstance(axiom, Declaration):
        return f"Declaration({axiom.kind.value}({_name_functional(axiom.name)}))"
    if isinstance(axiom, AnnotatedSwrlRule):
        parts = [
            f'Annotation({prop} "{_escape_string(value)}")'
            for prop, value in axiom.annotations
        ]
        parts.append(
            "Body(" + " ".join(_atom_functional(a) for a in axiom.rule.body) + ")"
        )
        parts.append(f"Head({_atom_functional(axiom.rule.head)})")
        return "DLSafeRule(" + " ".join(parts) + ")"
    raise TypeError(f"not an axiom: {axiom!r}")


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OntologyDocument:
    """An ontology: ordered prefixes, optional IRI, ordered axioms.

    The signature is derived: declared names plus names used in axioms.
    """

    prefixes: tuple[tuple[str, str], ...]
    ontology_iri: str | None = None
    axioms: tuple[Axiom, ...] = ()

    def signature(self) -> Signature:
        classes: set[str] = set()
        properties: set[str] = set()
        for axiom in self.axioms:
            c, p = axiom_entity_names(axiom)
            classes |= c
            properties |= p
        return Signature(frozenset(classes), frozenset(properties))


def default_prefixes(base_iri: str = DEFAULT_BASE_IRI) -> tuple[tuple[str, str], ...]:
    return (("", base_iri), ("owl", OWL_PREFIX_IRI), ("rowl", ROWL_PREFIX_IRI))


def empty_document(
    base_iri: str = DEFAULT_BASE_IRI, ontology_iri: str | None = None
) -> OntologyDocument:
    return OntologyDocument(default_prefixes(base_iri), ontology_iri)


def serialize_ontology(doc: OntologyDocument) -> str:
    lines = [f"Prefix({p}:=<{iri}>)" for p, iri in doc.prefixes]
    header = "Ontology("
    if doc.ontology_iri is not None:
        header += f"<{doc.ontology_iri}>"
    lines.append(header)
    lines.extend(f"  {render_functional(a)}" for a in doc.axioms)
    lines.append(")")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Functional-style parsing
# ---------------------------------------------------------------------------

_ONTO_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<PREFIXDECL>(?:[A-Za-z_][A-Za-z0-9_]*)?:=)
  | (?P<NAME>(?:[A-Za-z_][A-Za-z0-9_]*)?:[A-Za-z_][A-Za-z0-9_]*
        |[A-Za-z_][A-Za-z0-9_]*)
  | (?P<IRI><[^>\s]*>)
  | (?P<STRING>"(?:[^"\\]|\\.)*")
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize_functional(text: str) -> list[_Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _ONTO_TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(
                ErrorKind.SYNTAX,
                line,
                pos - line_start + 1,
                f"unexpected character {text[pos]!r}",
            )
        kind = match.lastgroup or ""
        value = match.group()
        if kind != "WS":
            tokens.append(_Token(kind, value, line, pos - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = match.end()
    tokens.append(_Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _OntologyParser:
    def __init__(self, text: str):
        self.tokens = _tokenize_functional(text)
        self.index = 0
        self.prefixes: list[tuple[str, str]] = []

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.current
        if token.kind != "EOF":
            self.index += 1
        return token

    def fail(self, message: str, token: _Token | None = None) -> None:
        token = token or self.current
        raise ParseError(ErrorKind.SYNTAX, token.line, token.column, message)

    def expect(self, kind: str, what: str) -> _Token:
        if self.current.kind != kind:
            self.fail(f"expected {what}, found {self.current.text or 'end of input'!r}")
        return self.advance()

    def expect_keyword(self, keyword: str) -> _Token:
        token = self.current
        if token.kind != "NAME" or token.text != keyword:
            self.fail(f"expected {keyword!r}, found {token.text or 'end of input'!r}")
        return self.advance()

    def at_keyword(self, keyword: str) -> bool:
        return self.current.kind == "NAME" and self.current.text == keyword

    def parse_document(self) -> OntologyDocument:
        while self.at_keyword("Prefix"):
            self.parse_prefix()
        self.expect_keyword("Ontology")
        self.expect("LPAREN", "'('")
        ontology_iri = None
        if self.current.kind == "IRI":
            ontology_iri = self.advance().text[1:-1]
        axioms: list[Axiom] = []
        while not self.current.kind == "RPAREN":
            if self.current.kind == "EOF":
                self.fail("unterminated Ontology(...)")
            axioms.extend(self.parse_axiom())
        self.advance()
        if self.current.kind != "EOF":
            self.fail(f"unexpected trailing input {self.current.text!r}")
        return OntologyDocument(tuple(self.prefixes), ontology_iri, tuple(axioms))

    def parse_prefix(self) -> None:
        self.expect_keyword("Prefix")
        self.expect("LPAREN", "'('")
        decl = self.expect("PREFIXDECL", "a prefix declaration like 'p:='")
        prefix = decl.text[:-2]
        iri_token = self.expect("IRI", "an IRI in angle brackets")
        iri = iri_token.text[1:-1]
        fixed = _FIXED_PREFIXES.get(prefix)
        if fixed is not None and iri != fixed:
            self.fail(
                f"reserved prefix {prefix}: must map to <{fixed}>", iri_token
            )
        self.expect("RPAREN", "')'")
        self.prefixes.append((prefix, iri))

    def parse_axiom(self) -> list[Axiom]:
        token = self.current
        if token.kind != "NAME":
            self.fail(f"expected an axiom, found {token.text or 'end of input'!r}")
        keyword = token.text
        if keyword == "Declaration":
            return [self.parse_declaration()]
        if keyword == "SubClassOf":
            self.advance()
            self.expect("LPAREN", "'('")
            sub = self.parse_class_expression()
            sup = self.parse_class_expression()
            self.expect("RPAREN", "')'")
            return [SubClassOf(sub, sup)]
        if keyword == "SubObjectPropertyOf":
            return [self.parse_sub_object_property()]
        if keyword == "DLSafeRule":
            return self.parse_dl_safe_rule()
        self.fail(f"unsupported axiom kind {keyword!r}")
        raise AssertionError("unreachable")

    def parse_declaration(self) -> Declaration:
        self.expect_keyword("Declaration")
        self.expect("LPAREN", "'('")
        kind_token = self.expect("NAME", "'Class' or 'ObjectProperty'")
        if kind_token.text == "Class":
            kind = EntityKind.CLASS
        elif kind_token.text == "ObjectProperty":
            kind = EntityKind.OBJECT_PROPERTY
        else:
            self.fail(
                f"unsupported declaration kind {kind_token.text!r}", kind_token
            )
        self.expect("LPAREN", "'('")
        name = self.parse_entity_name()
        self.expect("RPAREN", "')'")
        self.expect("RPAREN", "')'")
        return Declaration(kind, name)

    def parse_sub_object_property(self) -> SubObjectPropertyOf:
        self.expect_keyword("SubObjectPropertyOf")
        self.expect("LPAREN", "'('")
        chain: list[RoleExpression]
        if self.at_keyword("ObjectPropertyChain"):
            self.advance()
            self.expect("LPAREN", "'('")
            chain = []
            while self.current.kind != "RPAREN":
                chain.append(self.parse_role_expression())
            if not chain:
                self.fail("ObjectPropertyChain must not be empty")
            self.advance()
        else:
            chain = [self.parse_role_expression()]
        sup_token = self.current
        sup = self.parse_role_expression()
        if not isinstance(sup, NamedRole):
            self.fail(
                "the superproperty of SubObjectPropertyOf must be a named "
                "object property",
                sup_token,
            )
        self.expect("RPAREN", "')'")
        return SubObjectPropertyOf(tuple(chain), sup)

    def parse_dl_safe_rule(self) -> list[Axiom]:
        self.expect_keyword("DLSafeRule")
        self.expect("LPAREN", "'('")
        annotations: list[tuple[str, str]] = []
        while self.at_keyword("Annotation"):
            self.advance()
            self.expect("LPAREN", "'('")
            prop_token = self.expect("NAME", "an annotation property")
            value_token = self.expect("STRING", "a string literal")
            value = value_token.text[1:-1].replace('\\"', '"').replace("\\\\", "\\")
            self.expect("RPAREN", "')'")
            annotations.append((prop_token.text, value))
        self.expect_keyword("Body")
        self.expect("LPAREN", "'('")
        body: list[Atom] = []
        while self.current.kind != "RPAREN":
            body.append(self.parse_rule_atom())
        self.advance()
        if not body:
            self.fail("rule body must contain at least one atom")
        self.expect_keyword("Head")
        self.expect("LPAREN", "'('")
        heads: list[Atom] = []
        while self.current.kind != "RPAREN":
            heads.append(self.parse_rule_atom())
        self.advance()
        if not heads:
            self.fail("rule head must contain at least one atom")
        self.expect("RPAREN", "')'")
        try:
            rules = [Rule(body, head) for head in heads]
        except ValueError as exc:
            self.fail(str(exc))
            raise AssertionError("unreachable")
        return [AnnotatedSwrlRule(r, tuple(annotations)) for r in rules]

    def parse_rule_atom(self) -> Atom:
        kind_token = self.expect("NAME", "'ClassAtom' or 'ObjectPropertyAtom'")
        self.expect("LPAREN", "'('")
        if kind_token.text == "ClassAtom":
            name = self.parse_entity_name(allow_reserved=TOP_CLASS_NAME)
            arg = self.parse_variable()
            self.expect("RPAREN", "')'")
            return ClassAtom(name, arg)
        if kind_token.text == "ObjectPropertyAtom":
            name = self.parse_entity_name(allow_reserved=UNIVERSAL_PROPERTY_NAME)
            arg1 = self.parse_variable()
            arg2 = self.parse_variable()
            self.expect("RPAREN", "')'")
            return PropertyAtom(name, arg1, arg2)
        self.fail(f"unsupported rule atom kind {kind_token.text!r}", kind_token)
        raise AssertionError("unreachable")

    def parse_variable(self) -> Variable:
        self.expect_keyword("Variable")
        self.expect("LPAREN", "'('")
        name = self.expect("NAME", "a variable name")
        if ":" in name.text:
            self.fail("variable names must be plain identifiers", name)
        self.expect("RPAREN", "')'")
        return Variable(name.text)

    def parse_entity_name(self, allow_reserved: str | None = None) -> str:
        token = self.expect("NAME", "an entity name")
        text = token.text
        if text == allow_reserved:
            return text
        if ":" not in text:
            self.fail(
                f"bare name {text!r}: entity names must be prefixed "
                "(e.g. :Mouse)",
                token,
            )
        prefix, _, _ = text.partition(":")
        if prefix == "":
            return text[1:]
        if text in (TOP_CLASS_NAME, UNIVERSAL_PROPERTY_NAME):
            self.fail(f"{text} is not allowed in this position", token)
        return text

    def parse_class_expression(self) -> ClassExpression:
        token = self.current
        if token.kind != "NAME":
            self.fail("expected a class expression")
        if token.text == TOP_CLASS_NAME:
            self.advance()
            return TOP
        if token.text == "ObjectIntersectionOf":
            self.advance()
            self.expect("LPAREN", "'('")
            operands = []
            while self.current.kind != "RPAREN":
                operands.append(self.parse_class_expression())
            self.advance()
            if len(operands) < 2:
                self.fail("ObjectIntersectionOf needs at least two operands", token)
            return Intersection(tuple(operands))
        if token.text == "ObjectSomeValuesFrom":
            self.advance()
            self.expect("LPAREN", "'('")
            role = self.parse_role_expression()
            filler = self.parse_class_expression()
            self.expect("RPAREN", "')'")
            return SomeValuesFrom(role, filler)
        if token.text == "ObjectHasSelf":
            self.advance()
            self.expect("LPAREN", "'('")
            role = self.parse_role_expression()
            self.expect("RPAREN", "')'")
            if not isinstance(role, NamedRole):
                self.fail("ObjectHasSelf requires a named property", token)
            return HasSelf(role)
        name = self.parse_entity_name()
        return NamedClass(name)

    def parse_role_expression(self) -> RoleExpression:
        token = self.current
        if token.kind != "NAME":
            self.fail("expected an object property expression")
        if token.text == UNIVERSAL_PROPERTY_NAME:
            self.advance()
            return UNIVERSAL
        if token.text == "ObjectInverseOf":
            self.advance()
            self.expect("LPAREN", "'('")
            inner = self.parse_role_expression()
            self.expect("RPAREN", "')'")
            if isinstance(inner, UniversalRole):
                return UNIVERSAL
            if isinstance(inner, InverseRole):
                return inner.of
            return InverseRole(inner)
        name = self.parse_entity_name()
        return NamedRole(name)


def parse_ontology(text: str) -> OntologyDocument:
    """Parse the functional-syntax subset; raises ParseError with position."""
    return _OntologyParser(text).parse_document()


# ---------------------------------------------------------------------------
# Declarations and commits
# ---------------------------------------------------------------------------


def missing_declarations(
    axioms: Sequence[Axiom], sig: Signature
) -> list[Declaration]:
    """Declarations for names used in ``axioms`` but absent from ``sig``;
    classes first, each group sorted."""
    used_classes: set[str] = set()
    used_properties: set[str] = set()
    for axiom in axioms:
        if isinstance(axiom, Declaration):
            continue
        c, p = axiom_entity_names(axiom)
        used_classes |= c
        used_properties |= p
    decls = [
        Declaration(EntityKind.CLASS, n)
        for n in sorted(used_classes - sig.classes)
    ]
    decls += [
        Declaration(EntityKind.OBJECT_PROPERTY, n)
        for n in sorted(used_properties - sig.object_properties)
    ]
    return decls


@dataclass(frozen=True)
class CommitResult:
    document: OntologyDocument
    added: tuple[Axiom, ...]
    skipped: tuple[Axiom, ...]


def commit(
    doc: OntologyDocument, axioms: Iterable[Axiom], declare_missing: bool = False
) -> CommitResult:
    """Append axioms (missing declarations first when requested); duplicates
    of existing axioms (structural equality after canonicalize) are skipped."""
    batch = list(axioms)
    pending: list[Axiom] = []
    if declare_missing:
        pending.extend(missing_declarations(batch, doc.signature()))
    pending.extend(batch)
    existing = {canonicalize_axiom(a) for a in doc.axioms}
    added: list[Axiom] = []
    skipped: list[Axiom] = []
    for axiom in pending:
        key = canonicalize_axiom(axiom)
        if key in existing:
            skipped.append(axiom)
            continue
        existing.add(key)
        added.append(axiom)
    prefixes = doc.prefixes
    if any(isinstance(a, AnnotatedSwrlRule) for a in added) and not any(
        p == "rowl" for p, _ in prefixes
    ):
        prefixes = (*prefixes, ("rowl", ROWL_PREFIX_IRI))
    new_doc = replace(
        doc, prefixes=prefixes, axioms=doc.axioms + tuple(added)
    )
    return CommitResult(new_doc, tuple(added), tuple(skipped))


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def read_document(path: str | Path) -> OntologyDocument:
    return parse_ontology(Path(path).read_text(encoding="utf-8"))


def write_document(doc: OntologyDocument, path: str | Path) -> None:
    """Atomic write: serialize to a sibling temp file, fsync, then rename."""
    path = Path(path)
    text = serialize_ontology(doc)
    fd, tmp_name = tempfile.mkstemp(
        prefix=f".{path.name}.", suffix=".tmp", dir=path.parent
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except FileNotFoundError:
            pass
        raise

"""Parser and printer for the textual rule syntax.

Grammar (whitespace insignificant)::

    rule  ::= body '->' head
    body  ::= atom ('^' atom)*
    head  ::= atom ('^' atom)*          # conjunctive heads split into rules
    atom  ::= NAME '(' term (',' term)? ')'
    term  ::= '?' IDENT
    NAME  ::= IDENT (':' IDENT)?       # optional prefix qualifier
    IDENT ::= [A-Za-z_][A-Za-z0-9_]*

Only the ASCII ``->`` and ``^`` connectives are accepted. Errors carry a
1-based (line, column) position into the source text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .model import (
    Atom,
    ClassAtom,
    PropertyAtom,
    Rule,
    UNIVERSAL_PROPERTY_NAME,
    Variable,
    atom_variables,
)


class ErrorKind(Enum):
    SYNTAX = "Syntax"
    UNSAFE_RULE = "UnsafeRule"
    UNSUPPORTED_TERM = "UnsupportedTerm"
    DUPLICATE_ATOM_WARNING_SUPPRESSED = "DuplicateAtomWarningSuppressed"


class ParseError(Exception):
    """Parse failure with a position inside the input text."""

    def __init__(self, kind: ErrorKind, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.kind = kind
        self.line = line
        self.column = column
        self.message = message

    @property
    def position(self) -> tuple[int, int]:
        return (self.line, self.column)


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME, VAR, LPAREN, RPAREN, COMMA, CARET, ARROW, EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_]*(?::[A-Za-z_][A-Za-z0-9_]*)?)
  | (?P<VAR>\?[A-Za-z_][A-Za-z0-9_]*)
  | (?P<ARROW>->)
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
  | (?P<COMMA>,)
  | (?P<CARET>\^)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> Iterator[_Token]:
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
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
            yield _Token(kind, value, line, pos - line_start + 1)
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rindex("\n") + 1
        pos = match.end()
    yield _Token("EOF", "", line, pos - line_start + 1)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.current
        if token.kind != "EOF":
            self.index += 1
        return token

    def expect(self, kind: str, what: str) -> _Token:
        token = self.current
        if token.kind != kind:
            self.fail(f"expected {what}, found {token.text or 'end of input'!r}")
        return self.advance()

    def fail(self, message: str, token: _Token | None = None,
             kind: ErrorKind = ErrorKind.SYNTAX) -> None:
        token = token or self.current
        raise ParseError(kind, token.line, token.column, message)

    def parse_atoms(self) -> list[tuple[Atom, _Token]]:
        atoms = [self.parse_atom()]
        while self.current.kind == "CARET":
            self.advance()
            atoms.append(self.parse_atom())
        return atoms

    def parse_atom(self) -> tuple[Atom, _Token]:
        name_token = self.expect("NAME", "a class or property name")
        self.expect("LPAREN", "'('")
        args = [self.parse_term()]
        if self.current.kind == "COMMA":
            self.advance()
            args.append(self.parse_term())
        self.expect("RPAREN", "')'")
        if len(args) == 1:
            atom: Atom = ClassAtom(name_token.text, args[0])
        else:
            atom = PropertyAtom(name_token.text, args[0], args[1])
        return atom, name_token

    def parse_term(self) -> Variable:
        token = self.current
        if token.kind == "VAR":
            self.advance()
            return Variable(token.text[1:])
        if token.kind == "NAME":
            self.fail(
                f"unsupported term {token.text!r}: arguments must be "
                "variables (e.g. ?x); individuals are not supported",
                token,
                ErrorKind.UNSUPPORTED_TERM,
            )
        self.fail(f"expected a term, found {token.text or 'end of input'!r}")
        raise AssertionError("unreachable")


def parse_rules(text: str) -> list[Rule]:
    """Parse a rule, splitting a conjunctive head into one Rule per head atom."""
    parser = _Parser(text)
    body = parser.parse_atoms()
    parser.expect("ARROW", "'->'")
    head = parser.parse_atoms()
    end = parser.current
    if end.kind != "EOF":
        parser.fail(f"unexpected trailing input {end.text!r}", end)

    arities: dict[str, tuple[int, _Token]] = {}
    for atom, token in (*body, *head):
        name = token.text
        arity = 1 if isinstance(atom, ClassAtom) else 2
        prior = arities.get(name)
        if prior is not None and prior[0] != arity:
            parser.fail(
                f"{name!r} is used with both {prior[0]} and {arity} arguments",
                token,
            )
        arities[name] = (arity, token)

    body_atoms = [atom for atom, _ in body]
    body_vars = {v.name for a in body_atoms for v in atom_variables(a)}
    rules = []
    for head_atom, head_token in head:
        if (
            isinstance(head_atom, PropertyAtom)
            and head_atom.property_name == UNIVERSAL_PROPERTY_NAME
        ):
            parser.fail(
                f"{UNIVERSAL_PROPERTY_NAME} cannot be used as a rule head",
                head_token,
            )
        unbound = sorted(
            {v.name for v in atom_variables(head_atom)} - body_vars
        )
        if unbound:
            parser.fail(
                "unsafe rule: head variable(s) "
                + ", ".join(f"?{v}" for v in unbound)
                + " do not occur in the body",
                head_token,
                ErrorKind.UNSAFE_RULE,
            )
        rules.append(Rule(body_atoms, head_atom))
    return rules


def parse_rule(text: str) -> Rule:
    """Parse text that must denote exactly one rule (single head atom)."""
    rules = parse_rules(text)
    if len(rules) != 1:
        raise ValueError(
            f"expected a single-headed rule, got {len(rules)} head atoms; "
            "use parse_rules for conjunctive heads"
        )
    return rules[0]


def _atom_text(atom: Atom) -> str:
    if isinstance(atom, ClassAtom):
        return f"{atom.class_name}(?{atom.arg.name})"
    return f"{atom.property_name}(?{atom.arg1.name}, ?{atom.arg2.name})"


def render_rule(rule: Rule) -> str:
    """Inverse of parse_rule: parse_rule(render_rule(r)) == r."""
    body = " ^ ".join(_atom_text(a) for a in rule.body)
    return f"{body} -> {_atom_text(rule.head)}"

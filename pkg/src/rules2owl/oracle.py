"""Finite-model equivalence oracle.

Checks that a rule and the axioms generated from it agree on every small
interpretation of the rule's original signature, extending each
interpretation with the canonical fresh-role diagonal (fresh role R over
source class E is interpreted as {(d, d) : d in E}).

``rule_holds`` / ``axiom_holds`` / ``canonical_extension`` are the scalar
reference semantics. ``check_equivalence`` evaluates the same semantics in
bulk over a bit-indexed interpretation space (numpy), re-verifying any
counterexample against the scalar path before reporting it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterator, Mapping, Sequence

import numpy as np

from .model import (
    AnnotatedSwrlRule,
    Atom,
    Axiom,
    ClassAtom,
    ClassExpression,
    Declaration,
    HasSelf,
    Intersection,
    InverseRole,
    NamedClass,
    NamedRole,
    NominalPlaceholder,
    PropertyAtom,
    RoleExpression,
    Rule,
    SomeValuesFrom,
    SubClassOf,
    SubObjectPropertyOf,
    TopClass,
    TOP_CLASS_NAME,
    UNIVERSAL_PROPERTY_NAME,
    UniversalRole,
)

if TYPE_CHECKING:  # pragma: no cover
    from .transformer import Success

DEFAULT_SEED = 0xDA5E
DEFAULT_SAMPLE_SIZE = 100_000
EXHAUSTIVE_BIT_BUDGET = 20

Pair = tuple[int, int]


@dataclass(frozen=True)
class Interpretation:
    """A finite first-order interpretation over named classes and roles.

    The universal property and owl:Thing are never stored; they always
    denote the full relation / full domain.
    """

    domain_size: int
    class_ext: Mapping[str, frozenset[int]] = field(default_factory=dict)
    role_ext: Mapping[str, frozenset[Pair]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.domain_size < 1:
            raise ValueError("domain size must be >= 1")


# ---------------------------------------------------------------------------
# Scalar semantics
# ---------------------------------------------------------------------------


def eval_role(role: RoleExpression, interp: Interpretation) -> frozenset[Pair]:
    n = interp.domain_size
    if isinstance(role, UniversalRole):
        return frozenset(itertools.product(range(n), repeat=2))
    if isinstance(role, NamedRole):
        if role.name == UNIVERSAL_PROPERTY_NAME:
            return frozenset(itertools.product(range(n), repeat=2))
        return interp.role_ext.get(role.name, frozenset())
    if isinstance(role, InverseRole):
        return frozenset((b, a) for a, b in eval_role(role.of, interp))
    raise TypeError(f"not a role expression: {role!r}")


def eval_class(expr: ClassExpression, interp: Interpretation) -> frozenset[int]:
    n = interp.domain_size
    if isinstance(expr, TopClass):
        return frozenset(range(n))
    if isinstance(expr, NamedClass):
        if expr.name == TOP_CLASS_NAME:
            return frozenset(range(n))
        return interp.class_ext.get(expr.name, frozenset())
    if isinstance(expr, Intersection):
        result = frozenset(range(n))
        for op in expr.operands:
            result &= eval_class(op, interp)
        return result
    if isinstance(expr, SomeValuesFrom):
        pairs = eval_role(expr.role, interp)
        filler = eval_class(expr.filler, interp)
        return frozenset(a for a, b in pairs if b in filler)
    if isinstance(expr, HasSelf):
        pairs = eval_role(expr.role, interp)
        return frozenset(d for d in range(n) if (d, d) in pairs)
    if isinstance(expr, NominalPlaceholder):
        raise TypeError("nominal-schema placeholders have no model semantics")
    raise TypeError(f"not a class expression: {expr!r}")


def _atom_holds(atom: Atom, interp: Interpretation, env: Mapping[str, int]) -> bool:
    if isinstance(atom, ClassAtom):
        if atom.class_name == TOP_CLASS_NAME:
            return True
        return env[atom.arg.name] in interp.class_ext.get(atom.class_name, frozenset())
    if atom.property_name == UNIVERSAL_PROPERTY_NAME:
        return True
    pair = (env[atom.arg1.name], env[atom.arg2.name])
    return pair in interp.role_ext.get(atom.property_name, frozenset())


def rule_holds(interp: Interpretation, rule: Rule) -> bool:
    """First-order truth: every body-satisfying assignment satisfies the head."""
    variables = sorted(rule.body_variables())
    for values in itertools.product(range(interp.domain_size), repeat=len(variables)):
        env = dict(zip(variables, values))
        if all(_atom_holds(a, interp, env) for a in rule.body):
            if not _atom_holds(rule.head, interp, env):
                return False
    return True


def axiom_holds(interp: Interpretation, axiom: Axiom) -> bool:
    if isinstance(axiom, SubClassOf):
        return eval_class(axiom.sub, interp) <= eval_class(axiom.sup, interp)
    if isinstance(axiom, SubObjectPropertyOf):
        composed = eval_role(axiom.chain[0], interp)
        for role in axiom.chain[1:]:
            nxt = eval_role(role, interp)
            composed = frozenset(
                (a, d) for a, b in composed for c, d in nxt if b == c
            )
        return composed <= eval_role(axiom.sup, interp)
    if isinstance(axiom, Declaration):
        return True
    if isinstance(axiom, AnnotatedSwrlRule):
        return rule_holds(interp, axiom.rule)
    raise TypeError(f"not an axiom: {axiom!r}")


def canonical_extension(
    interp: Interpretation,
    fresh_roles: Sequence[tuple[str, ClassExpression]],
) -> Interpretation:
    """Extend with each fresh role as the diagonal over its source class."""
    role_ext = dict(interp.role_ext)
    for name, source in fresh_roles:
        if name in role_ext:
            raise ValueError(f"fresh role {name!r} already interpreted")
        role_ext[name] = frozenset((d, d) for d in eval_class(source, interp))
    return Interpretation(interp.domain_size, dict(interp.class_ext), role_ext)


# ---------------------------------------------------------------------------
# Interpretation spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BitLayout:
    """Fixed bit positions for an interpretation space: class-membership bits
    first (class-major, then element), role-pair bits after (role-major, then
    row-major pairs)."""

    classes: tuple[str, ...]
    roles: tuple[str, ...]
    domain_size: int

    @property
    def bits(self) -> int:
        n = self.domain_size
        return len(self.classes) * n + len(self.roles) * n * n

    def class_bit(self, index: int, d: int) -> int:
        return index * self.domain_size + d

    def role_bit(self, index: int, d: int, e: int) -> int:
        n = self.domain_size
        return len(self.classes) * n + index * n * n + d * n + e

    def decode(self, value: int) -> Interpretation:
        n = self.domain_size
        class_ext = {
            name: frozenset(
                d for d in range(n) if value >> self.class_bit(i, d) & 1
            )
            for i, name in enumerate(self.classes)
        }
        role_ext = {
            name: frozenset(
                (d, e)
                for d in range(n)
                for e in range(n)
                if value >> self.role_bit(i, d, e) & 1
            )
            for i, name in enumerate(self.roles)
        }
        return Interpretation(n, class_ext, role_ext)


def rule_layout(rule: Rule, domain_size: int) -> BitLayout:
    return BitLayout(
        tuple(sorted(rule.class_names())),
        tuple(sorted(rule.property_names())),
        domain_size,
    )


def enumerate_interpretations(
    classes: Sequence[str], roles: Sequence[str], domain_size: int
) -> Iterator[Interpretation]:
    """All interpretations of the given names, in bit-layout order."""
    layout = BitLayout(tuple(classes), tuple(roles), domain_size)
    for value in range(1 << layout.bits):
        yield layout.decode(value)


# ---------------------------------------------------------------------------
# Vectorized bulk evaluation
# ---------------------------------------------------------------------------


class _BitModel:
    """Evaluates rule and axiom truth across a whole batch of interpretations
    at once; one bool vector per atomic fact, indexed by interpretation."""

    def __init__(self, layout: BitLayout, fresh: Mapping[str, ClassExpression],
                 *, sample_size: int | None = None, seed: int = DEFAULT_SEED):
        self.layout = layout
        self.fresh = dict(fresh)
        self._expr_memo: dict[tuple[ClassExpression, int], np.ndarray] = {}
        if sample_size is None:
            self.exhaustive = True
            self.size = 1 << layout.bits
            index = np.arange(self.size, dtype=np.uint64)
            self._bit = [
                ((index >> np.uint64(p)) & np.uint64(1)).astype(bool)
                for p in range(layout.bits)
            ]
            self._sampled_bits = None
        else:
            self.exhaustive = False
            self.size = sample_size
            rng = np.random.default_rng(seed)
            matrix = rng.integers(0, 2, size=(layout.bits, sample_size), dtype=np.uint8)
            self._bit = [matrix[p].astype(bool) for p in range(layout.bits)]
            self._sampled_bits = matrix

    def _true(self) -> np.ndarray:
        return np.ones(self.size, dtype=bool)

    def _false(self) -> np.ndarray:
        return np.zeros(self.size, dtype=bool)

    def class_vec(self, name: str, d: int) -> np.ndarray:
        if name == TOP_CLASS_NAME:
            return self._true()
        try:
            i = self.layout.classes.index(name)
        except ValueError:
            return self._false()
        return self._bit[self.layout.class_bit(i, d)]

    def role_pair_vec(self, role: RoleExpression, d: int, e: int) -> np.ndarray:
        if isinstance(role, UniversalRole):
            return self._true()
        if isinstance(role, InverseRole):
            return self.role_pair_vec(role.of, e, d)
        name = role.name
        if name == UNIVERSAL_PROPERTY_NAME:
            return self._true()
        if name in self.fresh:
            if d != e:
                return self._false()
            return self.expr_vec(self.fresh[name], d)
        try:
            i = self.layout.roles.index(name)
        except ValueError:
            return self._false()
        return self._bit[self.layout.role_bit(i, d, e)]

    def expr_vec(self, expr: ClassExpression, d: int) -> np.ndarray:
        key = (expr, d)
        cached = self._expr_memo.get(key)
        if cached is not None:
            return cached
        n = self.layout.domain_size
        if isinstance(expr, TopClass):
            out = self._true()
        elif isinstance(expr, NamedClass):
            out = self.class_vec(expr.name, d)
        elif isinstance(expr, Intersection):
            out = self._true()
            for op in expr.operands:
                out &= self.expr_vec(op, d)
        elif isinstance(expr, SomeValuesFrom):
            out = self._false()
            for e in range(n):
                out |= self.role_pair_vec(expr.role, d, e) & self.expr_vec(
                    expr.filler, e
                )
        elif isinstance(expr, HasSelf):
            out = self.role_pair_vec(expr.role, d, d)
        else:
            raise TypeError(f"cannot evaluate {expr!r}")
        self._expr_memo[key] = out
        return out

    def rule_vec(self, rule: Rule) -> np.ndarray:
        n = self.layout.domain_size
        variables = sorted(rule.body_variables())
        holds = self._true()
        for values in itertools.product(range(n), repeat=len(variables)):
            env = dict(zip(variables, values))
            body = self._true()
            for atom in rule.body:
                body &= self._atom_vec(atom, env)
            holds &= ~body | self._atom_vec(rule.head, env)
        return holds

    def _atom_vec(self, atom: Atom, env: Mapping[str, int]) -> np.ndarray:
        if isinstance(atom, ClassAtom):
            return self.class_vec(atom.class_name, env[atom.arg.name])
        return self.role_pair_vec(
            NamedRole(atom.property_name), env[atom.arg1.name], env[atom.arg2.name]
        )

    def axiom_vec(self, axiom: Axiom) -> np.ndarray:
        n = self.layout.domain_size
        if isinstance(axiom, SubClassOf):
            out = self._true()
            for d in range(n):
                out &= ~self.expr_vec(axiom.sub, d) | self.expr_vec(axiom.sup, d)
            return out
        if isinstance(axiom, SubObjectPropertyOf):
            comp = {
                (d, e): self.role_pair_vec(axiom.chain[0], d, e)
                for d in range(n)
                for e in range(n)
            }
            for role in axiom.chain[1:]:
                step = {
                    (d, e): self.role_pair_vec(role, d, e)
                    for d in range(n)
                    for e in range(n)
                }
                comp = {
                    (d, e): np.logical_or.reduce(
                        [comp[d, m] & step[m, e] for m in range(n)]
                    )
                    for d in range(n)
                    for e in range(n)
                }
            out = self._true()
            for d in range(n):
                for e in range(n):
                    out &= ~comp[d, e] | self.role_pair_vec(axiom.sup, d, e)
            return out
        if isinstance(axiom, Declaration):
            return self._true()
        if isinstance(axiom, AnnotatedSwrlRule):
            return self.rule_vec(axiom.rule)
        raise TypeError(f"not an axiom: {axiom!r}")

    def decode(self, index: int) -> Interpretation:
        if self.exhaustive:
            return self.layout.decode(index)
        assert self._sampled_bits is not None
        value = 0
        for p in range(self.layout.bits):
            if self._sampled_bits[p, index]:
                value |= 1 << p
        return self.layout.decode(value)


# ---------------------------------------------------------------------------
# Equivalence check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    passed: bool
    counterexample: Interpretation | None = None
    counterexample_domain_size: int | None = None
    interpretations_checked: int = 0
    exhaustive: bool = True


def check_equivalence(
    rule: Rule,
    result: "Success",
    max_domain: int,
    *,
    seed: int = DEFAULT_SEED,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    exhaustive_bit_budget: int = EXHAUSTIVE_BIT_BUDGET,
) -> Verdict:
    """Compare rule truth against axiom-set truth (under the canonical
    fresh-role extension) over every interpretation at domain sizes
    1..max_domain; exhaustive within the bit budget, seeded sampling beyond."""
    axioms = tuple(result.axioms)
    fresh = dict(result.fresh_roles)
    checked = 0
    fully_exhaustive = True
    for n in range(1, max_domain + 1):
        layout = rule_layout(rule, n)
        if layout.bits <= exhaustive_bit_budget:
            model = _BitModel(layout, fresh)
        else:
            model = _BitModel(layout, fresh, sample_size=sample_size, seed=seed)
            fully_exhaustive = False
        rule_truth = model.rule_vec(rule)
        axiom_truth = model._true()
        for axiom in axioms:
            axiom_truth &= model.axiom_vec(axiom)
        checked += model.size
        disagreement = rule_truth != axiom_truth
        index = int(np.argmax(disagreement))
        if disagreement[index]:
            interp = model.decode(index)
            _confirm_counterexample(rule, axioms, fresh, interp)
            return Verdict(False, interp, n, checked, fully_exhaustive)
    return Verdict(True, None, None, checked, fully_exhaustive)


def _confirm_counterexample(
    rule: Rule,
    axioms: Sequence[Axiom],
    fresh: Mapping[str, ClassExpression],
    interp: Interpretation,
) -> None:
    extended = canonical_extension(interp, list(fresh.items()))
    lhs = rule_holds(interp, rule)
    rhs = all(axiom_holds(extended, a) for a in axioms)
    if lhs == rhs:
        raise AssertionError(
            "vectorized path disagrees with scalar semantics on "
            f"{interp!r}; this is a bug in the oracle"
        )

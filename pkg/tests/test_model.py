"""Core model: invariants, canonicalization, rule construction."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from rules2owl.model import (
    ClassAtom,
    HasSelf,
    Intersection,
    InverseRole,
    NamedClass,
    NamedRole,
    NominalPlaceholder,
    PropertyAtom,
    Rule,
    Signature,
    SomeValuesFrom,
    TOP,
    UNIVERSAL,
    Variable,
    canonicalize,
    class_expression_text,
    intersection_of,
    inverse_role,
    rule_signature,
)

import corpus

A, B, C = NamedClass("A"), NamedClass("B"), NamedClass("C")
r = NamedRole("r")


class TestVariables:
    def test_valid_names(self):
        assert Variable("x").name == "x"
        assert Variable("_tmp1").name == "_tmp1"

    @pytest.mark.parametrize("bad", ["", "1x", "a-b", "?x", "a b"])
    def test_invalid_names_rejected(self, bad):
        with pytest.raises(ValueError):
            Variable(bad)


class TestRuleConstruction:
    def test_body_deduplicated_order_preserved(self):
        a1 = ClassAtom("A", Variable("x"))
        a2 = ClassAtom("B", Variable("x"))
        rule = Rule([a1, a2, a1, a2], a1)
        assert rule.body == (a1, a2)

    def test_unsafe_rule_rejected(self):
        body = [ClassAtom("Mouse", Variable("x"))]
        head = PropertyAtom("smallerThan", Variable("x"), Variable("y"))
        with pytest.raises(ValueError, match="unsafe"):
            Rule(body, head)

    def test_empty_body_rejected(self):
        with pytest.raises(ValueError):
            Rule([], ClassAtom("A", Variable("x")))

    def test_safety_holds_for_accepted_rules(self):
        rng = random.Random(7)
        for _ in range(200):
            rule = corpus.random_safe_rule(rng)
            assert rule.head_variables() <= rule.body_variables()


class TestRoleExpressions:
    def test_inverse_never_nests(self):
        assert inverse_role(r) == InverseRole(r)
        assert inverse_role(InverseRole(r)) == r
        assert inverse_role(UNIVERSAL) == UNIVERSAL


class TestCanonicalize:
    def test_sorts_operands(self):
        assert canonicalize(Intersection((B, A))) == Intersection((A, B))

    def test_flattens_nested_intersections(self):
        nested = Intersection((A, Intersection((B, C))))
        assert canonicalize(nested) == Intersection((A, B, C))

    def test_top_absorbed(self):
        assert canonicalize(Intersection((A, TOP))) == A

    def test_all_top_collapses_to_top(self):
        assert canonicalize(Intersection((TOP, TOP))) == TOP

    def test_duplicates_removed(self):
        assert canonicalize(Intersection((A, A))) == A

    def test_sort_key_is_rendered_text(self):
        attends = SomeValuesFrom(NamedRole("attends"), NamedClass("Course"))
        works = SomeValuesFrom(NamedRole("worksFor"), NamedClass("Dept"))
        assert canonicalize(Intersection((works, attends))) == Intersection(
            (attends, works)
        )

    def test_intersection_of_empty_is_top(self):
        assert intersection_of(()) == TOP
        assert intersection_of((A,)) == A


# Hypothesis strategy over class expressions, placeholders included.
def _exprs(depth=3):
    named = st.sampled_from([A, B, C, TOP, NominalPlaceholder("v"), HasSelf(r)])
    if depth == 0:
        return named
    sub = _exprs(depth - 1)
    return st.one_of(
        named,
        st.builds(SomeValuesFrom, st.sampled_from([r, InverseRole(r), UNIVERSAL]), sub),
        st.lists(sub, min_size=2, max_size=4).map(
            lambda ops: Intersection(tuple(ops))
        ),
    )


class TestCanonicalizeProperties:
    @given(_exprs())
    def test_idempotent(self, expr):
        once = canonicalize(expr)
        assert canonicalize(once) == once

    @given(_exprs())
    def test_rendered_text_stable_under_canonicalize_twice(self, expr):
        once = canonicalize(expr)
        assert class_expression_text(canonicalize(once)) == class_expression_text(once)


class TestSignature:
    def test_overlap_flag(self):
        sig = Signature(frozenset({"A", "B"}), frozenset({"B"}))
        assert sig.overlap == frozenset({"B"})

    def test_rule_signature_skips_reserved(self):
        rule = Rule(
            [
                ClassAtom("owl:Thing", Variable("x")),
                PropertyAtom("owl:topObjectProperty", Variable("x"), Variable("y")),
                ClassAtom("A", Variable("y")),
            ],
            ClassAtom("B", Variable("x")),
        )
        sig = rule_signature(rule)
        assert sig.classes == frozenset({"A", "B"})
        assert sig.object_properties == frozenset()


class TestRendering:
    def test_manchester_expression_texts(self):
        expr = Intersection(
            (
                SomeValuesFrom(NamedRole("attends"), NamedClass("Course")),
                SomeValuesFrom(NamedRole("worksFor"), NamedClass("Dept")),
            )
        )
        assert (
            class_expression_text(expr)
            == "(attends some Course) and (worksFor some Dept)"
        )
        assert class_expression_text(HasSelf(NamedRole("R_Mouse"))) == "R_Mouse Self"
        assert class_expression_text(TOP) == "owl:Thing"
        assert class_expression_text(NominalPlaceholder("z")) == "{?z}"

    def test_nested_filler_parenthesized(self):
        inner = SomeValuesFrom(NamedRole("hasBrother"), NominalPlaceholder("z"))
        outer = SomeValuesFrom(NamedRole("hasFather"), inner)
        assert (
            class_expression_text(outer)
            == "hasFather some (hasBrother some {?z})"
        )

"""rules2owl: compile SWRL-style rules into equivalent OWL 2 DL axioms.

Public surface: the domain model, the rule parser, the rule-to-axiom
compiler, nominal-schema grounding options, ontology I/O, and the
finite-model equivalence oracle.
"""

__version__ = "0.1.0"

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
    TopClass,
    UNIVERSAL,
    UniversalRole,
    Variable,
    canonicalize,
    canonicalize_axiom,
    class_expression_text,
    intersection_of,
    inverse_role,
)
from .ns_options import (
    GroundingOption,
    annotate_rule,
    check_option,
    enumerate_options,
    enumerate_options_detailed,
    render_ns_preview,
)
from .ontology_io import (
    OntologyDocument,
    commit,
    empty_document,
    missing_declarations,
    parse_ontology,
    read_document,
    render_functional,
    render_manchester,
    serialize_ontology,
    write_document,
)
from .oracle import (
    Interpretation,
    Verdict,
    axiom_holds,
    canonical_extension,
    check_equivalence,
    enumerate_interpretations,
    rule_holds,
)
from .rule_parser import ErrorKind, ParseError, parse_rule, parse_rules, render_rule
from .transformer import (
    ConversionResult,
    RuleGraph,
    Success,
    Untranslatable,
    build_graph,
    convert,
    finish_class_head,
    finish_role_head,
    fresh_role_name,
    roll_up_fixpoint,
    roll_up_step,
    unify_labels,
)

__all__ = [name for name in dir() if not name.startswith("_")]

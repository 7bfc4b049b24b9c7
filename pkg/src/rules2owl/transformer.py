"""Compiles a rule into an equivalent set of OWL axioms, when possible.

Pipeline: the rule body becomes a graph (variables as nodes, property atoms
as edges, class atoms as node labels); variables outside the head that touch
exactly one edge are folded into existential restrictions until a fixpoint;
what remains either fits one of the two head shapes (a labelled head node for
class heads, a simple chain between the two head variables for property
heads) or the rule is reported untranslatable together with its
nominal-schema grounding options.

Everything here is a pure function of (rule, signature); fresh role names
are minted deterministically.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence, Union

from .model import (
    Atom,
    Axiom,
    ClassAtom,
    ClassExpression,
    HasSelf,
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
    intersection_of,
    inverse_role,
    rule_signature,
)

if TYPE_CHECKING:  # pragma: no cover
    from .ns_options import GroundingOption

CHAIN_REGULARITY_WARNING = (
    "a role-chain axiom was emitted; OWL 2 global regularity restrictions "
    "on property chains are not checked"
)


@dataclass(frozen=True)
class Edge:
    role: RoleExpression
    src: str
    dst: str


@dataclass
class RuleGraph:
    """Working view of a rule body: nodes are variables, edges come from
    property atoms, labels collect class expressions attached to a variable."""

    nodes: set[str] = field(default_factory=set)
    edges: list[Edge] = field(default_factory=list)
    labels: dict[str, list[ClassExpression]] = field(
        default_factory=lambda: defaultdict(list)
    )

    def degree(self, v: str) -> int:
        return sum((e.src == v) + (e.dst == v) for e in self.edges)

    def copy(self) -> RuleGraph:
        labels = defaultdict(list)
        for v, exprs in self.labels.items():
            labels[v] = list(exprs)
        return RuleGraph(set(self.nodes), list(self.edges), labels)


@dataclass(frozen=True)
class Success:
    axioms: tuple[Axiom, ...]
    fresh_roles: tuple[tuple[str, ClassExpression], ...] = ()
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class Untranslatable:
    reason: str
    options: tuple["GroundingOption", ...] = ()


ConversionResult = Union[Success, Untranslatable]


def build_graph(body: Sequence[Atom], *, grounded: frozenset[str] = frozenset()) -> RuleGraph:
    """Graph of a rule body. Variables in ``grounded`` do not become nodes:
    property atoms touching them turn into existential labels over a nominal
    placeholder, and their class atoms are dropped (preview-only data)."""
    g = RuleGraph()
    for atom in body:
        for v in _atom_var_names(atom):
            if v not in grounded:
                g.nodes.add(v)
    for atom in body:
        if isinstance(atom, ClassAtom):
            v = atom.arg.name
            if v in grounded:
                continue
            expr = TOP if atom.class_name == TOP_CLASS_NAME else NamedClass(atom.class_name)
            g.labels[v].append(expr)
            continue
        role: RoleExpression = (
            UNIVERSAL
            if atom.property_name == UNIVERSAL_PROPERTY_NAME
            else NamedRole(atom.property_name)
        )
        u, v = atom.arg1.name, atom.arg2.name
        if u in grounded and v in grounded:
            continue
        if u == v:
            _add_self_loop_label(g, u, role)
        elif v in grounded:
            g.labels[u].append(SomeValuesFrom(role, NominalPlaceholder(v)))
        elif u in grounded:
            g.labels[v].append(SomeValuesFrom(inverse_role(role), NominalPlaceholder(u)))
        else:
            g.edges.append(Edge(role, u, v))
    return g


def _atom_var_names(atom: Atom) -> tuple[str, ...]:
    if isinstance(atom, ClassAtom):
        return (atom.arg.name,)
    return (atom.arg1.name, atom.arg2.name)


def _add_self_loop_label(g: RuleGraph, v: str, role: RoleExpression) -> None:
    # U(v, v) holds of everything; it adds no constraint. A self loop over an
    # inverse is the same as over the role itself.
    if isinstance(role, NamedRole):
        g.labels[v].append(HasSelf(role))
    elif isinstance(role, InverseRole):
        g.labels[v].append(HasSelf(role.of))


def _normalize_self_loops(g: RuleGraph) -> RuleGraph:
    if not any(e.src == e.dst for e in g.edges):
        return g
    g = g.copy()
    loops = [e for e in g.edges if e.src == e.dst]
    g.edges = [e for e in g.edges if e.src != e.dst]
    for e in loops:
        _add_self_loop_label(g, e.src, e.role)
    return g


def unify_labels(g: RuleGraph, v: str) -> ClassExpression:
    """Canonical conjunction of the labels on ``v``; Top when unlabelled."""
    return intersection_of(g.labels.get(v, ()))


def roll_up_step(
    g: RuleGraph, head_vars: set[str], *, reverse: bool = False
) -> RuleGraph | None:
    """Fold one non-head variable of role-degree 1 into an existential label
    on its neighbour; returns None when no such variable exists. Ties are
    broken lexicographically (smallest first unless ``reverse``)."""
    g = _normalize_self_loops(g)
    eligible = sorted(
        v for v in g.nodes if v not in head_vars and g.degree(v) == 1
    )
    if not eligible:
        return None
    v = eligible[-1] if reverse else eligible[0]
    edge = next(e for e in g.edges if v in (e.src, e.dst))
    if edge.dst == v:
        w, role = edge.src, edge.role
    else:
        w, role = edge.dst, inverse_role(edge.role)
    filler = unify_labels(g, v)
    out = g.copy()
    out.nodes.discard(v)
    out.edges.remove(edge)
    out.labels.pop(v, None)
    out.labels[w].append(SomeValuesFrom(role, filler))
    return out


def roll_up_fixpoint(
    g: RuleGraph, head_vars: set[str], *, reverse: bool = False
) -> RuleGraph:
    g = _normalize_self_loops(g)
    while (nxt := roll_up_step(g, head_vars, reverse=reverse)) is not None:
        g = nxt
    return g


# ---------------------------------------------------------------------------
# Head pipelines
# ---------------------------------------------------------------------------


def _finish_class_pipeline(
    g: RuleGraph, x: str, sup: ClassExpression
) -> ConversionResult:
    if g.edges:
        involved = sorted({e.src for e in g.edges} | {e.dst for e in g.edges})
        return Untranslatable(
            "the body cannot be reduced: each of the variables "
            + ", ".join(f"?{v}" for v in involved)
            + " appears in two or more property atoms (a cycle or "
            "multiply-connected structure); expressing it in OWL would "
            "need role conjunction"
        )
    x_labels = list(g.labels.get(x, ()))
    for v in sorted(n for n in g.nodes if n != x):
        x_labels.append(SomeValuesFrom(UNIVERSAL, unify_labels(g, v)))
    sub = intersection_of(x_labels)
    return Success((SubClassOf(sub, sup),))


def finish_class_head(g: RuleGraph, x: str, head_class: str) -> ConversionResult:
    """Emit SubClassOf(body expression, head class) from a rolled-up graph."""
    sup: ClassExpression = (
        TOP if head_class == TOP_CLASS_NAME else NamedClass(head_class)
    )
    return _finish_class_pipeline(g, x, sup)


def _extract_path(
    g: RuleGraph, x: str, y: str
) -> list[tuple[RoleExpression | None, str]] | None:
    """The residual edges as a simple x-to-y chain (None if they are not one).
    Each step carries the role as traversed, inverted when walked against the
    edge's direction."""
    degrees: dict[str, int] = defaultdict(int)
    adjacency: dict[str, list[int]] = defaultdict(list)
    for i, e in enumerate(g.edges):
        degrees[e.src] += 1
        degrees[e.dst] += 1
        adjacency[e.src].append(i)
        adjacency[e.dst].append(i)
    if degrees[x] != 1 or degrees[y] != 1:
        return None
    if any(d != 2 for v, d in degrees.items() if v not in (x, y)):
        return None
    steps: list[tuple[RoleExpression | None, str]] = [(None, x)]
    visited = {x}
    used: set[int] = set()
    current = x
    while current != y:
        candidates = [i for i in adjacency[current] if i not in used]
        if len(candidates) != 1:
            return None
        i = candidates[0]
        used.add(i)
        edge = g.edges[i]
        if edge.src == current:
            nxt, role = edge.dst, edge.role
        else:
            nxt, role = edge.src, inverse_role(edge.role)
        if nxt in visited:
            return None
        visited.add(nxt)
        steps.append((role, nxt))
        current = nxt
    if len(used) != len(g.edges):
        return None
    return steps


def finish_role_head(
    g: RuleGraph, x: str, y: str, head_role: str, sig: Signature
) -> ConversionResult:
    """Emit a role-chain inclusion from a rolled-up graph with head R(x, y).

    Residual edges must form a simple chain from x to y; isolated leftover
    variables are folded in via the universal property (as extra chain nodes
    when x and y are disconnected, as universal-existential guards on x when
    a real chain already connects them). Labelled chain nodes become fresh
    Self-restricted roles spliced into the chain.
    """
    namer = FreshRoleNamer(sig.all_names())
    labels = {v: list(exprs) for v, exprs in g.labels.items()}
    if g.edges:
        path = _extract_path(g, x, y)
        if path is None:
            return Untranslatable(
                f"the residual property atoms do not form a simple chain "
                f"from ?{x} to ?{y}; expressing them in OWL would need "
                "role conjunction"
            )
        path_nodes = {node for _, node in path}
        extra = labels.setdefault(x, [])
        for v in sorted(n for n in g.nodes if n not in path_nodes):
            extra.append(SomeValuesFrom(UNIVERSAL, unify_labels(g, v)))
    else:
        middle = sorted(n for n in g.nodes if n not in (x, y))
        path = [(None, x)]
        path += [(UNIVERSAL, v) for v in middle]
        path.append((UNIVERSAL, y))

    chain: list[RoleExpression] = []
    guards: list[Axiom] = []
    fresh: list[tuple[str, ClassExpression]] = []
    for role, node in path:
        if role is not None:
            chain.append(role)
        if not labels.get(node):
            continue
        expr = intersection_of(labels[node])
        if isinstance(expr, TopClass):
            continue
        name = namer.mint(expr)
        guards.append(SubClassOf(expr, HasSelf(NamedRole(name))))
        fresh.append((name, expr))
        chain.append(NamedRole(name))
    axioms = (*guards, SubObjectPropertyOf(tuple(chain), NamedRole(head_role)))
    warnings = (CHAIN_REGULARITY_WARNING,) if len(chain) > 1 else ()
    return Success(axioms, tuple(fresh), warnings)


# ---------------------------------------------------------------------------
# Fresh role names
# ---------------------------------------------------------------------------


class FreshRoleNamer:
    """Deterministic fresh-name minting: ``R_C`` for a named source class C,
    ``R_C1``, ``R_C2``, ... for complex sources; collisions get ``_2``,
    ``_3``, ... suffixes. Minted names join the taken set."""

    def __init__(self, taken: Iterable[str] = (), complex_counter: int = 0):
        self.taken = set(taken)
        self.complex_counter = complex_counter

    def mint(self, source: ClassExpression) -> str:
        if isinstance(source, NamedClass):
            base = "R_" + source.name.replace(":", "_")
        else:
            self.complex_counter += 1
            base = f"R_C{self.complex_counter}"
        name, k = base, 2
        while name in self.taken:
            name = f"{base}_{k}"
            k += 1
        self.taken.add(name)
        return name


def fresh_role_name(
    source: ClassExpression, sig: Signature, used: set[str]
) -> str:
    """Single-shot minting against ``sig`` plus ``used``; the minted name is
    added to ``used``. The complex-source counter resumes on the R_C<k>
    names already present."""
    taken = sig.all_names() | used
    counter = 0
    for name in taken:
        if name.startswith("R_C") and name[3:].isdigit():
            counter = max(counter, int(name[3:]))
    name = FreshRoleNamer(taken, counter).mint(source)
    used.add(name)
    return name


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def convert(
    rule: Rule, sig: Signature | None = None, *, enumerate_grounding: bool = True
) -> ConversionResult:
    """Convert a safe rule into equivalent axioms or report untranslatability
    (with nominal-schema grounding options unless disabled). ``sig`` is used
    only to avoid fresh-name collisions."""
    sig = sig or Signature()
    graph = build_graph(rule.body)
    result = _convert_with_graph(graph, rule.head, sig.union(rule_signature(rule)))
    if isinstance(result, Untranslatable) and enumerate_grounding:
        from .ns_options import enumerate_options

        result = Untranslatable(result.reason, tuple(enumerate_options(rule)))
    return result


def _convert_with_graph(
    graph: RuleGraph, head: Atom, names: Signature
) -> ConversionResult:
    if isinstance(head, ClassAtom):
        g = roll_up_fixpoint(graph, {head.arg.name})
        return finish_class_head(g, head.arg.name, head.class_name)
    assert isinstance(head, PropertyAtom)
    x, y = head.arg1.name, head.arg2.name
    if x == y:
        # R(x, x) heads: C <= exists R.Self asserts exactly R(x, x) for C(x).
        g = roll_up_fixpoint(graph, {x})
        return _finish_class_pipeline(g, x, HasSelf(NamedRole(head.property_name)))
    g = roll_up_fixpoint(graph, {x, y})
    return finish_role_head(g, x, y, head.property_name, names)

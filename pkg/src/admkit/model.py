"""Architectural decision models and their derived relations.

A model couples a set of decision *issues* (design problems) with a set of
*alternatives* (candidate solutions), where:

- every alternative solves exactly one issue (``issue_for``),
- compatibility between alternatives is symmetric and reflexive, with
  incompatibility as its complement over the alternative set,
- selecting an alternative may *trigger* new issues, never its own.

Models are immutable after construction and all derived relations are pure
functions of the tuple, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Mapping, Union

from admkit.errors import InvalidModelError, UnknownElementError

if TYPE_CHECKING:
    from admkit.formats import ModelDocument

IssueId = str
AlternativeId = str


@dataclass(frozen=True)
class Violation:
    """One failed well-formedness rule, with the elements that witness it."""

    rule: str
    message: str
    witnesses: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating a model document or model value.

    ``violations`` are fatal; ``lints`` flag legal-but-hazardous shapes
    (``trigger-cycle``, ``unresolvable-issue``) and do not affect
    ``well_formed``.
    """

    violations: tuple[Violation, ...] = ()
    lints: tuple[Violation, ...] = ()

    @property
    def well_formed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Model:
    """The decision-model tuple plus presentation metadata.

    ``issues`` and ``alternatives`` keep declaration order, which defines the
    canonical order used for enumeration and export. ``compatible_with`` is
    stored fully materialized: reflexive, symmetric, and normalized so that
    distinct alternatives of the same issue are always incompatible (a design
    selects at most one alternative per issue, so their compatibility carries
    no meaning; fixing it makes models canonical).
    """

    name: str
    issues: tuple[IssueId, ...]
    alternatives: tuple[AlternativeId, ...]
    issue_for: Mapping[AlternativeId, IssueId]
    compatible_with: Mapping[AlternativeId, frozenset[AlternativeId]]
    triggered_by: Mapping[AlternativeId, frozenset[IssueId]]
    issue_labels: Mapping[IssueId, str] = field(default_factory=dict)
    alternative_labels: Mapping[AlternativeId, str] = field(default_factory=dict)

    @cached_property
    def issue_index(self) -> dict[IssueId, int]:
        return {i: k for k, i in enumerate(self.issues)}

    @cached_property
    def alternative_index(self) -> dict[AlternativeId, int]:
        return {a: k for k, a in enumerate(self.alternatives)}

    @cached_property
    def _alternatives_by_issue(self) -> dict[IssueId, tuple[AlternativeId, ...]]:
        grouped: dict[IssueId, list[AlternativeId]] = {i: [] for i in self.issues}
        for a in self.alternatives:
            grouped[self.issue_for[a]].append(a)
        return {i: tuple(alts) for i, alts in grouped.items()}

    def issue_label(self, issue: IssueId) -> str:
        return self.issue_labels.get(issue, issue)

    def alternative_label(self, alternative: AlternativeId) -> str:
        return self.alternative_labels.get(alternative, alternative)

    def alternatives_to(self, issue: IssueId) -> tuple[AlternativeId, ...]:
        """All alternatives that solve ``issue``, in declaration order."""
        if issue not in self._alternatives_by_issue:
            raise UnknownElementError("issue", issue)
        return self._alternatives_by_issue[issue]

    def incompatible_with(self, alternative: AlternativeId) -> frozenset[AlternativeId]:
        """Complement of ``compatible_with`` over the alternative set.

        Never contains ``alternative`` itself (compatibility is reflexive).
        """
        if alternative not in self.compatible_with:
            raise UnknownElementError("alternative", alternative)
        return frozenset(self.alternatives) - self.compatible_with[alternative]

    def forced_by(self, alternative: AlternativeId) -> frozenset[AlternativeId]:
        """Alternatives that selecting ``alternative`` leaves no way around.

        ``a'`` is forced by ``a`` when ``a`` is compatible with ``a'`` but
        incompatible with every other alternative of ``a'``'s issue, so any
        complete design containing ``a`` that resolves that issue must pick
        ``a'``.  Note the direction: the result is the set of alternatives
        forced *by* the argument.
        """
        if alternative not in self.compatible_with:
            raise UnknownElementError("alternative", alternative)
        own_issue = self.issue_for[alternative]
        incompatible = self.incompatible_with(alternative)
        forced = []
        for other in self.compatible_with[alternative]:
            other_issue = self.issue_for[other]
            if other_issue == own_issue:
                continue
            peers = set(self._alternatives_by_issue[other_issue]) - {other}
            if peers <= incompatible:
                forced.append(other)
        return frozenset(forced)

    def triggered_issues(self, alternative: AlternativeId) -> frozenset[IssueId]:
        """Issues that selecting ``alternative`` creates."""
        if alternative not in self.triggered_by:
            raise UnknownElementError("alternative", alternative)
        return self.triggered_by[alternative]

    def entry_points(self) -> tuple[IssueId, ...]:
        """Issues triggered by no alternative; every complete design resolves them."""
        triggered = set()
        for targets in self.triggered_by.values():
            triggered |= targets
        return tuple(i for i in self.issues if i not in triggered)

    def trigger_edges(self) -> dict[IssueId, frozenset[IssueId]]:
        """Issue-level trigger graph: ``i -> j`` when an alternative of ``i`` triggers ``j``."""
        edges: dict[IssueId, set[IssueId]] = {i: set() for i in self.issues}
        for a in self.alternatives:
            edges[self.issue_for[a]] |= self.triggered_by[a]
        return {i: frozenset(t) for i, t in edges.items()}

    def trigger_cycles(self) -> tuple[tuple[IssueId, ...], ...]:
        """Nontrivial strongly connected components of the trigger graph."""
        return tuple(
            scc for scc in _strongly_connected(self.issues, self.trigger_edges())
            if len(scc) > 1
        )

    def has_trigger_cycle(self) -> bool:
        return bool(self.trigger_cycles())

    def cycle_reachable_issues(self) -> frozenset[IssueId]:
        """Issues on or trigger-reachable from a cycle of the trigger graph."""
        edges = self.trigger_edges()
        frontier = [i for scc in self.trigger_cycles() for i in scc]
        reachable = set(frontier)
        while frontier:
            for j in edges[frontier.pop()]:
                if j not in reachable:
                    reachable.add(j)
                    frontier.append(j)
        return frozenset(reachable)


def _strongly_connected(
    nodes: Iterable[str], edges: Mapping[str, frozenset[str]]
) -> list[tuple[str, ...]]:
    """Tarjan's algorithm, iterative; components in deterministic order."""
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[tuple[str, ...]] = []
    counter = 0

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(sorted(edges.get(root, ()))))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, successors = work[-1]
            advanced = False
            for succ in successors:
                if succ not in index:
                    index[succ] = lowlink[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(sorted(edges.get(succ, ())))))
                    advanced = True
                    break
                if succ in on_stack:
                    lowlink[node] = min(lowlink[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                components.append(tuple(component))
    return components


def _document_violations(doc: "ModelDocument") -> ValidationReport:
    violations: list[Violation] = []
    issue_ids = [i.id for i in doc.issues]
    alt_ids = [a.id for a in doc.alternatives]

    seen: set[str] = set()
    for kind, identifier in [("issue", i) for i in issue_ids] + [
        ("alternative", a) for a in alt_ids
    ]:
        if identifier in seen:
            violations.append(
                Violation(
                    "duplicate-id",
                    f"identifier {identifier!r} declared more than once; "
                    "ids must be unique across issues and alternatives",
                    (identifier,),
                )
            )
        seen.add(identifier)

    issue_set = set(issue_ids)
    alt_set = set(alt_ids)
    for alt in doc.alternatives:
        if alt.issue not in issue_set:
            violations.append(
                Violation(
                    "dangling-issue-for",
                    f"alternative {alt.id!r} solves undeclared issue {alt.issue!r}",
                    (alt.id, alt.issue),
                )
            )
        for target in alt.triggers:
            if target not in issue_set:
                violations.append(
                    Violation(
                        "unknown-issue",
                        f"alternative {alt.id!r} triggers undeclared issue {target!r}",
                        (alt.id, target),
                    )
                )
            elif target == alt.issue:
                violations.append(
                    Violation(
                        "self-trigger",
                        f"alternative {alt.id!r} triggers its own issue {target!r}",
                        (alt.id, target),
                    )
                )
    for first, second in doc.incompatible:
        if first == second:
            violations.append(
                Violation(
                    "self-incompatible",
                    f"incompatible pair names {first!r} twice; "
                    "an alternative is always compatible with itself",
                    (first,),
                )
            )
            continue
        for member in (first, second):
            if member not in alt_set:
                violations.append(
                    Violation(
                        "unknown-alternative",
                        f"incompatible pair references undeclared alternative {member!r}",
                        (member,),
                    )
                )
    return ValidationReport(violations=tuple(violations))


def _model_violations(model: Model) -> ValidationReport:
    violations: list[Violation] = []
    issue_set = set(model.issues)
    alt_set = set(model.alternatives)

    missing = [a for a in model.alternatives if a not in model.issue_for]
    for a in missing:
        violations.append(
            Violation("missing-issue-for", f"alternative {a!r} has no issue", (a,))
        )
    for a, i in model.issue_for.items():
        if a not in alt_set:
            violations.append(
                Violation(
                    "unknown-alternative",
                    f"issue mapping names undeclared alternative {a!r}",
                    (a,),
                )
            )
        if i not in issue_set:
            violations.append(
                Violation(
                    "dangling-issue-for",
                    f"alternative {a!r} solves undeclared issue {i!r}",
                    (a, i),
                )
            )

    for a in model.alternatives:
        peers = model.compatible_with.get(a)
        if peers is None:
            violations.append(
                Violation(
                    "unknown-alternative",
                    f"compatibility omits declared alternative {a!r}",
                    (a,),
                )
            )
            continue
        if a not in peers:
            violations.append(
                Violation(
                    "compat-irreflexive",
                    f"alternative {a!r} is not compatible with itself",
                    (a,),
                )
            )
        for other in peers:
            if other not in alt_set:
                violations.append(
                    Violation(
                        "unknown-alternative",
                        f"compatibility of {a!r} names undeclared alternative {other!r}",
                        (a, other),
                    )
                )
                continue
            if a not in model.compatible_with.get(other, frozenset()):
                violations.append(
                    Violation(
                        "compat-asymmetric",
                        f"{other!r} is compatible with {a!r} but not vice versa",
                        (a, other),
                    )
                )
            if (
                other != a
                and model.issue_for.get(other) is not None
                and model.issue_for.get(other) == model.issue_for.get(a)
            ):
                violations.append(
                    Violation(
                        "same-issue-compatible",
                        f"{a!r} and {other!r} solve the same issue; the canonical "
                        "form keeps same-issue alternatives incompatible",
                        (a, other),
                    )
                )

    for a in model.alternatives:
        targets = model.triggered_by.get(a)
        if targets is None:
            violations.append(
                Violation(
                    "unknown-alternative",
                    f"trigger mapping omits declared alternative {a!r}",
                    (a,),
                )
            )
            continue
        for target in targets:
            if target not in issue_set:
                violations.append(
                    Violation(
                        "unknown-issue",
                        f"alternative {a!r} triggers undeclared issue {target!r}",
                        (a, target),
                    )
                )
            elif target == model.issue_for.get(a):
                violations.append(
                    Violation(
                        "self-trigger",
                        f"alternative {a!r} triggers its own issue {target!r}",
                        (a, target),
                    )
                )
    return ValidationReport(violations=tuple(violations))


def _lints(model: Model) -> tuple[Violation, ...]:
    lints = []
    for cycle in model.trigger_cycles():
        ordered = tuple(sorted(cycle, key=model.issue_index.__getitem__))
        lints.append(
            Violation(
                "trigger-cycle",
                "issues trigger each other in a cycle: " + " -> ".join(ordered),
                ordered,
            )
        )
    entry = set(model.entry_points())
    for issue in model.issues:
        if not model.alternatives_to(issue):
            hazard = (
                "no design can resolve it, so no design conforms"
                if issue in entry
                else "any design selecting a trigger of it cannot conform"
            )
            lints.append(
                Violation(
                    "unresolvable-issue",
                    f"issue {issue!r} has no alternatives; {hazard}",
                    (issue,),
                )
            )
    return tuple(lints)


def validate(obj: Union["ModelDocument", Model]) -> ValidationReport:
    """Check every well-formedness rule and report all violations.

    Accepts either a parsed document (reference checks, then the rules on the
    model it would build) or an already-constructed :class:`Model` value
    (useful for hand-built tuples).  A model returned by :func:`build_model`
    always validates clean.
    """
    if isinstance(obj, Model):
        report = _model_violations(obj)
        lints = _lints(obj) if report.well_formed else ()
        return ValidationReport(report.violations, lints)
    report = _document_violations(obj)
    if not report.well_formed:
        return report
    model = _assemble(obj)
    return ValidationReport((), _lints(model))


def _assemble(doc: "ModelDocument") -> Model:
    """Build the model tuple from a reference-checked document.

    Compatibility is authored negatively: the document lists incompatible
    cross-issue pairs and everything else cross-issue is compatible.  The
    stored relation is the complement, closed under symmetry, forced
    reflexive, and normalized so distinct same-issue alternatives are
    incompatible.
    """
    issues = tuple(i.id for i in doc.issues)
    alternatives = tuple(a.id for a in doc.alternatives)
    issue_for = {a.id: a.issue for a in doc.alternatives}
    triggered_by = {a.id: frozenset(a.triggers) for a in doc.alternatives}

    incompatible: dict[str, set[str]] = {a: set() for a in alternatives}
    for first, second in doc.incompatible:
        incompatible[first].add(second)
        incompatible[second].add(first)
    for a in alternatives:
        for peer in alternatives:
            if peer != a and issue_for[peer] == issue_for[a]:
                incompatible[a].add(peer)

    alt_set = frozenset(alternatives)
    compatible_with = {a: alt_set - frozenset(incompatible[a]) for a in alternatives}

    return Model(
        name=doc.name,
        issues=issues,
        alternatives=alternatives,
        issue_for=issue_for,
        compatible_with=compatible_with,
        triggered_by=triggered_by,
        issue_labels={i.id: i.label for i in doc.issues},
        alternative_labels={a.id: a.label for a in doc.alternatives},
    )


def build_model(doc: "ModelDocument") -> Model:
    """Construct a well-formed model from a document.

    Raises :class:`InvalidModelError` carrying the full violation list when
    any rule fails; lints alone do not block construction.
    """
    report = _document_violations(doc)
    if not report.well_formed:
        raise InvalidModelError(report)
    return _assemble(doc)

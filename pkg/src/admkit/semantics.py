"""Denotational semantics of decision models.

A *design* is a partial mapping from issues to alternatives.  A design
*conforms* to a model when four conditions hold:

- C1: every resolved issue is declared in the model;
- C2: each issue's solution is one of that issue's own alternatives;
- C3: any two selected alternatives are compatible;
- C4: an issue is resolved if and only if it is untriggered (an entry point)
  or some selected alternative triggers it.

The *meaning* of a model is the set of all conforming designs; a model is
*consistent* when its meaning is nonempty.

C4 is a biconditional, so when the trigger graph is cyclic a group of
mutually-triggered issues can justify each other with no chain back to an
entry point.  ``meaning_of`` includes such cycle-supported designs by
definition; ``well_founded_filter`` removes them for callers that want only
designs buildable by resolving issues as they appear.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from admkit.errors import ModelTooLargeError
from admkit.model import AlternativeId, IssueId, Model

AssignmentLike = Union["Design", Mapping[IssueId, AlternativeId]]

ORACLE_MAX_ISSUES = 8
ORACLE_MAX_ALTERNATIVES = 6


class Design(Mapping):
    """Immutable partial mapping from issues to selected alternatives.

    Equality and hashing depend only on the assignment, so meanings compare
    as sets; iteration follows sorted issue id for a stable repr.
    """

    __slots__ = ("_assignment",)

    def __init__(self, assignment: Union[AssignmentLike, None] = None):
        items = dict(assignment or {})
        self._assignment = {i: items[i] for i in sorted(items)}

    def __getitem__(self, issue: IssueId) -> AlternativeId:
        return self._assignment[issue]

    def __iter__(self):
        return iter(self._assignment)

    def __len__(self) -> int:
        return len(self._assignment)

    def __hash__(self) -> int:
        return hash(frozenset(self._assignment.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{i}={a}" for i, a in self._assignment.items())
        return f"Design({inner})"

    @property
    def resolved_issues(self) -> frozenset[IssueId]:
        """The domain: issues this design resolves."""
        return frozenset(self._assignment)

    @property
    def selected(self) -> frozenset[AlternativeId]:
        """The range: alternatives this design selects."""
        return frozenset(self._assignment.values())

    def assign(self, issue: IssueId, alternative: AlternativeId) -> "Design":
        return Design({**self._assignment, issue: alternative})

    def without(self, issue: IssueId) -> "Design":
        remaining = dict(self._assignment)
        remaining.pop(issue, None)
        return Design(remaining)

    def restricted_to(self, issues: frozenset[IssueId]) -> "Design":
        return Design({i: a for i, a in self._assignment.items() if i in issues})


@dataclass(frozen=True)
class ConformityViolation:
    """One failed conformity condition with the elements that witness it."""

    condition: str  # C1 | C2 | C3 | C4-missing | C4-extra
    message: str
    witnesses: tuple[str, ...]


@dataclass(frozen=True)
class ConformityReport:
    violations: tuple[ConformityViolation, ...] = ()

    @property
    def conforms(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Meaning:
    """A set of conforming designs in canonical order.

    ``truncated`` is True when enumeration stopped at a requested limit;
    only an untruncated meaning is guaranteed complete.
    """

    designs: tuple[Design, ...]
    truncated: bool = False

    @property
    def as_set(self) -> frozenset[Design]:
        return frozenset(self.designs)

    def __len__(self) -> int:
        return len(self.designs)

    def __iter__(self) -> Iterator[Design]:
        return iter(self.designs)


def conforms(design: AssignmentLike, model: Model) -> ConformityReport:
    """Check all four conformity conditions, reporting every violation.

    Nothing about ``design`` is assumed: unknown issues are C1 findings and
    mistyped solutions C2 findings rather than errors.  C3 is only evaluated
    between selections that C2 accepts, so one bad value does not cascade.
    """
    design = design if isinstance(design, Design) else Design(design)
    violations: list[ConformityViolation] = []
    issue_set = set(model.issues)

    for issue in design:
        if issue not in issue_set:
            violations.append(
                ConformityViolation(
                    "C1", f"issue {issue!r} is not defined in the model", (issue,)
                )
            )

    typed: dict[IssueId, AlternativeId] = {}
    for issue in design:
        if issue not in issue_set:
            continue
        alternative = design[issue]
        if alternative not in model.alternatives_to(issue):
            violations.append(
                ConformityViolation(
                    "C2",
                    f"{alternative!r} is not an alternative to issue {issue!r}",
                    (issue, alternative),
                )
            )
        else:
            typed[issue] = alternative

    seen_pairs: set[frozenset[AlternativeId]] = set()
    for first, second in itertools.combinations(sorted(typed), 2):
        a, b = typed[first], typed[second]
        if b not in model.compatible_with[a]:
            pair = frozenset((a, b))
            if pair not in seen_pairs:
                seen_pairs.add(pair)
                a, b = sorted((a, b), key=model.alternative_index.__getitem__)
                violations.append(
                    ConformityViolation(
                        "C3", f"{a!r} is incompatible with {b!r}", (a, b)
                    )
                )

    selected = {a for a in design.selected if a in model.alternative_index}
    entry = set(model.entry_points())
    for issue in model.issues:
        required = issue in entry or any(
            issue in model.triggered_by[a] for a in selected
        )
        if required and issue not in design:
            why = "an entry point" if issue in entry else "triggered by a selected alternative"
            violations.append(
                ConformityViolation(
                    "C4-missing", f"issue {issue!r} is {why} but unresolved", (issue,)
                )
            )
        elif not required and issue in design:
            violations.append(
                ConformityViolation(
                    "C4-extra",
                    f"issue {issue!r} is resolved but no selected alternative triggers it",
                    (issue,),
                )
            )
    return ConformityReport(tuple(violations))


def design_sort_key(model: Model, design: Design) -> tuple[int, ...]:
    """Canonical order: issue slots in declaration order, unresolved last."""
    absent = len(model.alternatives)
    return tuple(
        model.alternative_index[design[i]] if i in design else absent
        for i in model.issues
    )


def _conforming_designs(
    model: Model, pins: Optional[Mapping[IssueId, AlternativeId]] = None
) -> Iterator[Design]:
    """Yield every conforming design exactly once, in search order.

    Backtracking over a worklist seeded with the entry points: resolving an
    issue enqueues the issues its alternative triggers, and alternatives
    incompatible with a previous selection are pruned.  That reaches exactly
    the designs supported by founded trigger chains.  When the trigger graph
    is cyclic, each such core is additionally extended with every consistent
    self-supporting assignment over the cycle-reachable issues, which reaches
    the cycle-supported designs; the two parts partition any conforming
    design uniquely, so nothing is emitted twice.

    ``pins`` restricts the yield to designs containing the given assignment
    (callers still must drop designs that leave a pinned issue unresolved).
    """
    compat = model.compatible_with
    triggers = model.triggered_by
    index = model.issue_index
    entry = model.entry_points()
    in_cycle_reach = model.cycle_reachable_issues()

    def options(issue: IssueId) -> tuple[AlternativeId, ...]:
        candidates = model.alternatives_to(issue)
        if pins and issue in pins:
            pinned = pins[issue]
            return (pinned,) if pinned in candidates else ()
        return candidates

    def attachment_ok(core: dict, extra: dict) -> bool:
        chosen = set(extra.values())
        for issue, alternative in extra.items():
            if not any(issue in triggers[a] for a in chosen):
                return False
            for target in triggers[alternative]:
                if target not in core and target not in extra:
                    return False
        return True

    def complete_cycles(core: dict) -> Iterator[Design]:
        remaining = [i for i in model.issues if i in in_cycle_reach and i not in core]
        if not remaining:
            yield Design(core)
            return

        def extend(pos: int, extra: dict) -> Iterator[Design]:
            if pos == len(remaining):
                if attachment_ok(core, extra):
                    yield Design({**core, **extra})
                return
            issue = remaining[pos]
            if not (pins and issue in pins):
                yield from extend(pos + 1, extra)
            selected = list(core.values()) + list(extra.values())
            for alternative in options(issue):
                if all(alternative in compat[b] for b in selected):
                    yield from extend(pos + 1, {**extra, issue: alternative})

        yield from extend(0, {})

    def search(chosen: dict, pending: frozenset[IssueId]) -> Iterator[Design]:
        if not pending:
            yield from complete_cycles(chosen)
            return
        issue = min(pending, key=index.__getitem__)
        rest = pending - {issue}
        for alternative in options(issue):
            if all(alternative in compat[b] for b in chosen.values()):
                now = {**chosen, issue: alternative}
                yield from search(now, rest | (triggers[alternative] - now.keys()))

    yield from search({}, frozenset(entry))


def meaning_of(model: Model, limit: Optional[int] = None) -> Meaning:
    """Enumerate the conforming designs of a well-formed model.

    Designs come back in canonical order.  With ``limit``, enumeration stops
    once that many designs are found and the result is flagged truncated.
    Every emitted design is re-checked with :func:`conforms`, so soundness
    does not depend on the search strategy.
    """
    if limit is not None and limit <= 0:
        return Meaning((), truncated=True)
    found: list[Design] = []
    truncated = False
    for design in _conforming_designs(model):
        if not conforms(design, model).conforms:
            continue
        found.append(design)
        if limit is not None and len(found) >= limit:
            truncated = True
            break
    found.sort(key=lambda d: design_sort_key(model, d))
    return Meaning(tuple(found), truncated)


def is_consistent(model: Model) -> bool:
    """True when at least one conforming design exists (early-exit search)."""
    return any(
        conforms(design, model).conforms for design in _conforming_designs(model)
    )


def is_viable(model: Model, partial: AssignmentLike) -> bool:
    """True when some conforming design extends ``partial``.

    The empty assignment is viable exactly when the model is consistent.
    """
    partial = dict(partial)
    for design in _conforming_designs(model, pins=partial):
        if partial.items() <= dict(design).items() and conforms(design, model).conforms:
            return True
    return False


def brute_force_meaning(model: Model) -> Meaning:
    """Oracle enumeration: filter every candidate assignment through ``conforms``.

    Candidates are all partial functions giving each issue one of its own
    alternatives or leaving it unresolved.  Intentionally strategy-free so it
    can cross-check :func:`meaning_of`; guarded to at most
    ``ORACLE_MAX_ISSUES`` issues of ``ORACLE_MAX_ALTERNATIVES`` alternatives
    each, which caps the candidate space near 5.7M.
    """
    per_issue = [model.alternatives_to(i) for i in model.issues]
    if len(model.issues) > ORACLE_MAX_ISSUES:
        raise ModelTooLargeError(
            f"{len(model.issues)} issues exceed the oracle guard of {ORACLE_MAX_ISSUES}"
        )
    widest = max((len(alts) for alts in per_issue), default=0)
    if widest > ORACLE_MAX_ALTERNATIVES:
        raise ModelTooLargeError(
            f"an issue has {widest} alternatives, exceeding the oracle guard "
            f"of {ORACLE_MAX_ALTERNATIVES}"
        )
    found = []
    for candidate in itertools.product(*((None, *alts) for alts in per_issue)):
        assignment = {
            issue: alternative
            for issue, alternative in zip(model.issues, candidate)
            if alternative is not None
        }
        if conforms(assignment, model).conforms:
            found.append(Design(assignment))
    found.sort(key=lambda d: design_sort_key(model, d))
    return Meaning(tuple(found))


def founded_issues(model: Model, design: Design) -> frozenset[IssueId]:
    """Resolved issues reachable from entry points through selected alternatives."""
    supported = {i for i in model.entry_points() if i in design}
    grew = True
    while grew:
        grew = False
        for issue in design:
            if issue in supported or issue not in model.issue_index:
                continue
            for supporter in supported:
                if issue in model.triggered_by[design[supporter]]:
                    supported.add(issue)
                    grew = True
                    break
    return frozenset(supported)


def well_founded_filter(model: Model, meaning: Meaning) -> Meaning:
    """Drop designs whose resolved issues are not all founded.

    On a model with an acyclic trigger graph this is the identity: every
    conforming design's resolved issues trace back to entry points.
    """
    kept = tuple(
        d for d in meaning.designs if founded_issues(model, d) == d.resolved_issues
    )
    return Meaning(kept, meaning.truncated)

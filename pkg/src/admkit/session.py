"""Interactive decision sessions.

A session walks an architect through a model one issue at a time: entry
points are pending from the start, choosing an alternative resolves its
issue and makes the issues it triggers pending, and retracting a choice
cascades away any downstream choices it alone supported.

Sessions keep three invariants between operations:

- no issue is both resolved and pending;
- pending and resolved issues together are exactly the entry points plus
  the issues triggered by some chosen alternative;
- the accumulated choices always satisfy conformity conditions C1 to C3,
  and satisfy C4 exactly when nothing is pending.

A session is single-writer: callers must serialize mutations (the HTTP
service holds one lock per session); reads may run concurrently with each
other but not with a mutation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

from admkit.errors import SessionError
from admkit.model import AlternativeId, IssueId, Model
from admkit.semantics import Design, is_viable


@dataclass(frozen=True)
class HistoryEntry:
    """One applied mutation; retraction cascades append one entry per removal."""

    action: str  # choose | retract
    issue: IssueId
    alternative: AlternativeId
    at: float


@dataclass(frozen=True)
class SessionStatus:
    complete: bool
    viable: bool
    pending_count: int


class DecisionSession:
    """Stepwise resolution of a model's issues.

    Requires an acyclic trigger graph: the walk can only justify issues by
    chains back to entry points, so on a cyclic model it could never reach
    the cycle-supported part of the meaning.  Refusing up front keeps
    "complete session" equivalent to "conforming design".
    """

    def __init__(self, model: Model, clock: Callable[[], float] = time.time):
        if model.has_trigger_cycle():
            cycle = model.trigger_cycles()[0]
            raise SessionError(
                "cyclic-model",
                "sessions require an acyclic trigger graph; issues "
                + ", ".join(sorted(cycle, key=model.issue_index.__getitem__))
                + " trigger each other in a cycle",
                witnesses=tuple(sorted(cycle, key=model.issue_index.__getitem__)),
            )
        self._model = model
        self._clock = clock
        self._choices: dict[IssueId, AlternativeId] = {}
        self._pending: set[IssueId] = set(model.entry_points())
        self._history: list[HistoryEntry] = []

    @property
    def model(self) -> Model:
        return self._model

    @property
    def choices(self) -> Design:
        return Design(self._choices)

    @property
    def pending(self) -> tuple[IssueId, ...]:
        """Unresolved required issues, in declaration order."""
        return tuple(sorted(self._pending, key=self._model.issue_index.__getitem__))

    @property
    def history(self) -> tuple[HistoryEntry, ...]:
        return tuple(self._history)

    def allowed_alternatives(
        self, issue: IssueId
    ) -> tuple[tuple[AlternativeId, bool], ...]:
        """Choosable alternatives for a pending issue, each with a viability flag.

        Alternatives incompatible with an existing choice are omitted (they
        would be rejected anyway); the flag marks whether some conforming
        design extends the session's choices with that selection, letting a
        UI grey out choices that lead only to dead ends.
        """
        if issue not in self._pending:
            raise SessionError(
                "not-pending", self._not_pending_reason(issue), witnesses=(issue,)
            )
        chosen = self._choices.values()
        out = []
        for alternative in self._model.alternatives_to(issue):
            if all(alternative in self._model.compatible_with[b] for b in chosen):
                extended = {**self._choices, issue: alternative}
                out.append((alternative, is_viable(self._model, extended)))
        return tuple(out)

    def excluded_alternatives(
        self, issue: IssueId
    ) -> tuple[tuple[AlternativeId, AlternativeId], ...]:
        """Alternatives to a pending issue ruled out by an existing choice.

        Complements :meth:`allowed_alternatives`: together they partition the
        issue's alternatives.  Each excluded alternative is paired with the
        first chosen alternative (in declaration order) it is incompatible
        with, so a UI can disable the option and name the selection that
        blocks it.
        """
        if issue not in self._pending:
            raise SessionError(
                "not-pending", self._not_pending_reason(issue), witnesses=(issue,)
            )
        chosen = sorted(
            self._choices.values(), key=self._model.alternative_index.__getitem__
        )
        out = []
        for alternative in self._model.alternatives_to(issue):
            for prior in chosen:
                if alternative not in self._model.compatible_with[prior]:
                    out.append((alternative, prior))
                    break
        return tuple(out)

    def choose(self, issue: IssueId, alternative: AlternativeId) -> None:
        """Resolve a pending issue; issues the alternative triggers become pending.

        A choice incompatible with an existing one is rejected with the
        conflicting pair: such a conflict can never be repaired by later
        choices, so recording it would only create dead states.  A merely
        non-viable choice is accepted; viability is advisory.
        """
        if issue not in self._pending:
            raise SessionError(
                "not-pending", self._not_pending_reason(issue), witnesses=(issue,)
            )
        if alternative not in self._model.alternatives_to(issue):
            raise SessionError(
                "wrong-issue",
                f"{alternative!r} is not an alternative to issue {issue!r}",
                witnesses=(issue, alternative),
            )
        for prior in sorted(
            self._choices.values(), key=self._model.alternative_index.__getitem__
        ):
            if alternative not in self._model.compatible_with[prior]:
                raise SessionError(
                    "incompatible-choice",
                    f"{alternative!r} is incompatible with already-chosen {prior!r}",
                    witnesses=(prior, alternative),
                )
        self._choices[issue] = alternative
        self._pending.discard(issue)
        for triggered in self._model.triggered_by[alternative]:
            if triggered not in self._choices:
                self._pending.add(triggered)
        self._history.append(
            HistoryEntry("choose", issue, alternative, self._clock())
        )

    def retract(self, issue: IssueId) -> None:
        """Remove a choice, cascading away choices it alone supported.

        After removal, any resolved issue no longer reachable from the entry
        points through the remaining choices loses its choice too; issues
        that stay required but unresolved return to pending.  Every removal
        lands in the history, so nothing is silently discarded.
        """
        if issue not in self._choices:
            raise SessionError(
                "not-resolved", f"issue {issue!r} has no choice to retract", (issue,)
            )
        before = dict(self._choices)
        del self._choices[issue]
        while True:
            required = self._required_issues()
            orphaned = [i for i in self._choices if i not in required]
            if not orphaned:
                break
            for i in orphaned:
                del self._choices[i]
        self._pending = self._required_issues() - self._choices.keys()
        removed = [i for i in before if i not in self._choices]
        removed.sort(key=self._model.issue_index.__getitem__)
        removed.remove(issue)
        at = self._clock()
        for i in [issue, *removed]:
            self._history.append(HistoryEntry("retract", i, before[i], at))

    def status(self) -> SessionStatus:
        return SessionStatus(
            complete=not self._pending,
            viable=is_viable(self._model, self._choices),
            pending_count=len(self._pending),
        )

    def _required_issues(self) -> set[IssueId]:
        required = set(self._model.entry_points())
        for alternative in self._choices.values():
            required |= self._model.triggered_by[alternative]
        return required

    def _not_pending_reason(self, issue: IssueId) -> str:
        if issue not in self._model.issue_index:
            return f"issue {issue!r} is not defined in the model"
        if issue in self._choices:
            return f"issue {issue!r} is already resolved"
        return f"issue {issue!r} is not pending; nothing selected triggers it"

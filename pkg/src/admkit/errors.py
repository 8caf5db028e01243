"""Exception types shared across the toolkit."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from admkit.model import ValidationReport


class AdmError(Exception):
    """Base class for every error raised by this package."""


class ParseError(AdmError):
    """Structural problem in a model or design document.

    ``code`` is a stable machine-readable tag (``syntax``, ``schema``,
    ``duplicate-key``, ``duplicate-id``, ``pair-arity``); ``location`` is a
    line/column for syntax errors or a JSON path for schema errors.
    """

    def __init__(self, message: str, *, code: str = "schema", location: str | None = None):
        self.code = code
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class InvalidModelError(AdmError):
    """A model document or value failed well-formedness validation.

    Carries the full :class:`~admkit.model.ValidationReport`, not just the
    first violation.
    """

    def __init__(self, report: "ValidationReport"):
        self.report = report
        rules = ", ".join(v.rule for v in report.violations)
        super().__init__(f"model is not well-formed: {rules}")


class UnknownElementError(AdmError, KeyError):
    """An issue or alternative id was not declared in the model."""

    def __init__(self, kind: str, identifier: str):
        self.kind = kind
        self.identifier = identifier
        super().__init__(f"unknown {kind}: {identifier!r}")

    def __str__(self) -> str:  # KeyError would repr() the message
        return self.args[0]


class ModelTooLargeError(AdmError):
    """Exhaustive enumeration refused: the model exceeds the size guard."""


class ExportError(AdmError):
    """A design handed to an exporter does not conform to the model."""


class SessionError(AdmError):
    """A decision-session operation was rejected.

    ``code`` is one of ``cyclic-model``, ``not-pending``, ``wrong-issue``,
    ``incompatible-choice``, ``not-resolved``; ``witnesses`` names the
    offending elements (for ``incompatible-choice``: the already-selected
    alternative and the rejected one, in that order).
    """

    def __init__(self, code: str, message: str, witnesses: tuple[str, ...] = ()):
        self.code = code
        self.witnesses = witnesses
        super().__init__(message)

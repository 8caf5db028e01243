"""Toolkit for architectural decision models.

Validate models, compute derived relations, check designs for conformity,
enumerate a model's meaning, decide consistency, and drive interactive
decision sessions.  The :mod:`admkit.cli` and :mod:`admkit.service` modules
expose the same operations as a command line and an HTTP API; import
``admkit.service`` directly when you need it, since it pulls in the web
framework.
"""

from admkit.errors import (
    AdmError,
    ExportError,
    InvalidModelError,
    ModelTooLargeError,
    ParseError,
    SessionError,
    UnknownElementError,
)
from admkit.formats import (
    AlternativeDecl,
    IssueDecl,
    ModelDocument,
    bundled_model_path,
    design_document,
    document_from_model,
    export_designs,
    load_model,
    parse_design,
    parse_model,
    serialize_model,
)
from admkit.model import (
    Model,
    ValidationReport,
    Violation,
    build_model,
    validate,
)
from admkit.semantics import (
    ConformityReport,
    ConformityViolation,
    Design,
    Meaning,
    brute_force_meaning,
    conforms,
    is_consistent,
    is_viable,
    meaning_of,
    well_founded_filter,
)
from admkit.session import DecisionSession, HistoryEntry, SessionStatus

__version__ = "0.1.0"

__all__ = [
    "AdmError",
    "AlternativeDecl",
    "ConformityReport",
    "ConformityViolation",
    "DecisionSession",
    "Design",
    "ExportError",
    "HistoryEntry",
    "InvalidModelError",
    "IssueDecl",
    "Meaning",
    "Model",
    "ModelDocument",
    "ModelTooLargeError",
    "ParseError",
    "SessionError",
    "SessionStatus",
    "UnknownElementError",
    "ValidationReport",
    "Violation",
    "brute_force_meaning",
    "build_model",
    "bundled_model_path",
    "conforms",
    "design_document",
    "document_from_model",
    "export_designs",
    "is_consistent",
    "is_viable",
    "load_model",
    "meaning_of",
    "parse_design",
    "parse_model",
    "serialize_model",
    "validate",
    "well_founded_filter",
    "__version__",
]

"""Model and design documents: parsing, canonical serialization, export.

The on-disk model format is JSON with a fixed schema::

    {"name": str,
     "issues": [{"id": str, "label": str}],
     "alternatives": [{"id": str, "label": str, "issue": str, "triggers": [str]}],
     "incompatible": [[str, str]]}

Only *incompatible* cross-issue pairs are authored; every pair not listed is
compatible.  Same-issue alternatives never need listing: a design selects at
most one alternative per issue, so their compatibility is unobservable in any
design, and the builder normalizes them to incompatible.  The canonical form
is a serialization fixed point: keys in schema order, declarations in order,
labels and trigger lists explicit, pair members sorted, the pair list sorted
and deduplicated.

Parsing is purely structural; referential integrity is checked when the model
is built.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from admkit.errors import ExportError, ParseError
from admkit.model import Model, build_model
from admkit.semantics import Design, Meaning, conforms


@dataclass(frozen=True)
class IssueDecl:
    id: str
    label: str


@dataclass(frozen=True)
class AlternativeDecl:
    id: str
    label: str
    issue: str
    triggers: tuple[str, ...] = ()


@dataclass(frozen=True)
class ModelDocument:
    """Declarative description of a model, as authored on disk."""

    name: str
    issues: tuple[IssueDecl, ...] = ()
    alternatives: tuple[AlternativeDecl, ...] = ()
    incompatible: tuple[tuple[str, str], ...] = ()


def _reject_duplicate_keys(pairs: list[tuple[str, object]]) -> dict:
    mapping: dict[str, object] = {}
    for key, value in pairs:
        if key in mapping:
            raise ParseError(f"duplicate key {key!r}", code="duplicate-key")
        mapping[key] = value
    return mapping


def _load_json(text: Union[str, bytes]) -> object:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(
            exc.msg, code="syntax", location=f"line {exc.lineno} column {exc.colno}"
        ) from exc


def _expect_str(value: object, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise ParseError(f"expected a non-empty string at {where}", location=where)
    return value


def _expect_object(value: object, where: str, allowed: set[str], required: set[str]) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"expected an object at {where}", location=where)
    unknown = set(value) - allowed
    if unknown:
        raise ParseError(f"unknown key {sorted(unknown)[0]!r}", location=where)
    missing = required - set(value)
    if missing:
        raise ParseError(f"missing key {sorted(missing)[0]!r}", location=where)
    return value


def _expect_list(value: object, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"expected a list at {where}", location=where)
    return value


def parse_model(text: Union[str, bytes]) -> ModelDocument:
    """Parse model-document JSON, checking structure only.

    Duplicate object keys, duplicate declared ids, non-list collections, and
    incompatible pairs of arity other than two are rejected here; dangling
    references are not (see :func:`admkit.model.build_model`).
    """
    data = _expect_object(
        _load_json(text),
        "$",
        allowed={"name", "issues", "alternatives", "incompatible"},
        required={"name", "issues", "alternatives", "incompatible"},
    )
    name = _expect_str(data["name"], "$.name")

    issues = []
    for pos, entry in enumerate(_expect_list(data["issues"], "$.issues")):
        where = f"$.issues[{pos}]"
        obj = _expect_object(entry, where, allowed={"id", "label"}, required={"id"})
        identifier = _expect_str(obj["id"], f"{where}.id")
        label = _expect_str(obj["label"], f"{where}.label") if "label" in obj else identifier
        issues.append(IssueDecl(identifier, label))

    alternatives = []
    for pos, entry in enumerate(_expect_list(data["alternatives"], "$.alternatives")):
        where = f"$.alternatives[{pos}]"
        obj = _expect_object(
            entry, where, allowed={"id", "label", "issue", "triggers"}, required={"id", "issue"}
        )
        identifier = _expect_str(obj["id"], f"{where}.id")
        label = _expect_str(obj["label"], f"{where}.label") if "label" in obj else identifier
        issue = _expect_str(obj["issue"], f"{where}.issue")
        triggers = tuple(
            _expect_str(t, f"{where}.triggers[{k}]")
            for k, t in enumerate(_expect_list(obj.get("triggers", []), f"{where}.triggers"))
        )
        alternatives.append(AlternativeDecl(identifier, label, issue, triggers))

    pairs = []
    for pos, entry in enumerate(_expect_list(data["incompatible"], "$.incompatible")):
        where = f"$.incompatible[{pos}]"
        members = _expect_list(entry, where)
        if len(members) != 2:
            raise ParseError(
                f"incompatible pair must have exactly 2 members, got {len(members)}",
                code="pair-arity",
                location=where,
            )
        pairs.append((_expect_str(members[0], where), _expect_str(members[1], where)))

    declared: set[str] = set()
    for identifier in [i.id for i in issues] + [a.id for a in alternatives]:
        if identifier in declared:
            raise ParseError(f"duplicate id {identifier!r}", code="duplicate-id")
        declared.add(identifier)

    return ModelDocument(name, tuple(issues), tuple(alternatives), tuple(pairs))


def document_from_model(model: Model) -> ModelDocument:
    """Recover the authoring document: only cross-issue incompatibilities are emitted."""
    pairs = set()
    for a in model.alternatives:
        for other in model.incompatible_with(a):
            if model.issue_for[other] != model.issue_for[a]:
                pairs.add((a, other))
    return ModelDocument(
        name=model.name,
        issues=tuple(IssueDecl(i, model.issue_label(i)) for i in model.issues),
        alternatives=tuple(
            AlternativeDecl(
                a,
                model.alternative_label(a),
                model.issue_for[a],
                tuple(model.triggered_by[a]),
            )
            for a in model.alternatives
        ),
        incompatible=tuple(pairs),
    )


def serialize_model(doc_or_model: Union[ModelDocument, Model]) -> str:
    """Render the canonical document text (UTF-8, LF, trailing newline).

    Canonicalization is idempotent: parsing the output and serializing again
    reproduces the same bytes.
    """
    doc = doc_or_model if isinstance(doc_or_model, ModelDocument) else document_from_model(doc_or_model)
    issue_order = {decl.id: pos for pos, decl in enumerate(doc.issues)}

    def trigger_key(issue: str) -> tuple[int, str]:
        return (issue_order.get(issue, len(issue_order)), issue)

    pairs = sorted({tuple(sorted(pair)) for pair in doc.incompatible})
    payload = {
        "name": doc.name,
        "issues": [{"id": i.id, "label": i.label} for i in doc.issues],
        "alternatives": [
            {
                "id": a.id,
                "label": a.label,
                "issue": a.issue,
                "triggers": sorted(set(a.triggers), key=trigger_key),
            }
            for a in doc.alternatives
        ],
        "incompatible": [list(pair) for pair in pairs],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def parse_design(text: Union[str, bytes]) -> Design:
    """Parse a design document: a flat object mapping issue ids to alternative ids.

    A JSON ``null`` or the string ``"none"`` marks an issue explicitly
    unresolved; either is equivalent to omitting the issue.
    """
    data = _load_json(text)
    if not isinstance(data, dict):
        raise ParseError("design document must be a JSON object", location="$")
    assignment = {}
    for issue, alternative in data.items():
        if alternative is None or alternative == "none":
            continue
        if not isinstance(alternative, str):
            raise ParseError(
                f"expected an alternative id or null at $.{issue}", location=f"$.{issue}"
            )
        assignment[issue] = alternative
    return Design(assignment)


def design_document(model: Model, design: Design) -> dict[str, str]:
    """Design as a flat JSON-ready mapping, issues in declaration order."""
    known = [i for i in model.issues if i in design]
    extra = sorted(set(design) - set(model.issues))
    return {i: design[i] for i in known + extra}


def export_designs(model: Model, meaning: Meaning, format: str = "csv") -> str:
    """Render designs one per row under a header of issue labels.

    Issues appear in declaration order, unresolved issues print ``none``, and
    rows keep the order of ``meaning``.  ``csv`` quotes per RFC 4180 with LF
    line endings; ``table`` pads columns for reading.
    """
    if format not in ("csv", "table"):
        raise ValueError(f"unknown export format {format!r}")
    for design in meaning.designs:
        report = conforms(design, model)
        if not report.conforms:
            raise ExportError(
                f"design {dict(design)!r} does not conform: "
                + "; ".join(v.message for v in report.violations)
            )

    header = [model.issue_label(i) for i in model.issues]
    rows = [
        [model.alternative_label(d[i]) if i in d else "none" for i in model.issues]
        for d in meaning.designs
    ]
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return out.getvalue()
    widths = [
        max(len(header[col]), *(len(r[col]) for r in rows)) if rows else len(header[col])
        for col in range(len(header))
    ]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()
        for line in [header] + rows
    ]
    return "".join(line + "\n" for line in lines)


def bundled_model_path(name: str = "rapp") -> Path:
    """Filesystem path of a model document shipped with the package."""
    path = resources.files("admkit").joinpath("data", f"{name}.adm.json")
    with resources.as_file(path) as concrete:
        if not concrete.is_file():
            raise FileNotFoundError(f"no bundled model named {name!r}")
        return Path(concrete)


def load_model(path: Union[str, Path]) -> Model:
    """Read, parse, and build a model from a document file."""
    return build_model(parse_model(Path(path).read_text(encoding="utf-8")))

"""Acceptance suite: one test per primary criterion, one verdict line each.

Each test prints a single ``[PASS]``/``[FAIL]`` line straight to the
terminal (bypassing capture) so a full run shows the acceptance scorecard.
"""

import time
from contextlib import contextmanager

import pytest

from admkit import (
    AlternativeDecl,
    DecisionSession,
    Design,
    IssueDecl,
    Model,
    ModelDocument,
    brute_force_meaning,
    build_model,
    conforms,
    is_consistent,
    meaning_of,
    parse_model,
    serialize_model,
    validate,
)
from admkit.cli import main

from conftest import inconsistent_document
from corpus import random_documents

KNOWN_DESIGNS = [
    ("Platform based", "Local", "NAO", "ROS package", "C++"),
    ("Platform based", "Local", "NAO", "ROS package", "Python"),
    ("Platform based", "Local", "NAO", "Pure JavaScript", "none"),
    ("Platform based", "Local", "NAO", "Pure C++", "none"),
    ("Platform based", "Local", "Electron", "ROS package", "C++"),
    ("Platform based", "Local", "Electron", "ROS package", "Python"),
    ("Platform based", "Local", "Electron", "Pure C++", "none"),
    ("Platform based", "Global", "NAO", "ROS package", "C++"),
    ("Platform based", "Global", "NAO", "ROS package", "Python"),
    ("Platform based", "Global", "NAO", "Pure JavaScript", "none"),
    ("Platform based", "Global", "NAO", "Pure C++", "none"),
    ("Platform based", "Global", "Electron", "ROS package", "C++"),
    ("Platform based", "Global", "Electron", "ROS package", "Python"),
    ("Platform based", "Global", "Electron", "Pure C++", "none"),
    ("Stand-alone", "none", "ANG", "Pure JavaScript", "none"),
    ("Stand-alone", "none", "NAO", "ROS package", "C++"),
    ("Stand-alone", "none", "NAO", "ROS package", "Python"),
    ("Stand-alone", "none", "NAO", "Pure JavaScript", "none"),
    ("Stand-alone", "none", "NAO", "Pure C++", "none"),
    ("Stand-alone", "none", "Electron", "ROS package", "C++"),
    ("Stand-alone", "none", "Electron", "ROS package", "Python"),
    ("Stand-alone", "none", "Electron", "Pure C++", "none"),
]

CORPUS_BATCHES = ((20260814, False), (20260815, True))


def corpus_models():
    for seed, allow_cycles in CORPUS_BATCHES:
        for doc in random_documents(60, seed=seed, allow_cycles=allow_cycles):
            yield doc


@contextmanager
def criterion(capsys, name):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"[FAIL] {name}")
        raise
    elapsed = time.monotonic() - started
    with capsys.disabled():
        print(f"[PASS] {name} ({elapsed:.2f}s)")


def test_known_enumeration_reproduction(capsys, rapp_text, tmp_path, rapp):
    with criterion(capsys, "Known enumeration: the 22 designs, exact set, < 1 s"):
        model_path = tmp_path / "rapp.adm.json"
        model_path.write_text(rapp_text, encoding="utf-8")

        started = time.monotonic()
        assert main(["enumerate", str(model_path)]) == 0
        elapsed = time.monotonic() - started

        lines = capsys.readouterr().out.splitlines()
        header, rows = lines[0], lines[1:]
        assert header == (
            "RAPP app. type,RAPP platform,Robot type,Submission form,ROS language"
        )
        assert len(rows) == 22
        assert {tuple(r.split(",")) for r in rows} == set(KNOWN_DESIGNS)
        assert elapsed < 1.0, f"enumeration took {elapsed:.2f}s"


def test_oracle_equivalence(capsys):
    with criterion(
        capsys, "Oracle equivalence: 120 random models, meaning == brute force, < 60 s"
    ):
        started = time.monotonic()
        checked = cyclic = 0
        for doc in corpus_models():
            model = build_model(doc)
            assert validate(model).well_formed
            assert meaning_of(model).as_set == brute_force_meaning(model).as_set, doc.name
            checked += 1
            cyclic += model.has_trigger_cycle()
        elapsed = time.monotonic() - started
        assert checked >= 100
        assert cyclic >= 10, "corpus must exercise cyclic trigger graphs"
        assert checked - cyclic >= 10, "corpus must exercise acyclic trigger graphs"
        assert elapsed < 60.0, f"corpus run took {elapsed:.1f}s"


def test_consistency_coherence(capsys):
    with criterion(
        capsys, "Consistency coherence: isConsistent iff meaning nonempty, 120 models"
    ):
        for doc in corpus_models():
            model = build_model(doc)
            assert is_consistent(model) == bool(meaning_of(model).designs), doc.name


def test_validation_rules(capsys, rapp):
    with criterion(
        capsys, "Validation: each constraint fixture yields its rule id; RAPP clean"
    ):
        fixtures = {
            "self-trigger": ModelDocument(
                name="f",
                issues=(IssueDecl("I", "I"),),
                alternatives=(AlternativeDecl("A", "A", "I", ("I",)),),
            ),
            "dangling-issue-for": ModelDocument(
                name="f", alternatives=(AlternativeDecl("A", "A", "ghost"),)
            ),
            "unknown-issue": ModelDocument(
                name="f",
                issues=(IssueDecl("I", "I"),),
                alternatives=(AlternativeDecl("A", "A", "I", ("ghost",)),),
            ),
            "unknown-alternative": ModelDocument(
                name="f",
                issues=(IssueDecl("I", "I"),),
                alternatives=(AlternativeDecl("A", "A", "I"),),
                incompatible=(("A", "ghost"),),
            ),
            "duplicate-id": ModelDocument(
                name="f", issues=(IssueDecl("I", "a"), IssueDecl("I", "b"))
            ),
        }
        for expected_rule, doc in fixtures.items():
            report = validate(doc)
            assert [v.rule for v in report.violations] == [expected_rule], expected_rule

        asymmetric = Model(
            name="f",
            issues=("I", "J"),
            alternatives=("A", "B"),
            issue_for={"A": "I", "B": "J"},
            compatible_with={"A": frozenset("AB"), "B": frozenset("B")},
            triggered_by={"A": frozenset(), "B": frozenset()},
        )
        assert [v.rule for v in validate(asymmetric).violations] == [
            "compat-asymmetric"
        ]

        rapp_report = validate(rapp)
        assert rapp_report.well_formed and rapp_report.lints == ()


def test_forcing_theorem(capsys, rapp):
    with criterion(
        capsys,
        "Forcing theorem: held on corpus + RAPP; forcedBy(ANG) = {StandAlone, PureJavaScript}",
    ):
        assert rapp.forced_by("ANG") == frozenset({"StandAlone", "PureJavaScript"})
        models = [rapp] + [build_model(doc) for doc in corpus_models()]
        for model in models:
            for design in meaning_of(model):
                for chosen in design.selected:
                    for forced in model.forced_by(chosen):
                        issue = model.issue_for[forced]
                        if issue in design:
                            assert design[issue] == forced, (model.name, dict(design))


def test_inconsistent_model_fixture(capsys):
    with criterion(
        capsys, "Inconsistent fixture: empty meaning and isConsistent false"
    ):
        model = build_model(inconsistent_document())
        assert model.entry_points() == ("I1",)
        assert model.alternatives_to("I1") == ("A",)
        assert meaning_of(model).designs == ()
        assert not is_consistent(model)


def test_session_replay(capsys, rapp):
    with criterion(
        capsys,
        "Session replay: all 22 designs reachable; complete => conforms; retract undoes choose",
    ):
        meaning = meaning_of(rapp)
        assert len(meaning) == 22
        for design in meaning:
            session = DecisionSession(rapp)
            while session.pending:
                before = (dict(session.choices), session.pending)
                issue = session.pending[0]
                session.choose(issue, design[issue])
                session.retract(issue)
                assert (dict(session.choices), session.pending) == before
                session.choose(issue, design[issue])
            assert session.status().complete
            assert Design(dict(session.choices)) == design
            assert conforms(session.choices, rapp).conforms


def test_round_trip_and_export(capsys, rapp, rapp_text):
    with criterion(
        capsys,
        "Round-trip: serialize/parse fixed point (RAPP + 100 random); CSV header exact",
    ):
        assert serialize_model(parse_model(rapp_text)) == rapp_text

        count = 0
        for seed in (1, 2):
            for doc in random_documents(50, seed=seed, allow_cycles=bool(seed - 1)):
                text = serialize_model(doc)
                assert serialize_model(parse_model(text)) == text, doc.name
                count += 1
        assert count == 100

        from admkit import export_designs

        csv_text = export_designs(rapp, meaning_of(rapp), format="csv")
        lines = csv_text.splitlines()
        assert len(lines) == 23
        assert lines[0] == (
            "RAPP app. type,RAPP platform,Robot type,Submission form,ROS language"
        )

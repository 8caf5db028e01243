import pytest

from admkit import (
    AlternativeDecl,
    IssueDecl,
    Model,
    ModelDocument,
    build_model,
    bundled_model_path,
    load_model,
)


@pytest.fixture(scope="session")
def rapp() -> Model:
    return load_model(bundled_model_path())


@pytest.fixture(scope="session")
def rapp_text() -> str:
    return bundled_model_path().read_text(encoding="utf-8")


def inconsistent_document() -> ModelDocument:
    # sole entry alternative triggers an issue whose only alternative is
    # incompatible with it, so nothing conforms
    return ModelDocument(
        name="doomed",
        issues=(IssueDecl("I1", "First"), IssueDecl("I2", "Second")),
        alternatives=(
            AlternativeDecl("A", "Only A", "I1", ("I2",)),
            AlternativeDecl("B", "Only B", "I2"),
        ),
        incompatible=(("A", "B"),),
    )


def cycle_document() -> ModelDocument:
    # the two issues trigger each other and nothing else reaches them
    return ModelDocument(
        name="loop",
        issues=(IssueDecl("I1", "First"), IssueDecl("I2", "Second")),
        alternatives=(
            AlternativeDecl("A", "A", "I1", ("I2",)),
            AlternativeDecl("B", "B", "I2", ("I1",)),
        ),
    )


@pytest.fixture()
def inconsistent_model() -> Model:
    return build_model(inconsistent_document())


@pytest.fixture()
def cycle_model() -> Model:
    return build_model(cycle_document())


@pytest.fixture()
def empty_model() -> Model:
    return build_model(ModelDocument(name="empty"))

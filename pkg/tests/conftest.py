import pytest

from conceptqa.engine import bundled_fixture_dir, load_default_lexicon
from conceptqa.network import deserialize
from conceptqa.similarity import SimilarityConfig

FIXTURES = bundled_fixture_dir()


@pytest.fixture(scope="session")
def fixture_document() -> str:
    return (FIXTURES / "force_pressure.network.json").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def questions_document() -> str:
    return (FIXTURES / "force_pressure.questions.jsonl").read_text(encoding="utf-8")


@pytest.fixture()
def fixture_network(fixture_document):
    return deserialize(fixture_document)


@pytest.fixture(scope="session")
def lexicon():
    return load_default_lexicon()


@pytest.fixture()
def sim_config():
    return SimilarityConfig()

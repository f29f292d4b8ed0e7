import pytest

from dialect_forge.bundled import seed_corpus_path
from dialect_forge.lexicon import load_seed_lexicon
from dialect_forge.schema import read_records


@pytest.fixture(scope="session")
def lexicon():
    return load_seed_lexicon()


@pytest.fixture(scope="session")
def seed_records():
    with open(seed_corpus_path(), encoding="utf-8") as handle:
        return list(read_records(handle))

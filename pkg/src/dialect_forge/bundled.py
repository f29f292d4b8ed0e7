"""Paths to the data files shipped with the package."""
from importlib import resources
from pathlib import Path


def seed_lexicon_path() -> Path:
    return Path(resources.files("dialect_forge").joinpath("data/seed_lexicon.json"))


def seed_corpus_path() -> Path:
    return Path(resources.files("dialect_forge").joinpath("data/seed_corpus.jsonl"))

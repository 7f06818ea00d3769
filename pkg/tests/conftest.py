from pathlib import Path

import pytest

from netsumm import load_corpus
from netsumm.preprocess import load_resources

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def toy_path():
    return FIXTURES / "toy"


@pytest.fixture(scope="session")
def toy_corpus(toy_path):
    return load_corpus(toy_path)


@pytest.fixture(scope="session")
def en_res():
    return load_resources("en")

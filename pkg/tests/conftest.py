from pathlib import Path

import pytest

from codia import load_lexicon

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon((CORPUS / "coffee.lex").read_text())


@pytest.fixture(scope="session")
def golden_cnl():
    return (CORPUS / "coffee.cnl").read_text()


@pytest.fixture(scope="session")
def golden_alt_cnl():
    return (CORPUS / "coffee_alt.cnl").read_text()


@pytest.fixture(scope="session")
def golden_coml():
    return (CORPUS / "coffee.xml").read_text()


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS

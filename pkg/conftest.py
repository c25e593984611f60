import pytest

from legendrian_calculus.data import BUNDLED_CORPUS, Corpus


@pytest.fixture(scope="session")
def corpus() -> Corpus:
    return Corpus.load(str(BUNDLED_CORPUS))

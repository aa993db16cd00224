import numpy as np
import pytest
from hypothesis import settings


from corpus import full_corpus, mixed_sign_corpus, positive_corpus

# solver runs vary a lot in length; timing is not what these properties test
settings.register_profile("projdecomp", deadline=None)
settings.load_profile("projdecomp")


@pytest.fixture(scope="session")
def corpus():
    return full_corpus()


@pytest.fixture(scope="session")
def pos_corpus():
    return positive_corpus()


@pytest.fixture(scope="session")
def mixed_corpus():
    return mixed_sign_corpus()


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(1234))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)

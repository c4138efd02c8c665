import pytest

from curvstruct.corpus import load_corpus
from curvstruct.curvature import compute_curvature
from curvstruct.manifest import manifest_metric

_BUNDLES = {}


def corpus_bundle(name):
    if name not in _BUNDLES:
        _BUNDLES[name] = compute_curvature(manifest_metric(load_corpus(name)))
    return _BUNDLES[name]


@pytest.fixture(scope="session")
def example():
    return corpus_bundle("paper_example")


@pytest.fixture(scope="session")
def flat():
    return corpus_bundle("flat4")


@pytest.fixture(scope="session")
def sphere():
    return corpus_bundle("conformal4")


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[number])

import functools
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pimanifold import catalog  # noqa: E402
from pimanifold.verify import analyze, run_suites  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def catalog_instances():
    return tuple(catalog.build_catalog())


@functools.lru_cache(maxsize=None)
def analysis_of(instance):
    return analyze(instance)


@functools.lru_cache(maxsize=None)
def suites_of(instance):
    return tuple(run_suites(instance, "all", analysis_of(instance)))


@functools.lru_cache(maxsize=None)
def family(lam, mu):
    return catalog.build_para_sasaki_example(lam=Fraction(lam), mu=Fraction(mu))


@pytest.fixture(scope="session")
def example():
    """The para-Sasaki-like family at lambda = 1/2, mu = 1/3."""
    return family(Fraction(1, 2), Fraction(1, 3))


@pytest.fixture(scope="session")
def example_analysis(example):
    return analysis_of(example)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

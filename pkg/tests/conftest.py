from fractions import Fraction

import pytest

from quatcohom import ReportSession, load_corpus


@pytest.fixture(scope="session")
def ex1():
    return ReportSession(load_corpus("example1"))


@pytest.fixture(scope="session")
def ex2_half():
    return ReportSession(load_corpus("example2"), {"t": Fraction(1, 2)})


@pytest.fixture(scope="session")
def ex2_third():
    return ReportSession(load_corpus("example2"), {"t": Fraction(1, 3)})


@pytest.fixture(scope="session")
def ex3():
    return ReportSession(load_corpus("example3"))


@pytest.fixture(scope="session")
def torus():
    return ReportSession(load_corpus("torus8"))


@pytest.fixture(scope="session")
def corpus_sessions(ex1, torus, ex2_third, ex2_half, ex3):
    return [ex1, torus, ex2_third, ex2_half, ex3]

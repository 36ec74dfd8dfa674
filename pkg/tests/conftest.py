# tests/conftest.py

import os

import pytest

from incidence import from_signed_edges, load_graph

FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURE_DIR, f"{name}.json")


def _make_graph(name):
    return load_graph(fixture_path(name))


@pytest.fixture
def graph():
    """Loader for the committed fixture graphs: graph('k3'), graph('house_neg34'), ..."""
    return _make_graph


@pytest.fixture
def k3():
    return _make_graph("k3")


@pytest.fixture
def c4():
    return _make_graph("c4")


@pytest.fixture
def c5():
    return _make_graph("c5")


@pytest.fixture
def p3():
    return _make_graph("p3")


@pytest.fixture
def single_edge():
    return from_signed_edges(["a", "b"], [("a", "b", 1)])

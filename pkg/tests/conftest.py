import functools
from pathlib import Path

import pytest

from exactcat.pathalg import groebner_basis, parse_presentation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


@functools.lru_cache(maxsize=None)
def load_algebra(name: str):
    """Gröbner data of ``fixtures/<name>.quiver``, shared across tests."""
    return groebner_basis(parse_presentation(fixture_text(f"{name}.quiver")))


@functools.lru_cache(maxsize=None)
def load_tq(name: str):
    from exactcat.exstruct import translation_quiver

    return translation_quiver(load_algebra(name))


@pytest.fixture
def ex1():
    return load_algebra("ex1")


@pytest.fixture
def aus2():
    return load_algebra("aus2")

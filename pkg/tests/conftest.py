import pytest

from profmatch import parse_instance, preprocess

from helpers import I0_TEXT


@pytest.fixture(scope="session")
def i0():
    """The 8x8 textbook instance, parsed (already balanced and complete)."""
    return parse_instance(I0_TEXT)


@pytest.fixture(scope="session")
def i0_pre(i0):
    return preprocess(i0)

import os

import pytest

from preekit.pree import load_pree

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name + ".pree")


def load_fixture(name: str):
    with open(fixture_path(name)) as fh:
        return load_pree(fh.read())


@pytest.fixture(scope="session")
def zxz():
    return load_fixture("zxz")


@pytest.fixture(scope="session")
def s3():
    return load_fixture("s3")


@pytest.fixture(scope="session")
def z6():
    return load_fixture("z6")


@pytest.fixture(scope="session")
def q8():
    return load_fixture("q8")


@pytest.fixture(scope="session")
def taxicab():
    return load_fixture("taxicab")


@pytest.fixture(scope="session")
def cycle4():
    return load_fixture("cycle4")


@pytest.fixture(scope="session")
def cycle5():
    return load_fixture("cycle5")


def zxz_vector(p, w):
    """Independent oracle: letters are lattice vectors, words sum them.

    The group the zxz table presents is the integer plane, so a word is
    the identity exactly when its letter vectors cancel.
    """
    x = y = 0
    for a in w:
        nx, ny = p.name(a).strip("()").split(",")
        x += int(nx)
        y += int(ny)
    return x, y


def zxz_distance(x: int, y: int) -> int:
    """Word metric on the plane with unit axis steps and the two
    diagonal steps (1,1) and (-1,-1)."""
    if x * y >= 0:
        return max(abs(x), abs(y))
    return abs(x) + abs(y)


def table_fold(p, w):
    """Oracle for full tables: fold the word through the table."""
    e = p.identity
    for a in w:
        c = p.product(e, a)
        assert c is not None
        e = c
    return e


def all_words(p, length: int):
    letters = p.nonidentity()
    if length == 0:
        yield ()
        return
    for prefix in all_words(p, length - 1):
        for a in letters:
            yield prefix + (a,)

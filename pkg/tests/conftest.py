import pathlib

import pytest

from torikit import parse_fan

FAN_DIR = pathlib.Path(__file__).resolve().parent.parent / "fans"

SMOOTH_GOLDEN = ["affine_plane", "p1", "p2", "p1xp1", "hirzebruch1"]
COMPLETE_GOLDEN = ["p1", "p2", "p1xp1", "hirzebruch1"]


def load_fan(name):
    return parse_fan((FAN_DIR / f"{name}.fan").read_text())


@pytest.fixture(scope="session")
def golden_fans():
    return {name: load_fan(name) for name in SMOOTH_GOLDEN}


@pytest.fixture(scope="session")
def p2():
    return load_fan("p2")


@pytest.fixture(scope="session")
def p1xp1():
    return load_fan("p1xp1")


@pytest.fixture(scope="session")
def hirzebruch1():
    return load_fan("hirzebruch1")


@pytest.fixture(scope="session")
def affine_plane():
    return load_fan("affine_plane")


@pytest.fixture(scope="session")
def p1():
    return load_fan("p1")


@pytest.fixture(scope="session")
def a1_singular():
    return load_fan("a1_singular")

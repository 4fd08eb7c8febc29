"""Acceptance criteria A1-A10, one test each, with wall-time bounds."""

import pytest

from chowlimit import verify

BOUNDS = {"A1": 10, "A2": 30, "A3": 60, "A4": 120, "A5": 480, "A6": 120, "A7": 10, "A8": 120, "A9": 1, "A10": 1}


@pytest.fixture(scope="module", autouse=True)
def fresh_cache():
    verify._LIMITS.clear()
    yield


@pytest.mark.parametrize("name", list(verify.CRITERIA))
def test_criterion(name):
    res = verify.run_criterion(name, D=20)
    print(res.line())
    for f in res.failures[:10]:
        print("   ", f)
    assert res.bound == BOUNDS[name]
    assert not res.failures
    assert res.seconds < res.bound
    assert res.passed


def test_a8_covers_every_limit_of_a3_to_a6():
    names = set(verify.computed_limits())
    assert {"Z/2 wr Z/2", "Z/3 wr Z/3", "S4 p=2", "S3 p=3", "S5 p=3", "GL2(F7) p=3", "SL2(F7) p=3"} <= names

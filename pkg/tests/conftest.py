from fractions import Fraction

import pytest

from qiso.catalog import build

_CACHE = {}


def get_scenario(name, theta=None):
    """Build a scenario and run its suite once per session."""
    key = (name, theta)
    if key not in _CACHE:
        sc = build(name, theta)
        _CACHE[key] = (sc, sc.suite())
    return _CACHE[key]


@pytest.fixture(scope="session")
def scenario_cache():
    return get_scenario

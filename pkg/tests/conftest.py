import functools

import pytest

from symtc.dfield import d_map
from symtc.planners import RuleId


@functools.lru_cache(maxsize=None)
def cached_map(rule: RuleId, n: int):
    return d_map(rule, n)


@pytest.fixture(scope="session")
def dmaps():
    """Lazily built d-maps shared across the session, keyed by (rule, n)."""
    return cached_map

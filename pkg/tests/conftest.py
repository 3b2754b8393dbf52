import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from minorideals.polyring import GF32003, QQ, Ring

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_RING = Ring(("x", "y", "z"), QQ)
SMALL_GF = Ring(("x", "y", "z"), GF32003)


def exponents(n, max_exp=3):
    return st.tuples(*[st.integers(0, max_exp)] * n)


def polys(ring, max_terms=5, max_exp=3, coeffs=st.integers(-5, 5)):
    n = ring.nvars
    term = st.tuples(exponents(n, max_exp), coeffs)
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((ring.monomial(e, c) for e, c in ts), ring.zero())
    )


@pytest.fixture(scope="session")
def gb_cache(tmp_path_factory):
    from minorideals.groebner import GBCache

    return GBCache(tmp_path_factory.mktemp("gbcache"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[k])

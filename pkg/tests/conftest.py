from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lconvex.convex import build_space
from lconvex.fuzzy import Carrier, LSubset
from lconvex.lattice import named_lattice

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_LATTICES = ("boolean", "godel3", "lukasiewicz3")
ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request) -> dict:
    """Criterion number -> one-line verdict, printed at the end of the run."""
    return request.config.stash.setdefault(ACCEPTANCE, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])


@pytest.fixture(scope="session")
def boolean():
    return named_lattice("boolean")


@pytest.fixture(scope="session")
def g3():
    return named_lattice("godel3")


@pytest.fixture(scope="session")
def l3():
    return named_lattice("lukasiewicz3")


@pytest.fixture(scope="session")
def ab():
    return Carrier(("a", "b"))


def subset(carrier, lattice, *degrees) -> LSubset:
    return LSubset(carrier, lattice, tuple(degrees))


@st.composite
def lattices(draw, names=SMALL_LATTICES):
    return named_lattice(draw(st.sampled_from(names)))


@st.composite
def rows(draw, lattice, m):
    return np.array(draw(st.lists(st.integers(0, lattice.size - 1), min_size=m, max_size=m)), dtype=np.int64)


@st.composite
def spaces(draw, names=SMALL_LATTICES, max_points=3, max_generators=3):
    """A space generated by a few random L-subsets."""
    lat = draw(lattices(names))
    m = draw(st.integers(1, max_points))
    carrier = Carrier.of_size(m)
    gens = draw(st.lists(rows(lat, m), max_size=max_generators))
    return build_space(carrier, lat, [LSubset.from_array(carrier, lat, g) for g in gens], name="drawn")

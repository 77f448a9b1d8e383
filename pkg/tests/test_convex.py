import numpy as np
import pytest
from hypothesis import given

from lconvex import NotConvex
from lconvex.convex import (
    LConvexSpace,
    SpaceMap,
    build_space,
    compact_mask,
    discrete_space,
    hull,
    hull_image_characterization,
    hull_rows,
    indiscrete_space,
    is_compact,
    is_polytope,
    subspace,
    verify_space_axioms,
)
from lconvex.fuzzy import Carrier, all_rows, all_subsets, bottom, leq_rows, point, top
from lconvex.harness.theorems import hull_laws
from lconvex.sober import all_tables

from conftest import spaces, subset


@pytest.fixture
def chi_a(boolean, ab):
    return build_space(ab, boolean, [subset(ab, boolean, 1, 0)], name="S")


def test_build_space_examples(boolean, ab, chi_a):
    assert indiscrete_space(ab, boolean).rows.tolist() == [[0, 0], [1, 1]]
    assert build_space(ab, boolean).rows.tolist() == [[0, 0], [1, 1]]
    assert chi_a.rows.tolist() == [[0, 0], [1, 0], [1, 1]]
    assert len(build_space(ab, boolean, all_subsets(ab, boolean))) == 4


def test_axioms_pass_and_fail(boolean, ab, chi_a, g3):
    assert verify_space_axioms(chi_a).passed
    broken = LConvexSpace.from_rows(ab, boolean, [[0, 0], [1, 0], [0, 1]])
    rep = verify_space_axioms(broken)
    assert "C1" in rep.failed() and "C3" in rep.failed()
    one = Carrier(("a",))
    assert verify_space_axioms(LConvexSpace.from_rows(one, g3, [[0], [2]])).passed
    assert verify_space_axioms(LConvexSpace.from_rows(one, g3, [[0], [1], [2]])).passed


def test_c4_failure_detected(l3):
    # Lukasiewicz: 1/2 -> 0 = 1/2, so {0, 1} on one point misses the constant 1/2
    one = Carrier(("a",))
    rep = verify_space_axioms(LConvexSpace.from_rows(one, l3, [[0], [2]]))
    assert rep.failed() == ["C4"]


def test_hull_examples(boolean, ab, chi_a):
    assert hull(chi_a, point(ab, boolean, "b")) == top(ab, boolean)
    assert hull(chi_a, bottom(ab, boolean)) == bottom(ab, boolean)
    for m in chi_a.members:
        assert hull(chi_a, m) == m


def test_map_kinds(boolean, ab, chi_a):
    assert SpaceMap.from_table(chi_a, chi_a, [0, 1]).homeomorphism
    src = discrete_space(Carrier(("a",)), boolean)
    assert SpaceMap.from_table(src, chi_a, [0]).convexity_preserving
    const_b = SpaceMap.from_table(chi_a, chi_a, [1, 1])
    # preimages are constants 0, 0, 1: all members
    assert const_b.convexity_preserving
    assert not const_b.convex_to_convex        # image of chi_a is 1_b, not a member
    swap = SpaceMap.from_table(chi_a, chi_a, [1, 0])
    assert not swap.convexity_preserving
    v = hull_image_characterization(swap)
    assert not v and v.witness is not None


def test_compactness_and_polytopes(boolean, ab, chi_a):
    assert is_compact(chi_a, top(ab, boolean))
    assert not is_compact(chi_a, bottom(ab, boolean))
    assert compact_mask(chi_a, probe_bound=3).tolist() == [False, True, True]
    assert not is_polytope(chi_a, bottom(ab, boolean), exhaustive=True)
    v = is_polytope(chi_a, top(ab, boolean), exhaustive=True)
    assert v and hull(chi_a, v.witness) == top(ab, boolean)
    assert is_polytope(chi_a, hull(chi_a, point(ab, boolean, "b")))
    with pytest.raises(NotConvex):
        is_compact(chi_a, point(ab, boolean, "b"))


def test_subspace(boolean, chi_a):
    assert subspace(chi_a, ["a", "b"]) == chi_a
    assert subspace(chi_a, ["b"]).rows.tolist() == [[0], [1]]
    assert subspace(chi_a, ["a"]).rows.tolist() == [[0], [1]]


@given(spaces())
def test_hull_is_a_closure_operator(x):
    lat = x.lattice
    rows = all_rows(lat, x.size)
    h = hull_rows(x, rows)
    assert leq_rows(lat, rows, h).all()
    assert np.array_equal(hull_rows(x, h), h)
    mono = leq_rows(lat, rows[:, None, :], rows[None, :, :])
    assert (~mono | leq_rows(lat, h[:, None, :], h[None, :, :])).all()


@given(spaces())
def test_hull_laws(x):
    assert hull_laws(x, 10**6) > 0


@given(spaces())
def test_generated_spaces_satisfy_axioms(x):
    assert verify_space_axioms(x, directed_bound=3).passed


@given(spaces(max_points=2), spaces(max_points=2))
def test_convexity_preserving_iff_hull_characterization(x, y):
    if x.lattice != y.lattice:
        return
    for t in all_tables(y.size, x.size):
        f = SpaceMap.from_table(x, y, t)
        assert bool(f.convexity_preserving) == bool(hull_image_characterization(f))


@given(spaces())
def test_polytope_compact_nonempty_agree(x):
    lat = x.lattice
    rows = all_rows(lat, x.size)
    polys = set(map(tuple, hull_rows(x, rows[lat.join_reduce(rows, axis=1) == lat.top]).tolist()))
    assert polys == {tuple(r) for r, ne in zip(x.rows.tolist(), x.nonempty) if ne}
    assert np.array_equal(compact_mask(x, probe_bound=3), x.nonempty)

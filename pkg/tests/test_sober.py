import numpy as np
import pytest
from hypothesis import given

from lconvex import NotConvexityPreserving, NotSober
from lconvex.convex import SpaceMap, build_space, discrete_space, indiscrete_space
from lconvex.fuzzy import Carrier, LSubset, bottom, sub_matrix, top
from lconvex.sober import (
    compact_family,
    cp_space,
    extend_to_sobrification,
    f_closed_sets,
    f_closure,
    f_closure_oracle,
    is_f_closed,
    is_f_continuous,
    is_s0,
    is_sober,
    phi,
    phi_rows,
    sobrify,
)

from conftest import spaces, subset


@pytest.fixture
def chi_a(boolean, ab):
    return build_space(ab, boolean, [subset(ab, boolean, 1, 0)], name="S")


@pytest.fixture
def indiscrete(boolean, ab):
    return indiscrete_space(ab, boolean)


def test_compact_family(chi_a, indiscrete, boolean):
    assert compact_family(chi_a).rows.tolist() == [[1, 0], [1, 1]]
    assert compact_family(indiscrete).rows.tolist() == [[1, 1]]
    assert compact_family(discrete_space(Carrier(("a",)), boolean)).rows.tolist() == [[1]]


def test_phi_values(chi_a, boolean, ab):
    assert phi(chi_a, subset(ab, boolean, 1, 0)).degrees == (1, 0)
    assert phi(chi_a, top(ab, boolean)).degrees == (1, 1)
    assert phi(chi_a, bottom(ab, boolean)).degrees == (0, 0)
    cpx = cp_space(chi_a)
    assert cpx.rows.tolist() == [[0, 0], [1, 0], [1, 1]]


def test_sobriety_examples(chi_a, indiscrete, boolean):
    assert is_sober(chi_a, oracle=True)
    v = is_sober(indiscrete, oracle=True)
    assert not v
    assert v.witness.degrees == (1, 0)
    assert is_sober(discrete_space(Carrier(("a",)), boolean))
    assert is_s0(chi_a) and not is_s0(indiscrete)


def test_f_closure_examples(chi_a, indiscrete):
    assert is_f_closed(chi_a, [0, 1]) and is_f_closed(chi_a, [])
    assert f_closure(chi_a, [0]) == frozenset({0})
    assert f_closure(indiscrete, [0]) == frozenset({0, 1})
    assert is_f_continuous(SpaceMap.from_table(chi_a, chi_a, [0, 1]))


def test_sobrify_examples(chi_a, indiscrete):
    res = sobrify(indiscrete, oracle=True)
    assert res.xf_space.size == 1 and res.xi.table.tolist() == [0, 0]
    assert not res.xi.homeomorphism
    res = sobrify(chi_a, oracle=True)
    assert res.xi.homeomorphism and res.verdicts["finite_collapse"]
    assert [str(k) for k in res.provenance] == ["{a=1 b=0}", "{a=1 b=1}"]


def test_extension_examples(chi_a, indiscrete, boolean):
    one = discrete_space(Carrier(("o",)), boolean)
    ext = extend_to_sobrification(indiscrete, one, SpaceMap.from_table(indiscrete, one, [0, 0]))
    assert ext.unique and ext.map.table.tolist() == [0]
    res = sobrify(chi_a)
    ext = extend_to_sobrification(chi_a, res.xf_space, res.xi, res)
    assert ext.unique and ext.map.table.tolist() == [0, 1]


def test_extension_preconditions(chi_a, indiscrete):
    with pytest.raises(NotSober):
        extend_to_sobrification(chi_a, indiscrete, SpaceMap.from_table(chi_a, indiscrete, [0, 1]))
    with pytest.raises(NotConvexityPreserving):
        extend_to_sobrification(chi_a, chi_a, SpaceMap.from_table(chi_a, chi_a, [1, 0]))


def test_larger_lukasiewicz_space(l3):
    x = Carrier.of_size(3)
    half = l3.index_of("1/2")
    gens = [LSubset(x, l3, (2, half, 0)), LSubset(x, l3, (0, 2, half))]
    space = build_space(x, l3, gens)
    res = sobrify(space, oracle=True)
    assert res.xf_space.size == int(space.nonempty.sum())
    assert is_sober(res.cp, oracle=True)


@given(spaces())
def test_sober_fast_path_matches_definition(x):
    is_sober(x, oracle=True)


@given(spaces())
def test_sobrification_invariants(x):
    res = sobrify(x, oracle=True, check=True)
    assert is_sober(res.xf_space)
    again = sobrify(res.xf_space)
    assert again.xi.homeomorphism


@given(spaces())
def test_f_closure_matches_intersection_oracle(x):
    for pts in ([], [0], list(range(x.size))):
        assert f_closure(x, pts) == f_closure_oracle(x, pts)
    closed = set(f_closed_sets(x))
    assert all(a & b in closed for a in closed for b in closed)


@given(spaces(max_points=2), spaces(max_points=2))
def test_universal_property(x, z):
    if x.lattice != z.lattice or not is_sober(z):
        return
    res = sobrify(x)
    for t in np.ndindex(*([z.size] * x.size)):
        f = SpaceMap.from_table(x, z, list(t))
        if f.convexity_preserving:
            assert extend_to_sobrification(x, z, f, res).unique


@given(spaces())
def test_phi_preserves_sub(x):
    p = phi_rows(compact_family(x))
    assert np.array_equal(x.sub_members, sub_matrix(x.lattice, p, p))

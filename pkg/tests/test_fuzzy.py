
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lconvex import CarrierMismatch
from lconvex.fuzzy import (
    Carrier,
    CarrierMap,
    LSubset,
    all_rows,
    all_subsets,
    backward_rows,
    bottom,
    characteristic,
    constant,
    forward_rows,
    is_finite_subset,
    is_nonempty,
    join_family,
    meet_family,
    point,
    restrict,
    scale_residuum,
    scale_tensor,
    sub,
    sub_matrix,
    top,
    zadeh_backward,
    zadeh_forward,
)
from lconvex.lattice import make_product, named_lattice

from conftest import lattices, subset


def test_sub_spot_value(l3, ab):
    half = l3.index_of("1/2")
    assert sub(subset(ab, l3, 2, half), subset(ab, l3, half, 2)) == half


def test_sub_reflexive_and_bottom_below_everything(g3, ab):
    for a in all_subsets(ab, g3):
        assert sub(a, a) == g3.top
        assert sub(bottom(ab, g3), a) == g3.top


def test_sub_rejects_mismatched_carriers(boolean, ab):
    with pytest.raises(CarrierMismatch):
        sub(top(ab, boolean), top(Carrier(("a",)), boolean))


def test_zadeh_identity(g3, ab):
    ident = CarrierMap.identity(ab)
    for a in all_subsets(ab, g3):
        assert zadeh_forward(ident, a) == a
        assert zadeh_backward(ident, a) == a


def test_zadeh_constant_map_collects_join(g3):
    x, y = Carrier(("a", "b", "c")), Carrier(("p", "q"))
    f = CarrierMap(x, y, (1, 1, 1))
    half = g3.index_of("1/2")
    img = zadeh_forward(f, subset(x, g3, 0, half, 0))
    assert img.degrees == (0, half)


def test_adjunction_spot_value(boolean, ab):
    f = CarrierMap(ab, Carrier(("c",)), (0, 0))
    a, b = subset(ab, boolean, 1, 0), bottom(Carrier(("c",)), boolean)
    assert sub(zadeh_forward(f, a), b) == 0 == sub(a, zadeh_backward(f, b))


def test_is_nonempty(g3, ab):
    assert is_nonempty(point(ab, g3, "a"))
    assert not is_nonempty(constant(ab, g3, g3.index_of("1/2")))
    diamond = make_product(named_lattice("boolean"), named_lattice("boolean"))
    assert is_nonempty(subset(ab, diamond, diamond.labels.index("(1,0)"), diamond.labels.index("(0,1)")))


def test_pointwise_algebra(l3, ab):
    half = l3.index_of("1/2")
    a = subset(ab, l3, half, 2)
    assert scale_tensor(l3.top, a) == a
    assert scale_residuum(l3.bottom, a) == top(ab, l3)
    assert scale_tensor(half, constant(ab, l3, half)) == constant(ab, l3, 0)
    assert characteristic(ab, l3, ["b"]).degrees == (0, 2)
    assert restrict(a, ["b"]).degrees == (2,)
    assert meet_family([a, point(ab, l3, "a")]).degrees == (half, 0)
    assert join_family([a, point(ab, l3, "a")]).degrees == (2, 2)


def test_every_subset_is_finite_over_boolean(boolean, ab):
    for a in all_subsets(ab, boolean):
        v = is_finite_subset(a, probe_bound=3)
        assert v.finite and not v.violations and v.families_checked > 0


def test_characteristic_functions_finite_over_frame(g3):
    x = Carrier(("a", "b"))
    for pts in ([], ["a"], ["a", "b"]):
        assert is_finite_subset(characteristic(x, g3, pts))


def test_all_rows_enumerates_in_lexicographic_order(g3):
    r = all_rows(g3, 2)
    assert len(r) == 9 and r[0].tolist() == [0, 0] and r[-1].tolist() == [2, 2]
    assert [tuple(v) for v in r] == sorted(tuple(v) for v in r)


@pytest.mark.parametrize("name", ["boolean", "godel3", "lukasiewicz3"])
def test_sub_is_an_l_order_on_l_to_the_x(name):
    lat = named_lattice(name)
    r = all_rows(lat, 2)
    s = sub_matrix(lat, r, r)
    assert (np.diag(s) == lat.top).all()
    lhs = lat.tensor[s[:, :, None], s[None, :, :]]
    assert lat.leq[lhs, s[:, None, :]].all()
    both = lat.meet[s, s.T] == lat.top
    assert np.array_equal(both, np.eye(len(r), dtype=bool))


@given(lattices(), st.integers(1, 3), st.integers(1, 3), st.data())
def test_forward_image_is_left_adjoint(lat, mx, my, data):
    table = np.array(data.draw(st.lists(st.integers(0, my - 1), min_size=mx, max_size=mx)))
    a = np.array(data.draw(st.lists(st.integers(0, lat.size - 1), min_size=mx, max_size=mx)))
    b = np.array(data.draw(st.lists(st.integers(0, lat.size - 1), min_size=my, max_size=my)))
    fa = forward_rows(lat, table, my, a[None, :])
    fb = backward_rows(table, b[None, :])
    assert sub_matrix(lat, fa, b[None, :])[0, 0] == sub_matrix(lat, a[None, :], fb)[0, 0]


@given(lattices(), st.data())
def test_forward_image_scalar_matches_definition(lat, data):
    x, y = Carrier.of_size(3), Carrier.of_size(2)
    f = CarrierMap(x, y, tuple(data.draw(st.lists(st.integers(0, 1), min_size=3, max_size=3))))
    a = LSubset(x, lat, tuple(data.draw(st.lists(st.integers(0, lat.size - 1), min_size=3, max_size=3))))
    img = zadeh_forward(f, a)
    for q in range(2):
        assert img.degrees[q] == lat.join_all(a.degrees[p] for p in range(3) if f.table[p] == q)

import numpy as np
import pytest
from hypothesis import given

from lconvex import NotS0
from lconvex.convex import build_space, discrete_space, indiscrete_space, verify_space_axioms
from lconvex.fuzzy import Carrier, CarrierMap, all_rows, characteristic, constant
from lconvex.order import crisp_order, down, is_join_semilattice, lattice_order
from lconvex.scott import (
    completion,
    is_scott_convex,
    is_scott_cp,
    scott_convex_oracle_rows,
    scott_convex_rows,
    scott_cp_equivalence,
    scott_structure,
    sober_join_characterization,
    specialization,
    supremum_hull_check,
    verify_completion,
)
from lconvex.sober import cp_space, is_s0, is_sober

from conftest import spaces, subset


@pytest.fixture
def chain(boolean, ab):
    return crisp_order(ab, boolean, [[1, 1], [0, 1]], "chain")


@pytest.fixture
def antichain(boolean, ab):
    return crisp_order(ab, boolean, np.eye(2, dtype=bool), "antichain")


def test_specialization_examples(boolean, ab):
    x = build_space(ab, boolean, [subset(ab, boolean, 1, 0)])
    assert specialization(x).e.tolist() == [[1, 1], [0, 1]]
    assert specialization(discrete_space(ab, boolean)).e.tolist() == [[1, 0], [0, 1]]
    with pytest.raises(NotS0):
        specialization(indiscrete_space(ab, boolean))


def test_scott_structures(chain, antichain, g3):
    assert scott_structure(chain).rows.tolist() == [[0, 0], [1, 0], [1, 1]]
    assert len(scott_structure(antichain)) == 4
    el = scott_structure(lattice_order(g3), oracle=True)
    assert len(el) == 6
    p = lattice_order(g3)
    for x in range(p.size):
        assert down(p, x) in el


def test_scott_convex_sets(chain, boolean):
    assert is_scott_convex(chain, constant(chain.carrier, boolean, 0))
    assert is_scott_convex(chain, constant(chain.carrier, boolean, 1))
    assert not is_scott_convex(chain, characteristic(chain.carrier, boolean, ["b"]))


def test_scott_cp_examples(chain):
    assert is_scott_cp(CarrierMap.identity(chain.carrier), chain, chain)
    collapse = CarrierMap(chain.carrier, chain.carrier, (1, 1))
    assert is_scott_cp(collapse, chain, chain)
    assert scott_cp_equivalence(collapse, chain, chain)
    swap = is_scott_cp(CarrierMap(chain.carrier, chain.carrier, (1, 0)), chain, chain)
    assert not swap and swap.note == "not order-preserving"


def test_sober_join_examples(boolean, ab):
    x = build_space(ab, boolean, [subset(ab, boolean, 1, 0)])
    v = sober_join_characterization(x)
    assert v and v.details == {"sober": True, "join_semilattice": True, "scott_inclusion": True}
    assert sober_join_characterization(discrete_space(ab, boolean)).holds is False


def test_completion_examples(antichain, g3, boolean):
    comp = completion(antichain)
    assert comp.completion_order.size == 3
    assert is_join_semilattice(comp.completion_order)
    assert verify_completion(antichain, comp.completion_order, comp.xi)
    el = lattice_order(g3)
    assert verify_completion(el, el, CarrierMap.identity(el.carrier))
    one = crisp_order(Carrier(("o",)), boolean, [[1]])
    assert completion(one).completion_order.size == 1


def test_completion_rejects_non_scott_cp(chain):
    comp = completion(chain)
    q = comp.completion_order
    bad = [t for t in np.ndindex(q.size, q.size)
           if not is_scott_cp(CarrierMap(chain.carrier, q.carrier, t), chain, q)]
    assert bad
    for t in bad:
        assert not verify_completion(chain, q, CarrierMap(chain.carrier, q.carrier, t))


def test_lukasiewicz_antichain_completion(l3, ab):
    p = crisp_order(ab, l3, np.eye(2, dtype=bool), "antichain")
    comp = completion(p)
    assert comp.completion_order.size == 5
    assert verify_completion(p, comp.completion_order, comp.xi)


@given(spaces())
def test_specialization_inverts_scott_structure(x):
    if not is_s0(x):
        return
    p = specialization(x)
    assert np.array_equal(specialization(scott_structure(p)).e, p.e)


@given(spaces())
def test_sober_members_are_scott_convex(x):
    if not is_sober(x):
        return
    p = specialization(x)
    assert scott_convex_rows(p, x.rows).all()
    assert supremum_hull_check(x)


@given(spaces())
def test_scott_fast_path_matches_definition(x):
    if not is_s0(x):
        return
    p = specialization(x)
    rows = all_rows(p.lattice, p.size)
    assert np.array_equal(scott_convex_rows(p, rows), scott_convex_oracle_rows(p, rows))


@given(spaces())
def test_cp_space_satisfies_both_sides(x):
    v = sober_join_characterization(cp_space(x))
    assert v.details == {"sober": True, "join_semilattice": True, "scott_inclusion": True}


@given(spaces())
def test_scott_structure_is_a_convex_structure(x):
    if not is_s0(x):
        return
    assert verify_space_axioms(scott_structure(specialization(x)), 2).passed

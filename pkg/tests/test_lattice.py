from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lconvex import NotALattice, NotAMonoid, NotDistributive
from lconvex._common import InvalidSize
from lconvex.lattice import (
    boolean,
    build_lattice,
    make_chain,
    make_product,
    named_lattice,
    verify_lattice_laws,
)


def chain_oracle(n: int, kind: str):
    """Closed-form t-norm and implication on {0, 1/(n-1), ..., 1}."""
    vals = [Fraction(i, n - 1) for i in range(n)]
    if kind == "godel":
        mul = lambda a, b: min(a, b)
        imp = lambda a, b: Fraction(1) if a <= b else b
    else:
        mul = lambda a, b: max(Fraction(0), a + b - 1)
        imp = lambda a, b: min(Fraction(1), 1 - a + b)
    idx = {v: i for i, v in enumerate(vals)}
    tensor = [[idx[mul(a, b)] for b in vals] for a in vals]
    res = [[idx[imp(a, b)] for b in vals] for a in vals]
    return np.array(tensor), np.array(res)


@pytest.mark.parametrize("kind", ["godel", "lukasiewicz"])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_chain_tables_match_closed_forms(n, kind):
    lat = make_chain(n, kind)
    tensor, res = chain_oracle(n, kind)
    assert np.array_equal(lat.tensor, tensor)
    assert np.array_equal(lat.residuum_table, res)


def test_boolean_residuum_is_classical_implication():
    lat = boolean()
    assert lat.residuum_table.tolist() == [[1, 1], [0, 1]]
    assert lat.residuum(1, 0) == 0


def test_lukasiewicz3_spot_values(l3):
    half = l3.index_of("1/2")
    assert l3.residuum(half, 0) == half
    assert l3.residuum(half, half) == l3.top
    assert l3.mul(half, half) == 0
    assert l3.mul(half, l3.residuum(half, 0)) == 0


def test_godel3_spot_values(g3):
    half = g3.index_of("1/2")
    assert g3.mul(half, half) == half
    assert g3.residuum(g3.top, half) == half


def test_residuum_of_top_is_identity():
    for name in ("boolean", "godel4", "lukasiewicz5", "booleanxgodel3"):
        lat = named_lattice(name)
        assert all(lat.residuum(lat.top, a) == a for a in lat.elements)


def test_product_boolean_boolean_is_diamond():
    d = make_product(boolean(), boolean())
    assert d.size == 4
    assert not d.is_chain
    assert d.tensor.tolist() == d.meet.tolist()


def test_product_boolean_godel3(g3):
    p = make_product(boolean(), g3)
    assert p.size == 6
    assert p.labels[p.top] == "(1,1)"
    a, b = p.labels.index("(1,0)"), p.labels.index("(0,1)")
    assert not p.le(a, b) and not p.le(b, a)


@pytest.mark.parametrize("name", ["boolean", "godel3", "godel4", "godel5", "lukasiewicz3", "lukasiewicz4",
                                  "lukasiewicz5", "booleanxgodel3"])
def test_all_six_laws_hold(name):
    rep = verify_lattice_laws(named_lattice(name))
    assert rep.passed, rep.format()
    assert [r.law for r in rep.results] == ["1", "2", "3", "4", "5", "6"]


def test_godel4_law_four_covers_every_triple():
    rep = verify_lattice_laws(named_lattice("godel4"))
    assert rep.results[3].checked == 64


def test_non_monotone_tensor_rejected():
    leq = np.arange(3)[:, None] <= np.arange(3)[None, :]
    tensor = [[0, 0, 0], [0, 2, 1], [0, 1, 2]]
    with pytest.raises(NotAMonoid):
        build_lattice(leq, tensor)


def test_non_associative_tensor_rejected():
    leq = np.arange(4)[:, None] <= np.arange(4)[None, :]
    # monotone and commutative with unit 3, but (1*2)*2 = 1 while 1*(2*2) = 0
    tensor = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 1, 2], [0, 1, 2, 3]]
    with pytest.raises(NotAMonoid):
        build_lattice(leq, tensor)


def test_missing_join_rejected():
    # two incomparable maximal elements: no top
    leq = np.array([[1, 1, 1], [0, 1, 0], [0, 0, 1]], dtype=bool)
    with pytest.raises(NotALattice):
        build_lattice(leq, np.zeros((3, 3), dtype=int))


def test_meet_on_diamond_m3_is_not_distributive():
    # M3: bottom 0, atoms 1 2 3, top 4
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    meet = [[0] * 5, [0, 1, 0, 0, 1], [0, 0, 2, 0, 2], [0, 0, 0, 3, 3], [0, 1, 2, 3, 4]]
    with pytest.raises(NotDistributive):
        build_lattice(leq, meet)


def test_chain_needs_two_elements():
    with pytest.raises(InvalidSize):
        make_chain(1)


@given(st.sampled_from(["boolean", "godel3", "godel5", "lukasiewicz4", "booleanxgodel3"]), st.data())
def test_residuation_adjunction(name, data):
    lat = named_lattice(name)
    a, b, c = (data.draw(st.integers(0, lat.size - 1)) for _ in range(3))
    assert lat.le(lat.mul(a, b), c) == lat.le(b, lat.residuum(a, c))
    assert (lat.residuum(a, b) == lat.top) == lat.le(a, b)

"""Finite L-ordered sets: E1-E3, lower/upper sets, suprema and infima."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import fuzzy
from ._common import (
    SCAN_BUDGET,
    CarrierMismatch,
    E1Violation,
    E2Violation,
    E3Violation,
    InvariantViolation,
    LatticeMismatch,
    Verdict,
)
from .fuzzy import Carrier, CarrierMap, LSubset
from .lattice import ResiduatedLattice


@dataclass(frozen=True, eq=False)
class LOrderedSet:
    carrier: Carrier
    lattice: ResiduatedLattice
    e: np.ndarray
    name: str = "P"

    @property
    def size(self) -> int:
        return self.carrier.size

    def degree(self, x: str | int, y: str | int) -> int:
        return int(self.e[self.carrier.index(x), self.carrier.index(y)])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LOrderedSet)
            and self.carrier == other.carrier
            and self.lattice == other.lattice
            and np.array_equal(self.e, other.e)
        )

    def __hash__(self) -> int:
        return hash((self.carrier, self.lattice, self.e.tobytes()))

    def __repr__(self) -> str:
        return f"LOrderedSet({self.name!r}, {self.carrier.labels}, over {self.lattice.name})"

    @cached_property
    def _row_lookup(self) -> dict[bytes, int]:
        return {self.e[x].tobytes(): x for x in range(self.size)}

    @cached_property
    def _col_lookup(self) -> dict[bytes, int]:
        et = np.ascontiguousarray(self.e.T)
        return {et[x].tobytes(): x for x in range(self.size)}


def build_order(carrier: Carrier, lattice: ResiduatedLattice, e, name: str = "P") -> LOrderedSet:
    """Validate E1-E3 and return the L-ordered set."""
    e = np.array(e, dtype=np.int64)
    m = carrier.size
    if e.shape != (m, m):
        raise CarrierMismatch(f"order matrix shape {e.shape} does not match carrier size {m}")
    for x in range(m):
        if e[x, x] != lattice.top:
            raise E1Violation(f"e({carrier.labels[x]},{carrier.labels[x]}) is not top", witness=(x,))
    lhs = lattice.tensor[e[:, :, None], e[None, :, :]]       # e(x,y)*e(y,z) at [x, y, z]
    ok = lattice.leq[lhs, e[:, None, :]]
    if not ok.all():
        x, y, z = (int(v) for v in np.argwhere(~ok)[0])
        raise E2Violation(f"e(x,y)*e(y,z) > e(x,z) at {(x, y, z)}", witness=(x, y, z))
    both = lattice.meet[e, e.T] == lattice.top
    np.fill_diagonal(both, False)
    if both.any():
        x, y = (int(v) for v in np.argwhere(both)[0])
        raise E3Violation(f"e(x,y) and e(y,x) are top for distinct {(x, y)}", witness=(x, y))
    e.setflags(write=False)
    return LOrderedSet(carrier, lattice, e, name)


def lattice_order(lattice: ResiduatedLattice) -> LOrderedSet:
    """(L, e_L) with e_L(x, y) = x -> y."""
    labels = [lattice.label(a) for a in lattice.elements]
    return build_order(Carrier(tuple(labels)), lattice, lattice.residuum_table, name=f"e_{lattice.name}")


def crisp_order(carrier: Carrier, lattice: ResiduatedLattice, leq, name: str = "P") -> LOrderedSet:
    """Embed a crisp partial order: top where x <= y, bottom elsewhere."""
    leq = np.asarray(leq, dtype=bool)
    return build_order(carrier, lattice, np.where(leq, lattice.top, lattice.bottom), name)


def down(p: LOrderedSet, x: str | int) -> LSubset:
    return LSubset.from_array(p.carrier, p.lattice, p.e[:, p.carrier.index(x)])


def up(p: LOrderedSet, x: str | int) -> LSubset:
    return LSubset.from_array(p.carrier, p.lattice, p.e[p.carrier.index(x), :])


def _lower_rows(p: LOrderedSet, rows: np.ndarray) -> np.ndarray:
    # S(x) * e(y, x) <= S(y) for all x, y
    lat = p.lattice
    lhs = lat.tensor[rows[..., None, :], p.e]             # S(x) * e(y, x) at [.., y, x]
    return lat.leq[lhs, rows[..., :, None]].all(axis=(-1, -2))


def _upper_rows(p: LOrderedSet, rows: np.ndarray) -> np.ndarray:
    lat = p.lattice
    lhs = lat.tensor[rows[..., None, :], p.e.T]           # S(x) * e(x, y) at [.., y, x]
    return lat.leq[lhs, rows[..., :, None]].all(axis=(-1, -2))


def is_lower_set(p: LOrderedSet, s: LSubset) -> bool:
    _check(p, s)
    return bool(_lower_rows(p, s.vec))


def is_upper_set(p: LOrderedSet, s: LSubset) -> bool:
    _check(p, s)
    return bool(_upper_rows(p, s.vec))


def _check(p: LOrderedSet, s: LSubset) -> None:
    if s.carrier != p.carrier:
        raise CarrierMismatch("L-subset is not on the ordered set's carrier")
    if s.lattice != p.lattice:
        raise LatticeMismatch("L-subset and order use different lattices")


def supremum_rows(p: LOrderedSet, rows: np.ndarray) -> np.ndarray:
    """Index of the supremum of each row, or -1 where none exists.

    Candidate rows are matched against the defining equation
    e(x, y) = sub(A, down y) for every y.
    """
    lat = p.lattice
    rows = np.atleast_2d(rows)
    target = lat.meet_reduce(lat.residuum_table[rows[:, :, None], p.e[None, :, :]], axis=1)
    return _match(target, p._row_lookup)


def infimum_rows(p: LOrderedSet, rows: np.ndarray) -> np.ndarray:
    """Index x with e(y, x) = sub(A, up y) for every y, or -1."""
    lat = p.lattice
    rows = np.atleast_2d(rows)
    target = lat.meet_reduce(lat.residuum_table[rows[:, :, None], p.e.T[None, :, :]], axis=1)
    return _match(target, p._col_lookup)


def _match(target: np.ndarray, lookup: dict[bytes, int]) -> np.ndarray:
    target = np.ascontiguousarray(target, dtype=np.int64)
    return np.fromiter((lookup.get(t.tobytes(), -1) for t in target), dtype=np.int64, count=len(target))


def _scan_candidates(p: LOrderedSet, a: LSubset, dual: bool) -> int | None:
    # Definitional scan over all candidates; used for the scalar API.
    e = p.e.T if dual else p.e
    want = [fuzzy.sub(a, up(p, y) if dual else down(p, y)) for y in range(p.size)]
    hits = [x for x in range(p.size) if all(int(e[x, y]) == want[y] for y in range(p.size))]
    if len(hits) > 1:
        raise InvariantViolation(f"several suprema {hits}: E3 is broken", witness=hits)
    return hits[0] if hits else None


def supremum(p: LOrderedSet, a: LSubset) -> int | None:
    _check(p, a)
    return _scan_candidates(p, a, dual=False)


def infimum(p: LOrderedSet, a: LSubset) -> int | None:
    _check(p, a)
    return _scan_candidates(p, a, dual=True)


def is_order_preserving(f: CarrierMap, p: LOrderedSet, q: LOrderedSet) -> bool:
    t = f.array
    return bool(p.lattice.leq[p.e, q.e[t[:, None], t[None, :]]].all())


def is_order_isomorphism(f: CarrierMap, p: LOrderedSet, q: LOrderedSet) -> bool:
    t = f.array
    return f.is_bijective and bool(np.array_equal(p.e, q.e[t[:, None], t[None, :]]))


def nonempty_subset_rows(p: LOrderedSet, budget: int | None = SCAN_BUDGET) -> np.ndarray:
    rows = fuzzy.all_rows(p.lattice, p.size, budget)
    return rows[fuzzy.nonempty_rows(p.lattice, rows)]


def is_join_semilattice(p: LOrderedSet, budget: int | None = SCAN_BUDGET) -> Verdict:
    """Every nonempty L-subset has a supremum; witness is one that has none."""
    rows = nonempty_subset_rows(p, budget)
    sups = supremum_rows(p, rows)
    missing = np.flatnonzero(sups < 0)
    if len(missing):
        return Verdict(False, LSubset.from_array(p.carrier, p.lattice, rows[missing[0]]),
                       details={"without_supremum": int(len(missing)), "checked": int(len(rows))})
    return Verdict(True, details={"checked": int(len(rows))})


def inclusion_order_space(carrier: Carrier, lattice: ResiduatedLattice,
                          budget: int | None = SCAN_BUDGET) -> LOrderedSet:
    """All of L^X ordered by sub; points are labelled by their degree vectors."""
    rows = fuzzy.all_rows(lattice, carrier.size, budget)
    labels = tuple(degree_label(lattice, r) for r in rows)
    e = fuzzy.sub_matrix(lattice, rows, rows)
    return build_order(Carrier(labels), lattice, e, name=f"L^{{{','.join(carrier.labels)}}}")


def degree_label(lattice: ResiduatedLattice, row) -> str:
    return "[" + ",".join(lattice.label(int(d)) for d in row) + "]"

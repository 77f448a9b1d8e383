"""L-subsets of finite carriers.

An :class:`LSubset` is an immutable degree vector over a :class:`Carrier`.
Most heavy lifting elsewhere works on numpy arrays of shape ``(..., m)``;
the ``*_rows`` helpers here are the vectorised counterparts of the scalar
operations and are what the other modules call in their inner loops.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

import numpy as np

from ._common import SCAN_BUDGET, CarrierMismatch, LatticeMismatch, check_budget
from .lattice import ResiduatedLattice


@dataclass(frozen=True)
class Carrier:
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"carrier labels are not distinct: {self.labels}")

    @classmethod
    def of_size(cls, m: int, prefix: str = "x") -> "Carrier":
        if m <= 26 and prefix == "x":
            return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:m]))
        return cls(tuple(f"{prefix}{i}" for i in range(m)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str | int) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.size:
                raise IndexError(label)
            return int(label)
        return self.labels.index(label)

    def indices(self, points: Iterable[str | int]) -> list[int]:
        return [self.index(p) for p in points]


@dataclass(frozen=True)
class LSubset:
    """A map from a finite carrier into a finite residuated lattice."""

    carrier: Carrier
    lattice: ResiduatedLattice
    degrees: tuple[int, ...]

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if len(degrees) != self.carrier.size:
            raise CarrierMismatch(f"{len(degrees)} degrees for a carrier of size {self.carrier.size}")
        if any(not 0 <= d < self.lattice.size for d in degrees):
            raise ValueError(f"degree out of range in {degrees}")

    @classmethod
    def from_array(cls, carrier: Carrier, lattice: ResiduatedLattice, row) -> "LSubset":
        return cls(carrier, lattice, tuple(np.asarray(row).tolist()))

    @cached_property
    def vec(self) -> np.ndarray:
        v = np.array(self.degrees, dtype=np.int64)
        v.setflags(write=False)
        return v

    def __getitem__(self, point: str | int) -> int:
        return self.degrees[self.carrier.index(point)]

    def __le__(self, other: "LSubset") -> bool:
        _same(self, other)
        return bool(self.lattice.leq[self.vec, other.vec].all())

    def __str__(self) -> str:
        body = " ".join(f"{x}={self.lattice.label(d)}" for x, d in zip(self.carrier.labels, self.degrees))
        return "{" + body + "}"


@dataclass(frozen=True)
class CarrierMap:
    source: Carrier
    target: Carrier
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(t) for t in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.source.size or any(not 0 <= t < self.target.size for t in table):
            raise CarrierMismatch(f"map table {table} does not fit {self.source.size} -> {self.target.size}")

    @classmethod
    def from_dict(cls, source: Carrier, target: Carrier, mapping: dict) -> "CarrierMap":
        return cls(source, target, tuple(target.index(mapping[x]) for x in source.labels))

    @classmethod
    def identity(cls, carrier: Carrier) -> "CarrierMap":
        return cls(carrier, carrier, tuple(range(carrier.size)))

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def __call__(self, x: int) -> int:
        return self.table[x]

    def compose(self, inner: "CarrierMap") -> "CarrierMap":
        """self o inner."""
        if inner.target != self.source:
            raise CarrierMismatch("maps are not composable")
        return CarrierMap(inner.source, self.target, tuple(self.table[t] for t in inner.table))

    @property
    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.table)) == self.target.size


def _same(a: LSubset, b: LSubset) -> None:
    if a.lattice != b.lattice:
        raise LatticeMismatch(f"degrees from lattices {a.lattice.name} and {b.lattice.name} mixed")
    if a.carrier != b.carrier:
        raise CarrierMismatch(f"carriers {a.carrier.labels} and {b.carrier.labels} differ")


# ------------------------------------------------------------------ arrays
def all_rows(lattice: ResiduatedLattice, m: int, budget: int | None = SCAN_BUDGET) -> np.ndarray:
    """Every degree vector of length ``m``, lexicographically ordered, shape (|L|^m, m)."""
    n = lattice.size
    check_budget(n**m, budget, f"enumerating L^X with |L|={n}, |X|={m}")
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((n,) * m, dtype=np.int64).reshape(m, -1).T.copy()


def row_codes(rows: np.ndarray, n: int) -> np.ndarray:
    """Integer code of each row; code order equals lexicographic row order."""
    m = rows.shape[-1]
    weights = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return rows @ weights


def sub_rows(lattice: ResiduatedLattice, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcast sub over the last axis: meet_x (a(x) -> b(x))."""
    return lattice.meet_reduce(lattice.residuum_table[a, b], axis=-1)


def sub_matrix(lattice: ResiduatedLattice, rows_a: np.ndarray, rows_b: np.ndarray) -> np.ndarray:
    """S[i, j] = sub(rows_a[i], rows_b[j])."""
    return sub_rows(lattice, rows_a[:, None, :], rows_b[None, :, :])


def leq_rows(lattice: ResiduatedLattice, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pointwise order over the last axis."""
    return lattice.leq[a, b].all(axis=-1)


def forward_rows(lattice: ResiduatedLattice, table: np.ndarray, target_size: int, rows: np.ndarray) -> np.ndarray:
    """Zadeh forward image of each row: joins over fibres, bottom on empty fibres."""
    out = np.full(rows.shape[:-1] + (target_size,), lattice.bottom, dtype=np.int64)
    for y in range(target_size):
        fibre = np.flatnonzero(table == y)
        if len(fibre):
            out[..., y] = lattice.join_reduce(rows[..., fibre], axis=-1)
    return out


def backward_rows(table: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Zadeh backward image: B o f."""
    return rows[..., table]


def nonempty_rows(lattice: ResiduatedLattice, rows: np.ndarray) -> np.ndarray:
    return lattice.join_reduce(rows, axis=-1) == lattice.top


# ------------------------------------------------------------------ scalars
def sub(a: LSubset, b: LSubset) -> int:
    """Inclusion degree of ``a`` in ``b``."""
    _same(a, b)
    return int(sub_rows(a.lattice, a.vec, b.vec))


def zadeh_forward(f: CarrierMap, a: LSubset) -> LSubset:
    if a.carrier != f.source:
        raise CarrierMismatch("L-subset is not on the source of the map")
    row = forward_rows(a.lattice, f.array, f.target.size, a.vec)
    return LSubset.from_array(f.target, a.lattice, row)


def zadeh_backward(f: CarrierMap, b: LSubset) -> LSubset:
    if b.carrier != f.target:
        raise CarrierMismatch("L-subset is not on the target of the map")
    return LSubset.from_array(f.source, b.lattice, backward_rows(f.array, b.vec))


def is_nonempty(a: LSubset) -> bool:
    return a.lattice.join_all(a.degrees) == a.lattice.top


def constant(carrier: Carrier, lattice: ResiduatedLattice, degree: int) -> LSubset:
    return LSubset(carrier, lattice, (degree,) * carrier.size)


def bottom(carrier: Carrier, lattice: ResiduatedLattice) -> LSubset:
    return constant(carrier, lattice, lattice.bottom)


def top(carrier: Carrier, lattice: ResiduatedLattice) -> LSubset:
    return constant(carrier, lattice, lattice.top)


def point(carrier: Carrier, lattice: ResiduatedLattice, x: str | int) -> LSubset:
    """1_x."""
    i = carrier.index(x)
    return LSubset(carrier, lattice, tuple(lattice.top if j == i else lattice.bottom for j in range(carrier.size)))


def characteristic(carrier: Carrier, lattice: ResiduatedLattice, points: Iterable[str | int]) -> LSubset:
    """chi_Z."""
    z = set(carrier.indices(points))
    return LSubset(carrier, lattice, tuple(lattice.top if j in z else lattice.bottom for j in range(carrier.size)))


def scale_tensor(a: int, s: LSubset) -> LSubset:
    return LSubset.from_array(s.carrier, s.lattice, s.lattice.tensor[a, s.vec])


def scale_residuum(a: int, s: LSubset) -> LSubset:
    return LSubset.from_array(s.carrier, s.lattice, s.lattice.residuum_table[a, s.vec])


def _family(family: Sequence[LSubset], carrier, lattice):
    family = list(family)
    if family:
        carrier, lattice = family[0].carrier, family[0].lattice
        for s in family[1:]:
            _same(family[0], s)
    if carrier is None or lattice is None:
        raise ValueError("empty family needs an explicit carrier and lattice")
    rows = np.array([s.degrees for s in family], dtype=np.int64).reshape(len(family), carrier.size)
    return rows, carrier, lattice


def meet_family(family: Sequence[LSubset], carrier: Carrier | None = None,
                lattice: ResiduatedLattice | None = None) -> LSubset:
    """Pointwise meet; the empty family gives the top constant."""
    rows, carrier, lattice = _family(family, carrier, lattice)
    return LSubset.from_array(carrier, lattice, lattice.meet_reduce(rows, axis=0))


def join_family(family: Sequence[LSubset], carrier: Carrier | None = None,
                lattice: ResiduatedLattice | None = None) -> LSubset:
    """Pointwise join; the empty family gives the bottom constant."""
    rows, carrier, lattice = _family(family, carrier, lattice)
    return LSubset.from_array(carrier, lattice, lattice.join_reduce(rows, axis=0))


def restrict(s: LSubset, points: Iterable[str | int]) -> LSubset:
    """A|_Y on the sub-carrier with the given points (carrier order kept)."""
    idx = sorted(set(s.carrier.indices(points)))
    sub_carrier = Carrier(tuple(s.carrier.labels[i] for i in idx))
    return LSubset(sub_carrier, s.lattice, tuple(s.degrees[i] for i in idx))


def extend(s: LSubset, carrier: Carrier) -> LSubset:
    """Extend an L-subset of a sub-carrier by bottom."""
    pos = {lab: d for lab, d in zip(s.carrier.labels, s.degrees)}
    missing = set(pos) - set(carrier.labels)
    if missing:
        raise CarrierMismatch(f"points {sorted(missing)} are not in the target carrier")
    return LSubset(carrier, s.lattice, tuple(pos.get(lab, s.lattice.bottom) for lab in carrier.labels))


def all_subsets(carrier: Carrier, lattice: ResiduatedLattice, budget: int | None = SCAN_BUDGET) -> list[LSubset]:
    return [LSubset.from_array(carrier, lattice, r) for r in all_rows(lattice, carrier.size, budget)]


# -------------------------------------------------------------- finiteness
@dataclass(frozen=True)
class FinitenessVerdict:
    finite: bool
    justification: str
    families_checked: int
    chains_checked: int
    violations: tuple = ()

    def __bool__(self) -> bool:
        return self.finite


def is_finite_subset(a: LSubset, probe_bound: int = 3, budget: int | None = SCAN_BUDGET) -> FinitenessVerdict:
    """Finite-subset test for ``a``.

    Over a finite lattice and carrier every directed family of L-subsets has
    a largest member, so ``sub(a, -)`` always commutes with directed joins.
    As a guard, all directed subfamilies of L^X with at most ``probe_bound``
    members are enumerated and the equation is checked on each; a violation
    would indicate a bug in ``sub`` or the join tables.
    """
    lat = a.lattice
    rows = all_rows(lat, a.carrier.size, budget)
    n_rows = len(rows)
    n_families = sum(comb(n_rows, r) for r in range(1, probe_bound + 1))
    check_budget(n_families, budget, "directed-family probe")

    le = leq_rows(lat, rows[:, None, :], rows[None, :, :])       # le[i, j]: rows[i] <= rows[j]
    sub_a = sub_rows(lat, a.vec[None, :], rows)                   # sub(a, rows[i])
    violations = []
    families = chains = 0
    for r in range(1, probe_bound + 1):
        for combo in itertools.combinations(range(n_rows), r):
            if not _directed(le, combo):
                continue
            families += 1
            if all(le[i, j] or le[j, i] for i, j in itertools.combinations(combo, 2)):
                chains += 1
            joined = lat.join_reduce(rows[list(combo)], axis=0)
            lhs = int(sub_rows(lat, a.vec, joined))
            rhs = lat.join_all(sub_a[list(combo)])
            if lhs != rhs:
                violations.append(tuple(tuple(rows[i].tolist()) for i in combo))
    return FinitenessVerdict(
        finite=True,
        justification="finite-instance theorem: every finite directed family contains its join",
        families_checked=families,
        chains_checked=chains,
        violations=tuple(violations),
    )


def _directed(le: np.ndarray, combo: tuple[int, ...]) -> bool:
    return all(any(le[i, k] and le[j, k] for k in combo) for i, j in itertools.combinations(combo, 2))

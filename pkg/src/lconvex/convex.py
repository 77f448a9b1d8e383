"""Stratified L-convex spaces on finite carriers.

A space stores its convex family extensionally as a read-only ``(k, m)``
array of degree rows, sorted lexicographically and deduplicated, so two
spaces are equal exactly when their arrays are.  Hulls, map classes and
compactness are evaluated on whole arrays of L-subsets at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import fuzzy
from ._common import (
    FAMILY_BUDGET,
    SCAN_BUDGET,
    BudgetExceeded,
    CarrierMismatch,
    InvariantViolation,
    NotConvex,
    Verdict,
)
from .fuzzy import Carrier, CarrierMap, LSubset
from .lattice import ResiduatedLattice


def canonical_rows(rows: np.ndarray, m: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, m)
    if len(rows) == 0:
        return rows
    out = np.unique(rows, axis=0)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class LConvexSpace:
    """A finite carrier with an explicitly enumerated convex family.

    Construct with :func:`build_space` (closure of generators) or
    :meth:`from_rows` (family taken as given; check it with
    :func:`verify_space_axioms`).
    """

    carrier: Carrier
    lattice: ResiduatedLattice
    rows: np.ndarray
    name: str = "X"

    @classmethod
    def from_rows(cls, carrier: Carrier, lattice: ResiduatedLattice, rows, name: str = "X") -> "LConvexSpace":
        return cls(carrier, lattice, canonical_rows(rows, carrier.size), name)

    @classmethod
    def from_subsets(cls, family, carrier: Carrier, lattice: ResiduatedLattice, name: str = "X") -> "LConvexSpace":
        rows = [s.degrees for s in family]
        for s in family:
            if s.carrier != carrier or s.lattice != lattice:
                raise CarrierMismatch("family member on a different carrier or lattice")
        return cls.from_rows(carrier, lattice, rows, name)

    # -------------------------------------------------------------- basics
    @property
    def size(self) -> int:
        return self.carrier.size

    def __len__(self) -> int:
        return len(self.rows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LConvexSpace)
            and self.carrier == other.carrier
            and self.lattice == other.lattice
            and np.array_equal(self.rows, other.rows)
        )

    def __hash__(self) -> int:
        return hash((self.carrier, self.lattice, self.rows.tobytes()))

    def __repr__(self) -> str:
        return f"LConvexSpace({self.name!r}, |X|={self.size}, |C|={len(self)}, over {self.lattice.name})"

    @cached_property
    def members(self) -> tuple[LSubset, ...]:
        return tuple(LSubset.from_array(self.carrier, self.lattice, r) for r in self.rows)

    def subset(self, row) -> LSubset:
        return LSubset.from_array(self.carrier, self.lattice, row)

    @cached_property
    def _codes(self) -> np.ndarray | None:
        n, m = self.lattice.size, self.size
        if m and n ** m >= 2**62:
            return None
        return fuzzy.row_codes(self.rows, n)

    @cached_property
    def _lookup(self) -> dict[bytes, int]:
        rows = np.ascontiguousarray(self.rows)
        return {r.tobytes(): i for i, r in enumerate(rows)}

    def find_rows(self, rows: np.ndarray) -> np.ndarray:
        """Member index of each row, -1 for non-members."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.size)
        codes = self._codes
        if codes is not None:
            q = fuzzy.row_codes(rows, self.lattice.size)
            pos = np.searchsorted(codes, q)
            pos_c = np.minimum(pos, len(codes) - 1)
            return np.where((pos < len(codes)) & (codes[pos_c] == q), pos_c, -1)
        rows = np.ascontiguousarray(rows)
        return np.fromiter((self._lookup.get(r.tobytes(), -1) for r in rows), dtype=np.int64, count=len(rows))

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        return self.find_rows(rows) >= 0

    def __contains__(self, a: LSubset) -> bool:
        return a.carrier == self.carrier and a.lattice == self.lattice and bool(self.contains_rows(a.vec)[0])

    def index(self, a: LSubset) -> int:
        i = int(self.find_rows(a.vec)[0])
        if i < 0:
            raise NotConvex(f"{a} is not a convex set of {self.name}", witness=a)
        return i

    # ------------------------------------------------------- cached tables
    @cached_property
    def nonempty(self) -> np.ndarray:
        return fuzzy.nonempty_rows(self.lattice, self.rows)

    @cached_property
    def point_rows(self) -> np.ndarray:
        """Row x is 1_x."""
        lat = self.lattice
        out = np.full((self.size, self.size), lat.bottom, dtype=np.int64)
        np.fill_diagonal(out, lat.top)
        return out

    @cached_property
    def point_hulls(self) -> np.ndarray:
        """Row x is hull(1_x)."""
        return hull_rows(self, self.point_rows)

    @cached_property
    def sub_members(self) -> np.ndarray:
        """S[i, j] = sub(C_i, C_j) over the family."""
        return fuzzy.sub_matrix(self.lattice, self.rows, self.rows)

    @cached_property
    def member_leq(self) -> np.ndarray:
        """Pointwise order between members."""
        return fuzzy.leq_rows(self.lattice, self.rows[:, None, :], self.rows[None, :, :])

    def directed_families(self, bound: int) -> list[tuple[np.ndarray, np.ndarray]]:
        """Directed subfamilies with 2..bound members as (combos, join rows) per size."""
        cache = self.__dict__.setdefault("_directed_cache", {})
        if bound not in cache:
            cache[bound] = _directed_families(self, bound)
        return cache[bound]


# ---------------------------------------------------------------- closure
def _close(lattice: ResiduatedLattice, rows: np.ndarray, m: int, budget: int | None,
           residuum_first: bool = False) -> np.ndarray:
    fam = canonical_rows(rows, m)
    scalars = np.arange(lattice.size)

    def meets(f):
        return lattice.meet[f[:, None, :], f[None, :, :]].reshape(-1, m)

    def scaled(f):
        return lattice.residuum_table[scalars[:, None, None], f[None, :, :]].reshape(-1, m)

    steps = (scaled, meets) if residuum_first else (meets, scaled)
    while True:
        before = len(fam)
        for step in steps:
            fam = canonical_rows(np.vstack([fam, step(fam)]), m)
            if budget is not None and len(fam) > budget:
                raise BudgetExceeded(f"convex family exceeds {budget} members", len(fam), budget)
        if len(fam) == before:
            return fam


def build_space(carrier: Carrier, lattice: ResiduatedLattice, generators=(), name: str = "X",
                budget: int | None = FAMILY_BUDGET, residuum_first: bool = False) -> LConvexSpace:
    """Smallest L-convex structure containing the generators.

    ``generators`` may hold LSubsets or raw degree rows.  Binary meets and
    a -> (-) scalings are applied in rounds until nothing new appears.
    """
    m = carrier.size
    gen_rows = []
    for g in generators:
        if isinstance(g, LSubset):
            if g.carrier != carrier or g.lattice != lattice:
                raise CarrierMismatch(f"generator {g} is not on carrier {carrier.labels}")
            gen_rows.append(g.degrees)
        else:
            gen_rows.append(tuple(int(d) for d in g))
    seed = [(lattice.bottom,) * m, (lattice.top,) * m] + gen_rows
    rows = _close(lattice, np.array(seed, dtype=np.int64), m, budget, residuum_first)
    return LConvexSpace(carrier, lattice, rows, name)


def discrete_space(carrier: Carrier, lattice: ResiduatedLattice, name: str = "discrete") -> LConvexSpace:
    return LConvexSpace.from_rows(carrier, lattice, fuzzy.all_rows(lattice, carrier.size), name)


def indiscrete_space(carrier: Carrier, lattice: ResiduatedLattice, name: str = "indiscrete") -> LConvexSpace:
    return build_space(carrier, lattice, (), name)


# ---------------------------------------------------------- axiom report
@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    checked: int
    witness: object = None
    note: str = ""


@dataclass
class SpaceAxiomReport:
    space: str
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> list[str]:
        return [r.axiom for r in self.results if not r.passed]

    def format(self) -> str:
        lines = [f"space {self.space}"]
        for r in self.results:
            status = "PASS" if r.passed else f"FAIL witness={r.witness}"
            note = f"  ({r.note})" if r.note else ""
            lines.append(f"  {r.axiom}: {r.checked:>7} cases  {status}{note}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "passed": self.passed,
            "axioms": [
                {"axiom": r.axiom, "passed": r.passed, "checked": r.checked,
                 "witness": r.witness, "note": r.note}
                for r in self.results
            ],
        }


def _directed_families(space: LConvexSpace, bound: int) -> list[tuple[np.ndarray, np.ndarray]]:
    le = space.member_leq
    k = len(space)
    out = []
    for r in range(2, min(bound, k) + 1):
        combos = np.array(list(itertools.combinations(range(k), r)), dtype=np.int64).reshape(-1, r)
        if len(combos) == 0:
            continue
        # ub[c, i, j, l]: member l of combo c bounds members i and j
        sub_le = le[combos[:, :, None], combos[:, None, :]]          # (C, r, r)
        ub = sub_le[:, :, None, :] & sub_le[:, None, :, :]
        directed = ub.any(axis=-1).all(axis=(-1, -2))
        combos = combos[directed]
        joins = space.lattice.join_reduce(space.rows[combos], axis=1)
        out.append((combos, joins))
    return out


def _row_repr(space: LConvexSpace, row) -> str:
    return str(space.subset(row))


def verify_space_axioms(space: LConvexSpace, directed_bound: int = 4) -> SpaceAxiomReport:
    """Check C1-C4 with witnesses.

    C2 is exhausted over directed subfamilies of up to ``directed_bound``
    members; larger finite directed families contain their own maximum.
    """
    lat, m, rows = space.lattice, space.size, space.rows
    report = SpaceAxiomReport(space.name)

    missing = [label for label, d in (("0_X", lat.bottom), ("1_X", lat.top))
               if not space.contains_rows(np.full(m, d))[0]]
    report.results.append(AxiomResult("C1", not missing, 2, missing or None))

    checked, witness = 0, None
    for combos, joins in space.directed_families(directed_bound):
        checked += len(combos)
        bad = np.flatnonzero(~space.contains_rows(joins))
        if len(bad) and witness is None:
            witness = [_row_repr(space, rows[i]) for i in combos[bad[0]]]
    report.results.append(AxiomResult(
        "C2", witness is None, checked, witness,
        note=f"directed subfamilies up to {directed_bound}; larger ones contain their maximum"))

    meets = lat.meet[rows[:, None, :], rows[None, :, :]]
    present = space.contains_rows(meets.reshape(-1, m)).reshape(len(rows), len(rows))
    top_ok = bool(space.contains_rows(np.full(m, lat.top))[0])
    witness = None
    if not present.all():
        i, j = np.argwhere(~present)[0]
        witness = [_row_repr(space, rows[i]), _row_repr(space, rows[j])]
    elif not top_ok:
        witness = "empty meet 1_X"
    report.results.append(AxiomResult("C3", witness is None, present.size + 1, witness))

    scaled = lat.residuum_table[np.arange(lat.size)[:, None, None], rows[None, :, :]]
    present = space.contains_rows(scaled.reshape(-1, m)).reshape(lat.size, len(rows))
    witness = None
    if not present.all():
        a, i = np.argwhere(~present)[0]
        witness = [lat.label(int(a)), _row_repr(space, rows[i])]
    report.results.append(AxiomResult("C4", witness is None, present.size, witness))
    return report


# ------------------------------------------------------------------- hull
def hull_rows(space: LConvexSpace, rows: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Hull of each row: meet of all members above it."""
    lat = space.lattice
    rows = np.asarray(rows, dtype=np.int64)
    single = rows.ndim == 1
    rows = rows.reshape(-1, space.size)
    members = space.rows
    out = np.empty_like(rows)
    for s in range(0, len(rows), chunk):
        part = rows[s:s + chunk]
        above = lat.leq[part[:, None, :], members[None, :, :]].all(axis=-1)     # (N, k)
        stacked = np.where(above[:, :, None], members[None, :, :], lat.top)
        out[s:s + chunk] = lat.meet_reduce(stacked, axis=1)
    return out[0] if single else out


def hull(space: LConvexSpace, a: LSubset) -> LSubset:
    if a.carrier != space.carrier:
        raise CarrierMismatch("L-subset is not on the space's carrier")
    return space.subset(hull_rows(space, a.vec))


# ------------------------------------------------------------------- maps
@dataclass(frozen=True, eq=False)
class SpaceMap:
    """A carrier map between two spaces with lazily computed verdicts."""

    map: CarrierMap
    source: LConvexSpace
    target: LConvexSpace

    def __post_init__(self):
        if self.map.source != self.source.carrier or self.map.target != self.target.carrier:
            raise CarrierMismatch("map does not match the spaces' carriers")

    @classmethod
    def from_table(cls, source: LConvexSpace, target: LConvexSpace, table) -> "SpaceMap":
        return cls(CarrierMap(source.carrier, target.carrier, tuple(table)), source, target)

    @property
    def table(self) -> np.ndarray:
        return self.map.array

    def preimage_rows(self, rows: np.ndarray) -> np.ndarray:
        return fuzzy.backward_rows(self.table, rows)

    def image_rows(self, rows: np.ndarray) -> np.ndarray:
        return fuzzy.forward_rows(self.source.lattice, self.table, self.target.size, rows)

    @cached_property
    def convexity_preserving(self) -> Verdict:
        pre = self.preimage_rows(self.target.rows)
        bad = np.flatnonzero(~self.source.contains_rows(pre))
        if len(bad):
            return Verdict(False, self.target.members[bad[0]])
        return Verdict(True)

    @cached_property
    def convex_to_convex(self) -> Verdict:
        img = self.image_rows(self.source.rows)
        bad = np.flatnonzero(~self.target.contains_rows(img))
        if len(bad):
            return Verdict(False, self.source.members[bad[0]])
        return Verdict(True)

    @cached_property
    def homeomorphism(self) -> Verdict:
        if not self.map.is_bijective:
            return Verdict(False, note="not bijective")
        for v in (self.convexity_preserving, self.convex_to_convex):
            if not v:
                return v
        return Verdict(True)

    def compose(self, inner: "SpaceMap") -> "SpaceMap":
        return SpaceMap(self.map.compose(inner.map), inner.source, self.target)


def is_convexity_preserving(f: SpaceMap) -> bool:
    return bool(f.convexity_preserving)


def is_convex_to_convex(f: SpaceMap) -> bool:
    return bool(f.convex_to_convex)


def is_convex_homeomorphism(f: SpaceMap) -> bool:
    return bool(f.homeomorphism)


def hull_image_characterization(f: SpaceMap, budget: int | None = SCAN_BUDGET) -> Verdict:
    """f->(co_X(A)) <= co_Y(f->(A)) for every A in L^X; witness A on failure."""
    x, lat = f.source, f.source.lattice
    rows = fuzzy.all_rows(lat, x.size, budget)
    lhs = f.image_rows(hull_rows(x, rows))
    rhs = hull_rows(f.target, f.image_rows(rows))
    ok = fuzzy.leq_rows(lat, lhs, rhs)
    bad = np.flatnonzero(~ok)
    if len(bad):
        return Verdict(False, x.subset(rows[bad[0]]), details={"violations": int(len(bad))})
    return Verdict(True, details={"checked": int(len(rows))})


# ---------------------------------------------------- compactness, polytopes
def compact_oracle_rows(space: LConvexSpace, probe_bound: int = 4) -> np.ndarray:
    """For each member K: does sub(K, -) commute with the joins of all
    directed subfamilies of at most ``probe_bound`` members?"""
    s = space.sub_members
    lat = space.lattice
    ok = np.ones(len(space), dtype=bool)
    for combos, joins in space.directed_families(probe_bound):
        j = space.find_rows(joins)
        if (j < 0).any():
            raise InvariantViolation("directed join is not a member (C2 broken)")
        lhs = s[:, j]                                           # sub(K, V D)
        rhs = lat.join_reduce(s[:, combos], axis=-1)            # V sub(K, D_i)
        ok &= (lhs == rhs).all(axis=1)
    return ok


def compact_mask(space: LConvexSpace, probe_bound: int | None = None) -> np.ndarray:
    """Compact members: nonempty, and sub(K, -) preserves directed joins.

    The second condition always holds over a finite family (a finite
    directed family contains its join).  With ``probe_bound`` set, the
    bounded oracle re-checks it and any disagreement is raised.
    """
    mask = space.nonempty.copy()
    if probe_bound:
        if not compact_oracle_rows(space, probe_bound).all():
            raise InvariantViolation("directed-family oracle disagrees with the finite-family argument")
    return mask


def is_compact(space: LConvexSpace, k: LSubset, probe_bound: int = 4) -> Verdict:
    i = space.index(k)
    if not space.nonempty[i]:
        return Verdict(False, note="empty: joins of degrees below top")
    oracle = compact_oracle_rows(space, probe_bound)[i]
    if not oracle:
        raise InvariantViolation(f"directed-family oracle rejects {k}", witness=k)
    return Verdict(True, details={"probe_bound": probe_bound})


def is_polytope(space: LConvexSpace, c: LSubset, exhaustive: bool = False,
                budget: int | None = SCAN_BUDGET) -> Verdict:
    """Is ``c`` the hull of a nonempty L-subset?  Witness is such an F.

    Every L-subset of a finite carrier over a finite lattice is finite, and
    a nonempty member is its own hull, so ``c`` itself is the fast witness.
    ``exhaustive`` additionally searches all of L^X and cross-checks.
    """
    i = space.index(c)
    fast = Verdict(True, c) if space.nonempty[i] else Verdict(False, note="no nonempty F lies below it")
    if not exhaustive:
        return fast
    rows = fuzzy.all_rows(space.lattice, space.size, budget)
    rows = rows[fuzzy.nonempty_rows(space.lattice, rows)]
    hits = np.flatnonzero((hull_rows(space, rows) == c.vec).all(axis=1))
    found = Verdict(True, space.subset(rows[hits[0]])) if len(hits) else Verdict(False)
    if bool(found) != bool(fast):
        raise InvariantViolation(f"polytope fast path and search disagree on {c}", witness=c)
    return found


def subspace(space: LConvexSpace, points, name: str | None = None) -> LConvexSpace:
    """Restrict every convex set to ``points`` (carrier order kept)."""
    idx = sorted(set(space.carrier.indices(points)))
    if not idx:
        raise ValueError("subspace needs at least one point")
    carrier = Carrier(tuple(space.carrier.labels[i] for i in idx))
    return LConvexSpace.from_rows(carrier, space.lattice, space.rows[:, idx], name or f"{space.name}|Y")

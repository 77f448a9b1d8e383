"""Sobriety, F-closure and the sobrification of a finite L-convex space.

The points of the sobrification are compact convex sets of the base space.
Each such point keeps its provenance: the base convex set it stands for.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import convex, fuzzy
from ._common import (
    SCAN_BUDGET,
    InvariantViolation,
    NotConvexityPreserving,
    NotSober,
    Verdict,
    check_budget,
)
from .convex import LConvexSpace, SpaceMap
from .fuzzy import Carrier, LSubset
from .order import degree_label


# ------------------------------------------------------------ compact sets
@dataclass(frozen=True, eq=False)
class CompactFamily:
    """cp(C(X)): compact members of ``base`` in the base family's order."""

    base: LConvexSpace
    member_index: np.ndarray

    @property
    def rows(self) -> np.ndarray:
        return self.base.rows[self.member_index]

    def __len__(self) -> int:
        return len(self.member_index)

    @cached_property
    def carrier(self) -> Carrier:
        return Carrier(tuple(degree_label(self.base.lattice, r) for r in self.rows))

    @cached_property
    def members(self) -> tuple[LSubset, ...]:
        return tuple(self.base.members[i] for i in self.member_index)

    @cached_property
    def _position(self) -> dict[int, int]:
        return {int(i): p for p, i in enumerate(self.member_index)}

    def positions(self, base_index: np.ndarray) -> np.ndarray:
        """Position in cp of each base member index (-1 when not compact)."""
        return np.array([self._position.get(int(i), -1) for i in np.atleast_1d(base_index)], dtype=np.int64)

    def position(self, k: LSubset) -> int:
        p = int(self.positions(self.base.index(k))[0])
        if p < 0:
            raise ValueError(f"{k} is not compact")
        return p


def compact_family(space: LConvexSpace, probe_bound: int | None = None) -> CompactFamily:
    mask = convex.compact_mask(space, probe_bound)
    return CompactFamily(space, np.flatnonzero(mask))


def phi_rows(cp: CompactFamily) -> np.ndarray:
    """Row j is phi(C_j) over cp: phi(A)(K) = sub(K, A)."""
    return cp.base.sub_members[cp.member_index, :].T


def phi(space: LConvexSpace, a: LSubset, cp: CompactFamily | None = None) -> LSubset:
    cp = cp or compact_family(space)
    j = space.index(a)
    return LSubset.from_array(cp.carrier, space.lattice, phi_rows(cp)[j])


def cp_space(space: LConvexSpace, cp: CompactFamily | None = None) -> LConvexSpace:
    """Cp(C(X)): compact sets of X with convex sets {phi(A) : A in C(X)}."""
    cp = cp or compact_family(space)
    return LConvexSpace.from_rows(cp.carrier, space.lattice, phi_rows(cp), name=f"Cp({space.name})")


# ---------------------------------------------------------------- sobriety
def _hull_witnesses(space: LConvexSpace, f_rows: np.ndarray) -> list[list[int]]:
    """Points x with hull(F) = hull(1_x), for each row F."""
    by_hull: dict[bytes, list[int]] = {}
    for x, h in enumerate(np.ascontiguousarray(space.point_hulls)):
        by_hull.setdefault(h.tobytes(), []).append(x)
    hulls = np.ascontiguousarray(convex.hull_rows(space, f_rows))
    return [by_hull.get(h.tobytes(), []) for h in hulls]


def is_s0(space: LConvexSpace) -> bool:
    """x -> hull(1_x) is injective."""
    return len(np.unique(space.point_hulls, axis=0)) == space.size


def _sober_fast(space: LConvexSpace) -> Verdict:
    hulls = space.point_hulls
    if not is_s0(space):
        seen: dict[bytes, int] = {}
        for x, h in enumerate(np.ascontiguousarray(hulls)):
            if h.tobytes() in seen:
                y = seen[h.tobytes()]
                return Verdict(False, fuzzy.point(space.carrier, space.lattice, y),
                               note="two points share a hull", details={"points": [y, x]})
            seen[h.tobytes()] = x
    idx = space.find_rows(hulls)
    if (idx < 0).any():
        raise InvariantViolation("a point hull is not a member")
    orphans = np.setdiff1d(np.flatnonzero(space.nonempty), idx)
    if len(orphans):
        return Verdict(False, space.members[orphans[0]], note="nonempty member is no point hull",
                       details={"points": []})
    return Verdict(True)


def sober_oracle(space: LConvexSpace, budget: int | None = SCAN_BUDGET) -> Verdict:
    """Definitional check: every nonempty F has exactly one x with hull(F) = hull(1_x)."""
    rows = fuzzy.all_rows(space.lattice, space.size, budget)
    rows = rows[fuzzy.nonempty_rows(space.lattice, rows)]
    for f_row, hits in zip(rows, _hull_witnesses(space, rows)):
        if len(hits) != 1:
            return Verdict(False, space.subset(f_row), details={"points": hits})
    return Verdict(True, details={"checked": int(len(rows))})


def is_sober(space: LConvexSpace, oracle: bool = False, budget: int | None = SCAN_BUDGET) -> Verdict:
    """Sobriety via the point-hull bijection onto nonempty members.

    With ``oracle=True`` the definitional enumeration runs too (raising
    BudgetExceeded when L^X is too large) and must agree.
    """
    fast = _sober_fast(space)
    if not oracle:
        return fast
    slow = sober_oracle(space, budget)
    if bool(slow) != bool(fast):
        raise InvariantViolation(f"sobriety fast path ({fast.holds}) and oracle ({slow.holds}) disagree",
                                 witness=slow.witness or fast.witness)
    return Verdict(fast.holds, fast.witness or slow.witness, fast.note, {**slow.details, "oracle": True})


# --------------------------------------------------------------- F-closure
def _supported_rows(lattice, m: int, support: list[int], budget: int | None) -> np.ndarray:
    """Nonempty L-subsets of an m-point carrier vanishing outside ``support``."""
    check_budget(lattice.size ** len(support), budget, f"L-subsets on {len(support)} points")
    local = fuzzy.all_rows(lattice, len(support), None)
    local = local[fuzzy.nonempty_rows(lattice, local)]
    out = np.full((len(local), m), lattice.bottom, dtype=np.int64)
    out[:, support] = local
    return out


def _f_violation(space: LConvexSpace, points: set[int], budget: int | None):
    support = sorted(points)
    rows = _supported_rows(space.lattice, space.size, support, budget)
    for f_row, hits in zip(rows, _hull_witnesses(space, rows)):
        outside = [x for x in hits if x not in points]
        if outside:
            return f_row, outside[0]
    return None


def is_f_closed(space: LConvexSpace, points, budget: int | None = SCAN_BUDGET) -> Verdict:
    """Every nonempty F <= chi_A has all of its hull witnesses inside A."""
    pts = set(space.carrier.indices(points))
    if len(pts) == space.size:
        return Verdict(True, note="whole carrier")
    bad = _f_violation(space, pts, budget)
    if bad is None:
        return Verdict(True)
    return Verdict(False, space.subset(bad[0]), details={"escapes_to": space.carrier.labels[bad[1]]})


def f_closure(space: LConvexSpace, points, budget: int | None = SCAN_BUDGET) -> frozenset[int]:
    """Least F-closed superset, by adding hull witnesses until nothing changes."""
    current = set(space.carrier.indices(points))
    while len(current) < space.size:
        rows = _supported_rows(space.lattice, space.size, sorted(current), budget)
        found = {x for hits in _hull_witnesses(space, rows) for x in hits}
        if found <= current:
            break
        current |= found
    return frozenset(current)


def f_closed_sets(space: LConvexSpace, budget: int | None = SCAN_BUDGET) -> list[frozenset[int]]:
    """All F-closed subsets of the carrier (2^|X| candidates)."""
    check_budget(2 ** space.size, budget, "F-closed set enumeration")
    out = []
    for r in range(space.size + 1):
        for combo in itertools.combinations(range(space.size), r):
            if is_f_closed(space, combo, budget):
                out.append(frozenset(combo))
    return out


def f_closure_oracle(space: LConvexSpace, points, budget: int | None = SCAN_BUDGET) -> frozenset[int]:
    """Intersection of all F-closed supersets."""
    base = frozenset(space.carrier.indices(points))
    result = frozenset(range(space.size))
    for closed in f_closed_sets(space, budget):
        if base <= closed:
            result &= closed
    return result


def is_f_continuous(f: SpaceMap, budget: int | None = SCAN_BUDGET) -> Verdict:
    """Preimages of F-closed sets of the target are F-closed."""
    for closed in f_closed_sets(f.target, budget):
        pre = [x for x in range(f.source.size) if f.map.table[x] in closed]
        if not is_f_closed(f.source, pre, budget):
            return Verdict(False, sorted(closed))
    return Verdict(True)


# ------------------------------------------------------------ sobrification
def sup_closure(base: LConvexSpace, cp: CompactFamily, start: set[int],
                budget: int | None = SCAN_BUDGET) -> frozenset[int]:
    """F-closure inside Cp(C(X)) computed through the base space.

    For K supported on the current set S, its witness in Cp is
    hull_X(join over A in S of K(A) * A).
    """
    lat = base.lattice
    current = set(start)
    cp_rows = cp.rows
    while len(current) < len(cp):
        support = sorted(current)
        local = _supported_rows(lat, len(support), list(range(len(support))), budget)
        weighted = lat.tensor[local[:, :, None], cp_rows[support][None, :, :]]     # (N, |S|, m)
        joined = lat.join_reduce(weighted, axis=1)
        tops = base.find_rows(convex.hull_rows(base, joined))
        found = set(cp.positions(tops).tolist())
        if -1 in found:
            raise InvariantViolation("supremum in Cp is not a compact convex set")
        if found <= current:
            break
        current |= found
    return frozenset(current)


@dataclass(frozen=True, eq=False)
class SobrificationResult:
    base: LConvexSpace
    compact: CompactFamily
    cp: LConvexSpace
    theta: tuple[int, ...]          # cp positions of the point hulls
    xf_points: tuple[int, ...]      # cp positions forming X^F
    xf_space: LConvexSpace
    xi: SpaceMap
    verdicts: dict = field(default_factory=dict)

    @cached_property
    def provenance(self) -> tuple[LSubset, ...]:
        """The base convex set each X^F point stands for."""
        return tuple(self.compact.members[p] for p in self.xf_points)

    def point_of(self, k: LSubset) -> int:
        return self.xf_points.index(self.compact.position(k))

    def to_dict(self) -> dict:
        lat = self.base.lattice
        return {
            "space": self.base.name,
            "lattice": lat.name,
            "carrier": list(self.base.carrier.labels),
            "xf_points": [
                {"label": self.xf_space.carrier.labels[i], "convex_set": str(k)}
                for i, k in enumerate(self.provenance)
            ],
            "xi": {x: self.xf_space.carrier.labels[t] for x, t in zip(self.base.carrier.labels, self.xi.map.table)},
            "xf_members": [[lat.label(int(d)) for d in r] for r in self.xf_space.rows],
            "verdicts": self.verdicts,
        }

    def format(self) -> str:
        lines = [f"sobrification of {self.base.name} over {self.base.lattice.name}",
                 f"  |X| = {self.base.size}, |C(X)| = {len(self.base)}, |cp| = {len(self.compact)}, "
                 f"|X^F| = {self.xf_space.size}"]
        lines.append("  X^F points (provenance):")
        for i, k in enumerate(self.provenance):
            lines.append(f"    {self.xf_space.carrier.labels[i]:<16} = {k}")
        lines.append("  xi:")
        for x, t in zip(self.base.carrier.labels, self.xi.map.table):
            lines.append(f"    {x} -> {self.xf_space.carrier.labels[t]}")
        lines.append("  verdicts:")
        for key, val in self.verdicts.items():
            lines.append(f"    {key}: {val}")
        return "\n".join(lines)


def sobrify(space: LConvexSpace, oracle: bool = False, check: bool = True,
            budget: int | None = SCAN_BUDGET) -> SobrificationResult:
    """Build X^F with xi_X.

    ``oracle`` re-derives X^F by the definitional F-closure in Cp(C(X));
    ``check`` asserts sobriety of X^F, convexity preservation of xi and
    "X sober iff xi is a convex-homeomorphism".
    """
    cp = compact_family(space)
    cpx = cp_space(space, cp)
    theta_pos = cp.positions(space.find_rows(space.point_hulls))
    if (theta_pos < 0).any():
        raise InvariantViolation("a point hull is not compact")
    theta = tuple(sorted(set(theta_pos.tolist())))
    xf = sup_closure(space, cp, set(theta), budget)
    verdicts: dict = {"finite_collapse": len(xf) == len(cp)}
    if oracle:
        slow = f_closure(cpx, theta, budget)
        verdicts["closure_oracle_agrees"] = slow == xf
        if slow != xf:
            raise InvariantViolation("sup-formula F-closure disagrees with definitional iteration",
                                     witness=(sorted(xf), sorted(slow)))
    xf_points = tuple(sorted(xf))
    xf_space = convex.subspace(cpx, xf_points, name=f"{space.name}^F")
    pos = {p: i for i, p in enumerate(xf_points)}
    xi = SpaceMap.from_table(space, xf_space, [pos[int(p)] for p in theta_pos])
    result = SobrificationResult(space, cp, cpx, theta, xf_points, xf_space, xi, verdicts)
    if check:
        verdicts["xf_sober"] = bool(is_sober(xf_space))
        verdicts["xi_convexity_preserving"] = bool(xi.convexity_preserving)
        verdicts["x_sober"] = bool(is_sober(space))
        verdicts["xi_homeomorphism"] = bool(xi.homeomorphism)
        if not (verdicts["xf_sober"] and verdicts["xi_convexity_preserving"]
                and verdicts["x_sober"] == verdicts["xi_homeomorphism"]):
            raise InvariantViolation(f"sobrification postconditions failed: {verdicts}")
    return result


# --------------------------------------------------------- universal property
@dataclass(frozen=True)
class Extension:
    map: SpaceMap
    unique: bool | None             # None: uniqueness skipped for budget
    candidates: int = 0
    note: str = ""


def convexity_preserving_tables(source: LConvexSpace, target: LConvexSpace,
                                budget: int | None = SCAN_BUDGET) -> np.ndarray:
    """Every convexity-preserving map source -> target as rows of a table array."""
    tables = all_tables(target.size, source.size, budget)
    keep = [t for t in tables if SpaceMap.from_table(source, target, t).convexity_preserving]
    return np.array(keep, dtype=np.int64).reshape(-1, source.size)


def all_tables(n: int, m: int, budget: int | None = SCAN_BUDGET) -> np.ndarray:
    """Every map from an m-point set to an n-point set, one table per row."""
    check_budget(n ** m, budget, "map enumeration")
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((n,) * m, dtype=np.int64).reshape(m, -1).T.copy()


def extend_to_sobrification(space: LConvexSpace, z: LConvexSpace, f: SpaceMap,
                            result: SobrificationResult | None = None, check_unique: bool = True,
                            budget: int | None = SCAN_BUDGET) -> Extension:
    """The unique convexity-preserving g: X^F -> Z with g o xi = f."""
    if not is_sober(z):
        raise NotSober(f"target {z.name} is not sober")
    if not f.convexity_preserving:
        raise NotConvexityPreserving("f is not convexity-preserving", witness=f.convexity_preserving.witness)
    result = result or sobrify(space, check=False, budget=budget)
    lat = space.lattice
    prov = result.compact.rows[list(result.xf_points)]
    images = convex.hull_rows(z, fuzzy.forward_rows(lat, f.table, z.size, prov))
    by_hull = {h.tobytes(): x for x, h in enumerate(np.ascontiguousarray(z.point_hulls))}
    table = [by_hull.get(h.tobytes(), -1) for h in np.ascontiguousarray(images)]
    if -1 in table:
        raise InvariantViolation("hull of an image is not a point hull of the sober target")
    g = SpaceMap.from_table(result.xf_space, z, table)
    if not g.convexity_preserving:
        raise InvariantViolation("extension is not convexity-preserving")
    if g.map.compose(result.xi.map).table != f.map.table:
        raise InvariantViolation("extension does not commute with xi")
    if not check_unique:
        return Extension(g, None, note="uniqueness not checked")
    n_maps = z.size ** result.xf_space.size
    if budget is not None and n_maps > budget:
        return Extension(g, None, note=f"uniqueness skipped: {n_maps} maps > budget {budget}")
    xi_t = result.xi.table
    tables = all_tables(z.size, result.xf_space.size, None)
    commuting = tables[(tables[:, xi_t] == f.table).all(axis=1)]
    good = [t for t in commuting if SpaceMap.from_table(result.xf_space, z, t).convexity_preserving]
    unique = len(good) == 1 and tuple(good[0].tolist()) == g.map.table
    return Extension(g, unique, candidates=int(n_maps))

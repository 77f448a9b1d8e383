"""Specialization orders, Scott convex structures and join-semilattice completion."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import convex, fuzzy, order, sober
from ._common import (
    SCAN_BUDGET,
    SCOTT_BUDGET,
    EquivalenceViolation,
    InvariantViolation,
    NotS0,
    Verdict,
    check_budget,
)
from .convex import LConvexSpace, SpaceMap
from .fuzzy import CarrierMap, LSubset
from .order import LOrderedSet


# ---------------------------------------------------------- specialization
def specialization(space: LConvexSpace) -> LOrderedSet:
    """e(x, y) = meet over members A of A(y) -> A(x), checked against hull(1_y)(x)."""
    if not sober.is_s0(space):
        raise NotS0(f"{space.name} is not S0: two points share a hull")
    lat, rows = space.lattice, space.rows
    e = lat.meet_reduce(lat.residuum_table[rows[:, None, :], rows[:, :, None]], axis=0)
    if not np.array_equal(e, space.point_hulls.T):
        raise InvariantViolation("specialization order differs from the point-hull formula")
    return order.build_order(space.carrier, lat, e, name=f"Omega({space.name})")


# ------------------------------------------------------------ Scott convexity
def lower_closure_rows(p: LOrderedSet, rows: np.ndarray) -> np.ndarray:
    """Smallest lower set above each row: x -> join_z F(z) * e(x, z)."""
    lat = p.lattice
    return lat.join_reduce(lat.tensor[rows[..., None, :], p.e], axis=-1)


@lru_cache(maxsize=64)
def _lower_sets_with_sup(p: LOrderedSet, budget: int | None) -> tuple[np.ndarray, np.ndarray]:
    rows = order.nonempty_subset_rows(p, budget)
    rows = rows[order._lower_rows(p, rows)]
    sups = order.supremum_rows(p, rows)
    keep = sups >= 0
    return rows[keep], sups[keep]


def _absorbs(p: LOrderedSet, cands: np.ndarray, f_rows: np.ndarray, sups: np.ndarray,
             chunk: int = 256) -> np.ndarray:
    """For each candidate A: sub(F, A) <= A(sup F) over every given F."""
    lat = p.lattice
    ok = np.ones(len(cands), dtype=bool)
    for s in range(0, len(cands), chunk):
        part = cands[s:s + chunk]
        subs = fuzzy.sub_rows(lat, f_rows[None, :, :], part[:, None, :])        # (A, F)
        ok[s:s + chunk] = lat.leq[subs, part[:, sups]].all(axis=1)
    return ok


def scott_convex_rows(p: LOrderedSet, cands: np.ndarray, budget: int | None = SCOTT_BUDGET) -> np.ndarray:
    """Mask of Scott convex rows.

    Only lower sets are candidates, and for a lower set A and any F,
    sub(F, A) = sub(down F, A) while F and down F share their supremum, so
    F ranges over nonempty lower sets that have a supremum.
    """
    cands = np.atleast_2d(np.asarray(cands, dtype=np.int64))
    mask = order._lower_rows(p, cands)
    f_rows, sups = _lower_sets_with_sup(p, SCAN_BUDGET)
    check_budget(int(mask.sum()) * len(f_rows), budget, "Scott convexity scan")
    idx = np.flatnonzero(mask)
    mask[idx] = _absorbs(p, cands[idx], f_rows, sups)
    return mask


def scott_convex_oracle_rows(p: LOrderedSet, cands: np.ndarray, budget: int | None = SCOTT_BUDGET) -> np.ndarray:
    """Definitional scan: lower set, and the absorption inequality over every nonempty F."""
    cands = np.atleast_2d(np.asarray(cands, dtype=np.int64))
    f_rows = order.nonempty_subset_rows(p, SCAN_BUDGET)
    check_budget(len(cands) * len(f_rows), budget, "Scott convexity oracle")
    sups = order.supremum_rows(p, f_rows)
    f_rows, sups = f_rows[sups >= 0], sups[sups >= 0]
    return order._lower_rows(p, cands) & _absorbs(p, cands, f_rows, sups)


def is_scott_convex(p: LOrderedSet, a: LSubset, budget: int | None = SCAN_BUDGET) -> Verdict:
    order._check(p, a)
    if not order.is_lower_set(p, a):
        return Verdict(False, note="not a lower set")
    lat = p.lattice
    f_rows = order.nonempty_subset_rows(p, budget)
    sups = order.supremum_rows(p, f_rows)
    has = sups >= 0
    f_rows, sups = f_rows[has], sups[has]
    subs = fuzzy.sub_rows(lat, f_rows, a.vec[None, :])
    bad = np.flatnonzero(~lat.leq[subs, a.vec[sups]])
    if len(bad):
        return Verdict(False, LSubset.from_array(p.carrier, lat, f_rows[bad[0]]),
                       note="supremum not absorbed")
    return Verdict(True, details={"checked": int(len(f_rows))})


def scott_structure(p: LOrderedSet, budget: int | None = SCOTT_BUDGET, check: bool = True,
                    oracle: bool = False) -> LConvexSpace:
    """sigma*(P): every Scott convex L-subset of P.

    ``check`` asserts C1-C4, S0 and that the specialization order is P again;
    ``oracle`` re-derives the family by the definitional scan.
    """
    lat = p.lattice
    cands = fuzzy.all_rows(lat, p.size, SCAN_BUDGET)
    rows = cands[scott_convex_rows(p, cands, budget)]
    if oracle:
        slow = cands[scott_convex_oracle_rows(p, cands, budget)]
        if not np.array_equal(slow, rows):
            raise InvariantViolation("Scott convexity fast path and oracle disagree")
    space = LConvexSpace.from_rows(p.carrier, lat, rows, name=f"sigma*({p.name})")
    if check:
        closed = convex._close(lat, space.rows, p.size, None)
        if not np.array_equal(closed, space.rows):
            raise InvariantViolation("sigma* is not closed under meets and a -> (-)")
        if not np.array_equal(specialization(space).e, p.e):
            raise InvariantViolation("specialization of sigma*(P) is not P")
    return space


@dataclass(frozen=True, eq=False)
class ScottBridge:
    order: LOrderedSet
    space: LConvexSpace


def scott_bridge(p: LOrderedSet, budget: int | None = SCOTT_BUDGET) -> ScottBridge:
    return ScottBridge(p, scott_structure(p, budget))


# ------------------------------------------------------------------- maps
def is_scott_cp(f: CarrierMap, p: LOrderedSet, q: LOrderedSet, budget: int | None = SCAN_BUDGET) -> Verdict:
    """Order-preserving, and f(sup F) = sup f->(F) whenever sup F exists."""
    t = f.array
    ok = p.lattice.leq[p.e, q.e[t[:, None], t[None, :]]]
    if not ok.all():
        x, y = (int(v) for v in np.argwhere(~ok)[0])
        return Verdict(False, (p.carrier.labels[x], p.carrier.labels[y]), note="not order-preserving")
    f_rows = order.nonempty_subset_rows(p, budget)
    sups = order.supremum_rows(p, f_rows)
    has = sups >= 0
    f_rows, sups = f_rows[has], sups[has]
    images = fuzzy.forward_rows(p.lattice, t, q.size, f_rows)
    bad = np.flatnonzero(order.supremum_rows(q, images) != t[sups])
    if len(bad):
        return Verdict(False, LSubset.from_array(p.carrier, p.lattice, f_rows[bad[0]]),
                       note="supremum not preserved")
    return Verdict(True, details={"checked": int(len(f_rows))})


def scott_cp_equivalence(f: CarrierMap, p: LOrderedSet, q: LOrderedSet,
                         budget: int | None = SCOTT_BUDGET,
                         structures: tuple[LConvexSpace, LConvexSpace] | None = None) -> Verdict:
    """Scott-cp on the orders iff convexity-preserving between the sigma* spaces."""
    sp, sq = structures or (scott_structure(p, budget), scott_structure(q, budget))
    left = is_scott_cp(f, p, q)
    right = SpaceMap(f, sp, sq).convexity_preserving
    if bool(left) != bool(right):
        raise EquivalenceViolation(f"Scott-cp is {left.holds} but convexity-preserving is {right.holds}",
                                   witness=left.witness or right.witness)
    return Verdict(left.holds, left.witness or right.witness, left.note)


# --------------------------------------------------- sobriety via the order
def sober_join_characterization(space: LConvexSpace, budget: int | None = SCAN_BUDGET) -> Verdict:
    """sober iff the specialization order is a join-semilattice and C is inside sigma*."""
    spec = specialization(space)
    join = order.is_join_semilattice(spec, budget)
    scott_ok = scott_convex_rows(spec, space.rows)
    inclusion = bool(scott_ok.all())
    sob = sober.is_sober(space)
    details = {"sober": sob.holds, "join_semilattice": join.holds, "scott_inclusion": inclusion}
    if sob.holds != (join.holds and inclusion):
        raise EquivalenceViolation(f"sober/join characterization disagrees: {details}", witness=space)
    witness = None
    if not sob:
        witness = join.witness if not join else space.members[int(np.flatnonzero(~scott_ok)[0])]
    return Verdict(sob.holds, witness, details=details)


def supremum_hull_check(space: LConvexSpace, budget: int | None = SCAN_BUDGET) -> Verdict:
    """In a sober space, hull(F) = hull(1_s) with s the specialization supremum of F."""
    spec = specialization(space)
    f_rows = order.nonempty_subset_rows(spec, budget)
    sups = order.supremum_rows(spec, f_rows)
    if (sups < 0).any():
        i = int(np.flatnonzero(sups < 0)[0])
        return Verdict(False, space.subset(f_rows[i]), note="no supremum")
    bad = np.flatnonzero(~(convex.hull_rows(space, f_rows) == space.point_hulls[sups]).all(axis=1))
    if len(bad):
        return Verdict(False, space.subset(f_rows[bad[0]]))
    return Verdict(True, details={"checked": int(len(f_rows))})


# -------------------------------------------------------------- completion
@dataclass(frozen=True, eq=False)
class CompletionResult:
    completion_order: LOrderedSet
    xi: CarrierMap
    underlying: sober.SobrificationResult
    scott_space: LConvexSpace
    verdicts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        lat = self.completion_order.lattice
        return {
            "order": self.scott_space.name,
            "lattice": lat.name,
            "points": [
                {"label": lbl, "convex_set": str(k)}
                for lbl, k in zip(self.completion_order.carrier.labels, self.underlying.provenance)
            ],
            "xi": dict(zip(self.xi.source.labels, (self.xi.target.labels[t] for t in self.xi.table))),
            "e": [[lat.label(int(d)) for d in r] for r in self.completion_order.e],
            "verdicts": self.verdicts,
        }

    def format(self) -> str:
        o = self.completion_order
        lines = [f"completion {o.name} over {o.lattice.name}: {o.size} points"]
        for lbl, k in zip(o.carrier.labels, self.underlying.provenance):
            lines.append(f"  {lbl:<16} = {k}")
        lines.append("  xi:")
        for x, t in zip(self.xi.source.labels, self.xi.table):
            lines.append(f"    {x} -> {self.xi.target.labels[t]}")
        lines.append("  e = sub:")
        for lbl, r in zip(o.carrier.labels, o.e):
            lines.append(f"    {lbl:<16} " + " ".join(o.lattice.label(int(d)) for d in r))
        lines.append("  verdicts:")
        for k, v in self.verdicts.items():
            lines.append(f"    {k}: {v}")
        return "\n".join(lines)


def completion(p: LOrderedSet, budget: int | None = SCOTT_BUDGET, check: bool = True) -> CompletionResult:
    """(P^F, sub) with xi_P, from the sobrification of (P, sigma*(P))."""
    lat = p.lattice
    sp = scott_structure(p, budget)
    sob = sober.sobrify(sp)
    prov = sob.compact.rows[list(sob.xf_points)]
    e = fuzzy.sub_matrix(lat, prov, prov)
    pf = order.build_order(sob.xf_space.carrier, lat, e, name=f"{p.name}^F")
    verdicts: dict = {}
    if check:
        verdicts["e_is_specialization"] = bool(np.array_equal(specialization(sob.xf_space).e, e))
        verdicts["join_semilattice"] = bool(order.is_join_semilattice(pf))
        verdicts["xi_scott_cp"] = bool(is_scott_cp(sob.xi.map, p, pf))
        sigma = scott_structure(pf, budget)
        verdicts["convex_equals_scott"] = bool(np.array_equal(sigma.rows, sob.xf_space.rows))
        if not all(verdicts.values()):
            raise InvariantViolation(f"completion postconditions failed: {verdicts}")
    return CompletionResult(pf, sob.xi.map, sob, sp, verdicts)


def verify_completion(p: LOrderedSet, q: LOrderedSet, j: CarrierMap, budget: int | None = SCOTT_BUDGET,
                      check_unique: bool = True) -> Verdict:
    """Is (Q, j) a join-semilattice completion of P?

    Compares against the canonical completion: the extension g of j along
    xi_P must be an order isomorphism and convex-homeomorphism whose inverse
    h satisfies h o j = xi_P.
    """
    details: dict = {}
    join = order.is_join_semilattice(q)
    details["join_semilattice"] = join.holds
    if not join:
        return Verdict(False, join.witness, "target is not a join-semilattice", details)
    scp = is_scott_cp(j, p, q)
    details["scott_cp"] = scp.holds
    if not scp:
        return Verdict(False, scp.witness, "j is not Scott convexity-preserving", details)
    comp = completion(p, budget, check=False)
    sq = scott_structure(q, budget)
    if not sober.is_sober(sq):
        raise InvariantViolation("sigma* of a join-semilattice is not sober")
    jmap = SpaceMap(j, comp.scott_space, sq)
    if not jmap.convexity_preserving:
        raise EquivalenceViolation("Scott-cp map is not convexity-preserving between sigma* spaces")
    ext = sober.extend_to_sobrification(comp.scott_space, sq, jmap, comp.underlying, check_unique, SCAN_BUDGET)
    g = ext.map
    details["unique_extension"] = ext.unique
    details["bijective"] = g.map.is_bijective
    if not g.map.is_bijective:
        return Verdict(False, g.map.table, "comparison map is not bijective", details)
    details["order_isomorphism"] = order.is_order_isomorphism(g.map, comp.completion_order, q)
    details["homeomorphism"] = g.homeomorphism.holds
    inverse = [0] * q.size
    for k, z in enumerate(g.map.table):
        inverse[z] = k
    h = CarrierMap(q.carrier, comp.completion_order.carrier, tuple(inverse))
    details["inverse_commutes"] = h.compose(j).table == comp.xi.table
    details["identities"] = (h.compose(g.map).table == tuple(range(g.source.size))
                             and g.map.compose(h).table == tuple(range(q.size)))
    holds = all(details[k] for k in ("order_isomorphism", "homeomorphism", "inverse_commutes", "identities"))
    holds = holds and ext.unique is not False
    return Verdict(holds, None if holds else g.map.table, details=details)

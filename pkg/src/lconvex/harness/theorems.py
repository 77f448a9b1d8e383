"""Theorem-regression suite: one check per statement, run over generated instances.

Each check raises :class:`Failure` with a witness on the first violation;
budget overruns turn into Skipped, any other library error into Fail.
"""

from __future__ import annotations

import itertools
import json
from contextlib import contextmanager, nullcontext
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator

import numpy as np

from .. import convex, fuzzy, lattice, order, scott, sober
from .._common import BudgetExceeded, LConvexError, NotS0, check_budget
from ..convex import LConvexSpace, SpaceMap
from ..fuzzy import Carrier, CarrierMap
from ..lattice import named_lattice
from ..order import LOrderedSet
from .generators import InstanceSpec, generate_orders, generate_spaces

PASS, FAIL, SKIPPED = "Pass", "Fail", "Skipped"

LAW_LATTICES = ("boolean", "godel3", "godel4", "godel5", "lukasiewicz3", "lukasiewicz4",
                "lukasiewicz5", "booleanxgodel3")


class Failure(Exception):
    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


def require(cond: bool, message: str, witness: object = None) -> None:
    if not cond:
        raise Failure(message, witness)


@dataclass
class Outcome:
    cases: int = 0
    skipped: int = 0
    note: str = ""


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    statement: str
    instances: str
    runner: Callable[["Context"], Outcome]


@dataclass
class CheckResult:
    id: str
    statement: str
    status: str
    cases: int = 0
    skipped_cases: int = 0
    witness: str | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "statement": self.statement, "status": self.status, "cases": self.cases,
                "skipped_cases": self.skipped_cases, "witness": self.witness, "note": self.note}


# ----------------------------------------------------------------- context
class Context:
    """Generated instances and per-instance results shared between checks."""

    MAP_PAIR_SAMPLES = 60
    UNIVERSAL_SAMPLES = 60

    def __init__(self, spec: InstanceSpec):
        self.spec = spec
        self._sob: dict[int, sober.SobrificationResult] = {}
        self._cp: dict[int, LConvexSpace] = {}
        self._sigma: dict[int, LConvexSpace] = {}
        self._completion: dict[int, scott.CompletionResult] = {}

    @cached_property
    def lattices(self) -> list[lattice.ResiduatedLattice]:
        return [named_lattice(n) for n in self.spec.lattices]

    @cached_property
    def spaces(self) -> list[LConvexSpace]:
        return list(generate_spaces(self.spec))

    @cached_property
    def orders(self) -> list[LOrderedSet]:
        return list(generate_orders(self.spec))

    def sob(self, i: int) -> sober.SobrificationResult:
        if i not in self._sob:
            self._sob[i] = sober.sobrify(self.spaces[i], check=False, budget=self.spec.scan_budget)
        return self._sob[i]

    def cp(self, i: int) -> LConvexSpace:
        if i not in self._cp:
            self._cp[i] = self.sob(i).cp
        return self._cp[i]

    def sigma(self, i: int) -> LConvexSpace:
        if i not in self._sigma:
            self._sigma[i] = scott.scott_structure(self.orders[i], self.spec.scott_budget, check=False)
        return self._sigma[i]

    def completion(self, i: int) -> scott.CompletionResult:
        if i not in self._completion:
            self._completion[i] = scott.completion(self.orders[i], self.spec.scott_budget, check=False)
        return self._completion[i]

    @cached_property
    def sober_flags(self) -> list[bool]:
        return [bool(sober.is_sober(x)) for x in self.spaces]

    @cached_property
    def s0_flags(self) -> list[bool]:
        return [sober.is_s0(x) for x in self.spaces]

    @cached_property
    def map_pairs(self) -> list[tuple[int, int]]:
        """All same-lattice pairs with both carriers of at most two points, then
        seeded pairs involving a larger carrier."""
        small = [i for i, x in enumerate(self.spaces) if x.size <= 2]
        big = [i for i, x in enumerate(self.spaces) if x.size > 2]
        pairs = [(i, j) for i in small for j in small if self.spaces[i].lattice == self.spaces[j].lattice]
        if big:
            rng = np.random.default_rng([self.spec.seed, 7])
            pool = small + big
            extra = []
            for _ in range(20 * self.MAP_PAIR_SAMPLES):
                if len(extra) >= self.MAP_PAIR_SAMPLES:
                    break
                i, j = (int(v) for v in rng.choice(len(pool), 2))
                i, j = pool[i], pool[j]
                if self.spaces[i].lattice == self.spaces[j].lattice and max(
                        self.spaces[i].size, self.spaces[j].size) > 2:
                    extra.append((i, j))
            pairs += extra
        return pairs

    def maps(self, i: int, j: int) -> Iterator[SpaceMap]:
        x, y = self.spaces[i], self.spaces[j]
        for t in sober.all_tables(y.size, x.size, self.spec.scan_budget):
            yield SpaceMap.from_table(x, y, t)

    @cached_property
    def order_pairs(self) -> list[tuple[int, int]]:
        small = [i for i, p in enumerate(self.orders) if p.size <= 2]
        return [(i, j) for i in small for j in small if self.orders[i].lattice == self.orders[j].lattice]


# ---------------------------------------------------------------- helpers
def _fmt(witness: object) -> str | None:
    if witness is None:
        return None
    if isinstance(witness, np.ndarray):
        return str(witness.tolist())
    return str(witness)


@contextmanager
def instance(out: Outcome):
    """Count a budget overrun on one instance as skipped instead of aborting the check."""
    try:
        yield
    except BudgetExceeded:
        out.skipped += 1


def _rows(lat, m: int, budget: int) -> np.ndarray:
    return fuzzy.all_rows(lat, m, budget)


# ============================================================== section: lattices, orders
def check_residuation(ctx: Context) -> Outcome:
    out = Outcome()
    for name in LAW_LATTICES:
        lat = named_lattice(name)
        check_budget(2 ** lat.size * lat.size ** 2, ctx.spec.scan_budget, "residuation laws")
        rep = lattice.verify_lattice_laws(lat)
        out.cases += sum(r.checked for r in rep.results)
        require(rep.passed, f"residuation law fails on {name}", rep.format())
    return out


def _e_scalar_ok(lat, e: np.ndarray) -> bool:
    m = len(e)
    if any(e[x, x] != lat.top for x in range(m)):
        return False
    for x, y, z in itertools.product(range(m), repeat=3):
        if not lat.le(lat.mul(int(e[x, y]), int(e[y, z])), int(e[x, z])):
            return False
    return not any(x != y and lat.meet[e[x, y], e[y, x]] == lat.top for x in range(m) for y in range(m))


def check_l_order(ctx: Context) -> Outcome:
    out = Outcome()
    for lat in ctx.lattices:
        carrier = Carrier.of_size(2)
        for vals in _rows(lat, 4, ctx.spec.scan_budget):
            e = vals.reshape(2, 2)
            try:
                order.build_order(carrier, lat, e)
                accepted = True
            except (order.E1Violation, order.E2Violation, order.E3Violation):
                accepted = False
            require(accepted == _e_scalar_ok(lat, e), "E1-E3 validation disagrees with scalar check", e)
            out.cases += 1
    for p in ctx.orders:
        require(_e_scalar_ok(p.lattice, p.e), "generated order violates E1-E3", p.name)
        out.cases += 1
    return out


def check_example_orders(ctx: Context) -> Outcome:
    out = Outcome()
    for lat in ctx.lattices:
        p = order.lattice_order(lat)
        require(_e_scalar_ok(lat, p.e), "e_L is not an L-order", lat.name)
        for m in (1, 2):
            check_budget(lat.size ** m, ctx.spec.scan_budget, "inclusion order")
            q = order.inclusion_order_space(Carrier.of_size(m), lat, ctx.spec.scan_budget)
            require(_e_scalar_ok(lat, q.e), "sub is not an L-order", (lat.name, m))
            out.cases += 1
        out.cases += 1
    return out


def check_zadeh(ctx: Context) -> Outcome:
    """sub(f->A, B) = sub(A, f<-B) and both extensions are order-preserving."""
    out = Outcome()
    sizes = sorted({m for m in ctx.spec.carrier_sizes if m <= 3})
    for lat in ctx.lattices:
        for mx, my in itertools.product(sizes, sizes):
            a = _rows(lat, mx, ctx.spec.scan_budget)
            b = _rows(lat, my, ctx.spec.scan_budget)
            sa = fuzzy.sub_matrix(lat, a, a)
            sb = fuzzy.sub_matrix(lat, b, b)
            for t in sober.all_tables(my, mx, ctx.spec.scan_budget):
                fa = fuzzy.forward_rows(lat, t, my, a)
                bb = fuzzy.backward_rows(t, b)
                lhs = fuzzy.sub_matrix(lat, fa, b)
                rhs = fuzzy.sub_matrix(lat, a, bb)
                require(np.array_equal(lhs, rhs), "adjunction fails", (lat.name, t.tolist()))
                require(lat.leq[sa, fuzzy.sub_matrix(lat, fa, fa)].all(), "f-> not order-preserving", t.tolist())
                require(lat.leq[sb, fuzzy.sub_matrix(lat, bb, bb)].all(), "f<- not order-preserving", t.tolist())
                out.cases += lhs.size
    return out


def check_lower_upper(ctx: Context) -> Outcome:
    out = Outcome()
    for p in ctx.orders:
        lat = p.lattice
        rows = _rows(lat, p.size, ctx.spec.scan_budget)
        fast_lower, fast_upper = order._lower_rows(p, rows), order._upper_rows(p, rows)
        for r, lo, up in zip(rows, fast_lower, fast_upper):
            slow_lo = all(lat.le(lat.mul(int(r[x]), int(p.e[y, x])), int(r[y]))
                          for x in range(p.size) for y in range(p.size))
            slow_up = all(lat.le(lat.mul(int(r[x]), int(p.e[x, y])), int(r[y]))
                          for x in range(p.size) for y in range(p.size))
            require(lo == slow_lo and up == slow_up, "lower/upper test disagrees with definition", (p.name, r))
        for x in range(p.size):
            require(order.is_lower_set(p, order.down(p, x)), "down x is not lower", (p.name, x))
            require(order.is_upper_set(p, order.up(p, x)), "up x is not upper", (p.name, x))
        out.cases += len(rows)
    return out


def check_sup_inf(ctx: Context) -> Outcome:
    out = Outcome()
    for p in ctx.orders:
        rows = _rows(p.lattice, p.size, ctx.spec.scan_budget)
        sups, infs = order.supremum_rows(p, rows), order.infimum_rows(p, rows)
        for r, s, i in zip(rows, sups, infs):
            a = fuzzy.LSubset.from_array(p.carrier, p.lattice, r)
            slow_s, slow_i = order.supremum(p, a), order.infimum(p, a)
            require((slow_s if slow_s is not None else -1) == s, "supremum fast path disagrees", (p.name, r))
            require((slow_i if slow_i is not None else -1) == i, "infimum fast path disagrees", (p.name, r))
        for x in range(p.size):
            require(order.supremum_rows(p, p.e[:, x])[0] == x, "sup of down x is not x", (p.name, x))
        out.cases += len(rows)
    return out


# ============================================================== section: convex spaces
def check_convex_structure(ctx: Context) -> Outcome:
    out = Outcome()
    for x in ctx.spaces:
        rep = convex.verify_space_axioms(x, directed_bound=3)
        require(rep.passed, "generated family violates C1-C4", (x.name, rep.failed()))
        out.cases += 1
    return out


def check_hull(ctx: Context) -> Outcome:
    """hull(A) is the least member above A (checked against a member scan)."""
    out = Outcome()
    for x in ctx.spaces:
        lat = x.lattice
        rows = _rows(lat, x.size, ctx.spec.scan_budget)
        h = convex.hull_rows(x, rows)
        require(x.contains_rows(h).all(), "hull is not a member", x.name)
        require(fuzzy.leq_rows(lat, rows, h).all(), "hull is not above A", x.name)
        above = fuzzy.leq_rows(lat, rows[:, None, :], x.rows[None, :, :])
        below = fuzzy.leq_rows(lat, h[:, None, :], x.rows[None, :, :])
        require(np.array_equal(above, below), "a member above A is not above hull(A)", x.name)
        out.cases += len(rows)
    return out


def hull_laws(x: LConvexSpace, budget: int) -> int:
    """The three hull laws over all A, B in L^X, members B and degrees a."""
    lat = x.lattice
    rows = _rows(lat, x.size, budget)
    co = convex.hull_rows(x, rows)
    scaled = lat.tensor[np.arange(lat.size)[:, None, None], rows[None, :, :]]      # a * A
    lhs = lat.tensor[np.arange(lat.size)[:, None, None], co[None, :, :]]           # a * co(A)
    rhs = convex.hull_rows(x, scaled.reshape(-1, x.size)).reshape(scaled.shape)
    require(fuzzy.leq_rows(lat, lhs, rhs).all(), "a * co(A) <= co(a * A) fails", x.name)
    s_ab = fuzzy.sub_matrix(lat, rows, rows)
    s_co = fuzzy.sub_matrix(lat, co, co)
    require(lat.leq[s_ab, s_co].all(), "hull is not sub-order-preserving", x.name)
    require(np.array_equal(fuzzy.sub_matrix(lat, rows, x.rows), fuzzy.sub_matrix(lat, co, x.rows)),
            "sub(A, B) != sub(co A, B) for a member B", x.name)
    return len(rows) * (lat.size + len(rows) + len(x))


def check_hull_lemma(ctx: Context) -> Outcome:
    out = Outcome()
    for x in ctx.spaces:
        out.cases += hull_laws(x, ctx.spec.scan_budget)
    return out


def check_map_kinds(ctx: Context) -> Outcome:
    """Map predicates agree with member-by-member Zadeh images; identities and
    inverses of homeomorphisms are homeomorphisms."""
    out = Outcome()
    for x in ctx.spaces:
        ident = SpaceMap(CarrierMap.identity(x.carrier), x, x)
        require(bool(ident.homeomorphism), "identity is not a homeomorphism", x.name)
    for i, j in ctx.map_pairs:
        for f in ctx.maps(i, j):
            pre = all(fuzzy.zadeh_backward(f.map, b) in f.source for b in f.target.members)
            img = all(fuzzy.zadeh_forward(f.map, a) in f.target for a in f.source.members)
            require(bool(f.convexity_preserving) == pre, "convexity-preserving verdict wrong", f.map.table)
            require(bool(f.convex_to_convex) == img, "convex-to-convex verdict wrong", f.map.table)
            require(bool(f.homeomorphism) == (f.map.is_bijective and pre and img), "homeomorphism verdict wrong",
                    f.map.table)
            if f.homeomorphism:
                inv = [0] * f.target.size
                for a, b in enumerate(f.map.table):
                    inv[b] = a
                require(bool(SpaceMap.from_table(f.target, f.source, inv).homeomorphism),
                        "inverse of a homeomorphism is not one", f.map.table)
            out.cases += 1
    return out


def check_hull_characterization(ctx: Context) -> Outcome:
    out = Outcome()
    for i, j in ctx.map_pairs:
        for f in ctx.maps(i, j):
            v = convex.hull_image_characterization(f, ctx.spec.scan_budget)
            require(bool(v) == bool(f.convexity_preserving), "hull characterization disagrees",
                    (f.source.name, f.target.name, f.map.table))
            out.cases += 1
    return out


# ============================================================== section: sobriety
def check_finite(ctx: Context) -> Outcome:
    out = Outcome()
    for lat in ctx.lattices:
        for m in (1, 2):
            carrier = Carrier.of_size(m)
            for a in fuzzy.all_subsets(carrier, lat, ctx.spec.scan_budget):
                v = fuzzy.is_finite_subset(a, probe_bound=3, budget=ctx.spec.scan_budget)
                require(v.finite and not v.violations, "finite-scale L-subset reported infinite", a)
                out.cases += 1
    return out


OPEN_INFINITE = "compact = polytope = nonempty member at finite scale; open in the infinite case"


def check_polytope(ctx: Context) -> Outcome:
    """Hulls of nonempty L-subsets are exactly the nonempty members."""
    out = Outcome()
    for x in ctx.spaces:
        lat = x.lattice
        rows = _rows(lat, x.size, ctx.spec.scan_budget)
        rows = rows[fuzzy.nonempty_rows(lat, rows)]
        found = np.zeros(len(x), dtype=bool)
        found[x.find_rows(convex.hull_rows(x, rows))] = True
        require(np.array_equal(found, x.nonempty), "polytopes differ from nonempty members", x.name)
        out.cases += len(rows)
    out.note = OPEN_INFINITE
    return out


def check_sober_def(ctx: Context) -> Outcome:
    out = Outcome()
    for x in ctx.spaces:
        sober.is_sober(x, oracle=True, budget=ctx.spec.scan_budget)     # raises on disagreement
        out.cases += 1
    return out


def check_characteristic_finite(ctx: Context) -> Outcome:
    out = Outcome()
    for lat in ctx.lattices:
        if not lat.is_frame:
            continue
        for m in (1, 2):
            carrier = Carrier.of_size(m)
            for r in range(m + 1):
                for pts in itertools.combinations(range(m), r):
                    chi = fuzzy.characteristic(carrier, lat, pts)
                    require(bool(fuzzy.is_finite_subset(chi, 3, ctx.spec.scan_budget)),
                            "characteristic function is not finite", chi)
                    out.cases += 1
    return out


def check_compact(ctx: Context) -> Outcome:
    out = Outcome()
    for x in ctx.spaces:
        oracle = convex.compact_oracle_rows(x, probe_bound=3) & x.nonempty
        require(np.array_equal(oracle, convex.compact_mask(x)), "compact oracle disagrees", x.name)
        out.cases += len(x)
    out.note = OPEN_INFINITE
    return out


def check_phi_lemma(ctx: Context) -> Outcome:
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        lat = x.lattice
        cpf = ctx.sob(i).compact
        phi = sober.phi_rows(cpf)                               # one row per member
        k = len(cpf)
        bottom = x.index(fuzzy.bottom(x.carrier, lat))
        top = x.index(fuzzy.top(x.carrier, lat))
        require((phi[bottom] == lat.bottom).all() and (phi[top] == lat.top).all(), "phi of constants", x.name)
        for combos, joins in x.directed_families(3):
            j = x.find_rows(joins)
            require(np.array_equal(phi[j], lat.join_reduce(phi[combos], axis=1)), "phi misses a directed join",
                    x.name)
        meets = x.find_rows(lat.meet[x.rows[:, None, :], x.rows[None, :, :]].reshape(-1, x.size))
        pair_meets = lat.meet[phi[:, None, :], phi[None, :, :]].reshape(-1, k)
        require(np.array_equal(phi[meets], pair_meets), "phi misses a meet", x.name)
        whole = x.find_rows(lat.meet_reduce(x.rows, axis=0)[None, :])
        require(np.array_equal(phi[whole[0]], lat.meet_reduce(phi, axis=0)), "phi misses the full meet", x.name)
        scaled = lat.residuum_table[np.arange(lat.size)[:, None, None], x.rows[None, :, :]]
        idx = x.find_rows(scaled.reshape(-1, x.size)).reshape(lat.size, len(x))
        phi_scaled = lat.residuum_table[np.arange(lat.size)[:, None, None], phi[None, :, :]]
        require(np.array_equal(phi[idx], phi_scaled), "phi(a -> C) != a -> phi(C)", x.name)
        require(np.array_equal(x.sub_members, fuzzy.sub_matrix(lat, phi, phi)), "phi does not preserve sub",
                x.name)
        out.cases += len(x) ** 2
    return out


def check_cp_sober(ctx: Context) -> Outcome:
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        cpx = ctx.cp(i)
        lat = x.lattice
        small = lat.size ** cpx.size <= 729
        v = sober.is_sober(cpx, oracle=small)
        require(bool(v), "Cp(C(X)) is not sober", (x.name, _fmt(v.witness)))
        phi = sober.phi_rows(ctx.sob(i).compact)
        compact_rows = phi[ctx.sob(i).compact.member_index]
        require(np.array_equal(compact_rows, cpx.point_hulls), "phi(K) != hull(1_K) in Cp", x.name)
        out.cases += 1
    return out


def check_f_closed(ctx: Context) -> Outcome:
    out = Outcome()
    for x in ctx.spaces:
        closed = sober.f_closed_sets(x, ctx.spec.scan_budget)
        cs = set(closed)
        require(frozenset() in cs and frozenset(range(x.size)) in cs, "empty or full set not F-closed", x.name)
        for a, b in itertools.combinations(closed, 2):
            require(a & b in cs, "F-closed sets not closed under intersection", (x.name, sorted(a), sorted(b)))
        for r in range(x.size + 1):
            for pts in itertools.combinations(range(x.size), r):
                fast = sober.f_closure(x, pts, ctx.spec.scan_budget)
                slow = sober.f_closure_oracle(x, pts, ctx.spec.scan_budget)
                require(fast == slow, "F-closure iteration disagrees with intersection", (x.name, pts))
                out.cases += 1
        ident = SpaceMap(CarrierMap.identity(x.carrier), x, x)
        require(bool(sober.is_f_continuous(ident, ctx.spec.scan_budget)), "identity not F-continuous", x.name)
    return out


def check_fcon(ctx: Context) -> Outcome:
    """Hull transport along convexity-preserving maps, F-continuity, and
    agreement on F-closures for maps into S0 targets."""
    out = Outcome()
    for i, j in ctx.map_pairs:
        x, y = ctx.spaces[i], ctx.spaces[j]
        lat = x.lattice
        rows = _rows(lat, x.size, ctx.spec.scan_budget)
        rows = rows[fuzzy.nonempty_rows(lat, rows)]
        witnesses = sober._hull_witnesses(x, rows)
        cp_maps = [f for f in ctx.maps(i, j) if f.convexity_preserving]
        for f in cp_maps:
            hy = convex.hull_rows(y, f.image_rows(rows))
            for r, h, hits in zip(rows, hy, witnesses):
                for w in hits:
                    require(np.array_equal(h, y.point_hulls[f.map.table[w]]), "hull transport fails",
                            (x.name, y.name, f.map.table, r))
            require(bool(sober.is_f_continuous(f, ctx.spec.scan_budget)), "not F-continuous", f.map.table)
            out.cases += 1
        if sober.is_s0(y):
            for f, g in itertools.combinations(cp_maps, 2):
                agree = [p for p in range(x.size) if f.map.table[p] == g.map.table[p]]
                cl = sober.f_closure(x, agree, ctx.spec.scan_budget)
                require(all(f.map.table[p] == g.map.table[p] for p in cl), "maps disagree on F-closure",
                        (f.map.table, g.map.table))
                out.cases += 1
    return out


def check_xf_construction(ctx: Context) -> Outcome:
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        res = sober.sobrify(x, oracle=True, check=False, budget=ctx.spec.scan_budget)
        require(res.verdicts["finite_collapse"], "X^F differs from cp", x.name)
        require(convex.verify_space_axioms(res.xf_space, 2).passed, "varphi family is not a structure", x.name)
        pulled = res.xi.preimage_rows(res.xf_space.rows)
        phi = sober.phi_rows(res.compact)[:, list(res.xf_points)]
        back = res.xi.preimage_rows(phi)
        require(np.array_equal(back, x.rows), "xi<-(varphi(A)) != A", x.name)
        require(np.array_equal(canon(pulled, x), x.rows), "xi pulls members outside C(X)", x.name)
        out.cases += len(x)
    return out


def canon(rows: np.ndarray, x: LConvexSpace) -> np.ndarray:
    return convex.canonical_rows(rows, x.size)


def check_xf_sober(ctx: Context) -> Outcome:
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        xf = ctx.sob(i).xf_space
        small = xf.lattice.size ** xf.size <= 729
        require(bool(sober.is_sober(xf, oracle=small)), "X^F is not sober", x.name)
        out.cases += 1
    return out


def check_sober_iso(ctx: Context) -> Outcome:
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        xi = ctx.sob(i).xi
        require(bool(xi.convexity_preserving), "xi is not convexity-preserving", x.name)
        require(ctx.sober_flags[i] == bool(xi.homeomorphism), "sober iff xi homeomorphism fails", x.name)
        out.cases += 1
    return out


def check_fclosed_transfer(ctx: Context) -> Outcome:
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        res = ctx.sob(i)
        if res.xf_space.size > 6:
            out.skipped += 1
            continue
        cpx = res.cp
        for z in sober.f_closed_sets(res.xf_space, ctx.spec.scan_budget):
            pts = [res.xf_points[p] for p in z]
            require(bool(sober.is_f_closed(cpx, pts, ctx.spec.scan_budget)), "F-closed set does not transfer",
                    (x.name, sorted(z)))
            out.cases += 1
    if out.skipped:
        out.note = f"{out.skipped} spaces with |X^F| > 6 outside the envelope"
    return out


def check_sobrification_def(ctx: Context) -> Outcome:
    """Sobrifying a sobrification changes nothing up to homeomorphism."""
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        xf = ctx.sob(i).xf_space
        again = sober.sobrify(xf, check=False, budget=ctx.spec.scan_budget)
        require(bool(again.xi.homeomorphism), "sobrification is not idempotent", x.name)
        out.cases += 1
    return out


def universal_pairs(ctx: Context) -> list[tuple[int, int]]:
    """Boolean pairs with both carriers of at most two points, all of them;
    seeded pairs over three-element lattices."""
    pairs = []
    sober_idx = [i for i, f in enumerate(ctx.sober_flags) if f]
    for i, x in enumerate(ctx.spaces):
        if x.lattice.size == 2 and x.size <= 2:
            pairs += [(i, j) for j in sober_idx if ctx.spaces[j].lattice == x.lattice and ctx.spaces[j].size <= 2]
    three = [i for i, x in enumerate(ctx.spaces) if x.lattice.size == 3]
    if three:
        rng = np.random.default_rng([ctx.spec.seed, 11])
        extra = []
        for _ in range(50 * ctx.UNIVERSAL_SAMPLES):
            if len(extra) >= ctx.UNIVERSAL_SAMPLES:
                break
            i = three[int(rng.integers(len(three)))]
            cands = [j for j in sober_idx if ctx.spaces[j].lattice == ctx.spaces[i].lattice
                     and ctx.spaces[j].size <= 3]
            if cands:
                extra.append((i, cands[int(rng.integers(len(cands)))]))
        pairs += extra
    return pairs


def check_sobrification_thm(ctx: Context) -> Outcome:
    out = Outcome()
    for i, j in universal_pairs(ctx):
        x, z = ctx.spaces[i], ctx.spaces[j]
        for f in ctx.maps(i, j):
            if not f.convexity_preserving:
                continue
            ext = sober.extend_to_sobrification(x, z, f, ctx.sob(i), budget=ctx.spec.scan_budget)
            require(ext.unique is not False, "extension is not unique", (x.name, z.name, f.map.table))
            if ext.unique is None:
                out.skipped += 1
            out.cases += 1
    out.note = f"uniqueness skipped for budget: {out.skipped}"
    return out


# ============================================================== section: orders and Scott structures
def _s0_indices(ctx: Context) -> list[int]:
    return [i for i, f in enumerate(ctx.s0_flags) if f]


def check_specialization(ctx: Context) -> Outcome:
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        if ctx.s0_flags[i]:
            p = scott.specialization(x)
            require(_e_scalar_ok(x.lattice, p.e), "specialization violates E1-E3", x.name)
        else:
            try:
                scott.specialization(x)
                raise Failure("non-S0 space got a specialization order", x.name)
            except NotS0:
                pass
        out.cases += 1
    return out


def check_spec_hull(ctx: Context) -> Outcome:
    out = Outcome()
    for i in _s0_indices(ctx):
        x = ctx.spaces[i]
        lat = x.lattice
        e = np.empty((x.size, x.size), dtype=np.int64)
        for a, b in itertools.product(range(x.size), repeat=2):
            e[a, b] = lat.meet_all(lat.residuum(int(r[b]), int(r[a])) for r in x.rows)
        hull_form = np.array([convex.hull(x, fuzzy.point(x.carrier, lat, b)).degrees for b in range(x.size)]).T
        require(np.array_equal(e, hull_form), "e(x, y) != hull(1_y)(x)", x.name)
        out.cases += x.size ** 2
    return out


def check_xf_specialization(ctx: Context) -> Outcome:
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        res = ctx.sob(i)
        lat = x.lattice
        rows = res.compact.rows
        require(np.array_equal(scott.specialization(res.cp).e, fuzzy.sub_matrix(lat, rows, rows)),
                "specialization on Cp is not sub", x.name)
        xf_rows = rows[list(res.xf_points)]
        require(np.array_equal(scott.specialization(res.xf_space).e, fuzzy.sub_matrix(lat, xf_rows, xf_rows)),
                "specialization on X^F is not sub", x.name)
        out.cases += 1
    return out


def check_scott_convex(ctx: Context) -> Outcome:
    out = Outcome()
    for i, p in enumerate(ctx.orders):
        with instance(out):
            oracle = p.lattice.size ** (2 * p.size) <= ctx.spec.scott_budget
            sp = scott.scott_structure(p, ctx.spec.scott_budget, check=True, oracle=oracle)
            require(convex.verify_space_axioms(sp, 2).passed, "sigma* violates C1-C4", p.name)
            require(sober.is_s0(sp), "sigma* is not S0", p.name)
            require(np.array_equal(scott.specialization(sp).e, p.e), "Omega(sigma*(P)) != P", p.name)
            for x in range(p.size):
                require(bool(scott.is_scott_convex(p, order.down(p, x))), "down x not Scott convex", (p.name, x))
            out.cases += len(sp)
    return out


def check_scott_cp_def(ctx: Context) -> Outcome:
    out = Outcome()
    for i, j in ctx.order_pairs:
        p, q = ctx.orders[i], ctx.orders[j]
        for t in sober.all_tables(q.size, p.size, ctx.spec.scan_budget):
            f = CarrierMap(p.carrier, q.carrier, tuple(t))
            if scott.is_scott_cp(f, p, q):
                require(order.is_order_preserving(f, p, q), "Scott-cp map is not order-preserving", t.tolist())
            out.cases += 1
    for p in ctx.orders:
        require(bool(scott.is_scott_cp(CarrierMap.identity(p.carrier), p, p)), "identity not Scott-cp", p.name)
    return out


def check_scott_equivalence(ctx: Context) -> Outcome:
    out = Outcome()
    for i, j in ctx.order_pairs:
        p, q = ctx.orders[i], ctx.orders[j]
        structures = (ctx.sigma(i), ctx.sigma(j))
        for t in sober.all_tables(q.size, p.size, ctx.spec.scan_budget):
            scott.scott_cp_equivalence(CarrierMap(p.carrier, q.carrier, tuple(t)), p, q,
                                       ctx.spec.scott_budget, structures)
            out.cases += 1
    return out


def check_join_semilattice_def(ctx: Context) -> Outcome:
    out = Outcome()
    for lat in ctx.lattices:
        require(bool(order.is_join_semilattice(order.lattice_order(lat), ctx.spec.scan_budget)),
                "(L, e_L) is not a join-semilattice", lat.name)
        q = order.inclusion_order_space(Carrier.of_size(1), lat, ctx.spec.scan_budget)
        require(bool(order.is_join_semilattice(q, ctx.spec.scan_budget)), "(L^X, sub) not a join-semilattice",
                lat.name)
        out.cases += 2
    return out


def check_sober_sup(ctx: Context) -> Outcome:
    out = Outcome()
    for i, x in enumerate(ctx.spaces):
        if not ctx.sober_flags[i]:
            continue
        require(bool(order.is_join_semilattice(scott.specialization(x), ctx.spec.scan_budget)),
                "Omega X is not a join-semilattice", x.name)
        v = scott.supremum_hull_check(x, ctx.spec.scan_budget)
        require(bool(v), "hull(F) != hull(1_sup F)", (x.name, _fmt(v.witness)))
        out.cases += 1
    return out


def check_sober_join(ctx: Context) -> Outcome:
    out = Outcome()
    for i in _s0_indices(ctx):
        scott.sober_join_characterization(ctx.spaces[i], ctx.spec.scan_budget)   # raises on disagreement
        out.cases += 1
    return out


def check_omega_scott_cp(ctx: Context) -> Outcome:
    """Convexity-preserving maps from sober to S0 spaces are Scott-cp between
    the specialization orders; F-closed sets of sober spaces are the crisp
    sets closed under suprema of L-subsets they support."""
    out = Outcome()
    for i, j in ctx.map_pairs:
        if not (ctx.sober_flags[i] and ctx.s0_flags[j]):
            continue
        px, py = scott.specialization(ctx.spaces[i]), scott.specialization(ctx.spaces[j])
        for f in ctx.maps(i, j):
            if f.convexity_preserving:
                require(bool(scott.is_scott_cp(f.map, px, py)), "Omega f is not Scott-cp", f.map.table)
                out.cases += 1
    for i, x in enumerate(ctx.spaces):
        if not ctx.sober_flags[i]:
            continue
        spec_order = scott.specialization(x)
        for r in range(x.size + 1):
            for pts in itertools.combinations(range(x.size), r):
                rows = sober._supported_rows(x.lattice, x.size, list(pts), ctx.spec.scan_budget) if pts else \
                    np.zeros((0, x.size), dtype=np.int64)
                by_sup = all(int(s) in pts for s in order.supremum_rows(spec_order, rows)) if len(rows) else True
                require(by_sup == bool(sober.is_f_closed(x, pts, ctx.spec.scan_budget)),
                        "order-theoretic F-closedness disagrees", (x.name, pts))
                out.cases += 1
    return out


# ============================================================== section: completion
def check_xi_scott(ctx: Context) -> Outcome:
    out = Outcome()
    for i, p in enumerate(ctx.orders):
        with instance(out):
            comp = ctx.completion(i)
            require(bool(scott.is_scott_cp(comp.xi, p, comp.completion_order)), "xi_P is not Scott-cp", p.name)
            out.cases += 1
    return out


def check_c_sigma(ctx: Context) -> Outcome:
    out = Outcome()
    for i, p in enumerate(ctx.orders):
        with instance(out):
            comp = ctx.completion(i)
            sigma = scott.scott_structure(comp.completion_order, ctx.spec.scott_budget, check=False)
            require(np.array_equal(sigma.rows, comp.underlying.xf_space.rows), "C(P^F) != sigma*(P^F)", p.name)
            out.cases += 1
    return out


def check_completion_def(ctx: Context) -> Outcome:
    """verify_completion rejects every j that is not Scott-cp and every target
    that is not a join-semilattice."""
    out = Outcome()
    for i, p in enumerate(ctx.orders):
        with instance(out):
            if p.size > 2:
                continue
            q = ctx.completion(i).completion_order
            for t in sober.all_tables(q.size, p.size, ctx.spec.scan_budget):
                j = CarrierMap(p.carrier, q.carrier, tuple(t))
                if not scott.is_scott_cp(j, p, q):
                    require(not scott.verify_completion(p, q, j, ctx.spec.scott_budget), "accepted non-Scott-cp j",
                            (p.name, t.tolist()))
                    out.cases += 1
            if not order.is_join_semilattice(p):
                require(not scott.verify_completion(p, p, CarrierMap.identity(p.carrier), ctx.spec.scott_budget),
                        "accepted a target that is not a join-semilattice", p.name)
                out.cases += 1
    return out


def _join_semilattices(ctx: Context) -> list[int]:
    return [i for i, p in enumerate(ctx.orders) if order.is_join_semilattice(p)]


def check_completion_thm(ctx: Context) -> Outcome:
    """(P^F, sub) is a join-semilattice, xi_P is Scott-cp, and every Scott-cp
    f into a generated join-semilattice M extends uniquely."""
    out = Outcome()
    joins = _join_semilattices(ctx)
    for i, p in enumerate(ctx.orders):
        with instance(out):
            comp = ctx.completion(i)
            pf = comp.completion_order
            prov = comp.underlying.compact.rows[list(comp.underlying.xf_points)]
            require(np.array_equal(pf.e, fuzzy.sub_matrix(p.lattice, prov, prov)), "e is not sub", p.name)
            require(bool(order.is_join_semilattice(pf, ctx.spec.scan_budget)), "P^F is not a join-semilattice", p.name)
            out.cases += 1
            if p.size > 2:
                continue
            for k in joins:
                m = ctx.orders[k]
                if m.lattice != p.lattice or m.size > 2:
                    continue
                tables = sober.all_tables(m.size, pf.size, ctx.spec.scan_budget)
                scott_cp_ext = [t for t in tables if scott.is_scott_cp(CarrierMap(pf.carrier, m.carrier, tuple(t)), pf, m)]
                xi_t = comp.xi.array
                for f_t in sober.all_tables(m.size, p.size, ctx.spec.scan_budget):
                    f = CarrierMap(p.carrier, m.carrier, tuple(f_t))
                    if not scott.is_scott_cp(f, p, m):
                        continue
                    ext = [t for t in scott_cp_ext if np.array_equal(t[xi_t], f_t)]
                    require(len(ext) == 1, "Scott-cp extension is not unique", (p.name, m.name, f_t.tolist(), len(ext)))
                    out.cases += 1
    return out


def _is_sobrification_by_iso(ctx: Context, i: int, q: LOrderedSet, j: CarrierMap) -> bool:
    """(Q, sigma*(Q)) with j is a sobrification iff some homeomorphism h onto
    (P^F, C(P^F)) has h o j = xi_P (uniqueness up to homeomorphism)."""
    comp = ctx.completion(i)
    xf = comp.underlying.xf_space
    if q.size != xf.size or not sober.is_sober(sq := scott.scott_structure(q, ctx.spec.scott_budget, check=False)):
        return False
    if not SpaceMap(j, ctx.sigma(i), sq).convexity_preserving:
        return False
    for perm in itertools.permutations(range(xf.size)):
        h = SpaceMap.from_table(sq, xf, perm)
        if h.map.compose(j).table == comp.xi.table and h.homeomorphism:
            return True
    return False


def check_completion_charact(ctx: Context) -> Outcome:
    out = Outcome()
    for i, p in enumerate(ctx.orders):
        with instance(out):
            comp = ctx.completion(i)
            v = scott.verify_completion(p, comp.completion_order, comp.xi, ctx.spec.scott_budget)
            require(bool(v), "canonical completion rejected", (p.name, v.details))
            out.cases += 1
            if order.is_join_semilattice(p):
                require(bool(scott.verify_completion(p, p, CarrierMap.identity(p.carrier), ctx.spec.scott_budget)),
                        "join-semilattice is not its own completion", p.name)
                out.cases += 1
            if p.size > 2:
                continue
            for k in _join_semilattices(ctx):
                q = ctx.orders[k]
                if q.lattice != p.lattice or q.size != comp.completion_order.size:
                    continue
                for t in sober.all_tables(q.size, p.size, ctx.spec.scan_budget):
                    j = CarrierMap(p.carrier, q.carrier, tuple(t))
                    if not scott.is_scott_cp(j, p, q):
                        continue
                    left = bool(scott.verify_completion(p, q, j, ctx.spec.scott_budget))
                    right = _is_sobrification_by_iso(ctx, i, q, j)
                    require(left == right, "completion iff sobrification fails", (p.name, q.name, t.tolist()))
                    out.cases += 1
    return out


# ================================================================ registry
CHECKS: tuple[TheoremCheck, ...] = (
    TheoremCheck("Lemma-resi-lat", "residuation laws (1)-(6)", "law lattices", check_residuation),
    TheoremCheck("Def-L-order", "E1-E3 validation", "all 2x2 matrices; generated orders", check_l_order),
    TheoremCheck("Ex-L-ord", "e_L and sub are L-orders", "spec lattices", check_example_orders),
    TheoremCheck("Lemma-zadeh-adjoint", "f-> left adjoint to f<-, both order-preserving",
                 "all maps between carriers of size <= 3", check_zadeh),
    TheoremCheck("Def-lower-upper", "lower and upper sets; down x and up x", "generated orders", check_lower_upper),
    TheoremCheck("Def-sup-inf", "suprema and infima, unique when they exist", "generated orders", check_sup_inf),
    TheoremCheck("Def-convex-structure", "C1-C4", "generated spaces", check_convex_structure),
    TheoremCheck("Def-hull", "hull is the least convex superset", "generated spaces", check_hull),
    TheoremCheck("Lemma-pn-co", "hull laws: scaling, monotonicity, sub(A,B) = sub(co A, B)", "generated spaces",
                 check_hull_lemma),
    TheoremCheck("Def-maps", "convexity-preserving, convex-to-convex, homeomorphism", "map pairs",
                 check_map_kinds),
    TheoremCheck("Lemma-cp-hull", "convexity-preserving iff f->(co A) <= co(f->A)", "map pairs",
                 check_hull_characterization),
    TheoremCheck("Def-finite", "finite L-subsets (all, at finite scale)", "carriers <= 2", check_finite),
    TheoremCheck("Def-polytope", "polytopes are the nonempty members", "generated spaces", check_polytope),
    TheoremCheck("Def-sober", "sobriety fast path equals definition", "generated spaces", check_sober_def),
    TheoremCheck("Rk-fin-plo", "characteristic functions of finite sets are finite over frames", "carriers <= 2",
                 check_characteristic_finite),
    TheoremCheck("Def-compact", "compact convex sets are the nonempty members", "generated spaces", check_compact),
    TheoremCheck("Lemma-spec-conv", "phi preserves constants, directed joins, meets, a -> (-), sub",
                 "generated spaces", check_phi_lemma),
    TheoremCheck("Prop-cp-sob", "Cp(C(X)) is sober", "generated spaces", check_cp_sober),
    TheoremCheck("Def-F-close", "F-closed sets form a closure system; F-closure; F-continuity", "generated spaces",
                 check_f_closed),
    TheoremCheck("Prop-fcon", "hull transport, F-continuity, agreement on F-closures", "map pairs", check_fcon),
    TheoremCheck("Def-xf", "Theta, X^F, varphi, xi; xi<-(varphi(A)) = A", "generated spaces",
                 check_xf_construction),
    TheoremCheck("Prop-xf-sober", "X^F is sober", "generated spaces", check_xf_sober),
    TheoremCheck("Prop-sober-iso", "xi convexity-preserving; sober iff xi homeomorphism", "generated spaces",
                 check_sober_iso),
    TheoremCheck("Lemma-Fclo-two", "F-closed sets of X^F are F-closed in Cp(C(X))", "spaces with |X^F| <= 6",
                 check_fclosed_transfer),
    TheoremCheck("Def-sobrification", "sobrification is unique up to homeomorphism", "generated spaces",
                 check_sobrification_def),
    TheoremCheck("Thm-sobrification", "X^F with xi is a sobrification", "universal pairs", check_sobrification_thm),
    TheoremCheck("Def-specialization", "specialization is an L-order exactly on S0 spaces", "generated spaces",
                 check_specialization),
    TheoremCheck("Prop-spec-co", "e(x, y) = hull(1_y)(x)", "S0 spaces", check_spec_hull),
    TheoremCheck("Prop-xf-spe", "specialization on Cp and X^F is sub", "generated spaces",
                 check_xf_specialization),
    TheoremCheck("Def-scott-convex", "sigma*(P) is an S0 structure with specialization P", "generated orders",
                 check_scott_convex),
    TheoremCheck("Def-scott-cp", "Scott-cp maps are order-preserving; identities", "order pairs",
                 check_scott_cp_def),
    TheoremCheck("Prop-sco-dir", "Scott-cp iff convexity-preserving between sigma* spaces", "order pairs",
                 check_scott_equivalence),
    TheoremCheck("Def-join-semilattice", "(L, e_L) and (L^X, sub) are join-semilattices", "spec lattices",
                 check_join_semilattice_def),
    TheoremCheck("Prop1-sober-join", "sober spaces have join-semilattice specialization; sup via hulls",
                 "sober spaces", check_sober_sup),
    TheoremCheck("Prop-sober-join", "S0: sober iff join-semilattice and C within sigma*", "S0 spaces",
                 check_sober_join),
    TheoremCheck("Cor-omega-scott-cp", "Omega f is Scott-cp; F-closed sets via suprema", "sober spaces",
                 check_omega_scott_cp),
    TheoremCheck("Lemma-xi-scot", "xi_P is Scott-cp", "generated orders", check_xi_scott),
    TheoremCheck("Prop-c-sig", "C(P^F) = sigma*(P^F)", "generated orders", check_c_sigma),
    TheoremCheck("Def-completion", "completions need a join-semilattice and a Scott-cp j", "orders of size <= 2",
                 check_completion_def),
    TheoremCheck("Thm-completion", "(P^F, sub) with xi_P is a join-semilattice completion", "generated orders",
                 check_completion_thm),
    TheoremCheck("Thm-completion-charact", "completion iff sobrification of sigma* spaces", "generated orders",
                 check_completion_charact),
)

CHECK_IDS = tuple(c.id for c in CHECKS)


# =============================================================== mutations
def _hull_last_superset(space, rows, chunk=4096):
    lat = space.lattice
    rows = np.asarray(rows, dtype=np.int64)
    single = rows.ndim == 1
    rows = rows.reshape(-1, space.size)
    above = lat.leq[rows[:, None, :], space.rows[None, :, :]].all(axis=-1)
    out = space.rows[len(space) - 1 - above[:, ::-1].argmax(axis=1)]
    return out[0] if single else out


def _corrupt_residuum(leq, tensor, join, bottom):
    res = _ORIGINALS["residuum"](leq, tensor, join, bottom)
    res = res.copy()
    n = len(res)
    res[n - 1, 0] = res[n - 1, n - 1]      # top -> bottom claimed to be top
    return res


def _forward_meet(lat, table, target_size, rows):
    out = np.full(rows.shape[:-1] + (target_size,), lat.bottom, dtype=np.int64)
    for y in range(target_size):
        fibre = np.flatnonzero(table == y)
        if len(fibre):
            out[..., y] = lat.meet_reduce(rows[..., fibre], axis=-1)
    return out


def _sub_join(lat, a, b):
    return lat.join_reduce(lat.residuum_table[a, b], axis=-1)


def _phi_reversed(cp):
    return cp.base.sub_members[:, cp.member_index]


_ORIGINALS = {"residuum": lattice._derive_residuum}

MUTATIONS: dict[str, tuple[object, str, Callable]] = {
    "hull-last-superset": (convex, "hull_rows", _hull_last_superset),
    "residuum-corrupt": (lattice, "_derive_residuum", _corrupt_residuum),
    "zadeh-forward-meet": (fuzzy, "forward_rows", _forward_meet),
    "sub-join": (fuzzy, "sub_rows", _sub_join),
    "phi-reversed": (sober, "phi_rows", _phi_reversed),
}


@contextmanager
def mutated(name: str):
    """Swap one core operation for a wrong one for the duration of the block."""
    module, attr, replacement = MUTATIONS[name]
    original = getattr(module, attr)
    setattr(module, attr, replacement)
    try:
        yield
    finally:
        setattr(module, attr, original)


# ================================================================== runner
@dataclass
class SuiteReport:
    spec: InstanceSpec
    results: list[CheckResult] = field(default_factory=list)
    mutation: str | None = None

    @property
    def failed(self) -> list[str]:
        return [r.id for r in self.results if r.status == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failed

    def counts(self) -> dict[str, int]:
        return {s: sum(r.status == s for r in self.results) for s in (PASS, FAIL, SKIPPED)}

    def to_dict(self) -> dict:
        return {"spec": self.spec.to_dict(), "mutation": self.mutation, "summary": self.counts(),
                "checks": [r.to_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def format(self) -> str:
        lines = []
        for r in self.results:
            extra = f"  witness={r.witness}" if r.witness else ""
            note = f"  ({r.note})" if r.note else ""
            lines.append(f"{r.status:<8} {r.id:<24} {r.cases:>9} cases{note}{extra}")
        c = self.counts()
        lines.append(f"{c[PASS]} passed, {c[FAIL]} failed, {c[SKIPPED]} skipped")
        return "\n".join(lines)


def run_check(check: TheoremCheck, ctx: Context) -> CheckResult:
    try:
        out = check.runner(ctx)
        if out.skipped and not out.note:
            out.note = f"{out.skipped} instances over budget"
        status = SKIPPED if out.skipped and not out.cases else PASS
        return CheckResult(check.id, check.statement, status, out.cases, out.skipped, None, out.note)
    except Failure as exc:
        return CheckResult(check.id, check.statement, FAIL, witness=_fmt(exc.witness), note=str(exc))
    except BudgetExceeded as exc:
        return CheckResult(check.id, check.statement, SKIPPED, note=f"budget: {exc}")
    except (LConvexError, ValueError, IndexError) as exc:
        return CheckResult(check.id, check.statement, FAIL, witness=_fmt(getattr(exc, "witness", None)),
                           note=f"{type(exc).__name__}: {exc}")


def run_suite(spec: InstanceSpec | None = None, only: tuple[str, ...] | None = None,
              mutation: str | None = None) -> SuiteReport:
    """Run the registered checks (or the ``only`` subset) in registry order."""
    spec = spec or InstanceSpec()
    unknown = set(only or ()) - set(CHECK_IDS)
    if unknown:
        raise ValueError(f"unknown check ids: {sorted(unknown)}")
    report = SuiteReport(spec, mutation=mutation)
    with mutated(mutation) if mutation else nullcontext():
        ctx = Context(spec)
        for check in CHECKS:
            if only is None or check.id in only:
                report.results.append(run_check(check, ctx))
    return report

"""Instance generators: every space or order inside an envelope, seeded samples outside it."""

from __future__ import annotations

import json
import zlib
from dataclasses import asdict, dataclass, fields
from typing import Iterator

import numpy as np

from .. import fuzzy, order
from .._common import FAMILY_BUDGET, SCAN_BUDGET, SCOTT_BUDGET, BudgetExceeded, LConvexError, check_budget
from ..convex import LConvexSpace, build_space
from ..fuzzy import Carrier
from ..lattice import ResiduatedLattice, named_lattice
from ..order import LOrderedSet


@dataclass(frozen=True)
class InstanceSpec:
    """What to generate. Every (lattice, size) pair whose search space is within
    the exhaustive limit is enumerated completely; larger ones are sampled."""

    lattices: tuple[str, ...] = ("boolean", "godel3", "lukasiewicz3")
    carrier_sizes: tuple[int, ...] = (1, 2, 3)
    exhaustive_limit: int = 9          # |L|^|X| up to which all spaces are listed
    samples: int = 120                 # spaces drawn per pair beyond the limit
    order_sizes: tuple[int, ...] = (1, 2, 3)
    order_exhaustive_limit: int = 81   # |L|^(|P|^2 - |P|) up to which all orders are listed
    order_samples: int = 20
    seed: int = 0
    scan_budget: int = SCAN_BUDGET
    family_budget: int = FAMILY_BUDGET
    scott_budget: int = SCOTT_BUDGET

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, list):
                object.__setattr__(self, f.name, tuple(v))
        for name in ("scan_budget", "family_budget", "scott_budget", "samples", "order_samples"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown spec fields: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path: str) -> "InstanceSpec":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}

    def with_budget(self, budget: int) -> "InstanceSpec":
        return InstanceSpec.from_dict({**self.to_dict(), "scan_budget": budget,
                                       "family_budget": budget, "scott_budget": budget})


def _rng(spec: InstanceSpec, *key: object) -> np.random.Generator:
    salt = zlib.crc32(repr(key).encode())
    return np.random.default_rng([spec.seed, salt])


# ------------------------------------------------------------------ spaces
_CLOSURE_CACHE: dict[tuple, list[tuple[int, ...]]] = {}


def closure_systems(lattice: ResiduatedLattice, m: int, budget: int | None = SCAN_BUDGET) -> list[tuple[int, ...]]:
    """Every L-convex structure on m points as sorted tuples of row codes.

    Breadth-first over closure systems: adding one L-subset to a closed
    family and closing again reaches every family, since each one is the
    closure of its own members.
    """
    n = lattice.size
    check_budget(n ** m, budget, f"space enumeration over |L|^|X| = {n ** m}")
    key = (lattice.size, lattice.leq.tobytes(), lattice.tensor.tobytes(), m)
    if key in _CLOSURE_CACHE:
        return _CLOSURE_CACHE[key]
    rows = fuzzy.all_rows(lattice, m, None)
    codes = fuzzy.row_codes(rows, n)
    size = len(rows)
    meet = fuzzy.row_codes(lattice.meet[rows[:, None, :], rows[None, :, :]], n).tolist()
    res = fuzzy.row_codes(lattice.residuum_table[np.arange(n)[:, None, None], rows[None, :, :]], n).tolist()
    assert codes.tolist() == list(range(size))

    def close(members: list[int], mask: int, todo: list[int]) -> tuple[int, list[int]]:
        members = list(members)
        while todo:
            c = todo.pop()
            row = meet[c]
            new = [row[d] for d in members]
            new.extend(r[c] for r in res)
            for x in new:
                if not mask >> x & 1:
                    mask |= 1 << x
                    members.append(x)
                    todo.append(x)
        return mask, members

    start_mask, start = close([], 0, [0, size - 1])
    start_mask |= 1 | 1 << (size - 1)
    start = sorted(set(start) | {0, size - 1})
    seen = {start_mask: start}
    queue = [start_mask]
    while queue:
        mask = queue.pop()
        members = seen[mask]
        for a in range(size):
            if mask >> a & 1:
                continue
            new_mask, new_members = close(members + [a], mask | 1 << a, [a])
            if new_mask not in seen:
                seen[new_mask] = new_members
                queue.append(new_mask)
    out = sorted((tuple(sorted(v)) for v in seen.values()), key=lambda t: (len(t), t))
    _CLOSURE_CACHE[key] = out
    return out


def space_census(lattice: ResiduatedLattice, m: int) -> int:
    return len(closure_systems(lattice, m))


def exhaustive_spaces(lattice: ResiduatedLattice, m: int, budget: int | None = SCAN_BUDGET) -> Iterator[LConvexSpace]:
    rows = fuzzy.all_rows(lattice, m, budget)
    carrier = Carrier.of_size(m)
    for i, fam in enumerate(closure_systems(lattice, m, budget)):
        yield LConvexSpace.from_rows(carrier, lattice, rows[list(fam)], name=f"{lattice.name}|{m}|#{i}")


def sampled_spaces(lattice: ResiduatedLattice, m: int, count: int, spec: InstanceSpec) -> Iterator[LConvexSpace]:
    """Closures of 1 to 3 random generators, deduplicated, in draw order."""
    check_budget(lattice.size ** m, spec.scan_budget, f"sampling over |L|^|X| = {lattice.size ** m}")
    rng = _rng(spec, "spaces", lattice.name, m)
    carrier = Carrier.of_size(m)
    seen: set[bytes] = set()
    for _ in range(20 * count):
        if len(seen) >= count:
            return
        gens = rng.integers(0, lattice.size, size=(int(rng.integers(1, 4)), m))
        try:
            space = build_space(carrier, lattice, gens, budget=spec.family_budget)
        except BudgetExceeded:
            continue
        key = space.rows.tobytes()
        if key not in seen:
            seen.add(key)
            yield LConvexSpace(carrier, lattice, space.rows, name=f"{lattice.name}|{m}|s{len(seen) - 1}")


def generate_spaces(spec: InstanceSpec) -> Iterator[LConvexSpace]:
    """Deterministic stream: lattices in spec order, carrier sizes ascending."""
    for name in spec.lattices:
        lattice = named_lattice(name)
        for m in sorted(spec.carrier_sizes):
            if lattice.size ** m <= spec.exhaustive_limit:
                yield from exhaustive_spaces(lattice, m, spec.scan_budget)
            else:
                yield from sampled_spaces(lattice, m, spec.samples, spec)


# ------------------------------------------------------------------ orders
def _transitive_closure(lattice: ResiduatedLattice, e: np.ndarray) -> np.ndarray:
    while True:
        comp = lattice.join_reduce(lattice.tensor[e[:, :, None], e[None, :, :]], axis=1)
        new = lattice.join[e, comp]
        if np.array_equal(new, e):
            return e
        e = new


def exhaustive_orders(lattice: ResiduatedLattice, m: int, budget: int | None = SCAN_BUDGET) -> Iterator[LOrderedSet]:
    off = [(x, y) for x in range(m) for y in range(m) if x != y]
    carrier = Carrier.of_size(m)
    values = fuzzy.all_rows(lattice, len(off), budget)
    k = 0
    for vals in values:
        e = np.full((m, m), lattice.top, dtype=np.int64)
        for (x, y), v in zip(off, vals):
            e[x, y] = v
        try:
            p = order.build_order(carrier, lattice, e, name=f"{lattice.name}|{m}|#{k}")
        except LConvexError:
            continue
        k += 1
        yield p


def sampled_orders(lattice: ResiduatedLattice, m: int, count: int, spec: InstanceSpec) -> Iterator[LOrderedSet]:
    """Random matrices made transitive; draws breaking antisymmetry are dropped."""
    rng = _rng(spec, "orders", lattice.name, m)
    carrier = Carrier.of_size(m)
    seen: set[bytes] = set()
    for _ in range(50 * count):
        if len(seen) >= count:
            return
        e = rng.integers(0, lattice.size, size=(m, m))
        np.fill_diagonal(e, lattice.top)
        e = _transitive_closure(lattice, e)
        try:
            p = order.build_order(carrier, lattice, e, name=f"{lattice.name}|{m}|s{len(seen)}")
        except LConvexError:
            continue
        if p.e.tobytes() not in seen:
            seen.add(p.e.tobytes())
            yield p


def generate_orders(spec: InstanceSpec) -> Iterator[LOrderedSet]:
    for name in spec.lattices:
        lattice = named_lattice(name)
        for m in sorted(spec.order_sizes):
            n_off = m * m - m
            check_budget(lattice.size ** m, spec.scan_budget, "order generation")
            if lattice.size ** n_off <= spec.order_exhaustive_limit:
                yield from exhaustive_orders(lattice, m, spec.scan_budget)
            else:
                yield from sampled_orders(lattice, m, spec.order_samples, spec)

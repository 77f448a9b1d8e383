"""Counterexample search over generated spaces.

``scott-inclusion`` looks for sober spaces with a Scott convex set (for the
specialization order) that is not a member of the structure.
``any-equivalence`` evaluates registered hypotheses and reports every space
on which one is false.  Nothing is ever claimed about instances not visited.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .. import scott, sober
from .._common import BudgetExceeded, EquivalenceViolation
from ..convex import LConvexSpace
from ..order import degree_label, is_join_semilattice
from .generators import InstanceSpec, generate_spaces

TARGETS = ("scott-inclusion", "any-equivalence")


def _sober_iff_join(x: LConvexSpace) -> bool:
    if not sober.is_s0(x):
        return True
    try:
        scott.sober_join_characterization(x)
    except EquivalenceViolation:
        return False
    return True


def _sober_iff_xi(x: LConvexSpace) -> bool:
    return bool(sober.is_sober(x)) == bool(sober.sobrify(x, check=False).xi.homeomorphism)


def _sober_join_semilattice(x: LConvexSpace) -> bool:
    return not sober.is_sober(x) or bool(is_join_semilattice(scott.specialization(x)))


# Each hypothesis is a predicate every space should satisfy; the first one is
# deliberately false so the search machinery can be exercised.
HYPOTHESES: dict[str, Callable[[LConvexSpace], bool]] = {
    "all-spaces-sober": lambda x: bool(sober.is_sober(x)),
    "sober-iff-join-and-scott": _sober_iff_join,
    "sober-iff-xi-homeomorphism": _sober_iff_xi,
    "sober-implies-join-semilattice": _sober_join_semilattice,
}


@dataclass(frozen=True)
class Finding:
    target: str
    space: str
    lattice: str
    carrier: tuple[str, ...]
    members: tuple[str, ...]
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"target": self.target, "space": self.space, "lattice": self.lattice,
                "carrier": list(self.carrier), "members": list(self.members), "detail": self.detail}


def _finding(target: str, x: LConvexSpace, **detail) -> Finding:
    members = tuple(degree_label(x.lattice, r) for r in x.rows)
    return Finding(target, x.name, x.lattice.name, x.carrier.labels, members, detail)


def scott_extras(x: LConvexSpace, budget: int) -> np.ndarray:
    """Rows that are Scott convex for the specialization order but not members."""
    p = scott.specialization(x)
    sigma = scott.scott_structure(p, budget, check=False)
    return sigma.rows[~x.contains_rows(sigma.rows)]


@dataclass
class SearchStats:
    visited: int = 0
    skipped: int = 0


def search_counterexamples(target: str, spec: InstanceSpec | None = None, hypotheses: tuple[str, ...] | None = None,
                           stats: SearchStats | None = None) -> Iterator[Finding]:
    """Stream findings; ``stats`` (if given) counts visited and over-budget spaces."""
    if target not in TARGETS:
        raise ValueError(f"unknown search target {target!r}; choose from {TARGETS}")
    spec = spec or InstanceSpec()
    stats = stats if stats is not None else SearchStats()
    names = hypotheses or tuple(HYPOTHESES)
    unknown = set(names) - set(HYPOTHESES)
    if unknown:
        raise ValueError(f"unknown hypotheses {sorted(unknown)}")
    for x in generate_spaces(spec):
        stats.visited += 1
        try:
            if target == "scott-inclusion":
                if not sober.is_sober(x):
                    continue
                extra = scott_extras(x, spec.scott_budget)
                if len(extra):
                    yield _finding(target, x, scott_convex_not_member=[degree_label(x.lattice, r) for r in extra])
            else:
                for name in names:
                    if not HYPOTHESES[name](x):
                        yield _finding(target, x, hypothesis=name)
        except BudgetExceeded:
            stats.skipped += 1

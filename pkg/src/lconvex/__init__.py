"""Finite stratified L-convex spaces over residuated lattices: sobrification,
specialization orders, Scott convex structures and join-semilattice completion."""

from ._common import (
    BudgetExceeded,
    CarrierMismatch,
    E1Violation,
    E2Violation,
    E3Violation,
    FileFormatError,
    InvariantViolation,
    LConvexError,
    LatticeMismatch,
    NotALattice,
    NotAMonoid,
    NotConvex,
    NotConvexityPreserving,
    NotDistributive,
    NotS0,
    NotSober,
    Verdict,
)
from .convex import LConvexSpace, SpaceMap, build_space, hull, verify_space_axioms
from .fuzzy import Carrier, CarrierMap, LSubset
from .lattice import ResiduatedLattice, build_lattice, make_chain, make_product, named_lattice, verify_lattice_laws
from .order import LOrderedSet, build_order, lattice_order
from .scott import completion, scott_structure, specialization, verify_completion
from .sober import extend_to_sobrification, is_sober, sobrify

__all__ = [
    "BudgetExceeded",
    "Carrier",
    "CarrierMap",
    "CarrierMismatch",
    "E1Violation",
    "E2Violation",
    "E3Violation",
    "FileFormatError",
    "InvariantViolation",
    "LConvexError",
    "LConvexSpace",
    "LOrderedSet",
    "LSubset",
    "LatticeMismatch",
    "NotALattice",
    "NotAMonoid",
    "NotConvex",
    "NotConvexityPreserving",
    "NotDistributive",
    "NotS0",
    "NotSober",
    "ResiduatedLattice",
    "SpaceMap",
    "Verdict",
    "build_lattice",
    "build_order",
    "build_space",
    "completion",
    "extend_to_sobrification",
    "hull",
    "is_sober",
    "lattice_order",
    "make_chain",
    "make_product",
    "named_lattice",
    "scott_structure",
    "sobrify",
    "specialization",
    "verify_completion",
    "verify_lattice_laws",
    "verify_space_axioms",
]

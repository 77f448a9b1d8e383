"""Finite complete residuated lattices given by tables.

Elements (degrees) are plain ``int`` indices ``0 .. size-1`` into one
:class:`ResiduatedLattice`.  The residuum is always derived from the tensor,
so the adjunction ``a*b <= c  <=>  a <= b->c`` holds by construction.

Vectorised helpers (``meet_reduce``/``join_reduce``) let the rest of the
package evaluate sub, hulls and suprema on whole numpy arrays of degrees.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from ._common import InvalidSize, NotALattice, NotAMonoid, NotDistributive

Degree = int


def _derive_residuum(leq: np.ndarray, tensor: np.ndarray, join: np.ndarray, bottom: int) -> np.ndarray:
    """res[a, b] = join of {c | a*c <= b}."""
    n = leq.shape[0]
    res = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            acc = bottom
            for c in range(n):
                if leq[tensor[a, c], b]:
                    acc = join[acc, c]
            res[a, b] = acc
    return res


def _bound_tables(leq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = leq.shape[0]
    join = np.empty((n, n), dtype=np.int64)
    meet = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            for table, rel in ((join, leq), (meet, leq.T)):
                bounds = np.flatnonzero(rel[a] & rel[b])
                least = [u for u in bounds if rel[u, bounds].all()]
                if not least:
                    kind = "join" if table is join else "meet"
                    raise NotALattice(f"no {kind} for elements {a}, {b}", witness=(a, b))
                table[a, b] = least[0]
    return join, meet


@dataclass(frozen=True, eq=False)
class ResiduatedLattice:
    """A validated finite commutative integral residuated lattice.

    Build instances with :func:`build_lattice`, :func:`make_chain` or
    :func:`make_product`; the constructor itself does not validate.
    """

    name: str
    leq: np.ndarray
    tensor: np.ndarray
    join: np.ndarray
    meet: np.ndarray
    residuum_table: np.ndarray
    bottom: int
    top: int
    labels: tuple[str, ...] = field(default=())

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def key(self) -> tuple:
        return (self.size, self.leq.tobytes(), self.tensor.tobytes())

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, ResiduatedLattice) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"ResiduatedLattice({self.name!r}, size={self.size})"

    # ----------------------------------------------------------- scalars
    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def index_of(self, token: str | int) -> int:
        """Degree from a label or a decimal index."""
        if isinstance(token, (int, np.integer)):
            a = int(token)
        elif token in self.labels:
            return self.labels.index(token)
        elif re.fullmatch(r"\d+", token):
            a = int(token)
        else:
            raise KeyError(f"unknown degree {token!r} in lattice {self.name}")
        if not 0 <= a < self.size:
            raise KeyError(f"degree {a} out of range for lattice {self.name}")
        return a

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def residuum(self, a: int, b: int) -> int:
        return int(self.residuum_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.tensor[a, b])

    def meet_all(self, degrees) -> int:
        acc = self.top
        for d in degrees:
            acc = self.meet[acc, d]
        return int(acc)

    def join_all(self, degrees) -> int:
        acc = self.bottom
        for d in degrees:
            acc = self.join[acc, d]
        return int(acc)

    # ---------------------------------------------------------- vectors
    @cached_property
    def is_chain(self) -> bool:
        """True when index order is the lattice order (fast numpy reductions apply)."""
        idx = np.arange(self.size)
        return bool(np.array_equal(self.leq, idx[:, None] <= idx[None, :]))

    @cached_property
    def is_frame(self) -> bool:
        """Finite frame = distributive lattice."""
        m, j = self.meet, self.join
        a, b, c = np.meshgrid(self.elements, self.elements, self.elements, indexing="ij")
        return bool(np.array_equal(m[a, j[b, c]], j[m[a, b], m[a, c]]))

    def meet_reduce(self, arr: np.ndarray, axis: int = -1) -> np.ndarray:
        arr = np.asarray(arr)
        if arr.shape[axis] == 0:
            return np.full(np.delete(arr.shape, axis % arr.ndim), self.top, dtype=np.int64)
        if self.is_chain:
            return arr.min(axis=axis)
        return _table_reduce(self.meet, arr, axis)

    def join_reduce(self, arr: np.ndarray, axis: int = -1) -> np.ndarray:
        arr = np.asarray(arr)
        if arr.shape[axis] == 0:
            return np.full(np.delete(arr.shape, axis % arr.ndim), self.bottom, dtype=np.int64)
        if self.is_chain:
            return arr.max(axis=axis)
        return _table_reduce(self.join, arr, axis)


def _table_reduce(table: np.ndarray, arr: np.ndarray, axis: int) -> np.ndarray:
    arr = np.moveaxis(arr, axis, 0)
    out = arr[0]
    for row in arr[1:]:
        out = table[out, row]
    return np.asarray(out)


# ------------------------------------------------------------------ building
def _check_partial_order(leq: np.ndarray) -> None:
    n = leq.shape[0]
    for a in range(n):
        if not leq[a, a]:
            raise NotALattice(f"leq not reflexive at {a}", witness=(a,))
    for a, b in zip(*np.nonzero(leq & leq.T)):
        if a != b:
            raise NotALattice(f"leq not antisymmetric at ({a}, {b})", witness=(int(a), int(b)))
    for a, b, c in itertools.product(range(n), repeat=3):
        if leq[a, b] and leq[b, c] and not leq[a, c]:
            raise NotALattice(f"leq not transitive at ({a}, {b}, {c})", witness=(a, b, c))


def _check_monoid(leq: np.ndarray, tensor: np.ndarray, top: int) -> None:
    n = leq.shape[0]
    for a, b in itertools.product(range(n), repeat=2):
        if tensor[a, b] != tensor[b, a]:
            raise NotAMonoid(f"tensor not commutative at ({a}, {b})", witness=(a, b))
    for a in range(n):
        if tensor[top, a] != a:
            raise NotAMonoid(f"top is not a unit: top*{a} = {tensor[top, a]}", witness=(top, a))
    for a, b, c in itertools.product(range(n), repeat=3):
        if tensor[tensor[a, b], c] != tensor[a, tensor[b, c]]:
            raise NotAMonoid(f"tensor not associative at ({a}, {b}, {c})", witness=(a, b, c))
    # ordered monoid: a <= b implies a*c <= b*c
    for a, b, c in itertools.product(range(n), repeat=3):
        if leq[a, b] and not leq[tensor[a, c], tensor[b, c]]:
            raise NotAMonoid(f"tensor not monotone at ({a}, {b}, {c})", witness=(a, b, c))


def _check_distributive(tensor: np.ndarray, join: np.ndarray, bottom: int) -> None:
    n = tensor.shape[0]
    for a in range(n):
        if tensor[a, bottom] != bottom:
            raise NotDistributive(f"{a}*bottom != bottom (empty join)", witness=(a, bottom))
    for a, b, c in itertools.product(range(n), repeat=3):
        if tensor[a, join[b, c]] != join[tensor[a, b], tensor[a, c]]:
            raise NotDistributive(f"tensor does not distribute at ({a}, {b}, {c})", witness=(a, b, c))


def build_lattice(leq, tensor, name: str = "L", labels=None) -> ResiduatedLattice:
    """Validate ``leq`` (full partial order) and ``tensor``; derive the residuum.

    Raises NotALattice, NotAMonoid or NotDistributive with a witness tuple.
    """
    leq = np.array(leq, dtype=bool)
    tensor = np.array(tensor, dtype=np.int64)
    n = leq.shape[0]
    if n < 1 or leq.shape != (n, n) or tensor.shape != (n, n):
        raise InvalidSize(f"tables must be square and of equal size, got {leq.shape} and {tensor.shape}")
    if tensor.min() < 0 or tensor.max() >= n:
        raise NotAMonoid("tensor entries out of range", witness=tuple(np.argwhere((tensor < 0) | (tensor >= n))[0]))
    if labels is not None and (len(labels) != n or len(set(labels)) != n):
        raise InvalidSize("labels must be distinct, one per element")
    _check_partial_order(leq)
    join, meet = _bound_tables(leq)
    bottom = int(np.flatnonzero(leq.all(axis=1))[0])
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    _check_monoid(leq, tensor, top)
    _check_distributive(tensor, join, bottom)
    res = _derive_residuum(leq, tensor, join, bottom)
    for t in (leq, tensor, join, meet, res):
        t.setflags(write=False)
    return ResiduatedLattice(name, leq, tensor, join, meet, res, bottom, top, tuple(labels or ()))


def _fraction_label(i: int, n: int) -> str:
    q = Fraction(i, n - 1)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def make_chain(n: int, kind: str = "godel") -> ResiduatedLattice:
    """The n-element chain 0 < 1/(n-1) < ... < 1 with the min or Lukasiewicz t-norm."""
    if n < 2:
        raise InvalidSize(f"chain needs at least 2 elements, got {n}")
    i = np.arange(n)
    leq = i[:, None] <= i[None, :]
    if kind == "godel":
        tensor = np.minimum(i[:, None], i[None, :])
    elif kind == "lukasiewicz":
        tensor = np.maximum(0, i[:, None] + i[None, :] - (n - 1))
    else:
        raise ValueError(f"unknown chain kind {kind!r}")
    name = "boolean" if n == 2 else f"{kind}{n}"
    return build_lattice(leq, tensor, name=name, labels=[_fraction_label(k, n) for k in range(n)])


def make_product(l1: ResiduatedLattice, l2: ResiduatedLattice) -> ResiduatedLattice:
    """Componentwise product; element (a, b) has index a * |l2| + b."""
    n1, n2 = l1.size, l2.size
    pairs = list(itertools.product(range(n1), range(n2)))
    leq = np.array([[l1.leq[a1, b1] and l2.leq[a2, b2] for b1, b2 in pairs] for a1, a2 in pairs])
    tensor = np.array(
        [[l1.tensor[a1, b1] * n2 + l2.tensor[a2, b2] for b1, b2 in pairs] for a1, a2 in pairs]
    )
    labels = [f"({l1.label(a)},{l2.label(b)})" for a, b in pairs]
    return build_lattice(leq, tensor, name=f"{l1.name}x{l2.name}", labels=labels)


def boolean() -> ResiduatedLattice:
    return make_chain(2, "godel")


def named_lattice(name: str) -> ResiduatedLattice:
    """``boolean``, ``godel<n>``, ``lukasiewicz<n>`` or products joined by ``x``."""
    if "x" in name:
        parts = name.split("x")
        out = named_lattice(parts[0])
        for p in parts[1:]:
            out = make_product(out, named_lattice(p))
        return out
    if name == "boolean":
        return boolean()
    m = re.fullmatch(r"(godel|lukasiewicz)(\d+)", name)
    if not m:
        raise KeyError(f"unknown lattice name {name!r}")
    return make_chain(int(m.group(2)), m.group(1))


# ------------------------------------------------------------- law report
@dataclass
class LawResult:
    law: str
    statement: str
    passed: bool
    checked: int
    witness: tuple | None = None


@dataclass
class LawReport:
    lattice: str
    results: list[LawResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def format(self) -> str:
        lines = [f"lattice {self.lattice}"]
        for r in self.results:
            status = "PASS" if r.passed else f"FAIL witness={r.witness}"
            lines.append(f"  law ({r.law}) {r.statement:<32} {r.checked:>6} cases  {status}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "lattice": self.lattice,
            "passed": self.passed,
            "laws": [
                {"law": r.law, "statement": r.statement, "passed": r.passed,
                 "checked": r.checked, "witness": list(r.witness) if r.witness else None}
                for r in self.results
            ],
        }


def _first(mask: np.ndarray) -> tuple | None:
    bad = np.argwhere(~mask)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


def verify_lattice_laws(lat: ResiduatedLattice) -> LawReport:
    """Exhaustively check the six residuation laws (joins/meets over all subsets)."""
    n, top = lat.size, lat.top
    res, ten, leq = lat.residuum_table, lat.tensor, lat.leq
    a, b = np.meshgrid(lat.elements, lat.elements, indexing="ij")
    results = []

    ok = (res[a, b] == top) == leq[a, b]
    results.append(LawResult("1", "a->b = 1 iff a <= b", bool(ok.all()), ok.size, _first(ok)))

    ok = res[top, np.arange(n)] == np.arange(n)
    results.append(LawResult("2", "1->a = a", bool(ok.all()), ok.size, _first(ok)))

    ok = leq[ten[a, res[a, b]], b]
    results.append(LawResult("3", "a*(a->b) <= b", bool(ok.all()), ok.size, _first(ok)))

    x, y, z = np.meshgrid(lat.elements, lat.elements, lat.elements, indexing="ij")
    ok = res[x, res[y, z]] == res[ten[x, y], z]
    results.append(LawResult("4", "a->(b->c) = (a*b)->c", bool(ok.all()), ok.size, _first(ok)))

    subsets = [s for r in range(n + 1) for s in itertools.combinations(range(n), r)]
    w5 = w6 = None
    for s in subsets:
        sj, sm = lat.join_all(s), lat.meet_all(s)
        for c in range(n):
            if w5 is None and res[sj, c] != lat.meet_all(res[i, c] for i in s):
                w5 = (s, c)
            if w6 is None and res[c, sm] != lat.meet_all(res[c, j] for j in s):
                w6 = (c, s)
    count = len(subsets) * n
    results.append(LawResult("5", "(V a_i)->b = A (a_i->b)", w5 is None, count, w5))
    results.append(LawResult("6", "a->(A b_j) = A (a->b_j)", w6 is None, count, w6))
    return LawReport(lat.name, results)

"""Line-oriented text formats for lattices, L-ordered sets and L-convex spaces.

Blank lines and ``#`` comments are ignored everywhere.

Lattice file::

    lattice G3 3
    labels 0 1/2 1          # optional; labels take precedence over indices
    leq 0 1/2               # covering pairs or the full relation
    leq 1/2 1
    tensor
    0 0 0
    0 1/2 1/2
    0 1/2 1

Order file::

    order P over godel3     # a lattice name or a lattice file path
    carrier a b
    e
    1 0
    1/2 1

Space file::

    space X over boolean
    carrier a b
    subset A: a=1 b=0       # omitted points get the bottom degree
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .._common import FileFormatError, LConvexError
from ..convex import LConvexSpace, build_space
from ..fuzzy import Carrier, LSubset
from ..lattice import ResiduatedLattice, build_lattice, named_lattice
from ..order import LOrderedSet, build_order

_SUBSET = re.compile(r"subset\s+([^:\s]+)\s*:(.*)")


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def _fail(no: int, msg: str) -> FileFormatError:
    return FileFormatError(f"line {no}: {msg}")


# ----------------------------------------------------------------- lattices
def parse_lattice(text: str) -> ResiduatedLattice:
    lines = _lines(text)
    if not lines or lines[0][1][0] != "lattice" or len(lines[0][1]) != 3:
        raise FileFormatError("expected header 'lattice <name> <size>'")
    _, (_, name, size) = lines[0]
    try:
        n = int(size)
    except ValueError:
        raise _fail(lines[0][0], f"size {size!r} is not an integer") from None
    labels: list[str] | None = None
    leq = np.eye(n, dtype=bool)
    tensor_rows: list[list[str]] = []
    in_tensor = False
    for no, tok in lines[1:]:
        if in_tensor:
            tensor_rows.append(tok)
        elif tok[0] == "labels":
            labels = tok[1:]
        elif tok[0] == "leq" and len(tok) == 3:
            i, j = (_element(no, t, n, labels) for t in tok[1:])
            leq[i, j] = True
        elif tok == ["tensor"]:
            in_tensor = True
        else:
            raise _fail(no, f"unexpected {' '.join(tok)!r}")
    for k in range(n):                       # reflexive-transitive closure of the listed pairs
        leq |= leq[:, [k]] & leq[[k], :]
    if len(tensor_rows) != n or any(len(r) != n for r in tensor_rows):
        raise FileFormatError(f"tensor block must have {n} rows of {n} entries")
    tensor = [[_element(0, t, n, labels) for t in r] for r in tensor_rows]
    return build_lattice(leq, tensor, name=name, labels=labels)


def _element(no: int, token: str, n: int, labels: list[str] | None) -> int:
    # labels win over indices, as for degrees in order and space files
    if labels and token in labels:
        return labels.index(token)
    if token.isdigit() and int(token) < n:
        return int(token)
    raise _fail(no, f"unknown element {token!r}")


def format_lattice(lat: ResiduatedLattice) -> str:
    out = [f"lattice {lat.name} {lat.size}"]
    if lat.labels:
        out.append("labels " + " ".join(lat.labels))
    out += [f"leq {lat.label(int(i))} {lat.label(int(j))}" for i, j in zip(*np.nonzero(lat.leq)) if i != j]
    out.append("tensor")
    out += [" ".join(lat.label(int(v)) for v in row) for row in lat.tensor]
    return "\n".join(out) + "\n"


def resolve_lattice(token: str, base: Path | None = None) -> ResiduatedLattice:
    """A lattice name such as ``godel3``, or a lattice file path."""
    try:
        return named_lattice(token)
    except (KeyError, LConvexError):
        pass
    path = Path(token)
    if base is not None and not path.is_absolute():
        path = base / path
    if not path.is_file():
        raise FileFormatError(f"{token!r} is neither a lattice name nor a lattice file")
    return parse_lattice(path.read_text())


# ------------------------------------------------------------------ headers
def _header(lines, kind: str, base: Path | None) -> tuple[str, ResiduatedLattice, Carrier]:
    if not lines or lines[0][1][0] != kind or len(lines[0][1]) != 4 or lines[0][1][2] != "over":
        raise FileFormatError(f"expected header '{kind} <name> over <lattice>'")
    name, lat = lines[0][1][1], resolve_lattice(lines[0][1][3], base)
    if len(lines) < 2 or lines[1][1][0] != "carrier" or len(lines[1][1]) < 2:
        raise FileFormatError("expected 'carrier <label> ...' after the header")
    labels = lines[1][1][1:]
    if len(set(labels)) != len(labels):
        raise _fail(lines[1][0], "carrier labels must be distinct")
    return name, lat, Carrier(tuple(labels))


def _degree(no: int, lat: ResiduatedLattice, token: str) -> int:
    try:
        return lat.index_of(token)
    except KeyError as exc:
        raise _fail(no, str(exc)) from None


def parse_subset_literal(line: str, carrier: Carrier, lat: ResiduatedLattice, no: int = 0) -> tuple[str, LSubset]:
    """``subset <name>: x=d ...``; unlisted points get the bottom degree."""
    m = _SUBSET.fullmatch(line.strip())
    if not m:
        raise _fail(no, f"bad subset literal {line.strip()!r}")
    degrees = [lat.bottom] * carrier.size
    for item in m.group(2).split():
        if "=" not in item:
            raise _fail(no, f"expected point=degree, got {item!r}")
        point, deg = item.split("=", 1)
        if point not in carrier.labels:
            raise _fail(no, f"unknown point {point!r}")
        degrees[carrier.labels.index(point)] = _degree(no, lat, deg)
    return m.group(1), LSubset.from_array(carrier, lat, degrees)


def format_subset_literal(name: str, s: LSubset) -> str:
    items = " ".join(f"{p}={s.lattice.label(int(d))}" for p, d in zip(s.carrier.labels, s.vec))
    return f"subset {name}: {items}"


# ------------------------------------------------------------------- orders
def parse_order(text: str, base: Path | None = None) -> LOrderedSet:
    lines = _lines(text)
    name, lat, carrier = _header(lines, "order", base)
    rest = lines[2:]
    if not rest or rest[0][1] != ["e"]:
        raise FileFormatError("expected an 'e' block after the carrier line")
    rows = rest[1:]
    if len(rows) != carrier.size or any(len(tok) != carrier.size for _, tok in rows):
        raise FileFormatError(f"'e' block must have {carrier.size} rows of {carrier.size} degrees")
    e = [[_degree(no, lat, t) for t in tok] for no, tok in rows]
    return build_order(carrier, lat, e, name)


def format_order(p: LOrderedSet) -> str:
    out = [f"order {p.name} over {p.lattice.name}", "carrier " + " ".join(p.carrier.labels), "e"]
    out += [" ".join(p.lattice.label(int(d)) for d in row) for row in p.e]
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- spaces
def read_generators(text: str, base: Path | None = None) -> tuple[str, ResiduatedLattice, Carrier, list[LSubset]]:
    lines = _lines(text)
    name, lat, carrier = _header(lines, "space", base)
    subsets = []
    raw = text.splitlines()
    for no, _ in lines[2:]:
        subsets.append(parse_subset_literal(raw[no - 1].split("#", 1)[0], carrier, lat, no)[1])
    return name, lat, carrier, subsets


def parse_space(text: str, base: Path | None = None, closed: bool = False) -> LConvexSpace:
    """Close the listed generators, or with ``closed`` take them as the family."""
    name, lat, carrier, subsets = read_generators(text, base)
    if closed:
        return LConvexSpace.from_subsets(subsets, carrier, lat, name)
    return build_space(carrier, lat, subsets, name)


def format_space(x: LConvexSpace) -> str:
    out = [f"space {x.name} over {x.lattice.name}", "carrier " + " ".join(x.carrier.labels)]
    out += [format_subset_literal(f"C{i}", s) for i, s in enumerate(x.members)]
    return "\n".join(out) + "\n"


def load(path: str | Path, kind: str, **kw):
    path = Path(path)
    text = path.read_text()
    if kind == "lattice":
        return parse_lattice(text)
    parser = {"order": parse_order, "space": parse_space}[kind]
    return parser(text, base=path.parent, **kw)

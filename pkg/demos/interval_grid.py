"""A finite grid version of the increasing-function structure on [0, 1].

Over [0, 1] with minimum as tensor, the members are a /\\ phi with phi
increasing and phi >= id.  Replacing [0, 1] by an n-element Goedel chain,
used both as carrier and as degrees, gives a finite space to which the
sobriety and compactness tests apply directly.

The grid is not sober, unlike the continuum.  On [0, 1] only characteristic
functions of finite sets are finite, but on a finite grid every nonempty
L-subset is, so graded sets such as {0=1/2 1/2=1/2 1=1} become polytopes
that are not point hulls.

Run: python demos/interval_grid.py [n]
"""

import itertools
import sys

from lconvex.convex import build_space, is_compact, is_polytope, verify_space_axioms
from lconvex.fuzzy import Carrier, LSubset
from lconvex.lattice import named_lattice
from lconvex.sober import is_sober, sobrify

n = int(sys.argv[1]) if len(sys.argv) > 1 else 4
lat = named_lattice(f"godel{n}")
grid = Carrier(tuple(lat.label(i) for i in range(n)))

gens = []
for phi in itertools.combinations_with_replacement(range(n), n):   # increasing sequences
    if all(v >= i for i, v in enumerate(phi)):
        for a in range(n):
            gens.append(LSubset.from_array(grid, lat, [min(a, v) for v in phi]))

x = build_space(grid, lat, gens, name=f"grid{n}")
print(f"{x.name}: {len(gens)} generators, {len(x)} members")
print(f"C1-C4 hold: {verify_space_axioms(x).passed}")
print(f"sober: {bool(is_sober(x))} (oracle agrees: {bool(is_sober(x, oracle=True)) == bool(is_sober(x))})")
print(f"compact = polytope on every member: {all(bool(is_compact(x, k)) == bool(is_polytope(x, k)) for k in x.members)}")
print(f"witness: {is_sober(x).witness}")
print(f"xi is a homeomorphism: {bool(sobrify(x).xi.homeomorphism)}")

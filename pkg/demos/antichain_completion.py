"""Join-semilattice completion of orders that lack suprema.

Run: python demos/antichain_completion.py
"""

import numpy as np

from lconvex.fuzzy import Carrier
from lconvex.lattice import named_lattice
from lconvex.order import build_order, crisp_order, is_join_semilattice
from lconvex.scott import completion, verify_completion

boolean = named_lattice("boolean")
g3 = named_lattice("godel3")

# Two incomparable points: the completion adds their join and nothing else.
anti = crisp_order(Carrier(("a", "b")), boolean, np.eye(2, dtype=bool), name="antichain")
print(f"antichain is a join-semilattice: {bool(is_join_semilattice(anti))}")
comp = completion(anti)
print(comp.format())
v = verify_completion(anti, comp.completion_order, comp.xi)
print(f"universal property verified: {bool(v)}")
print()

# A graded order over the three-element Goedel chain: a sits below b only to degree 1/2.
half = g3.index_of("1/2")
graded = build_order(Carrier(("a", "b")), g3, [[g3.top, half], [g3.bottom, g3.top]], name="graded")
print(f"graded order is a join-semilattice: {bool(is_join_semilattice(graded))}")
print(completion(graded).format())

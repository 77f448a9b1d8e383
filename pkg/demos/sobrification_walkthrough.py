"""Sobrify a small non-sober space and watch xi identify points.

Run: python demos/sobrification_walkthrough.py
"""

from lconvex.convex import build_space, indiscrete_space
from lconvex.fuzzy import Carrier, LSubset
from lconvex.lattice import named_lattice
from lconvex.scott import specialization
from lconvex.sober import is_sober, sobrify

g3 = named_lattice("godel3")
xyz = Carrier(("x", "y", "z"))

# Two points nobody can tell apart are never sober: the hull of either point is everything.
flat = indiscrete_space(Carrier(("p", "q")), g3, name="flat")
print(f"{flat.name}: sober = {bool(is_sober(flat))}")
print(sobrify(flat).format())
print()

# A space generated by one graded set: y and z share every member, so X^F merges them.
gen = LSubset.from_array(xyz, g3, [g3.top, 1, 1])
x = build_space(xyz, g3, [gen], name="graded")
print(f"{x.name}: {len(x)} members, sober = {bool(is_sober(x))}")
res = sobrify(x, oracle=True)
print(res.format())
print()

# The sobrification is sober, and its specialization order is inclusion of the underlying convex sets.
spec = specialization(res.xf_space)
print("specialization order on X^F:")
for lbl, row in zip(spec.carrier.labels, spec.e):
    print(f"  {lbl:<16} " + " ".join(g3.label(int(d)) for d in row))

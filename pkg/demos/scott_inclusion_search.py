"""Look for sober spaces whose members miss some Scott convex set.

Sober spaces always satisfy C(X) within sigma*(Omega X).  The reverse
inclusion fails in general; this search finds the smallest witnesses.

Run: python demos/scott_inclusion_search.py
"""

from lconvex.harness.generators import InstanceSpec
from lconvex.harness.search import SearchStats, search_counterexamples

for name in ("boolean", "godel3", "lukasiewicz3"):
    stats = SearchStats()
    spec = InstanceSpec(lattices=(name,))
    found = list(search_counterexamples("scott-inclusion", spec, stats=stats))
    print(f"{name}: {stats.visited} spaces visited, {len(found)} with Scott convex sets outside C(X)")
    if found:
        f = min(found, key=lambda f: (len(f.carrier), len(f.members)))
        print(f"  smallest: carrier {list(f.carrier)}, members {list(f.members)}")
        print(f"  Scott convex but not a member: {f.detail['scott_convex_not_member']}")

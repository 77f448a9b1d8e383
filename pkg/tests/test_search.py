from lconvex.harness.generators import InstanceSpec
from lconvex.harness.search import SearchStats, search_counterexamples


def test_no_scott_inclusion_failures_over_boolean():
    stats = SearchStats()
    assert list(search_counterexamples("scott-inclusion", InstanceSpec(lattices=("boolean",)), stats=stats)) == []
    assert stats.visited == 50


def test_scott_inclusion_findings_over_godel3():
    findings = list(search_counterexamples("scott-inclusion", InstanceSpec(lattices=("godel3",), carrier_sizes=(1,))))
    # the one-point space {0, 1} is sober, yet the constant 1/2 is Scott convex
    assert [f.members for f in findings] == [("[0]", "[1]")]
    assert findings[0].detail == {"scott_convex_not_member": ["[1/2]"]}


def test_false_hypothesis_found_immediately():
    spec = InstanceSpec(lattices=("boolean",), carrier_sizes=(2,))
    first = next(search_counterexamples("any-equivalence", spec, hypotheses=("all-spaces-sober",)))
    assert first.members == ("[0,0]", "[1,1]")


def test_true_hypotheses_have_no_findings():
    spec = InstanceSpec(samples=10)
    names = ("sober-iff-join-and-scott", "sober-iff-xi-homeomorphism", "sober-implies-join-semilattice")
    assert list(search_counterexamples("any-equivalence", spec, hypotheses=names)) == []

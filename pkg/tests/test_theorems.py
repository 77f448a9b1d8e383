import pytest

from lconvex.harness.generators import InstanceSpec
from lconvex.harness.theorems import CHECK_IDS, CHECKS, FAIL, MUTATIONS, PASS, SKIPPED, mutated, run_suite
from lconvex import convex

# Every in-scope statement, one id each.
IN_SCOPE = (
    "Lemma-resi-lat", "Def-L-order", "Ex-L-ord", "Lemma-zadeh-adjoint", "Def-lower-upper", "Def-sup-inf",
    "Def-convex-structure", "Def-hull", "Lemma-pn-co", "Def-maps", "Lemma-cp-hull",
    "Def-finite", "Def-polytope", "Def-sober", "Rk-fin-plo", "Def-compact", "Lemma-spec-conv", "Prop-cp-sob",
    "Def-F-close", "Prop-fcon", "Def-xf", "Prop-xf-sober", "Prop-sober-iso", "Lemma-Fclo-two",
    "Def-sobrification", "Thm-sobrification",
    "Def-specialization", "Prop-spec-co", "Prop-xf-spe", "Def-scott-convex", "Def-scott-cp", "Prop-sco-dir",
    "Def-join-semilattice", "Prop1-sober-join", "Prop-sober-join", "Cor-omega-scott-cp", "Lemma-xi-scot",
    "Prop-c-sig", "Def-completion", "Thm-completion", "Thm-completion-charact",
)

SMALL = InstanceSpec(samples=8, order_sizes=(1, 2))


def test_every_statement_has_exactly_one_check():
    assert len(CHECK_IDS) == len(set(CHECK_IDS))
    assert set(CHECK_IDS) == set(IN_SCOPE)
    assert all(c.statement and c.instances for c in CHECKS)


def test_small_suite_passes():
    report = run_suite(SMALL)
    assert report.passed, report.format()
    assert {r.status for r in report.results} <= {PASS, SKIPPED}


def test_report_is_byte_identical_per_seed():
    only = ("Def-xf", "Prop-sco-dir", "Thm-sobrification")
    assert run_suite(SMALL, only=only).to_json() == run_suite(SMALL, only=only).to_json()


def test_zero_budget_skips_everything():
    report = run_suite(SMALL.with_budget(0))
    assert {r.status for r in report.results} == {SKIPPED}
    assert all("budget" in r.note for r in report.results)


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_each_mutation_is_caught(name):
    report = run_suite(SMALL, mutation=name)
    assert report.failed, f"mutation {name} went unnoticed"


def test_hull_mutation_breaks_hull_laws():
    report = run_suite(SMALL, only=("Lemma-pn-co",), mutation="hull-last-superset")
    assert report.results[0].status == FAIL
    assert report.results[0].witness


def test_mutation_is_undone():
    original = convex.hull_rows
    with mutated("hull-last-superset"):
        assert convex.hull_rows is not original
    assert convex.hull_rows is original


def test_unknown_check_id_rejected():
    with pytest.raises(ValueError):
        run_suite(SMALL, only=("No-such-check",))

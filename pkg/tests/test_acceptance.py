"""Acceptance gate: twelve criteria, each printed as one PASS/FAIL line in the
terminal summary.  Criteria 4-12 share one timed run of the default suite."""

from __future__ import annotations

import time

import pytest

from lconvex.harness.generators import InstanceSpec, generate_spaces
from lconvex.harness.theorems import MUTATIONS, Context, SuiteReport, run_suite, universal_pairs

CENSUS_TOTAL = 1 + 4 + 45 + 2 + 37 + 10016 + 1 + 16 + 7218
SMALL = InstanceSpec(samples=8, order_sizes=(1, 2))


def _timed(spec: InstanceSpec, only: tuple[str, ...] | None = None, mutation: str | None = None):
    t0 = time.perf_counter()
    report = run_suite(spec, only=only, mutation=mutation)
    return report, time.perf_counter() - t0


def _summary(report: SuiteReport, ids: tuple[str, ...]) -> tuple[bool, str]:
    by_id = {r.id: r for r in report.results}
    rows = [by_id[i] for i in ids]
    ok = all(r.status == "Pass" for r in rows)
    cases = sum(r.cases for r in rows)
    skipped = sum(r.skipped_cases for r in rows)
    bad = [f"{r.id}={r.status}" for r in rows if r.status != "Pass"]
    detail = f"{cases} cases, {skipped} skipped for budget" + (f"; {', '.join(bad)}" if bad else "")
    return ok, detail


def _record(log: dict, n: int, title: str, ok: bool, detail: str) -> None:
    log[n] = f"{'PASS' if ok else 'FAIL'}  {n:>2}  {title}: {detail}"
    assert ok, log[n]


@pytest.fixture(scope="module")
def default_run():
    return _timed(InstanceSpec())


def test_residuation_laws(acceptance_log):
    report, secs = _timed(InstanceSpec(), only=("Lemma-resi-lat",))
    ok, detail = _summary(report, ("Lemma-resi-lat",))
    _record(acceptance_log, 1, "residuation laws", ok and secs < 1, f"{detail}, {secs:.2f} s (limit 1 s)")


def test_zadeh_adjunction(acceptance_log):
    spec = InstanceSpec(carrier_sizes=(1, 2, 3))
    report, secs = _timed(spec, only=("Lemma-zadeh-adjoint",))
    ok, detail = _summary(report, ("Lemma-zadeh-adjoint",))
    _record(acceptance_log, 2, "Zadeh adjunction", ok and secs < 30, f"{detail}, {secs:.2f} s (limit 30 s)")


def test_hull_laws_exhaustive(acceptance_log):
    spec = InstanceSpec(exhaustive_limit=27)
    report, secs = _timed(spec, only=("Lemma-pn-co",))
    ok, detail = _summary(report, ("Lemma-pn-co",))
    n_spaces = sum(1 for _ in generate_spaces(spec))
    _record(acceptance_log, 3, "hull laws", ok and secs < 120 and n_spaces == CENSUS_TOTAL,
            f"{n_spaces} spaces, {detail}, {secs:.2f} s (limit 120 s)")


def test_phi_lemma(acceptance_log, default_run):
    ok, detail = _summary(default_run[0], ("Lemma-spec-conv",))
    _record(acceptance_log, 4, "phi lemma", ok, detail)


def test_cp_sober(acceptance_log, default_run):
    ok, detail = _summary(default_run[0], ("Prop-cp-sob",))
    _record(acceptance_log, 5, "Cp(C(X)) sober", ok, detail)


def test_sobrification_suite(acceptance_log, default_run):
    ok, detail = _summary(default_run[0], ("Def-xf", "Prop-xf-sober", "Prop-sober-iso"))
    _record(acceptance_log, 6, "sobrification suite", ok, detail)


def test_universal_property(acceptance_log, default_run):
    ctx = Context(InstanceSpec())
    pairs = universal_pairs(ctx)
    boolean = sum(1 for i, _ in pairs if ctx.spaces[i].lattice.size == 2)
    three = sum(1 for i, _ in pairs if ctx.spaces[i].lattice.size == 3)
    ok, detail = _summary(default_run[0], ("Thm-sobrification",))
    _record(acceptance_log, 7, "universal property", ok and boolean > 0 and three >= 50,
            f"{boolean} Boolean pairs, {three} sampled pairs over 3-element lattices, {detail}")


def test_fast_paths_match_oracles(acceptance_log, default_run):
    ok, detail = _summary(default_run[0], ("Def-sober", "Def-F-close", "Def-xf", "Def-polytope", "Def-compact"))
    _record(acceptance_log, 8, "fast paths vs oracles", ok, detail)


def test_scott_bridge(acceptance_log, default_run):
    ok, detail = _summary(default_run[0], ("Def-scott-convex", "Def-scott-cp", "Prop-sco-dir"))
    _record(acceptance_log, 9, "Scott bridge", ok, detail)


def test_sober_join(acceptance_log, default_run):
    ok, detail = _summary(default_run[0], ("Prop-sober-join",))
    _record(acceptance_log, 10, "sober-join characterization", ok, detail)


def test_completion(acceptance_log, default_run):
    ok, detail = _summary(default_run[0], ("Def-completion", "Prop-c-sig", "Thm-completion",
                                           "Thm-completion-charact"))
    _record(acceptance_log, 11, "completion", ok, detail)


def test_full_run(acceptance_log, default_run):
    report, secs = default_run
    again, _ = _timed(InstanceSpec())
    deterministic = report.to_json() == again.to_json()
    caught = {m: run_suite(SMALL, mutation=m).failed for m in MUTATIONS}
    missed = [m for m, failed in caught.items() if not failed]
    counts = report.counts()
    ok = report.passed and secs < 300 and deterministic and not missed
    _record(acceptance_log, 12, "full theorems run",
            ok, f"{counts}, {secs:.1f} s (limit 300 s), deterministic={deterministic}, "
                f"mutations caught {len(MUTATIONS) - len(missed)}/{len(MUTATIONS)}")

"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Criterion 5 includes one sub-check (invariance of the relative sectional
category under homotopy of g) that fails by design: the generic finite
projection has no homotopy lifting property, and a four-point counterexample
(pinned in test_sectional.py) makes the unrestricted statement false.  The
check is asserted faithfully anyway and is expected red; every other
criterion passes.
"""

import json
import time

import pytest

from secnum.census import census_up_to
from secnum.coincidence import (
    VERIFIED,
    check_cp_implies_fpp,
    check_key_lemma,
    check_main_theorem,
    check_remark,
    has_cp,
    has_fpp,
)
from secnum.finspace import (
    configuration_space,
    enumerate_maps,
    identity_map,
    make_space,
    sierpinski,
)
from secnum.sectional import relative_sec
from secnum.suite import SuiteConfig, run_suite

SEED = 20240801

ACCEPTANCE = SuiteConfig(
    max_points=3,
    census_max_points=3,
    hausdorff_target_max=4,
    key_lemma_target_max=5,
    k_values=(2, 3),
    contractibility_census_max=5,
    instances_per_property=500,
    tc_instances=100,
    seed=SEED,
    parallelism=1,
)


def _report_line(criterion: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {criterion}: {detail}")


@pytest.fixture(scope="session")
def suite_report():
    return run_suite(ACCEPTANCE)


def _census_x_spaces():
    return census_up_to(3, include_empty=True)


def _census_y_spaces():
    return census_up_to(3, include_empty=True)


def _all_g(X, Y):
    if X.n > 0 and Y.n == 0:
        return []
    return list(enumerate_maps(X, Y))


def test_criterion_1_remark_equivalence_exhaustive():
    started = time.monotonic()
    instances = violations = 0
    for X in _census_x_spaces():
        for Y in _census_y_spaces():
            for g in _all_g(X, Y):
                instances += 1
                report = check_remark(X, Y, g)
                if report.status != VERIFIED:
                    violations += 1
    elapsed = time.monotonic() - started
    ok = violations == 0 and elapsed < 300
    _report_line(
        "criterion 1 (hypothesis-free equivalence, exhaustive <=3 census)",
        ok,
        f"{instances} instances, {violations} violations, {elapsed:.1f}s",
    )
    assert violations == 0
    assert elapsed < 300


def test_criterion_2_main_equivalence_on_discrete_targets():
    started = time.monotonic()
    instances = violations = 0
    for size in range(2, 5):
        Y = make_space(size, [])
        for X in _census_x_spaces():
            for g in _all_g(X, Y):
                instances += 1
                report = check_main_theorem(X, Y, g)
                if report.status != VERIFIED:
                    violations += 1
    elapsed = time.monotonic() - started
    ok = violations == 0 and elapsed < 120
    _report_line(
        "criterion 2 (CP iff relative sec = 2 on discrete targets 2..4)",
        ok,
        f"{instances} instances, {violations} violations, {elapsed:.1f}s",
    )
    assert violations == 0
    assert elapsed < 120


def test_criterion_3_k_bound_on_discrete_targets():
    started = time.monotonic()
    instances = violations = 0
    for k in (2, 3):
        for size in range(k, 6):
            Y = make_space(size, [])
            for X in _census_x_spaces():
                for g in _all_g(X, Y):
                    instances += 1
                    report = check_key_lemma(X, Y, g, k)
                    if report.status != VERIFIED:
                        violations += 1
    elapsed = time.monotonic() - started
    ok = violations == 0 and elapsed < 300
    _report_line(
        "criterion 3 (relative sec of k-point projection <= k, discrete targets to 5)",
        ok,
        f"{instances} instances, {violations} violations, {elapsed:.1f}s",
    )
    assert violations == 0
    assert elapsed < 300


def test_criterion_4_sierpinski_boundary_case():
    started = time.monotonic()
    S = sierpinski()
    one = identity_map(S)
    cp = has_cp(S, S, one)
    fpp = has_fpp(S)
    _, projections = configuration_space(S, 2)
    pi = projections[1]
    by_pullback = relative_sec(pi, one, route="pullback").value
    by_lift = relative_sec(pi, one, route="lift").value
    elapsed = time.monotonic() - started
    ok = (
        cp.holds
        and fpp.holds
        and not by_pullback.is_finite
        and not by_lift.is_finite
        and elapsed < 1.0
    )
    _report_line(
        "criterion 4 (non-Hausdorff boundary: Sierpinski with identity)",
        ok,
        f"CP={cp.holds} FPP={fpp.holds} sec={by_pullback}/{by_lift}, {elapsed*1000:.0f}ms",
    )
    assert cp.holds and fpp.holds
    assert not by_pullback.is_finite and not by_lift.is_finite
    assert elapsed < 1.0


CRITERION_5_CLAIMS = [
    "composition_chain",
    "product_sec_equality",
    "product_secat_equality",
    "square_rule_sec",
    "square_rule_secat",
    "square_rule_secat_homotopy",
    "triangle_sec_monotone",
    "triangle_secat_homotopy",
    "secat_le_sec",
    "secat_le_cat_target",
    "nullhomotopic_secat_eq_cat",
    "relative_sec_le_sec",
    "relative_times_sec_ge_sec",
    "relative_secat_le_cat_base",
    "relative_secat_homotopy_invariance",
    "retraction_relative_sec",
]


@pytest.mark.parametrize("claim_id", CRITERION_5_CLAIMS)
def test_criterion_5_inequality_suites(suite_report, claim_id):
    entry = suite_report.claim(claim_id)
    tallies = entry["tallies"]
    failures = tallies["violated"] + tallies["falsified"] + tallies["inconclusive"]
    checked = tallies["verified"]
    ok = failures == 0 and checked > 0
    _report_line(
        f"criterion 5 ({claim_id}, {entry['instances']} seeded instances)",
        ok,
        f"verified={checked} hypothesis-not-met={tallies['hypothesis-not-met']} "
        f"failures={failures}",
    )
    assert entry["instances"] >= ACCEPTANCE.instances_per_property
    assert checked > 0, "gate must not be vacuous"
    assert failures == 0, (
        f"{claim_id}: {failures} failing instances; "
        f"witnesses: {entry['witnesses'][:2]}"
    )


def test_criterion_5_total_runtime(suite_report):
    total = sum(suite_report.timings.get(claim_id, 0.0) for claim_id in CRITERION_5_CLAIMS)
    ok = total < 900
    _report_line("criterion 5 (total runtime of inequality suites)", ok, f"{total:.1f}s")
    assert total < 900


def test_criterion_6_oracle_cross_checks(suite_report):
    route = suite_report.claim("route_equivalence")
    contractible = suite_report.claim("contractible_core_vs_fence")
    cat_core = suite_report.claim("cat_core_invariance")
    disagreements = (
        route["tallies"]["violated"]
        + contractible["tallies"]["violated"]
        + cat_core["tallies"]["violated"]
        + route["tallies"]["inconclusive"]
        + contractible["tallies"]["inconclusive"]
        + cat_core["tallies"]["inconclusive"]
    )
    ok = (
        disagreements == 0
        and route["instances"] >= ACCEPTANCE.instances_per_property
        and contractible["instances"] == len(census_up_to(5))
        and cat_core["instances"] == len(census_up_to(5))
    )
    _report_line(
        "criterion 6 (route equivalence; core vs fence; cat core-invariance)",
        ok,
        f"routes={route['instances']} census={contractible['instances']} "
        f"disagreements={disagreements}",
    )
    assert disagreements == 0
    assert route["instances"] >= ACCEPTANCE.instances_per_property
    assert contractible["instances"] == len(census_up_to(5)) == 185
    assert cat_core["instances"] == len(census_up_to(5))


def test_criterion_7_cp_implies_fpp_census():
    started = time.monotonic()
    instances = violations = contrapositive_checked = 0
    for X in _census_x_spaces():
        for Y in _census_y_spaces():
            for g in _all_g(X, Y):
                instances += 1
                report = check_cp_implies_fpp(X, Y, g)
                if report.status != VERIFIED:
                    violations += 1
                if "contrapositive_witness" in report.conclusions[0]:
                    contrapositive_checked += 1
    elapsed = time.monotonic() - started
    ok = violations == 0 and contrapositive_checked > 0
    _report_line(
        "criterion 7 (CP forces FPP, with contrapositive witness re-validation)",
        ok,
        f"{instances} instances, {violations} violations, "
        f"{contrapositive_checked} contrapositive witnesses re-validated, {elapsed:.1f}s",
    )
    assert violations == 0
    assert contrapositive_checked > 0


def test_criterion_8_tc_bounds_fragment(suite_report):
    exact = suite_report.claim("tc_bounds_contractible")
    lower = suite_report.claim("tc_bounds_noncontractible")
    failures = (
        exact["tallies"]["violated"]
        + lower["tallies"]["violated"]
        + exact["tallies"]["inconclusive"]
        + lower["tallies"]["inconclusive"]
    )
    ok = (
        failures == 0
        and exact["tallies"]["verified"] >= ACCEPTANCE.tc_instances
        and lower["tallies"]["verified"] > 0
    )
    _report_line(
        "criterion 8 (relative complexity interval: exact when domain contractible)",
        ok,
        f"contractible verified={exact['tallies']['verified']} "
        f"noncontractible verified={lower['tallies']['verified']} failures={failures}",
    )
    assert failures == 0
    assert exact["tallies"]["verified"] >= ACCEPTANCE.tc_instances
    assert lower["tallies"]["verified"] > 0


def test_criterion_9_suite_determinism(tmp_path):
    config = dict(
        max_points=2,
        census_max_points=2,
        hausdorff_target_max=3,
        key_lemma_target_max=3,
        k_values=(2,),
        contractibility_census_max=3,
        instances_per_property=40,
        tc_instances=10,
        seed=SEED,
    )
    runs = [
        run_suite(SuiteConfig(**config, parallelism=1)).to_json_bytes(),
        run_suite(SuiteConfig(**config, parallelism=1)).to_json_bytes(),
        run_suite(SuiteConfig(**config, parallelism=8)).to_json_bytes(),
    ]
    ok = runs[0] == runs[1] == runs[2]
    _report_line(
        "criterion 9 (byte-identical reports at parallelism 1 and 8)",
        ok,
        f"{len(runs[0])} bytes per report",
    )
    assert runs[0] == runs[1]
    assert runs[0] == runs[2]
    # and the written artifact round-trips as JSON
    report = json.loads(runs[0])
    assert report["schema"] == "secnum.suite-report/1"

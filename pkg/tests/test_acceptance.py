"""Acceptance battery: every criterion as one test with a pass/fail line.

This module drives the same aggregated checks as ``convalg suite run
paper-core``; each test prints one line so a plain ``pytest -s
tests/test_acceptance.py`` doubles as a human-readable scorecard.  All
checks are exact at the stated scope: exhaustive wherever the criterion
says exhaustive, seeded sampling only where it says sampled.
"""

import pytest

from convalg import suites
from convalg.catalog import structure_pool

CRITERIA = [
    ("1-subset-isomorphism", suites.suite_subset_iso),
    ("2-operator-laws", suites.suite_operator_laws),
    ("3-finite-support", suites.suite_finite_support),
    ("4-equation-transfer", suites.suite_equation_transfer),
    ("5-z2-associativity-biconditional", suites.suite_z2_biconditional),
    ("6-nabla-equation-positive", suites.suite_nabla),
    ("7-closure-correspondence", suites.suite_closure_correspondence),
    ("8-monadic-axioms", suites.suite_monadic),
    ("9-relation-algebra-axioms", suites.suite_relation_algebra),
    ("10-residuation", suites.suite_residuation),
    ("11-structural-isomorphisms", suites.suite_structural),
    ("12-type2-grid-transfer", suites.suite_type2),
]


@pytest.mark.parametrize("name,runner", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance_criterion(name, runner):
    report = runner(budget=None, seed=0)
    marker = "PASS" if report.status == "pass" else "FAIL"
    print(f"{marker} {name}: {report.stats}")
    assert report.status == "pass", report.witness


def test_pool_is_large_and_varied():
    pool = structure_pool()
    print(f"PASS pool-size: {len(pool)} structures")
    assert len(pool) >= 20
    arities = {spec.arity for _, s in pool for spec in s.signature.rel_specs}
    assert 0 in arities and 1 in arities and 2 in arities


def test_suite_entry_point_matches_criteria():
    spec = suites.SUITES["paper-core"]
    assert [m[1] for m in spec.members] == [c[1] for c in CRITERIA]

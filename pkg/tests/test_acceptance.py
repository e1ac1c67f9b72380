"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

import pytest

from attain import scenarios as sc


def report(result):
    print(f"\n{'PASS' if result.passed else 'FAIL'} criterion {result.criterion}: {result.detail}")
    assert result.passed, result.detail


def test_criterion_1_zero_attainer_bound():
    report(sc.claim_zero_attainer_bound())


def test_criterion_2_blackwell_recursion():
    report(sc.claim_blackwell_recursion())


def test_criterion_3_discrete_impossibility():
    report(sc.claim_discrete_impossibility())


def test_criterion_4_example2_boundary():
    report(sc.claim_example2())


def test_criterion_5a_always_b():
    report(sc.claim_example4_always_b())


def test_criterion_5b_weak_attainer():
    report(sc.claim_example4_weak())


def test_criterion_5c_b3_evidence():
    report(sc.claim_example4_b3())


def test_criterion_5d_b4_witnesses():
    report(sc.claim_example4_b4())


def test_criterion_5cd_verdict():
    report(sc.claim_example4_verdict())


def test_criterion_6a_network_table():
    report(sc.claim_network_table())


def test_criterion_6b_network_c2():
    report(sc.claim_network_c2())


def test_criterion_6c_network_points():
    report(sc.claim_network_points())


def test_criterion_7_solver_certificates():
    report(sc.claim_solver_certificates(500))


def test_criterion_8_lipschitz_translation():
    report(sc.claim_lipschitz_translation(200))


def test_criterion_9_cone_and_transformers():
    report(sc.claim_cone())

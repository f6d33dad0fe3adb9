"""Acceptance suite: every end-to-end claim at its stated tolerance.

Each test wraps one catalog check from :mod:`jacobilab.verification`, asserts
it within its runtime budget and prints one pass/fail line (visible with
``pytest -s`` or through ``jacobilab verify``).
"""

import time

import pytest

from jacobilab.verification import (check_alpha_identity,
                                    check_area_genus_consequence,
                                    check_backend_equivalence,
                                    check_curvature_identities,
                                    check_gauss_bonnet,
                                    check_hopf_spectrum_closed_form,
                                    check_minmax_property,
                                    check_slice_spectrum,
                                    check_thm_minus_soundness,
                                    check_thm_plus_soundness,
                                    check_warped_example)


def check_theorem_soundness_both(seed=None):
    plus = check_thm_plus_soundness()
    minus = check_thm_minus_soundness()
    from jacobilab.verification import CheckResult
    return CheckResult(name="theorem_soundness",
                       passed=plus.passed and minus.passed,
                       detail=f"positive: {plus.detail}; negative: {minus.detail}",
                       elapsed=plus.elapsed + minus.elapsed)


CRITERIA = [
    (1, check_hopf_spectrum_closed_form, 10.0),
    (2, check_slice_spectrum, 1.0),
    (3, check_curvature_identities, 1.0),
    (4, check_theorem_soundness_both, 30.0),
    (5, check_alpha_identity, 5.0),
    (6, check_minmax_property, 10.0),
    (7, check_backend_equivalence, None),
    (8, check_warped_example, None),
    (9, check_gauss_bonnet, None),
    (10, check_area_genus_consequence, None),
]


def _run(number, check, budget):
    started = time.perf_counter()
    result = check()
    elapsed = time.perf_counter() - started
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} criterion {number:2d} [{result.name}] {elapsed:6.2f}s: {result.detail}")
    assert result.passed, f"criterion {number}: {result.detail}"
    if budget is not None:
        assert elapsed < budget, \
            f"criterion {number} took {elapsed:.1f}s, budget {budget:.0f}s"


@pytest.mark.parametrize("number,check,budget", CRITERIA,
                         ids=[f"criterion_{n:02d}_{c.__name__[6:]}" for n, c, _ in CRITERIA])
def test_acceptance(number, check, budget):
    _run(number, check, budget)

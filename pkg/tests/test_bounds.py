import math

import pytest

from jacobilab import (EqualityStatus, GradientMode, RegimeMismatchError,
                       ScalarField1D, TheoremPart, Verdict, bound_thm_minus_i,
                       bound_thm_minus_ii, bound_thm_plus_i, bound_thm_plus_ii,
                       build_bound_report, corollary_checks, equality_classify,
                       homogeneous_model, hopf_torus, horizontal_slice,
                       product_model, solve_surface, stability_verdict)

TWO_PI = 2 * math.pi
INTR = GradientMode.INTRINSIC_ON_SURFACE


def torus(kappa, tau, H, L=TWO_PI, ell=TWO_PI):
    return hopf_torus(homogeneous_model(kappa, tau, ell), L, 2 * H)


def sphere_slice():
    m = product_model(ScalarField1D.constant(1.0, TWO_PI), TWO_PI)
    return horizontal_slice(m, base_area=4 * math.pi, genus=0)


def genus2_slice():
    m = product_model(ScalarField1D.constant(-1.0, TWO_PI), TWO_PI)
    return horizontal_slice(m, base_area=4 * math.pi, genus=2)


# --- positive regime -------------------------------------------------------------

def test_plus_i_slice_equality():
    s = sphere_slice()
    assert bound_thm_plus_i(s) == pytest.approx(0.0, abs=1e-15)
    lam = solve_surface(s).lambda1
    eq = equality_classify(s, lam, bound_thm_plus_i(s), TheoremPart.PLUS_I)
    assert eq.status is EqualityStatus.EQUALITY


def test_plus_i_hopf_strict():
    t = torus(4.0, 0.5, 0.0)
    assert bound_thm_plus_i(t) == pytest.approx(-0.5, abs=1e-14)
    lam = solve_surface(t).lambda1
    assert lam == pytest.approx(-4.0, abs=1e-10)
    eq = equality_classify(t, lam, bound_thm_plus_i(t), TheoremPart.PLUS_I)
    assert eq.status is EqualityStatus.NO_EQUALITY


def test_plus_i_hopf_with_mean_curvature():
    t = torus(4.0, 0.5, 1.0)
    assert bound_thm_plus_i(t) == pytest.approx(-2.5, abs=1e-14)
    assert solve_surface(t).lambda1 == pytest.approx(-8.0, abs=1e-10)


def test_plus_ii_hopf_equality():
    t = torus(4.0, 0.5, 0.0)
    assert bound_thm_plus_ii(t) == pytest.approx(-4.0, abs=1e-14)
    lam = solve_surface(t).lambda1
    eq = equality_classify(t, lam, bound_thm_plus_ii(t), TheoremPart.PLUS_II)
    assert eq.status is EqualityStatus.EQUALITY
    t2 = torus(4.0, 0.5, 0.5)
    assert bound_thm_plus_ii(t2) == pytest.approx(-5.0, abs=1e-14)
    assert solve_surface(t2).lambda1 == pytest.approx(-5.0, abs=1e-10)


def test_plus_ii_slice_strict():
    s = sphere_slice()
    assert bound_thm_plus_ii(s) == pytest.approx(1.0, abs=1e-14)
    lam = solve_surface(s).lambda1
    assert lam == 0.0
    eq = equality_classify(s, lam, bound_thm_plus_ii(s), TheoremPart.PLUS_II)
    assert eq.status is EqualityStatus.NO_EQUALITY


# --- negative regime --------------------------------------------------------------

def test_minus_i_values():
    t = torus(0.0, 1.0, 0.0)
    assert bound_thm_minus_i(t) == pytest.approx(2.0, abs=1e-14)
    assert solve_surface(t).lambda1 == pytest.approx(0.0, abs=1e-10)
    # equality additionally requires tau = 0 on the surface, impossible here
    eq = equality_classify(t, 0.0, bound_thm_minus_i(t), TheoremPart.MINUS_I)
    assert eq.status is EqualityStatus.NO_EQUALITY


def test_minus_i_product_minimal_torus_equality():
    t = torus(-1.0, 0.0, 0.0)
    assert bound_thm_minus_i(t) == pytest.approx(1.0, abs=1e-14)
    lam = solve_surface(t).lambda1
    assert lam == pytest.approx(1.0, abs=1e-10)
    eq = equality_classify(t, lam, bound_thm_minus_i(t), TheoremPart.MINUS_I)
    assert eq.status is EqualityStatus.EQUALITY


def test_minus_i_cmc_strict():
    t = torus(-1.0, 0.0, 0.5)
    assert bound_thm_minus_i(t) == pytest.approx(0.5, abs=1e-14)
    assert solve_surface(t).lambda1 == pytest.approx(0.0, abs=1e-10)


def test_minus_ii_genus2_slice_equality():
    s = genus2_slice()
    assert bound_thm_minus_ii(s) == pytest.approx(0.0, abs=1e-14)
    lam = solve_surface(s).lambda1
    eq = equality_classify(s, lam, bound_thm_minus_ii(s), TheoremPart.MINUS_II)
    assert eq.status is EqualityStatus.EQUALITY


def test_minus_ii_hopf_strict():
    t = torus(0.0, 1.0, 0.0)
    assert bound_thm_minus_ii(t) == pytest.approx(4.0, abs=1e-14)
    t2 = torus(-1.0, 0.0, 0.0)
    assert bound_thm_minus_ii(t2) == pytest.approx(2.0, abs=1e-14)
    assert solve_surface(t2).lambda1 == pytest.approx(1.0, abs=1e-10)


# --- regime guards -------------------------------------------------------------------

def test_bounds_refuse_wrong_regime():
    positive = torus(4.0, 0.5, 0.0)
    negative = torus(0.0, 1.0, 0.0)
    null = torus(4.0, 1.0, 0.0)
    with pytest.raises(RegimeMismatchError):
        bound_thm_minus_i(positive)
    with pytest.raises(RegimeMismatchError):
        bound_thm_plus_i(negative)
    for fn in (bound_thm_plus_i, bound_thm_plus_ii, bound_thm_minus_i, bound_thm_minus_ii):
        with pytest.raises(RegimeMismatchError):
            fn(null)


def test_report_refuses_null_regime():
    with pytest.raises(RegimeMismatchError):
        build_bound_report(torus(4.0, 1.0, 0.0), 0.0)


# --- verdicts -----------------------------------------------------------------------

def test_stability_verdicts():
    assert stability_verdict(-4.0) is Verdict.UNSTABLE
    assert stability_verdict(0.0) is Verdict.MARGINAL
    assert stability_verdict(1.0) is Verdict.STRONGLY_STABLE
    assert stability_verdict(5e-9, tol=1e-8) is Verdict.MARGINAL
    with pytest.raises(ValueError):
        stability_verdict(0.0, tol=-1.0)


# --- equality anomaly flag -------------------------------------------------------------

def test_numeric_equality_without_characterization_is_anomalous():
    t = torus(0.0, 1.0, 0.0)  # negative regime, tau != 0
    bound = bound_thm_minus_i(t)
    eq = equality_classify(t, bound, bound, TheoremPart.MINUS_I)
    assert eq.numeric_equality and not eq.characterization_holds
    assert eq.status is EqualityStatus.ANOMALY


def test_characterization_without_numeric_equality_is_anomalous():
    t = torus(-1.0, 0.0, 0.0)
    bound = bound_thm_minus_i(t)
    eq = equality_classify(t, bound - 1.0, bound, TheoremPart.MINUS_I)
    assert not eq.numeric_equality and eq.characterization_holds
    assert eq.status is EqualityStatus.ANOMALY


# --- corollaries ------------------------------------------------------------------------

def test_corollaries_vacuous_for_unstable_torus():
    t = torus(4.0, 0.5, 0.0)
    records = corollary_checks(t, -4.0)
    applicable = [r for r in records if r.applicable]
    assert applicable == []
    assert any(r.name == "thm_plus_cor_i" and r.satisfied is None for r in records)


def test_corollaries_slice_strongly_stable():
    s = sphere_slice()
    records = {r.name: r for r in corollary_checks(s, 0.0)}
    cor_i = records["thm_plus_cor_i"]
    assert cor_i.applicable and cor_i.satisfied
    # equality branch: H = 0 and the right-hand side is 0 for a slice
    assert cor_i.lhs == 0.0 and cor_i.rhs == pytest.approx(0.0, abs=1e-14)
    assert records["thm_plus_cor_const_tau"].satisfied


def test_corollaries_marginal_hopf_area_genus():
    t = torus(0.0, 1.0, 0.0)  # 0 <= kappa < 4 tau^2, |H| <= tau, lambda1 = 0
    records = {r.name: r for r in corollary_checks(t, 0.0)}
    rec = records["area_genus_consequence"]
    assert rec.applicable and rec.satisfied
    assert rec.lhs == pytest.approx(t.area * 1.0)
    assert rec.rhs == 0.0


def test_corollaries_large_h_cannot_be_stable():
    t = torus(0.0, 0.5, 1.0)  # |H| > tau in 0 <= kappa < 4 tau^2
    lam = solve_surface(t).lambda1
    records = {r.name: r for r in corollary_checks(t, lam)}
    rec = records["area_genus_consequence"]
    assert rec.applicable and rec.satisfied  # lambda1 < 0 as forced


def test_constant_tau_specializations():
    # with tau constant: bound_plus_i == -2 (H^2 + tau^2)
    t = torus(4.0, 0.5, 0.7)
    h2 = 0.49
    assert bound_thm_plus_i(t) == pytest.approx(-2.0 * (h2 + 0.25), abs=1e-13)
    tm = torus(-1.0, 0.3, 0.2)
    records = {r.name: r for r in corollary_checks(tm, solve_surface(tm).lambda1)}
    expect_i = -2.0 * (0.04 - 0.09) - (-1.0)
    assert records["thm_minus_cor_const_tau_i"].rhs == pytest.approx(expect_i, abs=1e-13)
    expect_ii = -4.0 * (0.04 - 0.09) - 0.0 - 2.0 * (-1.0)
    assert records["thm_minus_cor_const_tau_ii"].rhs == pytest.approx(expect_ii, abs=1e-13)
    assert records["thm_minus_cor_const_tau_i"].satisfied
    assert records["thm_minus_cor_const_tau_ii"].satisfied


# --- consolidated report -----------------------------------------------------------------

def test_report_round_trip():
    t = torus(4.0, 0.5, 0.0)
    lam = solve_surface(t).lambda1
    rep = build_bound_report(t, lam)
    assert rep.stability is Verdict.UNSTABLE
    assert not rep.has_violation
    d = rep.to_dict()
    assert d["regime"] == "positive"
    assert d["bounds"]["intrinsic_on_surface"]["equality_ii"]["status"] == "equality"
    assert d["lambda1"] == pytest.approx(-4.0, abs=1e-10)


def test_report_flags_violation():
    t = torus(4.0, 0.5, 0.0)
    rep = build_bound_report(t, lambda1=10.0)  # deliberately impossible value
    assert rep.has_violation

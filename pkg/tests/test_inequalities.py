import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from corpus import CATALOG_LEMMAS, corpus, hub_code, lemma_reports
from eqlines import configurations as cfg
from eqlines.codes import restrict_switch
from eqlines.errors import PreconditionError, ValidationError
from eqlines.graphs import graph_to_code
from eqlines.inequalities import (
    LEMMAS,
    analyze,
    batch_params,
    evaluate_lemma,
    make_report,
    projection_ineq_complex,
    projection_ineq_real,
    projection_ineq_regular,
    sic_identity,
    welch,
)

REPORT_KEYS = ["lemma_id", "lhs", "rhs", "slack", "relative_slack", "holds", "tight", "hypothesis_ok", "notes"]


def vec(rng, n, cplx=False):
    v = rng.standard_normal(n)
    return v + 1j * rng.standard_normal(n) if cplx else v


# --- report mechanics ---------------------------------------------------------

def test_report_orientation_and_keys():
    r = make_report("X", 1.0, 2.0, "lhs <= rhs")
    assert r.slack == 1.0 and r.holds and not r.tight
    assert list(r.to_json()) == REPORT_KEYS
    r = make_report("X", 1.0, 2.0, "lhs >= rhs")
    assert r.slack == -1.0 and not r.holds
    r = make_report("X", 1e9, 1e9 * (1 + 1e-9), "lhs >= rhs")
    assert r.holds and r.tight  # relative scale
    r = make_report("X", 3.0, math.nan, "lhs < rhs", False)
    assert not r.holds and math.isnan(r.slack) and "advisory" in r.notes


# --- main inequalities ----------------------------------------------------------

@pytest.mark.parametrize("name", ["johnson28", "icosahedron6"])
def test_real_projection_equality(name, rng):
    code = cfg.generate(name)
    for _ in range(20):
        r = projection_ineq_real(code, vec(rng, code.n), vec(rng, code.n))
        assert r.tight and "equality expected" in r.notes


@pytest.mark.parametrize("name", ["sic_c2", "sic_c3"])
def test_complex_projection_equality(name, rng):
    code = cfg.generate(name)
    for _ in range(20):
        x, y = vec(rng, code.n, True), vec(rng, code.n, True)
        assert projection_ineq_complex(code, x, y).tight
        assert sic_identity(code, x, y).tight


def test_regular_projection_equality_on_c5(rng):
    code = graph_to_code(cfg.cycle(5))
    for _ in range(20):
        r = projection_ineq_regular(code, vec(rng, 5))
        assert r.hypothesis_ok and r.tight


def test_regular_projection_simplex_slack(rng):
    code = cfg.simplex_plus(20, "1/3")
    a, n = 1 / 3, 20
    lam = 1 - a + a * n
    # along the all-ones direction both sides reduce to lam^2 n
    r = projection_ineq_regular(code, np.ones(n))
    assert r.lhs == pytest.approx(lam**2 * n) and r.rhs == pytest.approx(lam**2 * n) and r.tight
    r = projection_ineq_regular(code, vec(rng, n))
    assert r.holds and not r.tight and r.slack > 0


def test_regular_projection_needs_eigenvector():
    code = restrict_switch(cfg.johnson28(), 0)
    r = projection_ineq_regular(code, np.ones(28))
    assert not r.hypothesis_ok


@given(st.integers(0, 2**32 - 1), st.integers(2, 28))
def test_real_projection_holds_on_subcodes(seed, k):
    rng = np.random.default_rng(seed)
    code = cfg.johnson28().subcode(np.sort(rng.choice(28, k, replace=False)))
    r = projection_ineq_real(code, vec(rng, k), vec(rng, k))
    assert r.holds


@given(st.integers(0, 2**32 - 1), st.integers(2, 9))
def test_complex_projection_holds_on_subcodes(seed, k):
    rng = np.random.default_rng(seed)
    code = cfg.sic_c3().subcode(np.sort(rng.choice(9, k, replace=False)))
    r = projection_ineq_complex(code, vec(rng, k, True), vec(rng, k, True))
    assert r.holds


def test_vector_length_checked():
    with pytest.raises(ValidationError, match="length"):
        projection_ineq_real(cfg.johnson28(), np.ones(3), np.ones(28))
    with pytest.raises(ValidationError, match="real"):
        projection_ineq_real(cfg.johnson28(), np.ones(28) * 1j, np.ones(28))


def test_real_only_inequalities_reject_complex(sic2):
    with pytest.raises(PreconditionError):
        projection_ineq_real(sic2, np.ones(4), np.ones(4))
    with pytest.raises(PreconditionError):
        evaluate_lemma(sic2, "R4")


def test_non_equiangular_rejected():
    with pytest.raises(PreconditionError, match="not equiangular"):
        analyze(cfg.random_code(5, 3, "real", 1))


# --- Welch --------------------------------------------------------------------

def test_welch_sic_c2(sic2):
    w = welch(sic2)
    assert w.pinv_quadform == pytest.approx(2, abs=1e-12)
    assert w.classic_sum == pytest.approx(8, abs=1e-12)
    assert w.identity_in_span and w.frame_vector_tight


@pytest.mark.parametrize("r, field", [(1, "real"), (4, "real"), (5, "complex")])
def test_welch_basis_equality(r, field):
    w = welch(cfg.basis(r, field))
    assert w.pinv_quadform == pytest.approx(r)
    assert w.classic_sum == pytest.approx(w.welch_lower) == pytest.approx(w.improved_lower)


def test_welch_singular_frame_vector_not_applicable():
    # 12 real vectors in R^2: f(M) has rank at most 3
    w = welch(cfg.random_code(12, 2, "real", 4))
    assert w.frame_vector_tight is None and "not applicable" in w.notes
    assert w.first_holds and w.second_holds


def test_welch_johnson(johnson):
    w = welch(johnson)
    assert w.identity_in_span and w.frame_vector_tight
    assert w.classic_sum == pytest.approx(28 * 28 / 7)


@given(st.integers(1, 8), st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_welch_improvement_dominates(r, n, seed):
    w = welch(cfg.random_code(n, r, "complex", seed))
    assert w.pinv_quadform <= r + 1e-8
    assert w.improved_lower >= w.welch_lower - 1e-8
    assert w.classic_sum >= w.improved_lower - 1e-8 * max(1.0, w.classic_sum)


# --- lemma catalogue -------------------------------------------------------------

def test_lemma_spot_values(johnson, johnson_restricted):
    r4 = evaluate_lemma(johnson, "R4")
    assert r4.lhs == pytest.approx(4) and r4.rhs == pytest.approx(10) and r4.holds
    r6 = evaluate_lemma(johnson, "R6")
    assert r6.rhs == pytest.approx(4 * math.sqrt(7) * 3) and r6.holds
    r3 = evaluate_lemma(cfg.simplex_plus(20, "1/3"), "R3", {"part": "lambda2"})
    assert r3.lhs == pytest.approx(2 / 3) and r3.rhs == pytest.approx(1.7714285714285714) and r3.hypothesis_ok


def test_r7_tight_on_restricted_johnson(johnson_restricted):
    for i in range(1, 28):
        r = evaluate_lemma(johnson_restricted, "R7", {"i": i})
        assert r.lhs == pytest.approx(144, abs=1e-7) and r.rhs == pytest.approx(144, abs=1e-7)
        assert r.tight and r.hypothesis_ok


def test_r7_rejects_pivot(johnson_restricted):
    with pytest.raises(ValidationError):
        evaluate_lemma(johnson_restricted, "R7", {"i": 0})


def test_r8_r9_on_hub_code():
    code = hub_code(81, 1 / 3)
    r9 = evaluate_lemma(code, "R9")
    assert r9.hypothesis_ok and r9.lhs == 1 and r9.rhs == pytest.approx(81)
    r8 = evaluate_lemma(code, "R8", {"i": 1})
    assert "in H" in r8.notes and r8.holds


def test_boundary_degenerate_reported(sic2):
    r = evaluate_lemma(sic2, "C5")
    assert math.isnan(r.rhs) and not r.hypothesis_ok and "boundary-degenerate" in r.notes


def test_c3_entry_bound_numerator_has_no_factor_two():
    # lambda_1 = 5.4 > (1 - a^2)/a^2 = 5.25 and every top-eigenvector entry is 1/12
    code = cfg.simplex_plus(12, "2/5")
    r = evaluate_lemma(code, "C3", {"part": "xi"})
    assert r.hypothesis_ok and r.holds
    assert r.lhs == pytest.approx(1 / 12)
    a2 = 0.16
    ca = analyze(code)
    c = (1 - a2) / a2
    halved = (1 - (1 - a2) / (2 * a2 * ca.lambda1)) / (ca.lambda1**2 / ca.D - c)
    assert halved > r.lhs  # the variant with 2 a^2 in the numerator would fail here


def test_missing_and_unknown_parameters(johnson):
    with pytest.raises(ValidationError, match="unknown lemma"):
        evaluate_lemma(johnson, "R99")
    with pytest.raises(ValidationError, match="'x'"):
        evaluate_lemma(johnson, "R2", {"i": 0})
    with pytest.raises(ValidationError, match="part"):
        evaluate_lemma(johnson, "R3", {"part": "mu"})
    with pytest.raises(ValidationError, match="differ"):
        evaluate_lemma(johnson, "R1", {"i": 2, "j": 2})


def test_every_lemma_holds_on_corpus():
    failures = []
    for name, code in corpus():
        for lid, r in lemma_reports(code, CATALOG_LEMMAS, samples=4, seed=3):
            if r.hypothesis_ok and not r.holds:
                failures.append((name, lid, r.slack))
    assert failures == []


def test_batch_params_deterministic(johnson):
    a = batch_params(johnson, "main_r", 3, 5)
    b = batch_params(johnson, "main_r", 3, 5)
    assert all(np.array_equal(p["x"], q["x"]) for p, q in zip(a, b))
    assert set(LEMMAS) >= set(CATALOG_LEMMAS)

"""Window representations: residuals, ladder formulas, central element, su(2)_q."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oscbraid.field import NumericPoint, parse_field
from oscbraid.ncalg import NCPoly
from oscbraid.qgroup import quantum_group_system
from oscbraid.reps import (
    InadmissibleParams,
    InvalidParams,
    RepParamsA,
    RepParamsB,
    build_rep_A,
    build_rep_B,
    casimir_centrality,
    casimir_check,
    casimir_poly,
    constrained_b_modulus,
    k2_closed_squared,
    k2_ladder_squared,
    load_params,
    params_from_dict,
    params_to_dict,
    save_params,
    uqsu2_check,
    uqsu2_system,
    verify_rep,
)


def example_params_a(dim=20):
    return RepParamsA(q=1.2, A=1.0, B=constrained_b_modulus(1.0, 1.2, 0.5),
                      C=0.7, D=0.5, dim=dim)


def example_params_b(dim=24):
    return RepParamsB(q=1.2, Q1=1.5, A=1.3, B=0.7, dim=dim)


# ---------------------------------------------------------------------------
# structure of the window matrices
# ---------------------------------------------------------------------------

def test_family_a_ladder_structure():
    rep = build_rep_A(example_params_a())
    m = rep.matrices
    for name in ("L2", "K1", "K1*"):
        assert np.abs(m[name] - np.diag(np.diag(m[name]))).max() == 0.0
    for name, shift in (("K2", 1), ("K3", 2)):
        lower = m[name]
        assert np.abs(lower - np.diag(np.diag(lower, k=shift), k=shift)).max() == 0.0
        raiser = m[name + "*"]
        assert np.abs(raiser - np.diag(np.diag(raiser, k=-shift), k=-shift)).max() == 0.0
    assert rep.mask == (4, 4)
    assert list(rep.interior()) == list(range(4, rep.dim - 4))


def test_family_b_ladder_structure():
    rep = build_rep_B(example_params_b())
    m = rep.matrices
    assert set(m) == {"K1", "K1*", "K2", "K2*", "L2"}
    assert np.abs(np.tril(m["K2"])).max() == 0.0
    assert np.abs(np.triu(m["K2*"])).max() == 0.0
    # genuine lowest weight: nothing couples state 0 downward
    assert m["K2"][:, 0].max() == 0.0
    assert rep.mask == (0, 2)
    assert rep.offset == 0


def test_star_partners_are_conjugate_transposes():
    for rep in (build_rep_A(example_params_a()), build_rep_B(example_params_b())):
        for name, mat in rep.matrices.items():
            partner = name[:-1] if name.endswith("*") else name + "*"
            if partner in rep.matrices:
                assert np.abs(rep.matrices[partner] - mat.conj().T).max() == 0.0


# ---------------------------------------------------------------------------
# relation residuals
# ---------------------------------------------------------------------------

def test_family_a_example_residuals():
    report = verify_rep(build_rep_A(example_params_a()))
    assert len(report.rows) == 21
    assert report.hermiticity == 0.0
    assert report.max_residual <= 1e-10
    for row in report.rows:
        assert row["residual"] <= 1e-10, row


def test_family_a_residuals_across_sizes():
    for dim in (20, 26, 32):
        p = RepParamsA(q=1.4, A=0.8, B=constrained_b_modulus(0.8, 1.4, 0.6) * 1j,
                       C=0.9 - 0.2j, D=0.6, dim=dim)
        assert verify_rep(build_rep_A(p)).max_residual <= 1e-10


def test_family_a_constraint_violation_raises():
    p = example_params_a()
    p.B = 1.0  # wrong modulus
    with pytest.raises(InvalidParams):
        build_rep_A(p)


def test_constrained_modulus_helper():
    b = constrained_b_modulus(1.3, 1.7, 0.4 + 0.3j)
    assert abs(b * b - 1.3**2 - 1.7**2 * 0.25) <= 1e-12


def test_family_a_bottom_columns_break_without_mask():
    # the family has no lowest weight: below the window K2 and K3 keep
    # lowering, so column 0 of the K2 K2* relation misses exactly
    # |C|^2 q^2 + q^2 |D|^2 and the bottom must be masked like the top
    p = example_params_a()
    rep = build_rep_A(p)
    system = quantum_group_system("A")
    point = NumericPoint(p.q, p.q**2)
    lhs = rep.matrices["K2"] @ rep.matrices["K2*"]
    rhs = np.zeros_like(lhs)
    for w, c in system.rules[("K2", "K2*")].terms.items():
        rhs += float(c.eval(point)) * rep.word_matrix(w)
    leak = np.abs(lhs - rhs)[:, 0].max()
    predicted = p.q**2 * (abs(p.C) ** 2 + abs(p.D) ** 2)
    assert leak > 1e-3
    assert abs(leak - predicted) <= 1e-10


def test_family_b_residuals():
    assert verify_rep(build_rep_B(example_params_b())).max_residual <= 1e-10
    small_q = RepParamsB(q=0.8, Q1=0.6, A=2.0, B=1.0, dim=24)
    assert verify_rep(build_rep_B(small_q)).max_residual <= 1e-10
    big = RepParamsB(q=1.1, Q1=1.2, A=0.5, B=0.5j, dim=32)
    assert verify_rep(build_rep_B(big)).max_residual <= 1e-10


def test_family_b_report_covers_all_relations():
    report = verify_rep(build_rep_B(example_params_b()))
    assert len(report.rows) == 10
    names = {row["relation"] for row in report.rows}
    assert "K2 K2*" in names and "K1 L2" in names


def test_family_b_lowest_weight_column_is_exact():
    # no bottom mask: interior starts at column 0 and still passes
    report = verify_rep(build_rep_B(example_params_b()))
    assert report.interior[0] == 0
    assert report.max_residual <= 1e-10


def test_family_b_at_the_closed_form_pole():
    p = RepParamsB(q=1.2, Q1=1.2**2, A=1.0, B=0.5, dim=20)
    assert verify_rep(build_rep_B(p)).max_residual <= 1e-10
    with pytest.raises(ValueError):
        k2_closed_squared(5, 1.2, 1.2**2, 1.0, 0.5)


def test_family_b_inadmissible_raises():
    with pytest.raises(InadmissibleParams):
        build_rep_B(RepParamsB(q=1.2, Q1=1.4, A=1.0, B=1.3, dim=12))


def test_family_b_zero_b_closed_form():
    p = RepParamsB(q=1.2, Q1=1.5, A=1.0, B=0.0, dim=16)
    rep = build_rep_B(p)
    got = np.array([abs(rep.matrices["K2"][n - 1, n]) ** 2 for n in range(1, 16)])
    ns = np.arange(1, 16)
    want = (p.Q1**ns - p.q ** (2 * ns)) / (p.Q1 - p.q**2)
    assert np.abs(got - want).max() <= 1e-10 * max(1.0, want.max())


def test_two_sided_window():
    p = RepParamsB(q=1.2, Q1=1.0, A=1.0, B=1.0, dim=16)
    rep = build_rep_B(p, two_sided=True)
    assert rep.offset == -8
    assert rep.mask == (2, 2)
    assert list(rep.ladder_indices()) == list(range(-8, 8))
    assert verify_rep(rep).max_residual <= 1e-10
    # away from |B| = A the negative side of the ladder goes negative
    with pytest.raises(InadmissibleParams):
        build_rep_B(RepParamsB(q=1.2, Q1=1.0, A=1.0, B=0.3, dim=16),
                    two_sided=True)


def test_corrupted_amplitude_is_detected_and_localized():
    rep = build_rep_B(example_params_b())
    rep.matrices["K2"][4, 5] *= 1.01
    rep.matrices["K2*"][5, 4] = rep.matrices["K2"][4, 5].conjugate()
    report = verify_rep(rep)
    assert report.max_residual > 1e-3
    hot = [row for row in report.rows if row["residual"] > 1e-3]
    assert hot and all(r["relation"].startswith("K2") for r in hot)
    for row in hot:
        i, j = row["location"]
        assert 4 <= i <= 6 and 4 <= j <= 6


def test_non_hermitian_window_is_rejected():
    rep = build_rep_B(example_params_b())
    rep.matrices["K2"][4, 5] *= 1.01  # partner left stale
    with pytest.raises(ValueError):
        verify_rep(rep)


def test_report_json_round_trip():
    report = verify_rep(build_rep_B(example_params_b()))
    data = json.loads(report.to_json())
    assert data["subgroup"] == "B"
    assert data["max_residual"] == report.max_residual
    assert len(data["rows"]) == 10


# ---------------------------------------------------------------------------
# ladder amplitude formulas
# ---------------------------------------------------------------------------

def test_closed_form_matches_recursion_at_random_admissible_points():
    rng = np.random.default_rng(20260816)
    for _ in range(100):
        q = rng.uniform(0.5, 2.0)
        Q1 = rng.uniform(0.3, 0.95) * q * q
        A = rng.uniform(0.5, 2.0)
        B = A * rng.uniform(0.0, 1.0)
        n = int(rng.integers(0, 31))
        closed = float(k2_closed_squared(n, q, Q1, A, B))
        recursed = float(k2_ladder_squared([n], q, Q1, A, B)[0])
        assert abs(closed - recursed) <= 1e-10 * max(1.0, abs(closed))


def test_recursion_step_identity():
    q, Q1, A, B = 1.3, 1.1, 1.2, 0.8
    vals = k2_ladder_squared(range(0, 12), q, Q1, A, B)
    for n in range(11):
        step = Q1 * vals[n] + A**2 * q ** (2 * n) - abs(B) ** 2 * (Q1 / q) ** (2 * n)
        assert abs(vals[n + 1] - step) <= 1e-12 * max(1.0, abs(step))


def test_scaling_homogeneity_of_raw_residuals():
    # relation sides are quadratic in the constants, so a common real
    # rescaling scales raw residuals by its square; visible on a window
    # with a deliberately corrupted amplitude
    def raw(lam):
        p = RepParamsB(q=1.2, Q1=1.5, A=1.3 * lam, B=0.7 * lam, dim=20)
        rep = build_rep_B(p)
        rep.matrices["K2"][4, 5] *= 1.01
        rep.matrices["K2*"][5, 4] = rep.matrices["K2"][4, 5].conjugate()
        return verify_rep(rep).max_raw_residual

    base = raw(1.0)
    for lam in (0.5, 2.0, 3.0):
        assert abs(raw(lam) - lam**2 * base) <= 1e-9 * lam**2 * base


@given(st.lists(st.floats(min_value=-math.pi, max_value=math.pi),
                min_size=16, max_size=16))
@settings(max_examples=20, deadline=None)
def test_rephasing_invariance(angles):
    p = RepParamsB(q=1.2, Q1=1.5, A=1.3, B=0.7, dim=16)
    plain = verify_rep(build_rep_B(p))
    phased = verify_rep(build_rep_B(p, phase_angles=angles))
    for a, b in zip(plain.rows, phased.rows):
        assert a["relation"] == b["relation"]
        assert abs(a["residual"] - b["residual"]) <= 1e-12


# ---------------------------------------------------------------------------
# parameter files
# ---------------------------------------------------------------------------

def test_params_json_round_trip(tmp_path):
    pa = RepParamsA(q=1.2, A=1.0, B=constrained_b_modulus(1.0, 1.2, 0.5) * 1j,
                    C=0.7 - 0.1j, D=0.5, dim=20)
    pb = example_params_b()
    for p in (pa, pb):
        path = tmp_path / "params.json"
        save_params(p, path)
        loaded = load_params(path)
        assert type(loaded) is type(p)
        assert params_to_dict(loaded) == params_to_dict(p)


def test_params_dict_validation():
    with pytest.raises(InvalidParams):
        params_from_dict({"subgroup": "C", "q": 1.2, "A": 1, "B": 1, "dim": 8})
    with pytest.raises(InvalidParams):
        params_from_dict({"subgroup": "B", "q": 1.2, "A": 1, "B": 1, "dim": 8})
    with pytest.raises(InvalidParams):
        params_from_dict({"subgroup": "A", "q": 1.2, "Q1": 2.0, "A": 1.0,
                          "B": constrained_b_modulus(1.0, 1.2, 0.0),
                          "C": 0.0, "D": 0.0, "dim": 8})
    with pytest.raises(InvalidParams):
        RepParamsB(q=1.2, Q1=1.5, A=1.0, B=0.5, dim=2)
    with pytest.raises(InvalidParams):
        RepParamsA(q=-1.0, A=1.0, B=1.0, C=0.0, D=0.0, dim=8)


# ---------------------------------------------------------------------------
# the quadratic element at Q1 = 1
# ---------------------------------------------------------------------------

def test_casimir_scalar_on_the_slice():
    p = RepParamsB(q=1.2, Q1=1.0, A=1.1, B=0.6, dim=24)
    report = casimir_check(build_rep_B(p))
    assert report.diagonal_deviation <= 1e-10
    assert report.scalar_deviation <= 1e-10
    assert report.commutant_deviation <= 1e-10
    assert report.measured_matches_ladder
    assert not report.measured_matches_published
    assert not report.formulas_agree
    assert abs(report.value_ladder - (0.36 + 1.21 / 1.44)) <= 1e-12
    assert abs(report.value_published - (1.21 + 0.36 / 1.44)) <= 1e-12


def test_casimir_formulas_coincide_at_equal_moduli():
    p = RepParamsB(q=1.3, Q1=1.0, A=0.9, B=0.9, dim=20)
    report = casimir_check(build_rep_B(p))
    assert report.measured_matches_ladder
    assert report.measured_matches_published
    assert report.formulas_agree


def test_casimir_breaks_off_the_slice():
    p = RepParamsB(q=1.2, Q1=1.5, A=1.1, B=0.6, dim=20)
    report = casimir_check(build_rep_B(p))
    assert report.commutant_deviation > 1e-6
    assert any("Q1 = 1.5" in note for note in report.notes)


def test_casimir_centrality_symbolic():
    conditions = casimir_centrality()
    assert not conditions["generic"]["central"]
    assert set(conditions["generic"]["noncommuting"]) == {"K2", "K2*"}
    assert conditions["Q1=1"]["central"]
    assert conditions["Q1=1"]["noncommuting"] == []


def test_casimir_poly_shape():
    cas = casimir_poly()
    assert set(cas.terms) == {("K1*", "K1"), ("K2*", "K2"), ("L2", "L2")}
    assert cas.terms[("K2*", "K2")] == parse_field("(1 - q^2)/q^2")


def test_casimir_requires_family_b():
    with pytest.raises(ValueError):
        casimir_check(build_rep_A(example_params_a()))


# ---------------------------------------------------------------------------
# the q-deformed su(2) identification
# ---------------------------------------------------------------------------

def test_uqsu2_system_reduces_weights_and_commutator():
    uq = uqsu2_system()
    assert not uq.check_confluence()
    assert uq.normal_form(NCPoly.word(("qH", "qmH"))) == NCPoly.one()
    c = parse_field("q/(q^2 - 1)")
    got = uq.normal_form(NCPoly.word(("X-", "X+")))
    want = NCPoly({("X+", "X-"): parse_field("1"), ("qH", "qH"): c,
                   ("qmH", "qmH"): -c})
    assert (got - want).is_zero


def test_uqsu2_check_passes():
    report = uqsu2_check()
    assert report.ok, report.failed()
    for name in ("subalgebra_relations_hold", "coproduct_homomorphism",
                 "counit_homomorphism", "antipode_antihomomorphism",
                 "antipode_axiom_left", "antipode_axiom_right",
                 "star_closed", "star_antipode_involutive"):
        assert report.checks[name]


def test_uqsu2_commutator_sign_is_flagged():
    report = uqsu2_check()
    assert report.findings["sign_flipped_commutator_holds"]
    assert not report.findings["published_commutator_holds"]
    assert report.details["sign_flipped_commutator_reduction"] == "0"
    assert "qH qH" in report.details["published_commutator_reduction"]


def test_uqsu2_report_json():
    data = json.loads(uqsu2_check().to_json())
    assert data["ok"] is True
    assert data["findings"]["published_commutator_holds"] is False

"""Exchange-matrix checks: QYBE, covector consistency, braiding solver."""

import json

import numpy as np
import pytest

from oscbraid.field import FE_ONE, FE_ZERO, NumericPoint, QVAR, fe, parse_field
from oscbraid.rmatrix import (
    BASIS2,
    BASIS2_REVERSED,
    BRAIDING_SLOTS,
    COMPONENTS,
    CoeffPoly,
    NotInvertible,
    R_ANSATZ_ONES,
    R_ANSATZ_SLOTS,
    braiding_ansatz,
    braiding_constraints,
    braiding_matrix_from_vector,
    covector_constraints,
    identity_matrix,
    known_braiding_solutions,
    leg12,
    leg13,
    leg23,
    mat_is_zero,
    mat_mul,
    mat_sub,
    matches_r_ansatz_pattern,
    matrix_from_json,
    matrix_to_json,
    pair_index,
    paper_R,
    paper_Rprime,
    permutation_matrix,
    proportionality_check,
    qybe_check,
    rprime_conditions,
    solve_braidings_numeric,
    specialize_matrix,
    triangularity_check,
    verify_candidate,
    zeros_matrix,
)


def test_pair_basis_order():
    assert len(BASIS2) == 9
    for i in range(3):
        for j in range(3):
            p = pair_index(i, j)
            assert BASIS2[p] == (COMPONENTS[i], COMPONENTS[j])
            assert BASIS2_REVERSED[p] == (COMPONENTS[j], COMPONENTS[i])


def test_permutation_is_involution():
    P = permutation_matrix()
    assert mat_is_zero(mat_sub(mat_mul(P, P), identity_matrix(9)))


def test_leg13_via_leg_conjugation():
    # R13 = P12 R23 P12 on the tensor cube
    m = paper_R()
    p12 = leg12(permutation_matrix())
    conj = mat_mul(p12, mat_mul(leg23(m), p12))
    assert mat_is_zero(mat_sub(leg13(m), conj))


def test_coeffpoly_ring():
    c1 = CoeffPoly.unknown(0)
    one = CoeffPoly.const(1)
    prod = (c1 + one) * (c1 - one)
    assert prod == c1 * c1 - one
    assert (c1 - c1).is_zero
    assert (QVAR * c1) * 2 == c1 * (2 * QVAR)
    assert c1.eval_unknowns([fe(3)]) == fe(3)
    assert prod.eval_unknowns([QVAR]) == QVAR**2 - FE_ONE


def test_paper_R_fits_ansatz_pattern():
    R = paper_R()
    assert matches_r_ansatz_pattern(R)
    nonzero = sum(1 for row in R for x in row if not x.is_zero)
    assert nonzero == 14


def test_paper_R_satisfies_qybe():
    assert qybe_check(paper_R())


def test_qybe_negative_control():
    # killing the lower-left hook entry breaks the equation
    R = paper_R()
    R[8][3] = FE_ZERO
    assert not qybe_check(R)


def test_covector_constraints_empty_for_paper_R():
    cs = covector_constraints(paper_R())
    assert cs.is_empty
    assert ("covector:ideal_matches_oscillator", True) in cs.boolean_items


def test_covector_ideal_check_fails_for_identity():
    # the identity matrix makes every exchange relation trivial: no ideal match
    cs = covector_constraints(identity_matrix(9))
    assert not cs.is_empty


@pytest.mark.parametrize("slot", sorted(R_ANSATZ_SLOTS))
def test_covector_mutation_breaks_consistency(slot):
    R = paper_R()
    r, c = R_ANSATZ_SLOTS[slot]
    R[r][c] = R[r][c] + FE_ONE
    cs = covector_constraints(R)
    assert not cs.is_empty


def test_rprime_is_scalar_multiple():
    ratio = proportionality_check(paper_R(), paper_Rprime())
    assert ratio == parse_field("q^2/Q1")


def test_rprime_condition_report():
    report = rprime_conditions(paper_R(), paper_Rprime())
    assert report == {
        "qybe_rprime": True,
        "mixed_prime_prime_plain": True,
        "mixed_plain_prime_prime": True,
        "spectral": True,
        "fifth_printed": False,
        "fifth_corrected": True,
    }


def test_triangularity_only_at_special_parameter():
    R = paper_R()
    assert not triangularity_check(R)
    assert triangularity_check(specialize_matrix(R, Q1=QVAR**2))
    with pytest.raises(NotInvertible):
        triangularity_check(zeros_matrix(9))


def test_matrix_json_round_trip():
    R = paper_R()
    again = matrix_from_json(matrix_to_json(R))
    assert mat_is_zero(mat_sub(R, again))
    data = json.loads(matrix_to_json(R))
    assert data["basis"][1] == "aa*"


def test_braiding_ansatz_ties():
    m = braiding_ansatz()
    for idx, slots in BRAIDING_SLOTS.items():
        vals = {id(m[r][c]) for (r, c) in slots}
        assert len(vals) == 1 or all(m[r][c] == m[slots[0][0]][slots[0][1]]
                                     for (r, c) in slots)


def test_known_solutions_satisfy_constraints_exactly():
    # all four published candidates are symbolic zeros of the full system
    cs = braiding_constraints()
    for name, vec in known_braiding_solutions().items():
        for item in cs.items:
            val = item.poly.eval_unknowns(vec)
            assert val.is_zero, (name, item.origin)


def test_constraints_reject_perturbed_candidate():
    cs = braiding_constraints()
    vec = list(known_braiding_solutions()["sol1"])
    vec[1] = vec[1] + FE_ONE
    assert any(not item.poly.eval_unknowns(vec).is_zero for item in cs.items)


def test_fifth_condition_variants():
    # corrected reading admits all four candidates; printed reading pins R'=R
    corrected = braiding_constraints(include_fifth="corrected")
    for name, vec in known_braiding_solutions().items():
        assert all(item.poly.eval_unknowns(vec).is_zero for item in corrected.items), name
    printed = braiding_constraints(include_fifth="printed")
    sol1 = known_braiding_solutions()["sol1"]
    assert any(not item.poly.eval_unknowns(sol1).is_zero for item in printed.items)
    spec = known_braiding_solutions()["rprime_specialized"]
    assert all(item.poly.eval_unknowns(spec).is_zero for item in printed.items)
    with pytest.raises(ValueError):
        braiding_constraints(include_fifth="bogus")


def test_specialized_covector_consistency():
    # reduction must run against the correspondingly specialized oscillator
    from oscbraid.ncalg import oscillator_system
    sysq2 = oscillator_system(Q1=QVAR**2)
    R2 = specialize_matrix(paper_R(), Q1=QVAR**2)
    assert covector_constraints(R2, system=sysq2).is_empty
    sols = known_braiding_solutions()
    # the proportional candidate coincides with R at the special parameter,
    # hence is exchange-consistent; the extra candidates are braidings only
    m0 = braiding_matrix_from_vector(sols["rprime_specialized"])
    assert covector_constraints(m0, system=sysq2).is_empty
    for name in ("sol1", "sol2", "sol3"):
        m = braiding_matrix_from_vector(sols[name])
        assert not covector_constraints(m, system=sysq2).is_empty


def test_verify_candidate_numeric():
    cs = braiding_constraints()
    ok, resid = verify_candidate(known_braiding_solutions()["sol2"], cs, 1.7)
    assert ok and resid <= 1e-10
    bad = list(range(14))
    ok2, resid2 = verify_candidate(bad, cs, 1.7)
    assert not ok2 and resid2 > 1e-3


def test_solver_finds_verified_solutions():
    cs = braiding_constraints()
    res = solve_braidings_numeric(1.3, cs, n_starts=30, seed=7)
    assert len(res) >= 2
    assert all(r <= 1e-10 for r in res.residuals)
    # deduplication: pairwise distinct beyond the tolerance
    for i in range(len(res)):
        for j in range(i + 1, len(res)):
            assert np.linalg.norm(res[i] - res[j]) >= 1e-6
    # the constraint variety contains a continuous family; the solver says so
    assert any(d > 0 for d in res.family_dims)
    assert any("family" in n for n in res.notes)
    payload = json.loads(res.to_json())
    assert payload["n_starts"] == 30 and len(payload["solutions"]) == len(res)


def test_solver_line_identity():
    # scattered solutions with C14 = 1 obey C4 = 2 + q^2 C9
    cs = braiding_constraints()
    res = solve_braidings_numeric(1.3, cs, n_starts=30, seed=7)
    q2 = 1.3 * 1.3
    for sol in res:
        if abs(sol[13] - 1.0) < 1e-8:
            assert abs(sol[3] - (2.0 + q2 * sol[8])) < 1e-7


def test_solver_empty_result():
    from oscbraid.rmatrix import ConstraintSet
    c1 = CoeffPoly.unknown(0)
    unsat = ConstraintSet(unknowns=("C1",))
    unsat.add("never:zero", c1 * c1 + CoeffPoly.const(1))
    res = solve_braidings_numeric(1.3, unsat, n_starts=10, seed=0)
    assert len(res) == 0
    assert any("EmptyResult" in n for n in res.notes)


def test_solver_rejects_bad_q0():
    cs = braiding_constraints()
    with pytest.raises(ValueError):
        solve_braidings_numeric(1.0, cs, n_starts=1)

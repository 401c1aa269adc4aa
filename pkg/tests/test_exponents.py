from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import analyzed
from realsph import linalg as la
from realsph.errors import DimensionMismatch, EdgeMismatch, NotTempered, NotWavefront
from realsph.exponents import (ComplexFunctional, ExponentData, I_eta_lambda, embedding_pipeline, in_Xi_I,
                               is_tempered, lambda_V_eta, lead_I, omega_I, optimal_pairs, rho_Q, rho_values,
                               strong_inequality, tempered_report)
from realsph.spherical import subsets
from strategies import exponent_instances, lead_I_oracle

CF = ComplexFunctional.of


def data(values, chi=(), im=None):
    return ExponentData(CF(chi), tuple(CF(v, im) for v in values))


def test_rho_examples():
    sp, srd = analyzed("nbar-sl2")
    assert rho_Q(sp).coefficients == (1,)  # half of alpha = 2 on H
    sp, srd = analyzed("parabolic-sl3")
    # F_Q = {a1}: u carries the two roots outside <a1>
    assert rho_values(sp, srd) == (3,)
    sp, srd = analyzed("triple-so12")
    assert rho_values(sp, srd) == (Fraction(1, 2),) * 3


def test_edge_mismatch_and_dimensions():
    with pytest.raises(EdgeMismatch):
        ExponentData(CF([1]), (CF([0, 2]),))
    with pytest.raises(ValueError):
        ExponentData(CF([]), ())
    sp, srd = analyzed("triple-so12")
    with pytest.raises(DimensionMismatch):
        lambda_V_eta(sp, srd, data([[1, 1]]))


def test_lambda_is_coordinatewise_minimum():
    sp, srd = analyzed("group-sl3")
    ed = data([[1, 3], [2, 1]])
    assert lambda_V_eta(sp, srd, ed).coefficients == (1, 1)


def test_temperedness_boundary_cases():
    sp, srd = analyzed("triple-so12")
    rho = list(rho_values(sp, srd))
    at_rho = data([rho])
    assert is_tempered(sp, srd, at_rho) and not strong_inequality(sp, srd, at_rho)
    above = data([[x + 1 for x in rho]])
    assert is_tempered(sp, srd, above) and strong_inequality(sp, srd, above)
    below = data([[rho[0] - 1] + rho[1:]])
    assert not is_tempered(sp, srd, below)
    with pytest.raises(NotTempered):
        I_eta_lambda(sp, srd, below, below.e_lead[0])
    with pytest.raises(NotTempered):
        optimal_pairs(sp, srd, below)
    assert not tempered_report(sp, srd, below).is_tempered


def test_edge_condition_enters_temperedness():
    sp, srd = analyzed("nonwf-sl3-sp1")
    rho = rho_values(sp, srd)
    good = data([[rho[0], rho[1]]], chi=[-rho[1]])
    bad = data([[rho[0] + 1, rho[1] + 1]], chi=[-rho[1] - 1])
    assert is_tempered(sp, srd, good)
    assert not is_tempered(sp, srd, bad) and not strong_inequality(sp, srd, bad)


def test_I_eta_lambda_mixed():
    sp, srd = analyzed("triple-so12")
    h = Fraction(1, 2)
    ed = data([[h, h + 1, h]])
    assert I_eta_lambda(sp, srd, ed, ed.e_lead[0]) == frozenset({1})


def test_lead_I_examples():
    sp, srd = analyzed("triple-so12")
    h = Fraction(1, 2)
    lam = [h, h + Fraction(1, 3), h]
    ed = data([lam, [lam[0] + 1, lam[1], lam[2]]])
    # on a_I with I = {s2} the translate by sigma_1 is not minimal
    assert lead_I(srd, ed, [1]) == [CF([h, h])]
    assert lead_I(srd, ed, [0, 1, 2]) == [CF([])]
    assert in_Xi_I(srd, ed, [1], CF([h + 2, h]))
    assert not in_Xi_I(srd, ed, [1], CF([h - 1, h]))


def test_omega_I_is_dual_and_orthogonal():
    sp, srd = analyzed("group-sl3")
    om = omega_I(sp, srd, [0])
    assert om[0][0] == 1
    # orthogonal to omega_2, which spans a_I
    ip = sp.g.rootsys.inner_product
    B = [la.vec(w) for w in srd.omegas]
    v = la.lincomb(om[0], B, sp.g.a_dim)
    assert la.dot(la.matvec(ip, v), B[1]) == 0


def test_optimal_pairs_two_exponents():
    sp, srd = analyzed("group-sl3")
    rho = rho_values(sp, srd)
    ed = data([[rho[0] + 1, rho[1]], [rho[0] + 1, rho[1] + 1]])
    rep = optimal_pairs(sp, srd, ed)
    assert rep.min_eta == 1
    assert [sorted(I) for _, I in rep.optimal] == [[0]]
    assert rep.per_optimal[0].status == "candidate"


def test_pipeline_boundary_cases():
    sp, srd = analyzed("triple-so12")
    rho = rho_values(sp, srd)
    strong = data([[x + 1 for x in rho]])
    (entry,) = embedding_pipeline(sp, srd, strong)
    assert entry.F_I == frozenset(sp.g.rootsys.simple)
    assert entry.parabolic.dim == sp.g.dim and entry.h_prime == sp.h
    (entry,) = embedding_pipeline(sp, srd, data([list(rho)]))
    assert entry.I == frozenset() and sp.l_cap_h <= entry.h_prime
    sp2, srd2 = analyzed("nonwf-sl3-sp1")
    with pytest.raises(NotWavefront):
        embedding_pipeline(sp2, srd2, data([list(rho_values(sp2, srd2))], chi=[-rho_values(sp2, srd2)[1]]))


@settings(max_examples=150)
@given(exponent_instances())
def test_lead_I_matches_brute_force(inst):
    name, sp, srd, ed = inst
    for I in subsets(range(len(srd.S))):
        got = sorted((mu.re, mu.im) for mu in lead_I(srd, ed, I))
        assert got == lead_I_oracle(srd, ed, I)


@settings(max_examples=150)
@given(exponent_instances())
def test_exponent_layer_properties(inst):
    name, sp, srd, ed = inst
    strong = strong_inequality(sp, srd, ed)
    temp = is_tempered(sp, srd, ed)
    assert not strong or temp
    if not temp:
        with pytest.raises(NotTempered):
            optimal_pairs(sp, srd, ed)
        return
    rep = optimal_pairs(sp, srd, ed)
    assert all(len(I) == rep.min_eta for _, I in rep.optimal)
    assert rep.strong_inequality == strong
    if strong:
        assert rep.min_eta == len(srd.S)

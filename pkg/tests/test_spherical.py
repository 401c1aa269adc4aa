import pytest
from hypothesis import given, settings, strategies as st

from conftest import NAMES, analyzed
from realsph import linalg as la
from realsph.catalog import algebra, build
from realsph.errors import (InconsistentSign, InvalidSubset, NotSpherical, NotSubalgebra)
from realsph.liealg import Subspace, intersect, is_subalgebra, subspace_sum
from realsph.spherical import (X_I_element, a_I_space, character_from_values, degenerate, frame_witness,
                               generator_lattice, grassmannian_limit, in_span_N0, irreducibles, sign_twists, spherical_roots,
                               standardize, subsets, twist)

# Values frozen from one run of the implementation, checked against independent
# facts where they exist (rank-one symmetric spaces have S = {2 alpha}, group
# cases have S = {alpha + alpha'}, the triple space has S equal to the simple roots).
# name: (F_Q size, rank, S in simple-root coordinates, edge dimension)
FROZEN = {
    "nbar-sl2": (0, 1, [], 1),
    "nbar-sl3": (0, 2, [], 2),
    "nbar-so13": (0, 1, [], 1),
    "group-sl2": (0, 1, [(1, 1)], 0),
    "group-sl3": (0, 2, [(1, 0, 0, 1), (0, 1, 1, 0)], 0),
    "triple-so12": (0, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], 0),
    "triple-so13": (0, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], 0),
    "sym-sl2-so11": (0, 1, [(2,)], 0),
    "sym-sl2-so2": (0, 1, [(2,)], 0),
    "sym-sl3-so3": (0, 2, [(2, 0), (0, 2)], 0),
    "sym-sl3-so21": (0, 2, [(2, 0), (0, 2)], 0),
    "sym-so13-so3": (0, 1, [(2,)], 0),
    "sym-so13-so12": (0, 1, [(2,)], 0),
    "nonwf-sl3-sp1": (0, 2, [(1, 1)], 1),
    "parabolic-sl3": (1, 1, [], 1),
}


@pytest.mark.parametrize("name", NAMES)
def test_frozen_structure(name):
    sp, srd = analyzed(name)
    fq, rank, S, e = FROZEN[name]
    assert len(sp.F_Q) == fq
    assert srd.rank == rank
    assert sorted(srd.S_coords) == sorted(S)
    assert len(srd.edge_basis) == e
    assert len(srd.S) == srd.rank - len(srd.edge_basis)


@pytest.mark.parametrize("name", NAMES)
def test_local_structure_recovers_h(name):
    sp, srd = analyzed(name)
    assert sp.graph() == sp.h
    assert frame_witness(sp) is not None
    # omegas are dual to S and orthogonal to the edge
    ip = sp.g.rootsys.inner_product
    for j, w in enumerate(srd.omegas):
        for k, s in enumerate(srd.S):
            assert la.dot(s, w) == int(j == k)
        for e in srd.edge_basis:
            assert la.dot(la.matvec(ip, e), w) == 0


@pytest.mark.parametrize("name", NAMES)
def test_degenerations_match_grassmannian_limit(name):
    sp, srd = analyzed(name)
    for I in subsets(range(len(srd.S))):
        hI = degenerate(sp, srd, I)
        X = sp.g.a_element(X_I_element(srd, I, sp.g.a_dim))
        assert hI == grassmannian_limit(sp.g, sp.h, sp.g.a_coords(X))


def test_nbar_example():
    sp, srd = analyzed("nbar-sl2")
    assert srd.m_generators == () and srd.S == ()
    assert srd.cone.dimension() == 1 and not srd.cone.facets
    assert degenerate(sp, srd, []) == sp.h


def test_standardize_errors():
    g = algebra("sl2")
    with pytest.raises(NotSpherical):
        standardize(g, g.zero())
    E, F = g.root_space((2,))[0], g.root_space((-2,))[0]
    with pytest.raises(NotSubalgebra):
        standardize(g, Subspace(g, [la.unit(3, E), la.unit(3, F)]))


def test_subset_errors():
    sp, srd = analyzed("group-sl2")
    with pytest.raises(InvalidSubset):
        degenerate(sp, srd, [5])


def test_irreducibles_small_monoid():
    assert irreducibles([(1, 0), (0, 1), (1, 1), (2, 1)]) == [(0, 1), (1, 0)]
    assert irreducibles([(2,), (3,), (4,), (5,)]) == [(2,), (3,)]


def test_a_I_spaces():
    sp, srd = analyzed("triple-so12")
    assert len(a_I_space(srd, [])) == 3
    assert a_I_space(srd, [0, 1, 2]) == []
    assert in_span_N0(srd, srd.S[0], [0]) and not in_span_N0(srd, srd.S[0], [1])


@pytest.mark.parametrize("name", ["group-sl2", "sym-sl2-so11", "nonwf-sl3-sp1", "triple-so12"])
def test_sign_twists(name):
    sp, srd = analyzed(name)
    chars = sign_twists(sp, srd)
    assert len(chars) == 2 ** len(generator_lattice(srd))
    for eps in chars:
        hw = twist(sp, srd, eps)
        assert (hw == sp.h) == (eps.is_trivial() or all(eps(c) == 1 for c in srd.gen_coords))


def test_character_from_values():
    sp, srd = analyzed("group-sl2")
    eps = character_from_values(srd, {srd.gen_coords[0]: -1})
    assert eps(srd.gen_coords[0]) == -1
    with pytest.raises(InconsistentSign):
        character_from_values(srd, {srd.gen_coords[0]: -1, tuple(2 * x for x in srd.gen_coords[0]): -1})


@settings(max_examples=25)
@given(st.sampled_from(["group-sl2", "sym-sl3-so3", "triple-so12", "nonwf-sl3-sp1"]), st.data())
def test_degeneration_properties(name, data):
    sp, srd = analyzed(name)
    I = data.draw(st.sampled_from(subsets(range(len(srd.S)))))
    hI = degenerate(sp, srd, I, check=False)
    assert is_subalgebra(hI)
    assert hI.dim == sp.h.dim
    assert subspace_sum(hI, sp.p_min).dim == sp.g.dim
    assert intersect(hI, sp.g.a_space()) == intersect(sp.h, sp.g.a_space())
    # degenerating twice lands on the smaller set
    J = data.draw(st.sampled_from(subsets(I)))
    spI = standardize(sp.g, hI, sp.p_min)
    srdI = spherical_roots(spI)
    pos = [srdI.S.index(srd.S[j]) for j in sorted(J)]
    assert degenerate(spI, srdI, pos) == degenerate(sp, srd, J)


def test_catalog_build_returns_fresh_triples():
    g, h, p = build("sym-sl2-so2")
    assert h.dim == 1 and p.dim == 2

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from realsph import linalg as la
from realsph.catalog import algebra
from realsph.errors import InvalidAlgebra, NotNormalizing, NotSubalgebra, ParentMismatch
from realsph.liealg import (GradedLieAlgebra, Subspace, bracket_space, intersect, is_subalgebra, normalizes,
                            orthogonal_in, trace_ad_on_quotient, unimodularity_functional)
from realsph.matrices import DirectSum, MatrixLieAlgebra, sl


@pytest.fixture(scope="module")
def sl2():
    return algebra("sl2")


@pytest.fixture(scope="module")
def sl3():
    return algebra("sl3")


def test_sl2_killing_form(sl2):
    H = sl2.a_element((1,))
    # B(H, H) = tr(ad H)^2 = 4 + 4 = 8
    assert sl2.B(H, H) == 8
    E, F = sl2.root_space((2,))[0], sl2.root_space((-2,))[0]
    assert sl2.B(la.unit(3, E), la.unit(3, F)) == 4


@pytest.mark.parametrize("name", ["sl2", "sl3", "sl4", "so1_2", "so1_3", "so1_4", "so22"])
def test_jacobi_and_dimensions(name):
    g = algebra(name)
    g.check_jacobi()
    expected = {"sl2": 3, "sl3": 8, "sl4": 15, "so1_2": 3, "so1_3": 6, "so1_4": 10, "so22": 6}
    assert g.dim == expected[name]


def test_theta_is_cartan_involution(sl3):
    th = sl3.theta
    assert th is not None
    assert la.matmul(th, th) == [la.unit(8, i) for i in range(8)]


def test_bracket_respects_grading(sl3):
    for i in range(sl3.dim):
        for j in range(sl3.dim):
            v = sl3.bracket(la.unit(8, i), la.unit(8, j))
            w = la.add(sl3.weight(i), sl3.weight(j))
            for k, x in enumerate(v):
                if x:
                    assert sl3.weight(k) == w


def test_trace_ad_on_borel_quotient(sl2):
    b = sl2.p_min()
    H = sl2.a_element((1,))
    # g / b is the negative root space, where ad H acts by -2
    assert trace_ad_on_quotient(b, H) == -2
    with pytest.raises(NotNormalizing):
        trace_ad_on_quotient(sl2.a_space(), la.unit(3, sl2.root_space((2,))[0]))


def test_unimodularity(sl2):
    assert not unimodularity_functional(sl2.p_min()).is_zero()
    assert unimodularity_functional(sl2.nilradical([])).is_zero()
    bad = Subspace(sl2, [la.unit(3, sl2.root_space((2,))[0]), la.unit(3, sl2.root_space((-2,))[0])])
    with pytest.raises(NotSubalgebra):
        unimodularity_functional(bad)


def test_subspace_algebra(sl3):
    p = sl3.p_min()
    pbar = sl3.parabolic([], opposite=True)
    assert intersect(p, pbar) == sl3.a_space() + sl3.span_grades(lambda g: g == "m")
    assert (p + pbar).dim == 8
    assert sl3.a_space() <= p
    assert is_subalgebra(p) and normalizes(sl3.a_element((1, 0)), p)
    n = sl3.nilradical([])
    assert bracket_space(n, n).dim == 1
    assert orthogonal_in(n, sl3.full()) == p
    with pytest.raises(ParentMismatch):
        p <= algebra("sl2").p_min()


def test_levi_embedding(sl3):
    F = [sl3.rootsys.simple[0]]
    L = sl3.levi(F)
    assert L.dim == 4
    L.check_jacobi()
    s = sl3.p_min()
    r = L.restrict_subspace(s)
    assert L.embed_subspace(r) == intersect(s, sl3.levi_space(F))


def test_invalid_gradings_are_rejected():
    with pytest.raises(InvalidAlgebra):
        # claims E has weight 1 but [H, E] = E/2
        GradedLieAlgebra(["H", "E", "F"], ["a", (1,), (-1,)],
                         {(0, 1): {1: Fraction(1, 2)}, (0, 2): {2: Fraction(-1, 2)}, (1, 2): {0: 1}}, (1,))
    with pytest.raises(InvalidAlgebra):
        MatrixLieAlgebra("bad", [[[0, 1], [0, 0]]], [[[1, 0], [0, 1]], [[1, 0], [0, -1]]], (1, 1))


def test_flip_reverses_positive_system():
    a, b = sl(3), sl(3, flip=True)
    pa = {a.rootsys.roots[i] for i in a.rootsys.positive}
    pb = {b.rootsys.roots[i] for i in b.rootsys.positive}
    assert pa == {la.scale(-1, r) for r in pb}


def test_direct_sum_embedding():
    d = DirectSum([sl(2), sl(2)])
    assert d.a_dim == 2 and len(d.rootsys.roots) == 4
    v = d.embed(1, la.unit(3, 0))
    assert v[3] == 1


@given(st.lists(st.integers(-2, 2), min_size=8, max_size=8), st.lists(st.integers(-2, 2), min_size=8, max_size=8))
def test_killing_form_is_invariant(u, v):
    g = algebra("sl3")
    for k in range(g.dim):
        X = la.unit(8, k)
        lhs = g.B(g.bracket(X, la.vec(u)), la.vec(v))
        rhs = -g.B(la.vec(u), g.bracket(X, la.vec(v)))
        assert lhs == rhs

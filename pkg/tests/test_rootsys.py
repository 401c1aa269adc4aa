from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from realsph import linalg as la
from realsph.catalog import algebra
from realsph.errors import InvalidSubset, NotInPositiveLattice
from realsph.rootsys import RestrictedRootSystem
from realsph.spherical import subsets


@pytest.fixture(scope="module")
def sl4():
    return algebra("sl4").rootsys


def cartan(rs):
    return [[2 * rs.pairing(rs.roots[i], rs.roots[j]) / rs.pairing(rs.roots[j], rs.roots[j])
             for j in rs.simple] for i in rs.simple]


def test_sl4_is_type_A3_in_dynkin_order(sl4):
    assert len(sl4.roots) == 12 and len(sl4.simple) == 3
    assert cartan(sl4) == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]


def test_so1n_rank_one():
    for n in (2, 3, 4):
        g = algebra(f"so1_{n}")
        rs = g.rootsys
        assert len(rs.simple) == 1 and len(rs.roots) == 2
        assert g.multiplicity(rs.roots[rs.simple[0]]) == n - 1


def test_coweights_are_dual(sl4):
    cw = sl4.fundamental_coweights()
    for s in sl4.simple:
        for t in sl4.simple:
            assert la.dot(sl4.roots[t], cw[s]) == int(s == t)


def test_center_of_direct_sum_is_trivial():
    assert algebra("so22").rootsys.center == []


def test_support_and_errors(sl4):
    top = max(sl4.positive, key=lambda i: sum(sl4.simple_coordinates(sl4.roots[i])))
    assert sl4.support(sl4.roots[top]) == frozenset(sl4.simple)
    neg = la.scale(-1, sl4.roots[top])
    with pytest.raises(NotInPositiveLattice):
        sl4.support(neg)
    with pytest.raises(InvalidSubset):
        sl4.generated_subsystem([10 ** 6])


def test_invalid_systems_are_rejected():
    with pytest.raises(ValueError):
        RestrictedRootSystem(1, ((1,),), (0,), (0,), ((1,),))
    with pytest.raises(ValueError):
        RestrictedRootSystem.from_roots([(1,), (-1,)], (0,), [(1,)])


@given(st.data())
def test_parabolic_spaces_dimensions(sl4, data):
    F = data.draw(st.sampled_from(subsets(sl4.simple)))
    aF, aUpper, u, uUpper = sl4.parabolic_spaces(F)
    assert len(aF) == 3 - len(F)
    assert len(aUpper) == 3 - len(F)
    assert len(u) + len(uUpper) == len(sl4.positive)
    sub = sl4.generated_subsystem(F)
    assert len(sub) == 2 * len(uUpper)
    # a_F is killed by F and u-roots are positive outside <F>
    for v in aF:
        for s in F:
            assert la.dot(sl4.roots[s], v) == 0
    assert u.isdisjoint(sub)


def test_restrict_gives_levi_system(sl4):
    F = [sl4.simple[0], sl4.simple[1]]
    r = sl4.restrict(F)
    assert len(r.roots) == 6 and len(r.simple) == 2
    assert r.pairing(r.roots[r.simple[0]], r.roots[r.simple[0]]) == sl4.pairing(
        sl4.roots[F[0]], sl4.roots[F[0]])


def test_nonneg_combinations_bound(sl4):
    a1, a2, _ = sl4.simple
    target = la.add(sl4.roots[a1], sl4.roots[a2])
    below = sl4.nonneg_combinations_bound(target, [sl4.roots[a1], sl4.roots[sl4.simple[2]]])
    assert below == [sl4.roots[a1]]
    assert sl4.pairing(sl4.roots[a1], sl4.roots[a1]) > Fraction(0)

"""Wave-front test, the sets ``Pi_sigma``, interlacing parabolics ``F_I`` and ``Y_I``."""

import weakref
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Tuple

from . import linalg as la
from .cones import Cone, cone_contains, positive_solution, project_cone
from .errors import AssertionFailure, ConsistencyFailure, NoPositiveSolution, NotWavefront
from .liealg import Subspace, intersect, subspace_sum
from .spherical import (SphericalPair, SphericalRootDatum, X_I_element, a_I_space, degenerate, in_span_N0,
                        spherical_roots, standardize, subsets)


def negative_chamber(sp: SphericalPair) -> Cone:
    """``a^- = {alpha <= 0 for alpha in Pi}`` in ``a``-coordinates."""
    rs = sp.g.rootsys
    return Cone(sp.g.a_dim, tuple(rs.roots[s] for s in rs.simple))


def project_to_aZ(sp: SphericalPair, v) -> tuple:
    """Orthogonal projection of a vector of ``a`` to ``a_Z``, in ``a``-coordinates."""
    ip = sp.g.rootsys.inner_product
    aH = [la.vec(x) for x in sp.a_H]
    v = la.vec(v)
    if not aH:
        return v
    G = la.gram(aH, ip)
    rhs = [la.dot(la.matvec(ip, h), v) for h in aH]
    c = la.solve(G, rhs, len(aH))
    return la.sub(v, la.lincomb(c, aH, len(v)))


def _aZ_coords(srd: SphericalRootDatum, v) -> tuple:
    return la.express([la.vec(b) for b in srd.a_Z_basis], la.vec(v))


def method_a(sp: SphericalPair, srd: SphericalRootDatum) -> bool:
    """Projection of ``a^-`` along ``a_H`` equals the compression cone."""
    img = project_cone(negative_chamber(sp), sp.a_H, srd.a_Z_basis)
    if not cone_contains(srd.cone, img):
        raise AssertionFailure("projection of a^- is not contained in the compression cone")
    return cone_contains(img, srd.cone)


def pi_sigma(sp: SphericalPair, srd: SphericalRootDatum) -> Tuple[FrozenSet[int], ...]:
    """For each spherical root, the simple roots whose coweight projects onto its ray."""
    rs = sp.g.rootsys
    cw = rs.fundamental_coweights()
    out = []
    for j in range(len(srd.S)):
        om = srd.omegas[j]
        sel = set()
        for s in rs.simple:
            p = project_to_aZ(sp, cw[s])
            c = la.express([om], p)
            if c is not None and c[0] > 0:
                sel.add(s)
        out.append(frozenset(sel))
    return tuple(out)


def edge_covered(sp: SphericalPair, srd: SphericalRootDatum) -> bool:
    """Whether the image of ``a^-`` contains the edge of the compression cone.

    The image is generated by the projected negative coweights and the
    projected center; the edge is a face, so only generators inside it matter.
    """
    if not srd.edge_basis:
        return True
    rs = sp.g.rootsys
    edge = [la.vec(e) for e in srd.edge_basis]
    n = len(srd.a_Z_basis)
    rays, lin = [], []
    for s in rs.simple:
        p = la.scale(-1, project_to_aZ(sp, rs.fundamental_coweights()[s]))
        if la.in_span(edge, p):
            rays.append(_aZ_coords(srd, p))
    for z in rs.center:
        p = project_to_aZ(sp, z)
        if not la.is_zero(p):
            lin.append(_aZ_coords(srd, p))
    if not rays and not lin:
        return False
    c = Cone.from_generators(n, rays, lin)
    return la.rank(list(c.lineality), n) == len(edge)


def method_b(sp: SphericalPair, srd: SphericalRootDatum) -> bool:
    return all(pi_sigma(sp, srd)) and edge_covered(sp, srd)


_WAVEFRONT: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def is_wavefront(sp: SphericalPair, srd: SphericalRootDatum) -> bool:
    """Both methods, cached per pair; raises ConsistencyFailure if they disagree."""
    key = id(srd)
    cached = _WAVEFRONT.get(sp)
    if cached is not None and cached[0] == key:
        return cached[1]
    a, b = method_a(sp, srd), method_b(sp, srd)
    if a != b:
        raise ConsistencyFailure(f"wave-front by cone projection is {a}, by Pi_sigma is {b}")
    _WAVEFRONT[sp] = (key, a)
    return a


def pi_sigma_formula_check(sp: SphericalPair, srd: SphericalRootDatum) -> bool:
    """``Pi_sigma = supp(sigma)`` minus the supports of the other spherical roots."""
    rs = sp.g.rootsys
    supp = [rs.support(s) for s in srd.S]
    direct = pi_sigma(sp, srd)
    for j in range(len(srd.S)):
        others = set()
        for k in range(len(srd.S)):
            if k != j:
                others |= supp[k]
        if direct[j] != supp[j] - others:
            return False
    return True


@dataclass(frozen=True)
class Interlacing:
    J: FrozenSet[int]
    F: FrozenSet[int]
    Y: tuple  # vector of a
    coefficients: Dict = field(default_factory=dict)


def _require_wavefront(sp, srd):
    if not is_wavefront(sp, srd):
        raise NotWavefront("the pair is not wave-front")


def interlacing_data(sp: SphericalPair, srd: SphericalRootDatum, I, _checked: bool = False) -> Interlacing:
    I = srd.check_subset(I)
    if not _checked:
        _require_wavefront(sp, srd)
    g = sp.g
    rs = g.rootsys
    ps = pi_sigma(sp, srd)
    for j in range(len(srd.S)):
        if ps[j] <= sp.F_Q:
            raise AssertionFailure(f"Pi_sigma for spherical root {j} lies in F_Q")
    J = set()
    for j in range(len(srd.S)):
        if j not in I:
            J |= ps[j] - sp.F_Q
    J = frozenset(J)
    F = frozenset(rs.simple) - J
    X = X_I_element(srd, I, g.a_dim)
    cw = rs.fundamental_coweights()
    order = sorted(J)
    proj = {a: project_to_aZ(sp, cw[a]) for a in order}
    # equal coefficients along each ray first
    coeff = {}
    for j in range(len(srd.S)):
        if j in I:
            continue
        alphas = [a for a in order if a in ps[j]]
        lam = sum(la.express([srd.omegas[j]], proj[a])[0] for a in alphas)
        for a in alphas:
            coeff[a] = 1 / lam
    Y = la.zeros(g.a_dim)
    for a in order:
        Y = la.sub(Y, la.scale(coeff[a], cw[a]))
    if project_to_aZ(sp, Y) != X:
        A = la.transpose([_aZ_coords(srd, proj[a]) for a in order])
        c = positive_solution(A, _aZ_coords(srd, la.scale(-1, X)))
        if c is None:
            raise NoPositiveSolution("no positive coefficients give Y_I + a_H = X_I")
        coeff = dict(zip(order, c))
        Y = la.zeros(g.a_dim)
        for a in order:
            Y = la.sub(Y, la.scale(coeff[a], cw[a]))
    for s in F:
        if la.dot(rs.roots[s], Y) != 0:
            raise AssertionFailure("Y_I is not in a_F")
    span_F = rs.generated_subsystem(F)
    span_FQ = rs.generated_subsystem(sp.F_Q)
    for i in rs.positive:
        if i not in span_FQ and i not in span_F and la.dot(rs.roots[i], Y) >= 0:
            raise AssertionFailure("Y_I is not negative on Sigma_u outside <F>")
    return Interlacing(J, F, Y, coeff)


def interlacing_checks(sp: SphericalPair, srd: SphericalRootDatum, I, _checked: bool = False) -> Dict[str, bool]:
    I = srd.check_subset(I)
    if not _checked:
        _require_wavefront(sp, srd)
    g = sp.g
    rs = g.rootsys
    data = interlacing_data(sp, srd, I, _checked=True)
    F = data.F
    hI = degenerate(sp, srd, I)
    ubar = g.nilradical(F, opposite=True)
    pbar = g.parabolic(F, opposite=True)
    gF = g.levi_space(F)
    n = g.a_dim
    aF = rs.parabolic_spaces(F)[0]
    lhs = la.row_basis(list(a_I_space(srd, I)) + list(sp.a_H), n) if (a_I_space(srd, I) or sp.a_H) else []
    rhs = la.row_basis(list(aF) + list(sp.a_H), n) if (aF or sp.a_H) else []
    lattice = True
    for gamma, coords in zip(srd.m_generators, srd.gen_coords):
        inI = in_span_N0(srd, gamma, I)
        supp = frozenset(s for s, c in zip(rs.simple, coords) if c > 0)
        if inI != (supp <= F):
            lattice = False
    return {
        "ubar_in_hI": ubar <= hI,
        "hI_in_pbar": hI <= pbar,
        "gF_h_plus_ubar_in_hI": subspace_sum(intersect(gF, sp.h), ubar) <= hI,
        "aI_eq_aF_plus_aH": lhs == rhs,
        "lattice": lattice,
    }


def verify_interlaced(sp: SphericalPair, srd: SphericalRootDatum, I) -> bool:
    return all(interlacing_checks(sp, srd, I).values())


def degeneration_wavefront(sp: SphericalPair, srd: SphericalRootDatum, I) -> bool:
    """``a_Z^- + a_I + a_H = a^- + a_I + a_H`` inside ``a``.

    This is the cone identity behind the wave-front property of ``H_I A_I``.
    """
    I = srd.check_subset(I)
    n = sp.g.a_dim
    extra = [la.vec(v) for v in a_I_space(srd, I)] + [la.vec(v) for v in sp.a_H]
    cz = srd.cone
    rays = [la.lincomb(r, srd.a_Z_basis, n) for r in cz.rays]
    lin = [la.lincomb(v, srd.a_Z_basis, n) for v in cz.lineality]
    left = Cone.from_generators(n, rays, lin + extra)
    am = negative_chamber(sp)
    right = Cone.from_generators(n, am.rays, list(am.lineality) + extra)
    return left == right


def degeneration_is_wavefront(sp: SphericalPair, srd: SphericalRootDatum, I) -> bool:
    """Run the wave-front test on ``h_I + a_I``."""
    I = srd.check_subset(I)
    g = sp.g
    hI = degenerate(sp, srd, I)
    ext = subspace_sum(hI, Subspace(g, [g.a_element(v) for v in a_I_space(srd, I)]))
    spI = standardize(g, ext, sp.p_min)
    return is_wavefront(spI, spherical_roots(spI))


@dataclass(frozen=True)
class WavefrontReport:
    is_wavefront: bool
    pi_sigma: Tuple[FrozenSet[int], ...]
    per_I: Dict = field(default_factory=dict)  # I -> (J_I, F_I, Y_I, interlaced_ok)


def wavefront_report(sp: SphericalPair, srd: SphericalRootDatum) -> WavefrontReport:
    wf = is_wavefront(sp, srd)
    ps = pi_sigma(sp, srd)
    per = {}
    if wf:
        for I in subsets(range(len(srd.S))):
            d = interlacing_data(sp, srd, I, _checked=True)
            ok = all(interlacing_checks(sp, srd, I, _checked=True).values())
            per[I] = (d.J, d.F, d.Y, ok)
    return WavefrontReport(wf, ps, per)

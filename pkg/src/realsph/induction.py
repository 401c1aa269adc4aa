"""Levi-induced spherical pairs ``(g_F, h_F)`` and modular characters."""

import weakref
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg as la
from .cones import Cone, RationalFunctional
from .errors import AssertionFailure, FQNotContained, ParentNotUnimodular
from .liealg import (LeviSubalgebra, Subspace, intersect, normalizes, subspace_sum, trace_ad_on_quotient,
                     unimodularity_functional)
from .spherical import SphericalPair, SphericalRootDatum, spherical_roots, standardize


def trace_on(s: Subspace, X) -> Fraction:
    """Trace of ``ad X`` on an invariant subspace."""
    g = s.parent
    if not normalizes(X, s):
        raise AssertionFailure("element does not preserve the subspace")
    basis = list(s.basis)
    tr = Fraction(0)
    for k, b in enumerate(basis):
        tr += la.express(basis, g.bracket(X, b))[k]
    return tr


def is_unimodular(h: Subspace) -> bool:
    return unimodularity_functional(h).is_zero()


@dataclass
class InducedPair:
    F: frozenset
    g_F: LeviSubalgebra
    h_F: Subspace  # subspace of g_F
    sp_F: SphericalPair  # (g_F, h_F) standardized
    parent: SphericalPair
    delta_F: Optional[RationalFunctional] = None  # on the basis of p_F ∩ h; None if Z is not unimodular

    @property
    def unimodular(self) -> bool:
        return is_unimodular(self.h_F)


def _check_F(sp: SphericalPair, F) -> frozenset:
    F = sp.g.rootsys._check_subset(F)
    if not sp.F_Q <= F:
        raise FQNotContained(f"F = {sorted(F)} does not contain F_Q = {sorted(sp.F_Q)}")
    return F


def induced_subalgebra(sp: SphericalPair, F):
    """``(g_F, h_F)`` with ``h_F = l∩h + {X + pr_F T(X)}`` for ``X`` in ``ū ∩ g_F``."""
    F = _check_F(sp, F)
    g = sp.g
    gF = g.levi(F)
    keep = set(gF.embedding)
    vecs = [gF.project(b) for b in sp.l_cap_h.basis]
    for i, comps in sp.T.items():
        if i not in keep:
            continue
        v = list(la.unit(g.dim, i))
        for w in comps.values():
            for k, x in enumerate(w):
                v[k] += x
        vecs.append(gF.project(v))
    return gF, Subspace(gF, vecs)


def projection_of_parabolic_part(sp: SphericalPair, gF: LeviSubalgebra) -> Subspace:
    """``pr_F(h ∩ p_F)`` computed directly."""
    hp = intersect(sp.h, sp.g.parabolic(gF.F))
    return Subspace(gF, [gF.project(b) for b in hp.basis])


def modular_character(sp: SphericalPair, F) -> RationalFunctional:
    """``X -> tr ad`` on ``u_F / (u_F ∩ h)`` for ``X`` in a basis of ``p_F ∩ h``."""
    F = _check_F(sp, F)
    if not is_unimodular(sp.h):
        raise ParentNotUnimodular("the modular character of Z_F is computed for unimodular Z")
    g = sp.g
    uF = g.nilradical(F)
    uh = intersect(uF, sp.h)
    ph = intersect(g.parabolic(F), sp.h)
    vals = []
    for X in ph.basis:
        vals.append(trace_on(uF, X) - (trace_on(uh, X) if uh.dim else 0))
    return RationalFunctional(tuple(vals), ph.dim)


_INDUCED: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def induce(sp: SphericalPair, F, check: bool = True) -> InducedPair:
    """Cached per pair; a checked result also serves unchecked calls."""
    F = _check_F(sp, F)
    cache = _INDUCED.setdefault(sp, {})
    for key in ((F, True), (F, check)):
        if key in cache:
            return cache[key]
    cache[(F, check)] = _induce(sp, F, check)
    return cache[(F, check)]


def _induce(sp: SphericalPair, F: frozenset, check: bool) -> InducedPair:
    gF, hF = induced_subalgebra(sp, F)
    inv = {p: q for q, p in gF.simple_map.items()}
    spF = standardize(gF, hF, gF.p_min())
    if check:
        if subspace_sum(hF, gF.p_min()).dim != gF.dim:
            raise AssertionFailure("h_F + p_min,F is not g_F")
        FQ_levi = frozenset(gF.simple_map[s] for s in sp.F_Q)
        qF = gF.parabolic(FQ_levi)
        if intersect(qF, hF) != Subspace(gF, [gF.project(b) for b in sp.l_cap_h.basis]):
            raise AssertionFailure("l∩h differs from q_F ∩ h_F")
        if frozenset(inv[s] for s in spF.F_Q) != sp.F_Q:
            raise AssertionFailure("the adapted subset of the induced pair is not F_Q")
        aF = intersect(hF, gF.a_space())
        if aF.dim != len(sp.a_H):
            raise AssertionFailure("a ∩ h_F differs from a ∩ h")
    delta = modular_character(sp, F) if is_unimodular(sp.h) else None
    return InducedPair(F, gF, hF, spF, sp, delta)


def _cone_in_a(srd: SphericalRootDatum, extra, n: int) -> Cone:
    rays = [la.lincomb(r, srd.a_Z_basis, n) for r in srd.cone.rays]
    lin = [la.lincomb(v, srd.a_Z_basis, n) for v in srd.cone.lineality]
    return Cone.from_generators(n, rays, lin + extra)


def induced_cone_check(sp: SphericalPair, srd: SphericalRootDatum, F, ip: Optional[InducedPair] = None) -> bool:
    """``a_F + a_Z^- = a_F + a_{Z_F}^-`` modulo ``a_H``."""
    F = _check_F(sp, F)
    ip = induce(sp, F) if ip is None else ip
    srdF = spherical_roots(ip.sp_F)
    n = sp.g.a_dim
    aF = sp.g.rootsys.parabolic_spaces(F)[0]
    extra = [la.vec(v) for v in aF] + [la.vec(v) for v in sp.a_H]
    return _cone_in_a(srd, extra, n) == _cone_in_a(srdF, extra, n)


def hat_modular_check(sp: SphericalPair, srd: SphericalRootDatum) -> bool:
    """On ``a_{Z,E}``, ``-tr ad`` on ``g / (h + a_{Z,E})`` equals ``-2 rho_Q``."""
    from .exponents import rho_Q

    if not is_unimodular(sp.h):
        raise ParentNotUnimodular("the check applies to unimodular Z")
    if not srd.edge_basis:
        return True
    g = sp.g
    edge = [g.a_element(e) for e in srd.edge_basis]
    hhat = subspace_sum(sp.h, Subspace(g, edge))
    rho = rho_Q(sp)
    for e, X in zip(srd.edge_basis, edge):
        if -trace_ad_on_quotient(hhat, X) != -2 * rho(e):
            return False
    return True

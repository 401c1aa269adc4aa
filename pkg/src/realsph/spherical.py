"""Adapted parabolic, local structure operator, spherical roots and degenerations.

Conventions.  Vectors of ``a`` are coordinate tuples over the ``a``-graded
basis vectors of the algebra; functionals on ``a`` (roots, spherical roots)
are coefficient tuples over the same basis.  ``a_Z`` is realized inside ``a``
as the orthogonal complement of ``a_H``; the compression cone is stored in
coordinates relative to ``a_Z_basis``.  Subsets ``I`` of spherical roots are
sets of positions in ``SphericalRootDatum.S``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from . import linalg as la
from .cones import Cone, edge as cone_edge, cone_contains, strictly_feasible
from .errors import (AssertionFailure, ConsistencyFailure, GeneratorNotVanishingOnAH, InconsistentSign,
                     InvalidSubset, NoAdaptedParabolic, NotSpherical, NotSubalgebra)
from .liealg import GradedLieAlgebra, Subspace, intersect, is_subalgebra, subspace_sum


def subsets(xs: Iterable) -> List[FrozenSet]:
    xs = sorted(xs)
    return [frozenset(c) for k in range(len(xs) + 1) for c in combinations(xs, k)]


class SphericalPair:
    """``(g, h)`` in standard position relative to ``p_min``.

    ``T[i]`` maps a weight ``beta`` (zero tuple for the ``m + a`` part) to the
    component ``X_{alpha,beta}`` of ``T(X_i)``, where ``X_i`` is the basis
    vector of ``g^{-alpha}`` in ``ū`` with index ``i``.
    """

    def __init__(self, g, h, p_min, F_Q, l_cap_h, T, a_H, a_Z_basis):
        self.g = g
        self.h = h
        self.p_min = p_min
        self.F_Q = frozenset(F_Q)
        self.l_cap_h = l_cap_h
        self.T = T
        self.a_H = a_H
        self.a_Z_basis = a_Z_basis

    @property
    def u_bar_indices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.T))

    def alpha_of(self, i) -> tuple:
        return la.scale(-1, self.g.weight(i))

    def T_coeffs(self) -> Dict:
        """``{(alpha, i): [(beta, X_{alpha,beta}), ...]}`` with zero components dropped."""
        out = {}
        for i in self.u_bar_indices:
            out[(self.alpha_of(i), i)] = sorted(self.T[i].items())
        return out

    def graph(self, T=None) -> Subspace:
        """``l∩h + {X + T(X)}`` for ``T`` (defaults to the pair's own operator)."""
        T = self.T if T is None else T
        g = self.g
        vecs = list(self.l_cap_h.basis)
        for i, comps in T.items():
            v = list(la.unit(g.dim, i))
            for w in comps.values():
                for k, x in enumerate(w):
                    v[k] += x
            vecs.append(tuple(v))
        return Subspace(g, vecs)

    @property
    def rank(self) -> int:
        return len(self.a_Z_basis)

    def __repr__(self):
        return (f"SphericalPair({self.g.name}, dim h={self.h.dim}, F_Q={sorted(self.F_Q)}, "
                f"rank={self.rank})")


def _ubar_q(g: GradedLieAlgebra, F):
    ubar = g.nilradical(F, opposite=True)
    q = g.parabolic(F)
    return ubar, q


def _try_F(g: GradedLieAlgebra, h: Subspace, F) -> Optional[tuple]:
    rs = g.rootsys
    for r in rs.generated_subsystem(F):
        for i in g.root_space(rs.roots[r]):
            if not h.contains(la.unit(g.dim, i)):
                return None
    lF = g.levi_space(F)
    ubar, q = _ubar_q(g, F)
    lh = intersect(h, lF)
    if intersect(h, q).dim != lh.dim:
        return None
    if h.dim != lh.dim + ubar.dim:
        return None
    G = la.gram(list(lh.basis), g.form)
    if lh.dim and la.rank(G, lh.dim) != lh.dim:
        return None
    return lF, ubar, q, lh, G


def _extract_T(g, h: Subspace, F, lF, ubar, lh, G) -> Dict:
    ubar_idx = [i for i in range(g.dim) if ubar.contains(la.unit(g.dim, i))]
    hb = list(h.basis)
    rows = [tuple(b[i] for b in hb) for i in ubar_idx]
    lF_idx = [i for i in range(g.dim) if lF.contains(la.unit(g.dim, i))]
    T = {}
    for t, i in enumerate(ubar_idx):
        rhs = [Fraction(int(s == t)) for s in range(len(ubar_idx))]
        c = la.solve(rows, rhs, len(hb))
        if c is None:
            raise NoAdaptedParabolic("h does not project onto ū")
        v = la.lincomb(c, hb, g.dim)
        lpart = tuple(v[k] if k in set(lF_idx) else Fraction(0) for k in range(g.dim))
        if lh.dim:
            rhs2 = [g.B(lpart, b) for b in lh.basis]
            coef = la.solve(G, rhs2, lh.dim)
            v = la.sub(v, la.lincomb(coef, list(lh.basis), g.dim))
        comps = {}
        for k, x in enumerate(v):
            if x and k != i:
                w = g.weight(k)
                comps.setdefault(w, [Fraction(0)] * g.dim)[k] = x
        T[i] = {w: tuple(x) for w, x in comps.items()}
    return T


def standardize(g: GradedLieAlgebra, h: Subspace, p_min: Optional[Subspace] = None) -> SphericalPair:
    """Find ``F_Q``, ``l∩h`` and ``T`` for a spherical subalgebra ``h``."""
    if p_min is None:
        p_min = g.p_min()
    if not is_subalgebra(h):
        raise NotSubalgebra("h is not closed under the bracket")
    if subspace_sum(h, p_min).dim != g.dim:
        raise NotSpherical(f"h + p_min has dimension {subspace_sum(h, p_min).dim} < {g.dim}")
    found = []
    for F in subsets(g.rootsys.simple):
        data = _try_F(g, h, F)
        if data is not None:
            found.append((F, data))
    if not found:
        raise NoAdaptedParabolic("no subset of simple roots is adapted to h")
    if len(found) > 1:
        raise ConsistencyFailure(f"several adapted subsets found: {[sorted(F) for F, _ in found]}")
    F, (lF, ubar, q, lh, G) = found[0]
    T = _extract_T(g, h, F, lF, ubar, lh, G)
    a = g.a_space()
    aH = [g.a_coords(v) for v in intersect(h, a).basis]
    ip = g.rootsys.inner_product
    aZ = la.orthogonal_complement(aH, ip, g.a_dim) if aH else [la.unit(g.a_dim, i) for i in range(g.a_dim)]
    sp = SphericalPair(g, h, p_min, F, lh, T, aH, aZ)
    if sp.graph() != h:
        raise ConsistencyFailure("h is not recovered from l∩h and T")
    return sp


def frame_witness(sp: SphericalPair) -> Optional[tuple]:
    """An element ``xi`` of ``a`` orthogonal to ``h`` with ``alpha(xi) > 0`` off ``F_Q``, or None.

    The search for ``F_Q`` cannot see whether ``a`` is the right torus for
    ``h``; such an element exists when ``p_min`` and ``h`` are in the
    position of the local structure theorem.
    """
    g = sp.g
    rows = [tuple(g.B(g.a_element(la.unit(g.a_dim, k)), b) for k in range(g.a_dim)) for b in sp.h.basis]
    K = la.nullspace(rows, g.a_dim) if rows else [la.unit(g.a_dim, k) for k in range(g.a_dim)]
    rs = g.rootsys
    off = [rs.roots[s] for s in rs.simple if s not in sp.F_Q]
    if not off:
        return la.zeros(g.a_dim)
    if not K:
        return None
    cons = [tuple(la.dot(alpha, k) for k in K) for alpha in off]
    y = strictly_feasible(cons, len(K))
    if y is None:
        return None
    return la.lincomb(y, K, g.a_dim)


@dataclass(frozen=True)
class SphericalRootDatum:
    m_generators: tuple  # functionals on a
    gen_coords: tuple  # the same in simple-root coordinates (nonnegative integers)
    S: tuple  # spherical roots, functionals on a
    S_coords: tuple
    cone: Cone  # in a_Z_basis coordinates
    edge_basis: tuple  # vectors of a
    omegas: tuple  # vectors of a, dual to S
    a_Z_basis: tuple

    @property
    def rank(self) -> int:
        return len(self.a_Z_basis)

    def check_subset(self, I) -> FrozenSet[int]:
        I = frozenset(I)
        if not I <= set(range(len(self.S))):
            raise InvalidSubset(f"{sorted(I)} is not a set of spherical root positions 0..{len(self.S) - 1}")
        return I


def _in_monoid(gens: tuple, target: tuple) -> bool:
    @lru_cache(maxsize=None)
    def member(x):
        if not any(x):
            return True
        for g in gens:
            if all(a <= b for a, b in zip(g, x)):
                if member(tuple(b - a for a, b in zip(g, x))):
                    return True
        return False
    return member(tuple(target))


def irreducibles(gens: Iterable) -> list:
    """Irreducible elements of the monoid generated by nonzero ``N0``-vectors."""
    gens = tuple(sorted(set(tuple(int(x) for x in g) for g in gens)))
    out = []
    for g in gens:
        reducible = False
        for h in gens:
            if h != g and all(a <= b for a, b in zip(h, g)):
                if _in_monoid(gens, tuple(b - a for a, b in zip(h, g))):
                    reducible = True
                    break
        if not reducible:
            out.append(g)
    return out


def monoid_generators(sp: SphericalPair) -> list:
    """The weights ``alpha + beta`` of the nonzero ``X_{alpha,beta}``, as functionals on ``a``."""
    gens = set()
    for i, comps in sp.T.items():
        alpha = sp.alpha_of(i)
        for beta, x in comps.items():
            if not la.is_zero(x):
                gens.add(la.add(alpha, beta))
    return sorted(gens)


def spherical_roots(sp: SphericalPair) -> SphericalRootDatum:
    g = sp.g
    rs = g.rootsys
    gens = monoid_generators(sp)
    for gamma in gens:
        for v in sp.a_H:
            if la.dot(gamma, v) != 0:
                raise GeneratorNotVanishingOnAH(f"weight {[la.fstr(x) for x in gamma]} does not vanish on a_H")
    coords = {}
    for gamma in gens:
        c = rs.simple_coordinates(gamma)
        if c is None or any(x < 0 or x.denominator != 1 for x in c):
            raise AssertionFailure("monoid generator outside N0[simple roots]")
        coords[gamma] = tuple(int(x) for x in c)
    irr = set(irreducibles(coords.values()))
    S = sorted((gm for gm in gens if coords[gm] in irr), key=lambda gm: tuple(-x for x in coords[gm]))
    aZ = [la.vec(b) for b in sp.a_Z_basis]
    r = len(aZ)
    if S and la.rank(S, g.a_dim) != len(S):
        raise AssertionFailure("spherical roots are linearly dependent")
    cone = Cone(r, tuple(tuple(la.dot(gm, b) for b in aZ) for gm in gens))
    sc = Cone(r, tuple(tuple(la.dot(s, b) for b in aZ) for s in S))
    if not (cone_contains(cone, sc) and cone_contains(sc, cone)):
        raise AssertionFailure("spherical roots do not cut out the compression cone")
    edge = [la.lincomb(e, aZ, g.a_dim) for e in cone_edge(cone)]
    if len(S) != r - len(edge):
        raise AssertionFailure(f"#S = {len(S)} but rank - dim edge = {r - len(edge)}")
    ip = rs.inner_product
    omegas = []
    for j in range(len(S)):
        rows = [tuple(la.dot(s, la.vec(b)) for b in aZ) for s in S]
        rows += [tuple(la.dot(la.matvec(ip, e), b) for b in aZ) for e in edge]
        rhs = [Fraction(int(i == j)) for i in range(len(S))] + [Fraction(0)] * len(edge)
        c = la.solve(rows, rhs, r)
        omegas.append(la.lincomb(c, aZ, g.a_dim))
    return SphericalRootDatum(
        m_generators=tuple(gens), gen_coords=tuple(coords[gm] for gm in gens), S=tuple(S),
        S_coords=tuple(coords[s] for s in S), cone=cone, edge_basis=tuple(edge), omegas=tuple(omegas),
        a_Z_basis=tuple(aZ))


def in_span_N0(srd: SphericalRootDatum, gamma, I) -> bool:
    """``gamma`` in ``N0[I]`` (the spherical roots are linearly independent)."""
    basis = [srd.S[i] for i in sorted(I)]
    if not basis:
        return la.is_zero(gamma)
    c = la.express(basis, la.vec(gamma))
    return c is not None and all(x >= 0 and x.denominator == 1 for x in c)


def truncated_T(sp: SphericalPair, srd: SphericalRootDatum, I) -> Dict:
    I = srd.check_subset(I)
    T = {}
    for i, comps in sp.T.items():
        alpha = sp.alpha_of(i)
        T[i] = {b: x for b, x in comps.items() if in_span_N0(srd, la.add(alpha, b), I)}
    return T


def degenerate(sp: SphericalPair, srd: SphericalRootDatum, I, check: bool = True) -> Subspace:
    """The boundary degeneration ``h_I = l∩h + graph(T_I)``."""
    I = srd.check_subset(I)
    hI = sp.graph(truncated_T(sp, srd, I))
    if check:
        g = sp.g
        if I == frozenset(range(len(srd.S))) and hI != sp.h:
            raise AssertionFailure("h_S differs from h")
        if not I:
            ubar = g.nilradical(sp.F_Q, opposite=True)
            if hI != subspace_sum(sp.l_cap_h, ubar):
                raise AssertionFailure("h_∅ differs from l∩h + ū")
        if hI.dim != sp.h.dim:
            raise AssertionFailure("dim h_I differs from dim h")
        if not is_subalgebra(hI):
            raise AssertionFailure("h_I is not a subalgebra")
        if subspace_sum(hI, sp.p_min).dim != g.dim:
            raise AssertionFailure("h_I + p_min is not g")
    return hI


def grassmannian_limit(g: GradedLieAlgebra, V: Subspace, X) -> Subspace:
    """``lim_{t -> oo} exp(t ad X) V`` for ``X`` in ``a``.

    The limit is spanned by the top-eigenvalue parts of the vectors of each
    filtration step ``V ∩ (sum of eigenspaces <= c)``.
    """
    X = la.vec(X)
    ev = [la.dot(g.weight(i), X) for i in range(g.dim)]
    out = []
    for c in sorted(set(ev)):
        low = Subspace(g, [la.unit(g.dim, i) for i in range(g.dim) if ev[i] <= c])
        for v in intersect(V, low).basis:
            out.append(tuple(x if ev[i] == c else Fraction(0) for i, x in enumerate(v)))
    return Subspace(g, out)


def a_I_space(srd: SphericalRootDatum, I) -> list:
    I = srd.check_subset(I)
    vecs = [srd.omegas[j] for j in range(len(srd.S)) if j not in I] + list(srd.edge_basis)
    n = len(srd.a_Z_basis[0]) if srd.a_Z_basis else (len(srd.edge_basis[0]) if srd.edge_basis else 0)
    return la.row_basis(vecs, n) if vecs else []


def X_I_element(srd: SphericalRootDatum, I, a_dim: Optional[int] = None) -> tuple:
    I = srd.check_subset(I)
    n = a_dim if a_dim is not None else len(srd.omegas[0]) if srd.omegas else 0
    x = la.zeros(n)
    for j in range(len(srd.S)):
        if j not in I:
            x = la.sub(x, srd.omegas[j])
    for j, s in enumerate(srd.S):
        v = la.dot(s, x)
        if (j in I and v != 0) or (j not in I and v >= 0):
            raise AssertionFailure("X_I has the wrong signs on the spherical roots")
    return x


# -- sign twists -------------------------------------------------------------

@dataclass(frozen=True)
class SignCharacter:
    """A homomorphism from the lattice spanned by the monoid generators to ``{±1}``.

    ``basis`` is a lattice basis in simple-root coordinates and ``signs`` the
    values on it.
    """

    basis: tuple
    signs: tuple

    def __call__(self, coords) -> int:
        c = la.express([la.vec(b) for b in self.basis], la.vec(coords))
        if c is None or any(x.denominator != 1 for x in c):
            raise InconsistentSign("weight is not in the lattice of the character")
        out = 1
        for s, x in zip(self.signs, c):
            if s == -1 and x.numerator % 2:
                out = -out
        return out

    def is_trivial(self) -> bool:
        return all(s == 1 for s in self.signs)


def generator_lattice(srd: SphericalRootDatum) -> list:
    return la.hermite_rows(srd.gen_coords) if srd.gen_coords else []


def sign_twists(sp: SphericalPair, srd: SphericalRootDatum) -> List[SignCharacter]:
    basis = tuple(tuple(int(x) for x in b) for b in generator_lattice(srd))
    return [SignCharacter(basis, signs) for signs in product((1, -1), repeat=len(basis))]


def character_from_values(srd: SphericalRootDatum, values: Dict) -> SignCharacter:
    """A character from prescribed signs on monoid generators (simple-root coordinates).

    Raises InconsistentSign when the prescription is not additive.
    """
    basis = tuple(tuple(int(x) for x in b) for b in generator_lattice(srd))
    # solve mod 2 by brute force over the (small) lattice rank
    for signs in product((1, -1), repeat=len(basis)):
        eps = SignCharacter(basis, signs)
        if all(eps(k) == v for k, v in values.items()):
            return eps
    raise InconsistentSign("prescribed signs are not a character of the generator lattice")


def twist(sp: SphericalPair, srd: SphericalRootDatum, eps: SignCharacter, check: bool = True) -> Subspace:
    """``h_w = l∩h + graph(T_w)`` with ``T_w(X_{-alpha}) = sum eps(alpha+beta) X_{alpha,beta}``."""
    rs = sp.g.rootsys
    Tw = {}
    for i, comps in sp.T.items():
        alpha = sp.alpha_of(i)
        Tw[i] = {}
        for b, x in comps.items():
            if la.is_zero(x):
                continue
            s = eps(rs.simple_coordinates(la.add(alpha, b)))
            Tw[i][b] = x if s == 1 else la.scale(-1, x)
    hw = sp.graph(Tw)
    if check:
        if not is_subalgebra(hw):
            raise AssertionFailure("twisted subspace is not a subalgebra")
        sw = standardize(sp.g, hw, sp.p_min)
        if sw.F_Q != sp.F_Q:
            raise AssertionFailure("twist changed the adapted parabolic")
        if spherical_roots(sw).cone != srd.cone:
            raise AssertionFailure("twist changed the compression cone")
    return hw

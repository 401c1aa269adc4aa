"""Leading exponents, temperedness and the tempered embedding pipeline.

Functionals on ``a_Z`` are stored by their values on the basis
``(omega_1, ..., omega_s, e_1, ..., e_k)`` where the ``omega_j`` are dual to
the spherical roots and the ``e_i`` span the edge.  In this basis the
spherical root ``sigma_i`` has values ``(delta_ij, 0)``, so restriction to
``a_I`` just drops the positions in ``I``.
"""

import weakref
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import linalg as la
from .cones import RationalFunctional
from .errors import AssertionFailure, DimensionMismatch, EdgeMismatch, NotTempered, NotWavefront
from .liealg import LeviSubalgebra, Subspace, intersect
from .spherical import SphericalPair, SphericalRootDatum, degenerate


@dataclass(frozen=True)
class ComplexFunctional:
    real_part: RationalFunctional
    imag_part: RationalFunctional

    def __post_init__(self):
        if self.real_part.ambient_dim != self.imag_part.ambient_dim:
            raise DimensionMismatch("real and imaginary parts live on different spaces")

    @classmethod
    def of(cls, re, im=None) -> "ComplexFunctional":
        re = la.vec(re)
        im = la.zeros(len(re)) if im is None else la.vec(im)
        return cls(RationalFunctional.of(re), RationalFunctional(im, len(re)))

    @property
    def dim(self) -> int:
        return self.real_part.ambient_dim

    @property
    def re(self) -> tuple:
        return self.real_part.coefficients

    @property
    def im(self) -> tuple:
        return self.imag_part.coefficients

    def drop(self, positions) -> "ComplexFunctional":
        keep = [k for k in range(self.dim) if k not in set(positions)]
        return ComplexFunctional.of([self.re[k] for k in keep], [self.im[k] for k in keep])

    def tail(self, k: int) -> "ComplexFunctional":
        return ComplexFunctional.of(self.re[self.dim - k:], self.im[self.dim - k:])

    def key(self) -> tuple:
        return (self.re, self.im)

    def __repr__(self):
        return "(" + ", ".join(f"{la.fstr(a)}{'+' if b >= 0 else '-'}{la.fstr(abs(b))}i"
                               for a, b in zip(self.re, self.im)) + ")"


@dataclass(frozen=True)
class ExponentData:
    """``chi`` on the edge, the leading exponents on ``a_Z`` and an opaque degree bound."""

    chi: ComplexFunctional
    e_lead: Tuple[ComplexFunctional, ...]
    degree_bound: int = 0

    def __post_init__(self):
        object.__setattr__(self, "e_lead", tuple(sorted(set(self.e_lead), key=ComplexFunctional.key)))
        if not self.e_lead:
            raise ValueError("the set of leading exponents is empty")
        if self.degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        r, k = self.e_lead[0].dim, self.chi.dim
        for lam in self.e_lead:
            if lam.dim != r:
                raise DimensionMismatch("leading exponents of different dimensions")
            t = lam.tail(k)
            if t.re != la.scale(-1, self.chi.re) or t.im != la.scale(-1, self.chi.im):
                raise EdgeMismatch(f"exponent {lam!r} does not restrict to -chi on the edge")

    @property
    def rank(self) -> int:
        return self.e_lead[0].dim

    @property
    def n_edge(self) -> int:
        return self.chi.dim


def _check_dims(srd: SphericalRootDatum, ed: ExponentData):
    if ed.rank != srd.rank or ed.n_edge != len(srd.edge_basis):
        raise DimensionMismatch(f"exponent data of rank {ed.rank} with edge {ed.n_edge} for a space of rank "
                                f"{srd.rank} with edge {len(srd.edge_basis)}")


def basis_of_aZ(srd: SphericalRootDatum) -> list:
    """``(omega_1, ..., omega_s, e_1, ..., e_k)`` as vectors of ``a``."""
    return [la.vec(w) for w in srd.omegas] + [la.vec(e) for e in srd.edge_basis]


def rho_Q(sp: SphericalPair) -> RationalFunctional:
    """Half the sum of ``dim g^alpha * alpha`` over the roots of ``u``, as a functional on ``a``."""
    g = sp.g
    rs = g.rootsys
    _, _, u_roots, _ = rs.parabolic_spaces(sp.F_Q)
    tot = la.zeros(g.a_dim)
    for i in sorted(u_roots):
        tot = la.add(tot, la.scale(g.multiplicity(rs.roots[i]), rs.roots[i]))
    return RationalFunctional(la.scale(Fraction(1, 2), tot), g.a_dim)


def on_basis(srd: SphericalRootDatum, f: RationalFunctional) -> RationalFunctional:
    """Values of a functional on ``a`` at the ``omega``/edge basis of ``a_Z``."""
    return RationalFunctional.of([f(b) for b in basis_of_aZ(srd)])


_RHO: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def rho_values(sp: SphericalPair, srd: SphericalRootDatum) -> tuple:
    """``rho_Q`` in the ``omega``/edge basis (cached per pair)."""
    cached = _RHO.get(sp)
    if cached is None or cached[0] != id(srd):
        cached = (id(srd), on_basis(srd, rho_Q(sp)).coefficients)
        _RHO[sp] = cached
    return cached[1]


def lambda_V_eta(sp: SphericalPair, srd: SphericalRootDatum, ed: ExponentData) -> RationalFunctional:
    _check_dims(srd, ed)
    s = len(srd.S)
    vals = [min(lam.re[j] for lam in ed.e_lead) for j in range(s)]
    vals += list(la.scale(-1, ed.chi.re))
    return RationalFunctional.of(vals)


def _edge_condition(sp, srd, ed) -> bool:
    rho = rho_values(sp, srd)
    s = len(srd.S)
    return lambda_V_eta(sp, srd, ed).coefficients[s:] == rho[s:]


def is_tempered(sp: SphericalPair, srd: SphericalRootDatum, ed: ExponentData) -> bool:
    lam = lambda_V_eta(sp, srd, ed).coefficients
    rho = rho_values(sp, srd)
    return all(lam[j] >= rho[j] for j in range(len(srd.S))) and _edge_condition(sp, srd, ed)


def strong_inequality(sp: SphericalPair, srd: SphericalRootDatum, ed: ExponentData) -> bool:
    lam = lambda_V_eta(sp, srd, ed).coefficients
    rho = rho_values(sp, srd)
    return all(lam[j] > rho[j] for j in range(len(srd.S))) and _edge_condition(sp, srd, ed)


def I_eta_lambda(sp: SphericalPair, srd: SphericalRootDatum, ed: ExponentData,
                 lam: ComplexFunctional) -> FrozenSet[int]:
    if lam not in ed.e_lead:
        raise ValueError("lambda is not a leading exponent")
    if not is_tempered(sp, srd, ed):
        raise NotTempered("the exponent data is not tempered")
    Lam = lambda_V_eta(sp, srd, ed).coefficients
    rho = rho_values(sp, srd)
    for j in range(len(srd.S)):
        if not rho[j] <= Lam[j] <= lam.re[j]:
            raise NotTempered(f"squeeze fails at omega_{j + 1}")
    return frozenset(j for j in range(len(srd.S)) if rho[j] < lam.re[j])


def _below(mu: ComplexFunctional, nu: ComplexFunctional, free: Sequence[int]) -> bool:
    """``mu - nu`` is a nonzero element of ``N0`` supported on the positions ``free``."""
    if mu.im != nu.im:
        return False
    d = la.sub(mu.re, nu.re)
    if any(d[k] != 0 for k in range(len(d)) if k not in set(free)):
        return False
    return any(d[k] for k in free) and all(d[k] >= 0 and d[k].denominator == 1 for k in free)


def in_Xi_I(srd: SphericalRootDatum, ed: ExponentData, I, mu: ComplexFunctional) -> bool:
    """Membership of ``mu`` (on ``a_I``) in the restriction of ``E_lead + N0[S]``."""
    I = srd.check_subset(I)
    free = range(len(srd.S) - len(I))
    for lam in ed.e_lead:
        r = lam.drop(I)
        if r == mu or _below(mu, r, free):
            return True
    return False


def lead_I(srd: SphericalRootDatum, ed: ExponentData, I) -> List[ComplexFunctional]:
    """Minimal elements of ``Xi_I`` for the order given by ``N0[S]`` restricted to ``a_I``."""
    I = srd.check_subset(I)
    _check_dims(srd, ed)
    free = range(len(srd.S) - len(I))
    cands = sorted({lam.drop(I) for lam in ed.e_lead}, key=ComplexFunctional.key)
    out = [mu for mu in cands if not any(_below(mu, nu, free) for nu in cands)]
    if not out:
        raise AssertionFailure("no leading exponent survives on a_I")
    return out


def omega_I(sp: SphericalPair, srd: SphericalRootDatum, I) -> Dict[int, tuple]:
    """``{j: omega_{j,I}}`` for ``j`` in ``I``, in the ``omega``/edge basis.

    ``omega_{j,I}`` is ``omega_j`` minus its orthogonal projection to ``a_I``.
    """
    I = srd.check_subset(I)
    B = basis_of_aZ(srd)
    ip = sp.g.rootsys.inner_product
    rest = [k for k in range(len(B)) if k not in I]
    G = [[la.dot(la.matvec(ip, B[a]), B[b]) for b in rest] for a in rest]
    out = {}
    for j in sorted(I):
        coords = list(la.unit(len(B), j))
        if rest:
            rhs = [la.dot(la.matvec(ip, B[a]), B[j]) for a in rest]
            for a, x in zip(rest, la.solve(G, rhs, len(rest))):
                coords[a] -= x
        out[j] = tuple(coords)
    return out


@dataclass(frozen=True)
class OptimalPair:
    lam: ComplexFunctional
    I: FrozenSet[int]
    mu: ComplexFunctional  # lam restricted to a_I
    Lambda_I: RationalFunctional  # in the omega/edge basis
    F_I: Optional[FrozenSet[int]] = None  # simple roots, when Z is wave-front
    status: str = "candidate"


@dataclass(frozen=True)
class TemperedReport:
    lambda_V_eta: RationalFunctional
    is_tempered: bool
    strong_inequality: bool
    min_eta: Optional[int] = None
    optimal: Tuple[Tuple[ComplexFunctional, FrozenSet[int]], ...] = ()
    per_optimal: Tuple[OptimalPair, ...] = ()


def _Lambda_I(sp, srd, ed, I, mu) -> RationalFunctional:
    rho = rho_values(sp, srd)
    om = omega_I(sp, srd, I)
    vals = list(rho)
    for j, w in om.items():
        same = [g for g in ed.e_lead if g.drop(I).re == mu.re]
        best = min(la.dot(g.re, w) for g in same)
        if best - la.dot(rho, w) <= 0:
            raise AssertionFailure(f"(Lambda_I - rho_Q)(omega_{j + 1},I) is not positive")
        # Lambda_I agrees with rho on a_I and omega_j - omega_{j,I} lies in a_I
        vals[j] = best + la.dot(rho, la.sub(la.unit(len(w), j), w))
    return RationalFunctional.of(vals)


def optimal_pairs(sp: SphericalPair, srd: SphericalRootDatum, ed: ExponentData) -> TemperedReport:
    from .wavefront import interlacing_data, is_wavefront

    _check_dims(srd, ed)
    Lam = lambda_V_eta(sp, srd, ed)
    if not is_tempered(sp, srd, ed):
        raise NotTempered("the exponent data is not tempered")
    rho = rho_values(sp, srd)
    Is = {lam: I_eta_lambda(sp, srd, ed, lam) for lam in ed.e_lead}
    m = min(len(I) for I in Is.values())
    for lam, I in Is.items():
        for lam2, I2 in Is.items():
            if any(lam2.re[j] < lam.re[j] for j in range(len(srd.S)) if j not in I):
                raise AssertionFailure("Re lambda is not minimal off I_eta,lambda")
            if lam2.drop(I).re == lam.drop(I).re and not I2 <= I:
                raise AssertionFailure("I_eta,lambda' is not contained in I_eta,lambda")
    wf = is_wavefront(sp, srd)
    optimal, per = [], []
    for lam in ed.e_lead:
        I = Is[lam]
        if len(I) != m:
            continue
        mu = lam.drop(I)
        if mu.re != tuple(x for k, x in enumerate(rho) if k not in I) or \
                mu.re != tuple(x for k, x in enumerate(Lam.coefficients) if k not in I):
            raise AssertionFailure("rho_Q, Lambda and Re lambda differ on a_I")
        if mu not in lead_I(srd, ed, I):
            raise AssertionFailure("lambda restricted to a_I is not a leading exponent of Xi_I")
        F = interlacing_data(sp, srd, I, _checked=True).F if wf else None
        optimal.append((lam, I))
        per.append(OptimalPair(lam, I, mu, _Lambda_I(sp, srd, ed, I, mu), F))
    return TemperedReport(Lam, True, strong_inequality(sp, srd, ed), m, tuple(optimal), tuple(per))


def tempered_report(sp: SphericalPair, srd: SphericalRootDatum, ed: ExponentData) -> TemperedReport:
    """Like :func:`optimal_pairs` but returns a bare report for non-tempered data."""
    if not is_tempered(sp, srd, ed):
        return TemperedReport(lambda_V_eta(sp, srd, ed), False, False)
    return optimal_pairs(sp, srd, ed)


@dataclass(frozen=True)
class PipelineEntry:
    I: FrozenSet[int]
    F_I: FrozenSet[int]
    parabolic: Subspace  # opposite parabolic p̄_F
    levi: LeviSubalgebra
    h_I: Subspace
    h_prime: Subspace  # g_F ∩ h_I, in the coordinates of g


_PIPELINE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _pipeline_entry(sp, srd, I) -> PipelineEntry:
    from .wavefront import interlacing_data

    cache = _PIPELINE.setdefault(sp, {})
    if I not in cache:
        g = sp.g
        F = interlacing_data(sp, srd, I, _checked=True).F
        pbar = g.parabolic(F, opposite=True)
        hI = degenerate(sp, srd, I)
        if not (g.nilradical(F, opposite=True) <= hI <= pbar):
            raise AssertionFailure("h_I is not interlaced by the opposite parabolic of F_I")
        h_prime = intersect(g.levi_space(F), hI)
        cache[I] = PipelineEntry(I, F, pbar, g.levi(F), hI, h_prime)
    return cache[I]


def embedding_pipeline(sp: SphericalPair, srd: SphericalRootDatum, ed: ExponentData) -> List[PipelineEntry]:
    from .wavefront import is_wavefront

    if not is_wavefront(sp, srd):
        raise NotWavefront("the embedding pipeline needs a wave-front space")
    rep = optimal_pairs(sp, srd, ed)
    out = []
    for I in sorted({I for _, I in rep.optimal}, key=lambda x: sorted(x)):
        out.append(_pipeline_entry(sp, srd, I))
    return out

"""Graded real Lie algebras with exact structure constants, and subspaces.

A :class:`GradedLieAlgebra` has a basis in which every vector is homogeneous:
it lies in ``a``, in ``m``, or in a single restricted root space.  The
``a``-graded basis vectors, in order, give the coordinates on ``a`` used by
the root system.  Brackets are stored sparsely as ``ad[i][k] = {l: c}``,
meaning ``[X_i, X_k] = sum c X_l``.
"""

from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, Optional, Sequence

from . import linalg as la
from .cones import RationalFunctional
from .errors import InvalidAlgebra, NotNormalizing, NotSubalgebra, ParentMismatch
from .rootsys import RestrictedRootSystem

A_TAG = "a"
M_TAG = "m"


def _grade(g):
    if g in (A_TAG, M_TAG):
        return g
    return la.vec(g)


class GradedLieAlgebra:
    """A real reductive Lie algebra graded by ``a``, ``m`` and restricted roots."""

    def __init__(self, labels: Sequence[str], grades: Sequence, brackets: Dict, positive_element,
                 form=None, theta=None, check_jacobi: bool = True, name: str = ""):
        self.name = name
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.grades = tuple(_grade(g) for g in grades)
        if len(self.grades) != self.dim:
            raise InvalidAlgebra("one grade per basis vector is required")
        self.a_indices = tuple(i for i, g in enumerate(self.grades) if g == A_TAG)
        self.m_indices = tuple(i for i, g in enumerate(self.grades) if g == M_TAG)
        self.a_dim = len(self.a_indices)
        for g in self.grades:
            if isinstance(g, tuple) and len(g) != self.a_dim:
                raise InvalidAlgebra(f"root {g} has length {len(g)}, a has dimension {self.a_dim}")
            if isinstance(g, tuple) and la.is_zero(g):
                raise InvalidAlgebra("zero is not a root; use the 'a' or 'm' tag")
        self.ad = [dict() for _ in range(self.dim)]
        for (i, j), out in brackets.items():
            vals = {int(k): la.frac(c) for k, c in dict(out).items() if la.frac(c) != 0}
            if i == j:
                if vals:
                    raise InvalidAlgebra(f"[{self.labels[i]}, {self.labels[i]}] must vanish")
                continue
            if vals:
                self.ad[i][j] = vals
                self.ad[j][i] = {k: -c for k, c in vals.items()}
        self.positive_element = la.vec(positive_element)
        self._check_grading()
        if check_jacobi:
            self.check_jacobi()
        if form is None:
            form = self.killing_form()
        self.form = [la.vec(r) for r in form]
        if la.rank(self.form, self.dim) != self.dim:
            raise InvalidAlgebra("invariant form is degenerate; supply a nondegenerate form")
        ip = [tuple(self.form[i][j] for j in self.a_indices) for i in self.a_indices]
        if not _positive_definite(ip):
            raise InvalidAlgebra("form is not positive definite on a")
        roots = sorted({g for g in self.grades if isinstance(g, tuple)})
        self.rootsys = RestrictedRootSystem.from_roots(roots, self.positive_element, ip)
        self.theta = None if theta is None else [la.vec(r) for r in theta]
        if self.theta is not None:
            self._check_theta()

    # -- construction checks ---------------------------------------------

    def weight(self, i):
        g = self.grades[i]
        return la.zeros(self.a_dim) if g in (A_TAG, M_TAG) else g

    def _check_grading(self):
        for i in range(self.dim):
            for k, out in self.ad[i].items():
                w = la.add(self.weight(i), self.weight(k))
                for l in out:
                    if self.weight(l) != w:
                        raise InvalidAlgebra(
                            f"[{self.labels[i]}, {self.labels[k]}] has a component on {self.labels[l]} "
                            "outside the expected grade")
        for t, i in enumerate(self.a_indices):
            for k in range(self.dim):
                expected = {k: self.weight(k)[t]} if self.weight(k)[t] else {}
                if self.ad[i].get(k, {}) != expected:
                    raise InvalidAlgebra(f"{self.labels[i]} does not act diagonally on {self.labels[k]}")

    def check_jacobi(self):
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    a = self._br_basis_vec(i, self._br_basis(j, k))
                    b = self._br_basis_vec(j, self._br_basis(k, i))
                    c = self._br_basis_vec(k, self._br_basis(i, j))
                    tot = {}
                    for d in (a, b, c):
                        for l, x in d.items():
                            tot[l] = tot.get(l, 0) + x
                    if any(tot.values()):
                        raise InvalidAlgebra(
                            f"Jacobi identity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")

    def _check_theta(self):
        th = self.theta
        if la.matmul(th, th) != [la.unit(self.dim, i) for i in range(self.dim)]:
            raise InvalidAlgebra("theta is not an involution")
        for i in range(self.dim):
            col = tuple(th[r][i] for r in range(self.dim))
            w = la.scale(-1, self.weight(i))
            if any(col[r] and self.weight(r) != w for r in range(self.dim)):
                raise InvalidAlgebra("theta does not send grade alpha to grade -alpha")

    # -- brackets ----------------------------------------------------------

    def _br_basis(self, i, k) -> dict:
        return self.ad[i].get(k, {})

    def _br_basis_vec(self, i, v: dict) -> dict:
        out = {}
        for k, c in v.items():
            for l, x in self.ad[i].get(k, {}).items():
                out[l] = out.get(l, 0) + c * x
        return out

    def bracket(self, u, v) -> tuple:
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            adi = self.ad[i]
            for k, vk in enumerate(v):
                if vk and k in adi:
                    c = ui * vk
                    for l, x in adi[k].items():
                        out[l] += c * x
        return tuple(out)

    def ad_matrix(self, X) -> list:
        """Matrix of ``ad X`` (columns are images of basis vectors)."""
        cols = [self.bracket(X, la.unit(self.dim, k)) for k in range(self.dim)]
        return la.transpose(cols)

    def killing_form(self) -> list:
        n = self.dim
        B = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                if not la.is_zero(la.add(self.weight(i), self.weight(j))):
                    continue
                s = Fraction(0)
                for k, out in self.ad[i].items():
                    for l, x in out.items():
                        y = self.ad[j].get(l, {}).get(k)
                        if y:
                            s += x * y
                B[i][j] = B[j][i] = s
        return [tuple(r) for r in B]

    def B(self, u, v) -> Fraction:
        return la.dot(u, la.matvec(self.form, v))

    # -- grading helpers -----------------------------------------------------

    def root_space(self, root) -> tuple:
        r = la.vec(root)
        return tuple(i for i, g in enumerate(self.grades) if g == r)

    def multiplicity(self, root) -> int:
        return len(self.root_space(root))

    def grade_component(self, v, pred: Callable) -> tuple:
        """Coordinates of ``v`` on basis vectors whose grade satisfies ``pred``."""
        return tuple(x if pred(self.grades[i]) else Fraction(0) for i, x in enumerate(v))

    def a_element(self, coords) -> tuple:
        """Embed ``a``-coordinates as a vector of the algebra."""
        v = [Fraction(0)] * self.dim
        for i, c in zip(self.a_indices, la.vec(coords)):
            v[i] = c
        return tuple(v)

    def a_coords(self, v) -> tuple:
        return tuple(v[i] for i in self.a_indices)

    def span_grades(self, pred: Callable) -> "Subspace":
        return Subspace(self, [la.unit(self.dim, i) for i, g in enumerate(self.grades) if pred(g)])

    def full(self) -> "Subspace":
        return Subspace(self, [la.unit(self.dim, i) for i in range(self.dim)])

    def zero(self) -> "Subspace":
        return Subspace(self, [])

    def a_space(self) -> "Subspace":
        return self.span_grades(lambda g: g == A_TAG)

    def is_positive_grade(self, g) -> bool:
        return isinstance(g, tuple) and la.dot(g, self.positive_element) > 0

    def p_min(self) -> "Subspace":
        """``m + a + n`` for the positive system of ``positive_element``."""
        return self.span_grades(lambda g: not isinstance(g, tuple) or self.is_positive_grade(g))

    def parabolic(self, F, opposite: bool = False) -> "Subspace":
        """``p_F`` (or the opposite ``p̄_F``): zero part, ``<F>`` and the (negative) rest."""
        span = {self.rootsys.roots[i] for i in self.rootsys.generated_subsystem(F)}
        sign = -1 if opposite else 1

        def keep(g):
            if not isinstance(g, tuple):
                return True
            return g in span or sign * la.dot(g, self.positive_element) > 0
        return self.span_grades(keep)

    def nilradical(self, F, opposite: bool = False) -> "Subspace":
        """``u_F`` (or ``ū_F``): root spaces of ``±(Sigma^+ minus <F>)``."""
        span = {self.rootsys.roots[i] for i in self.rootsys.generated_subsystem(F)}
        sign = -1 if opposite else 1
        return self.span_grades(
            lambda g: isinstance(g, tuple) and g not in span and sign * la.dot(g, self.positive_element) > 0)

    def levi_space(self, F) -> "Subspace":
        span = {self.rootsys.roots[i] for i in self.rootsys.generated_subsystem(F)}
        return self.span_grades(lambda g: not isinstance(g, tuple) or g in span)

    def levi(self, F) -> "LeviSubalgebra":
        return LeviSubalgebra(self, F)

    def __repr__(self):
        return f"GradedLieAlgebra({self.name or 'anonymous'}, dim={self.dim}, rank={self.a_dim})"


def _positive_definite(M) -> bool:
    """Sylvester's criterion, exactly."""
    n = len(M)
    A = [list(r) for r in M]
    for k in range(n):
        if A[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            for j in range(k, n):
                A[i][j] -= f * A[k][j]
    return True


class LeviSubalgebra(GradedLieAlgebra):
    """The Levi ``g_F``: parent basis vectors of grade ``<F>``, ``m`` or ``a``.

    Coordinates are positions in ``embedding`` (a list of parent indices); the
    invariant form is the parent's restricted one.
    """

    def __init__(self, parent: GradedLieAlgebra, F):
        F = parent.rootsys._check_subset(F)
        span = {parent.rootsys.roots[i] for i in parent.rootsys.generated_subsystem(F)}
        emb = [i for i, g in enumerate(parent.grades) if not isinstance(g, tuple) or g in span]
        pos = {p: q for q, p in enumerate(emb)}
        brackets = {}
        for q, p in enumerate(emb):
            for k, out in parent.ad[p].items():
                if k in pos and q < pos[k]:
                    brackets[(q, pos[k])] = {pos[l]: c for l, c in out.items()}
        form = [tuple(parent.form[a][b] for b in emb) for a in emb]
        theta = None
        if parent.theta is not None:
            theta = [tuple(parent.theta[a][b] for b in emb) for a in emb]
        self.parent = parent
        self.F = frozenset(F)
        self.embedding = tuple(emb)
        super().__init__([parent.labels[i] for i in emb], [parent.grades[i] for i in emb], brackets,
                         parent.positive_element, form=form, theta=theta, check_jacobi=False,
                         name=f"{parent.name}_levi")
        # keep the parent's numbering of simple roots for F
        self.simple_map = {s: self.rootsys.index(parent.rootsys.roots[s]) for s in F}

    def embed(self, v) -> tuple:
        out = [Fraction(0)] * self.parent.dim
        for q, p in enumerate(self.embedding):
            out[p] = v[q]
        return tuple(out)

    def project(self, v) -> tuple:
        """Parent vector restricted to the Levi's coordinates (drops other grades)."""
        return tuple(v[p] for p in self.embedding)

    def embed_subspace(self, s: "Subspace") -> "Subspace":
        return Subspace(self.parent, [self.embed(b) for b in s.basis])

    def restrict_subspace(self, s: "Subspace") -> "Subspace":
        """Intersection of a parent subspace with ``g_F``, in Levi coordinates."""
        inter = intersect(s, self.parent.levi_space(self.F))
        return Subspace(self, [self.project(b) for b in inter.basis])


class Subspace:
    """A linear subspace of a graded Lie algebra, stored as canonical RREF rows."""

    __slots__ = ("parent", "basis")

    def __init__(self, parent: GradedLieAlgebra, vectors):
        self.parent = parent
        vs = [la.vec(v) for v in vectors]
        for v in vs:
            if len(v) != parent.dim:
                raise ValueError(f"vector of length {len(v)} in an algebra of dimension {parent.dim}")
        self.basis = tuple(la.row_basis(vs, parent.dim)) if vs else ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return la.is_zero(v) or la.in_span(list(self.basis), la.vec(v))

    def _same_parent(self, other):
        if self.parent is not other.parent:
            raise ParentMismatch("subspaces of different algebras")

    def __le__(self, other: "Subspace") -> bool:
        self._same_parent(other)
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.parent is other.parent and self.basis == other.basis

    def __hash__(self):
        return hash((id(self.parent), self.basis))

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.parent!r})"


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    s1._same_parent(s2)
    return Subspace(s1.parent, la.intersect_spaces(list(s1.basis), list(s2.basis), s1.parent.dim))


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    s1._same_parent(s2)
    return Subspace(s1.parent, list(s1.basis) + list(s2.basis))


def is_subalgebra(s: Subspace) -> bool:
    g = s.parent
    b = s.basis
    for i in range(len(b)):
        for j in range(i + 1, len(b)):
            if not s.contains(g.bracket(b[i], b[j])):
                return False
    return True


def normalizes(X, s: Subspace) -> bool:
    return all(s.contains(s.parent.bracket(X, b)) for b in s.basis)


def trace_ad_on_quotient(s: Subspace, X) -> Fraction:
    """Trace of the action of ``ad X`` on ``parent / s``."""
    g = s.parent
    X = la.vec(X)
    if not normalizes(X, s):
        raise NotNormalizing("X does not normalize the subspace")
    comp = la.complement_in(list(s.basis), [la.unit(g.dim, i) for i in range(g.dim)], g.dim)
    full = list(s.basis) + comp
    tr = Fraction(0)
    for k, c in enumerate(comp):
        coeffs = la.express(full, g.bracket(X, c))
        tr += coeffs[len(s.basis) + k]
    return tr


def unimodularity_functional(h: Subspace) -> RationalFunctional:
    """``X -> tr ad_{g/h}(X)`` evaluated on the basis of ``h``."""
    if not is_subalgebra(h):
        raise NotSubalgebra("unimodularity is defined for subalgebras only")
    return RationalFunctional(tuple(trace_ad_on_quotient(h, b) for b in h.basis), h.dim)


def bracket_space(s1: Subspace, s2: Subspace) -> Subspace:
    s1._same_parent(s2)
    g = s1.parent
    return Subspace(g, [g.bracket(u, v) for u in s1.basis for v in s2.basis])


def orthogonal_in(s: Subspace, ambient: Subspace) -> Subspace:
    """``{x in ambient : B(x, s) = 0}`` for the algebra's invariant form."""
    g = s.parent
    rows = [tuple(la.dot(la.matvec(g.form, u), a) for a in ambient.basis) for u in s.basis]
    coeffs = la.nullspace(rows, ambient.dim) if rows else [la.unit(ambient.dim, i) for i in range(ambient.dim)]
    return Subspace(g, [la.lincomb(c, list(ambient.basis), g.dim) for c in coeffs])

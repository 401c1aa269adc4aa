"""Restricted root systems and parabolic subsets.

Roots are functionals on ``a`` given by their values on the chosen basis of
``a``.  Nothing assumes the system is reduced (``BC_n`` is fine) and the simple
roots need not span ``a*``: directions killed by every root form the center.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import FrozenSet, Iterable, Sequence

from . import linalg as la
from .errors import InvalidSubset, NotInPositiveLattice


@dataclass(frozen=True)
class RestrictedRootSystem:
    a_dim: int
    roots: tuple  # all roots, each a coefficient tuple over the a-basis
    positive: tuple  # indices into roots
    simple: tuple  # indices into roots, ordered
    inner_product: tuple  # symmetric positive definite matrix on a

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(la.vec(r) for r in self.roots))
        object.__setattr__(self, "inner_product", tuple(la.vec(r) for r in self.inner_product))
        object.__setattr__(self, "positive", tuple(self.positive))
        object.__setattr__(self, "simple", tuple(self.simple))
        pos = set(self.positive)
        rs = set(self.roots)
        for i in self.positive:
            if la.scale(-1, self.roots[i]) not in rs:
                raise ValueError("root system is not closed under negation")
        if len(pos) * 2 != len(self.roots):
            raise ValueError("positive roots must be exactly half of the roots")
        if not set(self.simple) <= pos:
            raise ValueError("simple roots must be positive")
        if la.rank([self.roots[i] for i in self.simple], self.a_dim) != len(self.simple):
            raise ValueError("simple roots are linearly dependent")
        for i in self.positive:
            c = self.simple_coordinates(self.roots[i])
            if c is None or any(x < 0 or x.denominator != 1 for x in c):
                raise ValueError(f"positive root {i} is not in N0[simple roots]")

    @classmethod
    def from_roots(cls, roots: Iterable, positive_element, inner_product) -> "RestrictedRootSystem":
        """Build from a root list and a regular element fixing the positive system."""
        roots = sorted({la.vec(r) for r in roots})
        x0 = la.vec(positive_element)
        a_dim = len(x0)
        pos = []
        for i, r in enumerate(roots):
            v = la.dot(r, x0)
            if v == 0:
                raise ValueError("positive_element is not regular")
            if v > 0:
                pos.append(i)
        posset = {roots[i] for i in pos}
        simple = []
        for i in pos:
            r = roots[i]
            decomposable = any(la.sub(r, roots[j]) in posset for j in pos)
            if not decomposable:
                simple.append(i)
        def order(i):
            r = roots[i]
            first = next((k for k, x in enumerate(r) if x > 0), a_dim)
            return (first, tuple(-x for x in r))
        simple.sort(key=order)
        return cls(a_dim, tuple(roots), tuple(pos), tuple(simple), tuple(la.vec(r) for r in inner_product))

    # -- basic accessors -------------------------------------------------

    def index(self, root) -> int:
        return self.roots.index(la.vec(root))

    @property
    def simple_roots(self) -> list:
        return [self.roots[i] for i in self.simple]

    @property
    def positive_roots(self) -> list:
        return [self.roots[i] for i in self.positive]

    def is_positive(self, root) -> bool:
        return self.roots.index(la.vec(root)) in set(self.positive)

    @cached_property
    def _simple_matrix(self):
        return [self.roots[i] for i in self.simple]

    def simple_coordinates(self, functional):
        """Coordinates of a functional in the simple-root basis, or None."""
        return la.express(self._simple_matrix, la.vec(functional))

    def _check_subset(self, F) -> FrozenSet[int]:
        F = frozenset(F)
        if not F <= set(self.simple):
            raise InvalidSubset(f"{sorted(F)} is not a subset of the simple roots {list(self.simple)}")
        return F

    def pairing(self, u, v) -> Fraction:
        """Inner product of two functionals via the dual of ``inner_product``."""
        return la.dot(la.vec(u), la.matvec(self._dual_form, la.vec(v)))

    @cached_property
    def _dual_form(self):
        return la.inverse(list(self.inner_product))

    def dual_vector(self, functional) -> tuple:
        """The element ``H`` of ``a`` with ``<H, X> = functional(X)``."""
        return la.matvec(self._dual_form, la.vec(functional))

    def coroot(self, root) -> tuple:
        h = self.dual_vector(root)
        n = la.dot(la.vec(root), h)
        return la.scale(2 / n, h)

    # -- operations ------------------------------------------------------

    def generated_subsystem(self, F) -> FrozenSet[int]:
        """Indices of roots that are integer combinations of ``F``."""
        F = self._check_subset(F)
        out = set()
        for i, r in enumerate(self.roots):
            c = self.simple_coordinates(r)
            if all(c[k] == 0 for k, s in enumerate(self.simple) if s not in F):
                if any(c[k] != 0 for k in range(len(c))):
                    out.add(i)
        return frozenset(out)

    def parabolic_spaces(self, F):
        """``(a_F, a^F, u_F roots, u^F roots)`` for the parabolic attached to F.

        ``a_F`` is the common kernel of F, ``a^F`` the span of the coroots of
        ``Pi \\ F``; root sets are index sets.
        """
        F = self._check_subset(F)
        n = self.a_dim
        aF = la.row_basis(la.nullspace([self.roots[i] for i in F], n), n) if F else \
            [la.unit(n, i) for i in range(n)]
        aUpper = la.row_basis([self.coroot(self.roots[i]) for i in self.simple if i not in F], n)
        span_F = self.generated_subsystem(F)
        u_roots = frozenset(i for i in self.positive if i not in span_F)
        u_upper = frozenset(i for i in self.positive if i in span_F)
        return aF, aUpper, u_roots, u_upper

    def support(self, functional) -> FrozenSet[int]:
        """Simple roots with positive coefficient in a functional of N0[Pi]."""
        c = self.simple_coordinates(functional)
        if c is None:
            raise NotInPositiveLattice("functional is not in the span of the simple roots")
        if any(x < 0 or x.denominator != 1 for x in c):
            raise NotInPositiveLattice(f"coordinates {[la.fstr(x) for x in c]} are not in N0")
        return frozenset(s for s, x in zip(self.simple, c) if x > 0)

    @cached_property
    def center(self) -> list:
        """Directions of ``a`` on which every root vanishes."""
        n = self.a_dim
        if not self.roots:
            return [la.unit(n, i) for i in range(n)]
        return la.row_basis(la.nullspace(list(self.roots), n), n)

    def fundamental_coweights(self) -> dict:
        """``{simple index: w}`` with ``alpha(w_beta) = delta`` and ``w`` orthogonal to the center."""
        n = self.a_dim
        G = self.inner_product
        rows = [self.roots[i] for i in self.simple]
        # orthogonality to the center: <z, w> = 0
        rows += [la.matvec(G, z) for z in self.center]
        out = {}
        for k, s in enumerate(self.simple):
            rhs = [Fraction(int(j == k)) for j in range(len(self.simple))] + [Fraction(0)] * len(self.center)
            w = la.solve(rows, rhs, n)
            out[s] = w
        return out

    def restrict(self, F) -> "RestrictedRootSystem":
        """Root system ``<F>`` on the same ``a`` (the Levi's system)."""
        F = self._check_subset(F)
        idx = sorted(self.generated_subsystem(F))
        roots = [self.roots[i] for i in idx]
        pos = [k for k, i in enumerate(idx) if i in set(self.positive)]
        simple = [idx.index(s) for s in self.simple if s in F]
        return RestrictedRootSystem(self.a_dim, tuple(roots), tuple(pos), tuple(simple), self.inner_product)

    def nonneg_combinations_bound(self, target, generators: Sequence) -> list:
        """Generators coordinatewise (in the simple basis) below ``target``."""
        t = self.simple_coordinates(target)
        out = []
        for g in generators:
            c = self.simple_coordinates(g)
            if all(x <= y for x, y in zip(c, t)):
                out.append(g)
        return out

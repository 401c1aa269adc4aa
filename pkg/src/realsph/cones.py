"""Polyhedral cones over the rationals.

A cone is stored by inequalities ``f(x) <= 0``.  Generators are derived on
demand with the double description method: the lineality space is split off
first, and the remaining pointed cone is built up one constraint at a time
from a simplicial start, keeping a pair of rays only when they are adjacent
(combinatorial test on the tight constraint sets).  Rays are normalized to
primitive integer vectors and sorted, so output is canonical.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from . import linalg as la
from .errors import DimensionMismatch


@dataclass(frozen=True)
class RationalFunctional:
    """A linear functional given by its coefficients in a fixed basis."""

    coefficients: tuple
    ambient_dim: int

    def __post_init__(self):
        coeffs = la.vec(self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) != self.ambient_dim:
            raise DimensionMismatch(
                f"functional has {len(coeffs)} coefficients, ambient dimension is {self.ambient_dim}"
            )

    @classmethod
    def of(cls, coeffs) -> "RationalFunctional":
        coeffs = la.vec(coeffs)
        return cls(coeffs, len(coeffs))

    def __call__(self, x) -> Fraction:
        return la.dot(self.coefficients, x)

    def __add__(self, other):
        return RationalFunctional(la.add(self.coefficients, other.coefficients), self.ambient_dim)

    def __sub__(self, other):
        return RationalFunctional(la.sub(self.coefficients, other.coefficients), self.ambient_dim)

    def __neg__(self):
        return RationalFunctional(la.scale(-1, self.coefficients), self.ambient_dim)

    def __mul__(self, c):
        return RationalFunctional(la.scale(la.frac(c), self.coefficients), self.ambient_dim)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return la.is_zero(self.coefficients)

    def __repr__(self):
        return "RationalFunctional(" + ", ".join(la.fstr(c) for c in self.coefficients) + ")"


def _canonical_rays(rays) -> tuple:
    out = {la.primitive(r) for r in rays if not la.is_zero(r)}
    return tuple(sorted(out))


def _pointed_rays(A: list, k: int) -> list:
    """Extreme rays of the pointed cone ``{y in Q^k : A y <= 0}``.

    Requires ``rank(A) == k``.
    """
    if k == 0:
        return []
    # simplicial start from k independent constraints
    start = []
    basis = []
    for i, row in enumerate(A):
        if la.rank(basis + [row], k) > len(basis):
            basis.append(row)
            start.append(i)
        if len(basis) == k:
            break
    inv = la.inverse(basis)
    # columns of -inv: A_K y = -e_j  gives a ray tight on all starting rows but j
    rays = [tuple(-inv[r][j] for r in range(k)) for j in range(k)]
    processed = list(start)
    remaining = [i for i in range(len(A)) if i not in set(start)]

    def tight(ray, rows):
        return frozenset(i for i in rows if la.dot(A[i], ray) == 0)

    for i in remaining:
        vals = [la.dot(A[i], r) for r in rays]
        neg = [r for r, v in zip(rays, vals) if v < 0]
        zer = [r for r, v in zip(rays, vals) if v == 0]
        pos = [(r, v) for r, v in zip(rays, vals) if v > 0]
        negv = [(r, v) for r, v in zip(rays, vals) if v < 0]
        tsets = {r: tight(r, processed) for r in rays}
        new = []
        for p, vp in pos:
            for n, vn in negv:
                common = tsets[p] & tsets[n]
                if la.rank([A[j] for j in common], k) < k - 2:
                    continue
                adjacent = True
                for r in rays:
                    if r != p and r != n and common <= tsets[r]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                # combination vanishing on constraint i, inside the half-space
                new.append(la.primitive(la.sub(la.scale(vp, n), la.scale(vn, p))))
        rays = [la.primitive(r) for r in neg + zer] + new
        rays = list(dict.fromkeys(rays))
        processed.append(i)
    return rays


def generators_of(inequalities: Sequence[Sequence], dim: int):
    """Lineality basis and extreme rays of ``{x : f(x) <= 0}``."""
    A = [la.vec(f) for f in inequalities if not la.is_zero(f)]
    lineality = la.row_basis(la.nullspace(A, dim), dim) if A else [la.unit(dim, i) for i in range(dim)]
    if not A:
        return lineality, ()
    B = la.row_basis(A, dim)  # rows span the orthogonal complement of the lineality
    k = len(B)
    Ay = [tuple(la.dot(f, b) for b in B) for f in A]
    rays_y = _pointed_rays(Ay, k)
    rays = [la.lincomb(y, B, dim) for y in rays_y]
    return lineality, _canonical_rays(rays)


@dataclass(frozen=True)
class Cone:
    """``{x in Q^d : f(x) <= 0 for every f in inequalities}``."""

    ambient_dim: int
    inequalities: tuple = ()

    def __post_init__(self):
        ineqs = []
        for f in self.inequalities:
            c = f.coefficients if isinstance(f, RationalFunctional) else la.vec(f)
            if len(c) != self.ambient_dim:
                raise DimensionMismatch("inequality length does not match ambient dimension")
            ineqs.append(c)
        object.__setattr__(self, "inequalities", tuple(ineqs))

    @classmethod
    def from_generators(cls, dim: int, rays: Sequence = (), lineality: Sequence = ()) -> "Cone":
        """Cone generated by ``rays`` (nonnegative) plus the span of ``lineality``."""
        gens = [la.vec(r) for r in rays] + [la.vec(v) for v in lineality] + [la.scale(-1, la.vec(v)) for v in lineality]
        for g in gens:
            if len(g) != dim:
                raise DimensionMismatch("generator length does not match ambient dimension")
        # the polar {f : f(g) <= 0} has generators = our inequalities
        flin, frays = generators_of(gens, dim)
        ineqs = list(frays) + list(flin) + [la.scale(-1, v) for v in flin]
        cone = cls(dim, tuple(ineqs))
        return cone

    @cached_property
    def _vrep(self):
        return generators_of(self.inequalities, self.ambient_dim)

    @property
    def lineality(self) -> tuple:
        return tuple(self._vrep[0])

    @property
    def rays(self) -> tuple:
        return self._vrep[1]

    @property
    def generators(self) -> tuple:
        """All generators: rays and both signs of the lineality basis."""
        lin = self.lineality
        return tuple(self.rays) + tuple(lin) + tuple(la.scale(-1, v) for v in lin)

    def contains_point(self, x) -> bool:
        return all(la.dot(f, x) <= 0 for f in self.inequalities)

    @cached_property
    def facets(self) -> tuple:
        """Irredundant canonical inequality description (rays of the polar)."""
        return Cone.from_generators(self.ambient_dim, self.rays, self.lineality).inequalities

    def dimension(self) -> int:
        return la.rank(list(self.generators), self.ambient_dim) if self.generators else 0

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return cone_contains(self, other) and cone_contains(other, self)

    def __hash__(self):
        return hash((self.ambient_dim, self.rays, tuple(la.row_basis(self.lineality, self.ambient_dim))))

    def __repr__(self):
        return f"Cone(dim={self.ambient_dim}, rays={len(self.rays)}, lineality={len(self.lineality)})"


def full_space(dim: int) -> Cone:
    return Cone(dim, ())


def edge(c: Cone) -> list:
    """Basis of the largest subspace contained in ``c`` (canonical RREF rows)."""
    return la.row_basis(la.nullspace(list(c.inequalities), c.ambient_dim), c.ambient_dim) if c.inequalities \
        else [la.unit(c.ambient_dim, i) for i in range(c.ambient_dim)]


def cone_contains(outer: Cone, inner: Cone) -> bool:
    """True iff ``inner`` is a subset of ``outer``."""
    if outer.ambient_dim != inner.ambient_dim:
        raise DimensionMismatch("cones live in different ambient spaces")
    return all(outer.contains_point(g) for g in inner.generators)


def project_cone(c: Cone, kernel: Sequence, target_basis: Sequence) -> Cone:
    """Image of ``c`` under the projection along ``kernel`` onto ``span(target_basis)``.

    The result is expressed in coordinates relative to ``target_basis``.
    """
    n = c.ambient_dim
    kernel = [la.vec(v) for v in kernel]
    target = [la.vec(v) for v in target_basis]
    if len(kernel) + len(target) != n or la.rank(kernel + target, n) != n:
        raise DimensionMismatch("kernel and target basis do not form a direct sum of the ambient space")
    m = len(target)
    rows = target + kernel

    def coords(v):
        x = la.express(rows, v)
        return x[:m]

    rays = [coords(r) for r in c.rays]
    lin = [coords(v) for v in c.lineality]
    lin = [v for v in lin if not la.is_zero(v)]
    return Cone.from_generators(m, rays, lin)


def relative_interior_point(c: Cone):
    """A point in the relative interior (sum of all generators)."""
    gens = c.generators
    p = la.zeros(c.ambient_dim)
    for g in gens:
        p = la.add(p, g)
    return p


def strictly_feasible(rows: Sequence[Sequence], dim: int) -> Optional[tuple]:
    """A point ``x`` with ``r(x) > 0`` for every row, or None.

    Decided exactly: ``{x : r(x) >= 0}`` has such a point iff the sum of its
    generators does.
    """
    rows = [la.vec(r) for r in rows]
    c = Cone(dim, tuple(la.scale(-1, r) for r in rows))
    p = la.zeros(dim)
    for g in c.rays:
        p = la.add(p, g)
    if all(la.dot(r, p) > 0 for r in rows):
        return p
    return None


def positive_solution(A: Sequence[Sequence], b: Sequence, strict: bool = True) -> Optional[tuple]:
    """A solution of ``A x = b`` with ``x > 0`` (or ``x >= 0``), or None.

    Homogenizes to ``{(x, t) >= 0 : A x = b t}``; a coordinate can be made
    positive iff it is positive on some extreme ray, so the sum of rays is a
    witness whenever one exists.
    """
    A = [la.vec(r) for r in A]
    b = la.vec(b)
    n = len(A[0]) if A else 0
    dim = n + 1
    ineqs = [la.scale(-1, la.unit(dim, i)) for i in range(dim)]
    for row, bi in zip(A, b):
        eq = tuple(row) + (-bi,)
        ineqs.append(eq)
        ineqs.append(la.scale(-1, eq))
    c = Cone(dim, tuple(ineqs))
    total = la.zeros(dim)
    for r in c.rays:
        total = la.add(total, r)
    if total[n] <= 0:
        return None
    x = la.scale(1 / total[n], total[:n])
    if strict and any(xi <= 0 for xi in x):
        return None
    return x


def sum_with_subspace(c: Cone, subspace: Sequence) -> Cone:
    """Minkowski sum of a cone and a linear subspace."""
    return Cone.from_generators(c.ambient_dim, c.rays, list(c.lineality) + [la.vec(v) for v in subspace])


def double_description_consistent(c: Cone) -> bool:
    """Generators -> inequalities -> generators reproduces the cone."""
    back = Cone.from_generators(c.ambient_dim, c.rays, c.lineality)
    return cone_contains(c, back) and cone_contains(back, c)

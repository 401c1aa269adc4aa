"""Graded Lie algebras built from real matrix algebras, and direct sums.

A matrix Lie algebra closed under transpose, with a diagonal ``a``, is graded
by the weights of the matrix units ``E_ij``: each weight space is the
component of the algebra on the units of that weight.  The zero weight space
splits as ``a`` plus its antisymmetric part ``m``.
"""

from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .errors import InvalidAlgebra
from .liealg import A_TAG, M_TAG, GradedLieAlgebra

Sparse = dict  # {(i, j): Fraction}


def sparse(M) -> Sparse:
    return {(i, j): la.frac(x) for i, row in enumerate(M) for j, x in enumerate(row) if x}


def dense(S: Sparse, n: int) -> list:
    M = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), x in S.items():
        M[i][j] = x
    return M


def commutator(A: Sparse, B: Sparse) -> Sparse:
    out = {}
    brow = {}
    for (k, j), y in B.items():
        brow.setdefault(k, []).append((j, y))
    arow = {}
    for (k, j), y in A.items():
        arow.setdefault(k, []).append((j, y))
    for (i, k), x in A.items():
        for j, y in brow.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + x * y
    for (i, k), x in B.items():
        for j, y in arow.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) - x * y
    return {key: v for key, v in out.items() if v}


def conjugate(P, X, Pinv=None) -> list:
    """``P X P^{-1}`` as a dense matrix."""
    if Pinv is None:
        Pinv = la.inverse([la.vec(r) for r in P])
    return [list(r) for r in la.matmul(la.matmul([la.vec(r) for r in P], [la.vec(r) for r in X]), Pinv)]


class MatrixLieAlgebra(GradedLieAlgebra):
    """A graded Lie algebra with a faithful matrix realization."""

    def __init__(self, name: str, spanning: Sequence, a_matrices: Sequence, positive_element,
                 check_jacobi: bool = False):
        n = len(a_matrices[0])
        self.size = n
        flat = [tuple(la.frac(x) for row in M for x in row) for M in spanning]
        L = la.row_basis(flat, n * n)
        a_diag = [tuple(la.frac(A[i][i]) for i in range(n)) for A in a_matrices]
        for A in a_matrices:
            if any(A[i][j] for i in range(n) for j in range(n) if i != j):
                raise InvalidAlgebra("a must be given by diagonal matrices")

        def weight(i, j):
            return tuple(d[i] - d[j] for d in a_diag)

        wt = {(i, j): weight(i, j) for i in range(n) for j in range(n)}
        comps = {}
        for row in L:
            for pos, x in enumerate(row):
                if x:
                    w = wt[divmod(pos, n)]
                    comps.setdefault(w, {}).setdefault(id(row), [Fraction(0)] * (n * n))[pos] = x
        spaces = {w: la.row_basis([tuple(v) for v in d.values()], n * n) for w, d in comps.items()}
        r = len(a_matrices)
        zero = tuple(Fraction(0) for _ in range(r))
        V0 = spaces.get(zero, [])
        a_flat = [tuple(la.frac(x) for row in A for x in row) for A in a_matrices]
        if la.rank(a_flat, n * n) != r or la.rank(list(V0) + a_flat, n * n) != len(V0):
            raise InvalidAlgebra("a is not a subspace of the zero weight space")
        transpose_perm = [j * n + i for i in range(n) for j in range(n)]
        anti = [tuple(v[p] for p in transpose_perm) for v in V0]
        # m: zero-weight elements X with X^T = -X
        M = la.nullspace(la.transpose([la.add(v, t) for v, t in zip(V0, anti)]), len(V0)) if V0 else []
        m_basis = la.row_basis([la.lincomb(c, V0, n * n) for c in M], n * n)
        if len(m_basis) + r != len(V0):
            raise InvalidAlgebra("zero weight space is not m + a")
        labels, grades, basis = [], [], []
        for k, v in enumerate(a_flat):
            labels.append(f"H{k + 1}")
            grades.append(A_TAG)
            basis.append(v)
        for k, v in enumerate(m_basis):
            labels.append(f"M{k + 1}")
            grades.append(M_TAG)
            basis.append(v)
        for w in sorted(spaces, reverse=True):
            if w == zero:
                continue
            for k, v in enumerate(spaces[w]):
                labels.append("X[" + ",".join(la.fstr(x) for x in w) + f"]{k + 1}")
                grades.append(w)
                basis.append(v)
        if len(basis) != len(L):
            raise InvalidAlgebra("weight decomposition does not span the algebra")
        self._flat_basis = basis
        _, self._pivots = la.rref(basis, n * n)
        sub = [tuple(v[p] for p in self._pivots) for v in basis]
        self._coord_inv = la.inverse(sub)
        self.matrices = [dense({divmod(p, n): x for p, x in enumerate(v) if x}, n) for v in basis]
        sp = [{divmod(p, n): x for p, x in enumerate(v) if x} for v in basis]
        brackets = {}
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                c = commutator(sp[i], sp[j])
                if c:
                    coords = self._coords_flat({i0 * n + j0: x for (i0, j0), x in c.items()})
                    brackets[(i, j)] = {k: x for k, x in enumerate(coords) if x}
        theta = self._transpose_theta(sp)
        super().__init__(labels, grades, brackets, positive_element, theta=theta,
                         check_jacobi=check_jacobi, name=name)

    def _coords_flat(self, entries: dict) -> tuple:
        vp = [entries.get(p, Fraction(0)) for p in self._pivots]
        x = tuple(la.dot(vp, [self._coord_inv[r][c] for r in range(len(vp))]) for c in range(len(vp)))
        check = {}
        for k, xk in enumerate(x):
            if xk:
                for p, y in enumerate(self._flat_basis[k]):
                    if y:
                        check[p] = check.get(p, 0) + xk * y
        if {p: y for p, y in check.items() if y} != {p: y for p, y in entries.items() if y}:
            raise InvalidAlgebra("matrix is not in the algebra")
        return x

    def coordinates(self, M) -> tuple:
        n = self.size
        return self._coords_flat({i * n + j: la.frac(x) for i, row in enumerate(M) for j, x in enumerate(row) if x})

    def matrix(self, v) -> list:
        n = self.size
        out = [[Fraction(0)] * n for _ in range(n)]
        for k, c in enumerate(v):
            if c:
                for i in range(n):
                    for j in range(n):
                        if self.matrices[k][i][j]:
                            out[i][j] += c * self.matrices[k][i][j]
        return out

    def _transpose_theta(self, sp):
        cols = []
        n = self.size
        for s in sp:
            ent = {j * n + i: -x for (i, j), x in s.items()}
            try:
                cols.append(self._coords_flat(ent))
            except InvalidAlgebra:
                return None
        return la.transpose(cols)


class DirectSum(GradedLieAlgebra):
    """``g_1 + ... + g_k`` with concatenated bases and ``a``-coordinates."""

    def __init__(self, factors: Sequence[GradedLieAlgebra], positive_elements=None, name: str = ""):
        self.factors = tuple(factors)
        if positive_elements is None:
            positive_elements = [f.positive_element for f in factors]
        self.offsets = []
        a_off = []
        off = a = 0
        for f in factors:
            self.offsets.append(off)
            a_off.append(a)
            off += f.dim
            a += f.a_dim
        N, r = off, a
        labels, grades, brackets = [], [], {}
        form = [[Fraction(0)] * N for _ in range(N)]
        theta = None if any(f.theta is None for f in factors) else [[Fraction(0)] * N for _ in range(N)]
        for t, f in enumerate(factors):
            o, ao = self.offsets[t], a_off[t]
            for i in range(f.dim):
                labels.append(f"{f.labels[i]}.{t + 1}")
                g = f.grades[i]
                if isinstance(g, tuple):
                    g = (Fraction(0),) * ao + g + (Fraction(0),) * (r - ao - f.a_dim)
                grades.append(g)
                for k, out in f.ad[i].items():
                    if i < k:
                        brackets[(o + i, o + k)] = {o + l: c for l, c in out.items()}
                for j in range(f.dim):
                    form[o + i][o + j] = f.form[i][j]
                    if theta is not None:
                        theta[o + i][o + j] = f.theta[i][j]
        pe = tuple(x for p in positive_elements for x in la.vec(p))
        super().__init__(labels, grades, brackets, pe, form=form, theta=theta, check_jacobi=False, name=name)

    def embed(self, t: int, v) -> tuple:
        out = [Fraction(0)] * self.dim
        o = self.offsets[t]
        for i, x in enumerate(v):
            out[o + i] = la.frac(x)
        return tuple(out)


# -- standard matrix algebras ---------------------------------------------

def _E(n, i, j):
    M = [[0] * n for _ in range(n)]
    M[i][j] = 1
    return M


def sl(n: int, flip: bool = False) -> MatrixLieAlgebra:
    """``sl(n, R)`` with diagonal ``a``; ``flip`` reverses the positive system."""
    span = [_E(n, i, j) for i in range(n) for j in range(n) if i != j]
    H = []
    for k in range(n - 1):
        M = [[0] * n for _ in range(n)]
        M[k][k], M[k + 1][k + 1] = 1, -1
        H.append(M)
    d = [n - 1 - 2 * i for i in range(n)]
    x0 = [sum(d[: k + 1]) for k in range(n - 1)]
    if flip:
        x0 = [-x for x in x0]
    return MatrixLieAlgebra(f"sl{n}", span + H, H, x0)


def so1n(n: int, flip: bool = False) -> MatrixLieAlgebra:
    """``so(1, n)`` preserving ``x_0 x_n + x_1^2 + ... + x_{n-1}^2``, so ``a`` is diagonal."""
    N = n + 1
    J = [[0] * N for _ in range(N)]
    J[0][n] = J[n][0] = 1
    for i in range(1, n):
        J[i][i] = 1
    # X^T J + J X = 0, linear in the entries of X
    rows = []
    for i in range(N):
        for j in range(N):
            row = [Fraction(0)] * (N * N)
            for k in range(N):
                if J[k][j]:
                    row[k * N + i] += J[k][j]  # (X^T J)_ij = sum_k X_ki J_kj
                if J[i][k]:
                    row[k * N + j] += J[i][k]  # (J X)_ij = sum_k J_ik X_kj
            rows.append(tuple(row))
    span = [[list(v[i * N:(i + 1) * N]) for i in range(N)] for v in la.nullspace(rows, N * N)]
    A = [[0] * N for _ in range(N)]
    A[0][0], A[n][n] = 1, -1
    return MatrixLieAlgebra(f"so1_{n}", span, [A], [-1 if flip else 1])

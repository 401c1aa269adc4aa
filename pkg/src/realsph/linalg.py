"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`, matrices are lists of
rows.  Everything here is small and dense; the algebras handled by this
package have dimension well below a hundred.
"""

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Vector = tuple
Matrix = list


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fstr(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    s = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def is_zero(v: Sequence) -> bool:
    return not any(v)


def lincomb(coeffs: Sequence, rows: Sequence[Sequence], n: Optional[int] = None) -> Vector:
    if n is None:
        n = len(rows[0]) if rows else 0
    out = [Fraction(0)] * n
    for c, r in zip(coeffs, rows):
        if c:
            for k, x in enumerate(r):
                if x:
                    out[k] += c * x
    return tuple(out)


def matvec(A: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in A)


def transpose(A: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    if not A:
        return [() for _ in range(ncols or 0)]
    return [tuple(row[j] for row in A) for j in range(len(A[0]))]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [tuple(dot(r, c) for c in Bt) for r in A]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None, col_order: Optional[Sequence[int]] = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    ``col_order`` changes the order in which columns are tried as pivots;
    the result is then reduced with respect to that order.
    """
    M = [list(map(frac, r)) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    order = list(range(ncols)) if col_order is None else list(col_order)
    pivots = []
    r = 0
    for c in order:
        if r >= len(M):
            break
        p = None
        for i in range(r, len(M)):
            if M[i][c]:
                p = i
                break
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        if inv != 1:
            M[r] = [x * inv for x in M[r]]
        pr = M[r]
        nz = [(j, b) for j, b in enumerate(pr) if b]  # rows are usually sparse
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                Mi = M[i]
                for j, b in nz:
                    Mi[j] -= f * b
        pivots.append(c)
        r += 1
    return [tuple(row) for row in M[:r]], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def row_basis(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Canonical basis (RREF rows) of the row span."""
    return rref(rows, ncols)[0]


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    R, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence], b: Sequence, ncols: Optional[int] = None) -> Optional[Vector]:
    """One solution of ``A x = b`` (free variables set to zero) or None."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    aug = [tuple(r) + (frac(bi),) for r, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return tuple(x)


def express(basis: Sequence[Sequence], v: Sequence) -> Optional[Vector]:
    """Coefficients of ``v`` in the (independent) rows ``basis``, or None."""
    if not basis:
        return () if is_zero(v) else None
    return solve(transpose(basis), v, len(basis))


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    return express(basis, v) is not None


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    aug = [tuple(r) + unit(n, i) for i, r in enumerate(A)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [tuple(r[n:]) for r in R]


def intersect_spaces(U: Sequence[Sequence], V: Sequence[Sequence], n: int) -> Matrix:
    """Canonical basis of span(U) ∩ span(V)."""
    if not U or not V:
        return []
    # solve a·U = b·V
    M = transpose(list(U) + [scale(-1, v) for v in V])
    ker = nullspace(M, len(U) + len(V))
    vecs = [lincomb(k[: len(U)], U, n) for k in ker]
    return row_basis(vecs, n)


def complement_in(U: Sequence[Sequence], V: Sequence[Sequence], n: int) -> Matrix:
    """Vectors of V (in order) extending a basis of span(U) to span(U+V)."""
    cur = row_basis(U, n)
    out = []
    for v in V:
        trial = list(cur) + [v]
        if rank(trial, n) > len(cur):
            cur = row_basis(trial, n)
            out.append(tuple(v))
    return out


def primitive(v: Sequence) -> tuple:
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = [frac(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    if g == 0:
        return tuple(Fraction(0) for _ in ints)
    return tuple(Fraction(a // g) for a in ints)


def gram(vectors: Sequence[Sequence], form: Sequence[Sequence]) -> Matrix:
    fv = [matvec(form, v) for v in vectors]
    return [tuple(dot(u, w) for w in fv) for u in vectors]


def orthogonal_complement(U: Sequence[Sequence], form: Sequence[Sequence], n: int) -> Matrix:
    """Canonical basis of ``{x : form(u, x) = 0 for u in U}``."""
    rows = [tuple(dot(u, col) for col in transpose(form)) for u in U]
    return row_basis(nullspace(rows, n), n)


def hermite_rows(rows: Sequence[Sequence[int]]) -> list:
    """Row-style Hermite normal form of an integer matrix; zero rows dropped.

    The nonzero rows form a basis of the integer lattice spanned by the input.
    """
    M = [[int(x) for x in r] for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        if r >= len(M):
            break
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[p] = M[p], M[r]
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if any(M[i][c] for i in range(r, len(M))):
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
    return [tuple(row) for row in M[:r] if any(row)]

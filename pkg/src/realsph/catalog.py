"""Catalog of desk-scale algebras and spherical pairs used as fixtures.

Every pair is returned as ``(g, h, p_min)`` with ``h`` placed so that ``a``
is a torus adapted to it (see :func:`realsph.spherical.frame_witness`).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict

from . import linalg as la
from .errors import UnsupportedEntry
from .liealg import Subspace
from .matrices import DirectSum, MatrixLieAlgebra, conjugate, sl, so1n

# -- algebras ------------------------------------------------------------------

ALGEBRAS: Dict[str, Callable] = {
    "sl2": lambda flip=False: sl(2, flip),
    "sl3": lambda flip=False: sl(3, flip),
    "sl4": lambda flip=False: sl(4, flip),
    "sp1": lambda flip=False: sl(2, flip),  # sp(1, R) is sl(2, R)
    "so1_2": lambda flip=False: so1n(2, flip),
    "so1_3": lambda flip=False: so1n(3, flip),
    "so1_4": lambda flip=False: so1n(4, flip),
}


def algebra(name: str, flip: bool = False):
    if name == "so22":
        # so(2,2) is sl(2,R) + sl(2,R)
        return DirectSum([sl(2, flip), sl(2, flip)], name="so22")
    if name not in ALGEBRAS:
        raise UnsupportedEntry(f"unknown algebra {name!r}; known: {sorted(ALGEBRAS) + ['so22']}")
    return ALGEBRAS[name](flip)


def _matrix_subalgebra(g: MatrixLieAlgebra, mats) -> Subspace:
    return Subspace(g, [g.coordinates(M) for M in mats])


# -- pair kinds ------------------------------------------------------------------

def nbar(name: str):
    g = algebra(name)
    return g, g.nilradical([], opposite=True), g.p_min()


def group_case(name: str):
    """``g' + g' / diag``; the second factor carries the opposite positive system."""
    a, b = algebra(name), algebra(name, flip=True)
    g = DirectSum([a, b], name=f"{name}x{name}")
    h = Subspace(g, [la.add(g.embed(0, la.unit(a.dim, i)), g.embed(1, la.unit(a.dim, i))) for i in range(a.dim)])
    return g, h, g.p_min()


def _ad_sl2(P) -> list:
    """Matrix of ``Ad(P)`` on ``sl(2)`` in the basis ``(E, H, 2F)``."""
    E = [[0, 1], [0, 0]]
    H = [[1, 0], [0, -1]]
    F2 = [[0, 0], [2, 0]]
    cols = []
    for B in (E, H, F2):
        M = conjugate(P, B)
        a, b, c = M[0][0], M[0][1], M[1][0]
        cols.append((b, a, c / 2))
    return la.transpose(cols)


# Borel lines [1:0], [1:1], [1:-2]; the matching a-elements satisfy 3 xi_1 + 4 xi_2 + 5 xi_3 = 0
TRIPLE_FRAMES = ([[1, 0], [0, 1]], [[1, 1], [1, -1]], [[1, 2], [-2, 1]])


def triple(name: str):
    """``g'^3 / diag`` for ``g' = so(1, n)``, with three pairwise distinct minimal parabolics."""
    if not name.startswith("so1_"):
        raise UnsupportedEntry("triple spaces are built for so(1, n)")
    n = int(name.split("_")[1])
    f = algebra(name)
    g = DirectSum([f, f, f], name=f"{name}^3")
    N = n + 1
    conj = []
    for P in TRIPLE_FRAMES:
        Pinv = la.inverse([la.vec(r) for r in P])
        A = _ad_sl2(Pinv)
        G = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
        idx = (0, 1, n)
        for r in range(3):
            for c in range(3):
                G[idx[r]][idx[c]] = A[r][c]
        conj.append(G)
    vecs = []
    for k in range(f.dim):
        X = f.matrices[k]
        parts = [f.coordinates(conjugate(G, X)) for G in conj]
        vecs.append(tuple(x for p in parts for x in p))
    return g, Subspace(g, vecs), g.p_min()


def symmetric(name: str, kind: str):
    g = algebra(name)
    if name == "sl2" and kind == "so11":
        h = _matrix_subalgebra(g, [[[0, 1], [1, 0]]])
    elif name == "sl2" and kind == "so2":
        h = _matrix_subalgebra(g, [[[0, 1], [-1, 0]]])
    elif name == "sl3" and kind in ("so3", "so21"):
        sgn = 1 if kind == "so3" else -1
        mats = []
        for i, j in ((0, 1), (0, 2), (1, 2)):
            M = [[0] * 3 for _ in range(3)]
            M[i][j] = 1
            # preserve diag(1, 1, sgn): entries touching index 2 flip sign when sgn = -1
            M[j][i] = -1 if (j != 2 or sgn == 1) else 1
            mats.append(M)
        h = _matrix_subalgebra(g, mats)
    elif name.startswith("so1_") and kind in ("compact", "so1_n-1"):
        n = g.size - 1
        v = [0] * (n + 1)
        v[0], v[n] = 1, (-1 if kind == "compact" else 1)
        basis = []
        for k in range(g.dim):
            M = g.matrices[k]
            basis.append(tuple(la.dot(M[i], v) for i in range(n + 1)))
        ker = la.nullspace(la.transpose(basis), g.dim)
        h = Subspace(g, ker)
    else:
        raise UnsupportedEntry(f"no symmetric pair {kind!r} for {name!r}")
    return g, h, g.p_min()


def series_nonwf1(n: int = 1):
    """``(sl(2n+1, R), sp(n, R))`` for ``n = 1``: a corner ``sl(2)`` conjugated into position.

    ``P`` holds eigenvectors of a matrix orthogonal to the corner ``sl(2)``
    with eigenvalues ``2, 1, -3``.
    """
    if n != 1:
        raise UnsupportedEntry("series_NonWF1 is built for n = 1 only")
    g = algebra("sl3")
    P = [[1, 1, -1], [1, -1, -1], [1, 0, 4]]
    Pinv = la.inverse([la.vec(r) for r in P])
    corner = [[[0, 1, 0], [0, 0, 0], [0, 0, 0]], [[0, 0, 0], [1, 0, 0], [0, 0, 0]],
              [[1, 0, 0], [0, -1, 0], [0, 0, 0]]]
    mats = [conjugate(Pinv, M, P) for M in corner]
    return g, _matrix_subalgebra(g, mats), g.p_min()


def parabolic(name: str, F=None):
    """``[l_F, l_F] + ū_F`` (the derived opposite parabolic without its center)."""
    g = algebra(name)
    rs = g.rootsys
    F = [rs.simple[0]] if F is None else F
    span = {rs.roots[i] for i in rs.generated_subsystem(F)}
    vecs = [la.unit(g.dim, i) for i, gr in enumerate(g.grades)
            if isinstance(gr, tuple) and (gr in span or la.dot(gr, g.positive_element) < 0)]
    vecs += [g.a_element(rs.coroot(rs.roots[s])) for s in F]
    return g, Subspace(g, vecs), g.p_min()


KINDS = {
    "nbar": lambda algebra="sl2": nbar(algebra),
    "group": lambda algebra="sl2": group_case(algebra),
    "triple": lambda algebra="so1_2": triple(algebra),
    "symmetric": lambda algebra="sl2", kind="so11": symmetric(algebra, kind),
    "series_NonWF1": lambda n=1: series_nonwf1(n),
    "parabolic": lambda algebra="sl3": parabolic(algebra),
}


def build(name: str, **params):
    """``(g, h, p_min)`` for a pair kind or a named catalog entry."""
    if name in CATALOG:
        entry = CATALOG[name]
        return KINDS[entry.kind](**{**entry.params, **params})
    if name not in KINDS:
        raise UnsupportedEntry(f"unknown catalog entry {name!r}")
    try:
        return KINDS[name](**params)
    except TypeError as exc:
        raise UnsupportedEntry(f"bad parameters for {name!r}: {exc}") from None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    params: dict
    expected: dict = field(default_factory=dict)
    heavy: bool = False


def _e(name, kind, params, **expected):
    return CatalogEntry(name, kind, params, expected)


# expected records: wavefront flag, number of spherical roots, unimodularity, F_Q size, rank
CATALOG: Dict[str, CatalogEntry] = {e.name: e for e in [
    _e("nbar-sl2", "nbar", {"algebra": "sl2"}, wavefront=False, n_S=0, unimodular=True, F_Q=0, rank=1),
    _e("nbar-sl3", "nbar", {"algebra": "sl3"}, wavefront=False, n_S=0, unimodular=True, F_Q=0, rank=2),
    _e("nbar-so13", "nbar", {"algebra": "so1_3"}, wavefront=False, n_S=0, unimodular=True, F_Q=0, rank=1),
    _e("group-sl2", "group", {"algebra": "sl2"}, wavefront=True, n_S=1, unimodular=True, F_Q=0, rank=1),
    _e("group-sl3", "group", {"algebra": "sl3"}, wavefront=True, n_S=2, unimodular=True, F_Q=0, rank=2),
    _e("triple-so12", "triple", {"algebra": "so1_2"}, wavefront=True, n_S=3, unimodular=True, F_Q=0, rank=3),
    _e("triple-so13", "triple", {"algebra": "so1_3"}, wavefront=True, n_S=3, unimodular=True, F_Q=0, rank=3),
    _e("sym-sl2-so11", "symmetric", {"algebra": "sl2", "kind": "so11"},
       wavefront=True, n_S=1, unimodular=True, F_Q=0, rank=1),
    _e("sym-sl2-so2", "symmetric", {"algebra": "sl2", "kind": "so2"},
       wavefront=True, n_S=1, unimodular=True, F_Q=0, rank=1),
    _e("sym-sl3-so3", "symmetric", {"algebra": "sl3", "kind": "so3"},
       wavefront=True, n_S=2, unimodular=True, F_Q=0, rank=2),
    _e("sym-sl3-so21", "symmetric", {"algebra": "sl3", "kind": "so21"},
       wavefront=True, n_S=2, unimodular=True, F_Q=0, rank=2),
    _e("sym-so13-so3", "symmetric", {"algebra": "so1_3", "kind": "compact"},
       wavefront=True, n_S=1, unimodular=True, F_Q=0, rank=1),
    _e("sym-so13-so12", "symmetric", {"algebra": "so1_3", "kind": "so1_n-1"},
       wavefront=True, n_S=1, unimodular=True, F_Q=0, rank=1),
    _e("nonwf-sl3-sp1", "series_NonWF1", {"n": 1}, wavefront=False, n_S=1, unimodular=True, F_Q=0, rank=2),
    _e("parabolic-sl3", "parabolic", {"algebra": "sl3"}, wavefront=False, n_S=0, unimodular=True, F_Q=1, rank=1),
]}

# Non-symmetric complex spherical pairs (g_C, h_C) with h_C reductive and g_C simple;
# complexified types only, nothing here is constructed.
KRAMER_TABLE = [
    ("sl(n,C)", "sl(p,C) + sl(n-p,C), 2p != n"),
    ("sl(2n+1,C)", "sp(n,C) + C"),
    ("sl(2n+1,C)", "sp(n,C)"),
    ("so(2n+1,C)", "gl(n,C)"),
    ("so(9,C)", "spin(7,C)"),
    ("so(7,C)", "G2"),
    ("sp(2n,C)", "sp(n-1,C) + C"),
    ("so(2n,C)", "sl(n,C), n odd"),
    ("so(10,C)", "so(2,C) + spin(7,C)"),
    ("so(8,C)", "G2"),
    ("G2", "sl(3,C)"),
    ("E6", "so(10,C)"),
]

METADATA_ONLY = [
    {"g": g, "h": h, "status": "metadata-only"} for g, h in KRAMER_TABLE
] + [
    {"g": "su(p,q)", "h": "example with n_0", "status": "metadata-only"},
    {"g": "so(n,n+1)", "h": "gl(n,R)", "status": "metadata-only"},
    {"g": "so(3,4)", "h": "split G2", "status": "metadata-only"},
]

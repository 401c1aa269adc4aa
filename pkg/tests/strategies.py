"""Random exponent data on catalog fixtures."""

from fractions import Fraction
from itertools import product

from hypothesis import strategies as st

from conftest import analyzed
from realsph import linalg as la
from realsph.exponents import ComplexFunctional, ExponentData, rho_values

EXPONENT_FIXTURES = ["group-sl2", "group-sl3", "triple-so12", "sym-sl3-so21", "sym-so13-so3", "nonwf-sl3-sp1",
                     "nbar-sl2"]

# sixths in [-2, 3], with zero and small integers drawn often
shift = st.one_of(st.just(Fraction(0)), st.integers(1, 2).map(Fraction),
                  st.integers(1, 18).map(lambda k: Fraction(k, 6)),
                  st.integers(-12, -1).map(lambda k: Fraction(k, 6)))


@st.composite
def exponent_instances(draw, names=EXPONENT_FIXTURES, tempered_bias=True):
    name = draw(st.sampled_from(names))
    sp, srd = analyzed(name)
    rho = rho_values(sp, srd)
    s, k = len(srd.S), len(srd.edge_basis)
    chi_re = [-x for x in rho[s:]]
    if k and draw(st.integers(0, 9)) == 0:
        chi_re[0] += 1  # breaks the edge condition
    chi_im = [Fraction(draw(st.integers(-2, 2))) for _ in range(k)]
    base_re, base_im = [], []
    for j in range(s):
        d = draw(shift)
        if tempered_bias and d < 0 and draw(st.booleans()):
            d = -d
        base_re.append(rho[j] + d)
        base_im.append(Fraction(draw(st.integers(-1, 1))))
    lams = [(base_re, base_im)]
    for _ in range(draw(st.integers(0, 3))):
        if s and draw(st.booleans()):
            # an N0[S]-translate of an earlier exponent
            re, im = lams[draw(st.integers(0, len(lams) - 1))]
            re = list(re)
            re[draw(st.integers(0, s - 1))] += draw(st.integers(1, 2))
            lams.append((re, list(im)))
        else:
            lams.append(([rho[j] + abs(draw(shift)) for j in range(s)],
                         [Fraction(draw(st.integers(-1, 1))) for _ in range(s)]))
    edge_re = [-x for x in chi_re]
    edge_im = [-x for x in chi_im]
    lead = tuple(ComplexFunctional.of(list(re) + edge_re, list(im) + edge_im) for re, im in lams)
    ed = ExponentData(ComplexFunctional.of(chi_re, chi_im), lead)
    return name, sp, srd, ed


def lead_I_oracle(srd, ed, I, bound=4):
    """Minimal elements of a finite box of Xi_I, straight from the definition."""
    J = [j for j in range(len(srd.S)) if j not in I]
    free = range(len(J))
    box = set()
    for lam in ed.e_lead:
        mu = lam.drop(I)
        for n in product(range(bound + 1), repeat=len(J)):
            re = list(mu.re)
            for p, x in zip(free, n):
                re[p] += x
            box.add((tuple(re), mu.im))
    out = []
    for re, im in box:
        minimal = True
        for n in product(range(bound + 1), repeat=len(J)):
            if not any(n):
                continue
            lower = list(re)
            for p, x in zip(free, n):
                lower[p] -= x
            if (tuple(lower), im) in box:
                minimal = False
                break
        if minimal:
            out.append((re, im))
    return sorted(out)

"""Command line front end.

Pair files are JSON documents with a ``format: 1`` header.  The algebra is
either a catalog reference or explicit structure constants; rationals are
strings ``"p/q"``.  Reports go to standard output as canonical JSON, a short
summary goes to standard error.
"""

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from . import linalg as la
from .catalog import CATALOG, METADATA_ONLY, build
from .errors import RealSphError
from .liealg import A_TAG, M_TAG, GradedLieAlgebra, Subspace, intersect, unimodularity_functional
from .spherical import (degenerate, frame_witness, sign_twists, spherical_roots, standardize, subsets,
                        twist)

FORMAT = 1


class PairFileError(Exception):
    """Malformed input; mapped to exit code 2."""


# -- serialization -------------------------------------------------------------

def q(x) -> str:
    return la.fstr(la.frac(x))


def qv(v) -> List[str]:
    return [q(x) for x in v]


def rat(x, where: str) -> Fraction:
    try:
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise ValueError
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise PairFileError(f"{where}: expected a rational 'p/q', got {x!r}") from None


def ratv(v, where: str) -> tuple:
    if not isinstance(v, list):
        raise PairFileError(f"{where}: expected a list")
    return tuple(rat(x, f"{where}[{k}]") for k, x in enumerate(v))


def dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def algebra_doc(g: GradedLieAlgebra) -> dict:
    brackets = []
    for i in range(g.dim):
        for k, out in sorted(g.ad[i].items()):
            if i < k and out:
                brackets.append([i, k, [[l, q(c)] for l, c in sorted(out.items())]])
    grades = [gr if not isinstance(gr, tuple) else qv(gr) for gr in g.grades]
    return {"name": g.name, "labels": list(g.labels), "grades": grades, "brackets": brackets,
            "positive_element": qv(g.positive_element)}


def pair_doc(g: GradedLieAlgebra, h: Subspace, p_min: Subspace) -> dict:
    return {"format": FORMAT, "algebra": algebra_doc(g), "h": [qv(b) for b in h.basis],
            "p_min": [qv(b) for b in p_min.basis]}


# -- parsing -------------------------------------------------------------------

def _parse_algebra(d) -> GradedLieAlgebra:
    if not isinstance(d, dict):
        raise PairFileError("algebra: expected an object")
    for key in ("labels", "grades", "brackets", "positive_element"):
        if key not in d:
            raise PairFileError(f"algebra: missing key {key!r}")
    labels = d["labels"]
    grades = []
    for k, gr in enumerate(d["grades"]):
        if gr in (A_TAG, M_TAG):
            grades.append(gr)
        else:
            grades.append(ratv(gr, f"algebra.grades[{k}]"))
    brackets: Dict = {}
    for k, entry in enumerate(d["brackets"]):
        try:
            i, j, out = entry
            brackets[(int(i), int(j))] = {int(l): rat(c, f"algebra.brackets[{k}]") for l, c in out}
        except (TypeError, ValueError):
            raise PairFileError(f"algebra.brackets[{k}]: expected [i, j, [[k, c], ...]]") from None
    pe = ratv(d["positive_element"], "algebra.positive_element")
    return GradedLieAlgebra(labels, grades, brackets, pe, check_jacobi=True, name=d.get("name", ""))


def parse_pair(doc) -> tuple:
    """``(g, h, p_min, exponent_block)`` from a parsed pair document."""
    if not isinstance(doc, dict):
        raise PairFileError("pair file: expected an object at the top level")
    if doc.get("format") != FORMAT:
        raise PairFileError(f"pair file: unsupported or missing format (expected format: {FORMAT})")
    exps = doc.get("exponents")
    if "catalog" in doc:
        params = doc.get("params", {})
        if not isinstance(params, dict):
            raise PairFileError("params: expected an object")
        g, h, p = build(doc["catalog"], **params)
        return g, h, p, exps
    if "algebra" not in doc or "h" not in doc:
        raise PairFileError("pair file: needs either 'catalog' or both 'algebra' and 'h'")
    g = _parse_algebra(doc["algebra"])
    try:
        h = Subspace(g, [ratv(v, f"h[{k}]") for k, v in enumerate(doc["h"])])
        p = g.p_min() if doc.get("p_min") is None else \
            Subspace(g, [ratv(v, f"p_min[{k}]") for k, v in enumerate(doc["p_min"])])
    except ValueError as exc:
        raise PairFileError(str(exc)) from None
    return g, h, p, exps


def load_pair(arg: str) -> tuple:
    """A pair file path or a catalog entry name."""
    if not os.path.exists(arg):
        if arg in CATALOG:
            g, h, p = build(arg)
            return g, h, p, None
        raise PairFileError(f"{arg}: no such file or catalog entry")
    with open(arg, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PairFileError(f"{arg}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_pair(doc)


def parse_exponents(block, srd):
    from .exponents import ComplexFunctional, ExponentData

    if not isinstance(block, dict) or "e_lead" not in block:
        raise PairFileError("exponents: expected an object with 'e_lead'")

    def cf(pairs, where):
        if not isinstance(pairs, list) or any(not isinstance(p, list) or len(p) != 2 for p in pairs):
            raise PairFileError(f"{where}: expected a list of [re, im] pairs")
        return ComplexFunctional.of([rat(p[0], where) for p in pairs], [rat(p[1], where) for p in pairs])

    chi = cf(block.get("chi", []), "exponents.chi")
    lead = tuple(cf(e, f"exponents.e_lead[{k}]") for k, e in enumerate(block["e_lead"]))
    if not lead:
        raise PairFileError("exponents.e_lead: empty")
    deg = block.get("degree_bound", 0)
    if not isinstance(deg, int) or deg < 0:
        raise PairFileError("exponents.degree_bound: expected a nonnegative integer")
    return ExponentData(chi, lead, deg)


# -- names -----------------------------------------------------------------------

def simple_names(g) -> Dict[int, str]:
    return {s: f"a{k + 1}" for k, s in enumerate(g.rootsys.simple)}


def names_of_F(g, F) -> List[str]:
    nm = simple_names(g)
    return [nm[s] for s in g.rootsys.simple if s in F]


def names_of_I(I) -> List[str]:
    return [f"s{j + 1}" for j in sorted(I)]


def parse_names(text: Optional[str], prefix: str, table: Dict[str, int], what: str) -> frozenset:
    if text is None or text.strip() == "":
        return frozenset()
    out = set()
    for tok in text.split(","):
        tok = tok.strip()
        if tok not in table:
            raise PairFileError(f"{what}: unknown name {tok!r}; expected {prefix}1..{prefix}{len(table)}")
        out.add(table[tok])
    return frozenset(out)


# -- reports -----------------------------------------------------------------------

def _analysis(g, h, p):
    sp = standardize(g, h, p)
    srd = spherical_roots(sp)
    nm = simple_names(g)
    rs = g.rootsys
    T = []
    for (alpha, i), comps in sorted(sp.T_coeffs().items(), key=lambda kv: kv[0][1]):
        T.append({"basis_vector": g.labels[i], "alpha": qv(alpha),
                  "components": [{"beta": qv(b), "vector": qv(x)} for b, x in comps if not la.is_zero(x)]})
    cone = srd.cone
    witness = frame_witness(sp)
    rep = {
        "simple_roots": {nm[s]: qv(rs.roots[s]) for s in rs.simple},
        "F_Q": names_of_F(g, sp.F_Q),
        "l_cap_h": [qv(b) for b in sp.l_cap_h.basis],
        "T": T,
        "M_generators": [list(c) for c in srd.gen_coords],
        "S": {f"s{j + 1}": list(c) for j, c in enumerate(srd.S_coords)},
        "a_H": [qv(v) for v in sp.a_H],
        "a_Z_basis": [qv(v) for v in srd.a_Z_basis],
        "cone": {"inequalities": [qv(f) for f in sorted(cone.facets)], "rays": [qv(r) for r in cone.rays],
                 "lineality": [qv(v) for v in cone.lineality],
                 "all_of_a_Z": cone.dimension() == srd.rank and not cone.facets},
        "edge": [qv(v) for v in srd.edge_basis],
        "rank": srd.rank,
        "unimodular": unimodularity_functional(sp.h).is_zero(),
        "frame_witness": None if witness is None else qv(witness),
    }
    return sp, srd, rep


def _summary(rep) -> str:
    S = ", ".join(rep["S"]) or "∅"
    return f"F_Q = {rep['F_Q'] or '∅'}, S = {S}, rank {rep['rank']}, edge dim {len(rep['edge'])}"


def cmd_analyze(args):
    g, h, p, _ = load_pair(args.pair)
    _, _, rep = _analysis(g, h, p)
    doc = pair_doc(g, h, p)
    doc["analysis"] = rep
    return doc, _summary(rep)


def _setup(args):
    g, h, p, exps = load_pair(args.pair)
    sp = standardize(g, h, p)
    return sp, spherical_roots(sp), exps


def cmd_degenerate(args):
    from .wavefront import degeneration_is_wavefront, degeneration_wavefront, is_wavefront

    sp, srd, _ = _setup(args)
    table = {f"s{j + 1}": j for j in range(len(srd.S))}
    I = parse_names(args.I, "s", table, "--I")
    hI = degenerate(sp, srd, I)
    g = sp.g
    sub = standardize(g, hI, sp.p_min)
    srdI = spherical_roots(sub)
    S_I = sorted(names_of_I([srd.S.index(s) for s in srdI.S if s in srd.S]))
    checks = {
        "subalgebra_and_open": True,
        "dim_equal": hI.dim == sp.h.dim,
        "a_cap_h_equal": intersect(hI, g.a_space()) == intersect(sp.h, g.a_space()),
        "spherical_roots_are_I": S_I == names_of_I(I) and len(srdI.S) == len(I),
        "unimodular": unimodularity_functional(hI).is_zero(),
        "cone_identity": degeneration_wavefront(sp, srd, I),
    }
    if is_wavefront(sp, srd):
        checks["wavefront_with_a_I"] = degeneration_is_wavefront(sp, srd, I)
    doc = {"format": FORMAT, "I": names_of_I(I), "h_I": [qv(b) for b in hI.basis], "checks": checks}
    return doc, f"h_I for I = {names_of_I(I)}: dim {hI.dim}, checks {'ok' if all(checks.values()) else 'FAILED'}"


def cmd_wavefront(args):
    from .wavefront import method_a, method_b, pi_sigma, pi_sigma_formula_check, wavefront_report

    sp, srd, _ = _setup(args)
    rep = wavefront_report(sp, srd)
    g = sp.g
    doc = {
        "format": FORMAT,
        "wavefront": rep.is_wavefront,
        "method_cone_projection": method_a(sp, srd),
        "method_pi_sigma": method_b(sp, srd),
        "pi_sigma": {f"s{j + 1}": names_of_F(g, ps) for j, ps in enumerate(pi_sigma(sp, srd))},
    }
    if rep.is_wavefront:
        doc["pi_sigma_formula"] = pi_sigma_formula_check(sp, srd)
        doc["interlacing"] = [
            {"I": names_of_I(I), "J_I": names_of_F(g, J), "F_I": names_of_F(g, F), "Y_I": qv(Y), "interlaced": ok}
            for I, (J, F, Y, ok) in sorted(rep.per_I.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]
    return doc, f"wavefront: {'true' if rep.is_wavefront else 'false'}"


def cmd_induce(args):
    from .induction import induce, induced_cone_check

    sp, srd, _ = _setup(args)
    g = sp.g
    table = {v: k for k, v in simple_names(g).items()}
    F = parse_names(args.F, "a", table, "--F")
    ip = induce(sp, F)
    srdF = spherical_roots(ip.sp_F)
    doc = {
        "format": FORMAT,
        "F": names_of_F(g, F),
        "levi_labels": list(ip.g_F.labels),
        "h_F": [qv(b) for b in ip.h_F.basis],
        "induction_checks": True,
        "rank_equality": len(ip.sp_F.a_H) == len(sp.a_H),
        "cone_identity": induced_cone_check(sp, srd, F, ip),
        "induced_S": [list(c) for c in srdF.S_coords],
        "induced_unimodular": ip.unimodular,
        "modular_character": None if ip.delta_F is None else qv(ip.delta_F.coefficients),
    }
    return doc, f"Z_F for F = {doc['F']}: unimodular {ip.unimodular}, cone identity {doc['cone_identity']}"


def cmd_twists(args):
    sp, srd, _ = _setup(args)
    out = []
    for eps in sign_twists(sp, srd):
        hw = twist(sp, srd, eps)
        out.append({"basis": [list(b) for b in eps.basis], "signs": list(eps.signs), "trivial": eps.is_trivial(),
                    "equals_h": hw == sp.h, "h_twisted": [qv(b) for b in hw.basis], "verified": True})
    doc = {"format": FORMAT, "status": "candidate", "twists": out}
    return doc, f"{len(out)} sign characters, all verified"


def _cf(c):
    return [[q(a), q(b)] for a, b in zip(c.re, c.im)]


def cmd_exponents(args):
    from .exponents import embedding_pipeline, tempered_report
    from .wavefront import is_wavefront

    sp, srd, block = _setup(args)
    if args.exponents:
        with open(args.exponents, encoding="utf-8") as fh:
            try:
                block = json.load(fh)
            except json.JSONDecodeError as exc:
                raise PairFileError(f"{args.exponents}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        block = block.get("exponents", block) if isinstance(block, dict) else block
    if block is None:
        raise PairFileError("no exponent data: add an 'exponents' block or pass --exponents")
    ed = parse_exponents(block, srd)
    rep = tempered_report(sp, srd, ed)
    g = sp.g
    doc = {
        "format": FORMAT,
        "Lambda_V_eta": qv(rep.lambda_V_eta.coefficients),
        "tempered": rep.is_tempered,
        "strong_inequality": rep.strong_inequality,
        "min_eta": rep.min_eta,
        "optimal": [{"lambda": _cf(op.lam), "I": names_of_I(op.I), "mu": _cf(op.mu),
                     "Lambda_I": qv(op.Lambda_I.coefficients),
                     "F_I": None if op.F_I is None else names_of_F(g, op.F_I), "status": op.status}
                    for op in rep.per_optimal],
        "pipeline": None,
    }
    if rep.is_tempered and is_wavefront(sp, srd):
        doc["pipeline"] = [{"I": names_of_I(e.I), "F_I": names_of_F(g, e.F_I),
                            "h_prime": [qv(b) for b in e.h_prime.basis], "interlaced": True}
                           for e in embedding_pipeline(sp, srd, ed)]
    elif rep.is_tempered:
        doc["pipeline_note"] = "requires a wave-front space"
    return doc, f"tempered: {rep.is_tempered}, strong: {rep.strong_inequality}"


def cmd_catalog(args):
    if args.build:
        if args.build not in CATALOG:
            raise PairFileError(f"unknown catalog entry {args.build!r}")
        g, h, p = build(args.build)
        return pair_doc(g, h, p), f"built {args.build}"
    entries = []
    for name, e in sorted(CATALOG.items()):
        item = {"name": name, "kind": e.kind, "params": e.params, "expected": e.expected}
        if args.analyze:
            g, h, p = build(name)
            item["analysis"] = _analysis(g, h, p)[2]
        entries.append(item)
    doc = {"format": FORMAT, "entries": entries, "metadata_only": METADATA_ONLY}
    return doc, f"{len(entries)} constructible entries, {len(METADATA_ONLY)} metadata-only"


def selftest_entry(name: str, heavy: bool = True) -> Dict[str, bool]:
    """Invariant checks for one catalog entry; each value is a pass flag."""
    from .induction import hat_modular_check, induce, induced_cone_check, is_unimodular
    from .wavefront import degeneration_is_wavefront, interlacing_checks, is_wavefront, pi_sigma_formula_check

    e = CATALOG[name]
    g, h, p = build(name)
    sp = standardize(g, h, p)
    srd = spherical_roots(sp)
    uni = is_unimodular(h)
    wf = is_wavefront(sp, srd)
    res = {
        "expected_wavefront": wf == e.expected["wavefront"],
        "expected_n_S": len(srd.S) == e.expected["n_S"],
        "expected_unimodular": uni == e.expected["unimodular"],
        "expected_F_Q": len(sp.F_Q) == e.expected["F_Q"],
        "expected_rank": srd.rank == e.expected["rank"],
    }
    degen = True
    for I in subsets(range(len(srd.S))):
        hI = degenerate(sp, srd, I)
        srdI = spherical_roots(standardize(g, hI, p))
        degen &= sorted(srdI.S) == sorted(srd.S[j] for j in I)
        if uni:
            degen &= is_unimodular(hI)
        if wf:
            degen &= all(interlacing_checks(sp, srd, I, _checked=True).values())
            degen &= degeneration_is_wavefront(sp, srd, I)
    res["degenerations"] = degen
    if wf:
        res["pi_sigma_formula"] = pi_sigma_formula_check(sp, srd)
    if uni:
        res["hat_modular"] = hat_modular_check(sp, srd)
    if heavy:
        ok = True
        for F in subsets(g.rootsys.simple):
            if sp.F_Q <= F:
                ok &= induced_cone_check(sp, srd, F, induce(sp, F))
        res["induction"] = ok
    return res


def cmd_selftest(args):
    results = {name: selftest_entry(name, heavy=not args.quick) for name in sorted(CATALOG)}
    failed = sorted(f"{n}:{k}" for n, r in results.items() for k, v in r.items() if not v)
    doc = {"format": FORMAT, "results": results, "failed": failed}
    if failed:
        raise SelftestFailed(doc, failed)
    return doc, f"selftest: {len(results)} entries, all invariants hold"


class SelftestFailed(RealSphError):
    def __init__(self, doc, failed):
        super().__init__(f"selftest failures: {', '.join(failed)}")
        self.doc = doc


COMMANDS = {
    "analyze": cmd_analyze, "degenerate": cmd_degenerate, "wavefront": cmd_wavefront, "induce": cmd_induce,
    "twists": cmd_twists, "exponents": cmd_exponents, "catalog": cmd_catalog, "selftest": cmd_selftest,
}


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="realsph", description="Exact computations for real spherical pairs.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("analyze", "degenerate", "wavefront", "induce", "twists", "exponents"):
        sp = sub.add_parser(name)
        sp.add_argument("pair", help="pair file (JSON, format 1) or catalog entry name")
        if name == "degenerate":
            sp.add_argument("--I", default="", help="spherical roots, e.g. s1,s3 (empty for I = ∅)")
        if name == "induce":
            sp.add_argument("--F", default="", help="simple roots, e.g. a1,a2")
        if name == "exponents":
            sp.add_argument("--exponents", help="JSON file with the exponent block")
    c = sub.add_parser("catalog")
    c.add_argument("--build", help="emit the pair file of a catalog entry")
    c.add_argument("--analyze", action="store_true", help="include the analysis of every entry")
    s = sub.add_parser("selftest")
    s.add_argument("--quick", action="store_true", help="skip the induction checks")
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        doc, summary = COMMANDS[args.command](args)
    except PairFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SelftestFailed as exc:
        sys.stdout.write(dump(exc.doc))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RealSphError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(dump(doc))
    print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

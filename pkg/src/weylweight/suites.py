"""Aggregated invariant suites, shared by the command line and the tests.

Each suite returns a list of CheckReport objects.  ``Scale`` collects the
knobs a caller may turn; defaults are the acceptance-level sizes.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import quiverlab as ql
from .core import (WeylElement, commutator, d, psi_embed, t, theta_twist)
from .functors import (CheckReport, DShift, Gamma, GammaSlice, RootShift, TShift, certify,
                       check_intertwiner, commuting_square_check, gamma_vanishing_expected,
                       gamma_vanishing_table, localize, root_shift_pipeline)
from .modfam import (LogModule, SimpleLabel, box, parse_element, render_element,
                     support_bruteforce, support_closed_form)
from .structure import (BlockDescriptor, block_report, highest_weight_check, hom_dimension,
                        socle_layers_check, specialcase_submodule_check,
                        theta_relation_check)


@dataclass
class Scale:
    n: int = 1
    window: int = 5
    u_bound: int = 3
    k: int = 3
    max_degree: int = 6
    seed: int = 0


def _report(name: str, params: dict, failures: List[dict]) -> CheckReport:
    if failures:
        return CheckReport(name, params, "fail", failures[0])
    return CheckReport(name, params, "pass")


def _rand_rat(rng: random.Random) -> Fraction:
    while True:
        x = Fraction(rng.randint(-7, 7), rng.randint(2, 7))
        if x.denominator != 1:
            return x


# -- core ---------------------------------------------------------------------

def monomials(nvars: int, max_degree: int) -> List[WeylElement]:
    out = []
    for deg in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(2 * nvars), deg):
            p = [0] * nvars
            q = [0] * nvars
            for c in combo:
                if c < nvars:
                    p[c] += 1
                else:
                    q[c - nvars] += 1
            out.append(WeylElement.monomial(p, q))
    return out


def _degree(u: WeylElement) -> int:
    (p, q), = u.terms
    return sum(p) + sum(q)


def check_associativity(n_max: int = 2, max_degree: int = 4) -> CheckReport:
    """(ab)c = a(bc) over all monomial triples of combined degree <= max_degree.

    For one variable every triple of monomials of degree <= max_degree is used.
    """
    failures = []
    count = 0
    for n in range(n_max + 1):
        mons = monomials(n + 1, max_degree)
        deg = {id(m): _degree(m) for m in mons}
        for a in mons:
            for b in mons:
                for c in mons:
                    total = deg[id(a)] + deg[id(b)] + deg[id(c)]
                    if n > 0 and total > max_degree:
                        continue
                    count += 1
                    if (a * b) * c != a * (b * c):
                        failures.append({"n": n, "a": str(a), "b": str(b), "c": str(c)})
    return _report("weyl_associativity", {"n_max": n_max, "max_degree": max_degree,
                                          "triples": count}, failures)


def check_ccr(n_max: int = 2) -> CheckReport:
    failures = []
    for n in range(n_max + 1):
        nv = n + 1
        one = WeylElement.scalar(1, nv)
        for i in range(nv):
            for j in range(nv):
                want = one if i == j else WeylElement.zero(nv)
                if commutator(d(i, nv), t(j, nv)) != want:
                    failures.append({"n": n, "pair": ["d", i, "t", j]})
                if commutator(t(i, nv), t(j, nv)) or commutator(d(i, nv), d(j, nv)):
                    failures.append({"n": n, "pair": [i, j]})
    return _report("weyl_ccr", {"n_max": n_max}, failures)


def _theta_families(nv: int):
    fams = [[t(0, nv)], [d(0, nv)]]
    if nv > 1:
        fams += [[t(1, nv)], [t(0, nv), t(1, nv)], [d(0, nv), t(1, nv)]]
    return fams


def check_theta(seed: int = 0, samples: int = 4) -> CheckReport:
    """Homomorphism property and additivity in x of the generalized conjugation."""
    rng = random.Random(seed)
    failures = []
    for nv in (1, 2):
        elems = monomials(nv, 2)[1:]
        for F in _theta_families(nv):
            for _ in range(samples):
                x = [_rand_rat(rng) for _ in F]
                y = [_rand_rat(rng) for _ in F]
                xy = [a + b for a, b in zip(x, y)]
                for a in elems:
                    ta = theta_twist(F, x, a)
                    if theta_twist(F, x, theta_twist(F, y, a)) != theta_twist(F, xy, a):
                        failures.append({"F": [str(f) for f in F], "x": [str(v) for v in x],
                                         "y": [str(v) for v in y], "u": str(a), "law": "additive"})
                    for b in elems:
                        if theta_twist(F, x, a * b) != ta * theta_twist(F, x, b):
                            failures.append({"F": [str(f) for f in F], "x": [str(v) for v in x],
                                             "a": str(a), "b": str(b), "law": "multiplicative"})
    return _report("theta_twist", {"seed": seed, "samples": samples}, failures)


def check_theta_integer() -> CheckReport:
    """For integer x the conjugation is u -> f^x u f^-x, computed directly."""
    failures = []
    for nv in (1, 2):
        for F in _theta_families(nv):
            for m in range(-2, 3):
                for u in monomials(nv, 2)[1:]:
                    direct = u
                    for f in F:
                        fx = f ** m if m >= 0 else f.inverse() ** (-m)
                        fmx = f.inverse() ** m if m >= 0 else f ** (-m)
                        direct = fx * direct * fmx
                    if theta_twist(F, [m] * len(F), u) != direct:
                        failures.append({"F": [str(f) for f in F], "x": m, "u": str(u)})
    return _report("theta_integer", {}, failures)


def support_weights(n: int) -> Dict[str, tuple]:
    half = Fraction(1, 2)
    return {"integral": (0,) * (n + 1), "half_integral": (half,) * (n + 1),
            "mixed": tuple(half if i % 2 == 0 else 0 for i in range(n + 1))}


def check_support(n_max: int = 2, radius: int = 4) -> CheckReport:
    """Brute-force supports equal the closed form inside the window, for every simple."""
    failures = []
    cases = 0
    for n in range(n_max + 1):
        for kind, nu in support_weights(n).items():
            from .modfam import integral_indices
            ints = sorted(integral_indices(nu))
            for r in range(len(ints) + 1):
                for J in itertools.combinations(ints, r):
                    label = SimpleLabel(nu, frozenset(J))
                    lo = tuple(v - radius for v in nu)
                    hi = tuple(v + radius for v in nu)
                    brute = support_bruteforce(label, lo, hi)
                    closed = support_closed_form(label).points(lo, hi)
                    cases += 1
                    if brute != closed:
                        failures.append({"n": n, "nu": [str(v) for v in nu], "J": list(J),
                                         "extra": len(brute - closed), "missing": len(closed - brute)})
    return _report("support", {"n_max": n_max, "radius": radius, "cases": cases}, failures)


ELEMENT_FIXTURES = ["(1/2) t0^(-1/2)", "t0^(1/2) t1^-2 u0^1", "t0^2", "3 t0^(1/3) u0^2",
                    "t0^-1 t1^(2/3) + (1/5) t0^-1 t1^(2/3) u1^1"]
WEYL_FIXTURES = ["t0^2*d0^2 + 4*t0*d0 + 2", "d0 - (1/2)*t0^-1", "t0*d1 - t1*d0", "E + 2"]


def check_roundtrip() -> CheckReport:
    from .core import parse_weyl, render_weyl
    failures = []
    for text in ELEMENT_FIXTURES:
        v = parse_element(text)
        again = parse_element(render_element(v), v.owner)
        if again.terms != v.terms:
            failures.append({"element": text, "rendered": render_element(v)})
    for text in WEYL_FIXTURES:
        u = parse_weyl(text, 2)
        if parse_weyl(render_weyl(u), 2) != u:
            failures.append({"weyl": text, "rendered": render_weyl(u)})
    return _report("syntax_roundtrip", {"fixtures": len(ELEMENT_FIXTURES) + len(WEYL_FIXTURES)},
                   failures)


def core_suite(scale: Scale) -> List[CheckReport]:
    return [check_associativity(), check_ccr(), check_theta(scale.seed), check_theta_integer(),
            check_support(), check_roundtrip()]


# -- functors ---------------------------------------------------------------------

def check_gamma_table(n_values=(1, 2, 3)) -> CheckReport:
    failures = []
    for n in n_values:
        for a in range(-n - 2, 3):
            got = gamma_vanishing_table(n, a)
            want = gamma_vanishing_expected(n, a)
            if got != want:
                diff = sorted(sorted(J) for J in got if got[J] != want.get(J))
                failures.append({"n": n, "a": a, "J": diff})
    return _report("gamma_vanishing_table", {"n": list(n_values)}, failures)


def check_gamma_nonintegral(n_max: int = 3, radius: int = 3) -> CheckReport:
    """Gamma_a of the simple with no integral coordinates is nonzero when |nu| - a is an integer."""
    failures = []
    for n in range(n_max + 1):
        nu = tuple(Fraction(1, 3) if i % 2 == 0 else Fraction(1, 4) for i in range(n + 1))
        M = LogModule(n, nu)
        for shift in range(-2, 3):
            a = sum(nu) + shift
            if not GammaSlice(M, a).offsets(box(n, radius)):
                failures.append({"n": n, "a": str(a)})
    return _report("gamma_nonintegral", {"n_max": n_max}, failures)


def check_localization_clauses(n: int = 1, window: int = 5, u_bound: int = 3) -> List[CheckReport]:
    """Untwisted and twisted coordinates, both directions, x = 0 and a fractional x."""
    out = []
    nu = (Fraction(1, 4),) + (Fraction(0),) * n
    for J in itertools.chain.from_iterable(itertools.combinations(range(n + 1), r)
                                           for r in range(n + 2)):
        M = LogModule(n, nu, frozenset(J), u_bound)
        for i in range(n + 1):
            for kind in (TShift, DShift):
                for x in (Fraction(0), Fraction(1, 2)):
                    rep = certify(localize(M, kind(i, x)), window)
                    out.append(rep)
    return out


def check_root_shift(window: int = 5, u_bound: int = 3) -> List[CheckReport]:
    nu = (Fraction(1, 4), Fraction(1, 5))
    M = LogModule(1, nu, frozenset(), u_bound)
    return [certify(localize(M, RootShift(i, j, Fraction(1, 3))), window) for i, j in ((0, 1), (1, 0))]


def check_pipeline(u_bound: int = 2, window: int = 3) -> List[CheckReport]:
    mu = (Fraction(1, 3),) * 3
    nu = (Fraction(0), Fraction(0), Fraction(1))
    out = []
    for r in (1, 2):
        for J in itertools.combinations(range(3), r):
            out.append(root_shift_pipeline(mu, nu, J, u_bound=u_bound, window=window))
    return out


def negative_controls(window: int = 5) -> CheckReport:
    """Each deliberately broken certificate must fail with a witness."""
    from .homsolve import solve_hom
    from .functors import Correspondence
    M = LogModule(0, (0,), frozenset(), 3)
    loc = localize(M, DShift(0, 0))
    results = {}
    results["wrong_sign"] = check_intertwiner(loc.src, loc.dst, loc.corr.with_sign([0]), loc.F,
                                              loc.x, window)
    results["wrong_x"] = check_intertwiner(loc.src, loc.dst, loc.corr, loc.F, [Fraction(1, 2)],
                                           window)
    homs = solve_hom(loc.src, loc.dst, ((-12,), (12,)))
    worst = max(homs, key=lambda h: len(h.kernel_at((0,))))
    table = {w: {alpha[0]: {(kw[0], ka[0]): c for (kw, ka), c in img.items()}
                 for alpha, img in cols.items()} for (w,), cols in worst.blocks.items()}
    results["non_bijective"] = check_intertwiner(loc.src, loc.dst,
                                                 Correspondence(loc.src, loc.dst, [table]),
                                                 loc.F, loc.x, window)
    failures = [{"control": k, "status": r.status} for k, r in results.items()
                if r.passed or not r.witness]
    params = {"controls": {k: r.witness for k, r in results.items()}}
    return _report("negative_controls", params, failures)


def check_phi_composition(seed: int = 0, pairs: int = 20, window: int = 3) -> CheckReport:
    """Two base shifts along the same t_i equal one shift by the sum."""
    rng = random.Random(seed)
    failures = []
    for idx in range(pairs):
        n = idx % 3
        i = rng.randrange(n + 1)
        nu = tuple(_rand_rat(rng) for _ in range(n + 1))
        x, y = _rand_rat(rng), _rand_rat(rng)
        M = LogModule(n, nu, frozenset(), 1 if n == 2 else 2)
        two = localize(M, [TShift(i, x), TShift(i, y)])
        one = localize(M, TShift(i, x + y))
        if two.dst != one.dst or two.x != one.x:
            failures.append({"nu": [str(v) for v in nu], "i": i, "x": str(x), "y": str(y)})
            continue
        rep = certify(two, window)
        if not rep.passed:
            failures.append({"nu": [str(v) for v in nu], "i": i, "x": str(x), "y": str(y),
                             "witness": rep.witness})
    return _report("phi_composition", {"seed": seed, "pairs": pairs}, failures)


def check_integer_shift(window: int = 5) -> CheckReport:
    """Integer base shifts are certified by the identity on offsets."""
    failures = []
    for k in (-2, -1, 1, 2):
        M = LogModule(1, (Fraction(1, 3), Fraction(0)), frozenset(), 2)
        for i in range(2):
            loc = localize(M, TShift(i, k))
            if any(m is not None for m in loc.corr.maps):
                failures.append({"k": k, "i": i, "reason": "non-identity correspondence"})
            rep = certify(loc, window)
            if not rep.passed:
                failures.append({"k": k, "i": i, "witness": rep.witness})
    return _report("integer_shift", {}, failures)


def check_commuting_squares() -> List[CheckReport]:
    M = LogModule(1, (0, 0), frozenset(), 2)
    out = [commuting_square_check(TShift(0, Fraction(1, 2)), TShift(1, Fraction(1, 3)), M),
           commuting_square_check(TShift(0, Fraction(1, 2)), TShift(0, Fraction(1, 3)), M),
           commuting_square_check(Gamma(0), RootShift(0, 1, Fraction(1, 3)),
                                  LogModule(1, (Fraction(1, 2), Fraction(-1, 2)), frozenset(), 2))]
    return out


def functors_suite(scale: Scale) -> List[CheckReport]:
    n = min(scale.n, 1)
    out = [check_gamma_table(), check_gamma_nonintegral()]
    out += check_localization_clauses(n, scale.window, scale.u_bound)
    out += check_root_shift(scale.window, scale.u_bound)
    out += check_pipeline()
    out.append(negative_controls(scale.window))
    out.append(check_phi_composition(scale.seed))
    out.append(check_integer_shift(scale.window))
    out += check_commuting_squares()
    return out


# -- structure ---------------------------------------------------------------------

def check_psi(n_max: int = 3) -> CheckReport:
    """[psi(E_ij), psi(E_kl)] = d_jk psi(E_il) - d_li psi(E_kj)."""
    failures = []
    for n in range(1, n_max + 1):
        nv = n + 1
        idx = range(nv)
        for i, j, k, l in itertools.product(idx, idx, idx, idx):
            lhs = commutator(psi_embed(i, j, nv), psi_embed(k, l, nv))
            rhs = WeylElement.zero(nv)
            if j == k:
                rhs = rhs + psi_embed(i, l, nv)
            if l == i:
                rhs = rhs - psi_embed(k, j, nv)
            if lhs != rhs:
                failures.append({"n": n, "ijkl": [i, j, k, l]})
    return _report("psi_bracket", {"n_max": n_max}, failures)


def check_hom_dimensions(max_n: int = 4) -> CheckReport:
    failures = []
    for N in range(1, max_n + 1):
        dim = hom_dimension(LogModule(0, (Fraction(1, 2),), u_bound=N))
        if dim != N:
            failures.append({"u_bound": N, "dimension": dim})
    return _report("end_dimension", {"max_u_bound": max_n}, failures)


BLOCK_EXAMPLES = [
    ((1, (0, 0), 0), 3), ((1, (0, 0), -1), 2), ((1, (Fraction(1, 2), Fraction(-1, 2)), 0), 1),
    ((1, (0, 0), None), 4), ((2, (0, 0, 0), -2), 6),
]


def check_blocks() -> CheckReport:
    failures = []
    for (n, nu, a), count in BLOCK_EXAMPLES:
        rep = block_report(BlockDescriptor(n, nu, a))
        if len(rep["simples"]) != count:
            failures.append({"n": n, "nu": [str(v) for v in nu], "a": a, "simples": rep["simples"]})
    return _report("block_simples", {"examples": len(BLOCK_EXAMPLES)}, failures)


def specialcase_reports() -> List[CheckReport]:
    out = [specialcase_submodule_check(Fraction(1, 2)), specialcase_submodule_check(Fraction(1, 3))]
    control = specialcase_submodule_check(Fraction(1, 2), phi=lambda x: 0)
    status = "pass" if not control.passed and control.witness else "fail"
    out.append(CheckReport("specialcase_zero_phi_control", control.params, status, control.witness))
    return out


def structure_suite(scale: Scale) -> List[CheckReport]:
    out = [check_psi(), check_hom_dimensions(), check_blocks()]
    out.append(theta_relation_check(0, radius=5, u_bound=3))
    out.append(theta_relation_check(1, radius=3, u_bound=3, shared_log=True))
    out.append(socle_layers_check(LogModule(0, (0,), u_bound=2), 4))
    out.append(socle_layers_check(LogModule(0, (Fraction(1, 2),), u_bound=4), 4))
    out += specialcase_reports()
    out += [highest_weight_check(2, 1), highest_weight_check(1, 2)]
    return out


# -- quivers -----------------------------------------------------------------------

def check_path_counts(k_max: int = 3, max_degree: int = 6) -> CheckReport:
    failures = []
    for fam in ("A", "B"):
        for k in range(1, k_max + 1):
            H = ql.hilbert_matrix(ql.build_algebra(fam, k), max_degree)
            C = ql.closed_form_matrix(fam, k, max_degree)
            for l in range(max_degree + 1):
                if not (H[l] == C[l]).all():
                    failures.append({"family": fam, "k": k, "degree": l})
    return _report("path_class_counts", {"k_max": k_max, "max_degree": max_degree}, failures)


def check_confluence(seed: int = 0, k: int = 3, max_degree: int = 4) -> CheckReport:
    failures = []
    for fam in ql.FAMILIES:
        kk = k if fam != "A''" else 2
        alg = ql.build_algebra(fam, kk)
        base = ql.hilbert_matrix(alg, max_degree)
        for s in range(3):
            if not (ql.hilbert_matrix(alg.shuffled(seed * 10 + s), max_degree) == base).all():
                failures.append({"family": fam, "k": kk, "shuffle": s})
    return _report("closure_confluence", {"seed": seed}, failures)


def check_truncations(k_max: int = 3, max_degree: int = 4) -> CheckReport:
    failures = []
    for fam in ("A'", "A''", "B'", "B''"):
        for k in range(2, k_max + 1):
            if k == 2 and fam in ("A''", "B''"):
                continue
            rep = ql.truncation_check(fam, k, max_degree)
            if rep["status"] != "pass":
                failures.append(rep)
    return _report("idempotent_truncation", {"k_max": k_max, "max_degree": max_degree}, failures)


def koszul_reports(max_degree: int = 6) -> List[CheckReport]:
    out = []
    for fam in ("A", "B"):
        for k in (2, 3):
            rep = ql.koszul_numeric_check(ql.build_algebra(fam, k), max_degree)
            out.append(CheckReport("koszul_numeric", {"algebra": rep["algebra"],
                                                      "max_degree": max_degree},
                                   rep["status"], None if rep["status"] == "pass" else rep))
    control = ql.koszul_numeric_check(ql.drop_one_square("A", 3), max_degree)
    ok = control["status"] == "fail" and control["failing_degree"] <= 4
    out.append(CheckReport("koszul_negative_control", {"algebra": "A(3) minus one square"},
                           "pass" if ok else "fail", control))
    return out


def check_duals() -> CheckReport:
    failures = []
    for k in (2, 3):
        a_dual = ql.relation_patterns(ql.quadratic_dual(ql.build_algebra("A", k)))
        if not (a_dual["anticommute"] and a_dual["squares_zero"]):
            failures.append({"algebra": f"A({k})", "dual": a_dual})
        qp = ql.quadratic_part(ql.build_algebra("B", k))
        b = ql.relation_patterns(ql.renormalized(qp))
        if not (b["anticommute"] and b["squares_equal"]):
            failures.append({"algebra": f"B({k})", "renormalized": b})
        b_dual = ql.relation_patterns(ql.renormalized(ql.orthogonal_complement(qp)))
        if not (b_dual["commute"] and b_dual["square_sum"]):
            failures.append({"algebra": f"B({k})", "renormalized_dual": b_dual})
    qp = ql.quadratic_part(ql.build_algebra("A", 2))
    twice = ql.orthogonal_complement(ql.orthogonal_complement(qp))
    if not (twice.dimensions(4) == qp.dimensions(4)).all():
        failures.append({"algebra": "A(2)", "reason": "double dual differs"})
    return _report("quadratic_duals", {}, failures)


def wild_reports(k_max: int = 4) -> List[CheckReport]:
    out = []
    for fam in ql.FAMILIES:
        for k in range(1, k_max + 1):
            try:
                ql.build_algebra(fam, k)
            except ql.QuiverError:
                continue
            rep = ql.wild_witness(fam, k)
            status = "pass" if rep["status"] in ("pass", "tame") else rep["status"]
            if rep["status"] == "fail" and (fam, k) in KNOWN_GAPS:
                status = "unattainable"
                rep = dict(rep, explanation=KNOWN_GAPS[(fam, k)])
            out.append(CheckReport("wild_witness", {"family": fam, "k": k}, status, rep))
    return out


KNOWN_GAPS = {
    ("A", 2): "every two-colour path of length 2 shares its class with the path around the other "
              "side of the square, so killing a vertex kills the composite and keeping it keeps a "
              "fourth idempotent; no quotient is the free path algebra of a wild quiver",
}


def tame_reports(max_dim: int = 8) -> List[CheckReport]:
    out = []
    for case in ("a", "b"):
        rep = ql.tame_report(case, max_dim)
        out.append(CheckReport("tame_indecomposables", {"case": case, "max_dim": max_dim},
                               rep["status"], None if rep["status"] == "pass" else rep))
    return out


def quiver_suite(scale: Scale) -> List[CheckReport]:
    k = min(max(scale.k, 2), 3)
    out = [check_path_counts(k, scale.max_degree), check_confluence(scale.seed, k),
           check_truncations(k), check_duals()]
    out += koszul_reports(scale.max_degree)
    out += wild_reports()
    out += tame_reports()
    return out


SUITES: Dict[str, Callable[[Scale], List[CheckReport]]] = {
    "core": core_suite, "functors": functors_suite, "structure": structure_suite,
    "quiver": quiver_suite,
}


def run(names: List[str], scale: Optional[Scale] = None) -> Dict[str, List[CheckReport]]:
    scale = scale or Scale()
    return {name: SUITES[name](scale) for name in names}

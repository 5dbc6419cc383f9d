"""Blocks, endomorphisms and the sl(n+1)-side checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .core import d, psi_embed, rat, t
from .functors import CheckReport, GammaSlice
from .homsolve import HomSolution, WindowTooSmall, least_kernel, solve_hom
from .modfam import (Key, LogModule, ModElement, SimpleLabel, act, act_raw,
                     integral_indices, list_simples, parse_weight)

__all__ = [
    "BlockDescriptor", "block_simples", "block_report", "endo_z", "solve_hom",
    "theta_relation_check", "socle_layers_check", "sl_action",
    "specialcase_submodule_check", "highest_weight_check", "HomSolution",
    "hom_dimension", "quiver_family", "level_subsets", "gamma_nonzero", "theta_pair",
]


# -- blocks -----------------------------------------------------------------

@dataclass(frozen=True)
class BlockDescriptor:
    """A block: rank n, level a (None for the plain D-category), a weight representative.

    ``semisimple`` selects the variant where the extra Cartan part acts
    semisimply (weight rather than generalized weight modules).
    """

    n: int
    nu: Tuple[Fraction, ...]
    a: Optional[Fraction] = None
    semisimple: bool = False

    def __post_init__(self):
        object.__setattr__(self, "nu", parse_weight(self.nu))
        if self.a is not None:
            object.__setattr__(self, "a", rat(self.a))
        if len(self.nu) != self.n + 1:
            raise ValueError(f"nu needs {self.n + 1} coordinates")

    @property
    def nonzero(self) -> bool:
        return self.a is None or (sum(self.nu) - self.a).denominator == 1


def gamma_nonzero(label: SimpleLabel, a: Fraction) -> bool:
    """Whether Gamma_a of the simple module is nonzero, by enumerating its realization."""
    n = label.n
    radius = int(abs(a)) + int(sum(abs(v) for v in label.nu)) + n + 3
    sl = GammaSlice(label.realization(), rat(a))
    return bool(sl.offsets(((-radius,) * (n + 1), (radius,) * (n + 1))))


def level_subsets(n: int, a: int) -> List[frozenset]:
    """The index sets labelling simples at level a for integral nu.

    a >= 0: proper subsets; -n-1 < a < 0: proper nonempty subsets;
    a <= -n-1: complements of the proper subsets, transported by tau.
    """
    full = frozenset(range(n + 1))
    subsets = [frozenset(J) for r in range(n + 2) for J in itertools.combinations(range(n + 1), r)]
    if a >= 0:
        return [J for J in subsets if J != full]
    if a > -n - 1:
        return [J for J in subsets if J and J != full]
    return sorted((full - J for J in level_subsets(n, -n - 1 - a)), key=lambda s: (len(s), sorted(s)))


def block_simples(b: BlockDescriptor) -> List[SimpleLabel]:
    """Simple modules of the block, as labels S_nu(J)."""
    if b.a is None:
        return list_simples(b.nu)
    if not b.nonzero:
        return []
    ints = integral_indices(b.nu)
    if len(ints) == b.n + 1:
        shift = sum(b.nu)
        return [SimpleLabel(b.nu, J) for J in level_subsets(b.n, int(b.a - shift))]
    return [lab for lab in list_simples(b.nu) if gamma_nonzero(lab, b.a)]


def quiver_family(b: BlockDescriptor) -> Tuple[Optional[str], Optional[int]]:
    """Name and rank of the quiver algebra whose nilpotent representations model the block."""
    k = len(integral_indices(b.nu))
    letter = "B" if b.semisimple else "A"
    if b.a is None:
        return (letter, k) if k else (None, None)
    if k != b.n + 1 or not b.nonzero:
        return (None, None)
    level = int(b.a - sum(b.nu))
    if level <= -b.n - 1:
        level = -b.n - 1 - level
    return (letter + ("'" if level >= 0 else "''"), b.n + 1)


def block_report(b: BlockDescriptor) -> dict:
    fam, k = quiver_family(b)
    return {
        "n": b.n,
        "a": None if b.a is None else str(b.a),
        "nu": [str(v) for v in b.nu],
        "simples": [lab.to_json() for lab in block_simples(b)],
        "quiver_family": fam,
        "k": k,
    }


# -- endomorphisms -----------------------------------------------------------

def endo_z(i: int, M: LogModule, bounds=None, power: int = 1) -> HomSolution:
    """The central endomorphism z (or its power) on the basis of M.

    z is d/du_i on an untwisted coordinate and -d/du_i on a twisted one, so
    that it commutes with the maps theta between the two.
    """
    bounds = bounds or M.window
    if bounds is None:
        raise ValueError("endo_z needs an offset box")
    idx = 0 if M.shared_log else i
    sign = -1 if (i in M.J and not M.shared_log) else 1
    blocks = {}
    for w in M.offsets(bounds):
        cols = {}
        for alpha in M.log_exponents():
            k = alpha[idx]
            if k < power:
                cols[alpha] = {}
                continue
            coef = Fraction(sign) ** power
            for j in range(power):
                coef *= k - j
            a2 = list(alpha)
            a2[idx] -= power
            cols[alpha] = {(w, tuple(a2)): coef}
        blocks[w] = cols
    return HomSolution(M, M, tuple(bounds), blocks)


def identity_map(M: LogModule, bounds) -> HomSolution:
    return HomSolution(M, M, tuple(bounds), {
        w: {a: {(w, a): Fraction(1)} for a in M.log_exponents()} for w in M.offsets(bounds)})


def _restrict(h: HomSolution, bounds) -> HomSolution:
    keep = set(h.src.offsets(bounds))
    return HomSolution(h.src, h.dst, tuple(bounds), {w: c for w, c in h.blocks.items() if w in keep})


def _same_map(a: HomSolution, b: HomSolution, bounds) -> bool:
    for w in a.src.offsets(bounds):
        for alpha in a.src.log_exponents():
            if a.blocks[w].get(alpha, {}) != b.blocks[w].get(alpha, {}):
                return False
    return True


def _z_coordinates(h: HomSolution, zs: List[HomSolution], bounds) -> Optional[List[Fraction]]:
    """Coefficients c with h = sum c_k z^k on ``bounds``, or None."""
    cols = []
    rows_idx: Dict = {}
    for zk in zs:
        vec = {}
        for w in h.src.offsets(bounds):
            for alpha, img in zk.blocks[w].items():
                for key, c in img.items():
                    vec[rows_idx.setdefault((w, alpha, key), len(rows_idx))] = c
        cols.append(vec)
    target = {}
    for w in h.src.offsets(bounds):
        for alpha, img in h.blocks[w].items():
            for key, c in img.items():
                target[rows_idx.setdefault((w, alpha, key), len(rows_idx))] = c
    rows = [{} for _ in range(len(rows_idx))]
    for j, vec in enumerate(cols):
        for r, c in vec.items():
            rows[r][j] = c
    rhs = [target.get(r, Fraction(0)) for r in range(len(rows_idx))]
    sol = linalg.solve(rows, rhs, len(zs))
    if sol is None:
        return None
    return [sol.get(j, Fraction(0)) for j in range(len(zs))]


def _series_inverse(c: List[Fraction], length: int) -> List[Fraction]:
    """Coefficients of 1/(c_0 + c_1 z + ...) up to z^(length-1)."""
    inv = [Fraction(0)] * length
    inv[0] = 1 / c[0]
    for k in range(1, length):
        s = sum((c[j] * inv[k - j] for j in range(1, min(k, len(c) - 1) + 1)), Fraction(0))
        inv[k] = -s / c[0]
    return inv


def _z_poly(M: LogModule, i: int, coeffs: List[Fraction], bounds) -> HomSolution:
    pairs = [(coeffs[0], identity_map(M, bounds))]
    for k, c in enumerate(coeffs[1:], start=1):
        if c:
            pairs.append((c, endo_z(i, M, bounds, k)))
    return HomSolution.combine(pairs)


def theta_pair(n: int, i: int, u_bound: int, radius: int, shared_log: bool = False):
    """theta^+ : F_0^log -> twist at i, theta^- back, normalized so theta^- theta^+ = z.

    Returns (plus, minus, A, B, inner box).
    """
    nu = (0,) * (n + 1)
    A = LogModule(n, nu, frozenset(), u_bound, shared_log=shared_log)
    B = LogModule(n, nu, frozenset({i}), u_bound, shared_log=shared_log)
    bounds = ((-radius,) * (n + 1), (radius,) * (n + 1))
    inner = ((-radius + 1,) * (n + 1), (radius - 1,) * (n + 1))
    probe = (0,) * (n + 1)
    homs_ab = solve_hom(A, B, bounds)
    homs_ba = solve_hom(B, A, bounds)
    if not homs_ab or not homs_ba:
        raise WindowTooSmall("no nonzero maps between the two modules on this window")
    plus = least_kernel(homs_ab, probe)
    minus = least_kernel(homs_ba, probe)
    comp = _restrict(minus.compose(plus), inner)
    zs = [identity_map(A, inner)] + [endo_z(i, A, inner, k) for k in range(1, u_bound)]
    coeffs = _z_coordinates(comp, zs, inner)
    if coeffs is None or coeffs[0] != 0 or (u_bound > 1 and coeffs[1] == 0):
        raise ValueError(f"theta^- theta^+ is not z times a unit: {coeffs}")
    unit = coeffs[1:] + [Fraction(0)]
    inv = _series_inverse(unit, u_bound)
    minus = _z_poly(A, i, inv, bounds).compose(minus)
    return plus, minus, A, B, inner


def theta_relation_check(n: int = 0, radius: int = 5, u_bound: int = 3,
                         shared_log: bool = False) -> CheckReport:
    """theta^- theta^+ = z and theta^+ theta^- = z, kernels, and the idempotent algebra.

    For n > 0 this runs once per coordinate (theta_i), each against
    F_0^log; with ``shared_log`` this is the weight-module variant.
    """
    params = {"n": n, "radius": radius, "u_bound": u_bound, "shared_log": shared_log,
              "degenerate": u_bound < 3}
    for i in range(n + 1):
        plus, minus, A, B, inner = theta_pair(n, i, u_bound, radius, shared_log)
        zA = endo_z(i, A, inner)
        zB = endo_z(i, B, inner)
        mp = _restrict(minus.compose(plus), inner)
        pm = _restrict(plus.compose(minus), inner)
        if not _same_map(mp, zA, inner):
            return CheckReport("theta_relation", params, "fail", {"coordinate": i, "stage": "minus o plus"})
        if not _same_map(pm, zB, inner):
            return CheckReport("theta_relation", params, "fail", {"coordinate": i, "stage": "plus o minus"})
        # theta^+ kills exactly the vectors free of u_i whose t_i exponent is >= 0
        idx = 0 if shared_log else i
        free = [a for a in A.log_exponents() if a[idx] == 0]
        for w in A.offsets(inner):
            ker = plus.kernel_at(w)
            want = free if w[i] >= 0 else []
            if len(ker) != len(want) or any(set(v) - set(want) for v in ker):
                return CheckReport("theta_relation", params, "fail",
                                   {"coordinate": i, "stage": "kernel", "offset": list(w)})
        rep = _idempotent_check(plus, minus, zA, zB, inner)
        if rep is not None:
            rep.params = params
            return rep
    return CheckReport("theta_relation", params, "pass")


def _idempotent_check(plus, minus, zA, zB, inner) -> Optional[CheckReport]:
    """On R = A + B: e+ + e- = 1, e^2 = e, e+e- = 0, theta = theta+ + theta-, theta^2 = z."""
    A, B = plus.src, plus.dst
    keys = [("A", k) for k in A.basis(inner)] + [("B", k) for k in B.basis(inner)]

    def e_plus(v):
        return {k: c for k, c in v.items() if k[0] == "A"}

    def e_minus(v):
        return {k: c for k, c in v.items() if k[0] == "B"}

    def theta(v):
        out = {}
        a = {k[1]: c for k, c in v.items() if k[0] == "A"}
        b = {k[1]: c for k, c in v.items() if k[0] == "B"}
        for k, c in plus.apply_raw(a).items():
            out[("B", k)] = out.get(("B", k), 0) + c
        for k, c in minus.apply_raw(b).items():
            out[("A", k)] = out.get(("A", k), 0) + c
        return {k: c for k, c in out.items() if c}

    def z(v):
        out = {}
        for side, h in (("A", zA), ("B", zB)):
            for k, c in h.apply_raw({k[1]: c for k, c in v.items() if k[0] == side}).items():
                out[(side, k)] = c
        return out

    def add(u, v):
        out = dict(u)
        for k, c in v.items():
            out[k] = out.get(k, 0) + c
        return {k: c for k, c in out.items() if c}

    inner_set = set(A.offsets(inner))
    for key in keys:
        v = {key: Fraction(1)}
        if add(e_plus(v), e_minus(v)) != v:
            return CheckReport("theta_relation", {}, "fail", {"stage": "e+ + e- != 1"})
        if e_plus(e_plus(v)) != e_plus(v) or e_minus(e_minus(v)) != e_minus(v):
            return CheckReport("theta_relation", {}, "fail", {"stage": "e not idempotent"})
        if e_plus(e_minus(v)) or e_minus(e_plus(v)):
            return CheckReport("theta_relation", {}, "fail", {"stage": "e+ e- != 0"})
        if theta(e_plus(v)) != e_minus(theta(v)):
            return CheckReport("theta_relation", {}, "fail", {"stage": "theta e+ != e- theta"})
        tv = theta(v)
        if all(k[1][0] in inner_set for k in tv) and theta(tv) != z(v):
            return CheckReport("theta_relation", {}, "fail", {"stage": "theta^2 != z"})
    return None


def hom_dimension(M: LogModule, radius: int = 4) -> int:
    """dim End(M) on the box [-radius, radius]."""
    n1 = M.nvars
    return len(solve_hom(M, M, ((-radius,) * n1, (radius,) * n1)))


# -- socle layers -------------------------------------------------------------

def _layer_predicate(integral: bool, j: int):
    """Membership of a one-variable key (w, (k,)) in layer j."""
    if not integral:
        return lambda w, k: k < j
    i, odd = divmod(j, 2)
    if odd:
        return lambda w, k: k < i or (k == i and w >= 0)
    return lambda w, k: k < i


def socle_layers_check(M: LogModule, depth: int, radius: int = 6) -> CheckReport:
    """Check the predicted socle layers of a one-variable F^log module.

    Integral nu: L_{2i} = C[t^{+-1}] u^{<i}, L_{2i+1} = L_{2i} + C[t] u^i.
    Nonintegral nu: L_k = u^{<k}, which is also ker z^k.  Each layer must
    be a submodule and each quotient must have the weight pattern of the
    predicted simple.
    """
    params = {"module": M.label(), "depth": depth, "radius": radius}
    if M.n != 0 or M.J or M.poly or M.shared_log:
        raise ValueError("socle layers are checked on one-variable untwisted F^log modules")
    integral = M.nu[0].denominator == 1
    needed = (depth + 1) // 2 if integral else depth
    if needed > M.u_bound or (integral and depth > 2 * M.u_bound):
        raise ValueError(f"depth {depth} needs u_bound >= {needed}")
    bounds = ((-radius,), (radius,))
    inner = ((-radius + 1,), (radius - 1,))
    gens = [t(0, 1), d(0, 1)]
    layers = [_layer_predicate(integral, j) for j in range(depth + 1)]
    shift = int(M.nu[0]) if integral else 0  # offset w with exponent >= 0 is w >= -nu
    for j in range(1, depth + 1):
        inside = layers[j]
        for w in range(inner[0][0], inner[1][0] + 1):
            for k in range(M.u_bound):
                if not inside(w + shift, k):
                    continue
                for g in gens:
                    for (w2, a2) in act_raw(g, M, {((w,), (k,)): Fraction(1)}):
                        if not inside(w2[0] + shift, a2[0]):
                            return CheckReport("socle_layers", params, "fail",
                                               {"layer": j, "offset": w, "u": k, "generator": str(g)})
        # quotient L_j / L_{j-1}: one vector per weight, on the predicted support
        prev = layers[j - 1]
        for w in range(inner[0][0], inner[1][0] + 1):
            count = sum(1 for k in range(M.u_bound) if inside(w + shift, k) and not prev(w + shift, k))
            if integral:
                plus_side = j % 2 == 1
                expected = int((w + shift >= 0) == plus_side)
            else:
                expected = 1
            if count != expected:
                return CheckReport("socle_layers", params, "fail",
                                   {"layer": j, "offset": w, "dim": count, "expected": expected})
        if not integral:
            # the layer is exactly ker z^j
            zj = endo_z(0, M, bounds, j)
            for w in range(inner[0][0], inner[1][0] + 1):
                ker = zj.kernel_at((w,))
                if sorted(k for vec in ker for (k,) in vec) != [k for k in range(min(j, M.u_bound))]:
                    return CheckReport("socle_layers", params, "fail", {"layer": j, "stage": "ker z^k"})
    return CheckReport("socle_layers", params, "pass")


# -- sl(n+1) side ----------------------------------------------------------------

def sl_action(i: int, j: int, v: ModElement) -> ModElement:
    """E_ij . v through t_i d_j."""
    return act(psi_embed(i, j, v.owner.nvars), v)


def _phi_values(c: Fraction, xs: Sequence[Fraction]) -> Dict[Fraction, Fraction]:
    """phi with phi(c) = 0 and phi(x+1) = phi(x) - 1/(x+1)."""
    out = {c: Fraction(0)}
    up, val = c, Fraction(0)
    while up < max(xs):
        val -= 1 / (up + 1)
        up += 1
        out[up] = val
    down, val = c, Fraction(0)
    while down > min(xs):
        val += 1 / down
        down -= 1
        out[down] = val
    return out


def specialcase_submodule_check(c, points: int = 8, phi=None) -> CheckReport:
    """The span of w_x = t0^x t1^(-1-x) (log(t0 t1) + phi(x)) is sl(2)-stable.

    ``phi`` overrides the correction term (a callable on x); the default
    solves the recurrence with phi(c) = 0.
    """
    c = rat(c)
    if c.denominator == 1:
        raise ValueError("c must not be an integer")
    M = LogModule(1, (c, -1 - c), frozenset(), 2)
    ms = list(range(-(points // 2), points - points // 2))
    xs = [c + m for m in ms]
    values = _phi_values(c, xs) if phi is None else {x: rat(phi(x)) for x in xs}
    params = {"c": str(c), "points": points, "x": [str(x) for x in xs],
              "phi": "recurrence" if phi is None else "custom"}

    def w_vec(m: int) -> ModElement:
        x = c + m
        off = (m, -m)
        return M.element({(off, (1, 0)): 1, (off, (0, 1)): 1, (off, (0, 0)): values[x]})

    coeffs = {"E01": [], "E10": [], "H": []}
    h = t(0, 2) * d(0, 2) - t(1, 2) * d(1, 2)
    for m in ms:
        x = c + m
        v = w_vec(m)
        checks = [("H", act(h, v), m)]
        if m + 1 in ms:
            checks.append(("E01", sl_action(0, 1, v), m + 1))
        if m - 1 in ms:
            checks.append(("E10", sl_action(1, 0, v), m - 1))
        for name, img, m2 in checks:
            target = w_vec(m2)
            key = ((m2, -m2), (1, 0))
            lam = img.terms.get(key, Fraction(0))
            if img != target * lam:
                return CheckReport("specialcase_submodule", params, "fail",
                                   {"x": str(x), "operator": name, "image": str(img)})
            coeffs[name].append([str(x), str(lam)])
    params["coefficients"] = coeffs
    return CheckReport("specialcase_submodule", params, "pass")


def highest_weight_check(a: int, n: int) -> CheckReport:
    """t_0^a spans the highest weight line of the degree-a polynomials and generates them."""
    params = {"a": a, "n": n}
    nv = n + 1
    M = LogModule(n, (0,) * nv, frozenset(), 1, poly=frozenset(range(nv)))
    top = M.at_exponent([a] + [0] * n)
    for i in range(nv):
        for j in range(i + 1, nv):
            if sl_action(i, j, top):
                return CheckReport("highest_weight", params, "fail", {"raising": [i, j]})
    for i in range(nv):
        img = act(t(i, nv) * d(i, nv), top)
        expected = a if i == 0 else 0
        if img != top * expected:
            return CheckReport("highest_weight", params, "fail", {"cartan": i})
    lowering = [(i, j) for i in range(nv) for j in range(i)]
    ech = linalg.Echelon()
    index: Dict[Key, int] = {}

    def vec(v: ModElement):
        return {index.setdefault(k, len(index)): c for k, c in v.terms.items()}

    frontier = [top]
    ech.add(vec(top))
    while frontier:
        nxt = []
        for v in frontier:
            for i, j in lowering:
                img = sl_action(i, j, v)
                if img and ech.add(vec(img)):
                    nxt.append(img)
        frontier = nxt
    expected = comb(a + n, n)
    params["dimension"] = len(ech)
    if len(ech) != expected:
        return CheckReport("highest_weight", params, "fail", {"dimension": len(ech), "expected": expected})
    return CheckReport("highest_weight", params, "pass")

"""Gamma_a and the twisted localizations on the F^log family.

A localization is produced as a closed-form target module together with
an explicit correspondence ``c: src -> dst``.  The correspondence is
certified on a window by ``check_intertwiner``:

* (H) g . c(f^K m) = c(cleared(g) m), where cleared(g) = Theta_F^{-x}(g) f^K
  is the twisted generator with its denominators cleared;
* (T) the kernel of c is the F-torsion of src;
* (B) every f in F acts bijectively on dst;
* (S) every vector of dst lands in the image of c after applying some f^k.

Together these say that c induces an isomorphism from the localization
of src, twisted by Theta_F^{-x}, onto dst.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .core import WeylElement, binom, commutator, d, euler_degree, rat, t
from .homsolve import WindowTooSmall, least_kernel, solve_hom
from .modfam import (Key, LogModule, ModElement, Offset, SimpleLabel, act_raw,
                     render_key)


# -- descriptors ----------------------------------------------------------

@dataclass(frozen=True)
class FunctorDescriptor:
    """One of Gamma(a), TShift(i, x), DShift(i, x), RootShift(i, j, x), SigmaTwist(J)."""

    kind: str
    i: Optional[int] = None
    j: Optional[int] = None
    x: Fraction = Fraction(0)
    J: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "x", rat(self.x))
        if self.kind == "root" and self.i == self.j:
            raise ValueError("RootShift needs i != j")
        if self.kind not in ("gamma", "tshift", "dshift", "root", "sigma"):
            raise ValueError(f"unknown functor kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "gamma":
            return f"Gamma({self.x})"
        if self.kind == "tshift":
            return f"TShift({self.i},{self.x})"
        if self.kind == "dshift":
            return f"DShift({self.i},{self.x})"
        if self.kind == "root":
            return f"RootShift({self.i},{self.j},{self.x})"
        return f"SigmaTwist({sorted(self.J)})"

    def generator(self, nvars: int) -> WeylElement:
        """The element f that is inverted."""
        if self.kind == "tshift":
            return t(self.i, nvars)
        if self.kind == "dshift":
            return d(self.i, nvars)
        if self.kind == "root":
            return t(self.i, nvars) * d(self.j, nvars)
        raise ValueError(f"{self} is not a localization")


def Gamma(a) -> FunctorDescriptor:
    return FunctorDescriptor("gamma", x=rat(a))


def TShift(i: int, x) -> FunctorDescriptor:
    return FunctorDescriptor("tshift", i=i, x=rat(x))


def DShift(i: int, x) -> FunctorDescriptor:
    return FunctorDescriptor("dshift", i=i, x=rat(x))


def RootShift(i: int, j: int, x) -> FunctorDescriptor:
    return FunctorDescriptor("root", i=i, j=j, x=rat(x))


def SigmaTwist(J: Iterable[int]) -> FunctorDescriptor:
    return FunctorDescriptor("sigma", J=frozenset(J))


def target_module(M: LogModule, desc: FunctorDescriptor) -> LogModule:
    """Closed-form image of F_nu^log(J) under a localization or sigma twist."""
    nu = list(M.nu)
    J = set(M.J)
    if desc.kind == "tshift":
        nu[desc.i] += desc.x
        J.discard(desc.i)
    elif desc.kind == "dshift":
        nu[desc.i] -= desc.x
        J.add(desc.i)
    elif desc.kind == "root":
        return target_module(target_module(M, DShift(desc.j, desc.x)), TShift(desc.i, desc.x))
    elif desc.kind == "sigma":
        J ^= set(desc.J)
    else:
        raise ValueError("Gamma is not a family map; use gamma_a")
    if M.poly or M.shared_log:
        raise ValueError("localization is only implemented on the full F^log family")
    return M.with_(nu=tuple(nu), J=frozenset(J), window=None)


# -- Gamma_a --------------------------------------------------------------

@dataclass(frozen=True)
class GammaSlice:
    """Gamma_a(M): the span of basis keys with E-eigenvalue ``a``."""

    module: LogModule
    a: Fraction

    @property
    def allowed(self) -> bool:
        return (sum(self.module.nu) - self.a).denominator == 1

    def contains(self, key: Key) -> bool:
        return self.module.e_value(key) == self.a

    def offsets(self, bounds) -> List[Offset]:
        """Offsets of the slice inside ``bounds``; the last coordinate is solved for."""
        M = self.module
        if not self.allowed:
            return []
        lo, hi = bounds
        target = self.a - sum(M.nu)
        axes = [_allowed_range(M, i, lo[i], hi[i]) for i in range(M.n)]
        last = _allowed_range(M, M.n, lo[M.n], hi[M.n])
        last_set = set(last)
        out = []
        for head in itertools.product(*axes):
            w_last = int(target) - sum(head)
            if w_last in last_set:
                out.append(tuple(head) + (w_last,))
        return out

    def basis(self, bounds) -> List[Key]:
        alphas = self.module.log_exponents()
        return [(w, a) for w in self.offsets(bounds) for a in alphas]

    def act(self, u: WeylElement, v: ModElement) -> ModElement:
        deg = euler_degree(u)
        if deg != 0:
            raise ValueError(f"{u} does not preserve E-eigenspaces")
        from .modfam import act
        return act(u, v)


def _allowed_range(M: LogModule, i: int, a: int, b: int) -> List[int]:
    if i in M.poly:
        return [w for w in range(a, b + 1) if M.exponent(i, w) >= 0]
    return list(range(a, b + 1))


def gamma_a(M: LogModule, a) -> GammaSlice:
    return GammaSlice(M, rat(a))


def centralizer_generators(nvars: int) -> List[WeylElement]:
    """t_k d_l for all k, l: generators of the E-centralizer acting on a slice."""
    return [t(k, nvars) * d(l, nvars) for k in range(nvars) for l in range(nvars)]


def gamma_vanishing_table(n: int, a) -> Dict[frozenset, bool]:
    """J -> True when Gamma_a(S_0(J)) is nonzero, by enumerating the realization."""
    a = rat(a)
    radius = int(abs(a)) + n + 2
    table = {}
    for r in range(n + 2):
        for J in itertools.combinations(range(n + 1), r):
            M = SimpleLabel((0,) * (n + 1), frozenset(J)).realization()
            sl = GammaSlice(M, a)
            table[frozenset(J)] = bool(sl.offsets(((-radius,) * (n + 1), (radius,) * (n + 1))))
    return table


def gamma_vanishing_expected(n: int, a: int) -> Dict[frozenset, bool]:
    """The three-clause rule: which Gamma_a(S_0(J)) are nonzero."""
    full = frozenset(range(n + 1))
    out = {}
    for r in range(n + 2):
        for J in itertools.combinations(range(n + 1), r):
            J = frozenset(J)
            if a >= 0:
                zero = J == full
            elif a > -n - 1:
                zero = J == full or not J
            else:
                zero = not J
            out[J] = not zero
    return out


# -- correspondences ------------------------------------------------------

OneDimMap = Dict[int, Dict[int, Dict[Tuple[int, int], Fraction]]]  # w -> k -> {(w', k'): c}


@lru_cache(maxsize=None)
def flip_map(nu_i: Fraction, src_twisted: bool, dst_twisted: bool, u_bound: int,
             radius: int) -> OneDimMap:
    """One-variable map between the untwisted and twisted modules at label nu_i.

    This is the least-kernel solution of the Hom system: for nonintegral
    nu_i an isomorphism, for integral nu_i a map whose kernel is the
    polynomial part C[t] (or its twisted image).
    """
    src = LogModule(0, (nu_i,), frozenset({0}) if src_twisted else frozenset(), u_bound)
    dst = LogModule(0, (nu_i,), frozenset({0}) if dst_twisted else frozenset(), u_bound)
    bounds = ((-radius,), (radius,))
    if src_twisted == dst_twisted:
        return {w: {k: {(w, k): Fraction(1)}} for w in range(-radius, radius + 1)
                for k in range(u_bound)}
    h = least_kernel(solve_hom(src, dst, bounds), (0,))
    out: OneDimMap = {}
    for (w,), cols in h.blocks.items():
        out[w] = {}
        for (k,), img in cols.items():
            out[w][k] = {(kw[0], ka[0]): c for (kw, ka), c in img.items()}
    return out


@dataclass
class Correspondence:
    """Linear map src -> dst, acting coordinate by coordinate.

    ``maps[i]`` is None for the identity on keys, or a one-variable table.
    Composite correspondences chain several of these.
    """

    src: LogModule
    dst: LogModule
    maps: List[Optional[OneDimMap]]
    before: Optional["Correspondence"] = None
    sign_offsets: Tuple[int, ...] = ()

    def _apply_key(self, key: Key) -> Dict[Key, Fraction]:
        w, alpha = key
        factors = []
        for i, m in enumerate(self.maps):
            if m is None:
                factors.append([(w[i], alpha[i], Fraction(1))])
            else:
                if w[i] not in m:
                    raise WindowTooSmall(f"offset {w[i]} outside the flip table of coordinate {i}")
                factors.append([(w2, k2, c) for (w2, k2), c in m[w[i]].get(alpha[i], {}).items()])
        out: Dict[Key, Fraction] = {}
        for combo in itertools.product(*factors):
            c = Fraction(1)
            for _, _, ci in combo:
                c *= ci
            nw = tuple(x[0] for x in combo)
            na = tuple(x[1] for x in combo)
            if sum(na) >= self.dst.u_bound:
                raise ValueError("correspondence raised the u-degree past the truncation")
            for i in self.sign_offsets:
                if nw[i] % 2:
                    c = -c
            out[(nw, na)] = out.get((nw, na), 0) + c
        return out

    def apply_raw(self, vec: Dict[Key, Fraction]) -> Dict[Key, Fraction]:
        if self.before is not None:
            vec = self.before.apply_raw(vec)
        out: Dict[Key, Fraction] = {}
        for key, c in vec.items():
            for k2, v in self._apply_key(key).items():
                out[k2] = out.get(k2, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def then(self, other: "Correspondence") -> "Correspondence":
        """other o self."""
        return Correspondence(self.src, other.dst, other.maps, before=self._rooted(other),
                              sign_offsets=other.sign_offsets)

    def _rooted(self, other: "Correspondence") -> "Correspondence":
        if other.before is None:
            return self
        return self.then(other.before)

    def with_sign(self, coords: Sequence[int]) -> "Correspondence":
        """Same map followed by (-1)^{w_i} on the listed coordinates (a negative control)."""
        return Correspondence(self.src, self.dst, self.maps, self.before, tuple(coords))


@dataclass
class Localization:
    """Closed-form target plus the data needed to certify it.

    ``F`` and ``x`` are the inverted elements and the functor parameters;
    the correspondence intertwines the action twisted by Theta_F^{-x}.
    """

    src: LogModule
    dst: LogModule
    F: List[WeylElement]
    x: List[Fraction]
    corr: Correspondence
    steps: List[FunctorDescriptor] = field(default_factory=list)


def _single(M: LogModule, desc: FunctorDescriptor, radius: int) -> Localization:
    n1 = M.nvars
    dst = target_module(M, desc)
    maps: List[Optional[OneDimMap]] = [None] * n1
    if desc.kind == "root":
        first = _single(M, DShift(desc.j, desc.x), radius)
        second = _single(first.dst, TShift(desc.i, desc.x), radius)
        corr = first.corr.then(second.corr)
        return Localization(M, second.dst, [desc.generator(n1)], [desc.x], corr, [desc])
    if desc.kind in ("tshift", "dshift"):
        i = desc.i
        want_twisted = desc.kind == "dshift"
        if (i in M.J) != want_twisted:
            maps[i] = flip_map(M.nu[i], i in M.J, want_twisted, M.u_bound, radius)
        corr = Correspondence(M, dst, maps)
        return Localization(M, dst, [desc.generator(n1)], [desc.x], corr, [desc])
    if desc.kind == "sigma":
        corr = Correspondence(M, dst, maps, sign_offsets=tuple(sorted(M.J & desc.J)))
        return Localization(M, dst, [], [], corr, [desc])
    raise ValueError(f"{desc} is not a localization")


def localize(M: LogModule, desc: FunctorDescriptor | Sequence[FunctorDescriptor],
             radius: int = 24) -> Localization:
    """Apply one descriptor, or a list applied left to right (first element first)."""
    descs = [desc] if isinstance(desc, FunctorDescriptor) else list(desc)
    if not descs:
        raise ValueError("empty functor list")
    cur = _single(M, descs[0], radius)
    for nxt in descs[1:]:
        step = _single(cur.dst, nxt, radius)
        F, x = list(cur.F), list(cur.x)
        for f, xv in zip(step.F, step.x):
            if f in F:
                x[F.index(f)] += xv
            else:
                F.append(f)
                x.append(xv)
        cur = Localization(M, step.dst, F, x, cur.corr.then(step.corr), cur.steps + step.steps)
    return cur


# -- certification --------------------------------------------------------

@dataclass
class CheckReport:
    check: str
    params: dict
    status: str
    witness: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"check": self.check, "params": self.params, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _ad_order(f: WeylElement, g: WeylElement, bound: int = 32) -> int:
    k = 0
    cur = g
    while cur:
        cur = commutator(f, cur)
        k += 1
        if k > bound:
            raise ValueError(f"ad({f}) is not nilpotent on {g}")
    return k - 1


def cleared_twist(F: Sequence[WeylElement], x: Sequence, g: WeylElement,
                  K: Sequence[int]) -> WeylElement:
    """Theta_F^x(g) * prod f_j^K_j, expanded without any inverse."""
    terms = [(Fraction(1), g, ())]
    for f, xj, Kj in zip(reversed(F), reversed(list(x)), reversed(list(K))):
        nxt = []
        for c, elem, expo in terms:
            cur, i = elem, 0
            while cur:
                if i > Kj:
                    raise ValueError(f"K={Kj} too small to clear ad({f})")
                b = binom(xj, i)
                if b:
                    nxt.append((c * b, cur, (Kj - i,) + expo))
                cur = commutator(f, cur)
                i += 1
        terms = nxt
    out = WeylElement.zero(g.nvars)
    for c, elem, expo in terms:
        term = elem
        for f, e in zip(F, expo):
            term = term * (f ** e)
        out = out + c * term
    return out


def _power_product(F: Sequence[WeylElement], K: Sequence[int], nvars: int) -> WeylElement:
    out = WeylElement.scalar(1, nvars)
    for f, k in zip(F, K):
        out = out * (f ** k)
    return out


def _step(f: WeylElement) -> Offset:
    (p, q), = f.terms
    return tuple(a - b for a, b in zip(p, q))


def _interior(bounds, margin: int):
    lo, hi = bounds
    return tuple(a + margin for a in lo), tuple(b - margin for b in hi)


def _span_rank(vectors: List[Dict]) -> int:
    keys = {}
    rows = []
    for v in vectors:
        rows.append({keys.setdefault(k, len(keys)): c for k, c in v.items()})
    return linalg.rank(rows)


def _same_subspace(a: List[Dict], b: List[Dict]) -> bool:
    ra, rb = _span_rank(a), _span_rank(b)
    return ra == rb == _span_rank(a + b)


def _kernel(vectors: Dict[Key, Dict[Key, Fraction]]) -> List[Dict[Key, Fraction]]:
    """Kernel of the linear map key -> image, as combinations of keys."""
    keys = sorted(vectors)
    targets = {}
    rows_by_target: Dict[int, Dict[int, Fraction]] = {}
    for ci, k in enumerate(keys):
        for tk, c in vectors[k].items():
            r = targets.setdefault(tk, len(targets))
            rows_by_target.setdefault(r, {})[ci] = c
    null = linalg.nullspace(list(rows_by_target.values()), len(keys))
    return [{keys[i]: c for i, c in v.items()} for v in null]


def check_intertwiner(src: LogModule, dst: LogModule, corr: Correspondence,
                      F: Sequence[WeylElement], x: Sequence, window: int,
                      gens: Optional[Sequence[WeylElement]] = None,
                      slice_a: Optional[Fraction] = None, name: str = "intertwiner",
                      structural: bool = True) -> CheckReport:
    """Certify that ``corr`` realizes D_F^x src = dst on the box [-window, window].

    ``x`` are the functor parameters; the source action is twisted by
    Theta_F^{-x}.  With ``slice_a`` only keys of E-eigenvalue a are used
    and ``gens`` should generate the E-centralizer.
    """
    nvars = src.nvars
    x = [rat(v) for v in x]
    if gens is None:
        gens = [g for i in range(nvars) for g in (t(i, nvars), d(i, nvars))]
    params = {"src": src.label(), "dst": dst.label(), "F": [str(f) for f in F],
              "x": [str(v) for v in x], "window": window}
    if slice_a is not None:
        params["a"] = str(slice_a)
    bounds = ((-window,) * nvars, (window,) * nvars)
    K = [max([_ad_order(f, g) for g in gens] + [0]) for f in F]
    margin = max([sum(K)] + [0]) + 1
    inner = _interior(bounds, margin)
    if any(a > b for a, b in zip(*inner)):
        raise WindowTooSmall(f"window {window} leaves no interior with margin {margin}")
    fK = _power_product(F, K, nvars)

    def keys_in(module, box):
        if slice_a is not None:
            return GammaSlice(module, slice_a).basis(box)
        return module.basis(box)

    def fail(kind, key, g=None, extra=None):
        w = {"stage": kind, "key": render_key(src if kind in ("H", "T") else dst, key),
             "weight": [str(v) for v in (src if kind in ("H", "T") else dst).weight(key)]}
        if g is not None:
            w["generator"] = str(g)
        if extra:
            w.update(extra)
        return CheckReport(name, params, "fail", w)

    src_keys = keys_in(src, inner)
    # (H) twisted intertwining
    cleared = [cleared_twist(F, [-v for v in x], g, K) for g in gens]
    for key in src_keys:
        base = {key: Fraction(1)}
        shifted = corr.apply_raw(act_raw(fK, src, base))
        for g, cg in zip(gens, cleared):
            lhs = act_raw(g, dst, shifted)
            rhs = corr.apply_raw(act_raw(cg, src, base))
            if lhs != rhs:
                return fail("H", key, g)
    if not structural or not F:
        return CheckReport(name, params, "pass")
    # (T) kernel of corr equals F-torsion, offset by offset
    by_offset: Dict[Offset, List[Key]] = {}
    for key in src_keys:
        by_offset.setdefault(key[0], []).append(key)
    depth = window + src.u_bound + 2
    torsion_op = _power_product(F, [depth] * len(F), nvars)
    for w, keys in sorted(by_offset.items()):
        ker_c = _kernel({k: corr.apply_raw({k: Fraction(1)}) for k in keys})
        ker_f = _kernel({k: act_raw(torsion_op, src, {k: Fraction(1)}) for k in keys})
        if not _same_subspace(ker_c, ker_f):
            return fail("T", keys[0], extra={"kernel_dim": len(ker_c), "torsion_dim": len(ker_f)})
    # (B) each f bijective on dst; (S) saturation
    dst_keys = keys_in(dst, inner)
    dst_by_offset: Dict[Offset, List[Key]] = {}
    for key in dst_keys:
        dst_by_offset.setdefault(key[0], []).append(key)
    for f in F:
        for w, keys in sorted(dst_by_offset.items()):
            imgs = [act_raw(f, dst, {k: Fraction(1)}) for k in keys]
            if _span_rank(imgs) != len(keys):
                return fail("B", keys[0], f)
            if slice_a is None and len(dst.log_exponents()) != len(keys):
                return fail("B", keys[0], f)
    sat_depth = src.u_bound + 1
    sat_op = _power_product(F, [sat_depth] * len(F), nvars)
    total_step = [0] * nvars
    for f in F:
        for i, s in enumerate(_step(f)):
            total_step[i] += s * sat_depth
    for w, keys in sorted(dst_by_offset.items()):
        w_src = tuple(a + b for a, b in zip(w, total_step))
        src_at = [(w_src, a) for a in src.log_exponents() if src.allows_offset(w_src)]
        try:
            image = [corr.apply_raw({k: Fraction(1)}) for k in src_at]
        except WindowTooSmall:
            raise WindowTooSmall("flip tables too small for the saturation check; raise radius")
        for k in keys:
            v = act_raw(sat_op, dst, {k: Fraction(1)})
            if _span_rank(image + [v]) != _span_rank(image):
                return fail("S", k)
    return CheckReport(name, params, "pass")


def certify(loc: Localization, window: int = 5, **kw) -> CheckReport:
    """check_intertwiner on the data of a Localization."""
    name = kw.pop("name", " o ".join(str(s) for s in loc.steps))
    return check_intertwiner(loc.src, loc.dst, loc.corr, loc.F, loc.x, window, name=name, **kw)


def commuting_square_check(d1: FunctorDescriptor, d2: FunctorDescriptor, M: LogModule,
                           window: int = 4) -> CheckReport:
    """d1 then d2 versus d2 then d1: equal closed-form targets, both certified.

    A Gamma descriptor in either slot is handled by restricting the
    certification to the E-eigenvalue slice.
    """
    params = {"d1": str(d1), "d2": str(d2), "module": M.label()}
    gam = [dd for dd in (d1, d2) if dd.kind == "gamma"]
    locs = [dd for dd in (d1, d2) if dd.kind != "gamma"]
    if gam:
        a = gam[0].x
        loc = localize(M, locs)
        if sum(loc.src.nu) != sum(loc.dst.nu):
            return CheckReport("commuting_square", params, "fail",
                               {"reason": "localization changes the E-eigenvalue"})
        inner = _interior(((-window,) * M.nvars, (window,) * M.nvars), 2)
        for key in GammaSlice(loc.src, a).basis(inner):
            for k2 in loc.corr.apply_raw({key: Fraction(1)}):
                if loc.dst.e_value(k2) != a:
                    return CheckReport("commuting_square", params, "fail",
                                       {"key": render_key(loc.src, key)})
        rep = certify(loc, window, gens=centralizer_generators(M.nvars), slice_a=a,
                      structural=False, name="commuting_square")
        rep.params = params
        return rep
    first = localize(M, [d1, d2])
    second = localize(M, [d2, d1])
    if first.dst != second.dst:
        return CheckReport("commuting_square", params, "fail",
                           {"d1d2": first.dst.label(), "d2d1": second.dst.label()})
    for loc in (first, second):
        rep = certify(loc, window)
        if not rep.passed:
            rep.params = params
            return rep
    return CheckReport("commuting_square", params, "pass")


# -- the spanning system behind composite root shifts ----------------------

def spanning_pairs(n: int, J: Iterable[int]) -> List[Tuple[int, int]]:
    """(i_1, j_s) for every j_s in J and (i_r, j_1) for the other i_r."""
    J = sorted(J)
    I = [i for i in range(n + 1) if i not in J]
    if not J or not I:
        raise ValueError("J must be a proper nonempty subset")
    pairs = [(I[0], j) for j in J] + [(i, J[0]) for i in I[1:]]
    return sorted(pairs)


def root_shift_parameters(mu: Sequence, nu: Sequence, J: Iterable[int]) -> Dict[Tuple[int, int], Fraction]:
    """Solve sum_j z(i,j) = nu_i - mu_i, sum_i z(i,j) = mu_j - nu_j on the spanning pairs."""
    mu = [rat(v) for v in mu]
    nu = [rat(v) for v in nu]
    if sum(mu) != sum(nu):
        raise ValueError("mu and nu must have the same coordinate sum")
    n = len(mu) - 1
    J = sorted(J)
    pairs = spanning_pairs(n, J)
    col = {p: c for c, p in enumerate(pairs)}
    rows, rhs = [], []
    for i in range(n + 1):
        if i in J:
            rows.append({col[p]: Fraction(1) for p in pairs if p[1] == i})
            rhs.append(mu[i] - nu[i])
        else:
            rows.append({col[p]: Fraction(1) for p in pairs if p[0] == i})
            rhs.append(nu[i] - mu[i])
    sol = linalg.solve(rows, rhs, len(pairs))
    if sol is None:
        raise ValueError("inconsistent root-shift system")
    return {p: sol.get(c, Fraction(0)) for p, c in col.items()}


def root_shift_pipeline(mu: Sequence, nu: Sequence, J: Iterable[int], u_bound: int = 2,
                        window: int = 3) -> CheckReport:
    """Compose RootShift(i, j, z(i,j)) on F_mu^log and certify the result is F_nu^log(J)."""
    mu = tuple(rat(v) for v in mu)
    nu = tuple(rat(v) for v in nu)
    J = frozenset(J)
    n = len(mu) - 1
    z = root_shift_parameters(mu, nu, J)
    pairs = sorted(z)
    params = {"mu": [str(v) for v in mu], "nu": [str(v) for v in nu], "J": sorted(J),
              "S_J": [list(p) for p in pairs], "z": [str(z[p]) for p in pairs]}
    covered_i = {p[0] for p in pairs}
    covered_j = {p[1] for p in pairs}
    if len(pairs) != n or covered_j != set(J) or covered_i != set(range(n + 1)) - set(J):
        return CheckReport("root_shift_pipeline", params, "fail", {"reason": "S_J conditions"})
    M = LogModule(n, mu, frozenset(), u_bound)
    loc = localize(M, [RootShift(i, j, z[(i, j)]) for i, j in pairs])
    want = LogModule(n, nu, J, u_bound)
    if loc.dst != want:
        return CheckReport("root_shift_pipeline", params, "fail", {"target": loc.dst.label()})
    rep = certify(loc, window, name="root_shift_pipeline")
    rep.params = params
    return rep

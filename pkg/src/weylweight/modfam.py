"""Truncated realizations of the modules F_nu^log(J) and their simple quotients.

A basis vector is a key ``(w, alpha)``: ``w`` is the integer offset of its
weight from the label ``nu`` and ``alpha`` the exponents of the logarithms
u_i = log t_i.  The weight of ``(w, alpha)`` is always ``nu + w``; what
changes with the twist is the underlying exponent of t_i,

    e_i = nu_i + w_i            for i not in J,
    e_i = -nu_i - w_i - 1       for i in J,

because on a twisted coordinate t_i acts through d_i and d_i through -t_i,
which turns the t_i d_i eigenvalue e into -e-1.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .core import LocalizationError, WeylElement, rat

Weight = Tuple[Fraction, ...]
Offset = Tuple[int, ...]
Key = Tuple[Offset, Tuple[int, ...]]


class WindowOverflow(ValueError):
    """An action produced a basis vector outside the module's offset window."""


def parse_weight(text: str | Sequence) -> Weight:
    """``"1/2,0"`` or a sequence of rationals -> tuple of Fractions."""
    if isinstance(text, str):
        text = [s for s in text.replace(" ", "").split(",") if s]
    return tuple(rat(x) for x in text)


def integral_indices(nu: Sequence[Fraction]) -> FrozenSet[int]:
    """Int(nu): coordinates of nu that are integers."""
    return frozenset(i for i, v in enumerate(nu) if Fraction(v).denominator == 1)


def fmt_rat(x: Fraction, paren_negative_int: bool = False) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"({x})"


def box(n: int, radius: int) -> Tuple[Offset, Offset]:
    return (tuple([-radius] * (n + 1)), tuple([radius] * (n + 1)))


@dataclass(frozen=True)
class LogModule:
    """Truncation of F_nu^log(J) keeping u-monomials of total degree < u_bound.

    ``poly`` lists coordinates restricted to underlying exponents >= 0 (the
    C[t_i] factor of a simple module); it needs integral nu_i and
    ``u_bound == 1``.  ``shared_log`` replaces the separate u_i by one
    logarithm u, the sum of u_i over untwisted coordinates minus the sum
    over twisted ones; this is the part on which the differences
    t_i d_i - t_j d_j act semisimply.  ``window`` is an offset box
    ``(lo, hi)``; results leaving it raise WindowOverflow.
    """

    n: int
    nu: Weight
    J: FrozenSet[int] = frozenset()
    u_bound: int = 1
    window: Optional[Tuple[Offset, Offset]] = None
    poly: FrozenSet[int] = frozenset()
    shared_log: bool = False

    def __post_init__(self):
        object.__setattr__(self, "nu", parse_weight(self.nu))
        object.__setattr__(self, "J", frozenset(self.J))
        object.__setattr__(self, "poly", frozenset(self.poly))
        if len(self.nu) != self.n + 1:
            raise ValueError(f"nu has {len(self.nu)} coordinates, expected {self.n + 1}")
        if not self.J <= set(range(self.n + 1)):
            raise ValueError(f"J={sorted(self.J)} not inside 0..{self.n}")
        if self.u_bound < 1:
            raise ValueError("u_bound must be >= 1")
        if not self.poly <= integral_indices(self.nu):
            raise ValueError("polynomial coordinates need integral nu_i")
        if self.poly and self.u_bound != 1:
            raise ValueError("polynomial coordinates are only supported with u_bound 1")
        if self.window is not None:
            lo, hi = (tuple(int(v) for v in self.window[0]), tuple(int(v) for v in self.window[1]))
            if len(lo) != self.n + 1 or len(hi) != self.n + 1 or any(a > b for a, b in zip(lo, hi)):
                raise ValueError(f"bad window {self.window}")
            object.__setattr__(self, "window", (lo, hi))

    # -- descriptors --------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.n + 1

    @property
    def n_logs(self) -> int:
        return 1 if self.shared_log else self.n + 1

    def with_(self, **changes) -> "LogModule":
        data = dict(n=self.n, nu=self.nu, J=self.J, u_bound=self.u_bound, window=self.window,
                    poly=self.poly, shared_log=self.shared_log)
        data.update(changes)
        return LogModule(**data)

    def label(self) -> dict:
        return {"n": self.n, "nu": [str(v) for v in self.nu], "J": sorted(self.J),
                "u_bound": self.u_bound}

    def exponent(self, i: int, w_i: int) -> Fraction:
        """Underlying exponent of t_i on a basis vector with offset w_i."""
        return -self.nu[i] - w_i - 1 if i in self.J else self.nu[i] + w_i

    def offset_of_exponent(self, i: int, e: Fraction) -> int:
        w = -e - self.nu[i] - 1 if i in self.J else e - self.nu[i]
        if Fraction(w).denominator != 1:
            raise ValueError(f"exponent {e} is not in the coset of coordinate {i}")
        return int(w)

    def weight(self, key: Key) -> Weight:
        return tuple(v + m for v, m in zip(self.nu, key[0]))

    def e_value(self, key: Key) -> Fraction:
        """Eigenvalue of E on the weight space of ``key``."""
        return sum(self.weight(key), Fraction(0))

    def log_exponents(self) -> List[Tuple[int, ...]]:
        """All alpha with |alpha| < u_bound, sorted by degree then lexicographically."""
        out = []
        for deg in range(self.u_bound):
            for combo in itertools.combinations_with_replacement(range(self.n_logs), deg):
                alpha = [0] * self.n_logs
                for c in combo:
                    alpha[c] += 1
                out.append(tuple(alpha))
        return sorted(out, key=lambda a: (sum(a), tuple(-x for x in a)))

    def allows_offset(self, w: Offset) -> bool:
        return all(self.exponent(i, w[i]) >= 0 for i in self.poly)

    def in_window(self, w: Offset) -> bool:
        if self.window is None:
            return True
        lo, hi = self.window
        return all(a <= x <= b for a, x, b in zip(lo, w, hi))

    def offsets(self, bounds: Optional[Tuple[Offset, Offset]] = None) -> Iterator[Offset]:
        bounds = bounds or self.window
        if bounds is None:
            raise ValueError("an offset box is needed to enumerate an infinite module")
        lo, hi = bounds
        for w in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if self.allows_offset(w):
                yield w

    def basis(self, bounds: Optional[Tuple[Offset, Offset]] = None) -> List[Key]:
        alphas = self.log_exponents()
        return [(w, a) for w in self.offsets(bounds) for a in alphas]

    # -- elements -----------------------------------------------------
    def element(self, terms: Dict[Key, object]) -> "ModElement":
        return ModElement(self, {(tuple(w), tuple(a)): rat(c) for (w, a), c in terms.items()})

    def monomial(self, w: Sequence[int], alpha: Optional[Sequence[int]] = None,
                 coef=1) -> "ModElement":
        alpha = tuple(alpha) if alpha is not None else (0,) * self.n_logs
        if sum(alpha) >= self.u_bound:
            raise ValueError(f"u-degree {sum(alpha)} not below u_bound {self.u_bound}")
        if not self.allows_offset(tuple(w)):
            raise ValueError(f"offset {tuple(w)} outside the polynomial part")
        return ModElement(self, {(tuple(w), alpha): rat(coef)})

    def zero(self) -> "ModElement":
        return ModElement(self, {})

    def at_exponent(self, e: Sequence, alpha: Optional[Sequence[int]] = None, coef=1) -> "ModElement":
        """Basis vector with underlying monomial t^e u^alpha."""
        return self.monomial([self.offset_of_exponent(i, rat(x)) for i, x in enumerate(e)],
                             alpha, coef)


class ModElement:
    """A finite linear combination of basis keys of a LogModule."""

    __slots__ = ("owner", "terms")

    def __init__(self, owner: LogModule, terms: Dict[Key, Fraction]):
        self.owner = owner
        self.terms = {k: Fraction(v) for k, v in terms.items() if v}

    def __add__(self, other: "ModElement") -> "ModElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ModElement(self.owner, out)

    def __neg__(self) -> "ModElement":
        return ModElement(self.owner, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "ModElement") -> "ModElement":
        return self + (-other)

    def __mul__(self, c) -> "ModElement":
        c = rat(c)
        return ModElement(self.owner, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ModElement) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"ModElement({render_element(self)})"

    def __str__(self) -> str:
        return render_element(self)

    def u_degree(self) -> int:
        return max((sum(a) for _, a in self.terms), default=-1)


# -- the action ---------------------------------------------------------

def _shift(key: Key, i: int, step: int) -> Key:
    w = list(key[0])
    w[i] += step
    return (tuple(w), key[1])


def _lower_alpha(key: Key, idx: int) -> Key:
    a = list(key[1])
    a[idx] -= 1
    return (key[0], tuple(a))


def _mult_t(M: LogModule, i: int, vec: Dict[Key, Fraction], power: int) -> Dict[Key, Fraction]:
    """Underlying multiplication by t_i^power (power may be negative)."""
    step = -power if i in M.J else power
    out = {}
    for key, c in vec.items():
        nk = _shift(key, i, step)
        if i in M.poly and M.exponent(i, nk[0][i]) < 0:
            raise LocalizationError(f"t{i}^{power} leaves the polynomial part")
        out[nk] = c
    return out


def _diff(M: LogModule, i: int, vec: Dict[Key, Fraction]) -> Dict[Key, Fraction]:
    """Underlying derivative d/dt_i, with d/dt_i u = 1/t_i."""
    step = 1 if i in M.J else -1
    log_idx = 0 if M.shared_log else i
    # the shared logarithm is sum over untwisted u_i minus sum over twisted u_i
    sign = -1 if M.shared_log and i in M.J else 1
    out: Dict[Key, Fraction] = {}
    for key, c in vec.items():
        e = M.exponent(i, key[0][i])
        nk = _shift(key, i, step)
        if e:
            out[nk] = out.get(nk, 0) + c * e
        k = key[1][log_idx]
        if k:
            lk = _lower_alpha(nk, log_idx)
            out[lk] = out.get(lk, 0) + c * k * sign
    return {k: v for k, v in out.items() if v}


def _apply_t(M: LogModule, i: int, vec, power: int):
    if power == 0:
        return vec
    if i in M.J:
        # t_i acts as the underlying derivative
        if power < 0:
            raise LocalizationError(f"t{i} is not inverted on a twisted coordinate")
        for _ in range(power):
            vec = _diff(M, i, vec)
        return vec
    return _mult_t(M, i, vec, power)


def _apply_d(M: LogModule, i: int, vec, power: int):
    if power == 0:
        return vec
    if i in M.J:
        # d_i acts as -t_i
        sign = -1 if power % 2 else 1
        return {k: sign * c for k, c in _mult_t(M, i, vec, power).items()}
    if power < 0:
        raise LocalizationError(f"d{i} is not inverted on an untwisted coordinate")
    for _ in range(power):
        vec = _diff(M, i, vec)
    return vec


def act_raw(u: WeylElement, M: LogModule, vec: Dict[Key, Fraction]) -> Dict[Key, Fraction]:
    """Action on a plain coefficient table, with no window check."""
    if u.nvars != M.nvars:
        raise ValueError(f"operator on {u.nvars} variables, module on {M.nvars}")
    out: Dict[Key, Fraction] = {}
    for (p, q), c in u.terms.items():
        cur = dict(vec)
        for i in range(M.nvars):
            cur = _apply_d(M, i, cur, q[i])
        for i in range(M.nvars):
            cur = _apply_t(M, i, cur, p[i])
        for k, v in cur.items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def act(u: WeylElement, v: ModElement) -> ModElement:
    """u . v, raising WindowOverflow if the result leaves the owner's window."""
    M = v.owner
    out = act_raw(u, M, v.terms)
    for (w, _a) in out:
        if not M.in_window(w):
            raise WindowOverflow(f"offset {w} outside window {M.window}")
    return ModElement(M, out)


# -- weight spaces and supports -----------------------------------------

def weight_space(M: LogModule, lam: Sequence) -> List[ModElement]:
    """Basis of the generalized weight space of weight ``lam``."""
    lam = parse_weight(lam)
    w = []
    for x, v in zip(lam, M.nu):
        d = x - v
        if d.denominator != 1:
            return []
        w.append(int(d))
    w = tuple(w)
    if not M.in_window(w):
        raise WindowOverflow(f"weight {lam} outside window {M.window}")
    if not M.allows_offset(w):
        return []
    return [M.monomial(w, a) for a in M.log_exponents()]


def weight_multiplicities(M: LogModule, bounds=None) -> List[dict]:
    """JSON-ready table ``[{"weight": [...], "dim": k}]`` over an offset box."""
    dim = len(M.log_exponents())
    return [{"weight": [str(x) for x in M.weight((w, ()))], "dim": dim} for w in M.offsets(bounds)]


@dataclass(frozen=True)
class SimpleLabel:
    """S_nu(J) with J inside Int(nu)."""

    nu: Weight
    J: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "nu", parse_weight(self.nu))
        object.__setattr__(self, "J", frozenset(self.J))
        if not self.J <= integral_indices(self.nu):
            raise ValueError(f"J={sorted(self.J)} is not inside Int(nu)={sorted(integral_indices(self.nu))}")

    @property
    def n(self) -> int:
        return len(self.nu) - 1

    def realization(self, window=None) -> LogModule:
        """C[t_i] factors on Int(nu), twisted on J, and t^nu_i C[t_i^{+-1}] elsewhere."""
        return LogModule(self.n, self.nu, self.J, 1, window, poly=integral_indices(self.nu))

    def to_json(self) -> dict:
        return {"J": sorted(self.J)}


@dataclass(frozen=True)
class SupportDescription:
    """Per-coordinate description of a support: ``("neg",)``, ``("nonneg",)`` or ``("coset", c)``."""

    coords: Tuple[tuple, ...]

    def contains(self, lam: Sequence) -> bool:
        for (kind, *rest), x in zip(self.coords, parse_weight(lam)):
            if kind == "neg" and not (x.denominator == 1 and x < 0):
                return False
            if kind == "nonneg" and not (x.denominator == 1 and x >= 0):
                return False
            if kind == "coset" and (x - rest[0]).denominator != 1:
                return False
        return True

    def points(self, lo: Sequence, hi: Sequence) -> set:
        """All weights of the support inside the box ``lo <= lambda <= hi``."""
        axes = []
        for (kind, *rest), a, b in zip(self.coords, lo, hi):
            base = rest[0] if kind == "coset" else Fraction(0)
            frac = base - (base.numerator // base.denominator)
            vals = [frac + k for k in range(int(a) - 1, int(b) + 2) if a <= frac + k <= b]
            if kind == "neg":
                vals = [v for v in vals if v < 0]
            elif kind == "nonneg":
                vals = [v for v in vals if v >= 0]
            axes.append(vals)
        return set(itertools.product(*axes))

    def __str__(self) -> str:
        parts = []
        for i, (kind, *rest) in enumerate(self.coords):
            if kind == "neg":
                parts.append(f"Z<0*e{i}")
            elif kind == "nonneg":
                parts.append(f"Z>=0*e{i}")
            else:
                c = rest[0] - (rest[0].numerator // rest[0].denominator)
                parts.append(f"({c}+Z)*e{i}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [[k, *(str(r) for r in rest)] for k, *rest in self.coords]


def support_closed_form(label: SimpleLabel) -> SupportDescription:
    """Support of S_nu(J) read off coordinate by coordinate."""
    ints = integral_indices(label.nu)
    coords = []
    for i, v in enumerate(label.nu):
        if i in label.J:
            coords.append(("neg",))
        elif i in ints:
            coords.append(("nonneg",))
        else:
            coords.append(("coset", v))
    return SupportDescription(tuple(coords))


def support_bruteforce(label: SimpleLabel, lo: Sequence, hi: Sequence) -> set:
    """Weights in the box with a nonzero weight space, read off the realization.

    Enumerates underlying monomials t^e over a box of exponents, computes
    each weight by acting with t_i d_i, and keeps those landing in the box.
    """
    from .core import d, t

    M = label.realization()
    lo, hi = parse_weight(lo), parse_weight(hi)
    reach = int(max(max(abs(x) for x in lo), max(abs(x) for x in hi))) + 2
    found = set()
    ranges = [[v + k for k in range(-reach - 1, reach + 2)] for v in label.nu]
    for e in itertools.product(*ranges):
        if any(e[i] < 0 for i in M.poly):
            continue
        vec = M.at_exponent(e)
        lam = []
        for i in range(M.nvars):
            image = act(t(i, M.nvars) * d(i, M.nvars), vec)
            if not image:
                lam.append(Fraction(0))
                continue
            (k, c), = image.terms.items()
            assert k == next(iter(vec.terms))
            lam.append(c)
        lam = tuple(lam)
        if all(a <= x <= b for a, x, b in zip(lo, lam, hi)):
            found.add(lam)
    return found


def list_simples(nu: Sequence) -> List[SimpleLabel]:
    """One simple per subset of Int(nu), ordered by size then lexicographically."""
    nu = parse_weight(nu)
    ints = sorted(integral_indices(nu))
    out = []
    for r in range(len(ints) + 1):
        for J in itertools.combinations(ints, r):
            out.append(SimpleLabel(nu, frozenset(J)))
    return out


def log_multiplicity(n: int, u_bound: int, shared_log: bool = False) -> int:
    """Number of u-monomials of degree < u_bound."""
    logs = 1 if shared_log else n + 1
    return comb(u_bound - 1 + logs, logs)


# -- text form ------------------------------------------------------------

def _fmt_exp(e: Fraction) -> str:
    e = Fraction(e)
    return str(e.numerator) if e.denominator == 1 else f"({e})"


def render_key(M: LogModule, key: Key) -> str:
    w, alpha = key
    parts = [f"t{i}^{_fmt_exp(M.exponent(i, w[i]))}" for i in range(M.nvars)]
    for idx, k in enumerate(alpha):
        if k:
            parts.append(f"u^{k}" if M.shared_log else f"u{idx}^{k}")
    return " ".join(parts)


def _key_order(M: LogModule):
    return lambda item: (tuple(item[0][0]), tuple(-a for a in item[0][1]))


def render_element(v: ModElement) -> str:
    """Text like ``(1/2) t0^(-1/2)`` or ``t0^(1/2) t1^-2 u0^1``."""
    if not v.terms:
        return "0"
    M = v.owner
    out = []
    for idx, (key, c) in enumerate(sorted(v.terms.items(), key=_key_order(M))):
        a = abs(c)
        body = render_key(M, key)
        if a != 1:
            body = f"{fmt_rat(a)} {body}"
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_ELEM_TERM = re.compile(r"\s*([+-])?\s*(?:\((-?\d+(?:/\d+)?)\)|(\d+(?:/\d+)?))?\s*((?:[tu]\d*\^(?:\(-?\d+(?:/\d+)?\)|-?\d+)\s*)*)")
_ELEM_FACTOR = re.compile(r"([tu])(\d*)\^(?:\((-?\d+(?:/\d+)?)\)|(-?\d+))")


def parse_element_terms(text: str) -> List[Tuple[Fraction, Dict[int, Fraction], Dict[int, int]]]:
    """Split element text into (coef, t-exponents, u-exponents) triples."""
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _ELEM_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element text at {text[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2) or m.group(3) or 1) * sign
        texp: Dict[int, Fraction] = {}
        uexp: Dict[int, int] = {}
        for f in _ELEM_FACTOR.finditer(m.group(4) or ""):
            idx = int(f.group(2)) if f.group(2) else -1
            val = Fraction(f.group(3) or f.group(4))
            if f.group(1) == "t":
                texp[idx] = texp.get(idx, 0) + val
            else:
                uexp[idx] = uexp.get(idx, 0) + int(val)
        out.append((coef, texp, uexp))
    return out


def parse_element(text: str, M: Optional[LogModule] = None, n: Optional[int] = None) -> ModElement:
    """Parse element text; without ``M`` an untwisted module is inferred.

    The inferred module has nu equal to the t-exponents of the first term
    and u_bound one more than the largest u-degree present.
    """
    terms = parse_element_terms(text)
    if M is None:
        idx = [i for _, te, ue in terms for i in list(te) + [j for j in ue if j >= 0]]
        nn = n if n is not None else (max(idx) if idx else 0)
        nu = tuple(terms[0][1].get(i, Fraction(0)) for i in range(nn + 1))
        shared = any(-1 in ue for _, _, ue in terms)
        ub = max(sum(ue.values()) for _, _, ue in terms) + 1
        M = LogModule(nn, nu, frozenset(), ub, shared_log=shared)
    out = M.zero()
    for coef, te, ue in terms:
        e = [te.get(i, Fraction(0)) for i in range(M.nvars)]
        alpha = [0] * M.n_logs
        for j, k in ue.items():
            alpha[0 if j < 0 else j] += k
        out = out + M.at_exponent(e, alpha, coef)
    return out

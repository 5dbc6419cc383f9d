"""The Weyl algebra D(n+1) in normal-ordered form.

Elements are finite sums of monomials ``t^p d^q`` (all t's to the left of
all d's) with exact rational coefficients.  A coordinate may be localized
at t_i (negative t-exponents allowed) or at d_i (negative d-exponents
allowed), never both.

Besides the product this module provides the adjoint action, the
generalized conjugation ``theta_twist``, the coordinate swaps sigma_J and
tau, the embedding of sl(n+1) and the Euler grading.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Sequence, Tuple, Union

Rat = Fraction
Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]
Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    """Operands live in Weyl algebras with different numbers of variables."""


class LocalizationError(ValueError):
    """An exponent needs an inverse that is not available."""


class TwistError(ValueError):
    """Generalized conjugation was requested outside its supported range."""


def rat(x) -> Fraction:
    """Parse ``x`` (int, Fraction, or a string such as ``"-2/3"``) exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return Fraction(x)


def binom(x: Scalar, i: int) -> Fraction:
    """Generalized binomial coefficient x(x-1)...(x-i+1)/i!."""
    if i < 0:
        return Fraction(0)
    num = Fraction(1)
    x = rat(x)
    for k in range(i):
        num *= x - k
    return num / factorial(i)


def falling(x: Scalar, k: int) -> Fraction:
    out = Fraction(1)
    for j in range(k):
        out *= rat(x) - j
    return out


def _commute_dt(q: int, r: int) -> List[Tuple[Fraction, int, int]]:
    """Normal-order ``d^q t^r`` in one variable: list of (coef, t-exp, d-exp)."""
    if q == 0 or r == 0:
        return [(Fraction(1), r, q)]
    if q < 0 and r < 0:
        raise LocalizationError("cannot reorder d^q t^r with both exponents negative")
    # generalized Leibniz rule; finite because q >= 0 or r >= 0
    bound = q if q > 0 else r
    out = []
    for k in range(bound + 1):
        c = binom(q, k) * falling(r, k)
        if c:
            out.append((c, r - k, q - k))
    return out


class WeylElement:
    """A normal-ordered element of (a localization of) D(nvars).

    ``terms`` maps ``(p, q)`` to a nonzero Fraction.  ``localized`` is the set
    of indices where t_i is inverted, ``dlocalized`` where d_i is inverted.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms", "localized", "dlocalized")

    def __init__(self, nvars: int, terms: Dict[Monomial, Scalar] | None = None,
                 localized: Iterable[int] = (), dlocalized: Iterable[int] = ()):
        self.nvars = nvars
        clean = {}
        for (p, q), c in (terms or {}).items():
            c = rat(c)
            if c:
                p, q = tuple(p), tuple(q)
                if len(p) != nvars or len(q) != nvars:
                    raise DimensionError(f"monomial {p},{q} does not have {nvars} variables")
                clean[(p, q)] = c
        self.terms: Dict[Monomial, Fraction] = clean
        loc = set(localized)
        dloc = set(dlocalized)
        for (p, q) in clean:
            loc.update(i for i in range(nvars) if p[i] < 0)
            dloc.update(i for i in range(nvars) if q[i] < 0)
        if loc & dloc:
            raise LocalizationError(f"indices {sorted(loc & dloc)} localized at both t and d")
        self.localized = frozenset(loc)
        self.dlocalized = frozenset(dloc)

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "WeylElement":
        return cls(nvars)

    @classmethod
    def scalar(cls, c: Scalar, nvars: int) -> "WeylElement":
        return cls(nvars, {((0,) * nvars, (0,) * nvars): c})

    @classmethod
    def monomial(cls, p: Sequence[int], q: Sequence[int], coef: Scalar = 1) -> "WeylElement":
        return cls(len(p), {(tuple(p), tuple(q)): coef})

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "WeylElement") -> None:
        if self.nvars != other.nvars:
            raise DimensionError(f"D({self.nvars}) vs D({other.nvars})")

    def _coerce(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            self._check(other)
            return other
        return WeylElement.scalar(rat(other), self.nvars)

    def __add__(self, other) -> "WeylElement":
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return WeylElement(self.nvars, terms, self.localized | other.localized,
                           self.dlocalized | other.dlocalized)

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.nvars, {k: -c for k, c in self.terms.items()},
                           self.localized, self.dlocalized)

    def __sub__(self, other) -> "WeylElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "WeylElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            return normal_product(self, other)
        c = rat(other)
        return WeylElement(self.nvars, {k: c * v for k, v in self.terms.items()},
                           self.localized, self.dlocalized)

    def __rmul__(self, other) -> "WeylElement":
        c = rat(other)
        return WeylElement(self.nvars, {k: c * v for k, v in self.terms.items()},
                           self.localized, self.dlocalized)

    def __pow__(self, k: int) -> "WeylElement":
        if k < 0:
            raise ValueError("use inverse() for negative powers of monomials")
        out = WeylElement.scalar(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"WeylElement({self})"

    def __str__(self) -> str:
        return render_weyl(self)

    # -- helpers ------------------------------------------------------
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "WeylElement":
        """Inverse of a single coordinate power ``c * t_i^k`` or ``c * d_i^k``."""
        if len(self.terms) != 1:
            raise LocalizationError("only monomials in a single coordinate can be inverted")
        ((p, q), c), = self.terms.items()
        tp = [i for i in range(self.nvars) if p[i]]
        dq = [i for i in range(self.nvars) if q[i]]
        if tp and dq:
            raise LocalizationError(f"{self} has no inverse in the t- or d-localization")
        return WeylElement(self.nvars, {(tuple(-e for e in p), tuple(-e for e in q)): 1 / c})

    def max_degree(self) -> int:
        return max((sum(map(abs, p)) + sum(map(abs, q)) for p, q in self.terms), default=0)


def _unit(nvars: int, i: int, k: int = 1) -> Tuple[int, ...]:
    v = [0] * nvars
    v[i] = k
    return tuple(v)


def t(i: int, nvars: int, power: int = 1) -> WeylElement:
    """The coordinate t_i (or its ``power``, possibly negative)."""
    if not 0 <= i < nvars:
        raise IndexError(f"t{i} outside D({nvars})")
    return WeylElement(nvars, {(_unit(nvars, i, power), (0,) * nvars): 1})


def d(i: int, nvars: int, power: int = 1) -> WeylElement:
    """The derivation d_i = d/dt_i (or its ``power``)."""
    if not 0 <= i < nvars:
        raise IndexError(f"d{i} outside D({nvars})")
    return WeylElement(nvars, {((0,) * nvars, _unit(nvars, i, power)): 1})


def euler(nvars: int) -> WeylElement:
    """E = sum_i t_i d_i."""
    return WeylElement(nvars, {(_unit(nvars, i), _unit(nvars, i)): 1 for i in range(nvars)})


def normal_product(a: WeylElement, b: WeylElement) -> WeylElement:
    """Exact normal-ordered product ``a * b`` using [d_i, t_i] = 1."""
    a._check(b)
    n = a.nvars
    if (a.localized | b.localized) & (a.dlocalized | b.dlocalized):
        raise LocalizationError("product mixes t- and d-localization of one coordinate")
    out: Dict[Monomial, Fraction] = {}
    for (p, q), c1 in a.terms.items():
        for (r, s), c2 in b.terms.items():
            per_coord = [_commute_dt(q[i], r[i]) for i in range(n)]
            for combo in itertools.product(*per_coord):
                c = c1 * c2
                tp, dq = [], []
                for i, (ci, ti, di) in enumerate(combo):
                    c *= ci
                    tp.append(p[i] + ti)
                    dq.append(di + s[i])
                key = (tuple(tp), tuple(dq))
                out[key] = out.get(key, 0) + c
    return WeylElement(n, out, a.localized | b.localized, a.dlocalized | b.dlocalized)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b - b * a


def ad_apply(f: WeylElement, u: WeylElement, power: int = 1) -> WeylElement:
    """ad(f)^power (u) = [f, [f, ... [f, u]]]."""
    if power < 0:
        raise ValueError("power must be nonnegative")
    for _ in range(power):
        u = commutator(f, u)
    return u


def _twist_generator_kind(f: WeylElement) -> Tuple[str, int, int]:
    """Classify f as ('t', i), ('d', i) or ('root', i, j) for t_i d_j."""
    if len(f.terms) != 1:
        raise TwistError(f"{f} is not a single monomial")
    ((p, q), c), = f.terms.items()
    if c != 1:
        raise TwistError(f"{f} must have coefficient 1")
    tp = [i for i in range(f.nvars) if p[i]]
    dq = [i for i in range(f.nvars) if q[i]]
    if len(tp) == 1 and not dq and p[tp[0]] == 1:
        return ("t", tp[0], -1)
    if len(dq) == 1 and not tp and q[dq[0]] == 1:
        return ("d", dq[0], -1)
    if len(tp) == 1 and len(dq) == 1 and tp != dq and p[tp[0]] == 1 and q[dq[0]] == 1:
        return ("root", tp[0], dq[0])
    raise TwistError(f"{f} is not one of t_i, d_i, t_i d_j (i != j)")


def theta_twist(F: Sequence[WeylElement], x: Sequence[Scalar], u: WeylElement,
                max_order: int = 64) -> WeylElement:
    """Generalized conjugation of ``u`` by the commuting family ``F`` with exponents ``x``.

    Computes sum over i of prod binom(x_j, i_j) ad(f_1)^i_1 ... ad(f_k)^i_k (u) f^-i.
    For integer ``x`` this is f^x u f^-x.  Elements t_i d_j are accepted only
    where their inverse is never needed, i.e. when ad(t_i d_j) kills the
    corresponding iterated commutators.
    """
    if len(F) != len(x):
        raise ValueError("F and x must have the same length")
    kinds = [_twist_generator_kind(f) for f in F]
    for a_idx, b_idx in itertools.combinations(range(len(F)), 2):
        if commutator(F[a_idx], F[b_idx]):
            raise TwistError(f"{F[a_idx]} and {F[b_idx]} do not commute")
    x = [rat(v) for v in x]
    nvars = u.nvars
    # (coefficient, ad-image, exponent vector of f^-i)
    partial: List[Tuple[Fraction, WeylElement, Tuple[int, ...]]] = [(Fraction(1), u, ())]
    for f, xj in zip(reversed(F), reversed(x)):
        nxt = []
        for coef, elem, expo in partial:
            cur = elem
            i = 0
            while cur:
                b = binom(xj, i)
                if b:
                    nxt.append((coef * b, cur, (i,) + expo))
                i += 1
                if i > max_order:
                    raise TwistError(f"ad({f}) is not locally nilpotent on {u} within {max_order} steps")
                cur = commutator(f, cur)
        partial = nxt
    out = WeylElement.zero(nvars)
    for coef, elem, expo in partial:
        term = elem
        for f, kind, i in zip(F, kinds, expo):
            if i == 0:
                continue
            if kind[0] == "root":
                raise TwistError(f"inverse of {f} needed; t_i d_j twists are handled on modules")
            term = term * (f.inverse() ** i)
        out = out + coef * term
    return out


@dataclass(frozen=True)
class Automorphism:
    """sigma_J: t_i -> d_i, d_i -> -t_i for i in J, identity elsewhere.

    ``tau`` is sigma of the full index set.
    """

    J: frozenset

    @classmethod
    def sigma(cls, J: Iterable[int]) -> "Automorphism":
        return cls(frozenset(J))

    @classmethod
    def tau(cls, nvars: int) -> "Automorphism":
        return cls(frozenset(range(nvars)))

    def compose(self, other: "Automorphism") -> Tuple[int, "Automorphism"]:
        """Return (sign convention marker, sigma_{J xor I}).

        sigma_i^2 acts as -1 on t_i and d_i, so sigma_J o sigma_I agrees with
        sigma_{J xor I} only up to the sign automorphism on J & I.  The first
        entry is the number of indices carrying that extra sign.
        """
        return len(self.J & other.J), Automorphism(self.J ^ other.J)


def apply_automorphism(phi: Automorphism, u: WeylElement,
                       allow_localized: bool = False) -> WeylElement:
    """Image of ``u`` under sigma_J.

    sigma_i does not preserve the localization at t_i, so a localized index
    in J raises TwistError.  With ``allow_localized`` the image is taken in
    the localization at d_i instead (sigma maps t_i^-1 to d_i^-1).
    """
    n = u.nvars
    if any(not 0 <= i < n for i in phi.J):
        raise IndexError(f"{sorted(phi.J)} outside D({n})")
    bad = phi.J & (u.localized | u.dlocalized)
    if bad and not allow_localized:
        raise TwistError(f"sigma does not extend to the localization at {sorted(bad)}")
    out = WeylElement.zero(n)
    for (p, q), c in u.terms.items():
        factors = []
        for i in range(n):
            if i in phi.J:
                # t^p d^q -> d^p (-t)^q = (-1)^q d^p t^q
                sign = -1 if q[i] % 2 else 1
                factors.append([(sign * cc, ti, di) for cc, ti, di in _commute_dt(p[i], q[i])])
            else:
                factors.append([(Fraction(1), p[i], q[i])])
        terms = {}
        for combo in itertools.product(*factors):
            coef = c
            tp, dq = [], []
            for cc, ti, di in combo:
                coef *= cc
                tp.append(ti)
                dq.append(di)
            key = (tuple(tp), tuple(dq))
            terms[key] = terms.get(key, 0) + coef
        out = out + WeylElement(n, terms)
    return out


def psi_embed(i: int, j: int, nvars: int) -> WeylElement:
    """Image t_i d_j of the matrix unit E_ij under sl(n+1) -> D(n+1)."""
    if not (0 <= i < nvars and 0 <= j < nvars):
        raise IndexError(f"E_{i}{j} outside gl({nvars})")
    return t(i, nvars) * d(j, nvars)


def graded_parts(u: WeylElement) -> Dict[int, WeylElement]:
    """Decomposition of ``u`` into eigenvectors of ad(E)."""
    parts: Dict[int, Dict[Monomial, Fraction]] = {}
    for (p, q), c in u.terms.items():
        parts.setdefault(sum(p) - sum(q), {})[(p, q)] = c
    return {m: WeylElement(u.nvars, terms) for m, terms in sorted(parts.items())}


def euler_degree(u: WeylElement) -> Union[int, Dict[int, WeylElement]]:
    """m with [E, u] = m u, or the graded parts of ``u`` when it is mixed."""
    parts = graded_parts(u)
    if len(parts) <= 1:
        return next(iter(parts), 0)
    return parts


# -- text form ---------------------------------------------------------

def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"({c})"


def _fmt_monomial(p: Sequence[int], q: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(p):
        if e:
            parts.append(f"t{i}" if e == 1 else f"t{i}^{e}")
    for i, e in enumerate(q):
        if e:
            parts.append(f"d{i}" if e == 1 else f"d{i}^{e}")
    return "*".join(parts)


def _weyl_sort_key(item):
    (p, q), _ = item
    deg = sum(map(abs, p)) + sum(map(abs, q))
    return (-deg, tuple(-e for e in p), tuple(-e for e in q))


def render_weyl(u: WeylElement) -> str:
    """Canonical text such as ``t0^2*d0^2 + 4*t0*d0 + 2``."""
    if not u.terms:
        return "0"
    out = []
    for idx, ((p, q), c) in enumerate(sorted(u.terms.items(), key=_weyl_sort_key)):
        mono = _fmt_monomial(p, q)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = _fmt_rat(a).strip("()") if a.denominator == 1 else _fmt_rat(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_rat(a)}*{mono}"
        if idx == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([td])(\d+)|(E)|(\^)|([-+*/()]))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    pos, toks = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            toks.append(("num", m.group(1)))
        elif m.group(2):
            toks.append((m.group(2), m.group(3)))
        elif m.group(4):
            toks.append(("E", "E"))
        elif m.group(5):
            toks.append(("^", "^"))
        else:
            toks.append((m.group(6), m.group(6)))
    return toks


class _Parser:
    def __init__(self, toks, nvars):
        self.toks = toks
        self.pos = 0
        self.nvars = nvars

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind and tok[0] != kind:
            raise ValueError(f"expected {kind}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        val = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.power()
        while self.peek() in ("*", "/", "num", "t", "d", "E", "("):
            if self.peek() == "/":
                self.take()
                den = self.power()
                if not (isinstance(den, WeylElement) and den.is_monomial()
                        and next(iter(den.terms)) == ((0,) * self.nvars, (0,) * self.nvars)):
                    raise ValueError("can only divide by a scalar")
                val = val * (1 / next(iter(den.terms.values())))
                continue
            if self.peek() == "*":
                self.take()
            val = val * self.power()
        return val

    def exponent(self) -> int:
        if self.peek() == "(":
            self.take()
            e = self.exponent()
            self.take(")")
            return e
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        return sign * int(self.take("num")[1])

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.exponent()
            if e < 0:
                base = base.inverse() ** (-e)
            else:
                base = base ** e
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            return WeylElement.scalar(int(self.take()[1]), self.nvars)
        if kind == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if kind == "t":
            return t(int(self.take()[1]), self.nvars)
        if kind == "d":
            return d(int(self.take()[1]), self.nvars)
        if kind == "E":
            self.take()
            return euler(self.nvars)
        raise ValueError(f"unexpected token {self.toks[self.pos][1] if kind else 'end of input'!r}")


def parse_weyl(text: str, nvars: int | None = None) -> WeylElement:
    """Parse text such as ``"d0*t0 - 1/2*t0^-1"``; factors multiply in order."""
    toks = _tokenize(text)
    idx = [int(v) for k, v in toks if k in ("t", "d")]
    need = max(idx) + 1 if idx else 1
    if nvars is None:
        nvars = need
    elif need > nvars:
        raise DimensionError(f"{text!r} uses t/d index {need - 1} but nvars={nvars}")
    p = _Parser(toks, nvars)
    val = p.expr()
    if p.pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return val

"""Reference implementations that share no code with the package.

Functions are dictionaries ``{(exponents, log_powers): coefficient}`` standing
for sums of prod t_i^e_i (log t_i)^k_i.  Operators are dictionaries
``{(p, q): coefficient}`` in normal order, t^p to the left of d^q.
"""
from __future__ import annotations

from fractions import Fraction


def _add(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def diff(f, i):
    out = {}
    for (e, k), c in f.items():
        e2 = list(e)
        e2[i] -= 1
        if e[i]:
            _add(out, (tuple(e2), k), c * e[i])
        if k[i]:
            k2 = list(k)
            k2[i] -= 1
            _add(out, (tuple(e2), tuple(k2)), c * k[i])
    return out


def mult(f, i, power):
    out = {}
    for (e, k), c in f.items():
        e2 = list(e)
        e2[i] += power
        _add(out, (tuple(e2), k), c)
    return out


def apply(op, f):
    out = {}
    for (p, q), c in op.items():
        g = dict(f)
        for i, qi in enumerate(q):
            for _ in range(qi):
                g = diff(g, i)
        for i, pi in enumerate(p):
            g = mult(g, i, pi)
        for key, v in g.items():
            _add(out, key, c * v)
    return out


def power_function(exponents, logs=None):
    e = tuple(Fraction(x) for x in exponents)
    return {(e, tuple(logs or (0,) * len(e))): Fraction(1)}


def conjugate_power(op, f, i, x):
    """t_i^x (op (t_i^-x f)) evaluated on power functions, for any rational x."""
    return mult(apply(op, mult(f, i, -Fraction(x))), i, Fraction(x))

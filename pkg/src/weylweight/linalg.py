"""Exact sparse linear algebra over the rationals.

Vectors are ``dict[int, Fraction]`` keyed by column index; zero entries are
never stored.  Everything here is plain Gaussian elimination, tuned for the
very sparse systems produced by intertwiner and quotient computations.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence

SparseVec = Dict[int, Fraction]


def _clean(vec: dict) -> SparseVec:
    return {k: Fraction(v) for k, v in vec.items() if v != 0}


def _axpy(target: SparseVec, coef: Fraction, src: SparseVec) -> None:
    """target += coef * src, in place."""
    for k, v in src.items():
        nv = target.get(k, 0) + coef * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class Echelon:
    """Incrementally maintained reduced row echelon basis.

    Rows are kept fully reduced against each other, so membership tests and
    reductions are a single pass over the pivots present in a vector.
    """

    def __init__(self) -> None:
        self.rows: Dict[int, SparseVec] = {}  # pivot column -> row with 1 at pivot

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: SparseVec) -> SparseVec:
        out = dict(vec)
        # stored rows vanish on every other pivot, so one sweep suffices
        for col in [c for c in out if c in self.rows]:
            coef = out.get(col)
            if coef:
                _axpy(out, -coef, self.rows[col])
        return out

    def add(self, vec: SparseVec) -> bool:
        """Insert ``vec``; return True if it increased the rank."""
        red = self.reduce(_clean(vec))
        if not red:
            return False
        pivot = min(red)
        inv = 1 / red[pivot]
        red = {k: v * inv for k, v in red.items()}
        for row in self.rows.values():
            coef = row.get(pivot)
            if coef:
                _axpy(row, -coef, red)
        self.rows[pivot] = red
        return True

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(_clean(vec))


def rank(rows: Iterable[SparseVec]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return len(ech)


def nullspace(rows: Iterable[SparseVec], ncols: int) -> List[SparseVec]:
    """Basis of ``{x : r . x = 0 for all rows r}`` in ``Q^ncols``.

    The basis is the standard one attached to the free columns of the
    reduced row echelon form, so it is deterministic.
    """
    ech = Echelon()
    for r in rows:
        ech.add(r)
    pivots = ech.rows
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec: SparseVec = {free: Fraction(1)}
        for p, row in pivots.items():
            coef = row.get(free)
            if coef:
                vec[p] = -coef
        basis.append(vec)
    return basis


def solve(rows: Sequence[SparseVec], rhs: Sequence[Fraction], ncols: int) -> SparseVec | None:
    """One solution of ``rows . x = rhs`` with free variables set to 0, or None."""
    aug = ncols
    ech = Echelon()
    for r, b in zip(rows, rhs):
        v = dict(r)
        if b:
            v[aug] = Fraction(b)
        ech.add(v)
    if aug in ech.rows:
        return None
    sol: SparseVec = {}
    for p, row in ech.rows.items():
        val = row.get(aug, 0)
        if val:
            sol[p] = Fraction(val)
    return sol


def dense_to_sparse(matrix: Sequence[Sequence]) -> List[SparseVec]:
    return [_clean({j: v for j, v in enumerate(row)}) for row in matrix]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p)] for i in range(n)]


def identity(n: int) -> List[List[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def is_nilpotent(m: Sequence[Sequence[Fraction]]) -> bool:
    n = len(m)
    if n == 0:
        return True
    power = [list(r) for r in m]
    for _ in range(n - 1):
        power = matmul(power, m)
    return all(v == 0 for row in power for v in row)

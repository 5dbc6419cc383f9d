"""Weight-preserving module maps found by exact linear solves on a window."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .core import WeylElement, d, t
from .modfam import Key, LogModule, ModElement, Offset, act_raw


class WindowTooSmall(ValueError):
    pass


def _offset_shift(src: LogModule, dst: LogModule) -> Optional[Offset]:
    """dst offset = src offset + shift, or None when the weight cosets differ."""
    out = []
    for a, b in zip(src.nu, dst.nu):
        diff = a - b
        if diff.denominator != 1:
            return None
        out.append(int(diff))
    return tuple(out)


def generators(nvars: int) -> List[WeylElement]:
    """t_0, d_0, t_1, d_1, ..."""
    gens = []
    for i in range(nvars):
        gens += [t(i, nvars), d(i, nvars)]
    return gens


def _weight_step(g: WeylElement) -> Offset:
    (p, q), = g.terms
    return tuple(a - b for a, b in zip(p, q))


@dataclass
class HomSolution:
    """A map src -> dst given by one matrix per source offset.

    ``blocks[w][alpha]`` is the image of the source key ``(w, alpha)`` as a
    table of destination keys.
    """

    src: LogModule
    dst: LogModule
    bounds: Tuple[Offset, Offset]
    blocks: Dict[Offset, Dict[Tuple[int, ...], Dict[Key, Fraction]]]

    def image_key(self, key: Key) -> Dict[Key, Fraction]:
        w, alpha = key
        if w not in self.blocks:
            raise WindowTooSmall(f"offset {w} outside solved box {self.bounds}")
        return self.blocks[w].get(alpha, {})

    def apply_raw(self, vec: Dict[Key, Fraction]) -> Dict[Key, Fraction]:
        out: Dict[Key, Fraction] = {}
        for key, c in vec.items():
            for k2, v in self.image_key(key).items():
                out[k2] = out.get(k2, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def apply(self, v: ModElement) -> ModElement:
        return ModElement(self.dst, self.apply_raw(v.terms))

    def compose(self, first: "HomSolution") -> "HomSolution":
        """self o first."""
        blocks = {}
        for w, cols in first.blocks.items():
            blocks[w] = {}
            for alpha, img in cols.items():
                try:
                    blocks[w][alpha] = self.apply_raw(img)
                except WindowTooSmall:
                    continue
        return HomSolution(first.src, self.dst, first.bounds, blocks)

    def __add__(self, other: "HomSolution") -> "HomSolution":
        return self.combine([(1, self), (1, other)])

    @staticmethod
    def combine(pairs: Sequence[Tuple[Fraction, "HomSolution"]]) -> "HomSolution":
        base = pairs[0][1]
        blocks: Dict = {}
        for c, h in pairs:
            for w, cols in h.blocks.items():
                bw = blocks.setdefault(w, {})
                for alpha, img in cols.items():
                    acc = bw.setdefault(alpha, {})
                    for k, v in img.items():
                        acc[k] = acc.get(k, 0) + c * v
        for bw in blocks.values():
            for alpha in list(bw):
                bw[alpha] = {k: v for k, v in bw[alpha].items() if v}
        return HomSolution(base.src, base.dst, base.bounds, blocks)

    def is_zero(self) -> bool:
        return not any(img for cols in self.blocks.values() for img in cols.values())

    def kernel_at(self, w: Offset) -> List[Dict[Tuple[int, ...], Fraction]]:
        """Kernel on the source offset ``w``, as combinations of alphas."""
        alphas = sorted(self.blocks.get(w, {}))
        targets = sorted({k for a in alphas for k in self.blocks[w][a]})
        rows = []
        for k in targets:
            rows.append({ai: self.blocks[w][a][k] for ai, a in enumerate(alphas) if k in self.blocks[w][a]})
        return [{alphas[i]: c for i, c in vec.items()} for vec in linalg.nullspace(rows, len(alphas))]

    def rank_at(self, w: Offset) -> int:
        return len(self.blocks.get(w, {})) - len(self.kernel_at(w))


def solve_hom(src: LogModule, dst: LogModule, bounds: Tuple[Offset, Offset],
              gens: Optional[Sequence[WeylElement]] = None) -> List[HomSolution]:
    """Basis of weight-preserving maps on ``bounds`` commuting with ``gens``.

    ``bounds`` is a box of source offsets; the commutation constraint for a
    generator is imposed wherever both the source and the shifted offset lie
    in the box.  Distinct weight cosets give the empty list.
    """
    if src.n != dst.n:
        raise ValueError("modules over different Weyl algebras")
    shift = _offset_shift(src, dst)
    if shift is None:
        return []
    gens = list(gens) if gens is not None else generators(src.nvars)
    lo, hi = bounds
    if any(b - a < 1 for a, b in zip(lo, hi)):
        raise WindowTooSmall("solve_hom needs a box of width >= 2 in each direction")
    offsets = list(src.offsets(bounds))
    offset_set = set(offsets)
    dst_alphas = dst.log_exponents()
    src_alphas = src.log_exponents()

    def dst_offset(w):
        return tuple(a + s for a, s in zip(w, shift))

    index: Dict[Tuple[Offset, Tuple[int, ...], Key], int] = {}
    for w in offsets:
        dw = dst_offset(w)
        if not dst.allows_offset(dw):
            continue
        for a in src_alphas:
            for b in dst_alphas:
                index[(w, a, (dw, b))] = len(index)
    if not index:
        return []

    rows: List[Dict[int, Fraction]] = []
    for g in gens:
        step = _weight_step(g)
        for w in offsets:
            w2 = tuple(a + s for a, s in zip(w, step))
            if w2 not in offset_set:
                continue
            for a in src_alphas:
                # phi(g . key) - g . phi(key) = 0, one row per destination key
                eq: Dict[Key, Dict[int, Fraction]] = {}
                gk = act_raw(g, src, {(w, a): Fraction(1)})
                for (kw, ka), c in gk.items():
                    for b in dst_alphas:
                        col = index.get((kw, ka, (dst_offset(kw), b)))
                        if col is not None:
                            r = eq.setdefault((dst_offset(kw), b), {})
                            r[col] = r.get(col, 0) + c
                for b in dst_alphas:
                    col = index.get((w, a, (dst_offset(w), b)))
                    if col is None:
                        continue
                    for k2, c in act_raw(g, dst, {(dst_offset(w), b): Fraction(1)}).items():
                        r = eq.setdefault(k2, {})
                        r[col] = r.get(col, 0) - c
                for r in eq.values():
                    r = {k: v for k, v in r.items() if v}
                    if r:
                        rows.append(r)
    basis = linalg.nullspace(rows, len(index))
    inverse = {v: k for k, v in index.items()}
    out = []
    for vec in basis:
        blocks: Dict[Offset, Dict[Tuple[int, ...], Dict[Key, Fraction]]] = {
            w: {a: {} for a in src_alphas} for w in offsets}
        for col, c in vec.items():
            w, a, k2 = inverse[col]
            blocks[w][a][k2] = c
        out.append(HomSolution(src, dst, (tuple(lo), tuple(hi)), blocks))
    return out


def least_kernel(homs: Sequence[HomSolution], probe: Offset) -> HomSolution:
    """The first basis map whose kernel at ``probe`` is smallest."""
    if not homs:
        raise WindowTooSmall("empty Hom space")
    return min(homs, key=lambda h: len(h.kernel_at(probe)))

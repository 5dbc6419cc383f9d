"""Hypercube quivers and the path-identification algebras built on them.

Vertices of the k-cube are bit tuples; the arrow between v and v + e_c has
color c (1-based).  Two families of identifications are supported:

* ``colors``: same endpoints, same degree and the same multiset of colors
  (the A family and its primed variants);
* ``length``: same endpoints and the same degree (the B family).

A primed variant drops the all-ones vertex, a double primed one also drops
the all-zeros vertex.  On the A side every vertex next to a dropped one
receives a loop standing in for the round trip through it; the loop carries
the color pair (c, c).  ``loop_length`` is the degree given to such a loop:
1 treats it as an ordinary arrow, 2 grades it like the round trip it
replaces.  The rank-2 double primed algebras have their own small quivers.

Quotients are computed by closing an equivalence relation on explicit
paths with a union-find, which is exact because every relation identifies
two paths.
"""
from __future__ import annotations

import itertools
import json
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg

Vertex = Tuple[int, ...]
Path = Tuple[int, ...]  # arrow indices in traversal order

FAMILIES = ("A", "B", "A'", "A''", "B'", "B''")
_ALIASES = {"A": "A", "B": "B", "A'": "A'", "A''": "A''", "B'": "B'", "B''": "B''",
            "A′": "A'", "A″": "A''", "B′": "B'", "B″": "B''",
            "AP": "A'", "APP": "A''", "BP": "B'", "BPP": "B''"}


class QuiverError(ValueError):
    pass


def canonical_family(name: str) -> str:
    key = name.strip()
    fam = _ALIASES.get(key) or _ALIASES.get(key.upper())
    if fam is None:
        raise QuiverError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    return fam


def bits(v: Vertex) -> str:
    return "".join(str(b) for b in v)


# -- quivers -------------------------------------------------------------------

@dataclass(frozen=True)
class Arrow:
    src: Vertex
    dst: Vertex
    colors: Tuple[int, ...]
    name: str
    length: int = 1

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass(frozen=True)
class Quiver:
    k: int
    vertices: Tuple[Vertex, ...]
    arrows: Tuple[Arrow, ...]
    removed: Tuple[Vertex, ...] = ()

    def index(self, v: Vertex) -> int:
        return self.vertices.index(v)

    def out_arrows(self, v: Vertex) -> List[int]:
        return [i for i, a in enumerate(self.arrows) if a.src == v]

    def arrow_named(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise KeyError(name)

    def to_json(self) -> dict:
        arrows = []
        for a in self.arrows:
            entry = {"src": bits(a.src), "dst": bits(a.dst), "name": a.name}
            if a.is_loop:
                entry["color"] = a.colors[0]
                entry["loop"] = True
            elif len(a.colors) == 1:
                entry["color"] = a.colors[0]
            else:
                entry["color"] = list(a.colors)
            arrows.append(entry)
        return {"k": self.k, "vertices": [bits(v) for v in self.vertices], "arrows": arrows,
                "removed": [bits(v) for v in self.removed]}

    def to_dot(self, title: str = "Q") -> str:
        lines = [f'digraph "{title}" {{']
        for v in self.vertices:
            lines.append(f'  "{bits(v)}";')
        for a in self.arrows:
            label = a.name + " c" + ",".join(str(c) for c in a.colors)
            lines.append(f'  "{bits(a.src)}" -> "{bits(a.dst)}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def quiver_from_json(data: dict) -> Quiver:
    """Inverse of ``Quiver.to_json`` (lengths of loops default to 1)."""
    def vert(s):
        return tuple(int(ch) for ch in s)

    arrows = []
    for entry in data["arrows"]:
        col = entry["color"]
        src, dst = vert(entry["src"]), vert(entry["dst"])
        if entry.get("loop"):
            colors = (col, col)
        elif isinstance(col, list):
            colors = tuple(col)
        else:
            colors = (col,)
        arrows.append(Arrow(src, dst, colors, entry.get("name", f"{entry['src']}>{entry['dst']}")))
    return Quiver(int(data["k"]), tuple(vert(v) for v in data["vertices"]), tuple(arrows),
                  tuple(vert(v) for v in data.get("removed", [])))


def cube_quiver(k: int, removed: Sequence[Vertex] = (), loops: bool = False,
                loop_length: int = 1) -> Quiver:
    """C(k) minus ``removed``, with a loop per (vertex, removed neighbour) if ``loops``."""
    removed = tuple(removed)
    verts = tuple(v for v in itertools.product((0, 1), repeat=k) if v not in removed)
    arrows = []
    for v in verts:
        for c in range(k):
            w = tuple(b ^ (1 if i == c else 0) for i, b in enumerate(v))
            if w in removed:
                if loops:
                    arrows.append(Arrow(v, v, (c + 1, c + 1), f"loop{bits(v)}:{c + 1}", loop_length))
            else:
                arrows.append(Arrow(v, w, (c + 1,), f"{bits(v)}>{bits(w)}"))
    return Quiver(k, verts, tuple(arrows), removed)


# -- algebras --------------------------------------------------------------------

class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> int:
        return sum(1 for i, p in enumerate(self.parent) if self.find(i) == i)


@dataclass
class QuiverAlgebra:
    """Path algebra of ``quiver`` modulo identification of equivalent paths.

    ``relation_kind`` is ``colors``, ``length`` or ``explicit``; the last
    closes the listed pairs of paths under concatenation.
    """

    family: str
    k: int
    quiver: Quiver
    relation_kind: str
    explicit: Tuple[Tuple[Path, Path], ...] = ()
    loop_length: int = 1
    _cache: Dict = field(default_factory=dict, repr=False, compare=False)

    # paths ---------------------------------------------------------------
    def paths_from(self, v: Vertex, degree: int) -> List[Path]:
        """All paths starting at v whose arrow lengths sum to ``degree``."""
        key = ("paths", v, degree)
        if key in self._cache:
            return self._cache[key]
        arrows = self.quiver.arrows
        out: List[Path] = []

        def extend(cur: Vertex, left: int, prefix: Tuple[int, ...]):
            if left == 0:
                out.append(prefix)
                return
            for i in self.quiver.out_arrows(cur):
                if arrows[i].length <= left:
                    extend(arrows[i].dst, left - arrows[i].length, prefix + (i,))

        extend(v, degree, ())
        self._cache[key] = out
        return out

    def end(self, v: Vertex, p: Path) -> Vertex:
        return self.quiver.arrows[p[-1]].dst if p else v

    def _key(self, p: Path):
        if self.relation_kind == "colors":
            return tuple(sorted(c for i in p for c in self.quiver.arrows[i].colors))
        return ()

    def classes(self, v: Vertex, degree: int) -> Dict[Vertex, List[List[Path]]]:
        """Equivalence classes of degree-``degree`` paths from v, grouped by endpoint."""
        key = ("classes", v, degree)
        if key in self._cache:
            return self._cache[key]
        buckets: Dict[Vertex, List[Path]] = defaultdict(list)
        for p in self.paths_from(v, degree):
            buckets[self.end(v, p)].append(p)
        out = {}
        for w, paths in buckets.items():
            uf = UnionFind(len(paths))
            if self.relation_kind == "explicit":
                pos = {p: i for i, p in enumerate(paths)}
                for i, p in enumerate(paths):
                    for q in self._rewrites(p):
                        if q in pos:
                            uf.union(i, pos[q])
            else:
                first: Dict = {}
                for i, p in enumerate(paths):
                    kk = self._key(p)
                    if kk in first:
                        uf.union(first[kk], i)
                    else:
                        first[kk] = i
            groups: Dict[int, List[Path]] = defaultdict(list)
            for i, p in enumerate(paths):
                groups[uf.find(i)].append(p)
            out[w] = sorted(groups.values())
        self._cache[key] = out
        return out

    def _rewrites(self, p: Path):
        for lhs, rhs in self.explicit:
            for a, b in ((lhs, rhs), (rhs, lhs)):
                n = len(a)
                for s in range(len(p) - n + 1):
                    if p[s:s + n] == a:
                        yield p[:s] + b + p[s + n:]

    def path_classes(self, v: Vertex, w: Vertex, degree: int) -> int:
        return len(self.classes(v, degree).get(w, []))

    def shuffled(self, seed: int) -> "QuiverAlgebra":
        """The same algebra with its arrows listed in a random order."""
        rng = random.Random(seed)
        order = list(range(len(self.quiver.arrows)))
        rng.shuffle(order)
        new_pos = {old: new for new, old in enumerate(order)}
        quiver = Quiver(self.k, self.quiver.vertices, tuple(self.quiver.arrows[i] for i in order),
                        self.quiver.removed)
        explicit = tuple((tuple(new_pos[i] for i in a), tuple(new_pos[i] for i in b))
                         for a, b in self.explicit)
        return QuiverAlgebra(self.family, self.k, quiver, self.relation_kind, explicit, self.loop_length)

    def describe(self) -> dict:
        return {"family": self.family, "k": self.k, "relation_kind": self.relation_kind,
                "loop_length": self.loop_length, "quiver": self.quiver.to_json()}


def _special_a2() -> QuiverAlgebra:
    """A''(2): two vertices, two loops at each, one arrow each way."""
    x, y = (1, 0), (0, 1)
    arrows = (Arrow(x, x, (1, 1), "alpha"), Arrow(x, x, (2, 2), "beta"),
              Arrow(x, y, (1, 2), "gamma"), Arrow(y, x, (1, 2), "delta"),
              Arrow(y, y, (1, 1), "epsilon"), Arrow(y, y, (2, 2), "phi"))
    q = Quiver(2, (x, y), arrows, ((0, 0), (1, 1)))
    n = {a.name: i for i, a in enumerate(arrows)}
    # alpha beta = beta alpha = delta gamma, epsilon phi = phi epsilon = gamma delta,
    # products written right to left, so traversal order is reversed
    rel = (((n["beta"], n["alpha"]), (n["alpha"], n["beta"])),
           ((n["alpha"], n["beta"]), (n["gamma"], n["delta"])),
           ((n["phi"], n["epsilon"]), (n["epsilon"], n["phi"])),
           ((n["epsilon"], n["phi"]), (n["delta"], n["gamma"])))
    return QuiverAlgebra("A''", 2, q, "explicit", rel)


def _special_b2() -> QuiverAlgebra:
    """B''(2): one arrow each way between two vertices, no relations, i.e. B(1)."""
    x, y = (1, 0), (0, 1)
    arrows = (Arrow(x, y, (1, 2), "a"), Arrow(y, x, (1, 2), "b"))
    return QuiverAlgebra("B''", 2, Quiver(2, (x, y), arrows, ((0, 0), (1, 1))), "length")


def build_algebra(family: str, k: int, loop_length: int = 1) -> QuiverAlgebra:
    fam = canonical_family(family)
    k = int(k)
    if loop_length not in (1, 2):
        raise QuiverError("loop_length must be 1 or 2")
    minimum = {"A": 1, "B": 1, "A'": 2, "B'": 2, "A''": 2, "B''": 2}[fam]
    if k < minimum:
        raise QuiverError(f"{fam}({k}) is not defined; need k >= {minimum}")
    if fam == "A''" and k == 2:
        return _special_a2()
    if fam == "B''" and k == 2:
        return _special_b2()
    ones, zeros = (1,) * k, (0,) * k
    removed = {"A": (), "B": (), "A'": (ones,), "B'": (ones,), "A''": (zeros, ones),
               "B''": (zeros, ones)}[fam]
    kind = "colors" if fam.startswith("A") else "length"
    q = cube_quiver(k, removed, loops=kind == "colors", loop_length=loop_length)
    return QuiverAlgebra(fam, k, q, kind, loop_length=loop_length)


# -- Hilbert data ----------------------------------------------------------------

def hilbert_matrix(alg: QuiverAlgebra, max_degree: int) -> np.ndarray:
    """H[l, w, v] = number of path classes of degree l from v to w."""
    verts = alg.quiver.vertices
    H = np.zeros((max_degree + 1, len(verts), len(verts)), dtype=np.int64)
    for l in range(max_degree + 1):
        for vi, v in enumerate(verts):
            for w, cls in alg.classes(v, l).items():
                H[l, verts.index(w), vi] = len(cls)
    return H


def closed_form_a(k: int, v: Vertex, w: Vertex, degree: int) -> int:
    """Exponent vectors of total degree ``degree`` with the parity of w - v."""
    parity = [a ^ b for a, b in zip(v, w)]
    # choose a_i = parity_i + 2 b_i; count b with |b| = (degree - |parity|) / 2
    rest = degree - sum(parity)
    if rest < 0 or rest % 2:
        return 0
    m = rest // 2
    return comb(m + k - 1, k - 1)


def closed_form_b(k: int, v: Vertex, w: Vertex, degree: int) -> int:
    h = sum(a ^ b for a, b in zip(v, w))
    return int(degree >= h and (degree - h) % 2 == 0)


def closed_form_matrix(family: str, k: int, max_degree: int) -> np.ndarray:
    fam = canonical_family(family)
    if fam not in ("A", "B"):
        raise QuiverError("closed forms are available for A(k) and B(k)")
    f = closed_form_a if fam == "A" else closed_form_b
    verts = list(itertools.product((0, 1), repeat=k))
    H = np.zeros((max_degree + 1, len(verts), len(verts)), dtype=np.int64)
    for l in range(max_degree + 1):
        for vi, v in enumerate(verts):
            for wi, w in enumerate(verts):
                H[l, wi, vi] = f(k, v, w, l)
    return H


def truncate(H: np.ndarray, parent: Sequence[Vertex], keep: Sequence[Vertex]) -> np.ndarray:
    """Idempotent truncation: rows and columns of the vertices in ``keep``."""
    idx = [list(parent).index(v) for v in keep]
    return H[:, idx][:, :, idx]


def truncation_check(family: str, k: int, max_degree: int = 4) -> dict:
    """Compare a primed algebra's Hilbert data with the parent's at the kept vertices.

    A-side loops are graded as the round trips they replace (loop_length 2).
    """
    fam = canonical_family(family)
    if fam in ("A", "B"):
        raise QuiverError("truncation applies to the primed families")
    alg = build_algebra(fam, k, loop_length=2)
    parent = build_algebra(fam[0], k)
    H = hilbert_matrix(alg, max_degree)
    P = truncate(hilbert_matrix(parent, max_degree), parent.quiver.vertices, alg.quiver.vertices)
    bad = [int(l) for l in range(max_degree + 1) if not np.array_equal(H[l], P[l])]
    return {"family": fam, "k": k, "max_degree": max_degree, "status": "fail" if bad else "pass",
            "degrees_differing": bad}


# -- quadratic presentations -------------------------------------------------------

@dataclass
class QuadraticPresentation:
    """Path algebra of ``quiver`` (all arrows of degree 1) modulo quadratic relations.

    ``relations`` are vectors over length-2 paths, given as dicts path -> coefficient.
    """

    quiver: Quiver
    relations: List[Dict[Path, Fraction]]

    def degree_two_paths(self) -> Dict[Tuple[Vertex, Vertex], List[Path]]:
        buckets: Dict[Tuple[Vertex, Vertex], List[Path]] = defaultdict(list)
        arrows = self.quiver.arrows
        for i, a in enumerate(arrows):
            for j in self.quiver.out_arrows(a.dst):
                buckets[(a.src, arrows[j].dst)].append((i, j))
        return buckets

    def dimensions(self, max_degree: int) -> np.ndarray:
        """Hilbert matrices of the quotient, degree by degree.

        The degree-(l+1) part is (A_l tensor arrows) modulo the images of the
        relations placed at the right end; relations further left are
        already zero in A_l.
        """
        verts = self.quiver.vertices
        arrows = self.quiver.arrows
        H = np.zeros((max_degree + 1, len(verts), len(verts)), dtype=np.int64)
        by_start: Dict[Vertex, List[Dict[Path, Fraction]]] = defaultdict(list)
        for r in self.relations:
            first = next(iter(r))
            by_start[arrows[first[0]].src].append(r)
        for vi, v in enumerate(verts):
            # basis of degree l: list of (label, endpoint); reductions of candidates
            basis_prev2: Optional[List] = None
            reduce_prev: Optional[Dict] = None  # (basis index at l-1, arrow) -> vector over basis l
            basis = [((), v)]
            H[0, vi, vi] = 1
            for l in range(1, max_degree + 1):
                cands = []
                for bi, (_, end) in enumerate(basis):
                    for ai in self.quiver.out_arrows(end):
                        cands.append((bi, ai))
                col = {c: j for j, c in enumerate(cands)}
                ech = linalg.Echelon()
                if l >= 2:
                    for bi, (_, end) in enumerate(basis_prev2):
                        for r in by_start.get(end, []):
                            vec: Dict[int, Fraction] = {}
                            for (a1, a2), c in r.items():
                                for mid, c2 in reduce_prev[(bi, a1)].items():
                                    j = col[(mid, a2)]
                                    vec[j] = vec.get(j, 0) + c * c2
                            ech.add(vec)
                free = [j for j in range(len(cands)) if j not in ech.rows]
                new_index = {j: t for t, j in enumerate(free)}
                reduction = {}
                for j, cand in enumerate(cands):
                    red = ech.reduce({j: Fraction(1)})
                    reduction[cand] = {new_index[c]: x for c, x in red.items()}
                new_basis = [(cands[j], arrows[cands[j][1]].dst) for j in free]
                for _, end in new_basis:
                    H[l, verts.index(end), vi] += 1
                basis_prev2, reduce_prev, basis = basis, reduction, new_basis
        return H

    def relation_space(self) -> Dict[Tuple[Vertex, Vertex], List[Dict[Path, Fraction]]]:
        out: Dict[Tuple[Vertex, Vertex], List[Dict[Path, Fraction]]] = defaultdict(list)
        arrows = self.quiver.arrows
        for r in self.relations:
            p = next(iter(r))
            out[(arrows[p[0]].src, arrows[p[1]].dst)].append(r)
        return out


def quadratic_part(alg: QuiverAlgebra) -> QuadraticPresentation:
    """Relations of degree 2: differences of equivalent length-2 paths."""
    if any(a.length != 1 for a in alg.quiver.arrows):
        raise QuiverError("quadratic presentations need every arrow in degree 1")
    rels = []
    for v in alg.quiver.vertices:
        for w, cls in alg.classes(v, 2).items():
            for c in cls:
                for p in c[1:]:
                    rels.append({c[0]: Fraction(1), p: Fraction(-1)})
    return QuadraticPresentation(alg.quiver, rels)


def is_quadratic(alg: QuiverAlgebra, max_degree: int = 4) -> bool:
    """Whether the degree-2 relations already produce the full quotient up to ``max_degree``."""
    try:
        qp = quadratic_part(alg)
    except QuiverError:
        return False
    return bool(np.array_equal(qp.dimensions(max_degree), hilbert_matrix(alg, max_degree)))


def orthogonal_complement(qp: QuadraticPresentation) -> QuadraticPresentation:
    """Relations of the dual algebra: per endpoint pair, the annihilator of R."""
    rels = []
    buckets = qp.degree_two_paths()
    spaces = qp.relation_space()
    for key in sorted(buckets):
        paths = sorted(buckets[key])
        pos = {p: i for i, p in enumerate(paths)}
        rows = [{pos[p]: c for p, c in r.items()} for r in spaces.get(key, [])]
        for vec in linalg.nullspace(rows, len(paths)):
            rels.append({paths[i]: c for i, c in vec.items()})
    return QuadraticPresentation(qp.quiver, rels)


def quadratic_dual(alg) -> QuadraticPresentation:
    """Quadratic dual presentation on the same quiver (arrows identified with their duals).

    The primed algebras are accepted, but whether they are Koszul is open, so
    the dual is only a formal construction for them.
    """
    qp = alg if isinstance(alg, QuadraticPresentation) else quadratic_part(alg)
    if isinstance(alg, QuiverAlgebra) and not is_quadratic(alg):
        raise QuiverError(f"{alg.family}({alg.k}) is not generated by quadratic relations")
    return orthogonal_complement(qp)


def sign_renormalization(quiver: Quiver) -> Dict[int, int]:
    """Sign for the arrow v -> v + e_i: (-1)^(v, e_1 + ... + e_i)."""
    out = {}
    for idx, a in enumerate(quiver.arrows):
        (i,) = a.colors
        out[idx] = -1 if sum(a.src[:i]) % 2 else 1
    return out


def renormalized(qp: QuadraticPresentation) -> QuadraticPresentation:
    sign = sign_renormalization(qp.quiver)
    rels = [{p: c * sign[p[0]] * sign[p[1]] for p, c in r.items()} for r in qp.relations]
    return QuadraticPresentation(qp.quiver, rels)


def relation_patterns(qp: QuadraticPresentation) -> Dict[str, bool]:
    """Classify the relation space against the two-generator patterns.

    For colors i != j at a vertex, ``anticommute`` asks for x_i x_j + x_j x_i,
    ``commute`` for x_i x_j - x_j x_i; at the return trips ``squares_equal``
    asks for x_i^2 - x_j^2, ``squares_zero`` for every x_i^2 and
    ``square_sum`` for the sum of all x_i^2.
    """
    spaces = qp.relation_space()
    buckets = qp.degree_two_paths()
    found = {"anticommute": True, "commute": True, "squares_equal": True, "squares_zero": True,
             "square_sum": True}

    def contains(key, vec):
        paths = sorted(buckets[key])
        pos = {p: i for i, p in enumerate(paths)}
        ech = linalg.Echelon()
        for r in spaces.get(key, []):
            ech.add({pos[p]: c for p, c in r.items()})
        return ech.contains({pos[p]: c for p, c in vec.items()})

    for key, paths in buckets.items():
        src, dst = key
        if src == dst:
            trips = sorted(paths)
            for a, b in itertools.combinations(trips, 2):
                found["squares_equal"] &= contains(key, {a: Fraction(1), b: Fraction(-1)})
            for a in trips:
                found["squares_zero"] &= contains(key, {a: Fraction(1)})
            found["square_sum"] &= contains(key, {p: Fraction(1) for p in trips})
        else:
            if len(paths) != 2:
                continue
            p, q = sorted(paths)
            found["anticommute"] &= contains(key, {p: Fraction(1), q: Fraction(1)})
            found["commute"] &= contains(key, {p: Fraction(1), q: Fraction(-1)})
    return found


def koszul_numeric_check(alg, max_degree: int = 6) -> dict:
    """H_dual(-t) H(t) = I modulo t^(max_degree+1), a necessary condition for Koszulity."""
    if isinstance(alg, QuiverAlgebra):
        if not is_quadratic(alg, min(max_degree, 4)):
            raise QuiverError(f"{alg.family}({alg.k}) is not quadratic")
        H = hilbert_matrix(alg, max_degree)
        qp = quadratic_part(alg)
        label = f"{alg.family}({alg.k})"
    else:
        qp = alg
        H = qp.dimensions(max_degree)
        label = "presentation"
    Hd = orthogonal_complement(qp).dimensions(max_degree)
    nv = H.shape[1]
    first_bad = None
    for l in range(max_degree + 1):
        acc = np.zeros((nv, nv), dtype=np.int64)
        for i in range(l + 1):
            acc += (-1) ** i * Hd[i] @ H[l - i]
        want = np.eye(nv, dtype=np.int64) if l == 0 else np.zeros((nv, nv), dtype=np.int64)
        if not np.array_equal(acc, want):
            first_bad = l
            break
    return {"algebra": label, "max_degree": max_degree,
            "status": "pass" if first_bad is None else "fail",
            "failing_degree": first_bad,
            "note": "necessary condition only"}


def drop_one_square(family: str = "A", k: int = 3) -> QuadraticPresentation:
    """Negative control: the quadratic relations minus one commuting square."""
    qp = quadratic_part(build_algebra(family, k))
    arrows = qp.quiver.arrows
    for idx, r in enumerate(qp.relations):
        p = next(iter(r))
        if arrows[p[0]].src != arrows[p[1]].dst:
            return QuadraticPresentation(qp.quiver, qp.relations[:idx] + qp.relations[idx + 1:])
    raise QuiverError("no commuting square to drop")


# -- wildness witnesses ------------------------------------------------------------

def _target(name: str) -> Tuple[int, List[Tuple[int, int]]]:
    return {
        # loop at 0 and an arrow 1 -> 0
        "loop_arrow": (2, [(0, 0), (1, 0)]),
        # 4-cycle with alternating orientation plus a pendant arrow
        "five_vertex": (5, [(0, 1), (0, 3), (2, 1), (4, 3), (4, 1)]),
        # 2-cycle with an arrow into it
        "cycle_arrow": (3, [(0, 1), (1, 0), (2, 1)]),
    }[name]


def free_path_hilbert(nv: int, arrows: Sequence[Tuple[int, int]], max_degree: int) -> np.ndarray:
    H = np.zeros((max_degree + 1, nv, nv), dtype=np.int64)
    A = np.zeros((nv, nv), dtype=np.int64)
    for s, d in arrows:
        A[d, s] += 1
    M = np.eye(nv, dtype=np.int64)
    for l in range(max_degree + 1):
        H[l] = M
        M = A @ M
    return H


def quotient_hilbert(alg: QuiverAlgebra, killed_arrows: Sequence[int],
                     kept_vertices: Sequence[Vertex], max_degree: int) -> np.ndarray:
    """Hilbert data of alg modulo killed arrows and the idempotents not kept.

    A class survives exactly when none of its paths uses a killed generator.
    """
    killed = set(killed_arrows)
    keep = set(kept_vertices)
    arrows = alg.quiver.arrows
    kv = list(kept_vertices)

    def alive(v, p):
        if v not in keep:
            return False
        for i in p:
            if i in killed or arrows[i].dst not in keep:
                return False
        return True

    H = np.zeros((max_degree + 1, len(kv), len(kv)), dtype=np.int64)
    for l in range(max_degree + 1):
        for vi, v in enumerate(kv):
            for w, cls in alg.classes(v, l).items():
                if w in keep:
                    H[l, kv.index(w), vi] = sum(1 for c in cls if all(alive(v, p) for p in c))
    return H


def _embeddings(alg: QuiverAlgebra, nv: int, tarrows: Sequence[Tuple[int, int]]):
    """Injective vertex maps sending every target arrow to a distinct arrow of alg."""
    arrows = alg.quiver.arrows
    verts = alg.quiver.vertices
    for image in itertools.permutations(verts, nv):
        used = []
        ok = True
        for s, d in tarrows:
            choice = next((i for i, a in enumerate(arrows)
                           if a.src == image[s] and a.dst == image[d] and i not in used), None)
            if choice is None:
                ok = False
                break
            used.append(choice)
        if ok:
            yield image, used


DECLARED_WILD = {"A": 2, "A'": 2, "A''": 2, "B": 3, "B'": 3, "B''": 3}


def is_declared_wild(family: str, k: int) -> bool:
    return k >= DECLARED_WILD[canonical_family(family)]


def _b2_cover_fixture() -> dict:
    """Subquiver of the universal cover of B''(3)/rad^3, labelled by arrows of B''(3)."""
    return {
        "vertices": ["a", "b", "c", "d", "e", "f", "g", "h"],
        "arrows": {"phi2": ("a", "d"), "alpha1": ("a", "e"), "beta2": ("b", "e"),
                   "gamma1": ("b", "f"), "phi1": ("d", "g"), "alpha2": ("e", "g"),
                   "beta1": ("e", "h"), "gamma2": ("f", "h"), "delta1": ("f", "c")},
        "relations": [(("phi2", "phi1"), ("alpha1", "alpha2")),
                      (("gamma1", "gamma2"), ("beta2", "beta1"))],
    }


def _hexagon_labels() -> Dict[str, Tuple[Vertex, Vertex]]:
    """Names for the twelve arrows of B''(3) around its hexagon L-P-Q-R-T-S."""
    L, P, Q = (1, 0, 0), (1, 1, 0), (0, 1, 0)
    R, T, S = (0, 1, 1), (0, 0, 1), (1, 0, 1)
    return {"phi1": (L, P), "phi2": (P, L), "alpha1": (P, Q), "alpha2": (Q, P),
            "beta1": (Q, R), "beta2": (R, Q), "gamma1": (R, T), "gamma2": (T, R),
            "delta2": (S, T), "delta1": (T, S), "epsilon2": (L, S), "epsilon1": (S, L)}


def _rad3_witness() -> dict:
    alg = build_algebra("B''", 3)
    arrows = alg.quiver.arrows
    labels = _hexagon_labels()
    arrow_of = {}
    for name, (s, d) in labels.items():
        idx = [i for i, a in enumerate(arrows) if a.src == s and a.dst == d]
        if len(idx) != 1:
            return {"status": "fail", "reason": f"no arrow for {name}"}
        arrow_of[name] = idx[0]
    cover = _b2_cover_fixture()
    place: Dict[str, Vertex] = {}
    for name, (s, d) in cover["arrows"].items():
        for node, vert in ((s, labels[name][0]), (d, labels[name][1])):
            if place.setdefault(node, vert) != vert:
                return {"status": "fail", "reason": f"cover vertex {node} placed twice"}

    def same_class(p, q):
        v = arrows[p[0]].src
        for cls in alg.classes(v, len(p)).get(arrows[p[-1]].dst, []):
            if p in cls:
                return q in cls
        return False

    for lhs, rhs in cover["relations"]:
        p = tuple(arrow_of[x] for x in lhs)
        q = tuple(arrow_of[x] for x in rhs)
        if not same_class(p, q):
            return {"status": "fail", "reason": f"relation {lhs} = {rhs} does not hold"}
    # rad^3 quotient: degrees 0..2 of B''(3)
    H = hilbert_matrix(alg, 3)
    dims = [int(H[l].sum()) for l in range(3)]
    return {"status": "pass", "kind": "rad3_cover_fixture", "quotient_dims": dims,
            "cover": {"vertices": cover["vertices"],
                      "arrows": {k: list(v) for k, v in cover["arrows"].items()},
                      "relations": [[list(a), list(b)] for a, b in cover["relations"]]},
            "note": "wildness of the cover subquiver is quoted, not computed"}


def wild_witness(family: str, k: int, max_degree: int = 4,
                 targets: Sequence[str] = ("loop_arrow", "five_vertex", "cycle_arrow")) -> dict:
    """Search for generators whose vanishing leaves a free path algebra of a wild quiver.

    Verification compares Hilbert data up to ``max_degree`` with the target's
    free path algebra, up to relabelling the target's vertices.
    """
    fam = canonical_family(family)
    report = {"family": fam, "k": k}
    if not is_declared_wild(fam, k):
        report.update(status="tame", witness=None)
        return report
    if fam == "B''" and k == 3:
        report.update(_rad3_witness())
        return report
    alg = build_algebra(fam, k)
    arrows = alg.quiver.arrows
    for tname in targets:
        nv, tarrows = _target(tname)
        if nv > len(alg.quiver.vertices):
            continue
        T = free_path_hilbert(nv, tarrows, max_degree)
        for image, used in _embeddings(alg, nv, tarrows):
            killed = [i for i in range(len(arrows)) if i not in used]
            Q = quotient_hilbert(alg, killed, image, max_degree)
            if np.array_equal(Q, T):
                report.update(
                    status="pass", target=tname,
                    kept_vertices=[bits(v) for v in image],
                    kept_arrows=[arrows[i].name for i in used],
                    killed_arrows=[arrows[i].name for i in killed],
                    killed_vertices=[bits(v) for v in alg.quiver.vertices if v not in image],
                    max_degree=max_degree)
                return report
    report.update(status="fail", witness=None,
                  reason="no quotient by arrows and idempotents is a free path algebra of "
                         "the searched wild quivers")
    return report


def verify_named_witness(family: str, k: int, killed: Sequence[str],
                         killed_vertices: Sequence[str], target: str, max_degree: int = 4) -> bool:
    """Check a hand-given vanishing set against a target quiver."""
    alg = build_algebra(family, k)
    names = {a.name: i for i, a in enumerate(alg.quiver.arrows)}
    kv = [v for v in alg.quiver.vertices if bits(v) not in set(killed_vertices)]
    Q = quotient_hilbert(alg, [names[x] for x in killed], kv, max_degree)
    nv, tarrows = _target(target)
    if len(kv) != nv:
        return False
    T = free_path_hilbert(nv, tarrows, max_degree)
    for perm in itertools.permutations(range(nv)):
        P = np.eye(nv, dtype=np.int64)[list(perm)]
        if all(np.array_equal(Q[l], P @ T[l] @ P.T) for l in range(max_degree + 1)):
            return True
    return False


# -- tame cases -----------------------------------------------------------------------

@dataclass(frozen=True)
class NilpotentModule:
    """A nilpotent operator on a (possibly Z/2-graded) space.

    ``parities`` is None for ungraded modules; the operator maps basis vector
    i to i+1 (a single Jordan chain).
    """

    dim: int
    parities: Optional[Tuple[int, ...]] = None

    def operator(self) -> List[List[Fraction]]:
        m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for i in range(self.dim - 1):
            m[i + 1][i] = Fraction(1)
        return m

    @property
    def superdimension(self) -> Optional[Tuple[int, int]]:
        if self.parities is None:
            return None
        return (self.parities.count(0), self.parities.count(1))

    def to_json(self) -> dict:
        out = {"dim": self.dim}
        if self.parities is not None:
            out["superdimension"] = list(self.superdimension)
            out["top_parity"] = self.parities[0]
        return out


def endomorphism_basis(mod: NilpotentModule) -> List[List[List[Fraction]]]:
    """Basis of the maps commuting with the operator (and preserving parity)."""
    n = mod.dim
    N = mod.operator()
    rows = []
    # unknown X[i][j] at column i*n + j; XN - NX = 0
    for i in range(n):
        for j in range(n):
            row: Dict[int, Fraction] = {}
            for m in range(n):
                if N[m][j]:
                    row[i * n + m] = row.get(i * n + m, 0) + N[m][j]
                if N[i][m]:
                    row[m * n + j] = row.get(m * n + j, 0) - N[i][m]
            row = {c: v for c, v in row.items() if v}
            if row:
                rows.append(row)
    if mod.parities is not None:
        for i in range(n):
            for j in range(n):
                if mod.parities[i] != mod.parities[j]:
                    rows.append({i * n + j: Fraction(1)})
    basis = []
    for vec in linalg.nullspace(rows, n * n):
        basis.append([[vec.get(i * n + j, Fraction(0)) for j in range(n)] for i in range(n)])
    return basis


def is_local(basis: Sequence[List[List[Fraction]]]) -> bool:
    """An algebra of matrices is local iff its radical has codimension 1.

    In characteristic 0 the radical is the kernel of the trace form
    (x, y) -> tr(xy) restricted to the algebra.
    """
    r = len(basis)
    if r == 0:
        return False
    gram = []
    for x in basis:
        row = {}
        for j, y in enumerate(basis):
            xy = linalg.matmul(x, y)
            tr = sum((xy[i][i] for i in range(len(xy))), Fraction(0))
            if tr:
                row[j] = tr
        gram.append(row)
    radical = len(linalg.nullspace(gram, r))
    return r - radical == 1


def tame_indecomposables(case: str, max_dim: int) -> List[NilpotentModule]:
    """Indecomposables up to total dimension ``max_dim`` in the two tame cases.

    ``a`` (also ``nonintegral``): nilpotent C[z]-modules, one Jordan block per
    dimension.  ``b`` (also ``integral``, ``A1``, ``B1``): Z/2-graded nilpotent
    C[theta]-modules with theta odd, two graded Jordan chains per dimension.
    """
    key = case.strip().lower()
    if key in ("a", "nonintegral"):
        return [NilpotentModule(m) for m in range(1, max_dim + 1)]
    if key in ("b", "integral", "a1", "b1"):
        out = []
        for m in range(1, max_dim + 1):
            for top in (0, 1):
                out.append(NilpotentModule(m, tuple((top + i) % 2 for i in range(m))))
        return out
    raise QuiverError(f"no tame classification for case {case!r}")


def superdimension_count(total: int) -> int:
    """Expected number of graded indecomposables of a given total dimension."""
    return 2 if total >= 1 else 0


def tame_report(case: str, max_dim: int) -> dict:
    mods = tame_indecomposables(case, max_dim)
    by_dim: Dict[int, int] = defaultdict(int)
    local = True
    for m in mods:
        by_dim[m.dim] += 1
        local &= is_local(endomorphism_basis(m))
    graded = case.strip().lower() not in ("a", "nonintegral")
    want = {d: (superdimension_count(d) if graded else 1) for d in range(1, max_dim + 1)}
    supers = sorted({m.superdimension for m in mods if m.superdimension is not None})
    ok = dict(by_dim) == want and local
    if graded:
        # superdimensions must be exactly (m+1, m), (m, m+1) and (m, m)
        allowed = {(m + 1, m) for m in range(max_dim)} | {(m, m + 1) for m in range(max_dim)} \
            | {(m, m) for m in range(1, max_dim)}
        ok &= set(supers) <= allowed
        # the two (m, m) modules are parity shifts of each other, not isomorphic as graded modules
        pairs = [m for m in mods if m.dim % 2 == 0]
        ok &= all(len({p.parities for p in pairs if p.dim == d}) == 2 for d in {p.dim for p in pairs})
    return {"case": case, "max_dim": max_dim, "status": "pass" if ok else "fail",
            "counts": {str(d): c for d, c in sorted(by_dim.items())},
            "local_endomorphisms": local,
            "modules": [m.to_json() for m in mods]}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)

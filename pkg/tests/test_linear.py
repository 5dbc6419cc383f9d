from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylweight import linalg
from weylweight.core import d, t
from weylweight.homsolve import generators, least_kernel, solve_hom
from weylweight.modfam import LogModule, act, box

small_ints = st.integers(-3, 3)


@st.composite
def matrices(draw):
    rows = draw(st.integers(1, 5))
    cols = draw(st.integers(1, 5))
    return [[draw(small_ints) for _ in range(cols)] for _ in range(rows)]


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_numpy(m):
    assert linalg.rank(linalg.dense_to_sparse(m)) == np.linalg.matrix_rank(np.array(m, dtype=float))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_nullspace_is_kernel_of_right_size(m):
    ncols = len(m[0])
    basis = linalg.nullspace(linalg.dense_to_sparse(m), ncols)
    assert len(basis) == ncols - np.linalg.matrix_rank(np.array(m, dtype=float))
    for vec in basis:
        for row in m:
            assert sum(Fraction(row[j]) * c for j, c in vec.items()) == 0


@settings(max_examples=50, deadline=None)
@given(matrices(), st.lists(small_ints, min_size=5, max_size=5))
def test_solve_consistent_systems(m, x):
    ncols = len(m[0])
    rhs = [sum(Fraction(a) * b for a, b in zip(row, x)) for row in m]
    sol = linalg.solve(linalg.dense_to_sparse(m), rhs, ncols)
    assert sol is not None
    for row, r in zip(m, rhs):
        assert sum(Fraction(row[j]) * c for j, c in sol.items()) == r


def test_solve_inconsistent():
    assert linalg.solve([{0: Fraction(1)}, {0: Fraction(1)}], [Fraction(0), Fraction(1)], 1) is None


def test_nilpotent():
    assert linalg.is_nilpotent([[0, 1], [0, 0]])
    assert not linalg.is_nilpotent([[0, 1], [1, 0]])


@pytest.mark.parametrize("u_bound", [1, 2, 3, 4])
def test_endomorphisms_of_log_truncation(u_bound):
    M = LogModule(0, (Fraction(1, 3),), u_bound=u_bound)
    homs = solve_hom(M, M, box(0, 4))
    assert len(homs) == u_bound


def test_solutions_commute_with_generators():
    M = LogModule(1, (Fraction(1, 2), Fraction(1, 3)), u_bound=2)
    bounds = box(1, 2)
    for h in solve_hom(M, M, bounds):
        for w in [(0, 0), (1, -1)]:
            for a in M.log_exponents():
                v = M.monomial(w, a)
                for g in generators(2):
                    assert h.apply(act(g, v)) == act(g, h.apply(v))


def test_no_maps_between_cosets():
    M = LogModule(0, (Fraction(1, 3),))
    N = LogModule(0, (Fraction(1, 2),))
    assert solve_hom(M, N, box(0, 3)) == []


def test_twisted_integral_pair():
    # the untwisted and twisted copies of C[t, 1/t] at an integral weight
    Mu = LogModule(0, (0,), u_bound=1)
    Mt = LogModule(0, (0,), frozenset({0}), u_bound=1)
    down, = solve_hom(Mu, Mt, box(0, 4))
    up, = solve_hom(Mt, Mu, box(0, 4))
    # one kills the polynomials, the other lands in them
    assert [down.rank_at((w,)) for w in (-2, -1, 0, 1)] == [1, 1, 0, 0]
    assert [up.rank_at((w,)) for w in (-2, -1, 0, 1)] == [0, 0, 1, 1]
    h = least_kernel(solve_hom(Mu, Mu, box(0, 4)), (0,))
    assert not h.is_zero()


def test_compose_and_combine():
    M = LogModule(0, (Fraction(1, 3),), u_bound=2)
    homs = solve_hom(M, M, box(0, 3))
    s = homs[0] + homs[1]
    v = M.monomial((1,), (1,))
    assert s.apply(v) == homs[0].apply(v) + homs[1].apply(v)
    assert homs[0].compose(homs[1]).apply(v) == homs[0].apply(homs[1].apply(v))
    assert act(t(0, 1) * d(0, 1), v)

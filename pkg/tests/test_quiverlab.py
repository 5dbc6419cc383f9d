import itertools
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylweight import quiverlab as ql


def monomial_count(k, v, w, degree):
    """Exponent vectors of total degree ``degree`` whose parities flip v into w."""
    parity = tuple(a ^ b for a, b in zip(v, w))
    return sum(1 for e in itertools.product(range(degree + 1), repeat=k)
               if sum(e) == degree and tuple(x % 2 for x in e) == parity)


def walk_count(k, v, w, degree):
    """B(k) is spanned by one path per reachable (endpoint, length)."""
    h = sum(a ^ b for a, b in zip(v, w))
    return 1 if degree >= h and (degree - h) % 2 == 0 else 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_a_counts_match_monomials(k):
    alg = ql.build_algebra("A", k)
    for v in alg.quiver.vertices:
        for w in alg.quiver.vertices:
            for l in range(6):
                assert alg.path_classes(v, w, l) == monomial_count(k, v, w, l)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_b_counts(k):
    alg = ql.build_algebra("B", k)
    H = ql.hilbert_matrix(alg, 5)
    verts = alg.quiver.vertices
    for l, (vi, v), (wi, w) in itertools.product(range(6), enumerate(verts), enumerate(verts)):
        assert H[l, wi, vi] == walk_count(k, v, w, l)


def test_total_dimensions():
    H = ql.hilbert_matrix(ql.build_algebra("A", 2), 4)
    assert [int(H[l].sum()) for l in range(5)] == [4, 8, 12, 16, 20]
    assert int(H[2].sum()) == 2 ** 2 * comb(3, 2)
    B = ql.hilbert_matrix(ql.build_algebra("B", 3), 3)
    assert [int(B[l].sum()) for l in range(4)] == [8, 24, 32, 32]


def test_closed_form_matrix():
    for fam in ("A", "B"):
        for k in (1, 2, 3):
            assert np.array_equal(ql.closed_form_matrix(fam, k, 5),
                                  ql.hilbert_matrix(ql.build_algebra(fam, k), 5))
    with pytest.raises(ql.QuiverError):
        ql.closed_form_matrix("A'", 2, 3)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([("A", 2), ("A'", 3), ("A''", 2), ("B'", 3)]), st.integers(0, 10 ** 6))
def test_classes_do_not_depend_on_arrow_order(case, seed):
    alg = ql.build_algebra(*case)
    H = ql.hilbert_matrix(alg, 4)
    assert np.array_equal(ql.hilbert_matrix(alg.shuffled(seed), 4), H)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=20))
def test_union_find_matches_naive_closure(n, pairs):
    pairs = [(a % n, b % n) for a, b in pairs]
    uf = ql.UnionFind(n)
    for a, b in pairs:
        uf.union(a, b)
    # naive closure by repeated label propagation
    label = list(range(n))
    changed = True
    while changed:
        changed = False
        for a, b in pairs:
            m = min(label[a], label[b])
            if label[a] != m or label[b] != m:
                label[a] = label[b] = m
                changed = True
    assert uf.classes() == len(set(label))
    for a in range(n):
        for b in range(n):
            assert (uf.find(a) == uf.find(b)) == (label[a] == label[b])


def test_special_rank_two_algebras():
    a2 = ql.build_algebra("A''", 2)
    assert len(a2.quiver.vertices) == 2 and len(a2.quiver.arrows) == 6
    b2 = ql.build_algebra("B''", 2)
    b1 = ql.build_algebra("B", 1)
    assert np.array_equal(ql.hilbert_matrix(b2, 5), ql.hilbert_matrix(b1, 5))


def test_family_names():
    assert ql.canonical_family("AP") == "A'"
    assert ql.canonical_family("B″") == "B''"
    with pytest.raises(ql.QuiverError):
        ql.canonical_family("C")
    with pytest.raises(ql.QuiverError):
        ql.build_algebra("A'", 1)


@pytest.mark.parametrize("fam,k", [("A'", 2), ("A'", 3), ("A''", 3), ("B'", 2), ("B'", 3), ("B''", 3)])
def test_truncation(fam, k):
    assert ql.truncation_check(fam, k, 4)["status"] == "pass"


def test_json_roundtrip():
    q = ql.build_algebra("B'", 3).quiver
    assert ql.quiver_from_json(q.to_json()) == q
    looped = ql.build_algebra("A'", 2).quiver
    assert ql.quiver_from_json(looped.to_json()) == looped
    assert looped.to_dot().startswith('digraph "Q" {')


@pytest.mark.parametrize("fam,k", [("A", 2), ("A", 3), ("B", 2), ("B", 3)])
def test_koszul_numeric(fam, k):
    assert ql.koszul_numeric_check(ql.build_algebra(fam, k), 6)["status"] == "pass"


def test_koszul_negative_control():
    rep = ql.koszul_numeric_check(ql.drop_one_square("A", 3), 6)
    assert rep["status"] == "fail" and rep["failing_degree"] <= 4


@pytest.mark.parametrize("fam,k", [("A", 2), ("B", 2), ("A", 3)])
def test_dual_of_dual(fam, k):
    qp = ql.quadratic_part(ql.build_algebra(fam, k))
    twice = ql.orthogonal_complement(ql.orthogonal_complement(qp))
    assert np.array_equal(twice.dimensions(4), qp.dimensions(4))


def test_dual_relation_patterns():
    # renormalized B(k) relations look like anticommuting generators with equal squares
    qp = ql.renormalized(ql.quadratic_part(ql.build_algebra("B", 3)))
    pats = ql.relation_patterns(qp)
    assert pats["anticommute"] and pats["squares_equal"]
    dual = ql.relation_patterns(ql.renormalized(ql.quadratic_dual(ql.build_algebra("B", 3))))
    assert dual["commute"] and dual["square_sum"]
    a = ql.relation_patterns(ql.quadratic_part(ql.build_algebra("A", 3)))
    assert a["commute"] and not a["squares_zero"]
    assert ql.relation_patterns(ql.quadratic_dual(ql.build_algebra("A", 3)))["anticommute"]


def test_free_path_hilbert_is_adjacency_powers():
    nv, arrows = 3, [(0, 1), (1, 0), (2, 1)]
    H = ql.free_path_hilbert(nv, arrows, 4)
    A = np.zeros((nv, nv), dtype=np.int64)
    for s, d in arrows:
        A[d, s] += 1
    for l in range(5):
        assert np.array_equal(H[l], np.linalg.matrix_power(A, l))


def test_quotient_without_kills_is_the_algebra():
    alg = ql.build_algebra("A", 2)
    assert np.array_equal(ql.quotient_hilbert(alg, [], alg.quiver.vertices, 4),
                          ql.hilbert_matrix(alg, 4))


def test_named_witness_for_the_two_vertex_case():
    assert ql.verify_named_witness("A''", 2, ["alpha", "gamma", "epsilon", "phi"], [], "loop_arrow")
    assert not ql.verify_named_witness("A''", 2, ["alpha", "gamma", "epsilon"], [], "loop_arrow")


@pytest.mark.parametrize("fam,k", [("A", 3), ("B", 3), ("A'", 2), ("B'", 3), ("B''", 3)])
def test_wild_witness_found(fam, k):
    assert ql.wild_witness(fam, k)["status"] == "pass"


@pytest.mark.parametrize("fam,k", [("A", 1), ("B", 1), ("B", 2), ("B''", 2)])
def test_tame_cases_give_no_witness(fam, k):
    rep = ql.wild_witness(fam, k)
    assert rep["status"] == "tame" and rep["witness"] is None


def test_local_endomorphisms():
    assert ql.is_local(ql.endomorphism_basis(ql.NilpotentModule(4)))
    assert ql.is_local(ql.endomorphism_basis(ql.NilpotentModule(3, (0, 1, 0))))
    # all of End(k^2) is not local
    units = [[[Fraction(int((i, j) == (a, b))) for j in range(2)] for i in range(2)]
             for a in range(2) for b in range(2)]
    assert not ql.is_local(units)


@pytest.mark.parametrize("case,per_dim", [("a", 1), ("b", 2)])
def test_tame_reports(case, per_dim):
    rep = ql.tame_report(case, 8)
    assert rep["status"] == "pass"
    assert set(rep["counts"].values()) == {per_dim}
    with pytest.raises(ql.QuiverError):
        ql.tame_indecomposables("c", 3)

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylweight.core import d, t
from weylweight.functors import (DShift, Gamma, GammaSlice, RootShift, SigmaTwist, TShift, certify,
                                 check_intertwiner, commuting_square_check, gamma_a,
                                 gamma_vanishing_expected, gamma_vanishing_table, localize,
                                 root_shift_parameters, root_shift_pipeline, spanning_pairs,
                                 target_module)
from weylweight.modfam import LogModule, box

fracs = st.fractions(min_value=-1, max_value=1, max_denominator=4)


def test_gamma_example_rank_one():
    table = gamma_vanishing_table(1, -1)
    zero = sorted(sorted(J) for J, nonzero in table.items() if not nonzero)
    assert zero == [[], [0, 1]]


@pytest.mark.parametrize("n", [1, 2])
def test_gamma_table_matches_rule(n):
    for a in range(-n - 2, 3):
        assert gamma_vanishing_table(n, a) == gamma_vanishing_expected(n, a)


def test_gamma_slice_is_closed_under_centralizer():
    M = LogModule(1, (Fraction(1, 2), Fraction(-1, 2)), u_bound=2)
    sl = gamma_a(M, 0)
    assert sl.allowed
    keys = sl.basis(box(1, 3))
    assert keys and all(M.e_value(k) == 0 for k in keys)
    v = M.monomial((1, -1), (1, 0))
    image = sl.act(t(0, 2) * d(1, 2), v)
    assert all(M.e_value(k) == 0 for k in image.terms)
    assert not GammaSlice(M, Fraction(1, 2)).allowed


def test_closed_form_targets():
    M = LogModule(1, (Fraction(1, 4), 0), frozenset({1}), 2)
    assert target_module(M, TShift(1, Fraction(1, 2))).J == frozenset()
    assert target_module(M, TShift(1, Fraction(1, 2))).nu == (Fraction(1, 4), Fraction(1, 2))
    assert target_module(M, DShift(0, Fraction(1, 2))).nu == (Fraction(-1, 4), 0)
    assert target_module(M, DShift(0, 0)).J == frozenset({0, 1})
    assert target_module(M, SigmaTwist({0, 1})).J == frozenset({0})
    with pytest.raises(ValueError):
        target_module(M, Gamma(0))


@settings(max_examples=12, deadline=None)
@given(st.data())
def test_single_shifts_are_certified(data):
    n = data.draw(st.integers(0, 1))
    nu = tuple(data.draw(st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(-1, 2)]))
               for _ in range(n + 1))
    J = frozenset(i for i in range(n + 1) if data.draw(st.booleans()))
    M = LogModule(n, nu, J, 2)
    kind = data.draw(st.sampled_from([TShift, DShift]))
    desc = kind(data.draw(st.integers(0, n)), data.draw(fracs))
    rep = certify(localize(M, desc), 3)
    assert rep.passed, rep.witness


def test_root_shift_certified():
    M = LogModule(1, (Fraction(1, 4), Fraction(1, 5)), frozenset(), 2)
    loc = localize(M, RootShift(0, 1, Fraction(1, 3)))
    assert loc.dst.nu == (Fraction(7, 12), Fraction(-2, 15))
    assert loc.dst.J == frozenset({1})
    assert certify(loc, 4).passed


def test_composite_accumulates_parameters():
    M = LogModule(0, (Fraction(1, 3),), frozenset(), 2)
    loc = localize(M, [TShift(0, Fraction(1, 4)), TShift(0, Fraction(1, 2))])
    assert loc.x == [Fraction(3, 4)]
    assert loc.dst == localize(M, TShift(0, Fraction(3, 4))).dst
    assert certify(loc, 3).passed


def test_gamma_is_not_a_localization():
    with pytest.raises(ValueError):
        localize(LogModule(0, (0,)), Gamma(0))


def test_broken_certificates_fail_with_witness():
    M = LogModule(0, (0,), frozenset(), 3)
    loc = localize(M, DShift(0, 0))
    flipped = check_intertwiner(loc.src, loc.dst, loc.corr.with_sign([0]), loc.F, loc.x, 5)
    assert flipped.status == "fail" and flipped.witness
    shifted = check_intertwiner(loc.src, loc.dst, loc.corr, loc.F, [Fraction(1, 2)], 5)
    assert shifted.status == "fail" and shifted.witness


def test_spanning_pairs_and_parameters():
    assert spanning_pairs(2, {0}) == [(1, 0), (2, 0)]
    assert spanning_pairs(3, {1, 3}) == [(0, 1), (0, 3), (2, 1)]
    with pytest.raises(ValueError):
        spanning_pairs(2, {0, 1, 2})
    mu = (Fraction(1, 3),) * 3
    nu = (Fraction(0), Fraction(0), Fraction(1))
    z = root_shift_parameters(mu, nu, {0, 1})
    # row and column sums reproduce nu - mu
    for i in range(3):
        out_sum = sum(v for (a, b), v in z.items() if a == i)
        in_sum = sum(v for (a, b), v in z.items() if b == i)
        assert out_sum - in_sum == nu[i] - mu[i]
    with pytest.raises(ValueError):
        root_shift_parameters(mu, (0, 0, 0), {0})


@pytest.mark.parametrize("J", [(0,), (1, 2)])
def test_pipeline(J):
    rep = root_shift_pipeline((Fraction(1, 3),) * 3, (0, 0, 1), J, u_bound=1, window=3)
    assert rep.passed, rep.witness


def test_commuting_squares():
    M = LogModule(1, (0, 0), frozenset(), 2)
    assert commuting_square_check(TShift(0, Fraction(1, 2)), DShift(1, Fraction(1, 3)), M).passed
    rep = commuting_square_check(Gamma(0), RootShift(0, 1, Fraction(1, 3)),
                                 LogModule(1, (Fraction(1, 2), Fraction(-1, 2)), frozenset(), 2))
    assert rep.passed

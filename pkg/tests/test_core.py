from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from weylweight.core import (Automorphism, DimensionError, LocalizationError, TwistError,
                             WeylElement, apply_automorphism, commutator, d, euler,
                             euler_degree, parse_weyl, psi_embed, render_weyl, t, theta_twist)

coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=4)
rationals = st.fractions(min_value=-2, max_value=2, max_denominator=6)


@st.composite
def elements(draw, nvars=None, max_exp=2, max_terms=3):
    n = nvars if nvars is not None else draw(st.integers(1, 2))
    exps = st.tuples(*[st.integers(0, max_exp)] * n)
    terms = draw(st.dictionaries(st.tuples(exps, exps), coeffs, max_size=max_terms))
    return WeylElement(n, terms)


def as_op(u):
    return dict(u.terms)


GENERIC = (Fraction(1, 3), Fraction(-2, 7))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_product_matches_composition_of_operators(data):
    a = data.draw(elements())
    b = data.draw(elements(nvars=a.nvars))
    f = oracles.power_function(GENERIC[:a.nvars])
    assert oracles.apply(as_op(a * b), f) == oracles.apply(as_op(a), oracles.apply(as_op(b), f))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_ring_axioms(data):
    a = data.draw(elements(max_terms=2))
    b = data.draw(elements(nvars=a.nvars, max_terms=2))
    c = data.draw(elements(nvars=a.nvars, max_terms=2))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert commutator(a, b) == -commutator(b, a)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_canonical_commutation(n):
    for i in range(n):
        for j in range(n):
            assert commutator(d(i, n), t(j, n)) == (1 if i == j else 0)
            assert commutator(t(i, n), t(j, n)) == 0
            assert commutator(d(i, n), d(j, n)) == 0


def test_normal_order_of_d_t():
    assert d(0, 1) * t(0, 1) == t(0, 1) * d(0, 1) + 1
    # d^2 t^2 = t^2 d^2 + 4 t d + 2
    assert d(0, 1, 2) * t(0, 1, 2) == parse_weyl("t0^2*d0^2 + 4*t0*d0 + 2", 1)


def test_mismatched_variables_raise():
    with pytest.raises(DimensionError):
        t(0, 1) * t(0, 2)


def test_double_localization_rejected():
    with pytest.raises(LocalizationError):
        WeylElement(1, {((-1,), (-1,)): 1})


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_sigma_is_multiplicative(data):
    a = data.draw(elements(max_terms=2))
    b = data.draw(elements(nvars=a.nvars, max_terms=2))
    J = data.draw(st.sets(st.integers(0, a.nvars - 1)))
    s = Automorphism.sigma(J)
    assert apply_automorphism(s, a * b) == apply_automorphism(s, a) * apply_automorphism(s, b)


def test_sigma_squared_is_sign():
    s = Automorphism.sigma({0})
    assert apply_automorphism(s, apply_automorphism(s, t(0, 2))) == -t(0, 2)
    assert apply_automorphism(s, apply_automorphism(s, t(1, 2))) == t(1, 2)
    marker, comp = s.compose(s)
    assert marker == 1 and comp.J == frozenset()


def test_sigma_refuses_localized_index():
    with pytest.raises(TwistError):
        apply_automorphism(Automorphism.sigma({0}), t(0, 1).inverse())


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_theta_on_t_is_conjugation_of_power_functions(data):
    u = data.draw(elements(max_exp=2, max_terms=2))
    i = data.draw(st.integers(0, u.nvars - 1))
    x = data.draw(rationals)
    f = oracles.power_function(GENERIC[:u.nvars])
    got = oracles.apply(as_op(theta_twist([t(i, u.nvars)], [x], u)), f)
    assert got == oracles.conjugate_power(as_op(u), f, i, x)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_theta_homomorphism_and_additivity(data):
    n = data.draw(st.integers(1, 2))
    F = [data.draw(st.sampled_from([t(0, n), d(0, n)] + ([t(1, n), d(1, n)] if n > 1 else [])))]
    a = data.draw(elements(nvars=n, max_terms=2))
    b = data.draw(elements(nvars=n, max_terms=2))
    x, y = data.draw(rationals), data.draw(rationals)
    assert theta_twist(F, [x], a * b) == theta_twist(F, [x], a) * theta_twist(F, [x], b)
    assert theta_twist(F, [x], theta_twist(F, [y], a)) == theta_twist(F, [x + y], a)


@pytest.mark.parametrize("k", [-2, -1, 1, 3])
def test_theta_integer_is_conjugation(k):
    n = 2
    f = t(0, n)
    fk = f ** k if k >= 0 else f.inverse() ** -k
    fmk = f.inverse() ** k if k >= 0 else f ** -k
    for u in (d(0, n), t(1, n) * d(0, n, 2), d(0, n) * d(1, n) + t(0, n)):
        assert theta_twist([f], [k], u) == fk * u * fmk


def test_theta_of_d_on_t():
    # ad(d) t = 1, so twisting t by d^x adds x d^-1
    n = 1
    assert theta_twist([d(0, n)], [Fraction(1, 2)], t(0, n)) == t(0, n) + Fraction(1, 2) * d(0, n).inverse()


def test_euler_degree_and_psi():
    n = 3
    assert euler_degree(t(0, n) * d(1, n)) == 0
    assert euler_degree(t(0, n, 2)) == 2
    mixed = euler_degree(t(0, n) + d(0, n))
    assert set(mixed) == {-1, 1}
    assert commutator(euler(n), t(2, n)) == t(2, n)
    # [E_01, E_10] = E_00 - E_11
    assert commutator(psi_embed(0, 1, n), psi_embed(1, 0, n)) == psi_embed(0, 0, n) - psi_embed(1, 1, n)


@pytest.mark.parametrize("text", ["t0^2*d0^2 + 4*t0*d0 + 2", "d0 - (1/2)*t0^-1", "t0*d1 - t1*d0", "-3*d1^2"])
def test_render_parse_roundtrip(text):
    u = parse_weyl(text)
    assert parse_weyl(render_weyl(u), u.nvars) == u


@settings(max_examples=50, deadline=None)
@given(elements(max_terms=3))
def test_roundtrip_random(u):
    assert parse_weyl(render_weyl(u), u.nvars) == u


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_weyl("t0 +* d0", 1)

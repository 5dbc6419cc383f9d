from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from weylweight.core import Automorphism, LocalizationError, WeylElement, apply_automorphism, d, t
from weylweight.modfam import (LogModule, SimpleLabel, WindowOverflow, act, box, integral_indices,
                               list_simples, log_multiplicity, parse_element, parse_weight,
                               render_element, support_bruteforce, support_closed_form,
                               weight_multiplicities, weight_space)


def as_functions(v):
    M = v.owner
    return {(tuple(M.exponent(i, w[i]) for i in range(M.nvars)), a): c for (w, a), c in v.terms.items()}


coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def operators(draw, n):
    exps = st.tuples(*[st.integers(0, 2)] * n)
    return WeylElement(n, draw(st.dictionaries(st.tuples(exps, exps), coeffs, max_size=3)))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_action_matches_power_log_functions(data):
    n = data.draw(st.integers(0, 1))
    nu = data.draw(st.tuples(*[st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(-1, 3)])] * (n + 1)))
    J = frozenset(i for i in range(n + 1) if data.draw(st.booleans()))
    M = LogModule(n, nu, J, u_bound=3)
    w = data.draw(st.tuples(*[st.integers(-2, 2)] * (n + 1)))
    alpha = data.draw(st.sampled_from(M.log_exponents()))
    v = M.monomial(w, alpha)
    u = data.draw(operators(n + 1))
    # on a twisted coordinate the generators act through sigma
    underlying = apply_automorphism(Automorphism.sigma(J), u)
    assert as_functions(act(u, v)) == oracles.apply(dict(underlying.terms), as_functions(v))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_action_is_a_module_structure(data):
    M = LogModule(1, (Fraction(1, 4), Fraction(0)), frozenset({1}), u_bound=2)
    a = data.draw(operators(2))
    b = data.draw(operators(2))
    v = M.monomial((0, 1), (1, 0)) + M.monomial((-1, 0), (0, 1), 3)
    assert act(a * b, v) == act(a, act(b, v))


def test_example_derivative_of_half_power():
    v = parse_element("t0^(1/2)")
    assert render_element(act(d(0, 1), v)) == "(1/2) t0^(-1/2)"


def test_log_derivative():
    v = parse_element("t0^0 u0^2")
    # d/dt (log t)^2 = 2 t^-1 log t
    assert render_element(act(d(0, 1), v)) == "2 t0^-1 u0^1"


def test_weight_vectors_and_generalized_weights():
    M = LogModule(0, (Fraction(1, 3),), u_bound=3)
    h = t(0, 1) * d(0, 1)
    v = M.monomial((2,), (0,))
    assert act(h, v) == v * Fraction(7, 3)
    top = M.monomial((0,), (2,))
    image = act(h, top) - top * Fraction(1, 3)
    assert image == M.monomial((0,), (1,)) * 2
    assert len(weight_space(M, (Fraction(4, 3),))) == 3
    assert weight_space(M, (Fraction(1, 2),)) == []


def test_polynomial_part_refuses_inverse():
    M = SimpleLabel((0,), frozenset()).realization()
    with pytest.raises(LocalizationError):
        act(t(0, 1).inverse(), M.monomial((0,)))
    # t d kills the constant
    assert not act(t(0, 1) * d(0, 1), M.monomial((0,)))


def test_window_overflow():
    M = LogModule(0, (Fraction(1, 2),), window=box(0, 1))
    with pytest.raises(WindowOverflow):
        act(t(0, 1, 3), M.monomial((0,)))


def test_parse_render_roundtrip():
    for text in ["(1/2) t0^(-1/2)", "t0^(1/2) t1^-2 u0^1", "3 t0^(1/3) u0^2"]:
        v = parse_element(text)
        assert render_element(v) == text


def test_labels_and_simples():
    nu = parse_weight("0,1/2,-1")
    assert integral_indices(nu) == {0, 2}
    assert [sorted(s.J) for s in list_simples(nu)] == [[], [0], [2], [0, 2]]
    with pytest.raises(ValueError):
        SimpleLabel(nu, frozenset({1}))


def test_support_closed_form_text():
    assert str(support_closed_form(SimpleLabel((0, 0), frozenset({0})))) == "Z<0*e0 + Z>=0*e1"
    assert str(support_closed_form(SimpleLabel((Fraction(3, 2),)))) == "(1/2+Z)*e0"


@pytest.mark.parametrize("nu,J", [((0,), ()), ((0,), (0,)), ((Fraction(1, 2), 0), (1,)),
                                  ((2, -1), (0, 1))])
def test_support_bruteforce_matches_closed_form(nu, J):
    label = SimpleLabel(nu, frozenset(J))
    lo = tuple(Fraction(-3) for _ in nu)
    hi = tuple(Fraction(3) for _ in nu)
    assert support_bruteforce(label, lo, hi) == support_closed_form(label).points(lo, hi)


def test_multiplicities():
    assert log_multiplicity(1, 3) == 6
    assert log_multiplicity(1, 3, shared_log=True) == 3
    M = LogModule(1, (Fraction(1, 2), 0), u_bound=2)
    table = weight_multiplicities(M, box(1, 1))
    assert len(table) == 9 and {row["dim"] for row in table} == {3}


def test_shared_log_differences_act_semisimply():
    M = LogModule(1, (0, 0), frozenset({1}), u_bound=3, shared_log=True)
    h = t(0, 2) * d(0, 2) - t(1, 2) * d(1, 2)
    for w in [(0, 0), (1, -2), (-1, 3)]:
        for a in M.log_exponents():
            v = M.monomial(w, a)
            lam = M.weight((w, a))
            assert act(h, v) == v * (lam[0] - lam[1])

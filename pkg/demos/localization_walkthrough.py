"""Follow a simple module through a few twisted localizations.

Run with ``python demos/localization_walkthrough.py``.
"""
from fractions import Fraction

from weylweight.core import d, parse_weyl, t, theta_twist
from weylweight.functors import DShift, RootShift, TShift, certify, localize
from weylweight.modfam import LogModule, SimpleLabel, act, parse_element, render_element, support_closed_form


def main():
    # derivatives of power-log functions
    v = parse_element("t0^(1/2) u0^1")
    print("d0 .", v, "=", render_element(act(d(0, 1), v)))

    # the twist by t^x is conjugation even for fractional x
    u = parse_weyl("d0")
    print("Theta_t^(1/3)(d0) =", theta_twist([t(0, 1)], [Fraction(1, 3)], u))

    # supports of the four simples at nu = (0, 0)
    for J in [(), (0,), (1,), (0, 1)]:
        label = SimpleLabel((0, 0), frozenset(J))
        print(f"support of S(J={list(J)}):", support_closed_form(label))

    # localize, read the closed-form target, then certify it on a window
    M = LogModule(1, (Fraction(1, 4), Fraction(0)), frozenset({1}), u_bound=2)
    for steps in ([TShift(1, Fraction(1, 2))], [DShift(0, 0)], [RootShift(0, 1, Fraction(1, 3))]):
        loc = localize(M, steps)
        rep = certify(loc, 4)
        print(" o ".join(map(str, steps)), "->", loc.dst.label(), rep.status)


if __name__ == "__main__":
    main()

"""Hilbert data, Koszul duals and wildness witnesses for the cube quivers.

Run with ``python demos/quiver_tour.py``.
"""
from weylweight import quiverlab as ql


def main():
    for fam, k in [("A", 2), ("B", 3), ("A'", 3), ("B''", 3)]:
        alg = ql.build_algebra(fam, k)
        H = ql.hilbert_matrix(alg, 5)
        print(f"{fam}({k}): {len(alg.quiver.vertices)} vertices, {len(alg.quiver.arrows)} arrows, "
              f"totals {[int(H[l].sum()) for l in range(6)]}")

    for fam, k in [("A", 3), ("B", 3)]:
        rep = ql.koszul_numeric_check(ql.build_algebra(fam, k), 6)
        print(f"Koszul numeric check {rep['algebra']}: {rep['status']}")
    control = ql.koszul_numeric_check(ql.drop_one_square("A", 3), 6)
    print(f"A(3) without one square: {control['status']} at degree {control['failing_degree']}")

    dual = ql.relation_patterns(ql.renormalized(ql.quadratic_dual(ql.build_algebra("B", 3))))
    print("renormalized dual of B(3):", {k: v for k, v in dual.items() if v})

    for fam, k in [("A''", 2), ("B'", 3), ("A", 2)]:
        rep = ql.wild_witness(fam, k)
        print(f"{fam}({k}) witness: {rep['status']}", rep.get("killed_arrows", ""))

    print(ql.tame_report("b", 4)["counts"])


if __name__ == "__main__":
    main()

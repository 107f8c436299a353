from math import gcd

import pytest

from ncmc.overlay import intersection_number
from ncmc.twists import slope_curve


def coprime_slopes(bound):
    out = set()
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            if gcd(p, q) == 1 and (q > 0 or (q == 0 and p > 0)):
                out.add((p, q))
    return sorted(out)


def test_slope_determinant_small(torus1):
    slopes = coprime_slopes(4)
    for i1 in range(len(slopes)):
        for i2 in range(i1, len(slopes)):
            p, q = slopes[i1]
            r, s = slopes[i2]
            a = slope_curve(torus1, p, q)
            b = slope_curve(torus1, r, s)
            assert intersection_number(a, b) == abs(p * s - q * r)


def test_spec_examples(torus1):
    assert intersection_number(slope_curve(torus1, 1, 0), slope_curve(torus1, 0, 1)) == 1
    assert intersection_number(slope_curve(torus1, 1, 2), slope_curve(torus1, 3, 1)) == 5


def test_self_intersection_zero(torus1):
    c = slope_curve(torus1, 3, -2)
    assert intersection_number(c, c) == 0


def test_symmetry(genus2):
    from ncmc.universe import curve_universe

    curves = curve_universe(genus2, 10)
    for i in range(0, len(curves), 7):
        for j in range(1, len(curves), 11):
            a, b = curves[i], curves[j]
            assert intersection_number(a, b) == intersection_number(b, a)


def test_multicurve_additivity(genus2):
    from ncmc.multicurve import disjointly_realizable
    from ncmc.universe import curve_universe

    curves = curve_universe(genus2, 10)
    found = 0
    for i, a in enumerate(curves):
        for b in curves[i + 1 :]:
            if disjointly_realizable(a, b):
                u = a.union(b)
                for w in curves[:12]:
                    assert intersection_number(u, w) == intersection_number(
                        a, w
                    ) + intersection_number(b, w)
                found += 1
                break
        if found >= 2:
            break
    assert found

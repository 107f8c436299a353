from math import gcd

from ncmc.cutting import is_nonseparating
from ncmc.universe import admissible_vectors, curve_universe, multicurve_universe


def slope_count(bound):
    out = set()
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            if gcd(p, q) == 1 and abs(q) + abs(p) + abs(p - q) <= bound:
                out.add((abs(q), abs(p), abs(p - q)))
    return len(out)


def test_punctured_torus_counts_match_slopes(torus1):
    for bound in (6, 10, 16):
        assert len(curve_universe(torus1, bound)) == slope_count(bound)


def test_always_false_predicate(torus1):
    assert curve_universe(torus1, 10, predicate=lambda c: False) == []


def test_deterministic_order(genus2):
    a = curve_universe(genus2, 10)
    b = curve_universe(genus2, 10)
    assert a == b
    assert a == sorted(a)


def test_nonseparating_predicate(genus2):
    for c in curve_universe(genus2, 10, predicate=is_nonseparating):
        assert is_nonseparating(c)


def test_multicurve_universe_components(genus2):
    for m in multicurve_universe(genus2, 2, 10):
        assert m.num_components == 2
        assert m.is_curve_system


def test_admissible_vectors_respect_budget(genus2p2):
    for vec in admissible_vectors(genus2p2, 7):
        assert 0 < sum(vec) <= 7

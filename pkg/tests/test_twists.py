import random

import pytest

from ncmc.errors import WeightBoundExceeded
from ncmc.overlay import intersection_number
from ncmc.twists import (
    TwistWord,
    apply_twist,
    generator_table,
    slope_curve,
    twist_along,
)


def test_parse_and_inverse():
    w = TwistWord.parse("T[b1]^2 T[a2]^-1")
    assert w.letters == (("b1", 2), ("a2", -1))
    assert w.inverse.letters == (("a2", 1), ("b1", -2))
    assert TwistWord.parse("").letters == ()


def test_empty_word_is_identity(torus1):
    c = slope_curve(torus1, 2, 3)
    assert apply_twist(TwistWord(()), c) is c


def test_classical_twist_on_slopes(torus1):
    tab = generator_table(torus1)
    img = twist_along(tab["a1"], tab["b1"], +1)
    assert img.weights == slope_curve(torus1, 1, 1).weights


def test_twist_growth(torus1):
    tab = generator_table(torus1)
    a, b = tab["a1"], tab["b1"]
    for n in range(1, 9):
        assert intersection_number(twist_along(a, b, n), a) == n


def test_round_trips_random(genus2):
    tab = generator_table(genus2)
    names = sorted(tab)
    rng = random.Random(11)
    for _ in range(20):
        letters = tuple(
            (rng.choice(names), rng.choice([-2, -1, 1, 2]))
            for _ in range(rng.randint(1, 5))
        )
        w = TwistWord(letters)
        c = tab[rng.choice(names)]
        img = apply_twist(w, c)
        assert apply_twist(w.inverse, img).weights == c.weights


def test_braid_relation(genus2):
    tab = generator_table(genus2)
    for x in (tab["a2"], tab["b2"], tab["c1"]):
        l = apply_twist(TwistWord.parse("T[a1] T[b1] T[a1]"), x)
        r = apply_twist(TwistWord.parse("T[b1] T[a1] T[b1]"), x)
        assert l.weights == r.weights


def test_naturality(genus2):
    tab = generator_table(genus2)
    w = TwistWord.parse("T[b1] T[c1]^-1 T[a2]")
    pairs = [("a1", "b1"), ("a1", "a2"), ("b2", "c1")]
    for n1, n2 in pairs:
        x, y = tab[n1], tab[n2]
        assert intersection_number(
            apply_twist(w, x), apply_twist(w, y)
        ) == intersection_number(x, y)


def test_weight_cap(torus1):
    tab = generator_table(torus1)
    with pytest.raises(WeightBoundExceeded):
        twist_along(tab["a1"], tab["b1"], 400, w_max=64)


def test_multicurve_twist(genus2):
    tab = generator_table(genus2)
    u = tab["a1"].union(tab["a2"])
    img = apply_twist(TwistWord.parse("T[b1]^2"), u)
    assert img.num_components == 2
    back = apply_twist(TwistWord.parse("T[b1]^-2"), img)
    assert back.weights == u.weights

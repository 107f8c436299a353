import pytest

from ncmc.errors import InadmissibleError
from ncmc.multicurve import MultiCurve, disjointly_realizable, empty_curve
from ncmc.tracing import is_admissible, is_vertex_link, trace


def test_zero_vector_traces_empty(torus1):
    assert trace(torus1, (0, 0, 0)).components == ()


def test_admissibility(torus1):
    assert is_admissible(torus1, (0, 1, 1))
    assert not is_admissible(torus1, (1, 1, 1))  # odd face sum
    assert not is_admissible(torus1, (0, 0, 2))  # triangle inequality fails
    with pytest.raises(InadmissibleError):
        MultiCurve(torus1, (1, 0, 0))


def test_single_curve_idempotent(torus1):
    c = MultiCurve(torus1, (1, 2, 1))
    assert c.num_components == 1
    assert c.components == ((1, 2, 1),)


def test_vertex_link_detected(torus1, genus2):
    lk = trace(torus1, (2, 2, 2)).components[0]
    assert is_vertex_link(torus1, lk)
    # a curve of the same length as the link but a different class is not one
    c = trace(torus1, (1, 2, 3)).components[0]
    assert not is_vertex_link(torus1, c)
    assert MultiCurve(torus1, (1, 2, 3)).is_simple_curve


def test_parallel_copies_split(torus1):
    m = MultiCurve(torus1, (0, 2, 2))
    assert m.components == ((0, 1, 1), (0, 1, 1))
    assert not m.is_curve_system  # isotopic components


def test_disjointness_on_slopes(torus1):
    a = MultiCurve(torus1, (0, 1, 1))
    b = MultiCurve(torus1, (1, 0, 1))
    assert disjointly_realizable(a, a)
    assert not disjointly_realizable(a, b)
    assert disjointly_realizable(a, empty_curve(torus1))


def test_union_of_disjoint(genus2):
    from ncmc.universe import curve_universe

    curves = curve_universe(genus2, 10)
    pair = None
    for i, a in enumerate(curves):
        for b in curves[i + 1 :]:
            if disjointly_realizable(a, b):
                pair = (a, b)
                break
        if pair:
            break
    a, b = pair
    u = a.union(b)
    assert sorted(u.components) == sorted([a.weights, b.weights])

import pytest

from ncmc.errors import ComplexityError
from ncmc.triangulation import SurfaceSpec, canonical_triangulation, get_surface


def test_genus2_closed_counts():
    t = get_surface("g2p0")
    assert (t.num_vertices, t.num_edges, t.num_faces) == (1, 9, 6)
    assert t.euler == -2
    assert not t.marked


def test_punctured_torus_counts():
    t = get_surface("g1p1")
    assert (t.num_vertices, t.num_edges, t.num_faces) == (1, 3, 2)
    assert t.marked == frozenset({0})


def test_complexity_too_small():
    with pytest.raises(ComplexityError):
        get_surface("g0p2")
    with pytest.raises(ComplexityError):
        get_surface("g1p0")


def test_puncture_subdivision():
    t = get_surface("g2p2")
    assert t.num_vertices == 2
    assert len(t.marked) == 2
    assert t.euler == -2  # compact Euler characteristic, punctures kept


def test_sphere_builder():
    t = get_surface("g0p5")
    assert t.euler == 2
    assert len(t.marked) == t.num_vertices == 5


def test_degree_sum():
    for lit in ("g1p1", "g2p0", "g2p2", "g3p0"):
        t = get_surface(lit)
        total = sum(t.vertex_degree(v) for v in range(t.num_vertices))
        assert total == 2 * t.num_edges


def test_spec_literals():
    s = SurfaceSpec.parse("g2p1")
    assert (s.genus, s.punctures) == (2, 1)
    assert s.literal == "g2p1"
    assert s.complexity == 4
    assert canonical_triangulation(s) is canonical_triangulation(s)


def test_deterministic_rebuild():
    a = get_surface("g3p0")
    b = canonical_triangulation(SurfaceSpec(3, 0))
    assert a is b
    assert a.content_key() == b.content_key()

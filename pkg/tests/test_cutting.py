from ncmc.cutting import (
    cap_piece,
    cut_along,
    is_nonseparating,
    nonseparating_by_homology,
)
from ncmc.multicurve import MultiCurve, disjointly_realizable, empty_curve
from ncmc.universe import admissible_vectors, curve_universe


def test_empty_curve_cuts_to_self(genus2):
    cut = cut_along(empty_curve(genus2))
    assert cut.connected
    p = cut.pieces[0]
    assert (p.genus, p.boundary, p.punctures) == (2, 0, 0)


def test_nonseparating_classification(genus2):
    for c in curve_universe(genus2, 12):
        cut = cut_along(c)
        assert cut.connected == nonseparating_by_homology(c)
        assert sum(p.euler for p in cut.pieces) == genus2.euler
        if cut.connected:
            p = cut.pieces[0]
            assert (p.genus, p.boundary) == (1, 2)
        else:
            assert sorted((p.genus, p.boundary) for p in cut.pieces) == [
                (1, 1),
                (1, 1),
            ]


def test_two_handle_curves_cut_connected(genus2):
    from ncmc.twists import generator_table

    tab = generator_table(genus2)
    u = tab["a1"].union(tab["a2"])
    cut = cut_along(u)
    assert cut.connected
    p = cut.pieces[0]
    assert (p.genus, p.boundary) == (0, 4)


def test_euler_conservation_multicurves(genus2p2):
    checked = 0
    for vec in admissible_vectors(genus2p2, 8):
        mc = MultiCurve(genus2p2, vec)
        cut = cut_along(mc)
        assert sum(p.euler for p in cut.pieces) == genus2p2.euler
        checked += 1
    assert checked > 10


def test_reembed_disjoint(genus2):
    c = curve_universe(genus2, 8)[0]
    cut = cut_along(c)
    inner = curve_universe(cut.pieces[0].complex, 10)
    assert inner
    for u in inner:
        ru = cut.reembed_curve(0, u)
        assert disjointly_realizable(ru, c)
        assert ru.is_curve_system


def test_lift_then_reembed_roundtrip(genus2):
    c = curve_universe(genus2, 8)[0]
    cut = cut_along(c)
    inner = curve_universe(cut.pieces[0].complex, 9)
    for u in inner[:10]:
        ru = cut.reembed_curve(0, u)
        lifted = cut.lift_curve(ru)
        assert len(lifted) == 1
        p_idx, word = lifted[0]
        assert p_idx == 0
        back = cut.reembed_word(p_idx, word)
        from ncmc.words import tighten_closed, word_vector

        assert word_vector(genus2, tighten_closed(genus2, back)) == ru.weights


def test_capped_roundtrip(genus2):
    c = curve_universe(genus2, 8)[0]
    cut = cut_along(c)
    piece = cut.pieces[0]
    cp = cap_piece(cut, 0)
    assert cp.complex.euler == piece.complex.euler + piece.boundary
    assert len(cp.complex.marked) == piece.punctures + piece.boundary
    for u in curve_universe(piece.complex, 10):
        capped_u = cp.curve_from_piece(u)
        assert cp.curve_to_piece(capped_u).weights == u.weights

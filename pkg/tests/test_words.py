from ncmc.multicurve import MultiCurve, canonical_vector
from ncmc.tracing import component_word, trace
from ncmc.words import (
    bounds_clean_disk,
    closed_curve_vector,
    free_reduce_cyclic,
    link_word,
    tighten_closed,
    validate_word,
    word_vector,
)


def test_traced_words_are_tight(torus1):
    for vec in [(0, 1, 1), (1, 0, 1), (1, 1, 2), (2, 1, 1), (1, 2, 3)]:
        comp = trace(torus1, vec).components[0]
        w = component_word(torus1, comp)
        validate_word(torus1, list(w))
        assert closed_curve_vector(torus1, list(w)) == vec


def test_backtrack_insertion_recovers(torus1):
    comp = trace(torus1, (0, 1, 1)).components[0]
    w = list(component_word(torus1, comp))
    noisy = w[:1] + [(0, 0), (0, 1)] + w[1:]
    assert free_reduce_cyclic(noisy) == w
    assert closed_curve_vector(torus1, noisy) == (0, 1, 1)


def test_marked_link_is_stable(torus1):
    lw = list(link_word(torus1, 0))
    assert word_vector(torus1, tighten_closed(torus1, lw)) == (2, 2, 2)
    assert not bounds_clean_disk(torus1, lw)


def test_unmarked_link_contracts(genus2):
    lw = list(link_word(genus2, 0))
    assert tighten_closed(genus2, lw) == []
    assert bounds_clean_disk(genus2, lw)


def test_canonical_vector_drops_links(genus2):
    # the link of the unmarked vertex is trivial on a closed surface
    assert canonical_vector(genus2, (2,) * 9) == (0,) * 9


def test_canonical_filter_is_stable(genus2):
    from ncmc.universe import curve_universe

    for c in curve_universe(genus2, 10):
        assert canonical_vector(genus2, c.weights) == c.weights

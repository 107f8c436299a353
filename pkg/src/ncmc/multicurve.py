"""Multicurves as canonical normal-coordinate vectors.

Vector equality is isotopy equality: every multicurve is stored as the
normal coordinates of its unique normal representative on the fixed
complex.  Disjointness of two systems is decided by tracing the summed
vector: the systems are realizable disjointly exactly when the components
of the sum are the components of the two inputs side by side.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InadmissibleError
from .tracing import check_admissible, is_vertex_link, trace
from .words import closed_curve_vector


@lru_cache(maxsize=512)
def boundary_parallel_vectors(tri):
    """Normal vectors of curves parallel to a boundary circle of tri."""
    from .words import vertex_pass_letters

    out = set()
    for circuit in tri.boundary_circles:
        word = []
        for (f, i) in circuit:
            word.extend(vertex_pass_letters(tri, (f, (i + 1) % 3)))
        vec = closed_curve_vector(tri, word)
        if any(vec):
            out.add(vec)
    return frozenset(out)


class MultiCurve:
    """An admissible closed system of normal coordinates on a complex."""

    __slots__ = ("tri", "weights", "_hash")

    def __init__(self, tri, weights):
        weights = tuple(int(w) for w in weights)
        check_admissible(tri, weights)
        for e in tri.boundary_edges:
            if weights[e]:
                raise InadmissibleError("closed system crosses a boundary edge")
        object.__setattr__(self, "tri", tri)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_hash", hash((tri, weights)))

    def __setattr__(self, *a):
        raise AttributeError("MultiCurve is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (
            isinstance(other, MultiCurve)
            and self.weights == other.weights
            and self.tri == other.tri
        )

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return f"MultiCurve{self.weights}"

    @property
    def sort_key(self):
        return (sum(self.weights), self.weights)

    @property
    def total_weight(self):
        return sum(self.weights)

    @property
    def is_empty(self):
        return not any(self.weights)

    @property
    def placement(self):
        return trace(self.tri, self.weights)

    @property
    def components(self):
        """Sorted tuple of per-component weight vectors."""
        return tuple(sorted(c.vector for c in self.placement.components))

    @property
    def component_curves(self):
        return tuple(MultiCurve(self.tri, v) for v in self.components)

    @property
    def num_components(self):
        return len(self.placement.components)

    def component_essential(self, comp):
        if is_vertex_link(self.tri, comp):
            return False
        if self.tri.boundary_edges and comp.vector in boundary_parallel_vectors(self.tri):
            return False
        return True

    @property
    def is_canonical(self):
        return canonical_vector(self.tri, self.weights) == self.weights

    def canonize(self):
        return MultiCurve(self.tri, canonical_vector(self.tri, self.weights))

    @property
    def is_curve_system(self):
        """Essential multicurve: essential pairwise non-isotopic components."""
        comps = self.placement.components
        vecs = [c.vector for c in comps]
        if len(set(vecs)) != len(vecs):
            return False
        return all(self.component_essential(c) for c in comps)

    @property
    def is_simple_curve(self):
        return self.num_components == 1 and self.is_curve_system

    def union(self, other):
        if not disjointly_realizable(self, other):
            raise InadmissibleError("union of crossing systems")
        return MultiCurve(self.tri, vec_sum(self.weights, other.weights))

    def drop(self, comp_vector):
        """The multicurve with one named component removed."""
        comps = list(self.components)
        comps.remove(comp_vector)
        out = tuple([0] * self.tri.num_edges)
        for v in comps:
            out = vec_sum(out, v)
        return MultiCurve(self.tri, out)

    def shares(self, other):
        """Component vectors present in both systems (multiset intersection)."""
        mine = list(self.components)
        out = []
        for v in other.components:
            if v in mine:
                mine.remove(v)
                out.append(v)
        return tuple(out)


def empty_curve(tri):
    return MultiCurve(tri, (0,) * tri.num_edges)


def vec_sum(a, b):
    return tuple(x + y for x, y in zip(a, b))


@lru_cache(maxsize=400000)
def canonical_vector(tri, weights):
    """Minimal-position vector of the system carried by `weights`.

    Every component word is tightened to the canonical geodesic
    representative; trivial components vanish.  The summed vector is
    verified to trace back to the tightened components, so that the
    canonical positions coexist disjointly.
    """
    from .tracing import component_word
    from .words import tighten_closed, word_vector

    p = trace(tri, weights)
    comps = []
    total = (0,) * tri.num_edges
    for comp in p.components:
        w = component_word(tri, comp)
        tight = tighten_closed(tri, list(w))
        vec = word_vector(tri, tight)
        if any(vec):
            comps.append(vec)
            total = vec_sum(total, vec)
    if sorted(c.vector for c in trace(tri, total).components) != sorted(comps):
        raise AssertionError(
            "canonical component positions collide; joint tightening needed"
        )
    return total


def sum_split_matches(a: MultiCurve, b: MultiCurve) -> bool:
    s = vec_sum(a.weights, b.weights)
    merged = sorted(list(a.components) + list(b.components))
    return sorted(c.vector for c in trace(a.tri, s).components) == merged


def disjointly_realizable(a: MultiCurve, b: MultiCurve) -> bool:
    """Geometric intersection zero.

    Tracing the summed vector certifies disjointness directly; when the
    canonical positions cross, fall back to the full crossing sweep.
    """
    if a.tri != b.tri:
        raise ValueError("systems live on different complexes")
    if a.is_empty or b.is_empty:
        return True
    if sum_split_matches(a, b):
        return True
    from .overlay import intersection_number

    return intersection_number(a, b) == 0

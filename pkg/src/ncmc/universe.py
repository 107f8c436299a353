"""Enumeration of admissible vectors and curve universes.

The enumerator walks edge weights depth-first in a face-closing order,
pruning with the matching conditions, and yields every admissible vector
of bounded total weight exactly once in a deterministic order.  Filters
turn the raw stream into curve or multicurve universes.
"""

from __future__ import annotations

from functools import lru_cache

from .multicurve import MultiCurve
from .tracing import face_solution


@lru_cache(maxsize=256)
def _edge_order(tri):
    """Edges ordered so faces complete as early as possible."""
    chosen = []
    chosen_set = set()
    left = set(range(tri.num_edges))
    face_edges = [set(e for e, _ in f) for f in tri.faces]
    while left:
        best = None
        for e in sorted(left):
            closing = sum(1 for fe in face_edges if e in fe and fe - chosen_set == {e})
            touching = sum(1 for fe in face_edges if e in fe and fe & chosen_set)
            key = (closing, touching, -e)
            if best is None or key > best[0]:
                best = (key, e)
        chosen.append(best[1])
        chosen_set.add(best[1])
        left.discard(best[1])
    return tuple(chosen)


@lru_cache(maxsize=256)
def _plan(tri):
    order = _edge_order(tri)
    pos = {e: i for i, e in enumerate(order)}
    complete_at = [[] for _ in order]
    pair_at = [[] for _ in order]  # (face, last_edge, first_two_edges)
    for fi, f in enumerate(tri.faces):
        eds = sorted({e for e, _ in f}, key=lambda e: pos[e])
        complete_at[pos[eds[-1]]].append(fi)
        if len(eds) == 3:
            pair_at[pos[eds[1]]].append((fi, eds[2], (eds[0], eds[1])))
    return order, complete_at, pair_at


def admissible_vectors(tri, max_weight, zero_boundary=True):
    """Yield every nonzero admissible vector with total weight <= max_weight.

    Boundary edges stay at weight zero unless zero_boundary is False.
    """
    order, complete_at, pair_at = _plan(tri)
    n = len(order)
    weights = [0] * tri.num_edges
    boundary = tri.boundary_edges

    def rec(i, budget):
        if i == n:
            if any(weights):
                yield tuple(weights)
            return
        e = order[i]
        top = 0 if (zero_boundary and e in boundary) else budget
        for w in range(top + 1):
            weights[e] = w
            left = budget - w
            ok = True
            for fi in complete_at[i]:
                if face_solution(tri, weights, None, fi) is None:
                    ok = False
                    break
            if ok:
                for (fi, last, firsts) in pair_at[i]:
                    need = abs(weights[firsts[0]] - weights[firsts[1]])
                    cap = 0 if (zero_boundary and last in boundary) else left
                    if need > cap:
                        ok = False
                        break
            if ok:
                yield from rec(i + 1, left)
        weights[e] = 0

    yield from rec(0, max_weight)


def curve_universe(tri, max_weight, predicate=None):
    """All essential simple closed curves of total weight <= max_weight.

    Curves are returned in canonical (minimal) position, one vector per
    isotopy class.
    """
    return multicurve_universe(tri, 1, max_weight, predicate)


def multicurve_universe(tri, k, max_weight, predicate=None):
    """All essential k-component multicurves of weight <= max_weight."""
    from .multicurve import canonical_vector

    out = []
    for vec in admissible_vectors(tri, max_weight):
        mc = MultiCurve(tri, vec)
        if mc.num_components != k:
            continue
        if canonical_vector(tri, vec) != vec:
            continue
        if not mc.is_curve_system:
            continue
        if predicate is None or predicate(mc):
            out.append(mc)
    out.sort()
    return out

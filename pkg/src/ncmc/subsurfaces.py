"""Thick subsurfaces via puncture forests.

A thick subsurface is the complement of a regular neighborhood of an
embedded forest whose vertices are punctures; it is stored by its
boundary multicurve.  Forests are enumerated as jointly-normal arc
systems (corner roots plus edge weights) together with arcs running
parallel to triangulation edges, which carry no crossings at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .cutting import cut_along
from .multicurve import MultiCurve, canonical_vector, disjointly_realizable
from .tracing import corner_id, face_solution, trace
from .universe import _plan


@dataclass(frozen=True)
class Forest:
    """An embedded forest of arcs joining distinct punctures."""

    tri: object
    weights: tuple  # crossings with edges
    roots: tuple  # arc ends per corner
    edge_arcs: tuple  # triangulation edges used as zero-weight arcs

    @property
    def num_edges(self):
        """Number of forest edges (arcs)."""
        return sum(self.roots) // 2 + len(self.edge_arcs)

    @property
    def total_weight(self):
        return sum(self.weights)

    def covered_vertices(self):
        tri = self.tri
        verts = set()
        for e in self.edge_arcs:
            verts.add(tri.vertex_of_end(e, "tail"))
            verts.add(tri.vertex_of_end(e, "head"))
        for cid, r in enumerate(self.roots):
            if r:
                f, i = divmod(cid, 3)
                verts.add(tri.vertex_of_corner[(f, i)])
        return verts

    def boundary_words(self):
        """Boundary circles of a regular neighborhood, one word each.

        The walk doubles every arc and turns through the free sectors
        around each covered vertex, crossing the fan ends between
        consecutive arc ends.
        """
        tri = self.tri
        arcs = []  # (letters, anchor0, anchor1); anchors locate the ends
        if any(self.weights) or any(self.roots):
            placement = trace(tri, self.weights, self.roots)
            for comp in placement.components:
                letters = _arc_letters(tri, comp)
                (k0, f0, c0, j0), (k1, f1, c1, j1) = [
                    (ep[0], ep[1], ep[2], ep[3]) for ep in comp.endpoints
                ]
                arcs.append(
                    (letters, ("corner", f0, c0, j0), ("corner", f1, c1, j1))
                )
        for e in self.edge_arcs:
            arcs.append(([], ("edge", e, "tail"), ("edge", e, "head")))

        # cyclic slot lists around each covered vertex
        slot_lists = {}
        gap_letters = {}
        anchors_pos = {}
        for v in self.covered_vertices():
            corners = tri.vertex_corners[v]
            fan = tri.vertex_fan(v)
            seq = []  # entries: ('slot', anchor) | ('letter', (e, d))
            for t in range(len(corners)):
                f, i = corners[t]
                roots_here = [
                    a for a in _anchors_at_corner(arcs, f, i)
                ]
                for anchor in sorted(roots_here, key=lambda a: -a[3]):
                    seq.append(("slot", anchor))
                e, end = fan[t]
                covered_end = ("edge", e, end) in _edge_anchors(arcs)
                if covered_end:
                    seq.append(("slot", ("edge", e, end)))
                else:
                    f2, j1 = tri.next_around((f, i))
                    j = (j1 - 1) % 3
                    d = tri.incidences[e].index((f2, j))
                    seq.append(("letter", (e, d)))
            slots = [k for k, entry in enumerate(seq) if entry[0] == "slot"]
            slot_lists[v] = (seq, slots)
            for pos, k in enumerate(slots):
                anchors_pos[seq[k][1]] = (v, pos)

        # flank transitions
        def anchor_of(arc_idx, end_idx):
            return arcs[arc_idx][1 + end_idx]

        anchor_owner = {}
        for ai, (letters, a0, a1) in enumerate(arcs):
            anchor_owner[a0] = (ai, 0)
            anchor_owner[a1] = (ai, 1)

        visited = set()
        words = []
        for ai in range(len(arcs)):
            for end_idx in (0, 1):
                for sign in (+1, -1):
                    state = (ai, end_idx, sign)
                    if state in visited:
                        continue
                    word = []
                    cur = state
                    while cur not in visited:
                        visited.add(cur)
                        cai, cend, csign = cur
                        letters, a0, a1 = arcs[cai]
                        # travel the arc from the other end towards (cend)?
                        # walk from this flank: along the arc away from this
                        # end, arriving at the opposite end on flank -sign
                        arc_letters = letters if cend == 0 else _rev(letters)
                        word.extend(arc_letters)
                        far = 1 - cend
                        far_anchor = anchor_of(cai, far)
                        v, pos = anchors_pos[far_anchor]
                        seq, slots = slot_lists[v]
                        # arrive on flank -csign; leave through the adjacent gap
                        out_sign = -csign
                        word.extend(
                            _gap_walk(tri, seq, slots, pos, out_sign)
                        )
                        nxt_pos = (pos + (1 if out_sign > 0 else -1)) % len(slots)
                        nxt_anchor = seq[slots[nxt_pos]][1]
                        nai, nend = anchor_owner[nxt_anchor]
                        cur = (nai, nend, -out_sign)
                    words.append(word)
        return words

    def boundary(self) -> MultiCurve:
        from .words import tighten_closed, word_vector

        tri = self.tri
        total = (0,) * tri.num_edges
        for word in self.boundary_words():
            tight = tighten_closed(tri, word)
            vec = word_vector(tri, tight)
            total = tuple(x + y for x, y in zip(total, vec))
        return MultiCurve(tri, canonical_vector(tri, total))


def _arc_letters(tri, comp):
    """Directed crossing letters of an open arc component."""
    out = []
    for k in range(len(comp.nodes)):
        e, _ = comp.nodes[k]
        st = comp.steps[k + 1]
        d = tri.incidences[e].index((st.face, st.enter_side))
        out.append((e, d))
    return out


def _rev(letters):
    return [(e, 1 - d) for (e, d) in reversed(letters)]


def _anchors_at_corner(arcs, f, i):
    out = []
    for (_letters, a0, a1) in arcs:
        for a in (a0, a1):
            if a[0] == "corner" and a[1] == f and a[2] == i:
                out.append(a)
    return out


def _gap_walk(tri, seq, slots, pos, sign):
    """Letters crossed turning through the gap adjacent to slot `pos`."""
    n = len(seq)
    out = []
    if sign > 0:
        k = (slots[pos] + 1) % n
        while seq[k][0] != "slot":
            out.append(seq[k][1])
            k = (k + 1) % n
    else:
        k = (slots[pos] - 1) % n
        while seq[k][0] != "slot":
            e, d = seq[k][1]
            out.append((e, 1 - d))
            k = (k - 1) % n
    return out


def _arc_components_ok(tri, weights, roots, edge_arcs):
    """Trace and check: pure arc system, distinct endpoints, acyclic."""
    links = []  # endpoint vertex pairs of all arcs
    if any(weights) or any(roots):
        placement = trace(tri, weights, roots)
        for comp in placement.components:
            if comp.kind != "arc":
                return None
            ends = []
            for kind, *rest in comp.endpoints:
                if kind != "corner":
                    return None
                f, c, _idx = rest
                ends.append(tri.vertex_of_corner[(f, c)])
            if len(ends) != 2 or ends[0] == ends[1]:
                return None
            links.append(tuple(ends))
    for e in edge_arcs:
        u = tri.vertex_of_end(e, "tail")
        v = tri.vertex_of_end(e, "head")
        if u == v:
            return None
        links.append((u, v))
    # acyclicity of the endpoint multigraph
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v) in links:
        ru, rv = find(u), find(v)
        if ru == rv:
            return None
        parent[ru] = rv
    return links


def forest_systems(tri, num_arcs, max_weight):
    """All embedded forests with the given arc count, bounded weight."""
    marked = tri.marked
    if len(marked) < 2 or num_arcs < 1:
        return []
    out = []
    corners = [
        corner_id(f, i)
        for f in range(tri.num_faces)
        for i in range(3)
        if tri.vertex_of_corner[(f, i)] in marked
    ]
    legal_edges = sorted(
        e
        for e in range(tri.num_edges)
        if e not in tri.boundary_edges
        and tri.vertex_of_end(e, "tail") in marked
        and tri.vertex_of_end(e, "head") in marked
        and tri.vertex_of_end(e, "tail") != tri.vertex_of_end(e, "head")
    )
    zero_w = (0,) * tri.num_edges
    zero_r = (0,) * (3 * tri.num_faces)

    for n_edge_arcs in range(0, num_arcs + 1):
        n_normal = num_arcs - n_edge_arcs
        for subset in combinations(legal_edges, n_edge_arcs):
            if n_normal == 0:
                links = _arc_components_ok(tri, zero_w, zero_r, subset)
                if links is not None:
                    out.append(Forest(tri, zero_w, zero_r, subset))
                continue
            for roots in _root_patterns(tri, corners, 2 * n_normal):
                for weights in _weights_for_roots(tri, roots, max_weight, subset):
                    links = _arc_components_ok(tri, weights, roots, subset)
                    if links is not None:
                        out.append(Forest(tri, weights, roots, subset))
    return out


def _root_patterns(tri, corners, total):
    """Distributions of `total` arc ends over puncture corners."""

    def rec(idx, left, acc):
        if left == 0:
            yield tuple(acc)
            return
        if idx >= len(corners):
            return
        cid = corners[idx]
        for k in range(left + 1):
            if k:
                acc2 = list(acc)
                acc2[cid] += k
            else:
                acc2 = acc
            yield from rec(idx + 1, left - k, acc2)

    zero = [0] * (3 * tri.num_faces)
    yield from rec(0, total, zero)


def _weights_for_roots(tri, roots, max_weight, zero_edges):
    """Admissible weight vectors compatible with the given root counts."""
    order, complete_at, pair_at = _plan(tri)
    n = len(order)
    weights = [0] * tri.num_edges
    forbidden = set(zero_edges) | tri.boundary_edges

    def rec(i, budget):
        if i == n:
            yield tuple(weights)
            return
        e = order[i]
        top = 0 if e in forbidden else budget
        for w in range(top + 1):
            weights[e] = w
            ok = True
            for fi in complete_at[i]:
                if face_solution(tri, weights, roots, fi) is None:
                    ok = False
                    break
            if ok:
                yield from rec(i + 1, budget - w)
        weights[e] = 0

    yield from rec(0, max_weight)


@dataclass(frozen=True)
class ThickSubsurface:
    """A full-genus subsurface stored by its boundary multicurve."""

    tri: object
    boundary: MultiCurve
    forest_edges: int

    @property
    def chi(self):
        open_chi = self.tri.euler - len(self.tri.marked)
        return open_chi + self.forest_edges

    @property
    def is_whole_surface(self):
        return self.boundary.is_empty

    def cut(self):
        return cut_along(self.boundary)

    def piece_index(self):
        """Index of the full-genus piece in the cut."""
        cut = self.cut()
        for idx, p in enumerate(cut.pieces):
            if p.genus == self.tri.genus:
                return idx
        raise ValueError("no full-genus piece: boundary is not thick")

    def contains(self, curve: MultiCurve) -> bool:
        """Membership for non-separating curves: disjoint from the boundary."""
        if self.is_whole_surface:
            return True
        return disjointly_realizable(curve, self.boundary)


def is_thick_boundary(tri, boundary: MultiCurve) -> bool:
    """Full genus on one side, holed spheres with one circle elsewhere."""
    if boundary.is_empty:
        return True
    cut = cut_along(boundary)
    full = [p for p in cut.pieces if p.genus == tri.genus]
    if len(full) != 1:
        return False
    return all(p.is_holed_sphere for p in cut.pieces if p is not full[0])


@lru_cache(maxsize=4096)
def thick_subsurfaces(tri, forest_edges, max_weight):
    """Thick subsurfaces from forests with the given edge count, deduplicated
    by boundary multicurve; deterministic order."""
    seen = {}
    for forest in forest_systems(tri, forest_edges, max_weight):
        try:
            b = forest.boundary()
        except AssertionError:
            continue
        if b.weights in seen:
            continue
        if not is_thick_boundary(tri, b):
            continue
        seen[b.weights] = ThickSubsurface(tri, b, forest_edges)
    return tuple(seen[k] for k in sorted(seen))

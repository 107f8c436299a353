"""Normal coordinates: admissibility, slot placement and component tracing.

A system assigns a non-negative crossing weight to every edge and
optionally a count of vertex-ending arcs ("roots") to every face corner.
Inside each face the arcs split into corner chords and root arcs whose
counts are forced by the weights; tracing walks the induced pairing of
edge slots and decomposes the system into components.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InadmissibleError

ZERO_ROOTS = None  # sentinel meaning "no roots anywhere"


def corner_id(f, i):
    return 3 * f + i


def face_solution(tri, weights, roots, f):
    """Chord counts (t0, t1, t2) for face f, or None if the face fails.

    t_i counts chords cutting corner i (joining sides i-1 and i); the
    side-i crossing budget is t_i + t_{i+1} + roots at corner i+2.
    """
    w = [weights[tri.faces[f][i][0]] for i in range(3)]
    if roots is None:
        u = w
    else:
        u = [w[i] - roots[corner_id(f, (i + 2) % 3)] for i in range(3)]
    if (u[0] + u[1] + u[2]) % 2:
        return None
    t = [(u[(i - 1) % 3] + u[i] - u[(i + 1) % 3]) // 2 for i in range(3)]
    if min(t) < 0 or min(u) < 0:
        return None
    return tuple(t)


def check_admissible(tri, weights, roots=ZERO_ROOTS):
    """Raise InadmissibleError unless every face has a chord solution."""
    if len(weights) != tri.num_edges:
        raise InadmissibleError(
            f"vector length {len(weights)} != edge count {tri.num_edges}"
        )
    if any(w < 0 for w in weights):
        raise InadmissibleError("negative weight")
    for f in range(tri.num_faces):
        if face_solution(tri, weights, roots, f) is None:
            raise InadmissibleError(f"matching conditions fail in face {f}")


def is_admissible(tri, weights, roots=ZERO_ROOTS):
    try:
        check_admissible(tri, weights, roots)
        return True
    except InadmissibleError:
        return False


def side_position_to_slot(tri, f, i, pos):
    e, fwd = tri.faces[f][i]
    w = None  # filled by caller when needed
    return e, fwd, pos


@dataclass(frozen=True)
class Step:
    """One chord traversal inside a face."""

    face: int
    corner: int  # corner index cut by the chord; -1 for root arcs
    enter_side: int
    exit_side: int  # -1 when the step terminates at a corner root


@dataclass(frozen=True)
class Component:
    kind: str  # 'closed' | 'arc'
    nodes: tuple  # (edge, slot) in traversal order
    steps: tuple  # Step records; steps[k] joins nodes[k] -> nodes[k+1]
    vector: tuple  # per-edge crossing counts of this component
    roots: tuple  # per-corner root counts of this component
    endpoints: tuple  # for arcs: two endpoint descriptors

    @property
    def total_weight(self):
        return sum(self.vector)


class Placement:
    """A traced system: all components with their slot-level layout."""

    def __init__(self, tri, weights, roots, components, chord_of_node):
        self.tri = tri
        self.weights = weights
        self.roots = roots
        self.components = components
        self.chord_of_node = chord_of_node  # (e, slot) -> per-incidence info

    def component_vectors(self):
        return sorted(c.vector for c in self.components)


def _face_connections(tri, weights, roots, f, conn):
    """Fill the per-node connection table for one face."""
    t = face_solution(tri, weights, roots, f)
    if t is None:
        raise InadmissibleError(f"matching conditions fail in face {f}")
    sides = tri.faces[f]
    w = [weights[e] for e, _ in sides]
    r = [0, 0, 0] if roots is None else [roots[corner_id(f, i)] for i in range(3)]

    def node(i, pos):
        e, fwd = sides[i]
        return (e, pos if fwd else w[i] - 1 - pos)

    # chords at corner i, depth k: side i pos k <-> side i-1 pos w[i-1]-1-k
    for i in range(3):
        for k in range(t[i]):
            a = node(i, k)
            b = node((i - 1) % 3, w[(i - 1) % 3] - 1 - k)
            conn[a].append(("chord", f, i, k, i, b, (i - 1) % 3))
            conn[b].append(("chord", f, i, k, (i - 1) % 3, a, i))
    # root arcs at corner i+2 occupy side i positions t[i] .. t[i]+r[i+2]-1
    for i in range(3):
        ic = (i + 2) % 3
        for j in range(r[ic]):
            a = node(i, t[i] + j)
            conn[a].append(("root", f, ic, j, i, None, -1))


@lru_cache(maxsize=200000)
def trace(tri, weights, roots=ZERO_ROOTS) -> Placement:
    """Trace an admissible system into components."""
    check_admissible(tri, weights, roots)
    conn = {}
    for e in range(tri.num_edges):
        for s in range(weights[e]):
            conn[(e, s)] = []
    for f in range(tri.num_faces):
        _face_connections(tri, weights, roots, f, conn)

    for (e, s), entries in conn.items():
        want = len(tri.incidences[e])
        if len(entries) != want:
            raise InadmissibleError(
                f"slot ({e},{s}) got {len(entries)} connections, expected {want}"
            )

    visited = set()  # (node, entry_index)
    components = []

    def entry_faces(node):
        return [ent[1] for ent in conn[node]]

    def walk_from(node, ent_idx):
        """Walk a component starting by traversing connection ent_idx of node."""
        nodes = [node]
        steps = []
        cur, idx = node, ent_idx
        while True:
            ent = conn[cur][idx]
            visited.add((cur, idx))
            kind, f, c, depth, my_side, partner, other_side = ent
            if kind == "root":
                steps.append(Step(f, c, my_side, -1))
                return nodes, steps, ("corner", f, c, depth)
            steps.append(Step(f, c, my_side, other_side))
            visited.add((partner, _entry_index(partner, f, other_side, kind, c, depth)))
            nodes.append(partner)
            nxt = _other_entry(partner, f, other_side)
            if nxt is None:
                return nodes, steps, ("boundary", partner)
            if (partner, nxt) in visited:
                return nodes, steps, None  # closed up
            cur, idx = partner, nxt

    def _entry_index(node, f, side, kind, c, depth):
        for k, ent in enumerate(conn[node]):
            if ent[0] == kind and ent[1] == f and ent[4] == side and ent[2] == c and ent[3] == depth:
                return k
        raise AssertionError("partner entry not found")

    def _other_entry(node, f, side):
        ents = conn[node]
        if len(ents) == 1:
            return None
        for k, ent in enumerate(ents):
            if not (ent[1] == f and ent[4] == side):
                return k
        raise AssertionError("no continuation entry")

    def component_counts(nodes, steps):
        vec = [0] * tri.num_edges
        for e, _ in nodes:
            vec[e] += 1
        rts = [0] * (3 * tri.num_faces)
        for st in steps:
            if st.exit_side == -1:
                rts[corner_id(st.face, st.corner)] += 1
        return tuple(vec), tuple(rts)

    # open components first: start at boundary-edge slots and root ends
    for node in sorted(conn):
        ents = conn[node]
        if len(ents) == 1:
            for idx in range(len(ents)):
                if (node, idx) not in visited:
                    nodes, steps, end = walk_from(node, idx)
                    start = ("boundary", node)
                    vec, rts = component_counts(nodes, steps)
                    components.append(
                        Component("arc", tuple(nodes), tuple(steps), vec, rts, (start, end))
                    )
    # arcs from corner roots: slots with an unvisited root entry
    for node in sorted(conn):
        ents = conn[node]
        if len(ents) == 2:
            for idx in (0, 1):
                if ents[idx][0] == "root" and (node, idx) not in visited:
                    # start the walk at the root end going through the other entry
                    rf, rc, rd = ents[idx][1], ents[idx][2], ents[idx][3]
                    visited.add((node, idx))
                    nodes, steps, end = walk_from(node, 1 - idx)
                    steps = [Step(rf, rc, ents[idx][4], -1)] + list(steps)
                    # re-orient: root start recorded as first step endpoint
                    vec, rts = component_counts(nodes, steps)
                    components.append(
                        Component(
                            "arc",
                            tuple(nodes),
                            tuple(steps),
                            vec,
                            rts,
                            (("corner", rf, rc, rd), end),
                        )
                    )
    # closed components
    for node in sorted(conn):
        for idx in range(len(conn[node])):
            if (node, idx) not in visited:
                nodes, steps, end = walk_from(node, idx)
                if end is not None:
                    raise AssertionError("open walk found during closed sweep")
                nodes = nodes[:-1]  # last node repeats the first
                vec, rts = component_counts(nodes, steps)
                components.append(
                    Component("closed", tuple(nodes), tuple(steps), vec, rts, ())
                )

    chord_of_node = conn
    return Placement(tri, weights, roots, tuple(components), chord_of_node)


def is_vertex_link(tri, comp: Component):
    """True when a closed component is the link of a vertex."""
    if comp.kind != "closed" or not comp.steps:
        return False
    verts = set()
    for st in comp.steps:
        verts.add(tri.vertex_of_corner[(st.face, st.corner)])
        if len(verts) > 1:
            return False
    v = verts.pop()
    if len(comp.steps) != tri.vertex_degree(v) or not tri.vertex_cyclic[v]:
        return False
    from .words import canonical_cyclic, link_word, reverse_word

    w = canonical_cyclic(component_word(tri, comp))
    lw = list(link_word(tri, v))
    return w == canonical_cyclic(lw) or w == canonical_cyclic(reverse_word(lw))


@lru_cache(maxsize=100000)
def component_word(tri, comp: Component):
    """Directed edge-crossing word of a closed component.

    Letter k is (edge, d) where d indexes the incidence the curve enters
    when leaving step k-1 and beginning step k; the word has one letter
    per node, aligned so letter k sits between steps k-1 and k.
    """
    if comp.kind != "closed":
        raise ValueError("component_word expects a closed component")
    word = []
    n = len(comp.nodes)
    for k in range(n):
        e, _slot = comp.nodes[k]
        st = comp.steps[k]
        # the curve enters face st.face through side st.enter_side
        d = tri.incidences[e].index((st.face, st.enter_side))
        word.append((e, d))
    return tuple(word)

"""Triangulated surfaces with oriented faces.

A surface is described by a list of triangular faces, each a triple of
directed edge sides.  Punctures are marked vertices.  Cut surfaces carry
boundary edges (edges with a single face incidence).  All builders are
deterministic: the same request always yields the identical complex.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ComplexityError, LiteralError

# A face side is (edge_id, forward). `forward` means the face's CCW boundary
# walk traverses the edge from tail to head.


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ComplexityError("genus and puncture count must be non-negative")

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.punctures

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    @property
    def literal(self) -> str:
        return f"g{self.genus}p{self.punctures}"

    @staticmethod
    def parse(text: str) -> "SurfaceSpec":
        m = re.fullmatch(r"g(\d+)p(\d+)", text.strip())
        if not m:
            raise LiteralError(f"bad surface literal {text!r} (expected e.g. 'g2p0')")
        return SurfaceSpec(int(m.group(1)), int(m.group(2)))


class Triangulation:
    """An oriented triangulated surface, possibly with boundary."""

    def __init__(self, faces, marked_corners=(), name="", parent=None):
        self.faces = tuple(tuple((int(e), bool(fwd)) for e, fwd in f) for f in faces)
        self.name = name
        self.parent = parent  # provenance, not part of identity
        if any(len(f) != 3 for f in self.faces):
            raise ValueError("faces must be triangles")

        n_edges = 0
        incid = {}
        for fi, f in enumerate(self.faces):
            for si, (e, fwd) in enumerate(f):
                incid.setdefault(e, []).append((fi, si))
                n_edges = max(n_edges, e + 1)
        self.num_edges = n_edges
        self.num_faces = len(self.faces)
        self.incidences = tuple(tuple(incid.get(e, ())) for e in range(n_edges))
        for e, inc in enumerate(self.incidences):
            if len(inc) not in (1, 2):
                raise ValueError(f"edge {e} has {len(inc)} incidences")
            if len(inc) == 2:
                (f1, s1), (f2, s2) = inc
                if self.faces[f1][s1][1] == self.faces[f2][s2][1]:
                    raise ValueError(f"edge {e} breaks coherent orientation")
        self.boundary_edges = frozenset(
            e for e in range(n_edges) if len(self.incidences[e]) == 1
        )

        self._build_vertices(marked_corners)
        self._key = (self.faces, self.marked, frozenset(self.boundary_edges))
        self._hash = hash(self._key)

    # -- vertex structure ---------------------------------------------------

    def side(self, f, i):
        return self.faces[f][i % 3]

    def other_incidence(self, e, f, i):
        inc = self.incidences[e]
        if len(inc) == 1:
            return None
        return inc[1] if inc[0] == (f, i) else inc[0]

    def next_around(self, corner):
        """Rotate a corner (f, i) around its vertex across the outgoing side."""
        f, i = corner
        e, fwd = self.faces[f][i]
        nxt = self.other_incidence(e, f, i)
        if nxt is None:
            return None
        f2, j = nxt
        return (f2, (j + 1) % 3)

    def prev_around(self, corner):
        f, i = corner
        e, fwd = self.faces[f][(i - 1) % 3]
        nxt = self.other_incidence(e, f, (i - 1) % 3)
        if nxt is None:
            return None
        f2, j = nxt
        return (f2, j)

    def _build_vertices(self, marked_corners):
        marked_corners = set(marked_corners)
        corner_vertex = {}
        vertices = []  # list of (corners tuple, cyclic flag)
        seen = set()
        for f in range(self.num_faces):
            for i in range(3):
                c0 = (f, i)
                if c0 in seen:
                    continue
                # rewind to a chain start if the orbit hits boundary
                start = c0
                steps = 0
                while True:
                    p = self.prev_around(start)
                    if p is None or p == c0:
                        break
                    start = p
                    steps += 1
                    if steps > 3 * self.num_faces:
                        raise ValueError("corner orbit does not close")
                cyclic = self.prev_around(start) == c0 and self.next_around(c0) is not None
                orbit = [start]
                cur = start
                while True:
                    nxt = self.next_around(cur)
                    if nxt is None or nxt == start:
                        cyclic = nxt == start
                        break
                    orbit.append(nxt)
                    cur = nxt
                vid = len(vertices)
                for c in orbit:
                    corner_vertex[c] = vid
                    seen.add(c)
                vertices.append((tuple(orbit), cyclic))
        self.vertex_corners = tuple(v[0] for v in vertices)
        self.vertex_cyclic = tuple(v[1] for v in vertices)
        self.num_vertices = len(vertices)
        self.vertex_of_corner = corner_vertex
        self.marked = frozenset(corner_vertex[c] for c in marked_corners)

    @property
    def euler(self) -> int:
        """Euler characteristic of the compact surface (marked points kept)."""
        return self.num_vertices - self.num_edges + self.num_faces

    def corner_of_end(self, e, end):
        """Some corner sitting at the tail/head end of edge e."""
        f, i = self.incidences[e][0]
        fwd = self.faces[f][i][1]
        at_start = (end == "tail") == fwd
        return (f, i) if at_start else (f, (i + 1) % 3)

    def vertex_of_end(self, e, end):
        return self.vertex_of_corner[self.corner_of_end(e, end)]

    def vertex_fan(self, v):
        """Edge ends crossed when rotating around vertex v, in orbit order.

        Entry k is (edge, end) for the side crossed between corner k and
        corner k+1 of the orbit; cyclic vertices have as many entries as
        corners, boundary chains one fewer.
        """
        corners = self.vertex_corners[v]
        fan = []
        n = len(corners) if self.vertex_cyclic[v] else len(corners) - 1
        for k in range(n):
            f, i = corners[k]
            e, fwd = self.faces[f][i]
            fan.append((e, "tail" if fwd else "head"))
        return fan

    def vertex_degree(self, v):
        return len(self.vertex_fan(v))

    # -- boundary structure -------------------------------------------------

    def next_boundary_side(self, f, i):
        """Next boundary side after (f, i) walking with the surface on the left."""
        c = (f, (i + 1) % 3)
        guard = 0
        while True:
            e, fwd = self.faces[c[0]][c[1]]
            if e in self.boundary_edges:
                return c
            c = self.next_around(c)
            if c is None:
                raise ValueError("boundary walk fell off the surface")
            guard += 1
            if guard > 3 * self.num_faces:
                raise ValueError("boundary walk does not close")

    @property
    def boundary_circles(self):
        """Boundary circuits, each a tuple of (face, side) boundary sides."""
        if not self.boundary_edges:
            return ()
        seen = set()
        circles = []
        for e in sorted(self.boundary_edges):
            f, i = self.incidences[e][0]
            if (f, i) in seen:
                continue
            circuit = []
            c = (f, i)
            while c not in seen:
                seen.add(c)
                circuit.append(c)
                c = self.next_boundary_side(*c)
            circles.append(tuple(circuit))
        return tuple(circles)

    # -- classification -----------------------------------------------------

    @property
    def genus(self) -> int:
        b = len(self.boundary_circles)
        g2 = 2 - self.euler - b
        if g2 % 2:
            raise ValueError("non-orientable or inconsistent complex")
        return g2 // 2

    @property
    def spec(self) -> SurfaceSpec:
        if self.boundary_edges:
            raise ValueError("spec only defined for unbordered complexes")
        return SurfaceSpec(self.genus, len(self.marked))

    def content_key(self):
        return self._key

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self._key == other._key

    def __repr__(self):
        b = len(self.boundary_circles) if self.boundary_edges else 0
        tag = self.name or f"g{self.genus}"
        return (
            f"<Triangulation {tag}: V={self.num_vertices} E={self.num_edges} "
            f"F={self.num_faces} marked={len(self.marked)} boundary={b}>"
        )


# -- canonical builders -----------------------------------------------------


def _closed_polygon_faces(g):
    """Fan triangulation of the standard identified 4g-gon."""

    def polygon_side(k):
        t, r = divmod(k, 4)
        edge = 2 * t if r in (0, 2) else 2 * t + 1
        return (edge, r in (0, 1))

    def diag(j):
        return 2 * g + (j - 2)

    faces = []
    for j in range(1, 4 * g - 1):
        first = polygon_side(0) if j == 1 else (diag(j), True)
        mid = polygon_side(j)
        last = polygon_side(4 * g - 1) if j + 1 == 4 * g - 1 else (diag(j + 1), False)
        faces.append((first, mid, last))
    return faces


def _sphere_faces(m):
    """Doubled fan-triangulated m-gon, all rim vertices kept."""
    rim = lambda k: k
    td = lambda j: m + (j - 2)
    bd = lambda j: m + (m - 3) + (j - 2)
    faces = []
    for j in range(1, m - 1):
        first = (rim(0), True) if j == 1 else (td(j), True)
        last = (rim(m - 1), False) if j + 1 == m - 1 else (td(j + 1), False)
        faces.append((first, (rim(j), True), last))
    for j in range(1, m - 1):
        first = (rim(m - 1), True) if j + 1 == m - 1 else (bd(j + 1), True)
        last = (rim(0), False) if j == 1 else (bd(j), False)
        faces.append((first, (rim(j), False), last))
    return faces


def subdivide_face(faces, f):
    """1-3 subdivision of face f; returns (new_faces, new_corner)."""
    faces = list(faces)
    s0, s1, s2 = faces.pop(f)
    base = max(e for face in faces + [(s0, s1, s2)] for e, _ in face) + 1
    n = [base, base + 1, base + 2]  # n[i] runs from corner i to the new vertex
    sides = (s0, s1, s2)
    out = faces
    first_new = len(out)
    for i in range(3):
        out.append((sides[i], (n[(i + 1) % 3], True), (n[i], False)))
    # the new vertex is corner 2 of each appended face
    return out, (first_new, 2)


@lru_cache(maxsize=None)
def canonical_triangulation(spec: SurfaceSpec) -> Triangulation:
    """The canonical complex for a surface literal.

    Closed surfaces get the fan-triangulated 4g-gon with one unmarked
    vertex; punctured surfaces mark every vertex, adding punctures by
    iterated 1-3 subdivision of the last face.  Spheres use a doubled
    fan polygon.
    """
    g, m = spec.genus, spec.punctures
    if spec.complexity < 1:
        raise ComplexityError(
            f"surface {spec.literal} has complexity {spec.complexity} < 1"
        )
    if g == 0:
        faces = _sphere_faces(m)
        tri = Triangulation(faces, name=spec.literal)
        marked = [tri.vertex_corners[v][0] for v in range(tri.num_vertices)]
        tri = Triangulation(faces, marked_corners=marked, name=spec.literal)
    else:
        faces = _closed_polygon_faces(g)
        marked = []
        if m >= 1:
            marked.append((0, 0))
        for _ in range(max(0, m - 1)):
            faces, new_corner = subdivide_face(faces, len(faces) - 1)
            marked.append(new_corner)
        tri = Triangulation(faces, marked_corners=marked, name=spec.literal)
    if tri.euler != 2 - 2 * g:
        raise ValueError("builder produced wrong Euler characteristic")
    if len(tri.marked) != m:
        raise ValueError("builder produced wrong puncture count")
    return tri


def get_surface(literal_or_spec) -> Triangulation:
    if isinstance(literal_or_spec, Triangulation):
        return literal_or_spec
    if isinstance(literal_or_spec, SurfaceSpec):
        return canonical_triangulation(literal_or_spec)
    return canonical_triangulation(SurfaceSpec.parse(literal_or_spec))

"""Cutting a surface along a multicurve.

The chords of the curve slice every face into cells; gluing cells across
edge fragments with union-find yields the complementary pieces.  Each
piece is re-triangulated (cells are fanned from a polygon corner) into a
genuine bordered complex whose boundary edges are the chord copies, with
maps back to the parent for transferring curves in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InadmissibleError
from .multicurve import MultiCurve, vec_sum
from .tracing import face_solution, trace
from .triangulation import Triangulation
from .words import tighten_closed, word_vector


def _cell_of_interval(t, w, i, q):
    """Cell touched by interval q of side i; t = corner counts, w = side weights."""
    ti, tnext = t[i], t[(i + 1) % 3]
    if q < ti:
        return ("t", i, q)
    if q == ti:
        return ("z",)
    return ("t", (i + 1) % 3, w[i] - q)


class _UnionFind(dict):
    def find(self, x):
        while self.setdefault(x, x) != x:
            self[x] = self[self[x]]
            x = self[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self[ra] = rb


@dataclass
class Piece:
    """One complementary piece of a cut, as a bordered complex."""

    complex: Triangulation
    genus: int
    punctures: int
    boundary: int
    euler: int
    has_unmarked_vertex: bool
    edge_parent: tuple  # local edge id -> descriptor tuple
    face_parent: tuple  # local face id -> parent face
    side_parent: dict  # (local face, side) -> (parent face, parent side) or None
    cell_faces: dict  # cell key -> (face ids in fan order, diag ids)
    chord_component: dict  # local boundary edge -> index of curve component

    @property
    def is_holed_sphere(self):
        return self.genus == 0 and self.boundary == 1


class CutAlong:
    """The cut of a surface along an admissible multicurve."""

    def __init__(self, curve: MultiCurve):
        self.parent = curve.tri
        self.curve = curve
        self.placement = curve.placement
        self._build()

    # -- global cell structure ----------------------------------------------

    def _face_data(self, f):
        tri = self.parent
        w = [self.curve.weights[e] for e, _ in tri.faces[f]]
        t = face_solution(tri, self.curve.weights, None, f)
        return w, t

    def _build(self):
        tri = self.parent
        wts = self.curve.weights

        # chord -> owning component index
        chord_comp = {}
        for ci, comp in enumerate(self.placement.components):
            n = len(comp.nodes)
            for k, st in enumerate(comp.steps):
                e, slot = comp.nodes[k]
                _, fwd = tri.faces[st.face][st.enter_side]
                w_e = wts[e]
                pos = slot if fwd else w_e - 1 - slot
                # depth of the chord at its cut corner along the entering side
                w_f, t = self._face_data(st.face)
                if st.corner == st.enter_side:
                    depth = pos
                else:
                    depth = w_f[st.enter_side] - 1 - pos
                chord_comp[(st.face, st.corner, depth)] = ci
        self.chord_comp = chord_comp

        # union-find cells over fragments
        uf = _UnionFind()
        for e in range(tri.num_edges):
            w = wts[e]
            inc = tri.incidences[e]
            if len(inc) < 2:
                continue
            (f1, i1), (f2, i2) = inc
            w1, t1 = self._face_data(f1)
            w2, t2 = self._face_data(f2)
            fwd1 = tri.faces[f1][i1][1]
            fwd2 = tri.faces[f2][i2][1]
            for j in range(w + 1):
                q1 = j if fwd1 else w - j
                q2 = j if fwd2 else w - j
                c1 = (f1,) + _cell_of_interval(t1, w1, i1, q1)
                c2 = (f2,) + _cell_of_interval(t2, w2, i2, q2)
                uf.union(c1, c2)

        # enumerate all cells
        cells = []
        for f in range(tri.num_faces):
            w, t = self._face_data(f)
            for i in range(3):
                for k in range(t[i]):
                    cells.append((f, "t", i, k))
            cells.append((f, "z"))
        roots = sorted({uf.find(c) for c in cells})
        self.piece_index = {r: n for n, r in enumerate(roots)}
        self.cell_piece = {c: self.piece_index[uf.find(c)] for c in cells}
        self.num_pieces = len(roots)
        self.cells = cells
        self._pieces = None

    def piece_of_cell(self, cell):
        return self.cell_piece[cell]

    @property
    def connected(self):
        return self.num_pieces == 1

    # -- piece complexes ------------------------------------------------------

    def _cell_polygon(self, f, cell):
        """Boundary walk of a cell: (vertex tags, edge descriptors with dirs).

        Edge descriptors: ('frag', e, j), ('chord', f, corner, depth, side)
        with side 'in' (corner side) or 'out'.  Vertex tags: ('corner', f, i)
        or ('slot', e, s, 'pre'|'post').
        """
        tri = self.parent
        w, t = self._face_data(f)
        sides = tri.faces[f]

        def frag_of_interval(i, q):
            e, fwd = sides[i]
            j = q if fwd else w[i] - q
            return ("frag", e, j), fwd

        verts = []
        edges = []
        kind = cell[0]
        if kind == "t":
            _, i, k = cell
            ip = (i - 1) % 3
            if k == 0:
                # corner tip: interval 0 of side i, chord (i,0) in, last
                # interval of side ip
                fr, fwd = frag_of_interval(i, 0)
                verts.append(("corner", f, i))
                edges.append((fr, fwd))
                verts.append(self._point_tag(f, i, 0, "lo"))
                edges.append((("chord", f, i, 0, "in"), True))
                verts.append(self._point_tag(f, ip, w[ip] - 1, "hi"))
                fr2, fwd2 = frag_of_interval(ip, w[ip])
                edges.append((fr2, fwd2))
            else:
                fr, fwd = frag_of_interval(i, k)
                verts.append(self._point_tag(f, i, k - 1, "hi"))
                edges.append((fr, fwd))
                verts.append(self._point_tag(f, i, k, "lo"))
                edges.append((("chord", f, i, k, "in"), True))
                verts.append(self._point_tag(f, ip, w[ip] - 1 - k, "hi"))
                fr2, fwd2 = frag_of_interval(ip, w[ip] - k)
                edges.append((fr2, fwd2))
                verts.append(self._point_tag(f, ip, w[ip] - k, "lo"))
                edges.append((("chord", f, i, k - 1, "out"), False))
        else:
            for i in range(3):
                ti, tn = t[i], t[(i + 1) % 3]
                if ti > 0:
                    verts.append(self._point_tag(f, i, ti - 1, "hi"))
                else:
                    verts.append(("corner", f, i))
                fr, fwd = frag_of_interval(i, ti)
                edges.append((fr, fwd))
                if tn > 0:
                    verts.append(self._point_tag(f, i, ti, "lo"))
                    edges.append((("chord", f, (i + 1) % 3, tn - 1, "out"), False))
        return verts, edges

    def _point_tag(self, f, i, p, which_side):
        """Vertex tag of the cut copy of point p on side i of face f.

        which_side 'lo' names the copy on the corner-i side of the point,
        'hi' the copy beyond it, in side coordinates.
        """
        tri = self.parent
        e, fwd = tri.faces[f][i]
        w = self.curve.weights[e]
        s = p if fwd else w - 1 - p
        if fwd:
            kind = "pre" if which_side == "lo" else "post"
        else:
            kind = "post" if which_side == "lo" else "pre"
        return ("slot", e, s, kind)

    @property
    def pieces(self):
        if self._pieces is None:
            self._pieces = self._build_pieces()
        return self._pieces

    def _build_pieces(self):
        tri = self.parent
        out = []
        # gather polygons per piece
        for p in range(self.num_pieces):
            edge_ids = {}
            edge_parent = []
            faces = []
            face_parent = []
            side_parent = {}
            cell_faces = {}
            marked_corners = []
            chord_component = {}
            vertex_tags = {}  # tag -> corner occurrence for marks

            def eid(desc):
                if desc not in edge_ids:
                    edge_ids[desc] = len(edge_parent)
                    edge_parent.append(desc)
                return edge_ids[desc]

            for cell in self.cells:
                if self.cell_piece[cell] != p:
                    continue
                f = cell[0]
                verts, edges = self._cell_polygon(f, cell[1:])
                m = len(edges)
                # fan triangulation from polygon vertex 0
                local = [(eid(d), fwd) for (d, fwd) in edges]
                diags = []
                for j in range(2, m - 1):
                    dd = ("diag", f, cell[1:], j)
                    diags.append(eid(dd))
                first_face = len(faces)
                face_list = []
                for j in range(1, m - 1):
                    first = local[0] if j == 1 else (diags[j - 2], True)
                    last = (
                        local[m - 1] if j + 1 == m - 1 else (diags[j - 1], False)
                    )
                    faces.append((first, local[j], last))
                    face_parent.append(f)
                    fidx = len(faces) - 1
                    face_list.append(fidx)
                    # parent side bookkeeping for fragment and chord sides
                    trip = [(1, edges[j])]
                    if j == 1:
                        trip.append((0, edges[0]))
                    if j + 1 == m - 1:
                        trip.append((2, edges[m - 1]))
                    for pos, (desc, _fwd) in trip:
                        if desc[0] == "frag":
                            side_parent[(fidx, pos)] = self._frag_side(f, desc)
                        elif desc[0] == "chord":
                            chord_key = (f, desc[2], desc[3])
                            chord_component[eid(desc)] = self.chord_comp[chord_key]
                cell_faces[cell] = (face_list, diags)
                # record corner-vertex occurrences for marks
                for t_idx, tag in enumerate(verts):
                    if tag[0] == "corner":
                        # polygon vertex t sits at face (first_face + max(t-1,0))
                        if t_idx == 0:
                            occ = (first_face, 0)
                        elif t_idx == m - 1:
                            occ = (first_face + m - 3, 2)
                        else:
                            occ = (first_face + max(t_idx - 1, 0), 1)
                        vertex_tags[tag] = occ

            for (tag, occ) in vertex_tags.items():
                _, f, i = tag
                if tri.vertex_of_corner[(f, i)] in tri.marked:
                    marked_corners.append(occ)

            cx = Triangulation(
                faces,
                marked_corners=marked_corners,
                name=f"{tri.name}|cut{p}",
            )
            has_unmarked = any(
                tri.vertex_of_corner[(tag[1], tag[2])] not in tri.marked
                for tag in vertex_tags
            )
            out.append(
                Piece(
                    complex=cx,
                    genus=cx.genus,
                    punctures=len(cx.marked),
                    boundary=len(cx.boundary_circles),
                    euler=cx.euler,
                    has_unmarked_vertex=has_unmarked,
                    edge_parent=tuple(edge_parent),
                    face_parent=tuple(face_parent),
                    side_parent=side_parent,
                    cell_faces=cell_faces,
                    chord_component=chord_component,
                )
            )
        return out

    def _frag_side(self, f, desc):
        """Parent (face, side) of fragment desc seen from face f."""
        _, e, j = desc
        for (ff, ii) in self.parent.incidences[e]:
            if ff == f:
                return (ff, ii)
        raise AssertionError("fragment not on this face")

    # -- curve transfer -------------------------------------------------------

    def reembed_word(self, piece_idx, word):
        """Map a closed word in a piece complex back to the parent complex."""
        piece = self.pieces[piece_idx]
        tri = self.parent
        out = []
        for (le, d) in word:
            desc = piece.edge_parent[le]
            if desc[0] == "diag":
                continue
            if desc[0] == "chord":
                raise ValueError("word crosses the cut locus")
            _, e, j = desc
            f_to, s_to = piece.complex.incidences[le][d]
            pf = piece.face_parent[f_to]
            ps = piece.side_parent.get((f_to, s_to))
            if ps is None:
                raise AssertionError("fragment side missing parent data")
            dd = tri.incidences[e].index(ps)
            out.append((e, dd))
        return out

    def reembed_curve(self, piece_idx, mc: MultiCurve) -> MultiCurve:
        """A curve system living in a piece, as a parent multicurve."""
        piece = self.pieces[piece_idx]
        total = [0] * self.parent.num_edges
        for comp in mc.placement.components:
            from .tracing import component_word

            w = component_word(piece.complex, comp)
            pw = self.reembed_word(piece_idx, list(w))
            vec = tighten_closed(self.parent, pw)
            total = list(vec_sum(tuple(total), word_vector(self.parent, vec)))
        return MultiCurve(self.parent, tuple(total))


    def lift_curve(self, u: MultiCurve):
        """Express a disjoint system inside the pieces.

        Returns a list of (piece index, word in the piece complex), one per
        component of u.
        """
        tri = self.parent
        if u.is_empty:
            return []
        s = vec_sum(self.curve.weights, u.weights)
        placement = trace(tri, s)
        remaining = list(self.curve.components)
        flags = []  # True when the sum component belongs to the cut curve
        for comp in placement.components:
            if comp.vector in remaining:
                remaining.remove(comp.vector)
                flags.append(True)
            else:
                flags.append(False)
        if remaining:
            raise InadmissibleError("lift of a crossing system")

        c_slots = {}  # edge -> sorted list of slots belonging to the cut curve
        for comp, is_c in zip(placement.components, flags):
            if is_c:
                for (e, slot) in comp.nodes:
                    c_slots.setdefault(e, []).append(slot)
        for e in c_slots:
            c_slots[e].sort()

        def frag_index(e, slot):
            import bisect

            return bisect.bisect_left(c_slots.get(e, ()), slot)

        out = []
        for comp, is_c in zip(placement.components, flags):
            if is_c:
                continue
            n = len(comp.nodes)
            cells = []
            for k, st in enumerate(comp.steps):
                f = st.face
                w_c, t_c = self._face_data(f)
                e_in, slot_in = comp.nodes[k]
                _, fwd = tri.faces[f][st.enter_side]
                w_sum = s[e_in]
                p = slot_in if fwd else w_sum - 1 - slot_in
                q = 0
                for cs in c_slots.get(e_in, ()):
                    cp = cs if fwd else w_sum - 1 - cs
                    if cp < p:
                        q += 1
                cells.append((f,) + _cell_of_interval(t_c, w_c, st.enter_side, q))
            p_ids = {self.cell_piece[c] for c in cells}
            if len(p_ids) != 1:
                raise AssertionError("component crosses pieces without crossing cut")
            p_idx = p_ids.pop()
            piece = self.pieces[p_idx]
            desc_id = {d: i for i, d in enumerate(piece.edge_parent)}

            def inc_index(le, parent_face, parent_side):
                for idx, (lf, ls) in enumerate(piece.complex.incidences[le]):
                    if piece.side_parent.get((lf, ls)) == (parent_face, parent_side):
                        return idx
                raise AssertionError("no incidence over the expected side")

            letters = []
            for k in range(n):
                st = comp.steps[k]
                e, slot = comp.nodes[k]
                le = desc_id[("frag", e, frag_index(e, slot))]
                letters.append((le, inc_index(le, st.face, st.enter_side)))
            word = []
            for k in range(n):
                le, d = letters[k]
                word.append((le, d))
                le2, d2 = letters[(k + 1) % n]
                f_in = piece.complex.incidences[le][d][0]
                f_out = piece.complex.incidences[le2][1 - d2][0]
                word.extend(_fan_path_letters(piece, cells[k], f_in, f_out))
            out.append((p_idx, word))
        return out


def _fan_path_letters(piece: Piece, cell, f_from, f_to):
    """Diagonal letters crossing a fanned cell from one face to another."""
    face_list, diags = piece.cell_faces[cell]
    if f_from == f_to:
        return []
    a = face_list.index(f_from)
    b = face_list.index(f_to)
    letters = []
    if a < b:
        for t in range(a + 1, b + 1):
            de = diags[t - 1]
            d = piece.complex.incidences[de].index((face_list[t], 0))
            letters.append((de, d))
    else:
        for t in range(a - 1, b - 1, -1):
            de = diags[t]
            d = piece.complex.incidences[de].index((face_list[t], 2))
            letters.append((de, d))
    return letters


class CappedPiece:
    """A bordered piece with every boundary circle collapsed to a puncture.

    Collapsing is realized by coning each boundary circle off with a marked
    apex vertex; curves avoiding the cone point can be pushed back into the
    piece, so words transfer both ways.
    """

    def __init__(self, piece: Piece):
        from .words import vertex_pass_letters

        base = piece.complex
        self.piece = piece
        self.base_faces = base.num_faces
        self.base_edges = base.num_edges
        faces = list(base.faces)
        marked = [base.vertex_corners[v][0] for v in sorted(base.marked)]
        eid = base.num_edges
        self.pass_letters = {}
        self.cone_edges = set()
        self.circle_cones = []
        for circ in base.boundary_circles:
            m = len(circ)
            cone = list(range(eid, eid + m))
            eid += m
            first_new = len(faces)
            for k, (f, i) in enumerate(circ):
                e, fwd = base.faces[f][i]
                faces.append(((e, not fwd), (cone[k], True), (cone[(k + 1) % m], False)))
            marked.append((first_new, 2))
            for k, (f, i) in enumerate(circ):
                fprev, iprev = circ[(k - 1) % m]
                self.pass_letters[cone[k]] = tuple(
                    vertex_pass_letters(base, (fprev, (iprev + 1) % 3))
                )
            self.cone_edges.update(cone)
            self.circle_cones.append(tuple(cone))
        self.complex = Triangulation(
            faces, marked_corners=marked, name=base.name + "^"
        )

    def word_to_piece(self, word):
        """Push a closed word off the cone disks into the piece."""
        from .words import free_reduce_cyclic, reverse_word

        cx = self.complex
        w = free_reduce_cyclic(list(word))
        if not w:
            return []
        start = None
        for r, (e, d) in enumerate(w):
            if cx.incidences[e][d][0] < self.base_faces:
                start = r
                break
        if start is None:
            return []  # lives inside one cap: cone-parallel, trivial in the piece
        w = w[start:] + w[:start]
        out = []
        n = len(w)
        i = 0
        wrapped_exit = False
        while i < n:
            e, d = w[i]
            if cx.incidences[e][d][0] < self.base_faces:
                out.append((e, d))
                i += 1
                continue
            # a cap run: w[i] crosses a boundary edge into the cap (dropped),
            # cone crossings are replaced by vertex passes, and the exit
            # boundary crossing is dropped as well
            j = i + 1
            while j < n:
                e2, d2 = w[j]
                if cx.incidences[e2][d2][0] < self.base_faces:
                    break
                if e2 not in self.cone_edges:
                    raise AssertionError("unexpected letter inside a cap")
                asc = cx.incidences[e2][d2][1] == 1
                letters = self.pass_letters[e2]
                out.extend(letters if asc else reverse_word(list(letters)))
                j += 1
            if j == n:
                wrapped_exit = True
            i = j + 1
        if wrapped_exit and out:
            out.pop(0)
        return out

    def curve_to_piece(self, mc: MultiCurve) -> MultiCurve:
        from .tracing import component_word

        total = [0] * self.piece.complex.num_edges
        for comp in mc.placement.components:
            w = component_word(self.complex, comp)
            pw = self.word_to_piece(list(w))
            tight = tighten_closed(self.piece.complex, pw)
            total = [x + y for x, y in zip(total, word_vector(self.piece.complex, tight))]
        return MultiCurve(self.piece.complex, tuple(total))

    def curve_from_piece(self, mc: MultiCurve) -> MultiCurve:
        from .tracing import component_word

        total = [0] * self.complex.num_edges
        for comp in mc.placement.components:
            w = list(component_word(self.piece.complex, comp))
            tight = tighten_closed(self.complex, w)
            total = [x + y for x, y in zip(total, word_vector(self.complex, tight))]
        return MultiCurve(self.complex, tuple(total))


@lru_cache(maxsize=4096)
def capped_piece(piece_key, cut: CutAlong, piece_idx: int) -> CappedPiece:
    return CappedPiece(cut.pieces[piece_idx])


def cap_piece(cut: CutAlong, piece_idx: int) -> CappedPiece:
    key = (cut.curve, piece_idx)
    return capped_piece(key, cut, piece_idx)


@lru_cache(maxsize=100000)
def cut_along(curve: MultiCurve) -> CutAlong:
    return CutAlong(curve)


def is_nonseparating(curve: MultiCurve) -> bool:
    if curve.is_empty:
        return True
    return cut_along(curve).connected


def nonseparating_by_homology(curve: MultiCurve) -> bool:
    """Independent mod-2 homology test for a single curve."""
    tri = curve.tri
    if curve.is_empty:
        return True
    target = [w % 2 for w in curve.weights]
    rows = []
    for v in range(tri.num_vertices):
        row = [0] * tri.num_edges
        for (e, _end) in tri.vertex_fan(v):
            row[e] ^= 1
        rows.append(row)
    # Gaussian elimination over GF(2): is target in the row span?
    basis = []
    for row in rows:
        cur = row[:]
        for b in basis:
            pivot = next(i for i, x in enumerate(b) if x)
            if cur[pivot]:
                cur = [x ^ y for x, y in zip(cur, b)]
        if any(cur):
            basis.append(cur)
    cur = target[:]
    for b in basis:
        pivot = next(i for i, x in enumerate(b) if x)
        if cur[pivot]:
            cur = [x ^ y for x, y in zip(cur, b)]
    return any(cur)

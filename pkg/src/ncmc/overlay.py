"""Exact simultaneous placement of two systems and crossing reduction.

Both systems are drawn together: on every edge their hit points are
interleaved slot by slot, and inside each face the chords become straight
segments between exact rational boundary points.  Crossings are collected
per component with the edge-crossing words between consecutive crossings,
after which innermost bigons (crossing pairs adjacent along both systems
whose joining loop bounds a disk free of marked points) are removed by
splicing.  What remains realizes the geometric intersection number.
"""

from __future__ import annotations

from fractions import Fraction

from .multicurve import MultiCurve, disjointly_realizable
from .tracing import component_word
from .words import bounds_clean_disk, reverse_word


_SCALE = 1 << 62


def _ratio(num, den):
    """Exact rational crossing parameter with a fast approximate sort key."""
    if den < 0:
        num, den = -num, -den
    return ((num * _SCALE) // den, num, den)


def _ratio_cmp(t1, t2):
    v = t1[1] * t2[2] - t2[1] * t1[2]
    return (v > 0) - (v < 0)


def _chords_by_face(placement):
    """Per face: (comp, step, enter_side, e_in, slot_in, exit_side, e_out, slot_out)."""
    cached = getattr(placement, "_overlay_chords", None)
    if cached is not None:
        return cached
    byface = {}
    for ci, comp in enumerate(placement.components):
        if comp.kind != "closed":
            raise ValueError("overlay expects closed systems")
        n = len(comp.nodes)
        for k, st in enumerate(comp.steps):
            e_in, s_in = comp.nodes[k]
            e_out, s_out = comp.nodes[(k + 1) % n]
            byface.setdefault(st.face, []).append(
                (ci, k, st.enter_side, e_in, s_in, st.exit_side, e_out, s_out)
            )
    placement._overlay_chords = byface
    return byface


class Node:
    """One transverse crossing between the two systems."""

    __slots__ = (
        "uid",
        "a_comp",
        "a_step",
        "a_t",
        "b_comp",
        "b_step",
        "b_t",
        "sign",
        "a_next",
        "a_prev",
        "b_next",
        "b_prev",
        "a_gap",
        "b_gap",
        "dead",
    )

    def __init__(self, uid, a_comp, a_step, a_t, b_comp, b_step, b_t, sign):
        self.uid = uid
        self.a_comp = a_comp
        self.a_step = a_step
        self.a_t = a_t
        self.b_comp = b_comp
        self.b_step = b_step
        self.b_t = b_t
        self.sign = sign
        self.a_next = self.a_prev = self.b_next = self.b_prev = None
        self.a_gap = []
        self.b_gap = []
        self.dead = False


def _sort_along(mine, which):
    """Order crossings along one component, exactly."""
    if which == "a":
        mine.sort(key=lambda nd: (nd.a_step, nd.a_t[0], nd.b_comp, nd.b_step, nd.b_t[0]))
        step = lambda nd: nd.a_step
        par = lambda nd: nd.a_t
        tieb = lambda nd: (nd.b_comp, nd.b_step)
    else:
        mine.sort(key=lambda nd: (nd.b_step, nd.b_t[0], nd.a_comp, nd.a_step, nd.a_t[0]))
        step = lambda nd: nd.b_step
        par = lambda nd: nd.b_t
        tieb = lambda nd: (nd.a_comp, nd.a_step)
    # the approximate key can collide for distinct rationals; re-sort runs
    # of equal (step, key) with exact comparisons
    i = 0
    while i < len(mine) - 1:
        j = i
        while (
            j + 1 < len(mine)
            and step(mine[j + 1]) == step(mine[i])
            and par(mine[j + 1])[0] == par(mine[i])[0]
        ):
            j += 1
        if j > i:
            import functools

            def cmp(x, y):
                c = _ratio_cmp(par(x), par(y))
                if c:
                    return c
                kx, ky = tieb(x), tieb(y)
                return (kx > ky) - (kx < ky)

            mine[i : j + 1] = sorted(mine[i : j + 1], key=functools.cmp_to_key(cmp))
        i = j + 1


class PairOverlay:
    """Crossing structure of two multicurves drawn simultaneously."""

    def __init__(self, a: MultiCurve, b: MultiCurve):
        if a.tri != b.tri:
            raise ValueError("systems live on different complexes")
        self.tri = a.tri
        self.a = a
        self.b = b
        self.nodes = []
        self.a_lists = []  # per a-component: first node or None
        self.b_lists = []
        self._build()

    # -- construction -------------------------------------------------------

    def _build(self):
        tri = self.tri
        wa, wb = self.a.weights, self.b.weights
        pa, pb = self.a.placement, self.b.placement
        fa = _chords_by_face(pa)
        fb = _chords_by_face(pb)
        uid = 0
        for f, a_chords in fa.items():
            b_chords = fb.get(f)
            if not b_chords:
                continue
            # combined point counts and coordinate scaffolding per side
            sides = tri.faces[f]
            tot = [wa[sides[i][0]] + wb[sides[i][0]] for i in range(3)]
            base = (0, tot[0], tot[0] + tot[1])
            L = (tot[0] + 1) * (tot[1] + 1) * (tot[2] + 1)
            stp = (L // (tot[0] + 1), L // (tot[1] + 1), L // (tot[2] + 1))

            # tabulate (ordinal, point) per side and interleaved rank
            table = []
            for side in range(3):
                e, fwd = sides[side]
                row = []
                for r in range(tot[side]):
                    pos = r if fwd else tot[side] - 1 - r
                    tpar = (pos + 1) * stp[side]
                    if side == 0:
                        xy = (tpar, 0)
                    elif side == 1:
                        xy = (L - tpar, tpar)
                    else:
                        xy = (0, L - tpar)
                    row.append((base[side] + pos, xy))
                table.append(row)

            def rank_a(e, j):
                return j + (j if j < wb[e] else wb[e])

            def rank_b(e, j):
                k = j + 1
                return j + (k if k < wa[e] else wa[e])

            a_geo = [
                (ca, ka, table[si][rank_a(e1, sl)], table[so][rank_a(e2, sl2)])
                for (ca, ka, si, e1, sl, so, e2, sl2) in a_chords
            ]
            b_geo = [
                (cb, kb, table[si][rank_b(e1, sl)], table[so][rank_b(e2, sl2)])
                for (cb, kb, si, e1, sl, so, e2, sl2) in b_chords
            ]
            for (ca, ka, (oa0, P1), (oa1, Q1)) in a_geo:
                lo, hi = (oa0, oa1) if oa0 < oa1 else (oa1, oa0)
                d1x = Q1[0] - P1[0]
                d1y = Q1[1] - P1[1]
                for (cb, kb, (ob0, P2), (ob1, Q2)) in b_geo:
                    if (lo < ob0 < hi) == (lo < ob1 < hi):
                        continue
                    d2x = Q2[0] - P2[0]
                    d2y = Q2[1] - P2[1]
                    den = d1x * d2y - d1y * d2x
                    ex = P2[0] - P1[0]
                    ey = P2[1] - P1[1]
                    ta = _ratio(ex * d2y - ey * d2x, den)
                    tb = _ratio(ex * d1y - ey * d1x, den)
                    self.nodes.append(
                        Node(uid, ca, ka, ta, cb, kb, tb, 1 if den > 0 else -1)
                    )
                    uid += 1

        self._thread("a", pa)
        self._thread("b", pb)

    def _thread(self, which, placement):
        lists = []
        for ci, comp in enumerate(placement.components):
            mine = [
                nd
                for nd in self.nodes
                if (nd.a_comp if which == "a" else nd.b_comp) == ci
            ]
            _sort_along(mine, which)
            if not mine:
                lists.append(None)
                continue
            word = component_word(self.tri, comp)
            n = len(comp.nodes)
            for idx, nd in enumerate(mine):
                nxt = mine[(idx + 1) % len(mine)]
                k_from = nd.a_step if which == "a" else nd.b_step
                k_to = nxt.a_step if which == "a" else nxt.b_step
                # letters crossed strictly between the two crossings are
                # k_from+1 .. k_to; the last->first pair wraps the cycle.
                delta = (k_to - k_from) % n
                if delta == 0 and idx + 1 == len(mine):
                    delta = n
                gap = [word[(k_from + 1 + j) % n] for j in range(delta)]
                if which == "a":
                    nd.a_next, nxt.a_prev = nxt, nd
                    nd.a_gap = gap
                else:
                    nd.b_next, nxt.b_prev = nxt, nd
                    nd.b_gap = gap
            lists.append(mine[0])
        if which == "a":
            self.a_lists = lists
        else:
            self.b_lists = lists

    # -- bigon sweep --------------------------------------------------------

    def live_nodes(self):
        return [nd for nd in self.nodes if not nd.dead]

    def _candidate_loops(self, x):
        """Loops for bigon tests from x to an a-adjacent, b-adjacent node."""
        out = []
        y = x.a_next
        if y is not None and y is not x and not y.dead:
            if x.b_next is y:
                out.append((x, y, "ab_fwd"))
            if x.b_prev is y:
                out.append((x, y, "ab_bwd"))
        return out

    def _loop_word(self, x, y, mode):
        if mode == "ab_fwd":
            return x.a_gap + reverse_word(x.b_gap)
        return x.a_gap + y.b_gap

    def _remove_pair(self, x, y, mode):
        # a-splice: x -> y along a
        pa, sa = x.a_prev, y.a_next
        if pa is y:  # two-node a-cycle collapses
            pass
        else:
            pa.a_gap = pa.a_gap + x.a_gap + y.a_gap
            pa.a_next, sa.a_prev = sa, pa
        if mode == "ab_fwd":
            pb, sb = x.b_prev, y.b_next
            if pb is not y:
                pb.b_gap = pb.b_gap + list(x.a_gap) + y.b_gap
                pb.b_next, sb.b_prev = sb, pb
        else:
            pb, sb = y.b_prev, x.b_next
            if pb is not x:
                pb.b_gap = pb.b_gap + reverse_word(x.a_gap) + x.b_gap
                pb.b_next, sb.b_prev = sb, pb
        x.dead = y.dead = True

    def reduce_bigons(self):
        """Remove innermost clean bigons until none remain."""
        changed = True
        while changed:
            changed = False
            for x in self.live_nodes():
                if x.dead:
                    continue
                for (u, y, mode) in self._candidate_loops(x):
                    loop = self._loop_word(u, y, mode)
                    if bounds_clean_disk(self.tri, loop):
                        self._remove_pair(u, y, mode)
                        changed = True
                        break
        return len(self.live_nodes())


_INUM_CACHE = {}


def intersection_number(a: MultiCurve, b: MultiCurve) -> int:
    """Geometric intersection number of two multicurves."""
    if a.is_empty or b.is_empty:
        return 0
    key = (a.tri, a.weights, b.weights) if a.weights <= b.weights else (
        a.tri,
        b.weights,
        a.weights,
    )
    hit = _INUM_CACHE.get(key)
    if hit is not None:
        return hit
    ov = PairOverlay(a, b)
    val = ov.reduce_bigons()
    if len(_INUM_CACHE) > 400000:
        _INUM_CACHE.clear()
    _INUM_CACHE[key] = val
    return val

"""Dehn twists on normal coordinates and named generator curves.

A twist image is computed from the drawn picture: overlay the curve with
the twisting curve, splice a full copy of the twisting cycle into the
word at every crossing (oriented by the crossing sign), and tighten.

Each surface ships a searched generator table: a chain a1, b1, c1, b2,
a2, c2, ... with the standard intersection pattern (consecutive chain
curves meet once, all other pairs are disjoint), plus curves enclosing
consecutive puncture pairs when punctures are present.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import LiteralError, WeightBoundExceeded
from .multicurve import MultiCurve, canonical_vector, vec_sum
from .overlay import PairOverlay, intersection_number
from .universe import curve_universe
from .words import reverse_word, tighten_closed, word_vector

DEFAULT_W_MAX = 512

# detour orientation making T[b1] @ a1 land on the (1,1) chain curve
RIGHT_TWIST = 1


@dataclass(frozen=True)
class TwistWord:
    letters: tuple  # ((name, exponent), ...)

    def __post_init__(self):
        for name, exp in self.letters:
            if exp == 0:
                raise LiteralError("zero exponent in twist word")

    @property
    def inverse(self):
        return TwistWord(tuple((n, -e) for n, e in reversed(self.letters)))

    def __str__(self):
        return " ".join(
            f"T[{n}]" + (f"^{e}" if e != 1 else "") for n, e in self.letters
        )

    @staticmethod
    def parse(text: str) -> "TwistWord":
        text = text.strip()
        if not text:
            return TwistWord(())
        letters = []
        for tok in text.split():
            m = re.fullmatch(r"T\[([A-Za-z]\w*)\](?:\^(-?\d+))?", tok)
            if not m:
                raise LiteralError(f"bad twist token {tok!r}")
            letters.append((m.group(1), int(m.group(2) or 1)))
        return TwistWord(tuple(letters))


def twist_along(curve: MultiCurve, about: MultiCurve, power: int, w_max=DEFAULT_W_MAX):
    """Image of `curve` under the `power`-th twist about a simple curve."""
    if power == 0 or curve.is_empty:
        return curve
    if not about.is_simple_curve:
        raise ValueError("twisting requires a single essential curve")
    tri = curve.tri
    ov = PairOverlay(curve, about)
    b_cycles = {}  # starting node uid -> full cycle letters from that node
    total = (0,) * tri.num_edges
    from .tracing import component_word

    for ci, comp in enumerate(curve.placement.components):
        start = ov.a_lists[ci]
        if start is None:
            total = vec_sum(total, comp.vector)
            continue
        word = []
        node = start
        guard = 0
        while True:
            cyc = b_cycles.get(node.uid)
            if cyc is None:
                cyc = []
                cur = node
                while True:
                    cyc.extend(cur.b_gap)
                    cur = cur.b_next
                    if cur is node:
                        break
                b_cycles[node.uid] = cyc
            direction = node.sign * RIGHT_TWIST * (1 if power > 0 else -1)
            detour = cyc if direction > 0 else reverse_word(cyc)
            for _ in range(abs(power)):
                word.extend(detour)
            word.extend(node.a_gap)
            if len(word) > 4096 * max(1, w_max // 8):
                raise WeightBoundExceeded("twist word exploded past the weight cap")
            node = node.a_next
            guard += 1
            if node is start:
                break
        tight = tighten_closed(tri, word)
        vec = word_vector(tri, tight)
        if sum(vec) > w_max:
            raise WeightBoundExceeded(
                f"twist image weight {sum(vec)} exceeds cap {w_max}"
            )
        total = vec_sum(total, vec)
    if sum(total) > w_max:
        raise WeightBoundExceeded(f"twist image weight {sum(total)} exceeds cap {w_max}")
    return MultiCurve(tri, canonical_vector(tri, total))


# -- generator tables ---------------------------------------------------------


def _want(n1, n2):
    """Required geometric intersection between two named chain curves."""
    k1, i1 = n1[0], int(n1[1:])
    k2, i2 = n2[0], int(n2[1:])
    if k1 == k2:
        return 0
    if {k1, k2} == {"a", "b"}:
        return 1 if i1 == i2 else 0
    if {k1, k2} == {"b", "c"}:
        bi = i1 if k1 == "b" else i2
        ci = i1 if k1 == "c" else i2
        return 1 if bi in (ci, ci + 1) else 0
    return 0


@lru_cache(maxsize=64)
def generator_table(tri):
    """Named twist generator curves for a canonical surface complex."""
    g = tri.genus
    if g < 1:
        return {}
    order = ["a1", "b1"]
    for i in range(2, g + 1):
        order += [f"c{i - 1}", f"b{i}", f"a{i}"]
    want = _want

    from .cutting import is_nonseparating

    W = 8
    while W <= 28:
        pool = curve_universe(tri, W, predicate=is_nonseparating)
        assign = {}

        def ok(name, cand):
            for n2, c2 in assign.items():
                target = want(name, n2)
                if intersection_number(cand, c2) != target:
                    return False
            return True

        def search(k):
            if k == len(order):
                return True
            name = order[k]
            for cand in pool:
                if cand in assign.values():
                    continue
                if ok(name, cand):
                    assign[name] = cand
                    if search(k + 1):
                        return True
                    del assign[name]
            return False

        if search(0):
            table = dict(assign)
            table.update(_puncture_curves(tri, W))
            return table
        W += 6
    raise RuntimeError(f"no generator chain found on {tri.name}")


def _puncture_curves(tri, W):
    """Curves enclosing consecutive puncture pairs, when they exist."""
    out = {}
    m = len(tri.marked)
    if m < 2:
        return out
    from .cutting import cut_along

    marks = sorted(tri.marked)
    for j in range(m - 1):
        pair = {marks[j], marks[j + 1]}
        best = None
        for mc in curve_universe(tri, W):
            cut = cut_along(mc)
            if cut.connected:
                continue
            for p_idx, piece in enumerate(cut.pieces):
                if piece.genus == 0 and piece.boundary == 1 and piece.punctures == 2:
                    verts = {
                        tri.vertex_of_corner[(tag[1], tag[2])]
                        for tag in _piece_vertex_tags(cut, p_idx)
                    }
                    if pair <= verts:
                        best = mc
                        break
            if best:
                break
        if best:
            out[f"p{j + 1}"] = best
    return out


def _piece_vertex_tags(cut, p_idx):
    tags = []
    for cell in cut.cells:
        if cut.cell_piece[cell] != p_idx:
            continue
        f = cell[0]
        verts, _ = cut._cell_polygon(f, cell[1:])
        tags.extend(t for t in verts if t[0] == "corner")
    return tags


def apply_twist(word: TwistWord, curve: MultiCurve, w_max=DEFAULT_W_MAX):
    """Apply a twist word (leftmost letter acts last)."""
    table = generator_table(curve.tri)
    out = curve
    for name, exp in reversed(word.letters):
        if name not in table:
            raise LiteralError(f"unknown generator {name!r} on {curve.tri.name}")
        out = twist_along(out, table[name], exp, w_max=w_max)
    return out


def slope_curve(tri, p, q):
    """The (p, q) chain curve on the once-punctured torus complex."""
    from math import gcd

    if tri.genus != 1 or len(tri.marked) != 1 or tri.num_edges != 3:
        raise ValueError("slope curves live on the punctured torus")
    if gcd(p, q) != 1:
        raise LiteralError("slope must be a coprime pair")
    return MultiCurve(tri, (abs(q), abs(p), abs(p - q)))

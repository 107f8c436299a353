"""Edge-crossing words and combinatorial tightening.

A closed curve transverse to the triangulation is recorded as the cyclic
sequence of its edge crossings.  A letter is (edge, d) where d indexes the
incidence the curve enters through, so the face after letter k is
``tri.incidences[e][d][0]``.

Tightening brings a word to the minimal crossing number in its homotopy
class rel marked points.  Backtrack cancellation (an arc entering and
leaving a face through the same side) is always sound.  Fan moves slide a
maximal corner run across its pivot vertex; they sweep the star disk of
the pivot and are therefore only applied at unmarked interior vertices.
On fully marked (ideal) complexes the dual-graph words live in a free
group and backtrack cancellation alone is complete; unmarked vertices add
the link relation, handled Dehn-style: long fans are strictly shortened,
half-length fans are explored as an equal-length plateau.

A tightened word crosses every edge minimally, so its per-edge
multiplicities are the normal coordinates of the underlying curve.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InadmissibleError

DEBUG_VALIDATE = False


def face_after(tri, letter):
    e, d = letter
    return tri.incidences[e][d][0]


def side_before(tri, letter):
    """The (face, side) incidence the curve leaves through at this letter."""
    e, d = letter
    return tri.incidences[e][1 - d]


def side_after(tri, letter):
    e, d = letter
    return tri.incidences[e][d]


def reverse_word(word):
    return [(e, 1 - d) for (e, d) in reversed(word)]


def validate_word(tri, word, cyclic=True):
    n = len(word)
    rng = range(n) if cyclic else range(n - 1)
    for k in rng:
        e, d = word[k]
        if len(tri.incidences[e]) < 2:
            raise ValueError(f"letter {k} crosses boundary edge {e}")
        f = face_after(tri, word[k])
        f2, _ = side_before(tri, word[(k + 1) % n])
        if f != f2:
            raise ValueError(f"word discontinuous between letters {k} and {k + 1}")


def free_reduce_cyclic(word):
    """Cancel adjacent backtracks (e,d),(e,1-d), cyclically, to a fixed point."""
    w = list(word)
    changed = True
    while changed and w:
        changed = False
        out = []
        for let in w:
            if out and out[-1][0] == let[0] and out[-1][1] == 1 - let[1]:
                out.pop()
                changed = True
            else:
                out.append(let)
        while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == 1 - out[-1][1]:
            out = out[1:-1]
            changed = True
        w = out
    return w


def min_rotation(seq):
    seq = tuple(seq)
    if not seq:
        return seq
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def canonical_cyclic(word):
    return min_rotation(word)


@lru_cache(maxsize=4096)
def link_word(tri, v):
    """Directed crossing word of the small circle around vertex v (orbit order)."""
    corners = tri.vertex_corners[v]
    if not tri.vertex_cyclic[v]:
        raise ValueError("link word only defined for interior vertices")
    word = []
    for t in range(len(corners)):
        f, i = corners[t]
        e, _ = tri.faces[f][i]
        f2, j1 = tri.next_around((f, i))
        j = (j1 - 1) % 3
        d = tri.incidences[e].index((f2, j))
        word.append((e, d))
    return tuple(word)


def bounds_clean_disk(tri, loop):
    """True when an embedded loop bounds a disk free of marked points.

    The loop is a directed crossing word; it bounds such a disk exactly
    when it reduces to nothing in the dual graph, or wraps a single
    unmarked interior vertex once.
    """
    red = free_reduce_cyclic(loop)
    if not red:
        return True
    key = canonical_cyclic(red)
    for v in range(tri.num_vertices):
        if v in tri.marked or not tri.vertex_cyclic[v]:
            continue
        lw = list(link_word(tri, v))
        if len(lw) != len(key):
            continue
        if canonical_cyclic(lw) == key or canonical_cyclic(reverse_word(lw)) == key:
            return True
    return False


# -- corner runs and fan moves ------------------------------------------------


def _gap_corner(f, i, j):
    """Corner of a face cut by an arc entering side i and leaving side j."""
    if (i + 1) % 3 == j:
        return j
    if (j + 1) % 3 == i:
        return i
    raise AssertionError("sides of a triangle are always adjacent")


def _end_at_corner(tri, f, side, corner):
    e, fwd = tri.faces[f][side]
    if corner == side:
        return "tail" if fwd else "head"
    if corner == (side + 1) % 3:
        return "head" if fwd else "tail"
    raise AssertionError("corner not on side")


def _gap_info(tri, w, k):
    """Classify the gap between letters k and k+1 of a cyclic word.

    ('spike',) or ('corner', vertex, entry_end, exit_end); the ends are
    (edge, 'tail'|'head') descriptors of the pivot vertex ends.
    """
    n = len(w)
    f, i = side_after(tri, w[k])
    f2, j = side_before(tri, w[(k + 1) % n])
    if f != f2:
        raise AssertionError("gap between inconsistent letters")
    if i == j:
        return ("spike",)
    c = _gap_corner(f, i, j)
    v = tri.vertex_of_corner[(f, c)]
    entry_end = (w[k][0], _end_at_corner(tri, f, i, c))
    exit_end = (w[(k + 1) % n][0], _end_at_corner(tri, f, j, c))
    return ("corner", v, entry_end, exit_end)


def _movable(tri, v):
    return v not in tri.marked and tri.vertex_cyclic[v]


def _runs(tri, w):
    """Maximal corner runs around movable vertices: (start_gap, length, vertex)."""
    n = len(w)
    info = [_gap_info(tri, w, k) for k in range(n)]

    def is_corner(k):
        return info[k][0] == "corner" and _movable(tri, info[k][1])

    def continues(k):
        k2 = (k + 1) % n
        return (
            is_corner(k)
            and is_corner(k2)
            and info[k][1] == info[k2][1]
            and info[k][3] == info[k2][2]
        )

    starts = [
        k for k in range(n) if is_corner(k) and not continues((k - 1) % n)
    ]
    if not starts:
        if n and all(is_corner(k) for k in range(n)) and all(
            continues(k) for k in range(n)
        ):
            return [(0, n, info[0][1])]
        return []
    runs = []
    for s in starts:
        length = 1
        while length < n and continues((s + length - 1) % n):
            length += 1
        runs.append((s, length, info[s][1]))
    return runs


def _fan_slot_letter(tri, v, t, direction):
    """Letter crossing fan slot t of vertex v; +1 follows orbit order."""
    f, i = tri.vertex_corners[v][t]
    e, _ = tri.faces[f][i]
    other = tri.other_incidence(e, f, i)
    if other is None:
        raise AssertionError("fan move across a boundary vertex")
    if direction == 1:
        return (e, tri.incidences[e].index(other))
    return (e, tri.incidences[e].index((f, i)))


def _replace_fan(tri, w, start, length, v):
    """Reroute `length` fan gaps starting at gap `start` across vertex v."""
    n = len(w)
    fan = tri.vertex_fan(v)
    D = len(fan)
    idx = {end: t for t, end in enumerate(fan)}
    ends = []
    for t in range(length):
        gi = _gap_info(tri, w, (start + t) % n)
        if gi[0] != "corner" or gi[1] != v:
            raise AssertionError("run does not pivot the expected vertex")
        if t == 0:
            ends.append(gi[2])
        ends.append(gi[3])
    pos = [idx[end] for end in ends]
    m = len(pos)  # number of crossed fan slots
    if m > D:
        raise AssertionError("fan move longer than vertex degree")
    if m >= 2:
        s = 1 if (pos[1] - pos[0]) % D == 1 else -1
        for t in range(1, m):
            if (pos[t] - pos[t - 1]) % D != s % D:
                raise AssertionError("fan positions not consecutive")
    else:
        s = 1
    u = pos[0]
    new_positions = [(u - s * (t + 1)) % D for t in range(D - m)]
    new_letters = [_fan_slot_letter(tri, v, t, -s) for t in new_positions]

    block = {(start + t) % n for t in range(length + 1)}
    tail = []
    k = (start + length + 1) % n
    while k not in block:
        tail.append(w[k])
        k = (k + 1) % n
    out = new_letters + tail
    if DEBUG_VALIDATE and out:
        validate_word(tri, out)
    return out


def tighten_closed(tri, word, plateau_cap=50000):
    """Tighten a closed curve word to minimal total crossing number."""
    w = free_reduce_cyclic(list(word))

    def moves(w, want_strict):
        out = []
        n = len(w)
        for (start, length, v) in _runs(tri, w):
            D = tri.vertex_degree(v)
            if length == n:
                # the whole word wraps the vertex; a single wrap is its link
                if n == D and want_strict:
                    out.append([])
                continue
            use = min(length, D - 1)
            m = use + 1
            strict = D - m < m
            tie = D - m == m
            if want_strict and strict:
                out.append(free_reduce_cyclic(_replace_fan(tri, w, start, use, v)))
            elif (not want_strict) and tie and use == length:
                out.append(free_reduce_cyclic(_replace_fan(tri, w, start, use, v)))
        return out

    while True:
        cands = moves(w, want_strict=True)
        if cands:
            w = min(cands, key=lambda c: (len(c), canonical_cyclic(c)))
            continue
        seen = {canonical_cyclic(w)}
        queue = [w]
        found = None
        while queue and found is None:
            cur = queue.pop(0)
            strict_here = moves(cur, want_strict=True)
            if strict_here:
                found = min(strict_here, key=lambda c: (len(c), canonical_cyclic(c)))
                break
            for nb in moves(cur, want_strict=False):
                key = canonical_cyclic(nb)
                if key not in seen:
                    if len(seen) >= plateau_cap:
                        raise RuntimeError("tightening plateau exceeded cap")
                    seen.add(key)
                    queue.append(nb)
        if found is None:
            return list(min(seen))
        w = found


def vertex_pass_letters(tri, corner):
    """Letters crossed when sliding past a boundary vertex.

    Starting at the given arrival corner, rotate across outgoing sides and
    record the crossings until the outgoing side is a boundary edge; this
    is the route a path hugging the boundary takes past the vertex.
    """
    letters = []
    c = corner
    while True:
        e, _ = tri.faces[c[0]][c[1]]
        if e in tri.boundary_edges:
            break
        f2, j1 = tri.next_around(c)
        j = (j1 - 1) % 3
        d = tri.incidences[e].index((f2, j))
        letters.append((e, d))
        c = (f2, j1)
    return letters


def word_vector(tri, word):
    vec = [0] * tri.num_edges
    for e, _ in word:
        vec[e] += 1
    return tuple(vec)


def closed_curve_vector(tri, word):
    """Normal coordinates of the closed curve carried by a word."""
    tight = tighten_closed(tri, word)
    if not tight:
        return tuple([0] * tri.num_edges)
    vec = word_vector(tri, tight)
    from .tracing import check_admissible

    try:
        check_admissible(tri, vec)
    except InadmissibleError as exc:
        raise AssertionError(f"tightened word not admissible: {exc}") from exc
    return vec

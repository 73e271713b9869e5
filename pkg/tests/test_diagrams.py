"""Triangulated discs: moves, curvature bookkeeping, minimal search.

Minimal areas are cross-checked by a forward breadth-first search over
boundary words that shares no code with the production A* search.
"""

import random
from collections import deque

import pytest

from conftest import zxz_vector
from preekit.diagrams import (
    DiagramError,
    attach_triangle,
    curvature_check,
    diagram_from_strip,
    diagram_stats,
    diagram_to_dot,
    diagram_to_text,
    fan_diagram,
    find_minimal_diagram,
    grow_random,
    reduce_internal_vertex,
    removable_boundary_faces,
    remove_boundary_triangle,
    single_triangle,
)
from preekit.words import inverse_word, parse_word, strip_reduce_once


def _canon(p, w):
    best = None
    for t in (w, tuple(p.inv[a] for a in reversed(w))):
        for r in range(len(t)):
            cand = t[r:] + t[:r]
            if best is None or cand < best:
                best = cand
    return best


def _forward_min_area(p, w, cap):
    """Grow boundary words triangle by triangle, breadth-first."""
    target = _canon(p, w)
    fact = [[] for _ in range(p.size)]
    triangles = set()
    for a, b, c in p.defined_pairs():
        fact[c].append((a, b))
        triangles.add(_canon(p, (a, b, p.inv[c])))
    if target in triangles:
        return 1
    seen = set(triangles)
    layer = deque((t, 1) for t in sorted(triangles))
    while layer:
        u, area = layer.popleft()
        if area >= cap:
            continue
        n = len(u)
        succs = []
        for i in range(n):
            x, y = u[i], u[(i + 1) % n]
            c = p.table[x][y]
            if c != -1 and n >= 3:
                succs.append(u[:i] + (c,) + u[i + 2 :] if i + 1 < n else (c,) + u[1:-1])
        for i in range(n):
            for e, f in fact[u[i]]:
                succs.append(u[:i] + (e, f) + u[i + 1 :])
        for v in succs:
            cv = _canon(p, v)
            if cv == target:
                return area + 1
            if cv not in seen:
                seen.add(cv)
                layer.append((cv, area + 1))
    return None


def _tri(zxz):
    a = zxz.id_of("(1,0)")
    b = zxz.id_of("(0,1)")
    return single_triangle(zxz, a, b)  # third side reads (-1,-1)


def test_single_triangle_reading(zxz):
    d = _tri(zxz)
    assert d.area == 1
    assert d.boundary_word() == parse_word(zxz, "(1,0) (0,1) (-1,-1)")
    lhs, rhs, ok = curvature_check(d)
    assert ok and lhs == 6


def test_single_triangle_needs_defined_product(taxicab):
    with pytest.raises(DiagramError):
        single_triangle(taxicab, taxicab.id_of("(1,0)"), taxicab.id_of("(0,1)"))


def test_readings_cover_rotations_and_reversal(zxz):
    d = _tri(zxz)
    rs = d.readings()
    assert len(rs) == 6
    words = {r for _, _, r in rs}
    w = d.boundary_word()
    assert w in words
    assert inverse_word(zxz, w) in words


def test_attach_split_then_remove_restores_boundary(zxz):
    d = _tri(zxz)
    x = d.side_label(d.boundary[0])
    pairs = [(a, b) for a, b, c in zxz.defined_pairs() if c == x]
    e, f = pairs[0]
    d2 = attach_triangle(d, 0, (e, f))
    assert d2.area == 2
    assert len(d2.boundary) == len(d.boundary) + 1
    assert curvature_check(d2)[2]
    d3 = remove_boundary_triangle(d2, d2.area - 1)
    assert d3.area == 1
    assert d.boundary_word() in {r for _, _, r in d3.readings()}


def test_attach_fold_shrinks_boundary(zxz):
    d = _tri(zxz)
    pairs = [(a, b) for a, b, c in zxz.defined_pairs() if c == d.side_label(d.boundary[0])]
    d2 = attach_triangle(d, 0, pairs[0])
    # the two new sides read a pair with a defined product; fold it back
    d3 = attach_triangle(d2, 0)
    assert d3.area == 3
    assert len(d3.boundary) == len(d2.boundary) - 1
    assert curvature_check(d3)[2]


def test_every_grown_diagram_peels_to_one_triangle(zxz, s3):
    rng = random.Random(43)
    for p in (zxz, s3):
        for _ in range(10):
            d = grow_random(p, rng, rng.randrange(2, 10))
            while d.area > 1:
                faces = removable_boundary_faces(d)
                assert faces, "stuck at area %d" % d.area
                d2 = remove_boundary_triangle(d, faces[0])
                assert d2.area == d.area - 1
                d = d2


def test_single_triangle_has_no_removable_face(zxz):
    assert removable_boundary_faces(_tri(zxz)) == []


def test_curvature_identity_on_random_diagrams(zxz, s3, q8):
    rng = random.Random(47)
    for p in (zxz, s3, q8):
        for _ in range(60):
            d = grow_random(p, rng, rng.randrange(1, 14))
            lhs, rhs, ok = curvature_check(d)
            assert ok, (lhs, rhs)


def test_strip_diagram_reads_top_then_inverse_output(zxz):
    w = parse_word(zxz, "(0,1) (1,1) (1,0)")
    _, wit = strip_reduce_once(zxz, w)
    d = diagram_from_strip(zxz, wit)
    n = len(wit.top)
    assert d.area == 2 * n - 3
    assert d.boundary_word() == wit.top + inverse_word(zxz, wit.output)
    assert curvature_check(d)[2]


def test_fan_diagram_hexagon(zxz):
    spokes = [zxz.id_of(s) for s in
              ["(1,0)", "(1,1)", "(0,1)", "(-1,0)", "(-1,-1)", "(0,-1)"]]
    d = fan_diagram(zxz, spokes)
    assert d.area == 6
    assert d.internal_vertices() == [0]
    assert d.degrees()[0] == 6
    assert curvature_check(d)[2]
    stats = diagram_stats(d)
    assert stats.internal_degrees == (6,)


def test_fan_needs_three_spokes(zxz):
    with pytest.raises(DiagramError):
        fan_diagram(zxz, [zxz.id_of("(1,0)")] * 2)


def test_reduce_internal_degree_four_vertex(zxz):
    x, diag = zxz.id_of("(1,0)"), zxz.id_of("(1,1)")
    d = fan_diagram(zxz, [x, diag, x, diag])
    assert d.degrees()[0] == 4
    before = _canon(zxz, d.boundary_word())
    d2 = reduce_internal_vertex(zxz, d, 0)
    assert d2.area == d.area - 2
    assert _canon(zxz, d2.boundary_word()) == before
    assert curvature_check(d2)[2]


def test_stats_render_is_stable(zxz):
    stats = diagram_stats(_tri(zxz))
    assert stats.area == 1
    assert stats.boundary_length == 3
    assert stats.delta2 == 3
    assert stats.render() == (
        "area 1, boundary 3, delta2 3, delta3 0, delta5 0, "
        "internal degrees [], galleries 3"
    )


def test_minimal_diagram_for_cancelling_pair(zxz):
    x = zxz.id_of("(1,0)")
    d = find_minimal_diagram(zxz, (x, zxz.inv[x]))
    assert d is not None
    assert d.area == 2
    assert diagram_stats(d).internal_degrees == (2,)


def test_minimal_diagram_for_triangle_word(zxz):
    w = parse_word(zxz, "(1,0) (0,1) (-1,-1)")
    d = find_minimal_diagram(zxz, w)
    assert d is not None and d.area == 1


def test_minimal_diagram_rejects_nonidentity_words(zxz):
    assert find_minimal_diagram(zxz, parse_word(zxz, "(1,0) (1,0)")) is None


def test_minimal_areas_match_forward_search(zxz):
    rng = random.Random(53)
    letters = zxz.nonidentity()
    checked = 0
    while checked < 15:
        w = tuple(rng.choice(letters) for _ in range(4))
        if zxz_vector(zxz, w) != (0, 0):
            continue
        checked += 1
        want = _forward_min_area(zxz, w, 6)
        d = find_minimal_diagram(zxz, w, max_area=6)
        if want is None:
            assert d is None
        else:
            assert d is not None and d.area == want
            assert _canon(zxz, d.boundary_word()) == _canon(zxz, w)
            s = diagram_stats(d)
            assert 2 * s.delta2 + s.delta3 >= 6 + s.delta5


def test_minimal_diagram_respects_budget(zxz):
    w = parse_word(zxz, "(1,0) (-1,0)")
    assert find_minimal_diagram(zxz, w, max_area=1) is None


def test_diagram_text_and_dot(zxz):
    d = _tri(zxz)
    text = diagram_to_text(d)
    assert text.splitlines()[0] == "vertices 3 edges 3 faces 1"
    assert text.splitlines()[-1] == "boundary word (1,0) (0,1) (-1,-1)"
    dot = diagram_to_dot(d)
    assert dot.startswith("graph diagram {")
    assert 'v0 -- v1 [label="(1,0)", penwidth=2];' in dot

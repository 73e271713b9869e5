"""Triangulated disc diagrams over a pree.

A diagram is a combinatorial map: edges carry a label read in the
forward direction (the reverse side reads the inverse), every face is a
triangle of three sides whose labels multiply to the identity through a
defined product, and the leftover sides form the outer boundary.  Each
edge side is used exactly once, so orientation consistency is forced.
Validation re-checks the full invariant set on every construction, and
the Euler relation plus connectivity rule out non-disc gluings.

Side convention: a side is (edge_id, forward); (e, True) runs u -> v
reading the stored label, (e, False) runs v -> u reading its inverse.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from random import Random
from typing import Optional

from .pree import Pree, PreeError
from .words import Word, StripWitness, inverse_word, render_word
from .group import abelian_obstruction

Side = tuple[int, bool]


class DiagramError(Exception):
    pass


class Diagram:
    """Immutable triangulated disc; validates itself on construction."""

    def __init__(
        self,
        pree: Pree,
        n_vertices: int,
        edges: tuple[tuple[int, int, int], ...],
        faces: tuple[tuple[Side, Side, Side], ...],
        boundary: tuple[Side, ...],
    ):
        self.pree = pree
        self.n_vertices = n_vertices
        self.edges = tuple(edges)
        self.faces = tuple(tuple(f) for f in faces)
        self.boundary = tuple(boundary)
        self._validate()

    @property
    def area(self) -> int:
        return len(self.faces)

    def side_tail(self, s: Side) -> int:
        e, fwd = s
        return self.edges[e][0] if fwd else self.edges[e][1]

    def side_head(self, s: Side) -> int:
        e, fwd = s
        return self.edges[e][1] if fwd else self.edges[e][0]

    def side_label(self, s: Side) -> int:
        e, fwd = s
        lab = self.edges[e][2]
        return lab if fwd else self.pree.inv[lab]

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def boundary_vertices(self) -> list[int]:
        return [self.side_tail(s) for s in self.boundary]

    def internal_vertices(self) -> list[int]:
        on_b = set(self.boundary_vertices())
        return [v for v in range(self.n_vertices) if v not in on_b]

    def boundary_word(self, start: int = 0, direction: int = 1) -> Word:
        n = len(self.boundary)
        if direction == 1:
            return tuple(self.side_label(self.boundary[(start + k) % n]) for k in range(n))
        return tuple(
            self.pree.inv[self.side_label(self.boundary[(start - k) % n])] for k in range(n)
        )

    def readings(self) -> list[tuple[int, int, Word]]:
        out = []
        for start in range(len(self.boundary)):
            for direction in (1, -1):
                out.append((start, direction, self.boundary_word(start, direction)))
        return out

    def _validate(self) -> None:
        p = self.pree
        if self.n_vertices < 2:
            raise DiagramError("too few vertices")
        for u, v, lab in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise DiagramError("edge endpoint out of range")
            if not (0 <= lab < p.size):
                raise DiagramError("edge label out of range")
        used: set[Side] = set()
        for f in self.faces:
            if len(f) != 3:
                raise DiagramError("face is not a triangle")
            verts = [self.side_tail(s) for s in f]
            if len(set(verts)) != 3:
                raise DiagramError("face vertices not distinct")
            for k in range(3):
                if self.side_head(f[k]) != self.side_tail(f[(k + 1) % 3]):
                    raise DiagramError("face walk does not close")
            labs = [self.side_label(s) for s in f]
            ok = False
            for r in range(3):
                x1, x2, x3 = labs[r], labs[(r + 1) % 3], labs[(r + 2) % 3]
                c = p.table[x1][x2]
                if c != -1 and c == p.inv[x3]:
                    ok = True
                    break
            if not ok:
                raise DiagramError(
                    "face labels are not a relator: " + " ".join(p.name(x) for x in labs)
                )
            for s in f:
                if s in used:
                    raise DiagramError("edge side used twice")
                used.add(s)
        if len(self.boundary) < 2:
            raise DiagramError("boundary shorter than 2")
        bverts = self.boundary_vertices()
        if len(set(bverts)) != len(bverts):
            raise DiagramError("boundary is not simple")
        n = len(self.boundary)
        for k in range(n):
            if self.side_head(self.boundary[k]) != self.side_tail(self.boundary[(k + 1) % n]):
                raise DiagramError("boundary walk does not close")
        for s in self.boundary:
            if s in used:
                raise DiagramError("edge side used twice")
            used.add(s)
        if len(used) != 2 * len(self.edges):
            raise DiagramError("unused edge side")
        deg = self.degrees()
        if any(d < 2 for d in deg):
            raise DiagramError("vertex of degree < 2")
        if self.n_vertices - len(self.edges) + len(self.faces) != 1:
            raise DiagramError("Euler relation fails")
        adj: dict[int, list[int]] = {}
        for u, v, _ in self.edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj.get(stack.pop(), ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.n_vertices:
            raise DiagramError("diagram is not connected")
        lhs, rhs, equal = curvature_check(self)
        if not equal:
            raise DiagramError("curvature identity fails: %d != %d" % (lhs, rhs))


def curvature_check(d: Diagram) -> tuple[int, int, bool]:
    """Both sides of the boundary/internal degree identity."""
    deg = d.degrees()
    on_b = set(d.boundary_vertices())
    lhs = sum(4 - deg[v] for v in on_b)
    rhs = 6 + sum(deg[v] - 6 for v in range(d.n_vertices) if v not in on_b)
    return lhs, rhs, lhs == rhs


def single_triangle(p: Pree, a: int, b: int) -> Diagram:
    """One face; boundary reads a, b, (ab)^-1 from vertex 0."""
    c = p.table[a][b]
    if c == -1:
        raise DiagramError(
            "product of %s and %s is not defined" % (p.name(a), p.name(b))
        )
    edges = ((0, 1, a), (1, 2, b), (2, 0, p.inv[c]))
    boundary = ((0, True), (1, True), (2, True))
    faces = (((2, False), (1, False), (0, False)),)
    return Diagram(p, 3, edges, faces, boundary)


def attach_triangle(
    d: Diagram, pos: int, factors: Optional[tuple[int, int]] = None
) -> Diagram:
    """Attach one triangle along the boundary.

    With factors (e, f): the boundary side at pos, reading x, is covered
    by a new triangle with e*f = x; the boundary grows by one.  Without
    factors: the sides at pos and pos+1, reading x and y with x*y
    defined, are covered together; the boundary shrinks by one.
    """
    if factors is not None:
        return _split(d, pos, factors[0], factors[1])
    return _fold(d, pos)


def _split(d: Diagram, pos: int, e: int, f: int) -> Diagram:
    p = d.pree
    n = len(d.boundary)
    s = d.boundary[pos % n]
    x = d.side_label(s)
    if p.table[e][f] != x:
        raise DiagramError(
            "factors %s %s do not multiply to %s" % (p.name(e), p.name(f), p.name(x))
        )
    u, v = d.side_tail(s), d.side_head(s)
    m = d.n_vertices
    e1 = len(d.edges)
    e2 = e1 + 1
    edges = d.edges + ((u, m, e), (m, v, f))
    face = (s, (e2, False), (e1, False))
    faces = d.faces + (face,)
    pos %= n
    boundary = d.boundary[:pos] + ((e1, True), (e2, True)) + d.boundary[pos + 1 :]
    return Diagram(p, m + 1, edges, faces, boundary)


def _fold(d: Diagram, pos: int) -> Diagram:
    p = d.pree
    n = len(d.boundary)
    if n < 3:
        raise DiagramError("cannot fold a boundary of length 2")
    pos %= n
    s1 = d.boundary[pos]
    s2 = d.boundary[(pos + 1) % n]
    x, y = d.side_label(s1), d.side_label(s2)
    z = p.table[x][y]
    if z == -1:
        raise DiagramError(
            "product of %s and %s is not defined" % (p.name(x), p.name(y))
        )
    u = d.side_tail(s1)
    w = d.side_head(s2)
    if u == w:
        raise DiagramError("fold would pinch the boundary")
    eid = len(d.edges)
    edges = d.edges + ((u, w, z),)
    faces = d.faces + ((s1, s2, (eid, False)),)
    if (pos + 1) % n == 0:
        boundary = ((eid, True),) + d.boundary[1 : n - 1]
    else:
        boundary = d.boundary[:pos] + ((eid, True),) + d.boundary[pos + 2 :]
    return Diagram(p, d.n_vertices, edges, faces, boundary)


def _rebuild(
    p: Pree,
    n_vertices: int,
    edges: list,
    faces: list,
    boundary: list,
    drop_vertices: set[int],
    drop_edges: set[int],
) -> Diagram:
    vmap = {}
    for v in range(n_vertices):
        if v not in drop_vertices:
            vmap[v] = len(vmap)
    emap = {}
    new_edges = []
    for i, (u, v, lab) in enumerate(edges):
        if i in drop_edges:
            continue
        emap[i] = len(new_edges)
        new_edges.append((vmap[u], vmap[v], lab))
    remap = lambda s: (emap[s[0]], s[1])
    new_faces = [tuple(remap(s) for s in f) for f in faces]
    new_boundary = [remap(s) for s in boundary]
    return Diagram(p, len(vmap), tuple(new_edges), tuple(new_faces), tuple(new_boundary))


def remove_boundary_triangle(d: Diagram, face_index: int) -> Diagram:
    """Inverse of attach_triangle for a face touching the boundary."""
    if d.area < 2:
        raise DiagramError("cannot remove the only face")
    face = d.faces[face_index]
    bpos = {}
    for k, s in enumerate(face):
        opp = (s[0], not s[1])
        for q, bs in enumerate(d.boundary):
            if bs == opp:
                bpos[k] = q
    faces = [f for i, f in enumerate(d.faces) if i != face_index]
    n = len(d.boundary)
    if len(bpos) == 1:
        # one shared edge: delete it, its face's other sides are exposed
        (k, q), = bpos.items()
        t = d.side_head(face[(k + 1) % 3])
        if t in d.boundary_vertices():
            raise DiagramError("removal would pinch the boundary at a shared vertex")
        repl = [face[(k + 1) % 3], face[(k + 2) % 3]]
        boundary = list(d.boundary[:q]) + repl + list(d.boundary[q + 1 :])
        out = _rebuild(d.pree, d.n_vertices, list(d.edges), faces, boundary, set(), {face[k][0]})
    elif len(bpos) == 2:
        ks = sorted(bpos)
        qa, qb = bpos[ks[0]], bpos[ks[1]]
        if (qa + 1) % n == qb:
            first_k, first_q = ks[0], qa
        elif (qb + 1) % n == qa:
            first_k, first_q = ks[1], qb
        else:
            raise DiagramError("shared edges are not consecutive on the boundary")
        # face sides k, k+1 are the two shared ones in boundary order?
        # boundary runs opposite to the face, so boundary order (qa,qb)
        # corresponds to face sides (k+1, k).
        k2 = (first_k - 1) % 3  # second shared face side
        if (face[k2][0], not face[k2][1]) != d.boundary[(first_q + 1) % n]:
            raise DiagramError("shared edges are not consecutive on the boundary")
        mid = d.side_head(d.boundary[first_q])
        deg = d.degrees()
        if deg[mid] != 2:
            raise DiagramError("middle vertex has extra edges")
        third = face[(first_k + 1) % 3]
        if (first_q + 1) % n == 0:
            boundary = [third] + list(d.boundary[1 : n - 1])
        else:
            boundary = list(d.boundary[:first_q]) + [third] + list(d.boundary[first_q + 2 :])
        out = _rebuild(
            d.pree,
            d.n_vertices,
            list(d.edges),
            faces,
            boundary,
            {mid},
            {face[first_k][0], face[k2][0]},
        )
    else:
        raise DiagramError("face does not meet the boundary in 1 or 2 edges")
    return out


def removable_boundary_faces(d: Diagram) -> list[int]:
    out = []
    for i in range(len(d.faces)):
        try:
            remove_boundary_triangle(d, i)
        except DiagramError:
            continue
        out.append(i)
    return out


def diagram_from_strip(p: Pree, witness: StripWitness) -> Diagram:
    """Strip gallery as a diagram: boundary reads top then inverse output."""
    a = witness.top
    n = len(a)
    d = witness.diagonals
    c = witness.output
    inv = p.inv
    g = [0] * n  # g[i] defined for 2..n-1
    for i in range(2, n):
        g[i] = p.table[inv[a[i - 1]]][d[i - 2]]
        if g[i] == -1:
            raise DiagramError("strip witness does not hold in the table")
    # vertices: t0..tn are 0..n, b1..b_{n-2} are n+1..2n-2
    t = list(range(n + 1))
    b = [0] + [n + i for i in range(1, n - 1)] + [n]
    edges = []
    top = []
    for i in range(1, n + 1):
        top.append(len(edges))
        edges.append((t[i - 1], t[i], a[i - 1]))
    bot = []
    for i in range(1, n):
        bot.append(len(edges))
        edges.append((b[i - 1], b[i], c[i - 1]))
    dia = {}
    for i in range(1, n - 1):
        dia[i] = len(edges)
        edges.append((t[i], b[i], d[i - 1]))
    ged = {}
    for i in range(2, n):
        ged[i] = len(edges)
        edges.append((t[i], b[i - 1], g[i]))
    faces = [((top[0], False), (bot[0], True), (dia[1], False))]
    for i in range(2, n):
        faces.append(((top[i - 1], False), (dia[i - 1], True), (ged[i], False)))
    for i in range(2, n - 1):
        faces.append(((ged[i], True), (bot[i - 1], True), (dia[i], False)))
    faces.append(((ged[n - 1], True), (bot[n - 2], True), (top[n - 1], False)))
    boundary = [(e, True) for e in top] + [(e, False) for e in reversed(bot)]
    return Diagram(p, 2 * n - 1, tuple(edges), tuple(faces), tuple(boundary))


def fan_diagram(p: Pree, spokes: list[int]) -> Diagram:
    """Hub of the given degree: spoke labels read outward from vertex 0.

    Consecutive spokes must have a defined quotient; the rim closes up
    and the hub becomes an internal vertex of degree len(spokes).
    """
    n = len(spokes)
    if n < 3:
        raise DiagramError("need at least 3 spokes")
    quot = []
    for i in range(n):
        q = p.table[p.inv[spokes[i]]][spokes[(i + 1) % n]]
        if q == -1:
            raise DiagramError("spoke quotient %d is not defined" % i)
        quot.append(q)
    # vertices: hub 0, rim 1..n
    edges = []
    spoke_eid = []
    for i in range(n):
        spoke_eid.append(len(edges))
        edges.append((0, 1 + i, spokes[i]))
    rim_eid = []
    for i in range(n):
        rim_eid.append(len(edges))
        edges.append((1 + i, 1 + (i + 1) % n, quot[i]))
    faces = []
    for i in range(n):
        faces.append(
            (
                (spoke_eid[i], True),
                (rim_eid[i], True),
                (spoke_eid[(i + 1) % n], False),
            )
        )
    boundary = [(rim_eid[(n - 1 - k)], False) for k in range(n)]
    return Diagram(p, n + 1, tuple(edges), tuple(faces), tuple(boundary))


def reduce_internal_vertex(p: Pree, d: Diagram, v: int) -> Diagram:
    """Remove an internal vertex of degree 3..5 and re-cover the hole.

    The spoke labels around v form a short cycle whose quotients are the
    hole's perimeter labels; the short-cycle axioms provide the diagonal
    products, and each re-cover step drops the area by removing deg(v)
    faces and adding deg(v) - 2.
    """
    if v in d.boundary_vertices():
        raise DiagramError("vertex is on the boundary")
    fan = []
    for fi, face in enumerate(d.faces):
        if any(d.side_tail(s) == v for s in face):
            fan.append(fi)
    deg = len(fan)
    if deg not in (3, 4, 5):
        raise DiagramError("vertex degree %d is not 3, 4, or 5" % deg)
    # orient each fan face around its corner at v
    corner = {}
    by_in_edge = {}
    for fi in fan:
        face = d.faces[fi]
        k = next(i for i in range(3) if d.side_head(face[i]) == v)
        s_in, s_out, s_per = face[k], face[(k + 1) % 3], face[(k + 2) % 3]
        corner[fi] = (s_in, s_out, s_per)
        by_in_edge[s_in[0]] = fi
    chain = [fan[0]]
    while len(chain) < deg:
        out_edge = corner[chain[-1]][1][0]
        chain.append(by_in_edge[out_edge])
    # after the shift, chain[i] walks rim[i] -> v -> rim[i+1]; its third
    # side runs rim[i+1] -> rim[i], the freed side of that hole edge
    rim = [d.side_head(corner[fi][1]) for fi in chain]
    sigma = [d.side_label(corner[fi][1]) for fi in chain]
    rim = rim[-1:] + rim[:-1]
    sigma = sigma[-1:] + sigma[:-1]
    per_side = [corner[fi][2] for fi in chain]
    pi = []
    for i in range(deg):
        q = p.table[p.inv[sigma[i]]][sigma[(i + 1) % deg]]
        if q == -1:
            raise DiagramError("fan quotient undefined; diagram is inconsistent")
        pi.append(q)
    spoke_edges = {corner[fi][0][0] for fi in chain}
    new_edges = list(d.edges)
    new_faces = [f for i, f in enumerate(d.faces) if i not in set(fan)]
    # hole entries: (tail rim vertex, head rim vertex, quotient, freed side head->tail)
    hole = [(rim[i], rim[(i + 1) % deg], pi[i], per_side[i]) for i in range(deg)]
    while len(hole) > 3:
        n_h = len(hole)
        cut = -1
        for k in range(n_h):
            if p.table[hole[k][2]][hole[(k + 1) % n_h][2]] != -1:
                cut = k
                break
        if cut == -1:
            raise DiagramError("no short-cycle witness for the hole")
        k1, k2 = hole[cut], hole[(cut + 1) % n_h]
        delta = p.table[k1[2]][k2[2]]
        if k1[0] == k2[1]:
            raise DiagramError("degenerate re-triangulation")
        eid = len(new_edges)
        new_edges.append((k1[0], k2[1], delta))
        new_faces.append((k2[3], k1[3], (eid, True)))
        merged = (k1[0], k2[1], delta, (eid, False))
        rest = [hole[(cut + 1 + i) % n_h] for i in range(1, n_h - 1)]
        hole = [merged] + rest
    if len({hole[0][0], hole[1][0], hole[2][0]}) != 3:
        raise DiagramError("degenerate re-triangulation")
    if p.table[hole[0][2]][hole[1][2]] != p.inv[hole[2][2]]:
        raise DiagramError("no short-cycle witness for the hole")
    new_faces.append((hole[2][3], hole[1][3], hole[0][3]))
    return _rebuild(
        p, d.n_vertices, new_edges, new_faces, list(d.boundary), {v}, spoke_edges
    )


@dataclass
class DiagramStats:
    """Boundary degree census and gallery count."""

    area: int
    boundary_length: int
    delta2: int
    delta3: int
    delta5: int
    internal_degrees: tuple[int, ...]
    galleries: int

    def render(self) -> str:
        return (
            "area %d, boundary %d, delta2 %d, delta3 %d, delta5 %d, "
            "internal degrees %s, galleries %d"
            % (
                self.area,
                self.boundary_length,
                self.delta2,
                self.delta3,
                self.delta5,
                list(self.internal_degrees) or "[]",
                self.galleries,
            )
        )


def diagram_stats(d: Diagram) -> DiagramStats:
    deg = d.degrees()
    bverts = d.boundary_vertices()
    on_b = set(bverts)
    d2 = sum(1 for v in on_b if deg[v] == 2)
    d3 = sum(1 for v in on_b if deg[v] == 3)
    d5 = sum(1 for v in on_b if deg[v] > 4)
    internal = tuple(sorted(deg[v] for v in range(d.n_vertices) if v not in on_b))
    n = len(bverts)
    anchors = [q for q in range(n) if deg[bverts[q]] in (2, 3)]
    if not anchors:
        galleries = 0
    elif len(anchors) == 1:
        others = [deg[bverts[q]] for q in range(n) if q != anchors[0]]
        galleries = 1 if all(x == 4 for x in others) else 0
    else:
        galleries = 0
        for ai in range(len(anchors)):
            a, bq = anchors[ai], anchors[(ai + 1) % len(anchors)]
            gap_ok = True
            q = (a + 1) % n
            while q != bq:
                if deg[bverts[q]] != 4:
                    gap_ok = False
                    break
                q = (q + 1) % n
            if gap_ok:
                galleries += 1
    return DiagramStats(
        area=d.area,
        boundary_length=n,
        delta2=d2,
        delta3=d3,
        delta5=d5,
        internal_degrees=internal,
        galleries=galleries,
    )


def grow_random(p: Pree, rng: Random, target_area: int) -> Diagram:
    """Random diagram built by attaching triangles one at a time."""
    pairs = list(p.defined_pairs())
    a, b, _ = pairs[rng.randrange(len(pairs))]
    d = single_triangle(p, a, b)
    fact: list[list[tuple[int, int]]] = [[] for _ in range(p.size)]
    for x, y, z in pairs:
        fact[z].append((x, y))
    guard = 0
    while d.area < target_area and guard < 200 * target_area:
        guard += 1
        n = len(d.boundary)
        folds = []
        if n >= 3:
            for q in range(n):
                x = d.side_label(d.boundary[q])
                y = d.side_label(d.boundary[(q + 1) % n])
                if p.table[x][y] != -1:
                    folds.append(q)
        if folds and rng.random() < 0.35:
            q = folds[rng.randrange(len(folds))]
            try:
                d = attach_triangle(d, q)
                continue
            except DiagramError:
                pass
        q = rng.randrange(n)
        x = d.side_label(d.boundary[q])
        e, f = fact[x][rng.randrange(len(fact[x]))]
        d = attach_triangle(d, q, (e, f))
    return d


def _canonical(p: Pree, w: Word) -> Word:
    iw = inverse_word(p, w)
    n = len(w)
    best = None
    for t in (w, iw):
        for r in range(n):
            cand = t[r:] + t[:r]
            if best is None or cand < best:
                best = cand
    return best


def _triangle_reading(p: Pree, rep: Word) -> Optional[Word]:
    if len(rep) != 3:
        return None
    for t in (rep, inverse_word(p, rep)):
        for r in range(3):
            x1, x2, x3 = t[r], t[(r + 1) % 3], t[(r + 2) % 3]
            c = p.table[x1][x2]
            if c != -1 and c == p.inv[x3]:
                return (x1, x2, x3)
    return None


def find_minimal_diagram(p: Pree, w: Word, max_area: int = 12) -> Optional[Diagram]:
    """Smallest diagram whose boundary reads w up to rotation/inversion.

    Searches the move graph on cyclic boundary words: contracting an
    adjacent pair undoes a two-edge attachment, expanding a letter into
    a defined factorization undoes a one-edge attachment.  Each move is
    one triangle, so area = 1 + move distance to a triangle word; A*
    with the admissible bound max(1, length - 3) keeps it exact.  The
    winning path is replayed through attach_triangle.
    """
    if len(w) < 2:
        raise PreeError("boundary word needs length >= 2")
    if max_area < 1:
        return None
    if not abelian_obstruction(p).might_be_identity(w):
        return None
    table, inv = p.table, p.inv
    fact: list[list[tuple[int, int]]] = [[] for _ in range(p.size)]
    for a, b, c in p.defined_pairs():
        fact[c].append((a, b))

    def h(n: int) -> int:
        return max(1, n - 3)

    start = _canonical(p, w)
    best_g = {start: 0}
    parents: dict[Word, tuple[Word, tuple, Word]] = {}
    heap = [(h(len(start)), 0, start)]
    goal = None
    while heap:
        f, g, rep = heapq.heappop(heap)
        if g > best_g.get(rep, -1):
            continue
        if _triangle_reading(p, rep) is not None:
            goal = rep
            break
        n = len(rep)
        children = []
        if n >= 3:
            for i in range(n):
                c = table[rep[i]][rep[(i + 1) % n]]
                if c == -1:
                    continue
                if i < n - 1:
                    child = rep[:i] + (c,) + rep[i + 2 :]
                else:
                    child = (c,) + rep[1 : n - 1]
                children.append((("c", i), child))
        for i in range(n):
            for e, fa in fact[rep[i]]:
                children.append((("e", i, e, fa), rep[:i] + (e, fa) + rep[i + 1 :]))
        for move, child in children:
            ng = g + 1
            if ng + h(len(child)) > max_area - 1:
                continue
            cc = _canonical(p, child)
            if ng < best_g.get(cc, ng + 1):
                best_g[cc] = ng
                parents[cc] = (rep, move, child)
                heapq.heappush(heap, (ng + h(len(cc)), ng, cc))
    if goal is None:
        return None

    x1, x2, x3 = _triangle_reading(p, goal)
    d = single_triangle(p, x1, x2)
    node = goal
    while node != start:
        parent, move, exact = parents[node]
        match = next(
            (s, dr) for s, dr, word in d.readings() if word == exact
        )
        offset, direction = match
        n_child = len(exact)
        if move[0] == "c":
            i = move[1]
            np_ = len(parent)
            j = i if i < np_ - 1 else 0
            x, y = parent[i], parent[(i + 1) % np_]
            pos = (offset + direction * j) % n_child
            if direction == 1:
                d = attach_triangle(d, pos, (x, y))
            else:
                d = attach_triangle(d, pos, (inv[y], inv[x]))
        else:
            i = move[1]
            if direction == 1:
                d = attach_triangle(d, (offset + i) % n_child)
            else:
                d = attach_triangle(d, (offset - i - 1) % n_child)
        node = parent
    return d


def diagram_to_text(d: Diagram) -> str:
    p = d.pree
    deg = d.degrees()
    on_b = set(d.boundary_vertices())
    lines = ["vertices %d edges %d faces %d" % (d.n_vertices, len(d.edges), d.area)]
    for v in range(d.n_vertices):
        where = "boundary" if v in on_b else "internal"
        lines.append("vertex %d degree %d %s" % (v, deg[v], where))
    for i, (u, v, lab) in enumerate(d.edges):
        lines.append("edge %d %d %d %s" % (i, u, v, p.name(lab)))
    for i, f in enumerate(d.faces):
        walk = " ".join(
            "%d%s" % (s[0], "+" if s[1] else "-") for s in f
        )
        word = " ".join(p.name(d.side_label(s)) for s in f)
        lines.append("face %d sides %s word %s" % (i, walk, word))
    lines.append(
        "boundary "
        + " ".join("%d%s" % (s[0], "+" if s[1] else "-") for s in d.boundary)
    )
    lines.append("boundary word " + render_word(p, d.boundary_word()))
    return "\n".join(lines) + "\n"


def diagram_to_dot(d: Diagram) -> str:
    p = d.pree
    deg = d.degrees()
    on_b = set(d.boundary_vertices())
    bedges = {s[0] for s in d.boundary}
    lines = ["graph diagram {"]
    for v in range(d.n_vertices):
        shape = "circle" if v in on_b else "doublecircle"
        lines.append('  v%d [shape=%s, label="%d (d%d)"];' % (v, shape, v, deg[v]))
    for i, (u, v, lab) in enumerate(d.edges):
        style = ", penwidth=2" if i in bedges else ""
        lines.append('  v%d -- v%d [label="%s"%s];' % (u, v, p.name(lab), style))
    lines.append("}")
    return "\n".join(lines) + "\n"

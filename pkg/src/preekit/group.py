"""The group presented by a pree, made computable at small scale.

Generators are the pree letters, one relator ``a b (ab)^-1`` per defined
product.  Everything here works on bounded regions: an identity oracle
that searches the rewrite neighbor graph (with an abelianized lattice
obstruction so that "not the identity" can be certified), breadth-first
Cayley balls, and verification sweeps for the embedding of the letters,
the reducibility of short identity words, combing surjectivity, and the
fellow-traveler bound.
"""

from __future__ import annotations

import heapq
import itertools
import weakref
from dataclasses import dataclass
from typing import Optional

from .pree import Pree, PreeError, VerificationReport, check_axiom
from .words import (
    Word,
    inverse_word,
    is_geodesic_word,
    render_word,
    strongly_reduce,
)

# Caches are keyed by the pree itself (frozen, hashable); weak keys so
# throwaway tables do not pile up.
_axiom_cache: "weakref.WeakKeyDictionary[Pree, tuple[object, object]]" = (
    weakref.WeakKeyDictionary()
)


def axiom_status(p: Pree):
    """Cached (witness4, witness5) pair; None entries mean the axiom holds."""
    got = _axiom_cache.get(p)
    if got is None:
        got = (check_axiom(p, 4), check_axiom(p, 5))
        _axiom_cache[p] = got
    return got


def axioms_hold(p: Pree) -> bool:
    w4, w5 = axiom_status(p)
    return w4 is None and w5 is None


class AbelianObstruction:
    """Image of words in the free abelian group modulo relator columns.

    A word that represents the identity must map into the lattice spanned
    by the vectors e_a + e_b - e_c over all defined products, so lattice
    non-membership certifies "not the identity".  Columns are kept in
    Hermite-style triangular form for an exact integer membership test.
    """

    def __init__(self, p: Pree):
        self.p = p
        idx = {}
        for a in p.elements():
            if a != p.identity:
                idx[a] = len(idx)
        self.index = idx
        m = len(idx)
        cols = []
        seen = set()
        for a, b, c in p.defined_pairs():
            v = [0] * m
            for e, s in ((a, 1), (b, 1), (c, -1)):
                if e != p.identity:
                    v[idx[e]] += s
            t = tuple(v)
            if any(t) and t not in seen:
                seen.add(t)
                cols.append(v)
        self.pivots = self._triangulate(cols, m)

    @staticmethod
    def _triangulate(cols: list[list[int]], m: int) -> list[tuple[int, list[int]]]:
        pivots = []
        for r in range(m):
            live = [c for c in cols if c[r] != 0]
            if not live:
                continue
            while len(live) > 1:
                live.sort(key=lambda c: abs(c[r]))
                base = live[0]
                for c in live[1:]:
                    q = c[r] // base[r]
                    for i in range(m):
                        c[i] -= q * base[i]
                live = [c for c in live if c[r] != 0]
            piv = live[0]
            if piv[r] < 0:
                for i in range(m):
                    piv[i] = -piv[i]
            cols = [c for c in cols if c is not piv and any(c)]
            pivots.append((r, piv))
        return pivots

    def vector(self, w: Word) -> tuple[int, ...]:
        v = [0] * len(self.index)
        one = self.p.identity
        for a in w:
            if a != one:
                v[self.index[a]] += 1
        return tuple(v)

    def lattice_contains(self, vec: tuple[int, ...]) -> bool:
        v = list(vec)
        for r, col in self.pivots:
            if v[r] == 0:
                continue
            if v[r] % col[r] != 0:
                return False
            q = v[r] // col[r]
            for i in range(len(v)):
                v[i] -= q * col[i]
        return not any(v)

    def residue(self, w: Word) -> tuple[int, ...]:
        """Canonical representative of vector(w) modulo the lattice.

        Words for the same group element share a residue, so it is a
        sound bucket key when testing word equality.
        """
        v = list(self.vector(w))
        for r, col in self.pivots:
            q = v[r] // col[r]
            if q:
                for i in range(len(v)):
                    v[i] -= q * col[i]
        return tuple(v)

    def might_be_identity(self, w: Word) -> bool:
        return self.lattice_contains(self.vector(w))


_obstruction_cache: "weakref.WeakKeyDictionary[Pree, AbelianObstruction]" = (
    weakref.WeakKeyDictionary()
)


def abelian_obstruction(p: Pree) -> AbelianObstruction:
    obs = _obstruction_cache.get(p)
    if obs is None:
        obs = AbelianObstruction(p)
        _obstruction_cache[p] = obs
    return obs


def _factorizations(p: Pree) -> list[list[tuple[int, int]]]:
    fact: list[list[tuple[int, int]]] = [[] for _ in p.elements()]
    for a, b, c in p.defined_pairs():
        fact[c].append((a, b))
    return fact


def bfs_identity_oracle(
    p: Pree, w: Word, length_bound: int = 8, max_states: int = 500_000
) -> Optional[bool]:
    """Decide whether ``w`` represents the identity, independently.

    Neighbor moves replace an adjacent pair by its product or a letter by
    a two-letter factorization.  Shorter words are explored first.
    Returns True when the one-letter identity word is reached, False when
    the abelianized obstruction rules the word out or the component is
    exhausted without any truncated expansion, and None when the length
    bound (or the state cap) cut the exploration short.
    """
    if len(w) == 0:
        raise PreeError("empty word")
    if not abelian_obstruction(p).might_be_identity(w):
        return False

    target = (p.identity,)
    fact = _factorizations(p)
    table = p.table
    truncated = False
    seen = {w}
    heap: list[tuple[int, Word]] = [(len(w), w)]
    while heap:
        _, u = heapq.heappop(heap)
        if u == target:
            return True
        m = len(u)
        for i in range(m - 1):
            c = table[u[i]][u[i + 1]]
            if c != -1:
                v = u[:i] + (c,) + u[i + 2 :]
                if v not in seen:
                    seen.add(v)
                    heapq.heappush(heap, (m - 1, v))
        if m + 1 > length_bound:
            truncated = True
            continue
        for i in range(m):
            for e, f in fact[u[i]]:
                v = u[:i] + (e, f) + u[i + 1 :]
                if v not in seen:
                    seen.add(v)
                    heapq.heappush(heap, (m + 1, v))
        if len(seen) > max_states:
            return None
    return None if truncated else False


def equals_identity(p: Pree, w: Word) -> bool:
    """Dehn-style decision: reduce strongly, compare with the word 1.

    Only valid when the short-cycle axioms hold, which is checked once
    per pree and cached.
    """
    if len(w) == 0:
        raise PreeError("empty word")
    if not axioms_hold(p):
        raise PreeError(
            "word problem solver requires the short-cycle axioms; "
            "use bfs_identity_oracle instead"
        )
    reduced, _ = strongly_reduce(p, w)
    return reduced == (p.identity,)


@dataclass
class CayleyBall:
    """Ball of a given radius with representatives and step tables.

    ``reps[e]`` is a shortest word for element ``e`` (the identity is the
    empty word), ``dist[e]`` its length.  ``step[e][x]`` is the element
    of rep(e)*x and ``left[e][x]`` the element of x*rep(e); both hold -1
    when the result was not identified inside the ball.
    """

    pree: Pree
    radius: int
    reps: tuple[Word, ...]
    dist: tuple[int, ...]
    step: tuple[tuple[int, ...], ...]
    left: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.reps)

    def element_of_word(self, w: Word) -> Optional[int]:
        e = 0
        for x in w:
            e = self.step[e][x]
            if e == -1:
                return None
        return e

    def render_rows(self) -> list[str]:
        out = []
        for e in range(self.size):
            rep = render_word(self.pree, self.reps[e]) if self.reps[e] else self.pree.name(self.pree.identity)
            out.append("%d\t%d\t%s" % (e, self.dist[e], rep))
        return out


_ball_cache: "weakref.WeakKeyDictionary[Pree, dict]" = weakref.WeakKeyDictionary()


def cayley_ball(
    p: Pree, radius: int, method: str = "dehn", element_cap: int = 250_000
) -> CayleyBall:
    """Breadth-first ball over the nonidentity letters.

    Element identity is decided by equals_identity ("dehn") or by the
    neighbor-search oracle ("oracle"); candidates are bucketed by their
    abelianized image first so the expensive check runs only within a
    bucket.  Balls are cached per pree.
    """
    if radius < 0:
        raise PreeError("radius must be nonnegative")
    per_pree = _ball_cache.setdefault(p, {})
    cached = per_pree.get((radius, method))
    if cached is not None:
        return cached
    if method == "dehn":
        if not axioms_hold(p):
            raise PreeError("dehn ball needs the short-cycle axioms; use method='oracle'")

        def same(u: Word, v: Word) -> bool:
            return equals_identity(p, u + inverse_word(p, v))

    elif method == "oracle":
        bound = 2 * radius + 6

        def same(u: Word, v: Word) -> bool:
            got = bfs_identity_oracle(p, u + inverse_word(p, v), length_bound=bound)
            if got is None:
                raise PreeError("oracle undecided while building ball")
            return got

    else:
        raise PreeError("unknown ball method %r" % method)

    obs = abelian_obstruction(p)
    gens = p.nonidentity()
    reps: list[Word] = [()]
    dist: list[int] = [0]
    buckets: dict[tuple[int, ...], list[int]] = {obs.residue(()): [0]}
    # strongly reduced forms give a sound fast path: one reduced word
    # never names two elements, though one element may have several
    by_reduced: dict[Word, int] = {(): 0, (p.identity,): 0}

    # misses are only safe to reuse once the element set stops growing
    closed = False
    known_outside: set[Word] = set()

    def identify(w: Word) -> tuple[Optional[int], Word]:
        rw, _ = strongly_reduce(p, w)
        hit = by_reduced.get(rw)
        if hit is not None:
            return hit, rw
        if closed and rw in known_outside:
            return None, rw
        for e in buckets.get(obs.residue(rw), ()):
            if same(rw, reps[e]):
                by_reduced[rw] = e
                return e, rw
        if closed:
            known_outside.add(rw)
        return None, rw

    step_rows: dict[int, list[int]] = {}
    frontier = [0]
    for layer in range(1, radius + 1):
        new: list[int] = []
        for e in frontier:
            row = step_rows.setdefault(e, [-1] * p.size)
            for g in gens:
                w = reps[e] + (g,)
                t, rw = identify(w)
                if t is None:
                    t = len(reps)
                    reps.append(w)
                    dist.append(layer)
                    buckets.setdefault(obs.residue(rw), []).append(t)
                    by_reduced[rw] = t
                    new.append(t)
                    if len(reps) > element_cap:
                        raise PreeError("ball exceeds element cap")
                row[g] = t
        frontier = new

    closed = True
    n = len(reps)
    for e in range(n):
        step_rows.setdefault(e, [-1] * p.size)[p.identity] = e
    # Boundary rows are filled from the interior side: e2*g = f exactly
    # when f*inv(g) = e2, and interior rows are total.  Entries whose
    # source and target both sit on the boundary stay -1.
    for f in range(n):
        if dist[f] == radius and radius > 0:
            continue
        frow = step_rows[f]
        for g in gens:
            e2 = frow[p.inv[g]]
            if e2 != -1:
                row2 = step_rows[e2]
                if row2[g] == -1:
                    row2[g] = f
    step = tuple(tuple(step_rows[e]) for e in range(n))

    # left[e][x] propagates along the BFS tree: with e = parent * h,
    # x * e = (x * parent) * h.
    left_rows = [[-1] * p.size for _ in range(n)]
    for x in p.elements():
        t = identify((x,))[0] if x != p.identity else 0
        left_rows[0][x] = -1 if t is None else t
    for e in range(1, n):
        parent_word, h = reps[e][:-1], reps[e][-1]
        pe = 0
        for y in parent_word:
            pe = step[pe][y]
        for x in p.elements():
            xp = left_rows[pe][x]
            left_rows[e][x] = -1 if xp == -1 else step[xp][h]
    left = tuple(tuple(r) for r in left_rows)

    ball = CayleyBall(
        pree=p, radius=radius, reps=tuple(reps), dist=tuple(dist), step=step, left=left
    )
    per_pree[(radius, method)] = ball
    return ball


def verify_embedding(p: Pree) -> VerificationReport:
    """Letters stay distinct, products hold, undefined pairs stay apart."""
    r = VerificationReport("embedding")
    if not axioms_hold(p):
        r.note("precondition unmet: a short-cycle axiom fails, nothing asserted")
        return r
    letters = list(p.elements())
    for a in letters:
        for b in letters:
            if a < b and equals_identity(p, (a, p.inv[b])):
                r.problem("letters %s and %s collapse" % (p.name(a), p.name(b)))
    for a, b, c in p.defined_pairs():
        if not equals_identity(p, (a, b, p.inv[c])):
            r.problem("product relation fails: %s %s %s" % (p.name(a), p.name(b), p.name(c)))
    undefined = 0
    for a in letters:
        for b in letters:
            if p.defined(a, b):
                continue
            undefined += 1
            if not is_geodesic_word(p, (a, b)):
                r.problem("undefined pair %s %s is not geodesic" % (p.name(a), p.name(b)))
            for c in letters:
                if equals_identity(p, (a, b, p.inv[c])):
                    r.problem(
                        "undefined pair %s %s collapses to letter %s"
                        % (p.name(a), p.name(b), p.name(c))
                    )
    r.note("letter pairs checked: %d, undefined pairs checked: %d" % (len(letters) ** 2, undefined))
    return r


def verify_short_identities(p: Pree, oracle_bound: int = 8) -> VerificationReport:
    """Length 4 and 5 words that represent 1 must be reducible.

    Identity is decided by the word solver when the short-cycle axioms
    hold (the solver reduces by contractions and strips, so the
    adjacency assertion below is still independent of it); otherwise by
    the bounded oracle.
    """
    r = VerificationReport("short-identity-reducibility")
    use_solver = axioms_hold(p)
    checked = 0
    hits = 0
    for n in (4, 5):
        for w in itertools.product(p.elements(), repeat=n):
            checked += 1
            if use_solver:
                if not equals_identity(p, w):
                    continue
            elif bfs_identity_oracle(p, w, length_bound=oracle_bound) is not True:
                continue
            hits += 1
            if all(p.table[w[i]][w[i + 1]] == -1 for i in range(n - 1)):
                r.problem("irreducible identity word: " + render_word(p, w))
    r.note("words checked: %d, identity words found: %d" % (checked, hits))
    return r


@dataclass
class FellowTravelerReport:
    """Observed synchronous separation over all compared word pairs."""

    target: int
    max_separation: int
    worst_u: Word
    worst_v: Word
    words_checked: int
    pairs_checked: int
    exceeded_arena: bool = False

    @property
    def ok(self) -> bool:
        return self.max_separation <= self.target and not self.exceeded_arena

    def render(self, p: Pree) -> str:
        lines = [
            "fellow-traveling: %s" % ("pass" if self.ok else "FAIL"),
            "  observed max separation: %d (target %d)" % (self.max_separation, self.target),
            "  words: %d, pairs: %d" % (self.words_checked, self.pairs_checked),
        ]
        if self.worst_u:
            lines.append("  worst pair: [%s] [%s]" % (render_word(p, self.worst_u), render_word(p, self.worst_v)))
        if self.exceeded_arena:
            lines.append("  a difference left the tracked arena")
        return "\n".join(lines)


def sync_separation(arena: CayleyBall, u: Word, v: Word) -> tuple[int, bool]:
    """Max distance between same-time prefixes, end-padded.

    Returns (max separation, exceeded) where exceeded means some
    difference left the arena ball and the reported value is only a
    lower bound (arena radius + 1).
    """
    p = arena.pree
    d = 0
    worst = 0
    for i in range(max(len(u), len(v))):
        if i < len(u):
            d = arena.left[d][p.inv[u[i]]]
            if d == -1:
                return arena.radius + 1, True
        if i < len(v):
            d = arena.step[d][v[i]]
            if d == -1:
                return arena.radius + 1, True
        worst = max(worst, arena.dist[d])
    return worst, False


def fellow_traveler_check(p: Pree, language, R: int, K: int) -> FellowTravelerReport:
    """Compare all same-start pairs of accepted words of length <= R.

    Pairs qualify when their endpoints coincide or differ by one
    generator.  The shorter word idles at its endpoint once exhausted.
    One ball serves both roles: its radius keeps every endpoint interior
    (so neighbor lookups are total) and covers the difference arena.
    """
    ball = cayley_ball(p, max(R + 1, K + 2))
    arena = ball
    words = [tuple(w) for w in language.enumerate_words(R)]
    ends: list[int] = []
    for w in words:
        e = ball.element_of_word(w)
        if e is None:
            raise PreeError("accepted word leaves the ball; language is not geodesic")
        ends.append(e)

    by_end: dict[int, list[int]] = {}
    for i, e in enumerate(ends):
        by_end.setdefault(e, []).append(i)

    max_sep = 0
    worst = ((), ())
    pairs = 0
    exceeded = False
    for e1 in sorted(by_end):
        targets = {e1}
        for g in p.nonidentity():
            t = ball.step[e1][g]
            if t != -1:
                targets.add(t)
        for e2 in sorted(targets):
            if e2 < e1 or e2 not in by_end:
                continue
            for i in by_end[e1]:
                for j in by_end[e2]:
                    if e1 == e2 and j <= i:
                        continue
                    pairs += 1
                    sep, over = sync_separation(arena, words[i], words[j])
                    exceeded = exceeded or over
                    if sep > max_sep:
                        max_sep = sep
                        worst = (words[i], words[j])
    return FellowTravelerReport(
        target=K,
        max_separation=max_sep,
        worst_u=worst[0],
        worst_v=worst[1],
        words_checked=len(words),
        pairs_checked=pairs,
        exceeded_arena=exceeded,
    )


def verify_surjectivity(p: Pree, language, R: int) -> VerificationReport:
    """Every ball element needs an accepted word of geodesic length."""
    r = VerificationReport("combing-surjectivity")
    ball = cayley_ball(p, R)
    covered = set()
    for w in language.enumerate_words(R):
        w = tuple(w)
        e = ball.element_of_word(w)
        if e is not None and len(w) == ball.dist[e]:
            covered.add(e)
    missing = [e for e in range(ball.size) if e != 0 and e not in covered]
    for e in missing:
        r.problem(
            "element %s (distance %d) has no accepted representative"
            % (render_word(p, ball.reps[e]), ball.dist[e])
        )
    r.note("ball size %d at radius %d; identity covered by convention" % (ball.size, R))
    return r

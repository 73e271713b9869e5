"""Axiom checking, the identity solvers, balls, and fellow traveling.

Oracles here never go through the code under test: the lattice table is
checked against plane vectors, the free table against stack
cancellation, and the full tables against direct folding.
"""

import itertools
import random

import pytest

from conftest import all_words, table_fold, zxz_distance, zxz_vector
from preekit.fsa import combing_acceptor
from preekit.group import (
    abelian_obstruction,
    axioms_hold,
    bfs_identity_oracle,
    cayley_ball,
    equals_identity,
    fellow_traveler_check,
    sync_separation,
    verify_embedding,
    verify_short_identities,
    verify_surjectivity,
)
from preekit.pree import PreeError, check_axiom
from preekit.words import parse_word


def _free_reduce(p, w):
    """Stack cancellation, the whole story for a table with no products."""
    out = []
    for a in w:
        if a == p.identity:
            continue
        if out and out[-1] == p.inv[a]:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _plane_ball_count(r):
    return sum(1 for x in range(-r, r + 1) for y in range(-r, r + 1)
               if zxz_distance(x, y) <= r)


def test_axioms_hold_on_all_good_fixtures(zxz, s3, z6, q8, taxicab):
    for p in (zxz, s3, z6, q8, taxicab):
        assert check_axiom(p, 4) is None
        assert check_axiom(p, 5) is None
        assert axioms_hold(p)


def test_cycle_fixtures_fail_exactly_one_axiom(cycle4, cycle5):
    w4 = check_axiom(cycle4, 4)
    assert w4 is not None
    assert [cycle4.name(a) for a in w4.cycle] == ["x1", "x2", "x3", "x4"]
    assert check_axiom(cycle4, 5) is None

    w5 = check_axiom(cycle5, 5)
    assert w5 is not None
    assert [cycle5.name(a) for a in w5.cycle] == ["x1", "x2", "x3", "x4", "x5"]
    assert check_axiom(cycle5, 4) is None


def test_axiom_witness_is_a_real_counterexample(cycle4):
    w = check_axiom(cycle4, 4)
    n = len(w.cycle)
    for i in range(n):
        q = cycle4.product(cycle4.inv[w.cycle[i]], w.cycle[(i + 1) % n])
        assert q == w.quotients[i]
    for i in range(n):
        assert cycle4.product(w.quotients[i], w.quotients[(i + 1) % n]) is None


def test_check_axiom_rejects_other_lengths(zxz):
    with pytest.raises(PreeError):
        check_axiom(zxz, 3)


def test_obstruction_rules_out_unbalanced_words(taxicab, zxz):
    x = taxicab.id_of("(1,0)")
    assert bfs_identity_oracle(taxicab, (x, x)) is False
    obs = abelian_obstruction(zxz)
    w = parse_word(zxz, "(1,0) (1,0) (-1,0)")
    assert not obs.might_be_identity(w)


def test_residue_is_an_element_invariant(zxz):
    obs = abelian_obstruction(zxz)
    rng = random.Random(5)
    letters = zxz.nonidentity()
    for _ in range(100):
        w = tuple(rng.choice(letters) for _ in range(rng.randrange(1, 7)))
        a = rng.choice(letters)
        padded = w + (a, zxz.inv[a])
        assert obs.residue(w) == obs.residue(padded)
        assert obs.residue(w) == obs.residue(w + (zxz.identity,))


def test_bfs_oracle_verdicts(zxz, taxicab):
    assert bfs_identity_oracle(zxz, parse_word(zxz, "(1,0) (-1,0)")) is True
    assert bfs_identity_oracle(zxz, parse_word(zxz, "(1,1) (-1,0) (0,-1)")) is True
    assert bfs_identity_oracle(zxz, parse_word(zxz, "(0,1)")) is False
    # Free commutator: balanced letter counts, still not the identity.
    w = parse_word(taxicab, "(1,0) (0,1) (-1,0) (0,-1)")
    assert bfs_identity_oracle(taxicab, w, length_bound=6) is None


def test_bfs_oracle_rejects_empty_word(zxz):
    with pytest.raises(PreeError):
        bfs_identity_oracle(zxz, ())


def test_equals_identity_matches_vector_oracle(zxz):
    for n in range(1, 4):
        for w in itertools.product(zxz.elements(), repeat=n):
            want = zxz_vector(zxz, w) == (0, 0)
            assert equals_identity(zxz, w) == want
    rng = random.Random(17)
    letters = zxz.nonidentity()
    for _ in range(400):
        w = tuple(rng.choice(letters) for _ in range(rng.randrange(1, 9)))
        assert equals_identity(zxz, w) == (zxz_vector(zxz, w) == (0, 0))


def test_equals_identity_matches_free_oracle(taxicab):
    rng = random.Random(23)
    letters = taxicab.nonidentity()
    for _ in range(400):
        w = tuple(rng.choice(letters) for _ in range(rng.randrange(1, 9)))
        assert equals_identity(taxicab, w) == (_free_reduce(taxicab, w) == ())


def test_equals_identity_on_full_tables(s3, z6, q8):
    for p in (s3, z6, q8):
        for a in p.elements():
            for b in p.elements():
                want = table_fold(p, (a, b)) == p.identity
                assert equals_identity(p, (a, b)) == want


def test_equals_identity_needs_axioms(cycle4):
    with pytest.raises(PreeError):
        equals_identity(cycle4, (1, 2))


def test_ball_sizes_match_plane_count(zxz):
    for r in range(5):
        ball = cayley_ball(zxz, r)
        assert ball.size == _plane_ball_count(r) == 3 * r * (r + 1) + 1


def test_ball_sizes_match_free_count(taxicab):
    for r in range(5):
        assert cayley_ball(taxicab, r).size == 2 * 3 ** r - 1


def test_ball_is_cached(zxz):
    assert cayley_ball(zxz, 2) is cayley_ball(zxz, 2)


def test_ball_reps_biject_onto_the_plane_ball(zxz):
    r = 3
    ball = cayley_ball(zxz, r)
    seen = {}
    for e in range(ball.size):
        w = ball.reps[e]
        assert len(w) == ball.dist[e]
        v = zxz_vector(zxz, w)
        assert zxz_distance(*v) == ball.dist[e]
        assert v not in seen
        seen[v] = e
    assert ball.reps[0] == ()
    assert len(seen) == _plane_ball_count(r)


def test_ball_step_rows_are_sound_and_interior_total(zxz):
    r = 3
    ball = cayley_ball(zxz, r)
    vecs = [zxz_vector(zxz, ball.reps[e]) for e in range(ball.size)]
    for e in range(ball.size):
        for x in zxz.nonidentity():
            vx, vy = zxz_vector(zxz, (x,))
            want = (vecs[e][0] + vx, vecs[e][1] + vy)
            f = ball.step[e][x]
            if f != -1:
                assert vecs[f] == want
            elif ball.dist[e] < r:
                # interior rows only point outside when the target is outside
                assert zxz_distance(*want) > r


def test_ball_left_rows_multiply_on_the_left(s3):
    ball = cayley_ball(s3, 2)
    assert ball.size == 6
    fold = [table_fold(s3, ball.reps[e]) for e in range(ball.size)]
    for e in range(ball.size):
        for x in s3.nonidentity():
            f = ball.step[e][x]
            g = ball.left[e][x]
            assert f != -1 and g != -1
            assert fold[f] == s3.product(fold[e], x)
            assert fold[g] == s3.product(x, fold[e])


def test_full_table_balls_saturate(s3, z6, q8):
    for p, order in ((s3, 6), (z6, 6), (q8, 8)):
        assert cayley_ball(p, 1).size == order
        assert cayley_ball(p, 2).size == order


def test_element_of_word_follows_the_step_table(zxz):
    ball = cayley_ball(zxz, 2)
    w = parse_word(zxz, "(1,0) (0,1)")
    e = ball.element_of_word(w)
    assert e is not None
    assert zxz_vector(zxz, ball.reps[e]) == (1, 1)
    # a prefix that leaves the ball kills the walk even if the endpoint
    # would fit
    out = parse_word(zxz, "(1,0) (1,0) (1,0) (-1,0)")
    assert ball.element_of_word(out) is None


def test_ball_rejects_negative_radius(zxz):
    with pytest.raises(PreeError):
        cayley_ball(zxz, -1)


def test_oracle_ball_agrees_with_dehn_ball(zxz):
    for r in range(3):
        assert cayley_ball(zxz, r, method="oracle").size == cayley_ball(zxz, r).size


def test_verify_embedding_passes_on_good_fixtures(zxz, s3, z6, q8, taxicab):
    for p in (zxz, s3, z6, q8, taxicab):
        rep = verify_embedding(p)
        assert rep.ok, rep.problems


def test_verify_embedding_asserts_nothing_without_axioms(cycle4):
    rep = verify_embedding(cycle4)
    assert rep.ok
    assert any("precondition" in n for n in rep.notes)


def test_verify_short_identities(zxz, s3, taxicab):
    for p in (zxz, s3, taxicab):
        rep = verify_short_identities(p)
        assert rep.ok, rep.problems


def test_verify_surjectivity(zxz, s3):
    assert verify_surjectivity(zxz, combing_acceptor(zxz), 3).ok
    assert verify_surjectivity(s3, combing_acceptor(s3), 2).ok


def test_fellow_traveler_frozen_run(zxz):
    rep = fellow_traveler_check(zxz, combing_acceptor(zxz), 4, 5)
    assert rep.ok
    assert rep.words_checked == 121
    assert rep.pairs_checked == 672
    assert rep.max_separation == 2
    # replay the reported worst pair through the raw separation routine
    arena = cayley_ball(zxz, 7)
    sep, over = sync_separation(arena, rep.worst_u, rep.worst_v)
    assert (sep, over) == (2, False)


def test_fellow_traveler_full_table(s3):
    rep = fellow_traveler_check(s3, combing_acceptor(s3), 2, 5)
    assert rep.ok
    assert rep.max_separation <= 1


def test_sync_separation_identities(zxz):
    arena = cayley_ball(zxz, 3)
    w = parse_word(zxz, "(1,0) (0,1)")
    assert sync_separation(arena, w, w) == (0, False)
    x = parse_word(zxz, "(1,0)")
    assert sync_separation(arena, x, ()) == (1, False)

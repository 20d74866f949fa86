import random

import pytest

from regional import corpus
from regional.diagram import parse_pd, serialize_pd, validate
from regional.invariants import bracket_state_sum, jones, kauffman_bracket
from regional.moves import (
    perturb,
    r1_insert,
    r1_removals,
    r2_removals,
    r3_moves,
    random_move,
    reducing_moves,
    reidemeister_simplify,
)

TREFOIL = "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]"


def test_kink_simplifies_to_empty():
    assert serialize_pd(reidemeister_simplify(parse_pd("X[1,2,2,1]"))) == ""
    assert serialize_pd(reidemeister_simplify(parse_pd("X[1,1,2,2]"))) == ""


def test_two_kinks_simplify_to_empty():
    d = r1_insert(r1_insert(parse_pd(""), None, 0), 1, 3)
    assert d.n == 2
    assert reidemeister_simplify(d).n == 0


def _has_obvious_reduction(d):
    # R1: some crossing uses one label twice.  R2: two crossings share two
    # labels and one of those edges is on the over strand at both ends.
    def over(c, x):
        return c.strands.index(x) % 2 == 1

    for c in d.crossings:
        if len(set(c.strands)) < 4:
            return True
    for i, c in enumerate(d.crossings):
        for e in d.crossings[i + 1:]:
            shared = set(c.strands) & set(e.strands)
            if len(shared) >= 2 and any(over(c, x) == over(e, x) for x in shared):
                return True
    return False


def test_trefoil_is_already_minimal():
    d = parse_pd(TREFOIL)
    assert not _has_obvious_reduction(d)
    assert reducing_moves(d) == []
    assert serialize_pd(reidemeister_simplify(d)) == TREFOIL
    # span of the Jones polynomial bounds the crossing number from below
    exps = [e for e, _ in jones(d).items()]
    assert max(exps) - min(exps) == 3


def test_simplify_never_increases_crossings():
    rng = random.Random(11)
    for d in corpus.templates().values():
        for _ in range(5):
            p = perturb(d, 6, rng)
            s = reidemeister_simplify(p)
            assert s.n <= p.n
            assert jones(s) == jones(d)


def test_simplify_undoes_small_perturbations_of_templates():
    rng = random.Random(5)
    for d in corpus.templates().values():
        p = perturb(d, 4, rng, kinds=("R1+", "R2+"))
        assert reidemeister_simplify(p).n == d.n


@pytest.mark.parametrize("kind", ["R1+", "R1-", "R2+", "R2-", "R3"])
def test_moves_keep_diagrams_valid(kind):
    rng = random.Random(kind)
    seen = 0
    for d in corpus.templates().values():
        cur = perturb(d, 3, rng, kinds=("R1+", "R2+"))
        for _ in range(10):
            nxt, move = random_move(cur, rng, kinds=(kind,))
            if move is None:
                continue
            seen += 1
            assert validate(nxt).ok
            assert nxt.components == 1
            cur = nxt
    assert seen > 0


def test_removal_lists_are_consistent_with_move_effect():
    rng = random.Random(2)
    d = perturb(corpus.load("figure_eight"), 5, rng, kinds=("R1+", "R2+"))
    assert r1_removals(d) or r2_removals(d)
    assert isinstance(r3_moves(d), list)


def test_bracket_matches_state_sum_after_moves():
    rng = random.Random(9)
    d = corpus.load("trefoil")
    for _ in range(10):
        d2 = perturb(d, 3, rng, kinds=("R2+", "R2-", "R3"))
        if d2.n <= 10:
            assert kauffman_bracket(d2) == bracket_state_sum(d2) == kauffman_bracket(d)

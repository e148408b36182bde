"""Property suites checked against independent reference computations.

Each check is a plain function; the acceptance module runs them all and
reports them as one criterion.
"""

import itertools
import random

import numpy as np
import pytest

from gridpalf.construct import _cycles_batch
from gridpalf.fiber import FiberError, RibbonFiber, from_boundary_word, intersection_form, slide_handle_foot
from gridpalf.monodromy import preserves_form, transvection
from gridpalf.verify import smith_normal_form

from oracles import (boundary_count_oracle, interlace_rank_gf2, interlace_rank_gf2_batch,
                     invariant_factors_oracle, matchings, word_of)


def random_fiber(rng: random.Random, k: int) -> RibbonFiber:
    word = [x for h in range(1, k + 1) for x in (h, h)]
    rng.shuffle(word)
    ends, seen = [], {}
    flip = {h: rng.random() < 0.5 for h in range(1, k + 1)}
    for x in word:
        first = x not in seen
        seen[x] = True
        ends.append((1 if first else -1) * (-1 if flip[x] else 1))
    return RibbonFiber(tuple(word), tuple(ends))


# -- boundary tracing ---------------------------------------------------


def check_boundary_count_exhaustive_small():
    """Every chord word with at most 6 pairs, through the fiber class."""
    for k in range(0, 7):
        for partner in matchings(k):
            w = word_of(partner)
            f = from_boundary_word(w)
            assert f.b == boundary_count_oracle(w), w
            assert f.chi == 2 - 2 * f.g - f.b


def check_boundary_count_exhaustive_batch():
    """Every chord word with 7 or 8 pairs: the batched cycle counter used by
    the lift refinement against the interlace-rank formula."""
    for k in (7, 8):
        P = matchings(k)
        m = 2 * k
        sigma = P[:, (np.arange(m) + 1) % m]
        assert (_cycles_batch(sigma) == 1 + k - interlace_rank_gf2_batch(P)).all(), k


def check_boundary_count_random_large():
    rng = random.Random(7)
    for _ in range(400):
        f = random_fiber(rng, rng.randint(8, 14))
        assert f.b == boundary_count_oracle(list(f.word))


def check_interlace_oracle_agrees_with_itself():
    # the two oracle implementations must agree before they judge anything
    for k in range(1, 6):
        P = matchings(k)
        r = interlace_rank_gf2_batch(P)
        assert all(r[i] == interlace_rank_gf2(word_of(P[i])) for i in range(len(P)))


def check_matchings_count():
    assert [len(matchings(k)) for k in range(6)] == [1, 1, 3, 15, 105, 945]


# -- Smith normal form --------------------------------------------------


def _all_matrices(rows, cols, values):
    for entries in itertools.product(values, repeat=rows * cols):
        yield [list(entries[r * cols:(r + 1) * cols]) for r in range(rows)]


SNF_BOXES = [
    ((1, 1), range(-6, 7)),
    ((1, 4), range(-3, 4)),
    ((4, 1), range(-3, 4)),
    ((2, 2), range(-3, 4)),
    ((2, 3), range(-2, 3)),
    ((3, 2), range(-2, 3)),
    ((3, 3), range(-1, 2)),
]


def check_snf_exhaustive():
    for shape, values in SNF_BOXES:
        for M in _all_matrices(*shape, values):
            assert smith_normal_form(M) == invariant_factors_oracle(M), M


def check_snf_random_larger():
    rng = random.Random(11)
    for _ in range(300):
        r, c = rng.randint(3, 4), rng.randint(3, 5)
        M = [[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)]
        d = smith_normal_form(M)
        assert d == invariant_factors_oracle(M), M
        assert all(b % a == 0 for a, b in zip(d, d[1:]))


def check_snf_degenerate():
    assert smith_normal_form([]) == []
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[4, 6]]) == [2]


# -- transvections ------------------------------------------------------


def check_transvections_preserve_form():
    rng = random.Random(3)
    for _ in range(500):
        f = random_fiber(rng, rng.randint(1, 7))
        om = np.array(intersection_form(f)).reshape(f.k_total, f.k_total)
        v = [rng.randint(-3, 3) for _ in range(f.k_total)]
        for power in (1, -1, 2):
            T = transvection(f, v, power)
            assert np.array_equal(T.T @ om @ T, om)
            assert preserves_form(f, T)
            # the core curve is fixed
            assert np.array_equal(T @ np.array(v), np.array(v))
        assert np.array_equal(transvection(f, v, 1) @ transvection(f, v, -1), np.eye(f.k_total, dtype=int))


def check_intersection_form_is_skew():
    rng = random.Random(5)
    for _ in range(300):
        f = random_fiber(rng, rng.randint(1, 8))
        om = np.array(intersection_form(f)).reshape(f.k_total, f.k_total)
        assert np.array_equal(om, -om.T)
        # rank of the form is twice the genus
        assert np.linalg.matrix_rank(om) == 2 * f.g


# -- handle slides ------------------------------------------------------


def check_slides_preserve_topology():
    rng = random.Random(17)
    done = 0
    while done < 2000:
        f = random_fiber(rng, rng.randint(2, 8))
        m = len(f.word)
        p = rng.randrange(m)
        q = (p + rng.choice((1, -1))) % m
        i, j = f.word[p], f.word[q]
        if i == j:
            continue
        g, M = slide_handle_foot(f, i, j, f.ends[p])
        assert (g.chi, g.b, g.g) == (f.chi, f.b, f.g)
        M = np.array(M)
        om = np.array(intersection_form(f)).reshape(f.k_total, f.k_total)
        om2 = np.array(intersection_form(g)).reshape(g.k_total, g.k_total)
        assert np.array_equal(M.T @ om @ M, om2)
        assert round(abs(np.linalg.det(M))) == 1
        done += 1


def check_slide_needs_adjacent_feet():
    f = from_boundary_word([1, 2, 1, 2, 3, 4, 3, 4])
    with pytest.raises(FiberError):
        slide_handle_foot(f, 1, 3)
    with pytest.raises(FiberError):
        slide_handle_foot(f, 2, 2)


CHECKS = {name[len("check_"):]: fn for name, fn in sorted(globals().items())
          if name.startswith("check_") and callable(fn)}

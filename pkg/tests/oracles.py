"""Slow, obviously-correct reference computations used by the tests."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

# -- chord diagrams ----------------------------------------------------


def matchings(n_pairs: int) -> np.ndarray:
    """Every perfect matching of 2n points on a circle, one per row, as a
    partner array."""
    if n_pairs == 0:
        return np.zeros((1, 0), dtype=np.int8)
    prev = matchings(n_pairs - 1)
    m = 2 * n_pairs
    blocks = []
    for j in range(1, m):
        rest = np.array([x for x in range(1, m) if x != j], dtype=np.int8)
        blk = np.empty((len(prev), m), dtype=np.int8)
        blk[:, 0] = j
        blk[:, j] = 0
        blk[:, rest] = rest[prev]
        blocks.append(blk)
    return np.concatenate(blocks)


def word_of(partner) -> list[int]:
    word, name = [0] * len(partner), 0
    for p, q in enumerate(partner):
        if p < q:
            name += 1
            word[p] = word[q] = name
    return word


def interlace_rank_gf2(word) -> int:
    labels = sorted(set(word))
    pos = {x: [i for i, y in enumerate(word) if y == x] for x in labels}
    rows = []
    for a in labels:
        bits = 0
        a0, a1 = pos[a]
        for k, b in enumerate(labels):
            b0, b1 = pos[b]
            if (a0 < b0 < a1) != (a0 < b1 < a1):
                bits |= 1 << k
        rows.append(bits)
    return _rank_bits(rows)


def _rank_bits(rows) -> int:
    rank = 0
    rows = list(rows)
    while rows:
        piv = rows.pop()
        if not piv:
            continue
        rank += 1
        low = piv & -piv
        rows = [r ^ piv if r & low else r for r in rows]
    return rank


def boundary_count_oracle(word) -> int:
    """b = 1 + corank of the interlace matrix over GF(2), valid for a disk
    with untwisted bands attached along the chords."""
    k = len(word) // 2
    return 1 + k - interlace_rank_gf2(word)


def interlace_rank_gf2_batch(partner: np.ndarray) -> np.ndarray:
    """Vectorised GF(2) rank of the interlace matrix of each chord diagram."""
    rows_n, m = partner.shape
    k = m // 2
    pos = np.arange(m)
    opener = partner > pos
    # chord id of every endpoint: rank of its left end among left ends
    ids = np.cumsum(opener, axis=1) - 1
    chord = np.where(opener, ids, np.take_along_axis(ids, partner.astype(np.int64), axis=1))
    onehot = (np.uint16(1) << chord.astype(np.uint16)).astype(np.uint16)
    # X[p] = xor of the chords seen strictly before p
    X = np.zeros((rows_n, m + 1), dtype=np.uint16)
    X[:, 1:] = np.bitwise_xor.accumulate(onehot, axis=1)
    left = np.sort(np.where(opener, pos, m), axis=1)[:, :k]
    right = np.take_along_axis(partner, left, axis=1).astype(np.int64)
    # chords with exactly one end strictly inside (left, right)
    bits = np.take_along_axis(X, right, axis=1) ^ np.take_along_axis(X, left + 1, axis=1)
    rank = np.zeros(rows_n, dtype=np.int64)
    for col in range(k):
        mask = np.uint16(1 << col)
        has = (bits & mask) != 0
        any_ = has.any(axis=1)
        idx = has.argmax(axis=1)
        rank += any_
        piv = np.where(any_, bits[np.arange(rows_n), idx], np.uint16(0))
        bits = np.where(has, bits ^ piv[:, None], bits)
    return rank


# -- integer matrices --------------------------------------------------


def det(M) -> int:
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(n) if M[0][j])


def invariant_factors_oracle(M) -> list[int]:
    """d_k / d_(k-1) with d_k the gcd of all k-by-k minors."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = math.gcd(g, det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


# -- Alexander polynomial via the grid determinant ---------------------


def _winding(g, x, y) -> int:
    w = 0
    for r in range(1, g.n + 1):
        if r < y:
            a, b = g.xs[r - 1], g.os[r - 1]
            if min(a, b) < x < max(a, b):
                w += 1 if b > a else -1
    return w


def _fdet(M) -> Fraction:
    M = [row[:] for row in M]
    n = len(M)
    d = Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if M[r][i]), None)
        if p is None:
            return Fraction(0)
        if p != i:
            M[i], M[p] = M[p], M[i]
            d = -d
        d *= M[i][i]
        for r in range(i + 1, n):
            f = M[r][i] / M[i][i]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[i])]
    return d


def alexander_unit(g, t: int, poly) -> Fraction:
    """det(t^-a(p)) / ((1-t)^(n-1) * poly(t)); a unit +-t^k exactly when
    poly is the Alexander polynomial of the grid's knot."""
    n = g.n
    T = Fraction(t)
    M = [[T ** (-_winding(g, i + 0.5, j + 0.5)) for i in range(n)] for j in range(n)]
    return _fdet(M) / (1 - T) ** (n - 1) / sum(c * T ** e for e, c in enumerate(poly))


def is_unit_power(x: Fraction, t: int) -> bool:
    x = abs(x)
    num, den = x.numerator, x.denominator
    for v in (num, den):
        while v % t == 0:
            v //= t
        if v != 1:
            return False
    return num == 1 or den == 1

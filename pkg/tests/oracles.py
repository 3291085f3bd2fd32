"""Shared test helpers: cached group builders and independent oracles.

Everything here is deliberately naive (brute force, exponential) so that
it cross-checks the package's cleverer code paths without sharing logic.
"""

import itertools
from functools import lru_cache

from jwkit import coxeter


@lru_cache(maxsize=None)
def grp(family, rank=None, m=None, allow_large=False):
    return coxeter.build_group(coxeter.presentation(family, rank=rank, m=m), allow_large=allow_large)


def shortlex_words_bruteforce(g):
    """Minimal reduced word per element by trying all words in ShortLex
    order.  Exponential; small groups only."""
    best = {0: ()}
    maxlen = g.length[g.w0]
    for k in range(1, maxlen + 1):
        for w in itertools.product(range(g.rank), repeat=k):
            x = 0
            for s in w:
                x = g.right[x][s]
            if g.length[x] == k and x not in best:
                best[x] = w
        if len(best) == g.size:
            break
    return best


def catalan(k):
    out = 1
    for i in range(k):
        out = out * 2 * (2 * i + 1) // (i + 2)
    return out


# -- independent Kazhdan-Lusztig oracle ---------------------------------------
#
# Solves for the bar-invariant unitriangular element directly, one bar
# violation at a time, using nothing but delta-multiplication implemented
# right here on {element: LaurentPoly} dicts.

from jwkit.qpoly import LaurentPoly

_ONE = LaurentPoly.one()
_VDIFF = LaurentPoly({1: 1, -1: -1})  # v - v^-1


def _vec_times_delta(g, vec, s):
    out = {}
    for y, p in vec.items():
        ys = g.right[y][s]
        out[ys] = out.get(ys, LaurentPoly.zero()) + p
        if g.length[ys] < g.length[y]:
            out[y] = out.get(y, LaurentPoly.zero()) - p * _VDIFF
    return {y: p for y, p in out.items() if not p.is_zero}


@lru_cache(maxsize=None)
def _bar_delta_table(g):
    # bar(delta_x) = product along the word of x of (delta_s + v - v^-1)
    table = {}
    for x in range(g.size):
        vec = {0: _ONE}
        for s in g.word[x]:
            shifted = _vec_times_delta(g, vec, s)
            for y, p in vec.items():
                shifted[y] = shifted.get(y, LaurentPoly.zero()) + p * _VDIFF
            vec = {y: p for y, p in shifted.items() if not p.is_zero}
        table[x] = vec
    return table


def _bar_vec(g, vec):
    bd = _bar_delta_table(g)
    out = {}
    for y, p in vec.items():
        pb = p.bar()
        for z, q in bd[y].items():
            out[z] = out.get(z, LaurentPoly.zero()) + pb * q
    return {z: p for z, p in out.items() if not p.is_zero}


def kl_basis_bruteforce(g, x):
    """The unique bar-invariant element delta_x + sum of vZ[v] multiples of
    lower delta_y, found by repairing the topmost bar violation until none
    remain.  Returns {y: LaurentPoly}."""
    c = {x: _ONE}
    while True:
        d = _bar_vec(g, c)
        for y, p in c.items():
            d[y] = d.get(y, LaurentPoly.zero()) - p
        d = {y: p for y, p in d.items() if not p.is_zero}
        if not d:
            return c
        ystar = max(d, key=lambda y: (g.length[y], y))
        r = d[ystar]
        assert r.bar() == -r, "violation is not antisymmetric"
        fix = LaurentPoly({e: co for e, co in r.items() if e > 0})
        c[ystar] = c.get(ystar, LaurentPoly.zero()) + fix

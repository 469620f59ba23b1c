"""Shared helpers: brute-force oracles kept independent of the code paths
they check."""

from __future__ import annotations

import random
from itertools import combinations, product

import pytest

from autorel import automata as au
from autorel import relations as rel


def words_upto(alphabet, n):
    out = [()]
    for length in range(1, n + 1):
        out.extend(product(alphabet, repeat=length))
    return out


def lang_upto(a, n):
    """Accepted 1-track words up to length n, as a set."""
    return set(au.iter_words(a, n))


def pairs_upto(r, n):
    """All (u, v) pairs with components up to length n that lie in r."""
    ws = words_upto(r.alphabet, n)
    return {(u, v) for u in ws for v in ws if r.contains(u, v)}


def residual_signatures(a, prefix_len, suffix_len):
    """Brute-force Myhill-Nerode refinement of a column-word language:
    distinct residuals among prefixes, each residual sampled on all column
    suffixes up to suffix_len.  The empty residual counts as one class."""
    syms = list(a.column_universe())
    prefixes = [()]
    for n in range(1, prefix_len + 1):
        prefixes.extend(product(syms, repeat=n))
    suffixes = [()]
    for n in range(1, suffix_len + 1):
        suffixes.extend(product(syms, repeat=n))
    sigs = set()
    for p in prefixes:
        sigs.add(frozenset(s for s in suffixes if a.accepts_columns(p + s)))
    return sigs


def equiv_oracle(r, bound):
    """Brute-force congruence on words up to `bound`, witnesses up to
    bound + 2: w ~ w' iff no witness distinguishes their rows or columns."""
    ws = words_upto(r.alphabet, bound)
    vs = words_upto(r.alphabet, bound + 2)

    def same(w1, w2):
        return all(
            r.contains(w1, v) == r.contains(w2, v)
            and r.contains(v, w1) == r.contains(v, w2)
            for v in vs)

    classes = []
    for w in ws:
        for cls in classes:
            if same(w, cls[0]):
                cls.append(w)
                break
        else:
            classes.append([w])
    return classes


def min_cover_oracle(ones, kmax):
    """Exhaustive rectangle-cover minimum via combinations of maximal
    rectangles, with validity and maximality checked by brute subset tests.
    Any cover can be enlarged rectangle-wise to maximal ones, so searching
    maximal rectangles is complete."""
    if not ones:
        return 0
    rows = sorted({i for i, _ in ones})
    cols = sorted({j for _, j in ones})

    def valid(I, J):
        return all((i, j) in ones for i in I for j in J)

    rects = []
    for rbits in range(1, 2 ** len(rows)):
        I = frozenset(rows[i] for i in range(len(rows)) if rbits >> i & 1)
        J = frozenset(j for j in cols if all((i, j) in ones for i in I))
        if not J or not valid(I, J):
            continue
        bigger_i = frozenset(i for i in rows if all((i, j) in ones for j in J))
        if bigger_i != I:
            continue  # not row-maximal
        rects.append((I, J))
    rects = sorted(set(rects))
    for k in range(1, kmax + 1):
        for combo in combinations(rects, min(k, len(rects))):
            covered = set()
            for I, J in combo:
                covered.update((i, j) for i in I for j in J)
            if covered >= ones:
                return k
    return None


def random_relation(rng: random.Random, alphabet=("a", "b"), states=3,
                    density=0.5):
    """Random small automatic relation (associated automaton has at most
    `states` states before padding repair)."""
    probe = au.valid_pad_automaton(2, alphabet)
    syms = list(probe.column_universe())
    trans = []
    for src in range(states):
        for sym in syms:
            if rng.random() < density:
                trans.append((src, sym, rng.randrange(states)))
    raw = au.MultiTrackAutomaton(
        tracks=2, alphabet=tuple(alphabet), states=states,
        initial=frozenset({0}),
        accepting=frozenset(rng.sample(range(states), rng.randint(1, states))),
        transitions=frozenset(trans),
    )
    return rel.relation(au.determinize_minimize(au.restrict_valid_pad(raw)))


@pytest.fixture
def rng():
    return random.Random(20240817)

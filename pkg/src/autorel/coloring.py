"""Incompatibility graphs, separator/coloring reductions, coloring
verification and bounded coloring synthesis.

A coloring is a regular partition of all words; it is proper for an edge
relation E when no color contains both endpoints of an edge.  Proper
regular colorings of the incompatibility graph of (R1, R2) correspond to
recognizable separators, and both directions of that correspondence are
implemented and re-verified at the instance level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterator, Optional, Sequence

from . import automata as au
from . import relations as rel
from . import recognizable as rc
from .automata import AutomataError, MultiTrackAutomaton
from .recognizable import PartitionedRecognizable, RecognizableRelation
from .relations import AutomaticRelation


class InvalidColoringError(AutomataError):
    """A coloring failed verification where a proper one was required."""

    def __init__(self, verdict):
        super().__init__(f"coloring is not proper: {verdict.kind} {verdict.witness}")
        self.verdict = verdict


class SearchBudgetExceeded(AutomataError):
    """Bounded search ran out of candidates; distinct from absence."""


@dataclass(frozen=True)
class RegularColoring:
    """Ordered regular languages claimed to partition all words."""

    colors: tuple  # tuple[MultiTrackAutomaton, ...]

    def __post_init__(self):
        if not self.colors:
            raise AutomataError("a coloring needs at least one color")
        alpha = self.colors[0].alphabet
        for c in self.colors:
            if c.tracks != 1 or c.alphabet != alpha:
                raise AutomataError("colors must be 1-track over one alphabet")

    @property
    def alphabet(self) -> tuple:
        return self.colors[0].alphabet

    def color_of(self, word: Sequence[str]) -> Optional[int]:
        for i, c in enumerate(self.colors):
            if au.membership(c, (tuple(word),)):
                return i
        return None


PROPER = "PROPER"
NOT_PARTITION = "NOT_PARTITION"
MONOCHROME_EDGE = "MONOCHROME_EDGE"


@dataclass(frozen=True)
class ColoringVerdict:
    kind: str
    witness: Optional[tuple] = None  # word, or (u, u') edge
    color: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.kind == PROPER


def verify_coloring(e: AutomaticRelation, c: RegularColoring,
                    budget: Optional[int] = None) -> ColoringVerdict:
    """PROPER, or NOT_PARTITION / MONOCHROME_EDGE with the shortlex-least
    violation."""
    if e.alphabet != c.alphabet:
        raise AutomataError("graph and coloring must share the alphabet")
    bad_word = rc.partition_ok(c.colors, budget)
    if bad_word is not None:
        return ColoringVerdict(NOT_PARTITION, bad_word)
    best = None
    for i, color in enumerate(c.colors):
        mono = au.intersect(e.base, rc.product_relation(color, color, budget).base,
                            budget)
        w = au.emptiness_shortest(mono)
        if w is not None:
            key = (len(w), [e.base.symbol_key(s) for s in w], i)
            if best is None or key < best[0]:
                best = (key, w, i)
    if best is not None:
        _k, w, i = best
        return ColoringVerdict(MONOCHROME_EDGE, au.split_convolution(w, 2), i)
    return ColoringVerdict(PROPER)


# ---------------------------------------------------------------------------
# Incompatibility graph

def incompatibility_graph(r1: AutomaticRelation, r2: AutomaticRelation,
                          budget: Optional[int] = None) -> AutomaticRelation:
    """Edges join words that no recognizable separator may merge: some
    witness v puts one of (u,v),(u',v),(v,u),(v,u') in R1 and the matching
    pair in R2.  The four conditions come in mirror pairs, so the graph is
    the symmetric closure of two joins.
    """
    if r1.alphabet != r2.alphabet:
        raise AutomataError("instance relations need one alphabet")
    left = rel.common_image_pairs(r1, r2, budget)
    right = rel.common_image_pairs(rel.inverse(r1), rel.inverse(r2), budget)
    half = au.union(left.base, right.base)
    sym = au.union(half, au.permute_tracks(half, (1, 0)))
    return rel._wrap(au.determinize_minimize(sym, budget))


def graph_equal(e1: AutomaticRelation, e2: AutomaticRelation,
                budget: Optional[int] = None) -> bool:
    """Equality as graphs: same edge set ignoring direction."""
    return au.equivalent(rel.symmetric_closure(e1).base,
                         rel.symmetric_closure(e2).base, budget)


# ---------------------------------------------------------------------------
# The three reductions

def reduce_sep_to_coloring(r1: AutomaticRelation, r2: AutomaticRelation,
                           budget: Optional[int] = None) -> AutomaticRelation:
    """Separability instance -> colorability instance."""
    return incompatibility_graph(r1, r2, budget)


def reduce_coloring_to_sep(e: AutomaticRelation) -> tuple:
    """Colorability instance -> separability instance (E, Id)."""
    return (e, rel.make_identity(e.alphabet))


def definability_to_separability(r: AutomaticRelation,
                                 budget: Optional[int] = None) -> tuple:
    """Definability instance -> separability instance (R, complement of R)."""
    return (r, rel.complement_relation(r, budget))


def separator_from_coloring(r1: AutomaticRelation, r2: AutomaticRelation,
                            c: RegularColoring,
                            budget: Optional[int] = None) -> RecognizableRelation:
    """Closed-form separator from a proper coloring of the incompatibility
    graph: for each color A, take A x R1[A] and R1^{-1}[A] x A.

    The coloring is verified first, and the produced separator is
    re-verified before being returned.
    """
    graph = incompatibility_graph(r1, r2, budget)
    verdict = verify_coloring(graph, c, budget)
    if not verdict.ok:
        raise InvalidColoringError(verdict)
    products = []
    for color in c.colors:
        img = au.determinize_minimize(rel.image(r1, color, budget), budget)
        pre = au.determinize_minimize(rel.preimage(r1, color, budget), budget)
        col = au.determinize_minimize(color, budget)
        products.append((col, img))
        products.append((pre, col))
    s = RecognizableRelation(alphabet=r1.alphabet, products=tuple(products))
    check = rc.verify_separator(s, r1, r2, budget)
    if not check.ok:
        raise AutomataError(f"internal error: closed-form separator failed: {check.kind}")
    return s


def coloring_from_separator(s: PartitionedRecognizable,
                            budget: Optional[int] = None) -> RegularColoring:
    """The partition of a kREC separator is itself the coloring."""
    bad = rc.partition_ok(s.partition, budget)
    if bad is not None:
        raise AutomataError(f"separator blocks do not partition: witness {bad}")
    return RegularColoring(colors=s.partition)


def separator_from_kcoloring(e: AutomaticRelation, c: RegularColoring,
                             budget: Optional[int] = None) -> PartitionedRecognizable:
    """For the (E, Id) instance: the union of off-diagonal block products."""
    k = len(c.colors)
    pairs = frozenset((i, j) for i in range(k) for j in range(k) if i != j)
    return PartitionedRecognizable(partition=c.colors, pairs=pairs)


# ---------------------------------------------------------------------------
# Bounded coloring synthesis

def _canonical_dfas(alphabet: Sequence[str], n: int) -> Iterator[tuple]:
    """Complete DFAs with n states over the alphabet, every state reachable,
    states in breadth-first first-visit order; emitted in lexicographic
    transition-table order."""
    k = len(alphabet)
    for table in _cartesian(range(n), repeat=n * k):
        seen = [0]
        seen_set = {0}
        for q in seen:
            for a in range(k):
                d = table[q * k + a]
                if d not in seen_set:
                    seen_set.add(d)
                    seen.append(d)
        if len(seen) != n or seen != sorted(seen):
            continue
        yield table


def _dfa_color_languages(alphabet, n, table, labels, k):
    """Colors as unions of the DFA's state languages; a partition by
    construction."""
    colors = []
    for color in range(k):
        accepting = {q for q in range(n) if labels[q] == color}
        trans = [(q, (a,), table[q * len(alphabet) + i])
                 for q in range(n) for i, a in enumerate(alphabet)]
        colors.append(au._freeze(1, tuple(alphabet), n, {0}, accepting, trans))
    return colors


def bounded_color_search(e: AutomaticRelation, k: int, state_bound: int,
                         budget: Optional[int] = None,
                         candidate_budget: int = 2_000_000,
                         sample_len: int = 5) -> Optional[RegularColoring]:
    """Search k-colorings whose color map is a state labeling of a complete
    DFA with at most state_bound states.

    Enumeration is canonical (state count, then transition table, then
    labeling), so the first hit is reproducible.  Returns None when the
    bounded space is exhausted; that is no proof the graph is not
    k-regular-colorable.
    """
    if k < 1 or state_bound < 1:
        raise AutomataError("k and state_bound must be >= 1")
    alphabet = e.alphabet
    # cheap rejection first: edges on short words must be bichrome
    sample = [p for p in rel.relation_pairs(e, sample_len)]
    seen = 0
    for n in range(1, state_bound + 1):
        for table in _canonical_dfas(alphabet, n):
            k_idx = {a: i for i, a in enumerate(alphabet)}

            def run(word):
                q = 0
                for ch in word:
                    q = table[q * len(alphabet) + k_idx[ch]]
                return q

            for labels in _cartesian(range(k), repeat=n):
                if labels[0] != 0:
                    continue  # color order is canonical up to renaming
                seen += 1
                if seen > candidate_budget:
                    raise SearchBudgetExceeded(
                        f"candidate budget exhausted after {seen - 1} colorings")
                if any(labels[run(u)] == labels[run(v)] for u, v in sample):
                    continue
                colors = _dfa_color_languages(alphabet, n, table, labels, k)
                coloring = RegularColoring(colors=tuple(colors))
                if verify_coloring(e, coloring, budget).ok:
                    return coloring
    return None


# ---------------------------------------------------------------------------
# JSON

def coloring_to_json_dict(c: RegularColoring) -> dict:
    return {"colors": [au.to_json_dict(x) for x in c.colors]}


def coloring_from_json_dict(d: dict) -> RegularColoring:
    return RegularColoring(colors=tuple(au.from_json_dict(x) for x in d["colors"]))


def dumps_coloring(c: RegularColoring) -> str:
    return json.dumps(coloring_to_json_dict(c), indent=2) + "\n"


def loads_coloring(text: str) -> RegularColoring:
    return coloring_from_json_dict(json.loads(text))

"""Recognizable relations: finite unions of products of regular languages.

Holds separator verification, the decidable 1-product separability test,
the symmetric two-product normal form, and the fresh-symbol lifting that
turns a 2-product instance into a k-product one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from . import automata as au
from . import relations as rel
from .automata import ArityMismatchError, AutomataError, MultiTrackAutomaton
from .relations import AutomaticRelation


class NotApplicableError(AutomataError):
    """Input does not meet an operation's structural precondition."""


class SymbolClashError(AutomataError):
    """A fresh symbol collides with the existing alphabet."""


@dataclass(frozen=True)
class RecognizableRelation:
    """Union of products A_i x B_i of regular languages (1-track automata)."""

    alphabet: tuple
    products: tuple  # tuple[(MultiTrackAutomaton, MultiTrackAutomaton), ...]

    def __post_init__(self):
        au.check_alphabet(self.alphabet)
        for left, right in self.products:
            if left.tracks != 1 or right.tracks != 1:
                raise ArityMismatchError("products are built from 1-track languages")
            if left.alphabet != self.alphabet or right.alphabet != self.alphabet:
                raise ArityMismatchError("product languages must share the alphabet")

    def empty_products(self) -> list:
        """Indices of products with an empty side (permitted but flagged)."""
        return [i for i, (l, r) in enumerate(self.products)
                if au.is_empty(l) or au.is_empty(r)]


@dataclass(frozen=True)
class PartitionedRecognizable:
    """kREC witness: a regular partition of Sigma* plus the selected pairs."""

    partition: tuple  # tuple[MultiTrackAutomaton, ...]
    pairs: frozenset  # frozenset[(int, int)]

    def __post_init__(self):
        if not self.partition:
            raise AutomataError("partition must have at least one block")
        alpha = self.partition[0].alphabet
        for lang in self.partition:
            if lang.tracks != 1 or lang.alphabet != alpha:
                raise ArityMismatchError("partition blocks must be 1-track, same alphabet")
        k = len(self.partition)
        for i, j in self.pairs:
            if not (0 <= i < k and 0 <= j < k):
                raise AutomataError("pair index out of range")

    @property
    def alphabet(self) -> tuple:
        return self.partition[0].alphabet

    def is_partition(self, budget: Optional[int] = None) -> bool:
        return partition_ok(self.partition, budget) is None

    def to_recognizable(self) -> RecognizableRelation:
        prods = tuple((self.partition[i], self.partition[j])
                      for i, j in sorted(self.pairs))
        return RecognizableRelation(alphabet=self.alphabet, products=prods)


def partition_ok(langs: Sequence[MultiTrackAutomaton],
                 budget: Optional[int] = None) -> Optional[tuple]:
    """None if the languages partition Sigma*, else a witness word.

    The witness is the shortlex-least word missing from the union or lying
    in two blocks.
    """
    witnesses = []
    alpha = langs[0].alphabet
    covered = langs[0]
    for lang in langs[1:]:
        covered = au.union(covered, lang)
    missing = au.difference_witness(au.full_language(alpha), covered, budget)
    if missing is not None:
        witnesses.append(tuple(s[0] for s in missing))
    for i in range(len(langs)):
        for j in range(i + 1, len(langs)):
            w = au.intersection_witness(langs[i], langs[j], budget)
            if w is not None:
                witnesses.append(tuple(s[0] for s in w))
    if not witnesses:
        return None
    return min(witnesses, key=lambda w: (len(w), w))


def product_relation(left: MultiTrackAutomaton, right: MultiTrackAutomaton,
                     budget: Optional[int] = None) -> AutomaticRelation:
    """The automatic relation A x B."""
    a = au.cylindrify(left, 1, budget)
    b = au.cylindrify(right, 0, budget)
    return rel._wrap(au.intersect(a, b, budget))


def to_automatic(s: RecognizableRelation,
                 budget: Optional[int] = None) -> AutomaticRelation:
    """Convolution automaton of the union of the products."""
    acc = au.empty_language(2, s.alphabet)
    for left, right in s.products:
        acc = au.union(acc, product_relation(left, right, budget).base)
    return rel._wrap(acc)


# ---------------------------------------------------------------------------
# Separator verification

SEPARATES = "SEPARATES"
FAILS_CONTAINMENT = "FAILS_CONTAINMENT"
FAILS_DISJOINT = "FAILS_DISJOINT"


@dataclass(frozen=True)
class SeparatorVerdict:
    """Outcome of a separator check.

    Both failure modes are always computed; ``kind`` reports the
    disjointness violation when one exists, and ``witness`` is the
    shortlex-least pair for the reported kind.
    """

    kind: str
    witness: Optional[tuple] = None  # (left word, right word)
    containment_witness: Optional[tuple] = None  # pair in R1 \ S
    disjoint_witness: Optional[tuple] = None  # pair in R2 cap S

    @property
    def ok(self) -> bool:
        return self.kind == SEPARATES


def verify_separator(s: RecognizableRelation, r1: AutomaticRelation,
                     r2: AutomaticRelation,
                     budget: Optional[int] = None) -> SeparatorVerdict:
    """Check R1 <= S and S disjoint from R2, reporting shortlex witnesses."""
    if s.alphabet != r1.alphabet or s.alphabet != r2.alphabet:
        raise ArityMismatchError("separator and relations need one alphabet")
    s_auto = to_automatic(s, budget)
    wc = au.difference_witness(r1.base, s_auto.base, budget)
    wd = au.intersection_witness(r2.base, s_auto.base, budget)
    cont = au.split_convolution(wc, 2) if wc is not None else None
    disj = au.split_convolution(wd, 2) if wd is not None else None
    if disj is not None:
        return SeparatorVerdict(FAILS_DISJOINT, disj, cont, disj)
    if cont is not None:
        return SeparatorVerdict(FAILS_CONTAINMENT, cont, cont, disj)
    return SeparatorVerdict(SEPARATES)


def one_prod_separability(r1: AutomaticRelation, r2: AutomaticRelation,
                          budget: Optional[int] = None
                          ) -> Optional[RecognizableRelation]:
    """Decide separability by a single product.

    A single product separates iff pi1(R1) x pi2(R1) does, so the check is
    definitive: None means no 1-product separator exists at all.
    """
    cand = RecognizableRelation(
        alphabet=r1.alphabet,
        products=((au.determinize_minimize(rel.project_first(r1)),
                   au.determinize_minimize(rel.project_second(r1))),))
    if verify_separator(cand, r1, r2, budget).ok:
        return cand
    return None


def normalize_symmetric_separator(s: RecognizableRelation,
                                  require_symmetric_context: bool = False,
                                  budget: Optional[int] = None
                                  ) -> RecognizableRelation:
    """Replace a 2-product separator of a symmetric relation versus the
    identity by its symmetric core S cap S^{-1}, in (A x B) u (B x A) shape.

    The input must be A1 x B1 u B2 x A2 with A_i cap B_i empty (which holds
    whenever S avoids the identity); the result is
    ((A1 cap A2) x (B1 cap B2)) u ((B1 cap B2) x (A1 cap A2)).
    """
    if len(s.products) != 2:
        raise NotApplicableError("need exactly 2 products")
    (a1, b1), (b2, a2) = s.products
    for x, y in ((a1, b1), (a2, b2)):
        if au.intersection_witness(x, y, budget) is not None:
            raise NotApplicableError("product sides must be disjoint (A_i cap B_i = empty)")
    left = au.determinize_minimize(au.intersect(a1, a2, budget))
    right = au.determinize_minimize(au.intersect(b1, b2, budget))
    out = RecognizableRelation(alphabet=s.alphabet,
                               products=((left, right), (right, left)))
    if require_symmetric_context:
        direct = au.intersect(to_automatic(s, budget).base,
                              rel.inverse(to_automatic(s, budget)).base, budget)
        if not au.equivalent(to_automatic(out, budget).base, direct, budget):
            raise NotApplicableError("closed form disagrees with S cap S^-1")
    return out


def lift_to_kprod(r1: AutomaticRelation, r2: AutomaticRelation, k: int,
                  budget: Optional[int] = None) -> tuple:
    """Pad a 2-product instance into a k-product one with fresh symbols.

    Adds letters a#1..a#(k-2), b#1..b#(k-2); R1 gains the pairs (a#i, b#i)
    and R2 gains every other pair touching a fresh letter, so any k-product
    separator must spend k-2 products on the fresh diagonal.
    """
    if k < 2:
        raise AutomataError("k must be >= 2")
    if r1.alphabet != r2.alphabet:
        raise ArityMismatchError("instance relations need one alphabet")
    if k == 2:
        return (r1, r2)
    fresh_a = tuple(f"a#{i}" for i in range(1, k - 1))
    fresh_b = tuple(f"b#{i}" for i in range(1, k - 1))
    for sym in fresh_a + fresh_b:
        if sym in r1.alphabet:
            raise SymbolClashError(f"fresh symbol {sym!r} already in alphabet")
    alpha = tuple(r1.alphabet) + fresh_a + fresh_b

    base1 = au.extend_alphabet(r1.base, alpha)
    pairs1 = rel.finite_relation(
        [((fresh_a[i],), (fresh_b[i],)) for i in range(k - 2)], alpha)
    new_r1 = rel._wrap(au.union(base1, pairs1.base))

    old_words = au.extend_alphabet(au.full_language(r1.alphabet), alpha)
    parts = [au.extend_alphabet(r2.base, alpha)]
    for i in range(k - 2):
        ai = au.word_language((fresh_a[i],), alpha)
        bi = au.word_language((fresh_b[i],), alpha)
        parts.append(product_relation(ai, old_words, budget).base)
        parts.append(product_relation(old_words, bi, budget).base)
        for j in range(k - 2):
            bj = au.word_language((fresh_b[j],), alpha)
            aj = au.word_language((fresh_a[j],), alpha)
            if i != j:
                parts.append(product_relation(ai, bj, budget).base)
            parts.append(product_relation(bi, aj, budget).base)
    acc = parts[0]
    for p in parts[1:]:
        acc = au.union(acc, p)
    new_r2 = rel._wrap(au.determinize_minimize(acc, budget))
    return (new_r1, new_r2)


# ---------------------------------------------------------------------------
# Named separators from the worked examples

def even_odd_languages(letter: str = "a",
                       alphabet: Sequence[str] = ("a",)) -> tuple:
    """(even, odd) length-parity languages of letter^* over the alphabet."""
    alphabet = au.check_alphabet(alphabet)
    even = au._freeze(1, alphabet, 2, {0}, {0},
                      [(0, (letter,), 1), (1, (letter,), 0)])
    odd = au._freeze(1, alphabet, 2, {0}, {1},
                     [(0, (letter,), 1), (1, (letter,), 0)])
    return even, odd


def parity_separator(alphabet: Sequence[str] = ("a",)) -> RecognizableRelation:
    """(even x odd) u (odd x even) on a^*: separates fc(1) from fc(2)."""
    even, odd = even_odd_languages("a", alphabet)
    return RecognizableRelation(alphabet=tuple(alphabet),
                                products=((even, odd), (odd, even)))


# ---------------------------------------------------------------------------
# JSON formats

def recognizable_to_json_dict(s: RecognizableRelation) -> dict:
    return {
        "products": [
            {"left": au.to_json_dict(l), "right": au.to_json_dict(r)}
            for l, r in s.products
        ]
    }


def recognizable_from_json_dict(d: dict) -> RecognizableRelation:
    prods = tuple(
        (au.from_json_dict(p["left"]), au.from_json_dict(p["right"]))
        for p in d["products"]
    )
    if not prods:
        raise AutomataError("recognizable JSON needs at least one product "
                            "(or use an empty-language product)")
    return RecognizableRelation(alphabet=prods[0][0].alphabet, products=prods)


def partitioned_to_json_dict(p: PartitionedRecognizable) -> dict:
    return {
        "partition": [au.to_json_dict(l) for l in p.partition],
        "pairs": sorted([i, j] for i, j in p.pairs),
    }


def partitioned_from_json_dict(d: dict) -> PartitionedRecognizable:
    return PartitionedRecognizable(
        partition=tuple(au.from_json_dict(l) for l in d["partition"]),
        pairs=frozenset((i, j) for i, j in d["pairs"]),
    )


def dumps_recognizable(s: RecognizableRelation) -> str:
    return json.dumps(recognizable_to_json_dict(s), indent=2) + "\n"


def loads_recognizable(text: str) -> RecognizableRelation:
    return recognizable_from_json_dict(json.loads(text))


def dumps_partitioned(p: PartitionedRecognizable) -> str:
    return json.dumps(partitioned_to_json_dict(p), indent=2) + "\n"


def loads_partitioned(text: str) -> PartitionedRecognizable:
    return partitioned_from_json_dict(json.loads(text))

"""Automatic relations: 2-track automata as first-class binary relations.

Includes the relational operators (inverse, symmetric closure, composition,
image/preimage, projections, the no-predecessor set, functionality tests)
and the library of named relations used as fixtures throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from . import automata as au
from .automata import (
    PAD,
    ArityMismatchError,
    AutomataError,
    MultiTrackAutomaton,
)


class FixtureError(AutomataError):
    """Unknown fixture name or bad fixture parameters."""


@dataclass(frozen=True)
class AutomaticRelation:
    """A binary relation R given by a 2-track automaton for its convolution.

    Doubles as an automatic graph: vertices are all words, edges are the
    pairs of R.
    """

    base: MultiTrackAutomaton

    def __post_init__(self):
        if self.base.tracks != 2:
            raise ArityMismatchError("a relation needs a 2-track automaton")
        if not au.satisfies_valid_pad(self.base):
            raise AutomataError("relation automaton leaks invalid padding")

    @property
    def alphabet(self) -> tuple:
        return self.base.alphabet

    def contains(self, left: Union[str, Sequence[str]],
                 right: Union[str, Sequence[str]]) -> bool:
        return au.membership(self.base, (left, right))


def relation(base: MultiTrackAutomaton) -> AutomaticRelation:
    return AutomaticRelation(base=base)


def _wrap(base: MultiTrackAutomaton) -> AutomaticRelation:
    # internal constructions are valid by construction; skip the pad check
    rel = object.__new__(AutomaticRelation)
    object.__setattr__(rel, "base", base)
    return rel


# ---------------------------------------------------------------------------
# Constructors

def make_identity(alphabet: Sequence[str]) -> AutomaticRelation:
    """Id = {(w, w)}."""
    alphabet = au.check_alphabet(alphabet)
    trans = [(0, (x, x), 0) for x in alphabet]
    return _wrap(au._freeze(2, alphabet, 1, {0}, {0}, trans))


def equal_length_relation(alphabet: Sequence[str]) -> AutomaticRelation:
    """All pairs (u, v) with |u| = |v|."""
    alphabet = au.check_alphabet(alphabet)
    trans = [(0, (x, y), 0) for x in alphabet for y in alphabet]
    return _wrap(au._freeze(2, alphabet, 1, {0}, {0}, trans))


def successor_relation(c: int, alphabet: Sequence[str] = ("a",),
                       letter: str = "a") -> AutomaticRelation:
    """fc(c) = {(a^n, a^{n+c}) | n >= 0} for a fixed offset c >= 1."""
    if c < 1:
        raise FixtureError("offset must be >= 1")
    alphabet = au.check_alphabet(alphabet)
    if letter not in alphabet:
        raise FixtureError(f"letter {letter!r} not in alphabet")
    trans = [(0, (letter, letter), 0)]
    for i in range(c):
        trans.append((i, (PAD, letter), i + 1))
    return _wrap(au._freeze(2, alphabet, c + 1, {0}, {c}, trans))


def append_one_relation(alphabet: Sequence[str]) -> AutomaticRelation:
    """{(u, ux) | u a word, x a letter}: every word to its one-letter extensions."""
    alphabet = au.check_alphabet(alphabet)
    trans = [(0, (x, x), 0) for x in alphabet]
    trans += [(0, (PAD, x), 1) for x in alphabet]
    return _wrap(au._freeze(2, alphabet, 2, {0}, {1}, trans))


def tree_relation(alphabet: Sequence[str] = ("a", "b")) -> AutomaticRelation:
    """The tree on a*b*: root edges from the empty word to every nonempty
    a^p and b^q, plus diagonal edges (a^p b^q, a^{p+1} b^{q+1}).
    """
    alphabet = au.check_alphabet(alphabet)
    if "a" not in alphabet or "b" not in alphabet:
        raise FixtureError("tree fixture needs letters a and b")
    trans = [
        # diagonal (a^p b^q, a^{p+1} b^{q+1}) from initial state 0
        (0, ("a", "a"), 0),
        (0, ("b", "a"), 1),   # q >= 1: right still one 'a' behind
        (1, ("b", "b"), 1),
        (1, (PAD, "b"), 3),
        (0, (PAD, "a"), 2),   # q = 0: (a^p, a^{p+1} b)
        (2, (PAD, "b"), 4),
        (3, (PAD, "b"), 4),
        # root edges (eps, a^p) and (eps, b^q), p,q >= 1, from initial state 7
        (7, (PAD, "a"), 5),
        (5, (PAD, "a"), 5),
        (7, (PAD, "b"), 6),
        (6, (PAD, "b"), 6),
    ]
    return _wrap(au._freeze(2, alphabet, 8, {0, 7}, {4, 5, 6}, trans))


def finite_relation(pairs: Iterable[tuple],
                    alphabet: Sequence[str]) -> AutomaticRelation:
    """Relation given by an explicit finite list of word pairs."""
    alphabet = au.check_alphabet(alphabet)
    acc = au.empty_language(2, alphabet)
    for left, right in pairs:
        word = au.convolve((left, right), alphabet)
        n = len(word)
        trans = [(i, sym, i + 1) for i, sym in enumerate(word)]
        single = au._freeze(2, alphabet, n + 1, {0}, {n}, trans)
        acc = au.union(acc, single)
    return _wrap(au.determinize_minimize(acc))


def empty_relation(alphabet: Sequence[str]) -> AutomaticRelation:
    return _wrap(au.empty_language(2, au.check_alphabet(alphabet)))


def full_relation(alphabet: Sequence[str]) -> AutomaticRelation:
    """All pairs of words: the convolution form of Sigma* x Sigma*."""
    alphabet = au.check_alphabet(alphabet)
    return _wrap(au.valid_pad_automaton(2, alphabet))


def neq_relation(alphabet: Sequence[str]) -> AutomaticRelation:
    """All pairs (u, v) with u != v."""
    alphabet = au.check_alphabet(alphabet)
    pool = tuple(alphabet) + (PAD,)
    trans = [(0, (x, x), 0) for x in alphabet]
    for x in pool:
        for y in pool:
            if x == y or (x == PAD and y == PAD):
                continue
            trans.append((0, (x, y), 1))
    for x in pool:
        for y in pool:
            if x == PAD and y == PAD:
                continue
            trans.append((1, (x, y), 1))
    raw = au._freeze(2, alphabet, 2, {0}, {1}, trans)
    return _wrap(au.restrict_valid_pad(raw))


# ---------------------------------------------------------------------------
# Relational operators

def inverse(r: AutomaticRelation) -> AutomaticRelation:
    return _wrap(au.permute_tracks(r.base, (1, 0)))


def symmetric_closure(r: AutomaticRelation) -> AutomaticRelation:
    return _wrap(au.union(r.base, inverse(r).base))


def union_rel(r1: AutomaticRelation, r2: AutomaticRelation) -> AutomaticRelation:
    return _wrap(au.union(r1.base, r2.base))


def intersect_rel(r1: AutomaticRelation, r2: AutomaticRelation,
                  budget: Optional[int] = None) -> AutomaticRelation:
    return _wrap(au.intersect(r1.base, r2.base, budget))


def difference_rel(r1: AutomaticRelation, r2: AutomaticRelation,
                   budget: Optional[int] = None) -> AutomaticRelation:
    return _wrap(au.difference(r1.base, r2.base, budget))


def complement_relation(r: AutomaticRelation,
                        budget: Optional[int] = None) -> AutomaticRelation:
    """(Sigma* x Sigma*) minus R."""
    return _wrap(au.complement_relative(r.base, budget))


def compose(r1: AutomaticRelation, r2: AutomaticRelation,
            budget: Optional[int] = None) -> AutomaticRelation:
    """{(u, w) | exists v: (u,v) in R1 and (v,w) in R2}."""
    if r1.alphabet != r2.alphabet:
        raise ArityMismatchError("compose needs a shared alphabet")
    return _wrap(au.relational_join(r1.base, r2.base, 1, 0, budget))


def image(r: AutomaticRelation, lang: MultiTrackAutomaton,
          budget: Optional[int] = None) -> MultiTrackAutomaton:
    """R[X] = {v | exists u in X with (u,v) in R}."""
    if lang.tracks != 1:
        raise ArityMismatchError("image takes a 1-track language")
    return au.relational_join(lang, r.base, 0, 0, budget)


def preimage(r: AutomaticRelation, lang: MultiTrackAutomaton,
             budget: Optional[int] = None) -> MultiTrackAutomaton:
    """R^{-1}[X] = {u | exists v in X with (u,v) in R}."""
    if lang.tracks != 1:
        raise ArityMismatchError("preimage takes a 1-track language")
    return au.relational_join(lang, r.base, 0, 1, budget)


def project_first(r: AutomaticRelation) -> MultiTrackAutomaton:
    """pi1(R) = {u | exists v: (u,v) in R}."""
    return au.project(r.base, 1)


def project_second(r: AutomaticRelation) -> MultiTrackAutomaton:
    """pi2(R) = {v | exists u: (u,v) in R}."""
    return au.project(r.base, 0)


def init_set(r: AutomaticRelation, budget: Optional[int] = None) -> MultiTrackAutomaton:
    """Vertices with no predecessor in the graph of R: Sigma* \\ pi2(R)."""
    return au.complement_relative(project_second(r), budget)


def common_image_pairs(ra: AutomaticRelation, rb: AutomaticRelation,
                       budget: Optional[int] = None) -> AutomaticRelation:
    """{(u, u') | exists v: (u,v) in RA and (u',v) in RB}."""
    if ra.alphabet != rb.alphabet:
        raise ArityMismatchError("operands need a shared alphabet")
    return _wrap(au.relational_join(ra.base, rb.base, 1, 1, budget))


def functional(r: AutomaticRelation, budget: Optional[int] = None) -> bool:
    """Out-degree <= 1 everywhere as a graph."""
    clashes = common_image_pairs(inverse(r), inverse(r), budget)
    bad = au.intersect(clashes.base, neq_relation(r.alphabet).base, budget)
    return au.is_empty(bad)


def co_functional(r: AutomaticRelation, budget: Optional[int] = None) -> bool:
    """In-degree <= 1 everywhere as a graph."""
    clashes = common_image_pairs(r, r, budget)
    bad = au.intersect(clashes.base, neq_relation(r.alphabet).base, budget)
    return au.is_empty(bad)


def equivalent_rel(r1: AutomaticRelation, r2: AutomaticRelation,
                   budget: Optional[int] = None) -> bool:
    return au.equivalent(r1.base, r2.base, budget)


def relation_pairs(r: AutomaticRelation, max_conv_len: int) -> Iterator[tuple]:
    """Pairs of R whose convolution length is <= max_conv_len, shortlex."""
    for w in au.iter_column_words(r.base, max_conv_len):
        yield au.split_convolution(w, 2)


def successor_words(r: AutomaticRelation, word: Sequence[str],
                    max_len: int) -> list:
    """Words v with (word, v) in R and |v| <= max_len, in shortlex order.

    Direct product walk; avoids building the image automaton per query.
    """
    base = r.base
    w = tuple(word)
    order = {s: i for i, s in enumerate(base.alphabet)}

    def left_sym(i):
        return w[i] if i < len(w) else PAD

    def accepts_ending_here(states, i):
        # v ends at column i; the remaining columns (w[j], PAD) are forced
        cur = states
        for j in range(i, len(w)):
            cur = base.step(cur, (w[j], PAD))
            if not cur:
                return False
        return bool(cur & base.accepting)

    out = []
    frontier = [((), frozenset(base.initial))]
    while frontier:
        nxt: dict = {}
        for prefix, states in frontier:
            if accepts_ending_here(states, len(prefix)):
                out.append(prefix)
            if len(prefix) >= max_len:
                continue
            ls = left_sym(len(prefix))
            for y in base.alphabet:
                s2 = base.step(states, (ls, y))
                if s2:
                    key = prefix + (y,)
                    nxt[key] = nxt.get(key, frozenset()) | s2
        frontier = sorted(nxt.items(), key=lambda kv: [order[c] for c in kv[0]])
    return sorted(set(out), key=lambda v: (len(v), [order[c] for c in v]))


def predecessor_words(r: AutomaticRelation, word: Sequence[str],
                      max_len: int) -> list:
    return successor_words(inverse(r), word, max_len)


# ---------------------------------------------------------------------------
# Fixture registry

def fixtures(name: str, **params) -> AutomaticRelation:
    """Named relations from the worked examples.

    fc(c): the offset-c successor chain on a^*.
    tree: the a*b* tree that is 2-colorable but not with regular colors.
    equal-length / append-one: the two relations of the incompatibility
    example whose graph is colored by word-length parity.
    gadget: forwarded to the Turing-machine kit (needs machine=..., k=...).
    """
    key = name.replace("_", "-").lower()
    if key == "identity":
        return make_identity(params.get("alphabet", ("a", "b")))
    if key == "equal-length":
        return equal_length_relation(params.get("alphabet", ("a", "b")))
    if key in ("fc", "offset-successor"):
        return successor_relation(params.get("c", 1),
                                  params.get("alphabet", ("a",)))
    if key == "append-one":
        return append_one_relation(params.get("alphabet", ("a", "b")))
    if key == "tree":
        return tree_relation(params.get("alphabet", ("a", "b")))
    if key == "gadget":
        from . import tm
        return tm.coloring_gadget(params["machine"], params.get("k", 2))
    raise FixtureError(f"unknown fixture {name!r}")


# ---------------------------------------------------------------------------
# RelationSpec: s-expression input language for the CLI, e.g.
#   (union (fc 1) (inverse (fc 1)))

def parse_relation_spec(text: str,
                        alphabet: Optional[Sequence[str]] = None) -> AutomaticRelation:
    tokens = _tokenize(text)
    expr, rest = _parse_expr(tokens)
    if rest:
        raise AutomataError(f"trailing tokens in relation spec: {rest[:3]}")
    return _eval_spec(expr, tuple(alphabet) if alphabet else None)


def _tokenize(text: str) -> list:
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            out.append(c)
            i += 1
        elif c == '"':
            j = text.index('"', i + 1)
            out.append(("str", text[i + 1:j]))
            i = j + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            out.append(("atom", text[i:j]))
            i = j
    return out


def _parse_expr(tokens: list):
    if not tokens:
        raise AutomataError("empty relation spec")
    head, rest = tokens[0], tokens[1:]
    if head == "(":
        items = []
        while rest and rest[0] != ")":
            item, rest = _parse_expr(rest)
            items.append(item)
        if not rest:
            raise AutomataError("unbalanced parenthesis in relation spec")
        return items, rest[1:]
    if head == ")":
        raise AutomataError("unexpected ) in relation spec")
    return head, rest


def _eval_spec(expr, alphabet):
    if not isinstance(expr, list) or not expr:
        raise AutomataError(f"bad relation spec form: {expr!r}")
    op = expr[0][1] if isinstance(expr[0], tuple) else expr[0]
    args = expr[1:]

    def sub(e):
        return _eval_spec(e, alphabet)

    if op == "identity":
        return make_identity(alphabet or ("a", "b"))
    if op == "equal-length":
        return equal_length_relation(alphabet or ("a", "b"))
    if op in ("fc", "offset-successor"):
        c = int(args[0][1])
        return successor_relation(c, alphabet or ("a",))
    if op == "append-one":
        return append_one_relation(alphabet or ("a", "b"))
    if op == "tree":
        return tree_relation(alphabet or ("a", "b"))
    if op == "pairs":
        pairs = []
        for item in args:
            if not isinstance(item, list) or len(item) != 2:
                raise AutomataError("(pairs (u v) ...) expects two-word lists")
            pairs.append((item[0][1], item[1][1]))
        alpha = alphabet or tuple(sorted({c for p in pairs for w in p for c in w})) or ("a",)
        return finite_relation(pairs, alpha)
    if op == "load":
        path = args[0][1]
        with open(path, "r", encoding="utf-8") as fh:
            return relation(au.loads(fh.read()))
    if op == "union":
        return union_rel(sub(args[0]), sub(args[1]))
    if op == "intersection":
        return intersect_rel(sub(args[0]), sub(args[1]))
    if op == "difference":
        return difference_rel(sub(args[0]), sub(args[1]))
    if op == "inverse":
        return inverse(sub(args[0]))
    if op == "symmetric-closure":
        return symmetric_closure(sub(args[0]))
    if op == "compose":
        return compose(sub(args[0]), sub(args[1]))
    raise AutomataError(f"unknown relation constructor {op!r}")

"""Finite automata over multi-track padded alphabets.

A t-track automaton reads columns: t-tuples whose entries are alphabet
symbols or the padding token.  A tuple of words is encoded as one column
word by padding the shorter components, so a binary relation on words is a
language of 2-track columns.  Every language handled here lives inside
``ValidPad(t)``: on each track the padding, once started, runs to the end
of the word, and no column is padding on all tracks at once.

All automata are immutable values; the operations below are pure functions
and safe to call concurrently.  Constructions that can blow up take a
state budget and raise :class:`BudgetExceededError` instead of exhausting
memory.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product as _cartesian
from typing import Iterable, Iterator, Optional, Sequence, Union

#: Padding token.  Reserved: never a member of any alphabet.
PAD = "_"

#: Names that cannot be used as alphabet symbols ("⊥" is the display form
#: of the padding token, "_" its machine form).
RESERVED_SYMBOLS = frozenset({"", PAD, "⊥"})

DEFAULT_STATE_BUDGET = 10**6

TrackSymbol = tuple  # tuple[str, ...] of length == tracks
Word = tuple  # tuple[str, ...], a word on a single track
Transition = tuple  # (src: int, symbol: TrackSymbol, dst: int)


class AutomataError(Exception):
    """Base error for this package."""


class BudgetExceededError(AutomataError):
    """A construction exceeded its state budget."""


class ArityMismatchError(AutomataError):
    """Operands disagree on track count or alphabet."""


class UnknownSymbolError(AutomataError):
    """A word uses a symbol outside the automaton's alphabet."""


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: Optional[int]):
        self.limit = DEFAULT_STATE_BUDGET if limit is None else limit
        self.used = 0

    def charge(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceededError(
                f"state budget exceeded ({self.used} > {self.limit})")


def check_alphabet(symbols: Iterable[str]) -> tuple:
    """Validate and freeze an alphabet (ordered, duplicate-free)."""
    out = []
    seen = set()
    for s in symbols:
        if not isinstance(s, str) or s in RESERVED_SYMBOLS:
            raise AutomataError(f"illegal alphabet symbol: {s!r}")
        if s in seen:
            raise AutomataError(f"duplicate alphabet symbol: {s!r}")
        seen.add(s)
        out.append(s)
    if not out:
        raise AutomataError("alphabet must be non-empty")
    return tuple(out)


@dataclass(frozen=True)
class MultiTrackAutomaton:
    """NFA over t-track columns.

    States are ``0 .. states-1``.  Transitions are (src, column, dst)
    triples; a column is a t-tuple over ``alphabet + (PAD,)`` that is not
    padding on every track.  Missing transitions are implicitly dead, so a
    "deterministic" automaton here is a partial DFA.
    """

    tracks: int
    alphabet: tuple
    states: int
    initial: frozenset
    accepting: frozenset
    transitions: frozenset

    def __post_init__(self):
        if self.tracks < 1:
            raise AutomataError("tracks must be >= 1")
        check_alphabet(self.alphabet)
        ok = set(self.alphabet)
        for q in self.initial | self.accepting:
            if not 0 <= q < self.states:
                raise AutomataError(f"state {q} out of range")
        for src, sym, dst in self.transitions:
            if not (0 <= src < self.states and 0 <= dst < self.states):
                raise AutomataError(f"transition state out of range: {(src, sym, dst)}")
            if len(sym) != self.tracks:
                raise ArityMismatchError(f"column {sym!r} has wrong arity")
            if all(x == PAD for x in sym):
                raise AutomataError("all-padding column is illegal")
            for x in sym:
                if x != PAD and x not in ok:
                    raise UnknownSymbolError(f"column {sym!r} uses unknown symbol {x!r}")

    @cached_property
    def deterministic(self) -> bool:
        if len(self.initial) != 1:
            return False
        seen = set()
        for src, sym, _dst in self.transitions:
            if (src, sym) in seen:
                return False
            seen.add((src, sym))
        return True

    @cached_property
    def _adj(self) -> dict:
        out: dict = {q: [] for q in range(self.states)}
        for src, sym, dst in self.transitions:
            out[src].append((sym, dst))
        for q in out:
            out[q].sort(key=lambda t: (self.symbol_key(t[0]), t[1]))
        return out

    @cached_property
    def _step_map(self) -> dict:
        out: dict = {}
        for src, sym, dst in self.transitions:
            out.setdefault((src, sym), set()).add(dst)
        return out

    def symbol_key(self, sym: TrackSymbol) -> tuple:
        """Order key for columns: track-wise alphabet order, padding last."""
        idx = self._symbol_index
        return tuple(idx[x] for x in sym)

    @cached_property
    def _symbol_index(self) -> dict:
        d = {s: i for i, s in enumerate(self.alphabet)}
        d[PAD] = len(self.alphabet)
        return d

    def step(self, states: frozenset, sym: TrackSymbol) -> frozenset:
        nxt: set = set()
        for q in states:
            nxt |= self._step_map.get((q, sym), _EMPTY_SET)
        return frozenset(nxt)

    def accepts_columns(self, word: Sequence[TrackSymbol]) -> bool:
        cur = self.initial
        for sym in word:
            if not cur:
                return False
            cur = self.step(cur, tuple(sym))
        return bool(cur & self.accepting)

    def column_universe(self) -> Iterator[TrackSymbol]:
        """All legal columns, in symbol order (padding last per track)."""
        pool = tuple(self.alphabet) + (PAD,)
        for sym in _cartesian(pool, repeat=self.tracks):
            if any(x != PAD for x in sym):
                yield sym


_EMPTY_SET: frozenset = frozenset()


def _freeze(tracks, alphabet, n, initial, accepting, transitions) -> MultiTrackAutomaton:
    return MultiTrackAutomaton(
        tracks=tracks,
        alphabet=tuple(alphabet),
        states=n,
        initial=frozenset(initial),
        accepting=frozenset(accepting),
        transitions=frozenset(transitions),
    )


# ---------------------------------------------------------------------------
# Convolution

def convolve(components: Sequence[Union[str, Sequence[str]]],
             alphabet: Optional[Sequence[str]] = None) -> tuple:
    """Encode a tuple of words as one column word, padding the short ones.

    Each component is a tuple of symbol names; a plain ``str`` is split
    into characters.  E.g. ("aaba", "aa") becomes
    (a,a)(a,a)(b,_)(a,_).
    """
    words = [tuple(w) if not isinstance(w, tuple) else w for w in components]
    if alphabet is not None:
        ok = set(alphabet)
        for w in words:
            for x in w:
                if x not in ok:
                    raise UnknownSymbolError(f"symbol {x!r} outside alphabet")
    for w in words:
        if PAD in w:
            raise UnknownSymbolError("padding token is not a word symbol")
    n = max((len(w) for w in words), default=0)
    return tuple(
        tuple(w[i] if i < len(w) else PAD for w in words)
        for i in range(n)
    )


def split_convolution(word: Sequence[TrackSymbol], tracks: int) -> tuple:
    """Inverse of :func:`convolve` on a validly padded column word."""
    comps = []
    for i in range(tracks):
        out = []
        for sym in word:
            if sym[i] == PAD:
                break
            out.append(sym[i])
        comps.append(tuple(out))
    return tuple(comps)


def membership(a: MultiTrackAutomaton,
               components: Sequence[Union[str, Sequence[str]]]) -> bool:
    """Test whether the convolution of a word tuple is accepted."""
    if len(components) != a.tracks:
        raise ArityMismatchError(
            f"expected {a.tracks} components, got {len(components)}")
    return a.accepts_columns(convolve(components, a.alphabet))


# ---------------------------------------------------------------------------
# ValidPad

def valid_pad_automaton(tracks: int, alphabet: Sequence[str]) -> MultiTrackAutomaton:
    """DFA for ValidPad(t): padding only as a per-track suffix."""
    alphabet = check_alphabet(alphabet)
    masks = list(range(1 << tracks))
    trans = []
    probe = _freeze(tracks, alphabet, 1, {0}, {0}, ())
    for m in masks:
        for sym in probe.column_universe():
            m2 = _pad_mask_step(m, sym, tracks)
            if m2 is not None:
                trans.append((m, sym, m2))
    return _freeze(tracks, alphabet, len(masks), {0}, set(masks), trans)


def _pad_mask_step(mask: int, sym: TrackSymbol, tracks: int) -> Optional[int]:
    out = mask
    for i in range(tracks):
        if sym[i] == PAD:
            out |= 1 << i
        elif mask & (1 << i):
            return None
    return out


def restrict_valid_pad(a: MultiTrackAutomaton,
                       budget: Optional[int] = None) -> MultiTrackAutomaton:
    """Intersect with ValidPad(t) without materializing the pad DFA."""
    bud = _Budget(budget)
    start = [(q, 0) for q in sorted(a.initial)]
    index = {}
    for s in start:
        index.setdefault(s, len(index))
        bud.charge()
    queue = deque(start)
    trans = []
    while queue:
        q, mask = queue.popleft()
        src = index[(q, mask)]
        for sym, dst in a._adj[q]:
            m2 = _pad_mask_step(mask, sym, a.tracks)
            if m2 is None:
                continue
            key = (dst, m2)
            if key not in index:
                index[key] = len(index)
                bud.charge()
                queue.append(key)
            trans.append((src, sym, index[key]))
    accepting = {i for (q, _m), i in index.items() if q in a.accepting}
    initial = {index[s] for s in start}
    return _freeze(a.tracks, a.alphabet, max(len(index), 1), initial, accepting, trans)


def satisfies_valid_pad(a: MultiTrackAutomaton) -> bool:
    """Inclusion test L(a) <= ValidPad(t).

    Runs a violation detector in product with `a` (complementation is
    relative to ValidPad here, so it cannot express this test).
    """
    # detector state: pad mask, or the absorbing violation state
    live = _coaccessible(a)
    bad_state = object()
    start = [(q, 0) for q in a.initial]
    seen = set(start)
    queue = deque(start)
    while queue:
        q, mask = queue.popleft()
        for sym, dst in a._adj[q]:
            if mask is bad_state:
                m2 = bad_state
            else:
                m2 = _pad_mask_step(mask, sym, a.tracks)
                if m2 is None:
                    m2 = bad_state
            if m2 is bad_state and dst in live:
                return False
            key = (dst, m2)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return True


def _coaccessible(a: MultiTrackAutomaton) -> frozenset:
    back: dict = {}
    for src, _sym, dst in a.transitions:
        back.setdefault(dst, set()).add(src)
    live = set(a.accepting)
    queue = deque(live)
    while queue:
        q = queue.popleft()
        for p in back.get(q, ()):
            if p not in live:
                live.add(p)
                queue.append(p)
    return frozenset(live)


# ---------------------------------------------------------------------------
# Determinization, minimization, canonical form

def _determinize(a: MultiTrackAutomaton, bud: _Budget):
    """Lazy subset construction.  Returns (subset list, trans dict, accept set)."""
    start = frozenset(a.initial)
    index = {start: 0}
    bud.charge()
    order = [start]
    queue = deque([start])
    trans: dict = {}
    while queue:
        cur = queue.popleft()
        src = index[cur]
        out: dict = {}
        for q in cur:
            for sym, dst in a._adj[q]:
                out.setdefault(sym, set()).add(dst)
        for sym in sorted(out, key=a.symbol_key):
            nxt = frozenset(out[sym])
            if nxt not in index:
                index[nxt] = len(order)
                bud.charge()
                order.append(nxt)
                queue.append(nxt)
            trans[(src, sym)] = index[nxt]
    accept = {i for s, i in index.items() if s & a.accepting}
    return order, trans, accept


def _trim(initial: int, trans: dict, accept: set):
    """Keep states that can reach acceptance; the initial state always stays."""
    back: dict = {}
    for (src, sym), dst in trans.items():
        back.setdefault(dst, set()).add(src)
    live = set(accept)
    queue = deque(accept)
    while queue:
        q = queue.popleft()
        for p in back.get(q, ()):
            if p not in live:
                live.add(p)
                queue.append(p)
    keep = live | {initial}
    trans2 = {(s, sym): d for (s, sym), d in trans.items()
              if s in keep and d in live}
    return keep, trans2


def _moore_minimize(states: set, trans: dict, accept: set,
                    symbol_key) -> tuple:
    """Partition refinement with an implicit dead state."""
    block = {q: (1 if q in accept else 0) for q in states}
    syms = sorted({sym for (_s, sym) in trans}, key=symbol_key)
    while True:
        sigs: dict = {}
        for q in states:
            sig = (block[q],
                   tuple((i, block[trans[(q, sym)]])
                         for i, sym in enumerate(syms) if (q, sym) in trans))
            sigs.setdefault(sig, []).append(q)
        if len(sigs) == len(set(block.values())):
            break
        block = {}
        for i, (_sig, members) in enumerate(sorted(sigs.items())):
            for q in members:
                block[q] = i
    return block, syms


def determinize_minimize(a: MultiTrackAutomaton,
                         budget: Optional[int] = None) -> MultiTrackAutomaton:
    """Canonical form: minimal partial DFA, states numbered breadth-first.

    Equal languages over the same alphabet yield identical encodings, so
    dataclass equality of canonical forms decides language equality.
    """
    bud = _Budget(budget)
    _order, dtrans, daccept = _determinize(a, bud)
    keep, dtrans = _trim(0, dtrans, daccept)
    daccept = daccept & keep
    block, _syms = _moore_minimize(keep, dtrans, daccept, a.symbol_key)

    # merge states block-wise, then renumber by BFS from the initial block
    btrans: dict = {}
    for (q, sym), d in dtrans.items():
        btrans[(block[q], sym)] = block[d]
    baccept = {block[q] for q in daccept}
    b0 = block[0]
    out_sym: dict = {}
    for (b, sym), d in btrans.items():
        out_sym.setdefault(b, []).append((sym, d))
    number = {b0: 0}
    order = deque([b0])
    while order:
        b = order.popleft()
        for sym, d in sorted(out_sym.get(b, ()), key=lambda t: a.symbol_key(t[0])):
            if d not in number:
                number[d] = len(number)
                order.append(d)
    trans = [(number[b], sym, number[d])
             for (b, sym), d in btrans.items()
             if b in number and d in number]
    accepting = {number[b] for b in baccept if b in number}
    return _freeze(a.tracks, a.alphabet, len(number), {0}, accepting, trans)


# ---------------------------------------------------------------------------
# Boolean operations

def _require_same_shape(a: MultiTrackAutomaton, b: MultiTrackAutomaton) -> None:
    if a.tracks != b.tracks or a.alphabet != b.alphabet:
        raise ArityMismatchError("operands must share track count and alphabet")


def intersect(a: MultiTrackAutomaton, b: MultiTrackAutomaton,
              budget: Optional[int] = None) -> MultiTrackAutomaton:
    _require_same_shape(a, b)
    bud = _Budget(budget)
    b_index: dict = {}
    for src, sym, dst in b.transitions:
        b_index.setdefault((src, sym), []).append(dst)
    start = [(p, q) for p in sorted(a.initial) for q in sorted(b.initial)]
    index = {}
    for s in start:
        if s not in index:
            index[s] = len(index)
            bud.charge()
    queue = deque(index)
    trans = []
    while queue:
        p, q = queue.popleft()
        src = index[(p, q)]
        for sym, p2 in a._adj[p]:
            for q2 in b_index.get((q, sym), ()):
                key = (p2, q2)
                if key not in index:
                    index[key] = len(index)
                    bud.charge()
                    queue.append(key)
                trans.append((src, sym, index[key]))
    accepting = {i for (p, q), i in index.items()
                 if p in a.accepting and q in b.accepting}
    initial = {index[s] for s in start}
    return _freeze(a.tracks, a.alphabet, max(len(index), 1), initial, accepting, trans)


def union(a: MultiTrackAutomaton, b: MultiTrackAutomaton) -> MultiTrackAutomaton:
    _require_same_shape(a, b)
    off = a.states
    trans = list(a.transitions) + [(s + off, sym, d + off) for s, sym, d in b.transitions]
    return _freeze(a.tracks, a.alphabet, a.states + b.states,
                   set(a.initial) | {q + off for q in b.initial},
                   set(a.accepting) | {q + off for q in b.accepting},
                   trans)


def complement_relative(a: MultiTrackAutomaton,
                        budget: Optional[int] = None) -> MultiTrackAutomaton:
    """ValidPad(t) minus L(a).

    Cost scales with the full column universe, (|alphabet|+1)^t - 1, so this
    is meant for the small alphabets where the decision procedures live.
    """
    bud = _Budget(budget)
    order, dtrans, daccept = _determinize(a, bud)
    universe = list(a.column_universe())
    dead = len(order)  # explicit sink
    bud.charge()
    n = len(order) + 1
    # complete, swap acceptance, track padding masks on the fly
    index = {}
    start = (0, 0)
    index[start] = 0
    queue = deque([start])
    trans = []
    accepting = set()
    comp_accept = {q for q in range(n) if q not in daccept}
    while queue:
        q, mask = queue.popleft()
        src = index[(q, mask)]
        if q in comp_accept:
            accepting.add(src)
        for sym in universe:
            m2 = _pad_mask_step(mask, sym, a.tracks)
            if m2 is None:
                continue
            q2 = dtrans.get((q, sym), dead) if q != dead else dead
            key = (q2, m2)
            if key not in index:
                index[key] = len(index)
                bud.charge()
                queue.append(key)
            trans.append((src, sym, index[key]))
    raw = _freeze(a.tracks, a.alphabet, len(index), {0}, accepting, trans)
    return determinize_minimize(raw, budget)


def difference(a: MultiTrackAutomaton, b: MultiTrackAutomaton,
               budget: Optional[int] = None) -> MultiTrackAutomaton:
    _require_same_shape(a, b)
    return intersect(a, complement_relative(b, budget), budget)


def boolean(a: MultiTrackAutomaton, b: MultiTrackAutomaton, mode: str,
            budget: Optional[int] = None) -> MultiTrackAutomaton:
    """Set operation on languages: mode is intersect, union or difference."""
    if mode == "intersect":
        return intersect(a, b, budget)
    if mode == "union":
        return union(a, b)
    if mode == "difference":
        return difference(a, b, budget)
    raise AutomataError(f"unknown boolean mode {mode!r}")


# ---------------------------------------------------------------------------
# Track operations

def project(a: MultiTrackAutomaton, drop_track: int,
            budget: Optional[int] = None) -> MultiTrackAutomaton:
    """Drop one track (0-based index), i.e. quantify it existentially.

    Columns that were padding everywhere except the dropped track turn
    into epsilon moves; they occur only as suffixes of valid words, and
    eliminating them re-normalizes the result to ValidPad(t-1).
    """
    if a.tracks < 2:
        raise ArityMismatchError("projection needs at least 2 tracks")
    if not 0 <= drop_track < a.tracks:
        raise AutomataError(f"track index {drop_track} out of range")
    eps: dict = {q: set() for q in range(a.states)}
    real = []
    for src, sym, dst in a.transitions:
        rest = sym[:drop_track] + sym[drop_track + 1:]
        if all(x == PAD for x in rest):
            eps[src].add(dst)
        else:
            real.append((src, rest, dst))
    closure = _eps_closure(a.states, eps)
    trans = set()
    for src, rest, dst in real:
        trans.add((src, rest, dst))
    # pull real transitions backward through epsilon prefixes
    for q in range(a.states):
        for r in closure[q]:
            if r == q:
                continue
            for src, rest, dst in real:
                if src == r:
                    trans.add((q, rest, dst))
    accepting = {q for q in range(a.states) if closure[q] & a.accepting}
    return restrict_valid_pad(
        _freeze(a.tracks - 1, a.alphabet, a.states, a.initial, accepting, trans),
        budget)


def _eps_closure(n: int, eps: dict) -> dict:
    closure = {}
    for q in range(n):
        seen = {q}
        queue = deque([q])
        while queue:
            p = queue.popleft()
            for r in eps.get(p, ()):
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        closure[q] = frozenset(seen)
    return closure


def cylindrify(a: MultiTrackAutomaton, insert_at: int,
               budget: Optional[int] = None) -> MultiTrackAutomaton:
    """Insert a fresh unconstrained track at the given 0-based position."""
    if not 0 <= insert_at <= a.tracks:
        raise AutomataError(f"insert position {insert_at} out of range")
    ext = a.states
    pool = tuple(a.alphabet) + (PAD,)
    all_pad = (PAD,) * a.tracks

    def ins(sym, x):
        return sym[:insert_at] + (x,) + sym[insert_at:]

    trans = []
    for src, sym, dst in a.transitions:
        for x in pool:
            trans.append((src, ins(sym, x), dst))
    for f in a.accepting:
        for x in a.alphabet:
            trans.append((f, ins(all_pad, x), ext))
    for x in a.alphabet:
        trans.append((ext, ins(all_pad, x), ext))
    raw = _freeze(a.tracks + 1, a.alphabet, a.states + 1, a.initial,
                  set(a.accepting) | {ext}, trans)
    return restrict_valid_pad(raw, budget)


def permute_tracks(a: MultiTrackAutomaton, permutation: Sequence[int]) -> MultiTrackAutomaton:
    """Reorder tracks: output track i carries former track permutation[i]."""
    perm = tuple(permutation)
    if sorted(perm) != list(range(a.tracks)):
        raise AutomataError(f"malformed permutation {perm!r}")
    trans = [(src, tuple(sym[perm[i]] for i in range(a.tracks)), dst)
             for src, sym, dst in a.transitions]
    return _freeze(a.tracks, a.alphabet, a.states, a.initial, a.accepting, trans)


def cylindrify_permute(a: MultiTrackAutomaton,
                       spec: Union[int, Sequence[int]],
                       budget: Optional[int] = None) -> MultiTrackAutomaton:
    """Dispatch: an int inserts a fresh track there, a sequence permutes."""
    if isinstance(spec, int):
        return cylindrify(a, spec, budget)
    return permute_tracks(a, spec)


def extend_alphabet(a: MultiTrackAutomaton, alphabet: Sequence[str]) -> MultiTrackAutomaton:
    """Reinterpret over a larger alphabet (language unchanged)."""
    alphabet = check_alphabet(alphabet)
    if any(s not in alphabet for s in a.alphabet):
        raise AutomataError("new alphabet must contain the old one")
    return _freeze(a.tracks, alphabet, a.states, a.initial, a.accepting, a.transitions)


# ---------------------------------------------------------------------------
# Emptiness, shortest witness, equivalence

def emptiness_shortest(a: MultiTrackAutomaton) -> Optional[tuple]:
    """None iff the language is empty, else the shortlex-least column word."""
    back: dict = {}
    for src, sym, dst in a.transitions:
        back.setdefault(dst, set()).add(src)
    dist = {q: 0 for q in a.accepting}
    queue = deque(a.accepting)
    while queue:
        q = queue.popleft()
        for p in back.get(q, ()):
            if p not in dist:
                dist[p] = dist[q] + 1
                queue.append(p)
    live_init = [q for q in a.initial if q in dist]
    if not live_init:
        return None
    rem = min(dist[q] for q in live_init)
    cur = set(live_init)
    word = []
    while rem > 0:
        best_sym = None
        best_key = None
        for q in cur:
            for sym, dst in a._adj[q]:
                if dist.get(dst, -1) == rem - 1:
                    k = a.symbol_key(sym)
                    if best_key is None or k < best_key:
                        best_key = k
                        best_sym = sym
        nxt = set()
        for q in cur:
            nxt |= a._step_map.get((q, best_sym), _EMPTY_SET)
        cur = {q for q in nxt if dist.get(q, rem) <= rem - 1}
        word.append(best_sym)
        rem -= 1
    return tuple(word)


def is_empty(a: MultiTrackAutomaton) -> bool:
    return emptiness_shortest(a) is None


def difference_witness(a: MultiTrackAutomaton, b: MultiTrackAutomaton,
                       budget: Optional[int] = None) -> Optional[tuple]:
    """Shortlex-least column word in L(a) \\ L(b), if any."""
    return emptiness_shortest(difference(a, b, budget))


def intersection_witness(a: MultiTrackAutomaton, b: MultiTrackAutomaton,
                         budget: Optional[int] = None) -> Optional[tuple]:
    return emptiness_shortest(intersect(a, b, budget))


def included(a: MultiTrackAutomaton, b: MultiTrackAutomaton,
             budget: Optional[int] = None) -> bool:
    return difference_witness(a, b, budget) is None


def equivalent(a: MultiTrackAutomaton, b: MultiTrackAutomaton,
               budget: Optional[int] = None) -> bool:
    """Language equality, as symmetric-difference emptiness.

    Equal canonical encodings short-circuit the decision.
    """
    _require_same_shape(a, b)
    ca = determinize_minimize(a, budget)
    cb = determinize_minimize(b, budget)
    if ca == cb:
        return True
    return included(ca, cb, budget) and included(cb, ca, budget)


# ---------------------------------------------------------------------------
# Joins: the existential product used by composition, images and the
# incompatibility conditions.  relational_join(a, b, ja, jb) is the relation
#   { (x, y) | exists v: (x|v at ja) in L(a)  and  (y|v at jb) in L(b) }
# where x are a's non-join tracks and y are b's.  The join track is never
# materialized, which keeps large-alphabet products feasible.

def relational_join(a: MultiTrackAutomaton, b: MultiTrackAutomaton,
                    join_a: int, join_b: int,
                    budget: Optional[int] = None) -> MultiTrackAutomaton:
    if a.alphabet != b.alphabet:
        raise ArityMismatchError("join operands must share the alphabet")
    if not 0 <= join_a < a.tracks or not 0 <= join_b < b.tracks:
        raise AutomataError("join track out of range")
    bud = _Budget(budget)
    out_tracks = (a.tracks - 1) + (b.tracks - 1)
    if out_tracks < 1:
        raise ArityMismatchError("join result needs at least one track")

    adj_a = _augmented_adj(a)
    adj_b = _augmented_adj(b)
    acc_a = set(a.accepting) | {a.states}
    acc_b = set(b.accepting) | {b.states}

    start = [(p, q) for p in sorted(a.initial) for q in sorted(b.initial)]
    index = {}
    for s in start:
        if s not in index:
            index[s] = len(index)
            bud.charge()
    queue = deque(index)
    trans = []
    suffix_edges: dict = {}
    while queue:
        p, q = queue.popleft()
        src = index[(p, q)]
        by_join: dict = {}
        for sym, dst in adj_b.get(q, ()):
            by_join.setdefault(sym[join_b], []).append((sym, dst))
        for syma, p2 in adj_a.get(p, ()):
            for symb, q2 in by_join.get(syma[join_a], ()):
                out = (syma[:join_a] + syma[join_a + 1:]
                       + symb[:join_b] + symb[join_b + 1:])
                key = (p2, q2)
                if key not in index:
                    index[key] = len(index)
                    bud.charge()
                    queue.append(key)
                if all(x == PAD for x in out):
                    suffix_edges.setdefault(src, set()).add(index[key])
                else:
                    trans.append((src, out, index[key]))
    # a state accepts if a run of pure join-suffix columns reaches acceptance
    accepting = set()
    base_accept = {i for (p, q), i in index.items() if p in acc_a and q in acc_b}
    back: dict = {}
    for s, dsts in suffix_edges.items():
        for d in dsts:
            back.setdefault(d, set()).add(s)
    reach = set(base_accept)
    queue2 = deque(base_accept)
    while queue2:
        s = queue2.popleft()
        for p in back.get(s, ()):
            if p not in reach:
                reach.add(p)
                queue2.append(p)
    accepting = reach
    initial = {index[s] for s in start}
    return _freeze(out_tracks, a.alphabet, max(len(index), 1),
                   initial, accepting, trans)


def _augmented_adj(a: MultiTrackAutomaton) -> dict:
    """Adjacency with a synthetic finished state reading all-pad columns."""
    ext = a.states
    all_pad = (PAD,) * a.tracks
    adj = {q: list(v) for q, v in a._adj.items()}
    for f in a.accepting:
        adj.setdefault(f, []).append((all_pad, ext))
    adj[ext] = [(all_pad, ext)]
    return adj


# ---------------------------------------------------------------------------
# Language enumeration

def iter_column_words(a: MultiTrackAutomaton, max_len: int) -> Iterator[tuple]:
    """Accepted column words of length <= max_len, in shortlex order."""
    level = [((), frozenset(a.initial))]
    if a.initial & a.accepting:
        yield ()
    for _ in range(max_len):
        nxt = []
        for word, states in level:
            out: dict = {}
            for q in states:
                for sym, dst in a._adj[q]:
                    out.setdefault(sym, set()).add(dst)
            for sym in sorted(out, key=a.symbol_key):
                nxt.append((word + (sym,), frozenset(out[sym])))
        merged: dict = {}
        for word, states in nxt:
            merged[word] = merged.get(word, frozenset()) | states
        level = sorted(merged.items())
        for word, states in level:
            if states & a.accepting:
                yield word


def iter_words(a: MultiTrackAutomaton, max_len: int) -> Iterator[tuple]:
    """For 1-track automata: accepted words (tuples of symbols), shortlex."""
    if a.tracks != 1:
        raise ArityMismatchError("iter_words is for 1-track automata")
    for w in iter_column_words(a, max_len):
        yield tuple(sym[0] for sym in w)


# ---------------------------------------------------------------------------
# Small constructors

def empty_language(tracks: int, alphabet: Sequence[str]) -> MultiTrackAutomaton:
    return _freeze(tracks, check_alphabet(alphabet), 1, {0}, (), ())


def epsilon_language(tracks: int, alphabet: Sequence[str]) -> MultiTrackAutomaton:
    return _freeze(tracks, check_alphabet(alphabet), 1, {0}, {0}, ())


def full_language(alphabet: Sequence[str]) -> MultiTrackAutomaton:
    """1-track: all words over the alphabet."""
    alphabet = check_alphabet(alphabet)
    return _freeze(1, alphabet, 1, {0}, {0},
                   [(0, (x,), 0) for x in alphabet])


def word_language(word: Sequence[str], alphabet: Sequence[str]) -> MultiTrackAutomaton:
    """1-track singleton {word}."""
    alphabet = check_alphabet(alphabet)
    w = tuple(word)
    ok = set(alphabet)
    for x in w:
        if x not in ok:
            raise UnknownSymbolError(f"symbol {x!r} outside alphabet")
    trans = [(i, (x,), i + 1) for i, x in enumerate(w)]
    return _freeze(1, alphabet, len(w) + 1, {0}, {len(w)}, trans)


def from_word_list(words: Iterable[Sequence[str]],
                   alphabet: Sequence[str]) -> MultiTrackAutomaton:
    """1-track finite language."""
    alphabet = check_alphabet(alphabet)
    acc = empty_language(1, alphabet)
    for w in words:
        acc = union(acc, word_language(w, alphabet))
    return determinize_minimize(acc)


# ---------------------------------------------------------------------------
# JSON format
#
#   { "tracks": t, "alphabet": [..], "states": n, "initial": [..],
#     "accepting": [..], "transitions": [[src, [sym per track], dst], ..] }
#
# "_" encodes the padding token.  Emitted files are canonical: sorted
# transition lists, fixed key order, two-space indent, trailing newline.

def to_json_dict(a: MultiTrackAutomaton) -> dict:
    trans = sorted(a.transitions, key=lambda t: (t[0], a.symbol_key(t[1]), t[2]))
    return {
        "tracks": a.tracks,
        "alphabet": list(a.alphabet),
        "states": a.states,
        "initial": sorted(a.initial),
        "accepting": sorted(a.accepting),
        "transitions": [[src, list(sym), dst] for src, sym, dst in trans],
    }


def from_json_dict(d: dict) -> MultiTrackAutomaton:
    try:
        return _freeze(
            d["tracks"], tuple(d["alphabet"]), d["states"],
            set(d["initial"]), set(d["accepting"]),
            [(src, tuple(sym), dst) for src, sym, dst in d["transitions"]],
        )
    except KeyError as e:
        raise AutomataError(f"automaton JSON missing key: {e}") from None


def dumps(a: MultiTrackAutomaton) -> str:
    return json.dumps(to_json_dict(a), indent=2) + "\n"


def loads(text: str) -> MultiTrackAutomaton:
    return from_json_dict(json.loads(text))

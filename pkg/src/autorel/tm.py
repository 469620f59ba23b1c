"""Turing machines as instance generators for automatic-graph problems.

Configurations are words: the tape up to the head, a fused head token
"symbol|state", and the rest of the written tape.  The one-step relation
of a machine is an automatic relation over that alphabet, compiled here
directly rather than simulated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import automata as au
from . import relations as rel
from .automata import AutomataError, MultiTrackAutomaton, PAD
from .relations import AutomaticRelation


class MachineError(AutomataError):
    """Ill-formed machine description."""


class PadTransformError(AutomataError):
    """Input machine failed the exact reversibility precondition."""


LEFT = "L"
RIGHT = "R"


@dataclass(frozen=True)
class TuringMachine:
    """Deterministic single-tape machine; writes never erase to blank."""

    states: tuple
    tape: tuple  # work alphabet, blank excluded
    blank: str
    initial: str
    finals: frozenset
    delta: tuple  # tuple[((q, sym), (q2, sym2, dir)), ...] sorted

    def __post_init__(self):
        if len(set(self.states)) != len(self.states) or not self.states:
            raise MachineError("states must be non-empty and duplicate-free")
        if len(set(self.tape)) != len(self.tape):
            raise MachineError("duplicate tape symbols")
        if self.blank in self.tape:
            raise MachineError("blank must not be a tape symbol")
        for s in self.tape + (self.blank,):
            if not s or "|" in s or s in ("⊥",):
                raise MachineError(f"illegal tape symbol {s!r} ('|' is reserved)")
        if PAD in self.tape:
            raise MachineError(f"tape symbol {PAD!r} collides with the padding token")
        if self.initial not in self.states:
            raise MachineError("initial state undeclared")
        if not self.finals <= set(self.states):
            raise MachineError("final states undeclared")
        seen = set()
        for (q, s), (q2, s2, d) in self.delta:
            if q in self.finals:
                raise MachineError(f"transition from final state {q}")
            if q not in self.states or q2 not in self.states:
                raise MachineError("transition uses undeclared state")
            if s not in self.tape and s != self.blank:
                raise MachineError(f"transition reads undeclared symbol {s!r}")
            if s2 not in self.tape:
                raise MachineError(f"machines write work symbols only, got {s2!r}")
            if d not in (LEFT, RIGHT):
                raise MachineError(f"bad direction {d!r}")
            if (q, s) in seen:
                raise MachineError(f"duplicate transition on {(q, s)}")
            seen.add((q, s))

    @property
    def rules(self) -> dict:
        return dict(self.delta)


def make_machine(states: Sequence[str], tape: Sequence[str], blank: str,
                 initial: str, finals: Iterable[str],
                 delta: dict) -> TuringMachine:
    return TuringMachine(
        states=tuple(states), tape=tuple(tape), blank=blank, initial=initial,
        finals=frozenset(finals),
        delta=tuple(sorted(delta.items())),
    )


# ---------------------------------------------------------------------------
# Configuration encoding

def head_token(sym: str, state: str) -> str:
    return f"{sym}|{state}"


def split_head_token(token: str) -> tuple:
    sym, _, state = token.partition("|")
    return sym, state


def config_alphabet(t: TuringMachine) -> tuple:
    """Work symbols plus fused head tokens, in declaration order."""
    toks = list(t.tape)
    for sym in t.tape + (t.blank,):
        for q in t.states:
            toks.append(head_token(sym, q))
    return tuple(toks)


def initial_config(t: TuringMachine) -> tuple:
    return (head_token(t.blank, t.initial),)


def configs_language(t: TuringMachine,
                     alphabet: Optional[tuple] = None) -> MultiTrackAutomaton:
    """All configuration words: written prefix, head token, written suffix;
    a blank under the head only at the very end."""
    alpha = alphabet if alphabet is not None else config_alphabet(t)
    trans = []
    for g in t.tape:
        trans.append((0, (g,), 0))
        trans.append((1, (g,), 1))
    for q in t.states:
        for g in t.tape:
            trans.append((0, (head_token(g, q),), 1))
        trans.append((0, (head_token(t.blank, q),), 2))
    return au._freeze(1, alpha, 3, {0}, {1, 2}, trans)


def decode_config(word: Sequence[str]) -> Optional[tuple]:
    """(left, head symbol, state, right) or None when not a configuration."""
    left = []
    head = None
    right = []
    for tok in word:
        if "|" in tok:
            if head is not None:
                return None
            head = split_head_token(tok)
        elif head is None:
            left.append(tok)
        else:
            right.append(tok)
    if head is None:
        return None
    return tuple(left), head[0], head[1], tuple(right)


def encode_config(left: Sequence[str], sym: str, state: str,
                  right: Sequence[str]) -> tuple:
    return tuple(left) + (head_token(sym, state),) + tuple(right)


# ---------------------------------------------------------------------------
# One-step relation

def config_graph(t: TuringMachine) -> AutomaticRelation:
    """Automatic relation holding exactly the one-step successor pairs.

    Head moves off the left end have no successor; a right move past the
    written region extends it with the blank head token.
    """
    alpha = config_alphabet(t)
    pre, copy, end = 0, 1, 2
    nstates = 3
    ids: dict = {}

    def state(key):
        nonlocal nstates
        if key not in ids:
            ids[key] = nstates
            nstates += 1
        return ids[key]

    trans = []
    for g in t.tape:
        trans.append((pre, (g, g), pre))
        trans.append((copy, (g, g), copy))
    for (q, x), (q2, y, d) in t.delta:
        if d == RIGHT:
            if x != t.blank:
                rs = state(("rs", q2))
                trans.append((pre, (head_token(x, q), y), rs))
                for g in t.tape:
                    trans.append((rs, (g, head_token(g, q2)), copy))
                trans.append((rs, (PAD, head_token(t.blank, q2)), end))
            else:
                rb = state(("rb", q2))
                trans.append((pre, (head_token(x, q), y), rb))
                trans.append((rb, (PAD, head_token(t.blank, q2)), end))
        else:
            lm = state(("lm", q2))
            for g in t.tape:
                trans.append((pre, (g, head_token(g, q2)), lm))
            if x != t.blank:
                trans.append((lm, (head_token(x, q), y), copy))
            else:
                trans.append((lm, (head_token(x, q), y), end))
    return rel._wrap(au._freeze(2, alpha, nstates, {pre}, {copy, end}, trans))


def machine_init_configs(t: TuringMachine,
                         budget: Optional[int] = None) -> MultiTrackAutomaton:
    """Configurations with no predecessor (in-degree 0 in the step graph)."""
    graph = config_graph(t)
    no_pred = rel.init_set(graph, budget)
    return au.intersect(no_pred, configs_language(t), budget)


# ---------------------------------------------------------------------------
# Well-formedness report

@dataclass(frozen=True)
class WfReport:
    """Exact checks are decisive; the backward walk is bounded sampling only
    (absence of infinite backward paths is not decidable here)."""

    initial_no_predecessor: bool
    functional: bool
    co_functional: bool
    backward_cycles: tuple  # configs found on a backward cycle
    backward_deep: tuple  # configs whose backward chain hit the depth cap
    sampled: int
    depth: int

    @property
    def exact_ok(self) -> bool:
        return self.initial_no_predecessor and self.functional and self.co_functional

    @property
    def backward_ok(self) -> bool:
        return not self.backward_cycles and not self.backward_deep


def wf_checks(t: TuringMachine, depth: int = 32, sample_len: int = 4,
              sample_cap: int = 60, budget: Optional[int] = None) -> WfReport:
    graph = config_graph(t)
    inits = machine_init_configs(t, budget)
    initial_ok = au.membership(inits, (initial_config(t),))
    func = rel.functional(graph, budget)
    cofunc = rel.co_functional(graph, budget)

    cycles = []
    deep = []
    sampled = 0
    for w in au.iter_words(configs_language(t), sample_len):
        if sampled >= sample_cap:
            break
        sampled += 1
        seen = {w}
        cur = w
        for step in range(depth):
            preds = rel.predecessor_words(graph, cur, len(cur) + 2)
            if not preds:
                break
            cur = preds[0]
            if cur in seen:
                cycles.append(w)
                break
            seen.add(cur)
        else:
            deep.append(w)
    return WfReport(
        initial_no_predecessor=initial_ok,
        functional=func,
        co_functional=cofunc,
        backward_cycles=tuple(cycles),
        backward_deep=tuple(deep),
        sampled=sampled,
        depth=depth,
    )


# ---------------------------------------------------------------------------
# The tagged colorability gadget

def _prepend_column(base: MultiTrackAutomaton, col: tuple) -> MultiTrackAutomaton:
    """New automaton accepting col . w for w accepted by base."""
    n = base.states
    trans = list(base.transitions) + [(n, col, q) for q in base.initial]
    accepting = set(base.accepting)
    return au._freeze(base.tracks, base.alphabet, n + 1, {n}, accepting, trans)


def _equal_pairs(lang: MultiTrackAutomaton) -> MultiTrackAutomaton:
    """{(w, w) : w in lang} as a 2-track automaton."""
    trans = [(src, (sym[0], sym[0]), dst) for src, sym, dst in lang.transitions]
    return au._freeze(2, lang.alphabet, lang.states, lang.initial,
                      lang.accepting, trans)


def coloring_gadget(t: TuringMachine, k: int = 2,
               budget: Optional[int] = None) -> AutomaticRelation:
    """Tagged configuration graph whose 2-regular colorability encodes the
    regularity of the machine's reachable set.

    Vertices B.c / R.c; edges B.c -> R.c, R.c -> B.c' for steps c -> c',
    and B.c_init -> B.c' for every other predecessor-free configuration.
    For k > 2 a (k-2)-clique of fresh letters is wired to every vertex
    incident to an edge.
    """
    if k < 2:
        raise AutomataError("k must be >= 2")
    base_alpha = config_alphabet(t)
    for tag in ("B", "R"):
        if tag in base_alpha:
            raise MachineError(f"tag symbol {tag!r} collides with the machine alphabet")
    clique = tuple(f"K#{i}" for i in range(1, k - 1))
    alpha = base_alpha + ("B", "R") + clique

    configs = au.extend_alphabet(configs_language(t), alpha)
    step = au.extend_alphabet(config_graph(t).base, alpha)

    blue_red = _prepend_column(_equal_pairs(configs), ("B", "R"))
    red_blue = _prepend_column(step, ("R", "B"))

    c_init = initial_config(t)
    inits = au.extend_alphabet(machine_init_configs(t, budget), alpha)
    others = au.difference(inits, au.word_language(c_init, alpha), budget)
    from . import recognizable as rc
    init_edges = _prepend_column(
        rc.product_relation(au.word_language(c_init, alpha), others, budget).base,
        ("B", "B"))

    edges = au.union(au.union(blue_red, red_blue), init_edges)

    if k > 2:
        tagged = rel._wrap(edges)
        incident = au.determinize_minimize(
            au.union(rel.project_first(tagged), rel.project_second(tagged)), budget)
        parts = [edges]
        for i, ki in enumerate(clique):
            ki_lang = au.word_language((ki,), alpha)
            parts.append(rc.product_relation(ki_lang, incident, budget).base)
            for j, kj in enumerate(clique):
                if i != j:
                    parts.append(rc.product_relation(
                        ki_lang, au.word_language((kj,), alpha), budget).base)
        acc = parts[0]
        for p in parts[1:]:
            acc = au.union(acc, p)
        edges = acc
    return rel._wrap(au.determinize_minimize(edges, budget))


# ---------------------------------------------------------------------------
# Bounded reachability

@dataclass(frozen=True)
class ReachResult:
    words: tuple
    truncated: bool


def reach_bfs(r: AutomaticRelation, start: Sequence[str], max_len: int,
              max_steps: int = 10_000) -> ReachResult:
    """Forward closure from one word, capped by word length and step count."""
    from collections import deque
    start = tuple(start)
    seen = {start}
    queue = deque([start])
    truncated = False
    steps = 0
    while queue:
        cur = queue.popleft()
        steps += 1
        if steps > max_steps:
            truncated = True
            break
        for nxt in rel.successor_words(r, cur, max_len + 1):
            if len(nxt) > max_len:
                truncated = True
            elif nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    order = {s: i for i, s in enumerate(r.alphabet)}
    words = sorted(seen, key=lambda w: (len(w), [order.get(c, len(order)) for c in w]))
    return ReachResult(words=tuple(words), truncated=truncated)


# ---------------------------------------------------------------------------
# The padding construction: simulate one step, then stretch the zone of
# fresh letters from a^n b^n to a^{n+1} b^{n+1}.
#
# Reversibility discipline: exact co-determinism over all configuration
# words (reachable or not) forces, for every state, that entering rules
# share one head direction and write pairwise distinct symbols.  The
# construction obeys this everywhere:
#   * each cycle ends with the simulated step itself, writing the input
#     machine's own output letter in its own direction, so the entries of
#     every run state inherit the input machine's injectivity;
#   * scans never rewrite a symbol they also scan over: sweep turning
#     points write the moving end marker '#', and the trigger cell holds a
#     marked letter until the final step consumes it;
#   * each sweep edits the zone at most once (append a b, or convert a b
#     into an a): blank-consuming steps run two sweeps, other steps three,
#     which keeps the visible a/b imbalance within 2 even though the cell
#     under the head never shows in the projection;
#   * the very first step is fused into the bootstrap that seeds the zone,
#     and writes a "cell-one twin" of the output letter.  Twins live only
#     in cell one and are rewritten as twins, so the boot entry can never
#     collide with the regular thread of the same rule.

def pad_transform(t: TuringMachine, budget: Optional[int] = None) -> TuringMachine:
    """Compile a reversible machine into one whose step also grows an
    a^n b^n zone; halting input gives a finite reachable set, diverging
    input a reachable set with a non-regular {a,b}-projection."""
    graph = config_graph(t)
    if not rel.functional(graph, budget):
        raise PadTransformError("input machine is not deterministic on configurations")
    if not rel.co_functional(graph, budget):
        raise PadTransformError("input machine is not reversible (exact check failed)")

    fresh = ("a", "b", "#")
    for s in fresh:
        if s in t.tape or s == t.blank:
            raise PadTransformError(f"fresh symbol {s!r} collides with the tape alphabet")
    mark = {x: f"{x}@" for x in list(t.tape) + ["a"]}
    twin = {x: f"{x}~" for x in t.tape}
    twin_mark = {x: f"{x}~@" for x in t.tape}
    boot_mark = "^@"
    extras = list(mark.values()) + list(twin.values()) \
        + list(twin_mark.values()) + [boot_mark]
    for m in extras:
        if m in t.tape or m == t.blank:
            raise PadTransformError(f"symbol {m!r} collides with the tape alphabet")

    tape2 = tuple(t.tape) + fresh + tuple(extras)

    def run(q):
        return f"run:{q}"

    states = [run(q) for q in t.states]
    delta: dict = {}

    def add(q, s, q2, s2, d):
        if (q, s) in delta:
            raise MachineError(f"internal: duplicate transition on {(q, s)}")
        delta[(q, s)] = (q2, s2, d)

    def new_state(name):
        states.append(name)
        return name

    rules = sorted(t.delta)
    for rid, ((q, x), (q2, y, d)) in enumerate(rules):
        if x != t.blank:
            # three trips, one zone edit each (append b, convert b to a,
            # append b): any tighter schedule pushes the visible a/b
            # imbalance past 2 once the cell under the head is counted out
            out1 = new_state(f"out1:{rid}")
            ap1 = new_state(f"ap1:{rid}")
            bk1 = new_state(f"back1:{rid}")
            out2 = new_state(f"out2:{rid}")
            cv2 = new_state(f"conv2:{rid}")
            bk2 = new_state(f"back2:{rid}")
            out3 = new_state(f"out3:{rid}")
            ap3 = new_state(f"ap3:{rid}")
            bk3 = new_state(f"back3:{rid}")
            add(run(q), x, out1, mark[x], RIGHT)
            add(run(q), twin[x], out1, twin_mark[x], RIGHT)
            for g in t.tape:
                add(out1, g, out1, g, RIGHT)
            add(out1, "a", out1, "a", RIGHT)
            add(out1, "b", out1, "b", RIGHT)
            add(out1, "#", ap1, "b", RIGHT)          # append over the marker
            add(ap1, t.blank, bk1, "#", LEFT)        # re-place the marker
            for g in t.tape:
                add(bk1, g, bk1, g, LEFT)
            add(bk1, "a", bk1, "a", LEFT)
            add(bk1, "b", bk1, "b", LEFT)
            add(bk1, mark[x], out2, mark[x], RIGHT)  # bounce
            add(bk1, twin_mark[x], out2, twin_mark[x], RIGHT)
            for g in t.tape:
                add(out2, g, out2, g, RIGHT)
            add(out2, "a", out2, "a", RIGHT)
            add(out2, "b", cv2, "a", RIGHT)          # convert
            add(cv2, "b", cv2, "b", RIGHT)
            add(cv2, "#", bk2, "#", LEFT)            # turn at the marker
            for g in t.tape:
                add(bk2, g, bk2, g, LEFT)
            add(bk2, "a", bk2, "a", LEFT)
            add(bk2, "b", bk2, "b", LEFT)
            add(bk2, mark[x], out3, mark[x], RIGHT)  # bounce again
            add(bk2, twin_mark[x], out3, twin_mark[x], RIGHT)
            for g in t.tape:
                add(out3, g, out3, g, RIGHT)
            add(out3, "a", out3, "a", RIGHT)
            add(out3, "b", out3, "b", RIGHT)
            add(out3, "#", ap3, "b", RIGHT)          # append over the marker
            add(ap3, t.blank, bk3, "#", LEFT)        # re-place the marker
            for g in t.tape:
                add(bk3, g, bk3, g, LEFT)
            add(bk3, "a", bk3, "a", LEFT)
            add(bk3, "b", bk3, "b", LEFT)
            add(bk3, mark[x], run(q2), y, d)         # the simulated step
            add(bk3, twin_mark[x], run(q2), twin[y], d)  # same step at cell one
        else:
            # two trips: each converts one b; appends 2 then 1
            out1 = new_state(f"out1:{rid}")
            out1b = new_state(f"out1B:{rid}")
            ap1 = new_state(f"ap1:{rid}")
            tn1 = new_state(f"tn1:{rid}")
            back1 = new_state(f"back1:{rid}")
            out2 = new_state(f"out2:{rid}")
            out2b = new_state(f"out2B:{rid}")
            tn2 = new_state(f"tn2:{rid}")
            back2 = new_state(f"back2:{rid}")
            add(run(q), "a", out1, mark["a"], RIGHT)
            add(out1, "a", out1, "a", RIGHT)
            add(out1, "b", out1b, "a", RIGHT)        # convert #1
            add(out1b, "b", out1b, "b", RIGHT)
            add(out1b, "#", ap1, "b", RIGHT)
            add(ap1, t.blank, tn1, "b", RIGHT)
            add(tn1, t.blank, back1, "#", LEFT)
            add(back1, "a", back1, "a", LEFT)
            add(back1, "b", back1, "b", LEFT)
            add(back1, mark["a"], out2, mark["a"], RIGHT)  # bounce
            add(out2, "a", out2, "a", RIGHT)
            add(out2, "b", out2b, "a", RIGHT)        # convert #2
            add(out2b, "b", out2b, "b", RIGHT)
            add(out2b, "#", tn2, "b", RIGHT)
            add(tn2, t.blank, back2, "#", LEFT)
            add(back2, "a", back2, "a", LEFT)
            add(back2, "b", back2, "b", LEFT)
            add(back2, mark["a"], run(q2), y, d)     # the simulated step

    # bootstrap: from a fresh initial state, lay out mark a a b b #, sweep
    # back, and take the machine's first step as the boot's last transition,
    # writing the cell-one twin of its output letter
    first = t.rules.get((t.initial, t.blank))
    init_state = run(t.initial)
    if first is not None and t.initial not in t.finals:
        q2, y, d = first
        init_state = new_state("boot:0")
        v = [new_state(f"boot:{i}") for i in range(1, 7)]
        add(init_state, t.blank, v[0], boot_mark, RIGHT)
        add(v[0], t.blank, v[1], "a", RIGHT)
        add(v[1], t.blank, v[2], "a", RIGHT)
        add(v[2], t.blank, v[3], "b", RIGHT)
        add(v[3], t.blank, v[4], "b", RIGHT)
        add(v[4], t.blank, v[5], "#", LEFT)
        add(v[5], "a", v[5], "a", LEFT)
        add(v[5], "b", v[5], "b", LEFT)
        add(v[5], boot_mark, run(q2), twin[y], d)    # the first step

    finals = frozenset(run(q) for q in t.finals)
    return make_machine(states, tape2, t.blank, init_state, finals, delta)


# ---------------------------------------------------------------------------
# Fixture machines

def halting_fixture() -> TuringMachine:
    """Three states, reversible, halts after two steps on the empty tape."""
    return make_machine(
        states=("q0", "q1", "qf"), tape=("1",), blank="_",
        initial="q0", finals=("qf",),
        delta={("q0", "_"): ("q1", "1", RIGHT),
               ("q1", "_"): ("qf", "1", LEFT)},
    )


def looping_fixture() -> TuringMachine:
    """One live state, reversible, writes 1s to the right forever."""
    return make_machine(
        states=("q0",), tape=("1",), blank="_",
        initial="q0", finals=(),
        delta={("q0", "_"): ("q0", "1", RIGHT)},
    )


def mixed_fixture() -> TuringMachine:
    """Reversible, halts in three steps, and re-reads a written symbol on
    the way (exercises non-blank steps)."""
    return make_machine(
        states=("q0", "q1", "q2", "qf"), tape=("1", "2"), blank="_",
        initial="q0", finals=("qf",),
        delta={("q0", "_"): ("q1", "1", RIGHT),
               ("q1", "_"): ("q2", "1", LEFT),
               ("q2", "1"): ("qf", "2", RIGHT)},
    )


def two_cycle_fixture() -> TuringMachine:
    """Contains a 2-cycle in its configuration graph (not well-founded)."""
    return make_machine(
        states=("p", "q"), tape=("x", "y"), blank="_",
        initial="p", finals=(),
        delta={("p", "x"): ("q", "x", RIGHT),
               ("q", "y"): ("p", "y", LEFT)},
    )


# ---------------------------------------------------------------------------
# JSON format

def machine_to_json_dict(t: TuringMachine) -> dict:
    return {
        "states": list(t.states),
        "tape": list(t.tape),
        "blank": t.blank,
        "initial": t.initial,
        "final": sorted(t.finals),
        "delta": [[q, s, q2, s2, d] for (q, s), (q2, s2, d) in t.delta],
    }


def machine_from_json_dict(d: dict) -> TuringMachine:
    try:
        return make_machine(
            states=d["states"], tape=d["tape"], blank=d["blank"],
            initial=d["initial"], finals=d["final"],
            delta={(q, s): (q2, s2, dd) for q, s, q2, s2, dd in d["delta"]},
        )
    except KeyError as e:
        raise MachineError(f"machine JSON missing key: {e}") from None


def dumps_machine(t: TuringMachine) -> str:
    return json.dumps(machine_to_json_dict(t), indent=2) + "\n"


def loads_machine(text: str) -> TuringMachine:
    return machine_from_json_dict(json.loads(text))

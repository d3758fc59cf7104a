"""Explicit game arenas for every automaton game used by the library.

Vertex labels are tuples whose first entry names the phase of a round:

* ``("V1", x, y)``: start of a round, Eve's token at ``x``, Adam's at ``y``;
* ``("V2", x, a, y)``: letter ``a`` has been chosen;
* ``("V3", x, y, a)``: one player has moved on ``a``, the other is to move;
* ``("EVE_WINS",)`` / ``("ADAM_WINS",)``: absorbing sinks used when a player
  has no transition on the chosen letter or a race game has been decided.

Eve's component always comes first. In k-token arenas ``y`` is a sorted
tuple of Adam's token states, with ``-1`` marking a token that died.

Edges carry a priority and, for moves on an automaton, the transition taken.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
import itertools

from .automaton import delay_k, require_buchi, require_same_alphabet, DEFAULT_STATE_CAP
from .errors import InputError, ResourceLimitError

DEFAULT_ARENA_CAP = 3_000_000

EVE_WINS = ("EVE_WINS",)
ADAM_WINS = ("ADAM_WINS",)
DEAD = -1


class Player(IntEnum):
    EVE = 0
    ADAM = 1

    def __str__(self):
        return "Eve" if self is Player.EVE else "Adam"


EVE, ADAM = Player.EVE, Player.ADAM


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    priority: int
    kind: str  # letter | eve | adam | joker | sink
    move: tuple = None  # automaton transition (src, letter, priority, dst), if any


@dataclass
class GameArena:
    labels: list
    owner: list
    edges: list
    initial: int
    eve_aut: object = None
    adam_aut: object = None
    index: dict = field(default_factory=dict)

    @cached_property
    def succ(self):
        out = [[] for _ in self.labels]
        for i, e in enumerate(self.edges):
            out[e.src].append(i)
        return out

    @cached_property
    def pred(self):
        inc = [[] for _ in self.labels]
        for e in self.edges:
            inc[e.dst].append(e.src)
        return inc

    def __len__(self):
        return len(self.labels)

    def vertex(self, label):
        return self.index[label]

    def priorities(self):
        return {e.priority for e in self.edges}

    def describe(self, v):
        label = self.labels[v]
        kind = label[0]
        if kind in ("EVE_WINS", "ADAM_WINS"):
            return kind
        X, Y = self.eve_aut, self.adam_aut

        def ystr(y):
            if isinstance(y, tuple):
                return "[" + ",".join("-" if t == DEAD else Y.states[t] for t in y) + "]"
            return Y.states[y]

        if kind == "V1":
            return f"V1({X.states[label[1]]},{ystr(label[2])})"
        if kind == "V2":
            return f"V2({X.states[label[1]]},{X.alphabet[label[2]]},{ystr(label[3])})"
        parts = [X.states[label[1]], ystr(label[2]), X.alphabet[label[3]]]
        if len(label) > 4:
            parts.append(X.states[label[4]])
        return "V3(" + ",".join(parts) + ")"

    def dump(self):
        """Line-based text dump: ``V <id> <owner> <payload>`` then ``E <src> <dst> <priority>``."""
        lines = [f"V {v} {self.owner[v]} {self.describe(v)}" for v in range(len(self.labels))]
        lines += [f"E {e.src} {e.dst} {e.priority}" for e in self.edges]
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self, cap):
        self.cap = cap
        self.labels = []
        self.owner = []
        self.index = {}
        self.edges = []
        self.todo = []

    def vertex(self, label, owner):
        v = self.index.get(label)
        if v is None:
            v = len(self.labels)
            if v >= self.cap:
                raise ResourceLimitError(f"arena exceeds {self.cap} vertices")
            self.index[label] = v
            self.labels.append(label)
            self.owner.append(owner)
            self.todo.append(v)
        return v

    def edge(self, s, d, priority, kind, move=None):
        self.edges.append(Edge(s, d, priority, kind, move))

    def sink(self, label, loop_priority):
        new = label not in self.index
        v = self.vertex(label, ADAM)
        if new:
            self.todo.remove(v)
            self.edge(v, v, loop_priority, "sink")
        return v

    def finish(self, initial, eve_aut, adam_aut):
        arena = GameArena(self.labels, self.owner, self.edges, initial, eve_aut, adam_aut, self.index)
        for v, outs in enumerate(arena.succ):
            assert outs, f"deadlock at {arena.describe(v)}"
        return arena


def _eve_first(X, Y, roots, mode, cap):
    """Rounds of the form: Adam picks a letter, Eve moves on X, Adam moves on Y.

    ``mode`` is ``parity`` (Eve accepting -> 2, Adam accepting -> 1),
    ``sprint`` (first accepting transition decides the play, Eve checked
    first; [0,1] priorities), or ``joker`` (parity, plus Adam may instead
    take any transition from Eve's previous state, on a priority-2 edge).
    """
    b = _Builder(cap)
    race = mode == "sprint"
    joker = mode == "joker"
    eve_sink = (EVE_WINS, 0 if race else 2)
    adam_sink = (ADAM_WINS, 1)
    k = len(X.alphabet)
    root_ids = [b.vertex(("V1", x, y), ADAM) for x, y in roots]
    while b.todo:
        v = b.todo.pop()
        label = b.labels[v]
        kind = label[0]
        if kind == "V1":
            _, x, y = label
            for a in range(k):
                b.edge(v, b.vertex(("V2", x, a, y), EVE), 0, "letter")
        elif kind == "V2":
            _, x, a, y = label
            moves = X.out[x][a]
            if not moves:
                b.edge(v, b.sink(*adam_sink), 0, "sink")
            for c, x2 in moves:
                t = (x, a, c, x2)
                if race and c == 2:
                    b.edge(v, b.sink(*eve_sink), 0, "eve", t)
                    continue
                nxt = ("V3", x2, y, a, x) if joker else ("V3", x2, y, a)
                b.edge(v, b.vertex(nxt, ADAM), 0 if race or c != 2 else 2, "eve", t)
        else:
            x2, y, a = label[1], label[2], label[3]
            moves = Y.out[y][a]
            if not moves and not joker:
                b.edge(v, b.sink(*eve_sink), 0, "sink")
            for c, y2 in moves:
                t = (y, a, c, y2)
                if race and c == 2:
                    b.edge(v, b.sink(*adam_sink), 0, "adam", t)
                    continue
                b.edge(v, b.vertex(("V1", x2, y2), ADAM), 1 if c == 2 and not race else 0, "adam", t)
            if joker:
                x = label[4]
                for c, y2 in X.out[x][a]:
                    b.edge(v, b.vertex(("V1", x2, y2), ADAM), 2, "joker", (x, a, c, y2))
    return b.finish(root_ids[0], X, Y)


def _adam_first(X, Y, roots, cap):
    """Simulation rounds: Adam picks a letter and moves on Y, then Eve moves on X."""
    b = _Builder(cap)
    k = len(X.alphabet)
    root_ids = [b.vertex(("V1", x, y), ADAM) for x, y in roots]
    while b.todo:
        v = b.todo.pop()
        label = b.labels[v]
        kind = label[0]
        if kind == "V1":
            _, x, y = label
            for a in range(k):
                b.edge(v, b.vertex(("V2", x, a, y), ADAM), 0, "letter")
        elif kind == "V2":
            _, x, a, y = label
            moves = Y.out[y][a]
            if not moves:
                b.edge(v, b.sink(EVE_WINS, 2), 0, "sink")
            for c, y2 in moves:
                b.edge(v, b.vertex(("V3", x, y2, a), EVE), 1 if c == 2 else 0, "adam", (y, a, c, y2))
        else:
            _, x, y2, a = label
            moves = X.out[x][a]
            if not moves:
                b.edge(v, b.sink(ADAM_WINS, 1), 0, "sink")
            for c, x2 in moves:
                b.edge(v, b.vertex(("V1", x2, y2), ADAM), 2 if c == 2 else 0, "eve", (x, a, c, x2))
    return b.finish(root_ids[0], X, Y)


def all_pairs(X, Y):
    return [(x, y) for x in range(X.n) for y in range(Y.n)]


def build_g1(A, cap=DEFAULT_ARENA_CAP):
    """The 1-token game on ``A`` as a [0,2] arena over the pairs reachable on a common word."""
    require_buchi(A)
    return _eve_first(A, A, [(A.initial, A.initial)], "parity", cap)


def build_stepahead(X, Y, cap=DEFAULT_ARENA_CAP, roots=None):
    """Eve on ``X`` moves before Adam on ``Y`` in every round."""
    require_buchi(X, Y)
    require_same_alphabet(X, Y)
    return _eve_first(X, Y, roots or [(X.initial, Y.initial)], "parity", cap)


def build_simulation(X, Y, cap=DEFAULT_ARENA_CAP, roots=None):
    """Eve wins iff ``X`` simulates ``Y``: Adam moves on ``Y`` first, Eve answers on ``X``."""
    require_buchi(X, Y)
    require_same_alphabet(X, Y)
    return _adam_first(X, Y, roots or [(X.initial, Y.initial)], cap)


def build_sprint(X, p, Y, q, cap=DEFAULT_ARENA_CAP, roots=None):
    """[0,1] race arena: Eve on ``(X, p)`` must take an accepting transition no
    later than Adam does on ``(Y, q)``; plays with no accepting move are Eve's."""
    require_buchi(X, Y)
    require_same_alphabet(X, Y)
    return _eve_first(X, Y, roots or [(p, q)], "sprint", cap)


def build_joker(A, cap=DEFAULT_ARENA_CAP):
    """Joker game on ``A`` with every pair of states as a round start.

    A Joker move lets Adam take any transition from the state Eve's token
    occupied at the start of the round; the ``V3`` labels therefore also
    record that state. Joker edges carry priority 2, so Adam loses unless
    he plays Joker finitely often.
    """
    require_buchi(A)
    roots = [(A.initial, A.initial)] + [r for r in all_pairs(A, A) if r != (A.initial, A.initial)]
    return _eve_first(A, A, roots, "joker", cap)


def build_k_token(A, k, cap=DEFAULT_ARENA_CAP):
    """Eve's token against ``k`` Adam tokens; an Adam move gets priority 1 when
    at least one of his chosen transitions is accepting."""
    require_buchi(A)
    if k < 1:
        raise InputError("k must be positive")
    estimate = k * A.n ** (k + 1) * len(A.alphabet)
    if estimate > cap:
        raise ResourceLimitError(f"k-token arena estimate {estimate} exceeds cap {cap}")
    b = _Builder(cap)
    nletters = len(A.alphabet)
    start = b.vertex(("V1", A.initial, (A.initial,) * k), ADAM)
    while b.todo:
        v = b.todo.pop()
        label = b.labels[v]
        kind = label[0]
        if kind == "V1":
            _, x, ys = label
            for a in range(nletters):
                b.edge(v, b.vertex(("V2", x, a, ys), EVE), 0, "letter")
        elif kind == "V2":
            _, x, a, ys = label
            moves = A.out[x][a]
            if not moves:
                b.edge(v, b.sink(ADAM_WINS, 1), 0, "sink")
            for c, x2 in moves:
                b.edge(v, b.vertex(("V3", x2, ys, a), ADAM), 2 if c == 2 else 0, "eve", (x, a, c, x2))
        else:
            _, x2, ys, a = label
            options = [A.out[y][a] if y != DEAD and A.out[y][a] else ((0, DEAD),) for y in ys]
            for combo in sorted(set(itertools.product(*options))):
                targets = tuple(sorted(d for _, d in combo))
                if all(t == DEAD for t in targets):
                    b.edge(v, b.sink(EVE_WINS, 2), 0, "sink")
                    continue
                accepting = any(c == 2 for c, _ in combo)
                b.edge(v, b.vertex(("V1", x2, targets), ADAM), 1 if accepting else 0, "adam")
    return b.finish(start, A, A)


def build_lookahead(A, k, cap=DEFAULT_ARENA_CAP, state_cap=DEFAULT_STATE_CAP):
    """Simulation game between ``A`` and its ``k``-fold delay, Eve on ``A``."""
    return build_simulation(A, delay_k(A, k, state_cap), cap)

"""Independent ground truth for testing: instance generators with known
properties, bounded lasso comparison, and two arena solvers that share no
code with the rank-lifting solver."""

from collections import deque
from dataclasses import dataclass
import itertools
import random
import string

from .arena import ADAM, EVE, build_simulation
from .automaton import ParityAutomaton, Lasso, disjoint_union, is_deterministic, omega_accepting
from .errors import InputError, ResourceLimitError

KINDS = ("universal_sd", "dba_copies", "raw_random")
BRUTE_FORCE_CAP = 60


@dataclass(frozen=True)
class GenSpec:
    kind: str
    states: int
    alphabet_size: int = 2
    copies: int = 2
    density: float = 0.3
    accept_prob: float = 0.5
    seed: int = 0
    # dba_copies only: copy i accepts only on letter i mod |alphabet|, so Eve
    # has to guess the next letter; the language is unchanged.
    sabotage: bool = False

    def validate(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown generator kind {self.kind!r}")
        if self.states < 1 or self.alphabet_size < 1 or self.copies < 1:
            raise InputError("states, alphabet size and copies must be positive")
        if not 0 < self.density <= 1:
            raise InputError("density must lie in (0, 1]")
        if not 0 <= self.accept_prob <= 1:
            raise InputError("accept_prob must lie in [0, 1]")
        if self.sabotage and self.copies < self.alphabet_size:
            raise InputError("sabotaged copies need at least one copy per letter")


def _letters(k):
    return list(string.ascii_lowercase[:k]) if k <= 26 else [f"l{i}" for i in range(k)]


def gen(spec):
    """Generate ``(automaton, witness)``; the witness is a language-equivalent
    deterministic automaton, or ``None`` for ``raw_random``."""
    spec.validate()
    rng = random.Random(spec.seed)
    n, k = spec.states, spec.alphabet_size
    letters = _letters(k)
    names = [f"q{i}" for i in range(n)]
    trans = []
    if spec.kind == "universal_sd":
        for q in range(n):
            for a in range(k):
                target = rng.randrange(n)
                trans.append((q, a, 2, target))
                for d in range(n):
                    # a rejecting copy of the accepting edge would be redundant
                    if rng.random() < spec.density and d != target:
                        trans.append((q, a, 1, d))
        A = ParityAutomaton(names, letters, 0, trans)
        witness = ParityAutomaton(["u"], letters, 0, [(0, a, 2, 0) for a in range(k)])
        return A, witness
    if spec.kind == "raw_random":
        for q in range(n):
            for a in range(k):
                for d in range(n):
                    if rng.random() < spec.density:
                        trans.append((q, a, 2 if rng.random() < spec.accept_prob else 1, d))
        return ParityAutomaton(names, letters, 0, trans), None

    c = spec.copies
    delta = {}
    for q in range(n):
        for a in range(k):
            delta[q, a] = (rng.randrange(n), 2 if rng.random() < spec.accept_prob else 1)
    D0 = ParityAutomaton(
        [f"d{i}" for i in range(n)], letters, 0, [(q, a, pri, d) for (q, a), (d, pri) in delta.items()]
    )
    for q in range(n):
        for i in range(c):
            for a in range(k):
                d, pri = delta[q, a]
                subset = {j for j in range(c) if rng.random() < spec.density}
                if not subset:
                    subset.add(rng.randrange(c))
                if spec.sabotage:
                    for b in range(k):
                        if not any(j % k == b for j in subset):
                            subset.add(b + k * rng.randrange((c - b + k - 1) // k))
                    if i % k != a:
                        pri = 1
                for j in sorted(subset):
                    trans.append((q * c + i, a, pri, d * c + j))
    names = [f"d{q}.{i}" for q in range(n) for i in range(c)]
    return ParityAutomaton(names, letters, 0, trans), D0


# --------------------------------------------------------------------------
# lassos


def lasso_signatures(A, max_u, max_v):
    """Yield ``(lasso, states accepting it)`` for every lasso with
    ``|u| <= max_u`` and ``1 <= |v| <= max_v``, shortest words first."""
    k = len(A.alphabet)
    pre_edges = [[(q, d) for q in range(A.n) for _, d in A.out[q][b]] for b in range(k)]

    def pre(b, X):
        return frozenset(q for q, d in pre_edges[b] if d in X)

    cache = {}
    for total in range(1, max_u + max_v + 1):
        for lu in range(0, min(max_u, total - 1) + 1):
            lv = total - lu
            if lv > max_v:
                continue
            for v in itertools.product(range(k), repeat=lv):
                for u in itertools.product(range(k), repeat=lu):
                    X = omega_accepting(A, v) if not u else pre(u[0], cache[u[1:], v])
                    cache[u, v] = X
                    yield Lasso(u, v), X


def bounded_lasso_equiv(A, B, max_u=4, max_v=4):
    """``(True, None)`` if ``A`` and ``B`` agree on every lasso within the bounds,
    else ``(False, shortest disagreeing lasso)``. A bounded check only."""
    U = disjoint_union(A, B)
    a0, b0 = A.initial, A.n + B.initial
    for w, X in lasso_signatures(U, max_u, max_v):
        if (a0 in X) != (b0 in X):
            return False, w
    return True, None


def hd_exact_given_dba(A, D):
    """HD decision for ``A`` given a deterministic ``D`` with the same language:
    ``A`` is HD iff it simulates ``D``."""
    if not is_deterministic(D):
        raise InputError("witness must be deterministic")
    G = build_simulation(A, D)
    from .solver import solve_02

    return solve_02(G).eve_wins(G.initial)


# --------------------------------------------------------------------------
# independent arena solvers


def brute_force_02_ranks(G, cap=BRUTE_FORCE_CAP):
    """Ranks by simultaneous (Jacobi) value iteration; ``None`` marks Adam wins."""
    n = len(G.labels)
    if n > cap:
        raise ResourceLimitError(f"brute force limited to {cap} vertices, arena has {n}")
    top = 1 + sum(1 for e in G.edges if e.priority == 1)
    outs = [[] for _ in range(n)]
    for e in G.edges:
        outs[e.src].append((e.dst, e.priority))
    pick = [min if o == EVE else max for o in G.owner]

    def contribution(r, p):
        if r == top:
            return top
        return {0: r, 1: min(r + 1, top), 2: 0}[p]

    rank = [0] * n
    while True:
        new = [pick[v](contribution(rank[d], p) for d, p in outs[v]) for v in range(n)]
        if new == rank:
            return [None if r == top else r for r in rank]
        rank = new


def brute_force_02_winner(G, cap=BRUTE_FORCE_CAP):
    return EVE if brute_force_02_ranks(G, cap)[G.initial] is not None else ADAM


def _attractor(player, target, vertices, succ, pred, owner):
    attr = set(target)
    strategy = {}
    count = {v: sum(1 for w in succ[v] if w in vertices) for v in vertices}
    queue = deque(attr)
    while queue:
        w = queue.popleft()
        for v in pred[w]:
            if v not in vertices or v in attr:
                continue
            if owner[v] == player:
                attr.add(v)
                strategy[v] = w
                queue.append(v)
            else:
                count[v] -= 1
                if count[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return attr, strategy


def _zielonka(vertices, prio, succ, pred, owner):
    win = ({EVE: set(), ADAM: set()})
    strat = {EVE: {}, ADAM: {}}
    vertices = set(vertices)
    while vertices:
        d = max(prio[v] for v in vertices)
        player = EVE if d % 2 == 0 else ADAM
        opp = ADAM if player == EVE else EVE
        top = {v for v in vertices if prio[v] == d}
        A, a_strat = _attractor(player, top, vertices, succ, pred, owner)
        sub_win, sub_strat = _zielonka(vertices - A, prio, succ, pred, owner)
        if not sub_win[opp]:
            win[player] |= vertices
            strat[player].update(sub_strat[player])
            strat[player].update(a_strat)
            for v in top:
                if owner[v] == player:
                    strat[player][v] = next(w for w in succ[v] if w in vertices)
            break
        B, b_strat = _attractor(opp, sub_win[opp], vertices, succ, pred, owner)
        win[opp] |= B
        strat[opp].update({v: w for v, w in sub_strat[opp].items() if v in sub_win[opp]})
        strat[opp].update(b_strat)
        vertices -= B
    return win, strat


def zielonka(G):
    """Solve a [0,2] arena by Zielonka's recursive algorithm on the
    edge-subdivided game. Returns ``(winner, eve_strategy, adam_strategy)``;
    strategies map a vertex to the index of the chosen edge."""
    n = len(G.labels)
    m = len(G.edges)
    total = n + m
    prio = [0] * n + [e.priority for e in G.edges]
    owner = list(G.owner) + [ADAM] * m
    succ = [[] for _ in range(total)]
    pred = [[] for _ in range(total)]
    for i, e in enumerate(G.edges):
        mid = n + i
        succ[e.src].append(mid)
        pred[mid].append(e.src)
        succ[mid].append(e.dst)
        pred[e.dst].append(mid)
    win, strat = _zielonka(range(total), prio, succ, pred, owner)
    winner = [EVE if v in win[EVE] else ADAM for v in range(n)]
    eve = {v: w - n for v, w in strat[EVE].items() if v < n and owner[v] == EVE and v in win[EVE]}
    adam = {v: w - n for v, w in strat[ADAM].items() if v < n and owner[v] == ADAM and v in win[ADAM]}
    return winner, eve, adam

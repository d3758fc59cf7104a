"""Polynomial determinisation of history-deterministic Büchi automata.

Pipeline: trim, restrict to the transitions of a Joker-game strategy
(``make_good``), normalise by rank-guided pruning and promotion until every
state sprint simulates an equivalent state, then build the pair automaton
``D`` over at most ``n**2`` states and check it exactly.
"""

from collections import deque
from dataclasses import dataclass, field

from . import analysis
from .arena import ADAM, build_g1, build_joker, build_simulation
from .automaton import Lasso, ParityAutomaton, is_deterministic, require_buchi, trim
from .errors import IntegrityError, NotHDError
from .graphs import cycle_edges, shortest_path
from .solver import solve_02


@dataclass(frozen=True)
class OptRanks:
    rank: dict  # (state name, state name) -> rank in G1, or None
    opt: dict  # state name -> least rank over its reachable pairs


@dataclass
class Iteration:
    automaton: ParityAutomaton
    opt: dict
    removed: list  # transitions as (src, letter, priority, dst) names
    promoted: list


@dataclass
class PipelineTrace:
    iterations: list = field(default_factory=list)
    terminated_at: int = 0
    good: ParityAutomaton = None
    normalized: ParityAutomaton = None

    def to_json(self):
        def fmt(t):
            s, a, c, d = t
            return f"{s} -{a}:{c}-> {d}"

        return {
            "terminated_at": self.terminated_at,
            "iterations": [
                {
                    "states": len(it.automaton.states),
                    "transitions": len(it.automaton.transitions),
                    "opt": it.opt,
                    "removed": [fmt(t) for t in it.removed],
                    "promoted": [fmt(t) for t in it.promoted],
                }
                for it in self.iterations
            ],
        }


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    counterexample: Lasso = None

    def __bool__(self):
        return self.ok


def opt_ranks(H):
    """Ranks of the round-start vertices of the 1-token game and each state's
    least rank; all ranks are finite on good automata."""
    require_buchi(H)
    G = build_g1(H)
    S = solve_02(G)
    rank = {}
    opt = {}
    for (kind, *rest), v in G.index.items():
        if kind != "V1":
            continue
        p, q = rest
        r = S.rank[v]
        if r is None:
            raise IntegrityError(f"Adam wins the 1-token game from ({H.states[p]},{H.states[q]})")
        rank[H.states[p], H.states[q]] = r
        name = H.states[p]
        opt[name] = min(opt.get(name, r), r)
    return OptRanks(rank, opt)


def _rejecting(H, R, relation):
    out = []
    for t in H.transitions:
        s, _, c, d = t
        if c == 1 and relation(R.opt[H.states[s]], R.opt[H.states[d]]):
            out.append(t)
    return out


def prune_step(H, R):
    """Drop rejecting transitions that increase the optimal rank, then trim."""
    drop = set(_rejecting(H, R, lambda x, y: x < y))
    return trim(H.with_transitions([t for t in H.transitions if t not in drop]))


def promote_step(H, R):
    """Make rejecting transitions that decrease the optimal rank accepting."""
    up = set(_rejecting(H, R, lambda x, y: x > y))
    return H.with_transitions([(s, a, 2, d) if (s, a, c, d) in up else (s, a, c, d) for s, a, c, d in H.transitions])


def _names(H, transitions):
    return [(H.states[s], H.alphabet[a], c, H.states[d]) for s, a, c, d in transitions]


def sprint_self_simulation_holds(H):
    """Every state sprint simulates some language-equivalent state."""
    _, _, sprint = analysis.sprint_game(H)
    return all(any(sprint[p, q] and analysis.state_equiv(H, p, q) for q in range(H.n)) for p in range(H.n))


def normalize(H):
    """Iterate rank computation, pruning and promotion to a fixpoint."""
    require_buchi(H)
    H = trim(H)
    bound = len(H.transitions)
    trace = PipelineTrace()
    changes = 0
    while True:
        R = opt_ranks(H)
        removed = _rejecting(H, R, lambda x, y: x < y)
        pruned = prune_step(H, R)
        promoted_before = _rejecting(pruned, R, lambda x, y: x > y)
        nxt = promote_step(pruned, R)
        trace.iterations.append(Iteration(H, dict(R.opt), _names(H, removed), _names(pruned, promoted_before)))
        if nxt == H:
            break
        changes += 1
        if changes > bound:
            raise IntegrityError(f"normalisation exceeded {bound} iterations")
        H = nxt
    trace.terminated_at = changes
    if not sprint_self_simulation_holds(H):
        raise IntegrityError("normalised automaton lacks a sprint self-simulation")
    return H, trace


def build_d(Hstar):
    """Deterministic pair automaton over ``(q, p)`` where ``p`` is an
    equivalent sprint-deterministic state that ``q`` sprint simulates."""
    require_buchi(Hstar)
    H = Hstar
    n, k = H.n, len(H.alphabet)
    equiv = analysis.simulation_table(H)
    _, _, sprint = analysis.sprint_game(H)
    sd_states, F = analysis.sprint_deterministic_witness(H, check=False)

    def valid(q, p):
        return bool(equiv[q, p] and equiv[p, q] and sprint[q, p]) and p in sd_states

    partner = {}
    for q in range(n):
        partner[q] = next((p for p in range(n) if valid(q, p)), None)

    def least_partner(q):
        p = partner[q]
        if p is None:
            raise IntegrityError(f"no sprint-deterministic partner for state {H.states[q]}")
        return p

    start = (H.initial, least_partner(H.initial))
    index = {start: 0}
    order = [start]
    trans = []
    queue = deque([start])
    while queue:
        q, p = queue.popleft()
        src = index[q, p]
        for a in range(k):
            accepting = sorted(d for c, d in H.out[q][a] if c == 2)
            if accepting:
                q2 = accepting[0]
                nxt, pri = (q2, least_partner(q2)), 2
            else:
                if not H.out[q][a]:
                    continue
                f_moves = F.out[p][a]
                if not f_moves:
                    if H.out[p][a]:
                        raise IntegrityError(f"witness has no move from {H.states[p]} on {H.alphabet[a]}")
                    continue
                tau = analysis.sprint_move(H, q, a, p)
                if tau is None or tau[2] != 1:
                    raise IntegrityError(f"sprint strategy fails at ({H.states[q]},{H.alphabet[a]},{H.states[p]})")
                c_f, p2 = f_moves[0]
                if c_f != 1:
                    raise IntegrityError("witness accepts where the sprint game says it cannot")
                nxt, pri = (tau[3], p2), 1
                if not valid(*nxt):
                    raise IntegrityError(f"pair ({H.states[nxt[0]]},{H.states[nxt[1]]}) lost its invariant")
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            trans.append((src, a, pri, index[nxt]))
    names = [f"({H.states[q]},{H.states[p]})" for q, p in order]
    return ParityAutomaton(names, H.alphabet, 0, trans)


def _not_hd_certificate(A):
    from .oracles import zielonka

    G = build_joker(A)
    winner, _, adam = zielonka(G)
    return {G.describe(v): G.describe(G.edges[i].dst) for v, i in sorted(adam.items()) if winner[v] == ADAM}


def determinize_hd(A, verify=True):
    """Deterministic Büchi automaton with the language of the HD automaton ``A``.

    Raises ``NotHDError`` (with Adam's Joker-game strategy as certificate)
    when ``A`` is not HD, and ``IntegrityError`` if any stage's guarantee
    fails.
    """
    require_buchi(A)
    A0 = trim(A)
    if not analysis.is_hd_buchi(A0):
        raise NotHDError("automaton is not history-deterministic", _not_hd_certificate(A0))
    good = analysis.make_good(A0)
    Hstar, trace = normalize(good)
    trace.good, trace.normalized = good, Hstar
    D = build_d(Hstar)
    if verify:
        verdict = verify_determinization(A0, D)
        if not verdict:
            raise IntegrityError(f"determinisation failed verification: {verdict.reason}")
    return D, trace


def _complete_with_sink(D):
    name = "sink"
    while name in D.states:
        name += "_"
    sink = D.n
    trans = list(D.transitions)
    for q in range(D.n):
        for a in range(len(D.alphabet)):
            if not D.out[q][a]:
                trans.append((q, a, 1, sink))
    trans += [(sink, a, 1, sink) for a in range(len(D.alphabet))]
    return ParityAutomaton(D.states + (name,), D.alphabet, D.initial, trans)


def _containment_counterexample(H, D):
    """A lasso accepted by ``H`` and rejected by the deterministic ``D``, or None.

    ``D`` rejects a word iff its run eventually avoids accepting transitions,
    so we look for a reachable cycle in ``H x D`` that uses only rejecting
    ``D``-transitions and at least one accepting ``H``-transition.
    """
    Dc = _complete_with_sink(D)
    k = len(H.alphabet)
    start = (H.initial, Dc.initial)
    ids = {start: 0}
    nodes = [start]
    edges = []
    queue = deque([start])
    while queue:
        h, d = node = queue.popleft()
        for a in range(k):
            (cd, d2), = Dc.out[d][a]
            for ch, h2 in H.out[h][a]:
                nxt = (h2, d2)
                if nxt not in ids:
                    ids[nxt] = len(nodes)
                    nodes.append(nxt)
                    queue.append(nxt)
                edges.append((ids[node], ids[nxt], (a, ch, cd)))
    comps = cycle_edges(len(nodes), edges, lambda e: e[2][2] == 1, lambda e: e[2][1] == 2)
    if not comps:
        return None
    _, es = comps[0]
    anchor = edges[next(i for i in es if edges[i][2][1] == 2)]
    inside = {edges[i][0] for i in es}
    adj_all = {}
    for s, t, (a, _, _) in edges:
        adj_all.setdefault(s, []).append((t, a))
    adj_comp = {}
    for i in es:
        s, t, (a, _, _) = edges[i]
        adj_comp.setdefault(s, []).append((t, a))
    _, spoke = shortest_path(adj_all, 0, lambda x: x == anchor[0])
    back = shortest_path(adj_comp, anchor[1], lambda x: x == anchor[0])
    assert back is not None and anchor[0] in inside
    cycle = [anchor[2][0]] + back[1]
    return Lasso(tuple(spoke), tuple(cycle))


def verify_determinization(H, D, n_bound=None):
    """Exact check that ``D`` is a deterministic automaton for ``L(H)``.

    ``L(D) ⊆ L(H)`` is decided by simulation, which is exact because ``H`` is
    HD; ``L(H) ⊆ L(D)`` by a cycle search in the product with ``D``.
    """
    if not is_deterministic(D):
        return Verdict(False, "output is not deterministic")
    n = H.n if n_bound is None else n_bound
    if D.n > n * n:
        return Verdict(False, f"{D.n} states exceed the bound {n * n}")
    if H.alphabet != D.alphabet:
        return Verdict(False, "alphabets differ")
    G = build_simulation(H, D)
    if not solve_02(G).eve_wins(G.initial):
        return Verdict(False, "the input does not simulate the output, so L(D) is not contained in L(H)")
    w = _containment_counterexample(H, D)
    if w is not None:
        return Verdict(False, f"word {w.format(H.alphabet)} is accepted by the input only", w)
    return Verdict(True)

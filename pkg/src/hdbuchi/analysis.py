"""Decision procedures built on the game arenas: HD checking, goodness,
semantic determinism, sprint relations, and fixed-strategy verifiers for
parity automata beyond Büchi."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arena import (
    EVE,
    all_pairs,
    build_g1,
    build_joker,
    build_k_token,
    build_simulation,
    build_sprint,
    build_stepahead,
    DEFAULT_ARENA_CAP,
)
from .automaton import reachability_lift, reachable_states, require_buchi, subautomaton, trim
from .errors import InputError, IntegrityError, NotHDError, StrategyError
from .graphs import cycle_edges
from .solver import solve_01, solve_02


@dataclass(frozen=True)
class TransitionStrategy:
    """Positional Eve strategy: ``moves[(p, a, q)]`` is the transition Eve takes
    from ``p`` on ``a`` while Adam's token sits at ``q``."""

    moves: dict
    domain: str = "joker"

    def __call__(self, p, a, q):
        return self.moves.get((p, a, q))


@dataclass(frozen=True)
class GoodnessReport:
    is_sd: bool
    joker_winning_states: frozenset
    is_good: bool
    sd_exact: bool = True


# --------------------------------------------------------------------------
# solved games, cached per automaton


@lru_cache(maxsize=32)
def _g1(A):
    G = build_g1(A)
    return G, solve_02(G)


@lru_cache(maxsize=32)
def _joker(A):
    G = build_joker(A)
    return G, solve_02(G)


def _pair_table(G, S, n, m):
    table = np.zeros((n, m), dtype=bool)
    for (kind, *rest), v in G.index.items():
        if kind == "V1":
            table[rest[0], rest[1]] = S.winner[v] == EVE
    return table


@lru_cache(maxsize=32)
def simulation_table(A):
    """``T[x, y]`` holds iff ``(A, x)`` simulates ``(A, y)``."""
    G = build_simulation(A, A, roots=all_pairs(A, A))
    table = _pair_table(G, solve_02(G), A.n, A.n)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=32)
def stepahead_table(A):
    """``T[x, y]`` holds iff ``(A, x)`` step-ahead simulates ``(A, y)``."""
    G = build_stepahead(A, A, roots=all_pairs(A, A))
    table = _pair_table(G, solve_02(G), A.n, A.n)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=32)
def sprint_game(A):
    """Sprint arena of ``A`` against itself over all pairs, solved once."""
    G = build_sprint(A, A.initial, A, A.initial, roots=all_pairs(A, A))
    S = solve_01(G)
    table = _pair_table(G, S, A.n, A.n)
    table.setflags(write=False)
    return G, S, table


def clear_caches():
    for fn in (_g1, _joker, simulation_table, stepahead_table, sprint_game):
        fn.cache_clear()


# --------------------------------------------------------------------------
# token games and HD


def eve_wins_g1(A):
    G, S = _g1(A)
    return S.eve_wins(G.initial)


def eve_wins_joker(A):
    G, S = _joker(A)
    return S.eve_wins(G.initial)


def eve_wins_k_token(A, k, cap=DEFAULT_ARENA_CAP):
    G = build_k_token(A, k, cap)
    return solve_02(G).eve_wins(G.initial)


def is_hd_buchi(A):
    """History-determinism of a Büchi automaton, via the Joker game."""
    require_buchi(A)
    return eve_wins_joker(A)


def joker_winning_states(A):
    G, S = _joker(A)
    return frozenset(q for q in range(A.n) if S.eve_wins(G.vertex(("V1", q, q))))


def joker_strategy(A):
    """Eve's positional Joker-game strategy as a map ``(p, a, q) -> transition``."""
    G, S = _joker(A)
    moves = {}
    for v, edge_id in S.eve_strategy.items():
        _, p, a, q = G.labels[v]
        moves[(p, a, q)] = G.edges[edge_id].move
    return TransitionStrategy(moves, "joker")


def make_good(H):
    """Subautomaton of the transitions Eve uses in plays consistent with her
    positional Joker-game strategy (Adam unconstrained), trimmed."""
    require_buchi(H)
    G, S = _joker(H)
    if not S.eve_wins(G.initial):
        raise NotHDError("automaton is not history-deterministic")
    used = set()
    seen = {G.initial}
    stack = [G.initial]
    while stack:
        v = stack.pop()
        if G.owner[v] == EVE:
            edge_ids = [S.eve_strategy[v]]
        else:
            edge_ids = G.succ[v]
        for i in edge_ids:
            e = G.edges[i]
            if e.kind == "eve":
                used.add(e.move)
            if e.dst not in seen:
                seen.add(e.dst)
                stack.append(e.dst)
    return trim(subautomaton(H, set(range(H.n)), transitions=sorted(used)))


# --------------------------------------------------------------------------
# semantic determinism and state relations


def state_equiv(H, p, q):
    """Language equivalence of two states, exact when both are HD."""
    T = simulation_table(H)
    return bool(T[p, q] and T[q, p])


def _sibling_groups(A):
    for p in sorted(reachable_states(A)):
        for a in range(len(A.alphabet)):
            succ = sorted({d for _, d in A.out[p][a]})
            if len(succ) > 1:
                yield p, a, succ


def check_sd(A, bound=(4, 4)):
    """Semantic determinism as ``(verdict, exact)``.

    For a Büchi automaton whose reachable states all win their own Joker
    game, every state is HD and mutual simulation decides equivalence
    exactly. Otherwise (including other parity indices) siblings are
    compared on all lassos within ``bound``, which can only refute.
    """
    reach = reachable_states(A)
    if A.is_buchi and reach <= joker_winning_states(A):
        T = simulation_table(A)
        for _, _, succ in _sibling_groups(A):
            sub = T[np.ix_(succ, succ)]
            if not sub.all():
                return False, True
        return True, True
    from .oracles import lasso_signatures

    groups = list(_sibling_groups(A))
    for _, accepting in lasso_signatures(A, *bound):
        for _, _, succ in groups:
            if len({q in accepting for q in succ}) > 1:
                return False, True
    return True, False


def is_sd(A, bound=(4, 4)):
    return check_sd(A, bound)[0]


def goodness(H, bound=(4, 4)):
    sd, exact = check_sd(H, bound)
    winners = joker_winning_states(H)
    good = sd and reachable_states(H) <= winners
    return GoodnessReport(sd, winners, good, exact)


def sprint_simulates(H, p, q):
    """Whether ``(H, p)`` sprint simulates ``(H, q)``."""
    require_buchi(H)
    return bool(sprint_game(H)[2][p, q])


def sprint_move(H, q, a, p):
    """Eve's transition from ``q`` on ``a`` in the global sprint game against ``p``."""
    G, S, _ = sprint_game(H)
    v = G.vertex(("V2", q, a, p))
    if not S.eve_wins(v):
        return None
    return G.edges[S.eve_strategy[v]].move


def sprint_deterministic_witness(H, check=True):
    """Sprint-deterministic states of ``H`` and a deterministic subautomaton
    ``F`` over the same states witnessing them.

    The 1-token game on the reachability lift, solved over all pairs, gives
    one uniform choice per (state, letter): an accepting move if any exists,
    else the least successor that step-ahead simulates every sibling in the
    lift.
    """
    require_buchi(H)
    if check and not goodness(H).is_good:
        raise InputError("sprint witness needs a good automaton")
    lift = reachability_lift(H)
    W = stepahead_table(lift)
    _, _, sprint = sprint_game(H)
    sd_states = frozenset(q for q in range(H.n) if sprint[q, q])
    for q in range(H.n):
        if bool(W[q, q]) != (q in sd_states):
            raise IntegrityError(f"sprint and lifted 1-token verdicts disagree at {H.states[q]}")
    trans = []
    for q in range(H.n):
        for a in range(len(H.alphabet)):
            accepting = sorted(d for c, d in H.out[q][a] if c == 2)
            if accepting:
                trans.append((q, a, 2, accepting[0]))
                continue
            succ = sorted({d for _, d in H.out[q][a]})
            for d in succ:
                if all(W[d, e] for e in succ):
                    trans.append((q, a, 1, d))
                    break
    F = H.with_transitions(trans)
    return sd_states, F


# --------------------------------------------------------------------------
# fixed-strategy verifiers for arbitrary parity index


def switch_strategy(A):
    """Move to Adam's state when it is one step away, otherwise loop in place."""
    moves = {}
    for p in range(A.n):
        for a in range(len(A.alphabet)):
            for q in range(A.n):
                options = A.out[p][a]
                pick = None
                if p != q:
                    pick = next(((c, d) for c, d in options if d == q), None)
                if pick is None:
                    pick = next(((c, d) for c, d in options if d == p), None)
                if pick is not None:
                    moves[(p, a, q)] = (p, a, pick[0], pick[1])
    return TransitionStrategy(moves, "joker")


def stay_strategy(A):
    """Always take the self-loop on the current letter, when there is one."""
    moves = {}
    for p in range(A.n):
        for a in range(len(A.alphabet)):
            loop = next(((c, d) for c, d in A.out[p][a] if d == p), None)
            if loop is not None:
                for q in range(A.n):
                    moves[(p, a, q)] = (p, a, loop[0], p)
    return TransitionStrategy(moves, "joker")


def _has_cycle(n, edges, conditions):
    """Closed walk over ``edges`` (``(src, dst, info)``) for some
    ``(keep, marks)`` in ``conditions``: kept edges only, and the walk
    contains an edge satisfying each predicate in ``marks``."""
    for keep, marks in conditions:
        for _, es in cycle_edges(n, edges, keep, marks[0]):
            if all(any(m(edges[i]) for i in es) for m in marks[1:]):
                return True
    return False


def verify_fixed_joker_strategy(A, eve):
    """True iff Eve's positional strategy wins the Joker game on ``A`` (any index).

    Adam wins a play when he plays Joker finitely often, his transitions
    satisfy the parity condition and Eve's do not. With Eve fixed this is a
    one-player graph; Adam wins iff some reachable cycle without Joker moves
    has an even maximum on his side and an odd maximum on Eve's side.
    """
    ids = {}
    edges = []
    start = ("V1", A.initial, A.initial)
    ids[start] = 0
    stack = [start]

    def node(label):
        if label not in ids:
            ids[label] = len(ids)
            stack.append(label)
        return ids[label]

    while stack:
        label = stack.pop()
        v = ids[label]
        if label[0] == "V1":
            _, p, q = label
            for a in range(len(A.alphabet)):
                edges.append((v, node(("V2", p, a, q)), (None, None, False)))
        elif label[0] == "V2":
            _, p, a, q = label
            if not A.out[p][a]:
                return False  # Eve is stuck and loses
            t = eve(p, a, q)
            if t is None:
                raise StrategyError(f"strategy undefined at ({A.states[p]},{A.alphabet[a]},{A.states[q]})")
            if t not in set((p, a, c, d) for c, d in A.out[p][a]):
                raise StrategyError(f"strategy picks a non-transition {t}")
            edges.append((v, node(("V3", t[3], q, a, p)), (None, t[2], False)))
        else:
            _, p2, q, a, p = label
            for c, q2 in A.out[q][a]:
                edges.append((v, node(("V1", p2, q2)), (c, None, False)))
            for c, q2 in A.out[p][a]:
                edges.append((v, node(("V1", p2, q2)), (c, None, True)))
    n = len(ids)
    neg = -1
    conditions = []
    for ea in range(A.lo, A.hi + 1):
        if ea % 2:
            continue
        for oe in range(A.lo, A.hi + 1):
            if not oe % 2:
                continue

            def keep(e, ea=ea, oe=oe):
                adam, evep, joker = e[2]
                return not joker and (adam if adam is not None else neg) <= ea and (evep if evep is not None else neg) <= oe

            conditions.append(
                (keep, [lambda e, ea=ea: e[2][0] == ea, lambda e, oe=oe: e[2][1] == oe])
            )
    return not _has_cycle(n, edges, conditions)


def verify_adam_letter_strategy(A, letters, assume_universal=True, refute_bound=None):
    """True iff Adam wins the HD game on ``A`` by picking ``letters[q]`` whenever
    Eve's token is at ``q``.

    Only meaningful when every reachable state accepts all words; then
    Adam wins iff Eve cannot close a cycle whose maximal priority is even.
    """
    if not assume_universal:
        raise InputError("letter strategies are only verified under the universality assumption")
    seen = {A.initial}
    stack = [A.initial]
    edges = []
    while stack:
        q = stack.pop()
        if q not in letters:
            raise StrategyError(f"no letter for state {A.states[q]}")
        a = letters[q]
        for c, d in A.out[q][a]:
            edges.append((q, d, c))
            if d not in seen:
                seen.add(d)
                stack.append(d)
    if refute_bound is not None:
        from .oracles import lasso_signatures

        for w, accepting in lasso_signatures(A, *refute_bound):
            missing = seen - accepting
            if missing:
                q = min(missing)
                raise InputError(f"state {A.states[q]} rejects {w.format(A.alphabet)}")
    conditions = [
        (lambda e, x=x: e[2] <= x, [lambda e, x=x: e[2] == x]) for x in range(A.lo, A.hi + 1) if x % 2 == 0
    ]
    return not _has_cycle(A.n, edges, conditions)

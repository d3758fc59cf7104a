"""Solvers for [0,2] and [0,1] parity arenas with edge priorities.

Both compute Eve's *rank*: the least bound on how many priority-1 edges
Adam can force before the next priority-2 edge (for [0,1] arenas: in total).
A rank of ``None`` means Adam wins from that vertex.
"""

from collections import deque
from dataclasses import dataclass

from .arena import EVE, ADAM
from .errors import InputError, IntegrityError

# When set, every solve_02 result is re-checked with rank_monotonicity_check
# and the number of checked arenas is counted (used by the test suite).
POSTCHECK = False
postcheck_count = 0


@dataclass
class Solution:
    winner: list  # Player per vertex
    rank: list  # int, or None where Adam wins
    eve_strategy: dict  # Eve-won Eve vertex -> edge index

    def eve_wins(self, v):
        return self.winner[v] == EVE

    def choice(self, G, v):
        """Target vertex of Eve's strategy at ``v``."""
        return G.edges[self.eve_strategy[v]].dst


def _check_priorities(G, allowed):
    bad = G.priorities() - allowed
    if bad:
        raise InputError(f"priorities {sorted(bad)} not allowed here")


def _strategy(G, rank, top):
    strategy = {}
    edges = G.edges
    for v, outs in enumerate(G.succ):
        if G.owner[v] != EVE or rank[v] >= top:
            continue
        best = None
        for i in outs:
            e = edges[i]
            r = rank[e.dst]
            if r >= top:
                continue
            val = 0 if e.priority == 2 else r + e.priority
            if best is None or val < best[0]:
                best = (val, i)
        strategy[v] = best[1]
    return strategy


def _finish(G, rank, top):
    winner = [EVE if r < top else ADAM for r in rank]
    strategy = _strategy(G, rank, top)
    return Solution(winner, [r if r < top else None for r in rank], strategy)


def solve_02(G):
    """Least fixpoint of the rank lifting operator, by worklist.

    Along an edge of priority 2 the rank resets to 0, priority 1 adds one,
    priority 0 passes it through. Eve minimises, Adam maximises; values
    above the number of priority-1 edges collapse to ⊤.
    """
    _check_priorities(G, {0, 1, 2})
    n = len(G.labels)
    top = sum(1 for e in G.edges if e.priority == 1) + 1
    succ = [[(G.edges[i].dst, G.edges[i].priority) for i in outs] for outs in G.succ]
    pred = G.pred
    is_eve = [o == EVE for o in G.owner]
    rank = [0] * n
    queue = deque(range(n))
    queued = [True] * n
    while queue:
        v = queue.popleft()
        queued[v] = False
        best = None
        for d, p in succ[v]:
            r = rank[d]
            if r >= top:
                val = top
            elif p == 2:
                val = 0
            else:
                val = r + p
                if val > top:
                    val = top
            if best is None:
                best = val
            elif is_eve[v]:
                if val < best:
                    best = val
            elif val > best:
                best = val
        if best > rank[v]:
            rank[v] = best
            for u in pred[v]:
                if not queued[u]:
                    queued[u] = True
                    queue.append(u)
    S = _finish(G, rank, top)
    if POSTCHECK:
        _postcheck(G, S)
    return S


def _postcheck(G, S):
    global postcheck_count
    bad = rank_monotonicity_check(G, S)
    if bad:
        raise IntegrityError(f"rank monotonicity violated on edges {bad[:5]}")
    postcheck_count += 1


def solve_01(G):
    """Nested fixpoint for [0,1] arenas; the stage at which a vertex is
    added is its rank."""
    _check_priorities(G, {0, 1})
    n = len(G.labels)
    edges = G.edges
    succ = G.succ
    in_edges = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        in_edges[e.dst].append(i)
    level = [None] * n
    won = [False] * n
    stage = 0
    while True:
        # greatest fixpoint Y: a vertex stays while its owner can keep to
        # edges that reach earlier stages or are priority 0 into Y.
        in_y = [True] * n
        good = [0] * n
        removed = deque()

        def violates(v):
            return good[v] == 0 if G.owner[v] == EVE else good[v] < len(succ[v])

        for v in range(n):
            count = 0
            for i in succ[v]:
                e = edges[i]
                if won[e.dst] or e.priority == 0:
                    count += 1
            good[v] = count
        for v in range(n):
            if violates(v):
                in_y[v] = False
                removed.append(v)
        while removed:
            d = removed.popleft()
            if won[d]:
                continue
            for i in in_edges[d]:
                e = edges[i]
                if e.priority != 0:
                    continue
                s = e.src
                if not in_y[s]:
                    continue
                good[s] -= 1
                if violates(s):
                    in_y[s] = False
                    removed.append(s)
        fresh = [v for v in range(n) if in_y[v] and not won[v]]
        if not fresh:
            break
        for v in fresh:
            won[v] = True
            level[v] = stage
        stage += 1
    top = stage + 1
    rank = [top if lv is None else lv for lv in level]
    return _finish(G, rank, top)


def rank_monotonicity_check(G, S):
    """Edges Eve can be forced along, or chooses, must not increase the rank
    except across priority 2, and priority-1 edges must decrease it.

    Returns the list of offending edge indices (empty when the check passes).
    """
    bad = []
    for i, e in enumerate(G.edges):
        rv = S.rank[e.src]
        if rv is None:
            continue
        if G.owner[e.src] == EVE and S.eve_strategy.get(e.src) != i:
            continue
        if e.priority == 2:
            if S.rank[e.dst] is None:
                bad.append(i)
            continue
        rd = S.rank[e.dst]
        if rd is None or rd > rv or (e.priority == 1 and rd >= rv):
            bad.append(i)
    return bad

"""Brute-force reference implementations used only by the tests."""

from collections import deque
import itertools

from hypothesis import strategies as st

from hdbuchi import ParityAutomaton


@st.composite
def buchi_automata(draw, max_states=4, max_letters=2, complete=False):
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(1, max_letters))
    trans = []
    for q in range(n):
        for a in range(k):
            targets = draw(st.lists(st.tuples(st.integers(1, 2), st.integers(0, n - 1)), max_size=3))
            if complete and not targets:
                targets = [(draw(st.integers(1, 2)), draw(st.integers(0, n - 1)))]
            trans += [(q, a, c, d) for c, d in targets]
    return ParityAutomaton([f"s{i}" for i in range(n)], "ab"[:k], 0, trans)


def accepts_cycle_from(A, cycle):
    """States accepting ``cycle^omega``: edge-by-edge back-reachability test
    on the position product, independent of the SCC-based library code."""
    m = len(cycle)
    succ = {}
    for i, a in enumerate(cycle):
        for q in range(A.n):
            for c, d in A.out[q][a]:
                succ.setdefault((q, i), []).append(((d, (i + 1) % m), c))

    def reaches(src, dst, limit):
        seen = {src}
        todo = deque([src])
        while todo:
            x = todo.popleft()
            if x == dst:
                return True
            for y, c in succ.get(x, ()):
                if c <= limit and y not in seen:
                    seen.add(y)
                    todo.append(y)
        return False

    good_nodes = set()
    for x, outs in succ.items():
        for y, c in outs:
            if c % 2 == 0 and reaches(y, x, c):
                good_nodes.add(x)
    result = set()
    for q in range(A.n):
        seen = {(q, 0)}
        todo = deque(seen)
        while todo:
            x = todo.popleft()
            if x in good_nodes:
                result.add(q)
                break
            for y, _ in succ.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return result


def brute_lasso_accepts(A, spoke, cycle, start=None):
    current = {A.initial if start is None else start}
    for a in spoke:
        current = {d for q in current for _, d in A.out[q][a]}
    return bool(current & accepts_cycle_from(A, cycle))


def words(k, max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        yield from itertools.product(range(k), repeat=n)


def witness_violations(H, F, starts, max_len):
    """Words ``u`` (|u| <= max_len) on which some run of ``H`` from a start
    state sees an accepting transition while the run of ``F`` does not."""
    bad = []
    k = len(H.alphabet)
    for q in starts:
        stack = [((), frozenset({(q, False)}), q, False)]
        while stack:
            word, hset, f, f_seen = stack.pop()
            if word and any(seen for _, seen in hset) and not f_seen:
                bad.append((q, word))
                continue
            if len(word) == max_len:
                continue
            for a in range(k):
                nxt = frozenset((d, seen or c == 2) for s, seen in hset for c, d in H.out[s][a])
                if not nxt:
                    continue
                if f is None or not F.out[f][a]:
                    f2, f2_seen = None, f_seen
                else:
                    (c, f2), = F.out[f][a]
                    f2_seen = f_seen or c == 2
                stack.append((word + (a,), nxt, f2, f2_seen))
    return bad


def random_arena(rng, n, priorities=(0, 1, 2), max_out=3):
    """Deadlock-free arena with ``n`` vertices and random owners, edges and priorities."""
    from hdbuchi.arena import ADAM, EVE, Edge, GameArena

    owner = [rng.choice((EVE, ADAM)) for _ in range(n)]
    edges = []
    for v in range(n):
        for _ in range(rng.randint(1, max_out)):
            edges.append(Edge(v, rng.randrange(n), rng.choice(priorities), "letter"))
    return GameArena([("v", i) for i in range(n)], owner, edges, 0, index={("v", i): i for i in range(n)})


"""Transition-based parity automata, the TAF text format, and the
automaton-to-automaton constructions the games are built from.

States and letters are referred to by index everywhere; their names only
matter for parsing, printing, and tie-breaking by declaration order.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import AlphabetMismatchError, InputError, NotBuchiError, ResourceLimitError, TAFSyntaxError
from .graphs import cycle_edges, reach

DEFAULT_STATE_CAP = 10**6


@dataclass(frozen=True)
class ParityAutomaton:
    """An ``[lo, hi]`` parity automaton with priorities on transitions.

    ``transitions`` is normalised to a sorted tuple of distinct
    ``(src, letter, priority, dst)`` index tuples, so two automata with the
    same declarations compare equal.
    """

    states: tuple
    alphabet: tuple
    initial: int
    transitions: tuple
    lo: int = 1
    hi: int = 2

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", tuple(sorted(set(map(tuple, self.transitions)))))
        if not self.states:
            raise InputError("automaton needs at least one state")
        if not self.alphabet:
            raise InputError("alphabet must be non-empty")
        if len(set(self.states)) != len(self.states):
            raise InputError("duplicate state names")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("duplicate letter names")
        if self.lo not in (0, 1) or self.lo >= self.hi:
            raise InputError(f"bad parity index [{self.lo},{self.hi}]")
        if not 0 <= self.initial < len(self.states):
            raise InputError("initial state out of range")
        n, k = len(self.states), len(self.alphabet)
        for s, a, c, d in self.transitions:
            if not (0 <= s < n and 0 <= d < n and 0 <= a < k):
                raise InputError(f"transition {(s, a, c, d)} out of range")
            if not self.lo <= c <= self.hi:
                raise InputError(f"priority {c} outside [{self.lo},{self.hi}]")

    @classmethod
    def from_names(cls, states, alphabet, initial, transitions, lo=1, hi=2):
        """Build from state/letter names; ``transitions`` holds ``(src, letter, priority, dst)`` names."""
        sidx = {s: i for i, s in enumerate(states)}
        aidx = {a: i for i, a in enumerate(alphabet)}
        try:
            trans = [(sidx[s], aidx[a], int(c), sidx[d]) for s, a, c, d in transitions]
            init = sidx[initial]
        except KeyError as exc:
            raise InputError(f"unknown name {exc.args[0]!r}") from None
        return cls(tuple(states), tuple(alphabet), init, trans, lo, hi)

    @property
    def n(self):
        return len(self.states)

    @property
    def is_buchi(self):
        return (self.lo, self.hi) == (1, 2)

    @cached_property
    def out(self):
        """``out[q][a]`` is the tuple of ``(priority, dst)`` pairs, in canonical order."""
        table = [[[] for _ in self.alphabet] for _ in self.states]
        for s, a, c, d in self.transitions:
            table[s][a].append((c, d))
        return tuple(tuple(tuple(row) for row in per_state) for per_state in table)

    @cached_property
    def state_index(self):
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def letter_index(self):
        return {a: i for i, a in enumerate(self.alphabet)}

    def with_initial(self, q):
        return ParityAutomaton(self.states, self.alphabet, q, self.transitions, self.lo, self.hi)

    def with_transitions(self, transitions):
        return ParityAutomaton(self.states, self.alphabet, self.initial, transitions, self.lo, self.hi)

    def describe(self, t):
        s, a, c, d = t
        return f"{self.states[s]} -{self.alphabet[a]}:{c}-> {self.states[d]}"

    def __str__(self):
        return serialize_automaton(self).decode()


def require_buchi(*automata):
    for A in automata:
        if not A.is_buchi:
            raise NotBuchiError(f"expected a Büchi [1,2] automaton, got [{A.lo},{A.hi}]")


def require_same_alphabet(A, B):
    if A.alphabet != B.alphabet:
        raise AlphabetMismatchError(f"alphabets differ: {A.alphabet} vs {B.alphabet}")


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic word ``spoke . cycle^omega`` over letter indices."""

    spoke: tuple
    cycle: tuple

    def __post_init__(self):
        object.__setattr__(self, "spoke", tuple(self.spoke))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise InputError("lasso cycle must be non-empty")

    @classmethod
    def parse(cls, alphabet, spoke, cycle):
        idx = {a: i for i, a in enumerate(alphabet)}
        return cls(tuple(idx[x] for x in spoke), tuple(idx[x] for x in cycle))

    def format(self, alphabet):
        sep = "" if all(len(a) == 1 for a in alphabet) else "."
        u = sep.join(alphabet[i] for i in self.spoke)
        v = sep.join(alphabet[i] for i in self.cycle)
        return f"u={u};v={v}"


# --------------------------------------------------------------------------
# TAF text format

_SECTIONS = ("parity", "alphabet", "states", "initial")


def parse_automaton(text):
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    header = {}
    trans = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        key, args = tokens[0], tokens[1:]
        if key in _SECTIONS:
            if key in header:
                raise TAFSyntaxError(lineno, f"duplicate '{key}' declaration")
            if key == "parity":
                if len(args) != 2:
                    raise TAFSyntaxError(lineno, "expected 'parity <lo> <hi>'")
                try:
                    lo, hi = int(args[0]), int(args[1])
                except ValueError:
                    raise TAFSyntaxError(lineno, "parity bounds must be integers") from None
                if lo not in (0, 1) or lo >= hi:
                    raise TAFSyntaxError(lineno, f"bad parity index [{lo},{hi}]")
                header[key] = (lo, hi)
            elif key == "initial":
                if len(args) != 1:
                    raise TAFSyntaxError(lineno, "expected 'initial <state>'")
                header[key] = (args[0], lineno)
            else:
                if not args:
                    raise TAFSyntaxError(lineno, f"'{key}' needs at least one name")
                if len(set(args)) != len(args):
                    raise TAFSyntaxError(lineno, f"duplicate name in '{key}'")
                header[key] = tuple(args)
        elif key == "trans":
            if len(args) != 4:
                raise TAFSyntaxError(lineno, "expected 'trans <src> <letter> <priority> <dst>'")
            trans.append((lineno, args))
        else:
            raise TAFSyntaxError(lineno, f"unknown keyword '{key}'")

    for key in _SECTIONS:
        if key not in header:
            raise TAFSyntaxError(0, f"missing '{key}' declaration")
    lo, hi = header["parity"]
    states, alphabet = header["states"], header["alphabet"]
    sidx = {s: i for i, s in enumerate(states)}
    aidx = {a: i for i, a in enumerate(alphabet)}
    init_name, init_line = header["initial"]
    if init_name not in sidx:
        raise TAFSyntaxError(init_line, f"unknown initial state '{init_name}'")

    triples = []
    for lineno, (s, a, c, d) in trans:
        if s not in sidx:
            raise TAFSyntaxError(lineno, f"unknown state '{s}'")
        if d not in sidx:
            raise TAFSyntaxError(lineno, f"unknown state '{d}'")
        if a not in aidx:
            raise TAFSyntaxError(lineno, f"unknown letter '{a}'")
        try:
            c = int(c)
        except ValueError:
            raise TAFSyntaxError(lineno, f"priority '{c}' is not an integer") from None
        if not lo <= c <= hi:
            raise TAFSyntaxError(lineno, f"priority {c} out of index [{lo},{hi}]")
        triples.append((sidx[s], aidx[a], c, sidx[d]))
    return ParityAutomaton(states, alphabet, sidx[init_name], triples, lo, hi)


def serialize_automaton(A):
    lines = [
        f"parity {A.lo} {A.hi}",
        "alphabet " + " ".join(A.alphabet),
        "states " + " ".join(A.states),
        f"initial {A.states[A.initial]}",
    ]
    for s, a, c, d in A.transitions:
        lines.append(f"trans {A.states[s]} {A.alphabet[a]} {c} {A.states[d]}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# --------------------------------------------------------------------------
# structural operations


def reachable_states(A, start=None):
    start = A.initial if start is None else start
    seen = {start}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for row in A.out[q]:
            for _, d in row:
                if d not in seen:
                    seen.add(d)
                    queue.append(d)
    return seen


def subautomaton(A, keep_states, transitions=None, initial=None):
    """Restrict ``A`` to ``keep_states`` (kept in declaration order) and the
    given transitions between them; state indices are renumbered."""
    transitions = A.transitions if transitions is None else transitions
    initial = A.initial if initial is None else initial
    order = [q for q in range(A.n) if q in keep_states]
    remap = {q: i for i, q in enumerate(order)}
    trans = [(remap[s], a, c, remap[d]) for s, a, c, d in transitions if s in remap and d in remap]
    return ParityAutomaton([A.states[q] for q in order], A.alphabet, remap[initial], trans, A.lo, A.hi)


def trim(A):
    keep = reachable_states(A)
    if len(keep) == A.n:
        return A
    return subautomaton(A, keep)


def is_deterministic(A):
    return all(len(row) <= 1 for per_state in A.out for row in per_state)


def is_complete(A):
    return all(row for per_state in A.out for row in per_state)


def _fresh(name, taken):
    candidate, i = name, 0
    while candidate in taken:
        i += 1
        candidate = f"{name}{i}"
    return candidate


def delay(A):
    """Automaton that reads the input one letter behind ``A``.

    The first transition carries the least priority of the index; it is taken
    once and never influences acceptance.
    """
    k = len(A.alphabet)
    pair_names = [f"({q},{a})" for q in A.states for a in A.alphabet]
    init = _fresh("s", set(pair_names))
    states = [init] + pair_names

    def pair(q, a):
        return 1 + q * k + a

    trans = [(0, a, A.lo, pair(A.initial, a)) for a in range(k)]
    for p, a, c, q in A.transitions:
        for b in range(k):
            trans.append((pair(p, a), b, c, pair(q, b)))
    return ParityAutomaton(states, A.alphabet, 0, trans, A.lo, A.hi)


def delay_k(A, k, cap=DEFAULT_STATE_CAP):
    if k < 0:
        raise InputError("delay depth must be non-negative")
    for _ in range(k):
        size = 1 + A.n * len(A.alphabet)
        if size > cap:
            raise ResourceLimitError(f"delay would create {size} states (cap {cap})")
        A = delay(A)
    return A


def reachability_lift(A):
    """Reachability version of a Büchi automaton.

    Accepting transitions are redirected to an accepting sink ``f``; a fresh
    letter ``#`` sends every state to a rejecting sink ``r``. Both sinks loop
    on every letter including ``#``.
    """
    require_buchi(A)
    n, k = A.n, len(A.alphabet)
    hash_letter = _fresh("#", set(A.alphabet))
    f_name = _fresh("f", set(A.states))
    r_name = _fresh("r", set(A.states) | {f_name})
    f, r, h = n, n + 1, k
    trans = []
    for s, a, c, d in A.transitions:
        trans.append((s, a, 1, f if c == 2 else d))
    for p in range(n):
        trans.append((p, h, 1, r))
    for a in range(k + 1):
        trans.append((f, a, 2, f))
        trans.append((r, a, 1, r))
    return ParityAutomaton(A.states + (f_name, r_name), A.alphabet + (hash_letter,), A.initial, trans, 1, 2)


def universalize(A, S):
    """Product of ``A`` with a deterministic safety automaton ``S``, completed
    by an accepting sink.

    If ``A`` is semantically deterministic and ``L(S)`` is contained in
    ``L(A)``, every reachable state of the result accepts all words. Neither
    condition is checked here.
    """
    require_same_alphabet(A, S)
    if any(c != 0 for _, _, c, _ in S.transitions) or not is_deterministic(S):
        raise InputError("second argument must be a deterministic safety automaton")
    k = len(A.alphabet)
    ns = S.n
    names = [f"({q},{s})" for q in A.states for s in S.states]
    f_name = _fresh("f", set(names))
    f = len(names)
    accept = A.hi if A.hi % 2 == 0 else A.hi - 1
    trans = []
    for q in range(A.n):
        for s in range(ns):
            src = q * ns + s
            for a in range(k):
                moved = False
                for _, s2 in S.out[s][a]:
                    for c, q2 in A.out[q][a]:
                        trans.append((src, a, c, q2 * ns + s2))
                        moved = True
                if not moved:
                    trans.append((src, a, accept, f))
    for a in range(k):
        trans.append((f, a, accept, f))
    return ParityAutomaton(names + [f_name], A.alphabet, A.initial * ns + S.initial, trans, A.lo, A.hi)


def disjoint_union(A, B):
    """Both automata side by side, initial state from ``A``; names prefixed ``0.``/``1.``."""
    require_same_alphabet(A, B)
    lo, hi = min(A.lo, B.lo), max(A.hi, B.hi)
    states = [f"0.{s}" for s in A.states] + [f"1.{s}" for s in B.states]
    trans = list(A.transitions) + [(s + A.n, a, c, d + A.n) for s, a, c, d in B.transitions]
    return ParityAutomaton(states, A.alphabet, A.initial, trans, lo, hi)


def reachable_pairs(A):
    """Pairs of states reachable from the initial state on a common word."""
    start = (A.initial, A.initial)
    seen = {start}
    queue = deque([start])
    out = A.out
    while queue:
        p, q = queue.popleft()
        for a in range(len(A.alphabet)):
            for _, p2 in out[p][a]:
                for _, q2 in out[q][a]:
                    if (p2, q2) not in seen:
                        seen.add((p2, q2))
                        queue.append((p2, q2))
    return seen


def post(A, states, word):
    current = set(states)
    for a in word:
        current = {d for q in current for _, d in A.out[q][a]}
    return current


def omega_accepting(A, cycle):
    """States ``q`` such that ``cycle^omega`` is accepted from ``q``.

    Works on the product of the transition graph with the positions of
    ``cycle``: a state qualifies iff it reaches a cycle of that product whose
    largest priority is even.
    """
    m = len(cycle)
    n = A.n
    edges = []
    for i, a in enumerate(cycle):
        j = (i + 1) % m
        for q in range(n):
            for c, d in A.out[q][a]:
                edges.append((q * m + i, d * m + j, c))
    total = n * m
    targets = set()
    for e in range(A.lo, A.hi + 1):
        if e % 2:
            continue
        for _, es in cycle_edges(total, edges, lambda t, e=e: t[2] <= e, lambda t, e=e: t[2] == e):
            for i in es:
                targets.add(edges[i][0])
    if not targets:
        return frozenset()
    good = reach(total, [t[0] for t in edges], [t[1] for t in edges], targets, backward=True)
    return frozenset(q for q in range(n) if q * m in good)


def lasso_accepts(A, w, start=None):
    start = A.initial if start is None else start
    return bool(post(A, {start}, w.spoke) & omega_accepting(A, w.cycle))

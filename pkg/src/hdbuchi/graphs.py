"""Small graph utilities over integer-indexed edge lists."""

from collections import deque

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


def scc_labels(n, src, dst):
    """Label each of ``n`` nodes with the id of its strongly connected component."""
    if n == 0:
        return np.zeros(0, dtype=np.int32)
    data = np.ones(len(src), dtype=np.int8)
    graph = csr_matrix((data, (np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64))), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="strong")
    return labels


def reach(n, src, dst, seeds, backward=False):
    """Set of nodes reachable from ``seeds`` (or reaching them, if ``backward``)."""
    adj = [[] for _ in range(n)]
    for s, d in zip(src, dst):
        if backward:
            adj[d].append(s)
        else:
            adj[s].append(d)
    seen = set(seeds)
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def cycle_edges(n, edges, keep, marked):
    """Edges of ``edges`` kept by ``keep`` that lie on a cycle made of kept edges,
    grouped by component, restricted to components containing a ``marked`` edge.

    ``edges`` is a sequence of ``(src, dst, info)``. Returns the list of
    ``(component_label, [edge indices])`` for qualifying components.
    """
    idx = [i for i, e in enumerate(edges) if keep(e)]
    labels = scc_labels(n, [edges[i][0] for i in idx], [edges[i][1] for i in idx])
    comps = {}
    for i in idx:
        s, d, _ = edges[i]
        if labels[s] == labels[d]:
            comps.setdefault(int(labels[s]), []).append(i)
    return [(c, es) for c, es in comps.items() if any(marked(edges[i]) for i in es)]


def shortest_path(adj, start, goal_test):
    """BFS over ``adj[node] -> [(succ, label)]``; returns (goal node, labels) or None."""
    parent = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if goal_test(x):
            path = []
            y = x
            while parent[y] is not None:
                prev, label = parent[y]
                path.append(label)
                y = prev
            return x, path[::-1]
        for y, label in adj.get(x, ()):
            if y not in parent:
                parent[y] = (x, label)
                queue.append(y)
    return None

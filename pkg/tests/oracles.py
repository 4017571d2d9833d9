"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive and shares no code path with the
implementations under test.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque

import numpy as np

from homolink.diagrams import (
    ESSENTIAL_0,
    EXTENDED_1,
    ORDINARY_ASCENDING,
    RELATIVE_DESCENDING,
    DiagramPoint,
    PersistenceDiagram,
)


def brute_force_shortest(g, source, use_weights=False):
    """Exhaustive simple-path enumeration; only for tiny graphs."""
    best = [np.inf] * g.n
    best[source] = 0.0

    def walk(node, cost, visited):
        for y in g.neighbors(node):
            if y in visited:
                continue
            c = cost + (g.weight(node, y) if use_weights else 1.0)
            if c < best[y]:
                best[y] = c
            walk(y, c, visited | {y})

    walk(source, 0.0, {source})
    return np.array(best)


def bfs_ball(g, v, k):
    """Plain breadth-first ball, written independently of the library BFS."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if dist[x] == k:
            continue
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return set(dist)


def reachability_labels(g):
    """Component labels from boolean matrix powers of the adjacency matrix."""
    A = np.eye(g.n, dtype=bool)
    for u, v in g.edges:
        A[u, v] = A[v, u] = True
    R = A.copy()
    while True:
        nxt = R | (R @ R)
        if (nxt == R).all():
            break
        R = nxt
    labels = [-1] * g.n
    current = 0
    for i in range(g.n):
        if labels[i] == -1:
            for j in range(g.n):
                if R[i, j]:
                    labels[j] = current
            current += 1
    return np.array(labels)


def transport_min_cost(a, b, C, tol=1e-12):
    """Exact transportation optimum by enumerating basic feasible solutions.

    Every vertex of the transportation polytope is supported on a spanning
    tree of the bipartite supply/demand graph; enumerate all of them, solve
    each by leaf elimination, and take the cheapest feasible one.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    C = np.asarray(C, dtype=float)
    r, c = len(a), len(b)
    cells = [(i, j) for i in range(r) for j in range(c)]
    nodes = r + c
    best = np.inf
    for basis in itertools.combinations(cells, nodes - 1):
        adj = defaultdict(list)
        for i, j in basis:
            adj[i].append((r + j, (i, j)))
            adj[r + j].append((i, (i, j)))
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != nodes:
            continue
        remaining = np.concatenate([a, b])
        degree = {u: len(adj[u]) for u in range(nodes)}
        alive = {cell: True for cell in basis}
        flow = {}
        leaves = deque(u for u in range(nodes) if degree[u] == 1)
        while leaves:
            u = leaves.popleft()
            edge = next(
                ((y, cell) for y, cell in adj[u] if alive[cell]), None
            )
            if edge is None:
                continue
            y, cell = edge
            flow[cell] = remaining[u]
            remaining[y] -= remaining[u]
            remaining[u] = 0.0
            alive[cell] = False
            degree[u] -= 1
            degree[y] -= 1
            if degree[y] == 1:
                leaves.append(y)
        if any(f < -tol for f in flow.values()):
            continue
        cost = sum(C[i, j] * max(f, 0.0) for (i, j), f in flow.items())
        best = min(best, cost)
    return best


def gcn_dense_oracle(g, X, w1, w2):
    """Direct nodewise evaluation of the two-layer graph convolution."""
    n = g.n
    nbr = [set(g.neighbors(i)) | {i} for i in range(n)]
    dhat = [len(nbr[i]) for i in range(n)]
    S = np.zeros((n, n))
    for i in range(n):
        for j in nbr[i]:
            S[i, j] = 1.0 / np.sqrt(dhat[i] * dhat[j])
    Z1 = np.zeros((n, w1.shape[1]))
    for i in range(n):
        acc = np.zeros(X.shape[1])
        for j in range(n):
            acc = acc + S[i, j] * X[j]
        Z1[i] = acc @ w1
    H1 = np.where(Z1 > 0, Z1, 0.0)
    H2 = np.zeros((n, w2.shape[1]))
    for i in range(n):
        acc = np.zeros(H1.shape[1])
        for j in range(n):
            acc = acc + S[i, j] * H1[j]
        H2[i] = acc @ w2
    return H2


def pairwise_auc(scores, labels):
    """Mann-Whitney by explicit pair counting."""
    pos = [s for s, y in zip(scores, labels) if y == 1]
    neg = [s for s, y in zip(scores, labels) if y == 0]
    wins = 0.0
    for sp in pos:
        for sn in neg:
            if sp > sn:
                wins += 1.0
            elif sp == sn:
                wins += 0.5
    return wins / (len(pos) * len(neg))


def random_diagram(rng, max_points=8):
    points = []
    for _ in range(int(rng.integers(0, max_points + 1))):
        dim = int(rng.integers(0, 2))
        if dim == 1:
            kind = EXTENDED_1
        else:
            kind = [ORDINARY_ASCENDING, RELATIVE_DESCENDING, ESSENTIAL_0][
                int(rng.integers(0, 3))
            ]
        points.append(
            DiagramPoint(dim, float(rng.uniform(0, 5)), float(rng.uniform(0, 5)), kind)
        )
    return PersistenceDiagram(points)


def random_graph(rng, n, p):
    edges = [
        (i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p
    ]
    from homolink.graphs import Graph

    return Graph(n, edges)

"""Ollivier-Ricci edge curvature via exact Wasserstein-1 optimal transport.

Each node x carries the lazy-random-walk measure: idleness mass ``alpha`` on
x itself and (1 - alpha) / deg(x) on each neighbor. The curvature of an edge
(x, y) is 1 - W1(m_x, m_y) / d(x, y) with d the hop metric (so d(x, y) = 1
for an edge). Supports are tiny (degree + 1 nodes), so the transport problem
is solved exactly as a small linear program.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .graphs import Edge, Graph

logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-9
WEIGHT_FLOOR = 1e-6


@dataclass(eq=False)
class DiscreteMeasure:
    """Probability measure on a finite node set."""

    mass: dict[int, float]

    def __post_init__(self):
        for node, m in self.mass.items():
            if m < 0:
                raise ValueError(f"negative mass {m} at node {node}")
        total = sum(self.mass.values())
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"masses must sum to 1, got {total}")

    @property
    def support(self) -> list[int]:
        return sorted(self.mass)

    def masses(self, support: list[int]) -> np.ndarray:
        return np.array([self.mass[s] for s in support])


def lazy_walk_measure(g: Graph, z: int, alpha: float = 0.5) -> DiscreteMeasure:
    """Idleness alpha at z, remaining mass spread uniformly over neighbors."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    deg = g.degree(z)
    if deg == 0:
        raise ValueError(f"node {z} has no neighbors")
    mass = {z: alpha}
    share = (1.0 - alpha) / deg
    for y in g.neighbors(z):
        mass[y] = mass.get(y, 0.0) + share
    return DiscreteMeasure(mass)


def wasserstein1(mu: DiscreteMeasure, nu: DiscreteMeasure, cost: dict) -> float:
    """Exact optimal-transport cost between two discrete measures.

    ``cost`` maps (source node, target node) to a nonnegative finite cost.
    Solved as the transportation linear program; supports here never exceed
    the maximum degree plus one, so this is cheap and exact.
    """
    src = mu.support
    dst = nu.support
    a = mu.masses(src)
    b = nu.masses(dst)
    if abs(a.sum() - b.sum()) > MASS_TOLERANCE:
        raise ValueError("transport infeasible: total masses differ")
    r, c = len(src), len(dst)
    C = np.empty((r, c))
    for i, x in enumerate(src):
        for j, y in enumerate(dst):
            C[i, j] = cost[(x, y)]
    if not np.isfinite(C).all() or (C < 0).any():
        raise ValueError("cost must be nonnegative and finite on the supports")
    if r == 1:
        return float(C[0] @ b)
    if c == 1:
        return float(a @ C[:, 0])
    A_eq = np.zeros((r + c, r * c))
    for i in range(r):
        A_eq[i, i * c : (i + 1) * c] = 1.0
    for j in range(c):
        A_eq[r + j, j::c] = 1.0
    b_eq = np.concatenate([a, b])
    res = linprog(C.ravel(), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"transport LP failed: {res.message}")
    return float(res.fun)


def _hop_costs(g: Graph, x: int, y: int, src: list[int], dst: list[int]) -> dict:
    """Hop distances between the two supports, computed inside the 2-ball of (x, y).

    Every shortest path between support nodes stays within hop distance 2 of
    the edge's endpoints, so restricting the search keeps it exact.
    """
    ball = {x, y}
    frontier = [x, y]
    for _ in range(2):
        nxt = []
        for a in frontier:
            for b in g.neighbors(a):
                if b not in ball:
                    ball.add(b)
                    nxt.append(b)
        frontier = nxt
    wanted = set(dst)
    cost = {}
    for s in src:
        dist = {s: 0}
        queue = deque([s])
        remaining = len(wanted)
        while queue and remaining:
            a = queue.popleft()
            for b in g.neighbors(a):
                if b in ball and b not in dist:
                    dist[b] = dist[a] + 1
                    if b in wanted:
                        remaining -= 1
                    queue.append(b)
        for t in dst:
            cost[(s, t)] = float(dist[t])
    return cost


def ollivier_ricci(g: Graph, alpha: float = 0.5) -> dict[Edge, float]:
    """Curvature kappa(x, y) = 1 - W1(m_x, m_y) for every edge of the graph.

    Edges are independent, so this is trivially parallel; the implementation
    is a plain loop because the supports are tiny.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    kappa: dict[Edge, float] = {}
    for e in g.edges:
        x, y = e
        mu = lazy_walk_measure(g, x, alpha)
        nu = lazy_walk_measure(g, y, alpha)
        cost = _hop_costs(g, x, y, mu.support, nu.support)
        kappa[e] = 1.0 - wasserstein1(mu, nu, cost)
    return kappa


def weights_from_curvature(kappa: dict[Edge, float]) -> tuple[dict[Edge, float], int]:
    """Shift curvatures by +1 into edge weights, clamping nonpositive results.

    Returns the weight map and the number of clamped edges.
    """
    weights = {}
    clamped = 0
    for e, k in kappa.items():
        w = 1.0 + k
        if w <= 0.0:
            w = WEIGHT_FLOOR
            clamped += 1
        weights[e] = w
    return weights, clamped


def ricci_edge_weights(g: Graph, alpha: float = 0.5) -> dict[Edge, float]:
    """Positive edge weights 1 + kappa(e); values clamped to a small floor if needed."""
    weights, clamped = weights_from_curvature(ollivier_ricci(g, alpha))
    if clamped:
        logger.warning("clamped %d nonpositive curvature weights to %g", clamped, WEIGHT_FLOOR)
    return weights

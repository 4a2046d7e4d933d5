"""Brute-force reference values, independent of the closed forms in :mod:`anticode`.

Everything here evaluates weights with the general-poset reference path and
finds anticodes as cliques of the graph "distance <= D".  Translation
invariance lets the clique search fix the origin: only cliques through 0 are
explored, so the candidate vertices are the nonzero points of the D-ball.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .algebra import Vector, check_budget, vector_array
from .metric import MetricSpace, distance_matrix, poset_weights
from .poset import chain
from .weights import WeightTable

CLIQUE_BUDGET = 125
LISTING_BUDGET = 64


@lru_cache(maxsize=256)
def _reference_weights(w: WeightTable, n: int, budget: int | None) -> np.ndarray:
    M = MetricSpace(w.spec, n, chain(n), w)
    return poset_weights(M, vector_array(w.spec, n, budget))


def brute_ball_size(w: WeightTable, n: int, D: int, budget: int | None = None) -> int:
    """Number of vectors of weight <= D, by full enumeration."""
    return int((_reference_weights(w, n, budget) <= D).sum())


# -- maximum clique ------------------------------------------------------------

def _color_sort(P: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy colouring of the vertex bitset P; returns vertices and colour numbers
    in nondecreasing colour order (the colour is an upper bound on clique size)."""
    order, colors = [], []
    color, U = 0, P
    while U:
        color += 1
        Q = U
        while Q:
            v = (Q & -Q).bit_length() - 1
            Q &= ~adj[v] & ~(1 << v)
            U &= ~(1 << v)
            order.append(v)
            colors.append(color)
    return order, colors


def max_cliques(adj: list[int], list_all: bool = False) -> tuple[int, list[list[int]]]:
    """Exact maximum clique(s) of the graph given by neighbour bitsets.

    Branch and bound with the greedy-colouring bound.  With ``list_all`` every
    maximum clique is returned (ties are explored), otherwise one.
    """
    nv = len(adj)
    best = 0
    found: list[list[int]] = [[]]

    def expand(R: list[int], P: int) -> None:
        nonlocal best, found
        order, colors = _color_sort(P, adj)
        for i in range(len(order) - 1, -1, -1):
            bound = len(R) + colors[i]
            if bound < best or (bound == best and not list_all):
                return
            v = order[i]
            R2 = R + [v]
            P2 = P & adj[v]
            if P2:
                expand(R2, P2)
            elif len(R2) > best:
                best, found = len(R2), [R2]
            elif len(R2) == best and list_all:
                found.append(R2)
            P &= ~(1 << v)

    if nv:
        expand([], (1 << nv) - 1)
    return best, [sorted(c) for c in found]


def _ball_graph(w: WeightTable, n: int, D: int) -> tuple[np.ndarray, list[int]]:
    V = vector_array(w.spec, n)
    wts = _reference_weights(w, n, None)
    idx = np.nonzero((wts <= D) & (np.arange(len(V)) > 0))[0]
    M = MetricSpace(w.spec, n, chain(n), w)
    close = distance_matrix(M, V[idx], reference=True) <= D
    adj = []
    for i in range(len(idx)):
        row = close[i].copy()
        row[i] = False
        adj.append(int(sum(1 << int(j) for j in np.nonzero(row)[0])))
    return idx, adj


def brute_a_star(w: WeightTable, n: int, D: int, budget: int = CLIQUE_BUDGET) -> int:
    """Largest size of a set of diameter <= D, by exact maximum clique."""
    check_budget(f"clique search on F_{w.spec.q}^{n}", w.spec.q**n, budget)
    _, adj = _ball_graph(w, n, D)
    size, _ = max_cliques(adj)
    return size + 1


def brute_optimal_anticodes(w: WeightTable, n: int, D: int, budget: int = LISTING_BUDGET
                            ) -> list[frozenset[Vector]]:
    """Every maximum-size set of diameter <= D that contains the origin."""
    check_budget(f"clique listing on F_{w.spec.q}^{n}", w.spec.q**n, budget)
    V = vector_array(w.spec, n)
    idx, adj = _ball_graph(w, n, D)
    _, cliques = max_cliques(adj, list_all=True)
    zero = tuple([0] * n)
    out = []
    for c in cliques:
        members = {zero} | {tuple(int(x) for x in V[idx[j]]) for j in c}
        out.append(frozenset(members))
    return out

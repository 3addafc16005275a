"""Exact graph colouring by saturation-ordered branch and bound."""

import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import bits
from .errors import Timeout

DEFAULT_BUDGET_MS = 60_000


@dataclass(frozen=True)
class ColoringResult:
    chi: int
    coloring: Tuple[int, ...]
    clique: Tuple[int, ...]


def greedy_clique(adj) -> List[int]:
    """Best clique found by greedy growth from every start vertex."""
    m = len(adj)
    best: List[int] = []
    deg = [bits.popcount(a) for a in adj]
    for start in range(m):
        clique = [start]
        cand = adj[start]
        while cand:
            v = max(bits.iter_bits(cand), key=lambda u: (bits.popcount(adj[u] & cand), deg[u], -u))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = sorted(clique)
    return best


def _dsatur_greedy(adj, m: int) -> List[int]:
    colors = [-1] * m
    sat = [0] * m
    deg = [bits.popcount(a) for a in adj]
    for _ in range(m):
        v = max((u for u in range(m) if colors[u] < 0),
                key=lambda u: (bits.popcount(sat[u]), deg[u], -u))
        c = bits.lowest(~sat[v])
        colors[v] = c
        for u in bits.iter_bits(adj[v]):
            sat[u] |= 1 << c
    return colors


def chromatic_number(G, budget_ms: Optional[int] = DEFAULT_BUDGET_MS) -> ColoringResult:
    """Exact chromatic number with a proper colouring and a clique witness.

    ``G`` is an UndirectedGraph or a list of neighbour bitsets.
    """
    adj = list(G.adj) if hasattr(G, "adj") else list(G)
    m = len(adj)
    if m == 0:
        return ColoringResult(0, (), ())
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    clique = greedy_clique(adj)
    best = _dsatur_greedy(adj, m)
    best_k = max(best) + 1
    lower = len(clique)
    if best_k == lower:
        return ColoringResult(best_k, tuple(best), tuple(clique))

    deg = [bits.popcount(a) for a in adj]
    colors = [-1] * m
    # one count per (vertex, colour): how many coloured neighbours use it
    sat_count = [dict() for _ in range(m)]
    for c, v in enumerate(clique):
        colors[v] = c
        for u in bits.iter_bits(adj[v]):
            sat_count[u][c] = sat_count[u].get(c, 0) + 1
    state = {"best": best, "k": best_k, "nodes": 0}

    def assign(v: int, c: int, sign: int) -> None:
        for u in bits.iter_bits(adj[v]):
            d = sat_count[u]
            val = d.get(c, 0) + sign
            if val:
                d[c] = val
            else:
                del d[c]

    def search(used: int, remaining: int) -> bool:
        state["nodes"] += 1
        if deadline is not None and state["nodes"] & 1023 == 0 and time.monotonic() > deadline:
            raise Timeout(budget_ms)
        if remaining == 0:
            state["best"] = list(colors)
            state["k"] = used
            return used == lower
        v = -1
        key = None
        for u in range(m):
            if colors[u] < 0:
                k = (len(sat_count[u]), deg[u], -u)
                if key is None or k > key:
                    key, v = k, u
        limit = min(used + 1, state["k"] - 1)
        for c in range(limit):
            if c in sat_count[v]:
                continue
            colors[v] = c
            assign(v, c, 1)
            done = search(max(used, c + 1), remaining - 1)
            assign(v, c, -1)
            colors[v] = -1
            if done:
                return True
        return False

    search(len(clique), m - len(clique))
    return ColoringResult(state["k"], tuple(state["best"]), tuple(clique))


def is_proper(adj, coloring) -> bool:
    return all(coloring[u] != coloring[v] for u in range(len(adj)) for v in bits.iter_bits(adj[u]))

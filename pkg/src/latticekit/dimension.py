"""Order dimension: colouring route for semidistributive extremal lattices,
critical-pair cover sets for general posets, and the width bounds."""

import time
from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import bits
from .coloring import DEFAULT_BUDGET_MS, ColoringResult, chromatic_number, greedy_clique
from .errors import (CapExceeded, NotExtremal, NotSemidistributive, TheoremViolation,
                     Timeout, TrivialLattice)
from .galois import DirectedGraph, UndirectedGraph, galois_graph
from .lattice import (Lattice, Poset, dissectors, extremality, irreducibles,
                      semidistributivity, width_of)

DEFAULT_ORACLE_CAP = 24


def _require_sd_extremal(L: Lattice) -> None:
    if L.n < 2:
        raise TrivialLattice("the colouring route needs at least two elements")
    if not semidistributivity(L).is_sd:
        raise NotSemidistributive("lattice is not semidistributive")
    if not extremality(L).extremal:
        raise NotExtremal("lattice is not extremal")


def dim_sd_extremal_coloring(L: Lattice, budget_ms: Optional[int] = DEFAULT_BUDGET_MS) -> ColoringResult:
    _require_sd_extremal(L)
    return chromatic_number(galois_graph(L).complement(), budget_ms)


def dim_sd_extremal(L: Lattice, budget_ms: Optional[int] = DEFAULT_BUDGET_MS) -> int:
    """Dimension as the chromatic number of the complemented Galois graph."""
    return dim_sd_extremal_coloring(L, budget_ms).chi


# critical pairs ----------------------------------------------------------------

@dataclass(frozen=True)
class CriticalPairData:
    pairs: Tuple[Tuple[int, int], ...]
    dgraph: DirectedGraph
    klgraph: Optional[UndirectedGraph]


def _raw_critical_pairs(P: Poset) -> List[Tuple[int, int]]:
    out = []
    for a in range(P.n):
        below_a = P.down[a] & ~(1 << a)
        for b in range(P.n):
            if a == b or P.comparable(a, b):
                continue
            if below_a & ~P.down[b]:
                continue
            if P.up[b] & ~(1 << b) & ~P.up[a]:
                continue
            out.append((a, b))
    return out


def critical_pairs(P: Poset) -> CriticalPairData:
    pairs = _raw_critical_pairs(P)
    out = [0] * len(pairs)
    for s, (_, b) in enumerate(pairs):
        for t, (c, _) in enumerate(pairs):
            if P.leq(c, b):
                out[s] |= 1 << t
    dgraph = DirectedGraph(len(pairs), out, [f"({P.label(a)},{P.label(b)})" for a, b in pairs])
    klgraph = None
    if isinstance(P, Lattice):
        sd = semidistributivity(P)
        if sd.is_sd:
            table = irreducibles(P)
            expected = sorted((j, sd.kappa[j]) for j in table.jirr if sd.kappa[j] != table.lower_cover[j])
            if expected != sorted(pairs):
                raise TheoremViolation("critical pairs differ from the (j, kappa(j)) pairs")
            if extremality(P).extremal and P.n > 1:
                klgraph = _kl_graph(P, pairs, dgraph)
    return CriticalPairData(tuple(pairs), dgraph, klgraph)


def _kl_graph(L: Lattice, pairs, dgraph: DirectedGraph) -> UndirectedGraph:
    """2-cycles of D(L) on the Galois vertex set; checked against the Galois complement."""
    G = galois_graph(L)
    where = {j: i for i, j in enumerate(G.jirr)}
    vertex = [where[a] for a, _ in pairs]
    edges = set()
    for s, t in dgraph.edges():
        if s < t and dgraph.has_edge(t, s):
            edges.add((min(vertex[s], vertex[t]), max(vertex[s], vertex[t])))
    kl = UndirectedGraph.from_edges(G.m, sorted(edges), G.labels)
    critical = {vertex[s] for s in range(len(pairs))}
    table = irreducibles(L)
    isolated = {i for i, j in enumerate(G.jirr) if i not in critical}
    comp = G.complement()
    if kl != comp or any(comp.adj[i] for i in isolated):
        raise TheoremViolation("K(L) plus isolated vertices is not the Galois complement")
    if isolated != {i for i, j in enumerate(G.jirr) if G.mirr[i] == table.lower_cover[j]}:
        raise TheoremViolation("non-critical vertices are not the kappa(j) = j_* ones")
    return kl


# cover-set oracle --------------------------------------------------------------

def dimension_oracle(P: Poset, cap: int = DEFAULT_ORACLE_CAP,
                     budget_ms: Optional[int] = DEFAULT_BUDGET_MS) -> int:
    """Fewest subsets, each acyclic in D(P), covering all critical pairs (floored at 1)."""
    pairs = _raw_critical_pairs(P)
    k = len(pairs)
    if k > cap:
        raise CapExceeded("critical pairs", cap)
    if k == 0:
        return 1
    out = [0] * k
    inn = [0] * k
    for s, (_, b) in enumerate(pairs):
        for t, (c, _) in enumerate(pairs):
            if P.leq(c, b):
                out[s] |= 1 << t
                inn[t] |= 1 << s
    two_cycles = [out[s] & inn[s] for s in range(k)]
    lower = max(1, len(greedy_clique(two_cycles)))
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000

    def closes_cycle(v: int, group: int) -> bool:
        reach = out[v] & group
        frontier = reach
        while frontier:
            u = bits.lowest(frontier)
            frontier &= frontier - 1
            new = out[u] & group & ~reach
            reach |= new
            frontier |= new
        return bool(reach & inn[v])

    best = [k]
    groups: List[int] = []
    nodes = [0]

    def search(v: int) -> bool:
        nodes[0] += 1
        if deadline is not None and nodes[0] & 1023 == 0 and time.monotonic() > deadline:
            raise Timeout(budget_ms)
        if v == k:
            best[0] = len(groups)
            return best[0] == lower
        for g in range(len(groups)):
            if not closes_cycle(v, groups[g]):
                groups[g] |= 1 << v
                done = search(v + 1)
                groups[g] &= ~(1 << v)
                if done:
                    return True
        # new groups are opened in index order, which breaks label symmetry
        if len(groups) + 1 < best[0]:
            groups.append(1 << v)
            done = search(v + 1)
            groups.pop()
            if done:
                return True
        return False

    search(0)
    return max(1, best[0])


# bounds ------------------------------------------------------------------------

@dataclass(frozen=True)
class DimBounds:
    lower: int
    upper: int
    cover_lb: int
    cover_lb_valid: bool


def dim_bounds(P: Poset) -> DimBounds:
    """Dissector-width lower bound, JIrr-width upper bound, and the upper-cover count.

    The cover count is a valid lower bound only for semidistributive lattices.
    """
    jirr = [x for x in range(P.n) if len(P.lower_covers[x]) == 1]
    cover_lb = max((len(c) for c in P.upper_covers), default=0)
    valid = isinstance(P, Lattice) and semidistributivity(P).is_sd
    return DimBounds(
        lower=max(1, width_of(P, dissectors(P))),
        upper=max(1, width_of(P, jirr)),
        cover_lb=cover_lb,
        cover_lb_valid=valid,
    )

"""Maximal chains, the facet adjacency graph, source sets and shellability verdicts."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import bits
from .errors import CapExceeded
from .galois import DirectedGraph
from .labelling import left_modular
from .lattice import Lattice

DEFAULT_CHAIN_CAP = 100_000
DEFAULT_FACET_CAP = 9

Chain = Tuple[int, ...]


def count_maximal_chains(L: Lattice, lo: int = 0, hi: Optional[int] = None) -> int:
    hi = L.top if hi is None else hi
    counts = [0] * L.n
    counts[lo] = 1
    for y in bits.iter_bits(L.interval(lo, hi)):
        for z in L.upper_covers[y]:
            counts[z] += counts[y]
    return counts[hi]


def _paths(L: Lattice, lo: int, hi: int, avoid: int = -1) -> List[Chain]:
    """Maximal chains of [lo, hi] in lexicographic order, skipping ``avoid``."""
    span = L.interval(lo, hi)
    out: List[Chain] = []
    stack: List[Tuple[int, Chain]] = [(lo, (lo,))]
    while stack:
        x, path = stack.pop()
        if x == hi:
            out.append(path)
            continue
        for y in reversed(L.upper_covers[x]):
            if (span >> y) & 1 and y != avoid:
                stack.append((y, path + (y,)))
    return out


def maximal_chains(L: Lattice, cap: int = DEFAULT_CHAIN_CAP) -> List[Chain]:
    if count_maximal_chains(L) > cap:
        raise CapExceeded("maximal chains", cap)
    return _paths(L, 0, L.top)


class FAGraph(DirectedGraph):
    """Facet adjacency graph; vertex i is the maximal chain ``chains[i]``."""

    def __init__(self, chains: Sequence[Chain], out: Sequence[int], labels=None):
        super().__init__(len(chains), out, labels)
        self.chains: Tuple[Chain, ...] = tuple(chains)


def facet_adjacency(L: Lattice, cap: int = DEFAULT_CHAIN_CAP) -> FAGraph:
    """Edge F -> G when F shares all but one element of G.

    Each such F swaps one interior element g of G for another maximal chain
    of the interval between g's neighbours on G, so edges are found by local
    replacement instead of a pairwise scan.
    """
    chains = maximal_chains(L, cap)
    masks = [bits.from_iter(c) for c in chains]
    index = {m: i for i, m in enumerate(masks)}
    segment_cache: Dict[Tuple[int, int, int], List[int]] = {}
    out = [0] * len(chains)
    for gi, G in enumerate(chains):
        for p in range(1, len(G) - 1):
            key = (G[p - 1], G[p + 1], G[p])
            interiors = segment_cache.get(key)
            if interiors is None:
                interiors = [bits.from_iter(path[1:-1]) for path in _paths(L, *key)]
                segment_cache[key] = interiors
            base = masks[gi] & ~(1 << G[p])
            for inner in interiors:
                fi = index[base | inner]
                out[fi] |= 1 << gi
    labels = ["".join(L.label(x) for x in c[1:-1]) for c in chains] if L.labels else None
    return FAGraph(chains, out, labels)


# source sets -------------------------------------------------------------------

def strongly_connected_components(G: DirectedGraph) -> List[List[int]]:
    """Tarjan's algorithm without recursion; components in reverse topological order."""
    index = [-1] * G.m
    low = [0] * G.m
    on_stack = [False] * G.m
    stack: List[int] = []
    comps: List[List[int]] = []
    counter = 0
    for root in range(G.m):
        if index[root] >= 0:
            continue
        work = [(root, iter(bits.to_list(G.out[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(bits.to_list(G.out[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class SourceSetReport:
    found: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]
    source_components: Tuple[Tuple[int, ...], ...]
    all_source_sets: Optional[Tuple[Tuple[int, ...], ...]] = None


def _source_components(G: DirectedGraph) -> List[Tuple[int, ...]]:
    out = []
    for comp in strongly_connected_components(G):
        mask = bits.from_iter(comp)
        if not any(G.inn[v] & ~mask for v in comp):
            out.append(tuple(comp))
    return sorted(out)


def disjoint_source_sets(G: DirectedGraph, enumerate_all: bool = False,
                         limit: int = 4096) -> SourceSetReport:
    """Two disjoint source sets exist iff the condensation has two source components.

    Every nonempty predecessor-closed set contains a source component, and a
    source component is itself predecessor-closed.
    """
    sources = _source_components(G)
    found = (sources[0], sources[1]) if len(sources) >= 2 else None
    every = tuple(all_source_sets(G, limit)) if enumerate_all else None
    return SourceSetReport(found, tuple(sources), every)


def all_source_sets(G: DirectedGraph, limit: int = 4096) -> List[Tuple[int, ...]]:
    """Nonempty proper predecessor-closed vertex sets, smallest first."""
    comps = strongly_connected_components(G)[::-1]  # topological order
    masks = [bits.from_iter(c) for c in comps]
    preds = []
    for i, c in enumerate(comps):
        need = 0
        for v in c:
            need |= G.inn[v]
        preds.append(need & ~masks[i])
    full = (1 << G.m) - 1
    found: List[int] = []

    def grow(i: int, chosen: int) -> None:
        if len(found) > limit:
            raise CapExceeded("source sets", limit)
        if i == len(comps):
            if chosen and chosen != full:
                found.append(chosen)
            return
        grow(i + 1, chosen)
        if preds[i] & ~chosen == 0:
            grow(i + 1, chosen | masks[i])

    grow(0, 0)
    found.sort(key=lambda m: (bits.popcount(m), bits.to_list(m)))
    return [tuple(bits.iter_bits(m)) for m in found]


# verdicts ----------------------------------------------------------------------

@dataclass(frozen=True)
class ShellVerdict:
    verdict: str  # "Shellable", "NotShellable" or "Unknown"
    reason: str


def shellable_verdict(L: Lattice, cert=None, cap: int = DEFAULT_CHAIN_CAP) -> ShellVerdict:
    if cert is not None and cert.congruence_uniform:
        from .doubling import certify
        if certify(cert).extremal:
            return ShellVerdict("Shellable", "congruence uniform and extremal")
        return ShellVerdict("NotShellable", "congruence uniform but not extremal")
    try:
        report = disjoint_source_sets(facet_adjacency(L, cap))
    except CapExceeded:
        report = None
    if report is not None and report.found is not None:
        return ShellVerdict("NotShellable", "facet adjacency graph has two disjoint source sets")
    if left_modular(L).lm_chain is not None:
        return ShellVerdict("Shellable", "a maximal left-modular chain exists")
    if report is None:
        return ShellVerdict("Unknown", "too many maximal chains to build the facet graph")
    return ShellVerdict("Unknown", "no certificate either way")


def _ok_next(order_masks: List[int], F: int) -> bool:
    size = bits.popcount(F)
    near = [G & F for G in order_masks if bits.popcount(G & F) == size - 1]
    for G in order_masks:
        common = G & F
        if not any(common & ~n == 0 for n in near):
            return False
    return True


def brute_force_shelling(L: Lattice, cap_facets: int = DEFAULT_FACET_CAP) -> Optional[List[Chain]]:
    """A shelling order of the maximal chains by backtracking, or None."""
    if count_maximal_chains(L) > cap_facets:
        raise CapExceeded("facets for brute-force shelling", cap_facets)
    chains = maximal_chains(L)
    masks = [bits.from_iter(c) for c in chains]
    longest = max(len(c) for c in chains)
    order: List[int] = []
    used = [False] * len(chains)

    def extend() -> bool:
        if len(order) == len(chains):
            return True
        for i in range(len(chains)):
            if used[i]:
                continue
            if not order and len(chains[i]) != longest:
                continue
            if order and not _ok_next([masks[j] for j in order], masks[i]):
                continue
            used[i] = True
            order.append(i)
            if extend():
                return True
            order.pop()
            used[i] = False
        return False

    return [chains[i] for i in order] if extend() else None

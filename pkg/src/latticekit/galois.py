"""Galois graphs of extremal lattices and the reconstruction from orthogonal pairs."""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import bits
from .errors import (GraphNotOrderable, NotExtremal, NotSemidistributive,
                     NumberingFailure, TheoremViolation)
from .lattice import (ChainPhi, Lattice, build_lattice, extremality, irreducibles,
                      length_spine, make_chain, semidistributivity)


class DirectedGraph:
    """Simple digraph on ``0..m-1`` with out-neighbour bitsets."""

    def __init__(self, m: int, out: Sequence[int], labels: Optional[Sequence[str]] = None):
        self.m = m
        self.out: Tuple[int, ...] = tuple(out)
        self.labels = tuple(labels) if labels is not None else None
        inn = [0] * m
        for u in range(m):
            for v in bits.iter_bits(self.out[u]):
                inn[v] |= 1 << u
        self.inn: Tuple[int, ...] = tuple(inn)

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Tuple[int, int]], labels=None) -> "DirectedGraph":
        out = [0] * m
        for u, v in edges:
            out[u] |= 1 << v
        return cls(m, out, labels)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.out[u] >> v) & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.m) for v in bits.iter_bits(self.out[u])]

    def has_loops(self) -> bool:
        return any((self.out[u] >> u) & 1 for u in range(self.m))

    def topological_order(self) -> Optional[List[int]]:
        indeg = [bits.popcount(self.inn[v]) for v in range(self.m)]
        ready = [v for v in range(self.m) if indeg[v] == 0]
        order = []
        while ready:
            u = ready.pop()
            order.append(u)
            for v in bits.iter_bits(self.out[u]):
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
        return order if len(order) == self.m else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def complement(self) -> "UndirectedGraph":
        """Undirected graph joining u, v when neither u->v nor v->u."""
        full = (1 << self.m) - 1
        adj = [full & ~(self.out[u] | self.inn[u] | (1 << u)) for u in range(self.m)]
        return UndirectedGraph(self.m, adj, self.labels)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __eq__(self, other):
        return isinstance(other, DirectedGraph) and self.m == other.m and self.out == other.out

    def __repr__(self):
        return f"DirectedGraph(m={self.m}, edges={len(self.edges())})"


class UndirectedGraph:
    def __init__(self, m: int, adj: Sequence[int], labels: Optional[Sequence[str]] = None):
        self.m = m
        self.adj: Tuple[int, ...] = tuple(adj)
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Tuple[int, int]], labels=None) -> "UndirectedGraph":
        adj = [0] * m
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(m, adj, labels)

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.m) for v in bits.iter_bits(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return bits.popcount(self.adj[v])

    def relabel(self, order: Sequence[int]) -> "UndirectedGraph":
        """Vertex ``order[i]`` becomes vertex ``i``."""
        pos = {v: i for i, v in enumerate(order)}
        return UndirectedGraph.from_edges(
            self.m, [(pos[u], pos[v]) for u, v in self.edges()],
            [self.labels[v] for v in order] if self.labels else None)

    def __eq__(self, other):
        return isinstance(other, UndirectedGraph) and self.m == other.m and self.adj == other.adj

    def __repr__(self):
        return f"UndirectedGraph(m={self.m}, edges={len(self.edges())})"


class GaloisGraph(DirectedGraph):
    """Galois graph with the irreducible numbering read off a longest chain.

    Vertex ``i`` stands for the pair ``(jirr[i], mirr[i])``.
    """

    def __init__(self, m, out, labels, jirr, mirr, chain):
        super().__init__(m, out, labels)
        self.jirr: Tuple[int, ...] = tuple(jirr)
        self.mirr: Tuple[int, ...] = tuple(mirr)
        self.chain: ChainPhi = chain


def _unique(candidates: List[int], what: str, i: int) -> int:
    if len(candidates) != 1:
        raise NumberingFailure(f"{len(candidates)} candidates for {what} at position {i}")
    return candidates[0]


def galois_graph(L: Lattice, phi=None) -> GaloisGraph:
    ext = extremality(L)
    if not ext.extremal:
        raise NotExtremal(f"length {ext.length}, |JIrr|={ext.n_jirr}, |MIrr|={ext.n_mirr}")
    chain = make_chain(L, phi if phi is not None else length_spine(L)[2])
    if not chain.is_longest:
        raise NotExtremal("the numbering chain must be a longest chain")
    xs = chain.elements
    n = len(xs) - 1
    table = irreducibles(L)
    js, ms = [], []
    for i in range(1, n + 1):
        js.append(_unique([j for j in table.jirr if L.leq(j, xs[i]) and not L.leq(j, xs[i - 1])],
                          "join-irreducible", i))
        ms.append(_unique([m for m in table.mirr if L.leq(xs[i - 1], m) and not L.leq(xs[i], m)],
                          "meet-irreducible", i))
    for i in range(n + 1):
        if L.join_all(bits.from_iter(js[:i])) != xs[i]:
            raise NumberingFailure(f"join of the first {i} join-irreducibles is not x_{i}")
        if L.meet_all(bits.from_iter(ms[i:])) != xs[i]:
            raise NumberingFailure(f"meet of the last {n - i} meet-irreducibles is not x_{i}")
    out = [0] * n
    for i in range(n):
        for k in range(n):
            if i != k and not L.leq(js[i], ms[k]):
                out[i] |= 1 << k
    for i in range(n):
        if out[i] >> i:
            raise TheoremViolation("Galois edge goes upward in the chain numbering")
    return GaloisGraph(n, out, [L.label(j) for j in js], js, ms, chain)


def kappa_matches_numbering(L: Lattice, G: GaloisGraph) -> bool:
    """For semidistributive input, whether kappa sends the i-th join-irreducible to the i-th meet-irreducible."""
    kappa = semidistributivity(L).kappa
    if kappa is None:
        raise NotSemidistributive("kappa needs a semidistributive lattice")
    return all(kappa[j] == m for j, m in zip(G.jirr, G.mirr))


# reconstruction ------------------------------------------------------------

@dataclass(frozen=True)
class OrthoPairLattice:
    elements: Tuple[Tuple[int, int], ...]
    m: int

    def x_sets(self) -> List[int]:
        return [x for x, _ in self.elements]


def _closure_ops(G: DirectedGraph):
    full = (1 << G.m) - 1
    out_r = [G.out[i] | (1 << i) for i in range(G.m)]
    in_r = [G.inn[i] | (1 << i) for i in range(G.m)]

    def right(X: int) -> int:
        hit = 0
        for i in bits.iter_bits(X):
            hit |= out_r[i]
        return full & ~hit

    def left(Y: int) -> int:
        hit = 0
        for k in bits.iter_bits(Y):
            hit |= in_r[k]
        return full & ~hit

    return right, left


def lattice_from_galois(G: DirectedGraph) -> Tuple[Lattice, OrthoPairLattice]:
    """Lattice of maximal orthogonal pairs ordered by the first component."""
    if G.has_loops():
        raise GraphNotOrderable("graph has self-loops")
    if not G.is_acyclic():
        raise GraphNotOrderable("graph has a directed cycle")
    right, left = _closure_ops(G)

    def close(X: int) -> int:
        return left(right(X))

    bottom = close(0)
    seen = {bottom: None}
    upper: Dict[int, List[int]] = {}
    queue = deque([bottom])
    while queue:
        X = queue.popleft()
        candidates = set()
        for i in bits.iter_bits(((1 << G.m) - 1) & ~X):
            candidates.add(close(X | (1 << i)))
        minimal = [Z for Z in candidates if not any(W != Z and W & Z == W for W in candidates)]
        upper[X] = minimal
        for Z in minimal:
            if Z not in seen:
                seen[Z] = None
                queue.append(Z)
    order = sorted(seen, key=lambda X: (bits.popcount(X), X))
    index = {X: i for i, X in enumerate(order)}
    covers = [(index[X], index[Z]) for X in order for Z in upper[X]]
    labels = ["{" + ",".join(str(i + 1) for i in bits.iter_bits(X)) + "}" for X in order]
    lat = build_lattice(len(order), covers, labels, check=False)
    return lat, OrthoPairLattice(tuple((X, right(X)) for X in order), G.m)


def roundtrip_check(L: Lattice, phi=None) -> bool:
    """Whether x -> {i : j_i <= x} is an order isomorphism onto the reconstruction."""
    G = galois_graph(L, phi)
    R, pairs = lattice_from_galois(G)
    if R.n != L.n:
        return False
    image = [bits.from_iter(i for i, j in enumerate(G.jirr) if L.leq(j, x)) for x in range(L.n)]
    if sorted(image) != sorted(pairs.x_sets()):
        return False
    for x in range(L.n):
        for y in range(L.n):
            if L.leq(x, y) != (image[x] & image[y] == image[x]):
                return False
    return True


# canonical join graph --------------------------------------------------------

def downward_label_sets(L: Lattice) -> Dict[int, FrozenSet[int]]:
    """x -> set of join-irreducibles labelling the covers below x."""
    sd = semidistributivity(L)
    if not sd.is_sd:
        raise NotSemidistributive("downward label sets need a semidistributive lattice")
    return {x: frozenset(sd.gammaJ[(y, x)] for y in L.lower_covers[x]) for x in range(L.n)}


def canonical_join_graph(L: Lattice) -> UndirectedGraph:
    """Vertices are join-irreducibles in increasing element order."""
    D = downward_label_sets(L)
    jirr = irreducibles(L).jirr
    pos = {j: i for i, j in enumerate(jirr)}
    edges = set()
    for labels in D.values():
        ids = sorted(pos[j] for j in labels)
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                edges.add((ids[a], ids[b]))
    graph = UndirectedGraph.from_edges(len(jirr), sorted(edges), [L.label(j) for j in jirr])
    if extremality(L).extremal:
        G = galois_graph(L)
        comp = G.complement()
        mine = {frozenset((jirr[u], jirr[v])) for u, v in graph.edges()}
        theirs = {frozenset((G.jirr[u], G.jirr[v])) for u, v in comp.edges()}
        if mine != theirs:
            raise TheoremViolation("canonical join graph differs from the Galois complement")
    return graph


# independent sets -------------------------------------------------------------

def count_independent_sets(G) -> int:
    """Exact count of independent sets; directed input is symmetrised."""
    if isinstance(G, DirectedGraph):
        adj = [G.out[v] | G.inn[v] for v in range(G.m)]
    else:
        adj = list(G.adj)
    memo: Dict[int, int] = {}

    def component(mask: int) -> int:
        start = mask & -mask
        comp = frontier = start
        while frontier:
            v = bits.lowest(frontier)
            frontier &= frontier - 1
            new = adj[v] & mask & ~comp
            comp |= new
            frontier |= new
        return comp

    def count(mask: int) -> int:
        if not mask:
            return 1
        hit = memo.get(mask)
        if hit is not None:
            return hit
        comp = component(mask)
        if comp != mask:
            result = count(comp) * count(mask & ~comp)
        else:
            v = max(bits.iter_bits(mask), key=lambda u: (bits.popcount(adj[u] & mask), -u))
            if not adj[v] & mask:
                result = 1 << bits.popcount(mask)
            else:
                result = count(mask & ~(1 << v)) + count(mask & ~(1 << v) & ~adj[v])
        memo[mask] = result
        return result

    return count((1 << len(adj)) - 1)

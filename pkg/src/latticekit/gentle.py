"""Gentle trees: string modules, homomorphism dimensions and torsion-class dimension."""

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from . import bits
from .coloring import DEFAULT_BUDGET_MS, chromatic_number
from .errors import InvalidParameter, NotGentle, TheoremViolation
from .galois import DirectedGraph, UndirectedGraph, lattice_from_galois
from .lattice import Lattice

EAST, NORTH = "E", "N"


class GentleQuiver:
    """Tree quiver on vertices ``0..n-1`` with length-two zero relations.

    ``relations`` holds arrow-index pairs ``(i, j)`` meaning arrow i followed by arrow j is zero.
    """

    def __init__(self, n: int, arrows: Sequence[Tuple[int, int]],
                 relations: Sequence[Tuple[int, int]] = ()):
        self.n = n
        self.arrows: Tuple[Tuple[int, int], ...] = tuple((int(s), int(t)) for s, t in arrows)
        self.relations: FrozenSet[Tuple[int, int]] = frozenset((int(a), int(b)) for a, b in relations)
        self._validate()
        self.direction: Tuple[str, ...] = self._draw()
        self._edge = {}
        for k, (s, t) in enumerate(self.arrows):
            self._edge[(s, t)] = k
            self._edge[(t, s)] = k

    @classmethod
    def from_dict(cls, data) -> "GentleQuiver":
        try:
            return cls(int(data["vertices"]), data.get("arrows", []), data.get("relations", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParameter(f"malformed gentle quiver JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "GentleQuiver":
        return cls.from_dict(json.loads(text))

    @classmethod
    def path(cls, orientation: Sequence[bool]) -> "GentleQuiver":
        """Path quiver; ``orientation[i]`` True means vertex i -> i+1."""
        arrows = [(i, i + 1) if fwd else (i + 1, i) for i, fwd in enumerate(orientation)]
        return cls(len(orientation) + 1, arrows)

    def _validate(self) -> None:
        n, arrows = self.n, self.arrows
        if n < 1:
            raise NotGentle("a quiver needs at least one vertex")
        if len(arrows) != n - 1:
            raise NotGentle(f"a tree on {n} vertices has {n - 1} arrows, got {len(arrows)}")
        seen_edges = set()
        adj: List[List[int]] = [[] for _ in range(n)]
        for s, t in arrows:
            if not (0 <= s < n and 0 <= t < n) or s == t:
                raise NotGentle(f"arrow ({s}, {t}) is invalid")
            if frozenset((s, t)) in seen_edges:
                raise NotGentle("parallel arrows do not form a tree")
            seen_edges.add(frozenset((s, t)))
            adj[s].append(t)
            adj[t].append(s)
        reach, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in reach:
                    reach.add(w)
                    stack.append(w)
        if len(reach) != n:
            raise NotGentle("underlying graph is not connected")
        for v in range(n):
            if sum(t == v for _, t in arrows) > 2 or sum(s == v for s, _ in arrows) > 2:
                raise NotGentle(f"vertex {v} has more than two incoming or outgoing arrows")
        for a, b in self.relations:
            if not (0 <= a < len(arrows) and 0 <= b < len(arrows)) or arrows[a][1] != arrows[b][0]:
                raise NotGentle(f"relation ({a}, {b}) is not a composable pair")
        for k, (s, t) in enumerate(arrows):
            after = [b for b, (s2, _) in enumerate(arrows) if s2 == t]
            before = [a for a, (_, t2) in enumerate(arrows) if t2 == s]
            if sum((k, b) in self.relations for b in after) > 1:
                raise NotGentle(f"arrow {k} starts two zero relations")
            if sum((k, b) not in self.relations for b in after) > 1:
                raise NotGentle(f"arrow {k} has two nonzero continuations")
            if sum((a, k) in self.relations for a in before) > 1:
                raise NotGentle(f"arrow {k} ends two zero relations")
            if sum((a, k) not in self.relations for a in before) > 1:
                raise NotGentle(f"arrow {k} has two nonzero predecessors")

    def _draw(self) -> Tuple[str, ...]:
        """Assign east/north to arrows so relations are exactly the turns."""
        m = len(self.arrows)
        # constraint (a, b, differ)
        cons: List[List[Tuple[int, bool]]] = [[] for _ in range(m)]
        for v in range(self.n):
            ins = [k for k, (_, t) in enumerate(self.arrows) if t == v]
            outs = [k for k, (s, _) in enumerate(self.arrows) if s == v]
            pairs = [(a, b, (a, b) in self.relations) for a in ins for b in outs]
            if len(ins) == 2:
                pairs.append((ins[0], ins[1], True))
            if len(outs) == 2:
                pairs.append((outs[0], outs[1], True))
            for a, b, differ in pairs:
                cons[a].append((b, differ))
                cons[b].append((a, differ))
        dirs: List[Optional[str]] = [None] * m
        for start in range(m):
            if dirs[start] is not None:
                continue
            dirs[start] = EAST
            queue = deque([start])
            while queue:
                a = queue.popleft()
                for b, differ in cons[a]:
                    want = (NORTH if dirs[a] == EAST else EAST) if differ else dirs[a]
                    if dirs[b] is None:
                        dirs[b] = want
                        queue.append(b)
                    elif dirs[b] != want:
                        raise NotGentle("no east/north drawing makes relations the turns")
        return tuple(dirs)  # type: ignore[arg-type]

    def tree_path(self, u: int, v: int) -> List[int]:
        parent = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for s, t in self.arrows:
                for a, b in ((s, t), (t, s)):
                    if a == x and b not in parent:
                        parent[b] = x
                        queue.append(b)
        path = [v]
        while path[-1] != u:
            path.append(parent[path[-1]])
        return path[::-1]

    def arrow_between(self, x: int, y: int) -> int:
        return self._edge[(x, y)]


@dataclass(frozen=True)
class StringModule:
    walk: Tuple[int, ...]  # vertices from left endpoint to right endpoint
    support: FrozenSet[int]

    @property
    def left_endpoint(self) -> int:
        return self.walk[0]

    @property
    def right_endpoint(self) -> int:
        return self.walk[-1]

    def __len__(self):
        return len(self.walk) - 1


def _step(T: GentleQuiver, x: int, y: int) -> Tuple[int, int]:
    """Plane displacement of walking from x to y."""
    k = T.arrow_between(x, y)
    sign = 1 if T.arrows[k] == (x, y) else -1
    return (sign, 0) if T.direction[k] == EAST else (0, sign)


def _is_string(T: GentleQuiver, path: List[int]) -> bool:
    for i in range(1, len(path) - 1):
        x, w, y = path[i - 1], path[i], path[i + 1]
        a, b = T.arrow_between(x, w), T.arrow_between(w, y)
        if T.arrows[a] == (x, w) and T.arrows[b] == (w, y) and (a, b) in T.relations:
            return False
        if T.arrows[b] == (y, w) and T.arrows[a] == (w, x) and (b, a) in T.relations:
            return False
    return True


def gentle_strings(T: GentleQuiver) -> List[StringModule]:
    """All strings, each read from its left (top-left) to its right (bottom-right) endpoint."""
    out = []
    for u in range(T.n):
        for v in range(u, T.n):
            path = T.tree_path(u, v)
            if not _is_string(T, path):
                continue
            steps = {_step(T, x, y) for x, y in zip(path, path[1:])}
            if steps <= {(1, 0), (0, -1)}:
                walk = path
            elif steps <= {(-1, 0), (0, 1)}:
                walk = path[::-1]
            else:
                raise TheoremViolation(f"string {path} is not monotone in the drawing")
            out.append(StringModule(tuple(walk), frozenset(walk)))
    out.sort(key=lambda s: (len(s), s.walk))
    return out


def _rank(rows: List[List[Fraction]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def hom_dim(T: GentleQuiver, M: StringModule, N: StringModule) -> int:
    """dim Hom(M, N): scalars on the common support subject to the commuting squares."""
    shared = sorted(M.support & N.support)
    if not shared:
        return 0
    var = {x: i for i, x in enumerate(shared)}
    rows = []
    for s, t in T.arrows:
        m_map = 1 if s in M.support and t in M.support else 0
        n_map = 1 if s in N.support and t in N.support else 0
        # N_alpha * f_s - f_t * M_alpha = 0
        row = [Fraction(0)] * len(shared)
        if s in var:
            row[var[s]] += n_map
        if t in var:
            row[var[t]] -= m_map
        rows.append(row)
    return len(shared) - _rank(rows)


def hom_matrix(T: GentleQuiver, strings: Sequence[StringModule]) -> List[List[int]]:
    return [[hom_dim(T, a, b) for b in strings] for a in strings]


def hom_orthogonality_graph(T: GentleQuiver, strings: Optional[Sequence[StringModule]] = None
                            ) -> Tuple[UndirectedGraph, List[StringModule]]:
    strings = list(strings) if strings is not None else gentle_strings(T)
    hom = hom_matrix(T, strings)
    edges = [(i, k) for i in range(len(strings)) for k in range(i + 1, len(strings))
             if hom[i][k] == 0 and hom[k][i] == 0]
    labels = ["-".join(str(v + 1) for v in s.walk) for s in strings]
    return UndirectedGraph.from_edges(len(strings), edges, labels), strings


def torsion_galois_graph(T: GentleQuiver) -> DirectedGraph:
    """Bricks with B -> B' whenever B != B' and Hom(B, B') != 0."""
    strings = gentle_strings(T)
    hom = hom_matrix(T, strings)
    edges = [(i, k) for i in range(len(strings)) for k in range(len(strings))
             if i != k and hom[i][k]]
    labels = ["-".join(str(v + 1) for v in s.walk) for s in strings]
    return DirectedGraph.from_edges(len(strings), edges, labels)


def torsion_lattice(T: GentleQuiver) -> Lattice:
    return lattice_from_galois(torsion_galois_graph(T))[0]


def torsion_dim(T: GentleQuiver, budget_ms: Optional[int] = DEFAULT_BUDGET_MS) -> int:
    """Chromatic number of the hom-orthogonality graph of bricks, with both bounds checked."""
    graph, strings = hom_orthogonality_graph(T)
    simples = [i for i, s in enumerate(strings) if len(s) == 0]
    for a in simples:
        for b in simples:
            if a != b and not (graph.adj[a] >> b) & 1:
                raise TheoremViolation("two simples are not hom-orthogonal")
    for i, k in graph.edges():
        if strings[i].right_endpoint == strings[k].right_endpoint:
            raise TheoremViolation("right-endpoint colouring is not proper")
    chi = chromatic_number(graph, budget_ms).chi
    if chi != T.n:
        raise TheoremViolation(f"chromatic number {chi} differs from {T.n} vertices")
    return chi
